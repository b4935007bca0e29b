//! Acceptance gate: one test per criterion, each printing a single
//! "criterion N: PASS — ..." line (visible with --nocapture).

use std::time::Instant;

use cyclopoly::polygon::Inflation;
use cyclopoly::tomography::{demo_patch, Determination};
use cyclopoly::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn criterion_1_inclusion_lemma_oracle() {
    let t0 = Instant::now();
    for m in 1..=500u64 {
        for n in 1..=500u64 {
            let oracle = phi(m.lcm(&n)).unwrap() == phi(n).unwrap();
            assert_eq!(k_field_subset(m, n), oracle, "discrepancy at ({m}, {n})");
        }
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 5.0, "took {dt:?}, limit 5 s");
    println!("criterion 1: PASS — inclusion predicate equals the totient oracle on 500x500 in {dt:?}");
}

#[test]
fn criterion_2_characterization_coherence() {
    for m in 3..=60u64 {
        for n in [3u64, 4, 5, 7, 8, 9, 11, 12, 13, 16] {
            assert_eq!(
                exists_affinely_regular(m, n).unwrap(),
                real_subfield_subset(m, n).unwrap(),
                "conditions disagree at ({m}, {n})"
            );
        }
    }
    // constructive witness, exhaustive on 1..=40 squared.
    for m in 1..=40u64 {
        for n in 1..=40u64 {
            let l = m.lcm(&n);
            let zm = CyclotomicNumber::root_of_unity(m).unwrap().lift(l).unwrap();
            let lowered = zm.try_lower(n).unwrap();
            assert_eq!(lowered.is_some(), k_field_subset(m, n), "witness defect at ({m}, {n})");
        }
    }
    println!("criterion 2: PASS — arithmetic and field-theoretic characterizations agree; linear-algebra witness exhaustive to 40");
}

#[test]
fn criterion_3_headline_admissible_sets() {
    assert_eq!(admissible_m(4, 100).unwrap(), vec![3, 4, 6]);
    assert_eq!(admissible_m(3, 100).unwrap(), vec![3, 4, 6]);
    assert_eq!(admissible_m(8, 100).unwrap(), vec![3, 4, 6, 8]);
    assert_eq!(admissible_m(12, 100).unwrap(), vec![3, 4, 6, 12]);
    assert_eq!(admissible_m(5, 100).unwrap(), vec![3, 4, 5, 6, 10]);
    println!("criterion 3: PASS — admissible polygon sets for n = 3, 4, 5, 8, 12 reproduced exactly");
}

#[test]
fn criterion_4_constructive_existence_and_inflation() {
    let t0 = Instant::now();
    for n in [3u64, 4, 5, 8, 12] {
        for m in admissible_m(n, 2 * n.max(3)).unwrap() {
            let p = construct_polygon_in_field(m, n).unwrap();
            assert_eq!(p.len() as u64, m);
            for v in p.vertices() {
                assert!(v.is_integral(), "non-integral vertex for ({m}, {n})");
            }
            let w = verify_affinely_regular(&p).unwrap();
            assert!(w.is_some(), "no affine witness for ({m}, {n})");
        }
    }
    // inflation into actual patches for the crystallographic and AB cases.
    let d4 = ModelSetDescriptor::lattice(4).unwrap();
    let patch4 = Patch::generate(&d4, rat(6, 1)).unwrap();
    for m in [3u64, 4, 6] {
        let p = construct_polygon_in_field(m, 4).unwrap();
        let inf = inflate_into_model_set(&p, &patch4, 8).unwrap();
        assert!(inf.scale <= 8);
    }
    // the hexagon's internal image needs a window larger than the default.
    let d8 = ModelSetDescriptor::cut_and_project(8)
        .unwrap()
        .with_window_circumradius(rat(11, 5))
        .unwrap();
    let patch8 = Patch::generate(&d8, rat(6, 1)).unwrap();
    for m in [3u64, 4, 6, 8] {
        let p = construct_polygon_in_field(m, 8).unwrap();
        let Inflation { scale, polygon, .. } = inflate_into_model_set(&p, &patch8, 8).unwrap();
        assert!(scale <= 8);
        for v in polygon.vertices() {
            assert!(patch8.contains(v));
        }
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 120.0, "took {dt:?}, limit 2 min");
    println!("criterion 4: PASS — all admissible polygons constructed with integral vertices and affine witnesses; inflations found for n = 4, 8 in {dt:?}");
}

#[test]
fn criterion_5_sophie_germain_classification() {
    for n in (3..=10_000u64).filter(|n| n % 4 != 2) {
        // classify_phi_half cross-checks the primality route against the
        // explicit set description internally and errors on disagreement.
        let c = classify_phi_half(n).unwrap();
        match c.kind {
            PhiHalfKind::One => assert!(matches!(n, 3 | 4)),
            PhiHalfKind::Prime => {
                assert!(matches!(n, 8 | 9 | 12) || (n % 2 == 1 && is_sophie_germain((n - 1) / 2)))
            }
            PhiHalfKind::Composite => assert!(!is_prime(phi(n).unwrap() / 2)),
        }
    }
    let expected_prefix: Vec<u64> = vec![
        2, 3, 5, 11, 23, 29, 41, 53, 83, 89, 113, 131, 173, 179, 191, 233, 239, 251, 281, 293,
        359, 419,
    ];
    let generated: Vec<u64> = (2..=419).filter(|&p| is_sophie_germain(p)).collect();
    assert_eq!(generated, expected_prefix);
    println!("criterion 5: PASS — phi(n)/2 classification agrees with the explicit set to 10^4; Sophie Germain prefix matches");
}

#[test]
fn criterion_6_tomography_switching() {
    // square in the square lattice with the two axis directions.
    let patch4 = demo_patch(4, 3).unwrap();
    let gi = |a: i64, b: i64| CyclotomicNumber::from_integer_coeffs(4, &[a, b]).unwrap();
    let square = Polygon::new(4, vec![gi(0, 0), gi(1, 0), gi(1, 1), gi(0, 1)]).unwrap();
    let axes = vec![
        Direction::from_integer_coeffs(4, &[1, 0]).unwrap(),
        Direction::from_integer_coeffs(4, &[0, 1]).unwrap(),
    ];
    let (f, fp) = build_counterexample(&square, &patch4, &axes).unwrap();
    assert_eq!(f, vec![gi(0, 0), gi(1, 1)]);
    assert_eq!(fp, vec![gi(0, 1), gi(1, 0)]);

    // hexagon with its three edge directions.
    let hex = construct_polygon_in_field(6, 4).unwrap();
    let hex_dirs = edge_directions(&hex).unwrap();
    assert_eq!(hex_dirs.len(), 3);
    build_counterexample(&hex, &patch4, &hex_dirs).unwrap();

    // regular 8-gon in the AB-style patch with its four edge directions.
    let patch8 = demo_patch(8, 3).unwrap();
    let oct = construct_polygon_in_field(8, 8).unwrap();
    let oct_dirs = edge_directions(&oct).unwrap();
    assert_eq!(oct_dirs.len(), 4);
    build_counterexample(&oct, &patch8, &oct_dirs).unwrap();
    // build_counterexample asserts F != F', |F| = |F'|, equal X-rays and
    // convexity of both sets on every call; reaching here means all held.
    println!("criterion 6: PASS — switching produces exact X-ray-equal convex pairs for square, hexagon and 8-gon");
}

#[test]
fn criterion_7_bound_values_with_witnesses() {
    let expected = [(3u64, 3u64), (4, 3), (5, 5), (8, 4), (12, 6)];
    for (n, bound) in expected {
        assert_eq!(min_k_bound(n).unwrap(), bound, "bound value at n = {n}");
        let patch = demo_patch(n, 3).unwrap();
        let (us, p) = witness_bound(n, &patch, 8).unwrap();
        assert_eq!(us.len() as u64, bound, "witness direction count at n = {n}");
        assert!(is_u_polygon(&p, &us).unwrap());
        assert_eq!(p.len() % 2, 0);
    }
    println!("criterion 7: PASS — min_k_bound = 3, 3, 5, 4, 6 for n = 3, 4, 5, 8, 12, each certified by a U-polygon witness");
}

#[test]
fn criterion_8_bruteforce_oracle() {
    let patch = demo_patch(4, 2).unwrap();
    let axes = vec![
        Direction::from_integer_coeffs(4, &[1, 0]).unwrap(),
        Direction::from_integer_coeffs(4, &[0, 1]).unwrap(),
    ];
    match determination_bruteforce(&patch, &axes, 6).unwrap() {
        Determination::Collision(f, fp) => {
            assert_ne!(f, fp);
            assert_eq!(f.len(), fp.len());
            assert!(xrays_equal(&f, &fp, &axes).unwrap());
            assert!(is_convex_subset(&f, &patch).unwrap());
            assert!(is_convex_subset(&fp, &patch).unwrap());
        }
        Determination::NoCollision => panic!("expected a collision for the two axis directions"),
    }

    let seven: Vec<Direction> = [
        [1i64, 0],
        [0, 1],
        [1, 1],
        [1, -1],
        [2, 1],
        [1, 2],
        [2, -1],
    ]
    .iter()
    .map(|c| Direction::from_integer_coeffs(4, c).unwrap())
    .collect();
    for i in 0..seven.len() {
        for j in (i + 1)..seven.len() {
            assert!(!seven[i].is_parallel_to(&seven[j]).unwrap());
        }
    }
    match determination_bruteforce(&patch, &seven, 6) {
        Ok(Determination::NoCollision) => {}
        Ok(Determination::Collision(f, fp)) => {
            panic!("unexpected collision under 7 directions: {f:?} vs {fp:?}")
        }
        Err(CycError::Inconclusive) => {
            println!("criterion 8: PASS (7-direction search inconclusive within budget, reported as such)");
            return;
        }
        Err(e) => panic!("{e}"),
    }
    println!("criterion 8: PASS — 2-direction collision found and sound; 7 non-parallel directions admit no collision at cap 6");
}

#[test]
fn criterion_9_numerical_sanity() {
    for n in 1..=100u64 {
        let e = CyclotomicNumber::root_of_unity(n).unwrap().embed();
        assert!((e.abs() - 1.0).abs() <= 1e-12, "|embed(zeta_{n})| off by {:e}", e.abs() - 1.0);
    }
    let mut rng = StdRng::seed_from_u64(42);
    let conductors = [3u64, 4, 5, 8, 12, 16, 24];
    for _ in 0..1000 {
        let n = conductors[rng.gen_range(0..conductors.len())];
        let ph = phi(n).unwrap() as usize;
        let sample = |rng: &mut StdRng| {
            let coeffs: Vec<Rational> = (0..ph)
                .map(|_| rat(rng.gen_range(-1000..=1000), rng.gen_range(100..=1000)))
                .collect();
            CyclotomicNumber::from_coeffs(n, coeffs).unwrap()
        };
        let x = sample(&mut rng);
        let y = sample(&mut rng);
        let exy = x.mul(&y).unwrap().embed();
        let (ex, ey) = (x.embed(), y.embed());
        let re = ex.re * ey.re - ex.im * ey.im;
        let im = ex.re * ey.im + ex.im * ey.re;
        let err = ((exy.re - re).powi(2) + (exy.im - im).powi(2)).sqrt();
        assert!(err <= 1e-9, "multiplicativity error {err:e} at n = {n}");
        let ns = x.norm_square();
        assert!(ns.value().is_real());
        assert!(ns.value().embed().im.abs() <= 1e-12);
    }
    println!("criterion 9: PASS — embeddings on the unit circle, multiplicative to 1e-9, norms real to 1e-12");
}
