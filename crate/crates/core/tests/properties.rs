//! Randomized properties of the exact arithmetic and the geometry built on it.

use cyclopoly::{
    cyclotomic_polynomial, phi, verify_affinely_regular, xray, CyclotomicNumber, Direction,
    ModelSetDescriptor, Patch, Polygon, Rational,
};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

const CONDUCTORS: &[u64] = &[1, 3, 4, 5, 7, 8, 9, 11, 12, 15, 16, 20, 24, 36, 40, 60];

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=9)
        .prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
}

fn element_of(n: u64) -> impl Strategy<Value = CyclotomicNumber> {
    let ph = phi(n).unwrap() as usize;
    proptest::collection::vec(rational_strategy(), ph)
        .prop_map(move |coeffs| CyclotomicNumber::from_coeffs(n, coeffs).unwrap())
}

fn conductor_and_elements(
    k: usize,
) -> impl Strategy<Value = (u64, Vec<CyclotomicNumber>)> {
    proptest::sample::select(CONDUCTORS.to_vec()).prop_flat_map(move |n| {
        proptest::collection::vec(element_of(n), k).prop_map(move |v| (n, v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms((n, v) in conductor_and_elements(3)) {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(x.add(y).unwrap(), y.add(x).unwrap());
        prop_assert_eq!(x.mul(y).unwrap(), y.mul(x).unwrap());
        prop_assert_eq!(
            x.add(y).unwrap().add(z).unwrap(),
            x.add(&y.add(z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.mul(y).unwrap().mul(z).unwrap(),
            x.mul(&y.mul(z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.mul(&y.add(z).unwrap()).unwrap(),
            x.mul(y).unwrap().add(&x.mul(z).unwrap()).unwrap()
        );
        prop_assert_eq!(x.mul(&CyclotomicNumber::one(n)).unwrap(), x.clone());
        prop_assert_eq!(x.add(&x.neg()).unwrap(), CyclotomicNumber::zero(n));
    }

    #[test]
    fn galois_composition((n, v) in conductor_and_elements(1), a in 1i64..60, b in 1i64..60) {
        prop_assume!((a as u64).gcd(&n) == 1 && (b as u64).gcd(&n) == 1);
        let x = &v[0];
        let lhs = x.galois_apply(b).unwrap().galois_apply(a).unwrap();
        let rhs = x.galois_apply((a * b).rem_euclid(n as i64)).unwrap();
        prop_assert_eq!(lhs, rhs);
        // automorphism respects multiplication.
        let y = x.mul(x).unwrap().galois_apply(a).unwrap();
        let y2 = x.galois_apply(a).unwrap();
        prop_assert_eq!(y, y2.mul(&y2).unwrap());
    }

    #[test]
    fn norm_square_is_real_nonnegative((_n, v) in conductor_and_elements(1)) {
        let ns = v[0].norm_square();
        prop_assert!(ns.value().is_real());
        let e = ns.value().embed();
        prop_assert!(e.im.abs() <= 1e-12);
        prop_assert!(e.re >= -1e-12);
    }

    #[test]
    fn embed_is_multiplicative((_n, v) in conductor_and_elements(2)) {
        let (x, y) = (&v[0], &v[1]);
        let exy = x.mul(y).unwrap().embed();
        let (ex, ey) = (x.embed(), y.embed());
        let re = ex.re * ey.re - ex.im * ey.im;
        let im = ex.re * ey.im + ex.im * ey.re;
        let err = ((exy.re - re).powi(2) + (exy.im - im).powi(2)).sqrt();
        // scale-aware bound, far below the spec's absolute 1e-9 at height <= 1e3.
        let scale = 1.0 + ex.abs() * ey.abs();
        prop_assert!(err <= 1e-9 * scale, "err = {err:e}");
    }

    #[test]
    fn lift_is_a_ring_homomorphism((n, v) in conductor_and_elements(2), f in 1u64..5) {
        let target = n * f;
        let (x, y) = (&v[0], &v[1]);
        let lhs = x.mul(y).unwrap().lift(target).unwrap();
        let rhs = x.lift(target).unwrap().mul(&y.lift(target).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(
            x.add(y).unwrap().lift(target).unwrap(),
            x.lift(target).unwrap().add(&y.lift(target).unwrap()).unwrap()
        );
        // section: lowering recovers the original.
        prop_assert_eq!(x.lift(target).unwrap().try_lower(n).unwrap().unwrap(), x.clone());
    }

    #[test]
    fn conjugation_is_an_involution_fixing_norms((_n, v) in conductor_and_elements(1)) {
        let x = &v[0];
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(x.conj().norm_square(), x.norm_square());
    }

    #[test]
    fn xray_total_counts_points(picks in proptest::collection::vec(0usize..21, 1..12),
                                da in -3i64..=3, db in -3i64..=3) {
        prop_assume!((da, db) != (0, 0));
        let d = ModelSetDescriptor::lattice(4).unwrap();
        let patch = Patch::generate(&d, Rational::new(BigInt::from(5), BigInt::from(2))).unwrap();
        let mut f: Vec<CyclotomicNumber> =
            picks.iter().map(|&i| patch.points()[i].clone()).collect();
        f.sort();
        f.dedup();
        let u = Direction::from_integer_coeffs(4, &[da, db]).unwrap();
        prop_assert_eq!(xray(&f, &u).unwrap().total(), f.len());
    }

    #[test]
    fn affine_maps_preserve_affine_regularity(a0 in -3i64..=3, a1 in -3i64..=3,
                                              b0 in -3i64..=3, b1 in -3i64..=3,
                                              t0 in -5i64..=5, t1 in -5i64..=5) {
        // non-singular, orientation-preserving integer map on O_4.
        prop_assume!(a0 * b1 - a1 * b0 > 0);
        let p = cyclopoly::construct_polygon_in_field(6, 4).unwrap();
        let a = CyclotomicNumber::from_integer_coeffs(4, &[a0, a1]).unwrap();
        let b = CyclotomicNumber::from_integer_coeffs(4, &[b0, b1]).unwrap();
        let t = CyclotomicNumber::from_integer_coeffs(4, &[t0, t1]).unwrap();
        let mapped: Vec<CyclotomicNumber> = p
            .vertices()
            .iter()
            .map(|v| {
                let x = v.coeffs()[0].clone();
                let y = v.coeffs()[1].clone();
                a.scale(&x).add(&b.scale(&y)).unwrap().add(&t).unwrap()
            })
            .collect();
        let q = Polygon::new(4, mapped).unwrap();
        prop_assert!(verify_affinely_regular(&q).unwrap().is_some());
    }
}

#[test]
fn cyclotomic_polynomial_annihilates_the_root() {
    for n in 1..=60u64 {
        let p = cyclotomic_polynomial(n).unwrap();
        assert_eq!(p.len() as u64 - 1, phi(n).unwrap());
        let z = CyclotomicNumber::root_of_unity(n).unwrap();
        let mut acc = CyclotomicNumber::zero(n);
        for (k, c) in p.iter().enumerate() {
            let term = z
                .pow(k as u64)
                .unwrap()
                .scale(&Rational::from_integer(c.clone()));
            acc = acc.add(&term).unwrap();
        }
        assert!(acc.is_zero(), "Phi_{n} does not annihilate zeta_{n}");
    }
}

#[test]
fn patch_monotone_and_boundary_free() {
    for n in [5u64, 8, 12] {
        let d = ModelSetDescriptor::cut_and_project(n).unwrap();
        let small = Patch::generate(&d, Rational::from_integer(BigInt::from(2))).unwrap();
        let big = Patch::generate(&d, Rational::from_integer(BigInt::from(4))).unwrap();
        assert!(small.len() >= 1);
        for z in small.points() {
            assert!(big.contains(z), "n = {n}: monotonicity broke at {z}");
            // membership re-derivable from the descriptor (no boundary case).
            assert!(d.is_member(z).unwrap());
        }
    }
}
