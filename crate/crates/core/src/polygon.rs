//! Affinely regular polygons in cyclotomic model sets: the existence
//! predicate, the explicit construction over K_n, exact verification, and the
//! homothety search that places a constructed polygon inside a model set.

use num_integer::Integer;
use serde::Serialize;

use crate::cyclotomic::{CyclotomicNumber, RealCyclotomicNumber};
use crate::error::{CycError, Result};
use crate::geometry::convex_hull;
use crate::model_sets::Patch;

/// A strictly convex polygon with exact vertices in K_n, listed
/// counterclockwise; the list is the full vertex set of its convex hull.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    n: u64,
    vertices: Vec<CyclotomicNumber>,
}

impl Polygon {
    pub fn new(n: u64, vertices: Vec<CyclotomicNumber>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(CycError::Degenerate(format!(
                "a polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        for v in &vertices {
            if v.conductor() != n {
                return Err(CycError::ConductorMismatch(n, v.conductor()));
            }
        }
        // strict convexity + ccw: the hull must reproduce the list up to a
        // cyclic rotation (collinear triples and duplicates shrink the hull).
        let hull = convex_hull(&vertices)?;
        if hull.len() != vertices.len() {
            return Err(CycError::Degenerate(
                "vertex list is not the vertex set of its convex hull".into(),
            ));
        }
        let start = vertices
            .iter()
            .position(|v| v == &hull[0])
            .expect("hull vertices come from the input");
        let rotated_ok = (0..hull.len()).all(|i| vertices[(start + i) % hull.len()] == hull[i]);
        if !rotated_ok {
            return Err(CycError::Degenerate(
                "vertices are not in counterclockwise convex position".into(),
            ));
        }
        Ok(Polygon { n, vertices })
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn vertices(&self) -> &[CyclotomicNumber] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Image under z -> s*z + t, s a positive integer.
    pub fn scale_translate(&self, s: u64, t: &CyclotomicNumber) -> Result<Polygon> {
        if s == 0 {
            return Err(CycError::ZeroArgument);
        }
        let sq = crate::cyclotomic::Rational::from_integer(s.into());
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.scale(&sq).add(t))
            .collect::<Result<Vec<_>>>()?;
        Polygon::new(self.n, vertices)
    }
}

/// Exact certificate of affine regularity: the second-order recurrence
/// v_{j+1} + v_{j-1} - c_m * v_j has the same value for every j (cyclically),
/// with c_m = zeta_m + conj(zeta_m). For strictly convex vertex sequences this
/// characterizes non-singular affine images of the regular m-gon.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffineWitness {
    pub m: usize,
    /// zeta_m + conj(zeta_m), lifted to the working conductor.
    pub c_m: RealCyclotomicNumber,
    /// the constant value of the recurrence, at the working conductor.
    pub residual: CyclotomicNumber,
}

fn check_mn_domain(m: u64, n: u64) -> Result<()> {
    if m < 3 || n < 3 {
        return Err(CycError::Domain(format!(
            "polygon predicates need m, n >= 3, got ({m}, {n})"
        )));
    }
    if n % 4 == 2 {
        return Err(CycError::Domain(format!(
            "conductor n = 2 (mod 4) is rejected (use the odd representative), got {n}"
        )));
    }
    Ok(())
}

/// Whether an affinely regular m-gon exists inside a cyclotomic model set
/// with underlying module O_n: m in {3, 4, 6}, or m | n, or m = 2d with d an
/// odd divisor of n.
pub fn exists_affinely_regular(m: u64, n: u64) -> Result<bool> {
    check_mn_domain(m, n)?;
    Ok(matches!(m, 3 | 4 | 6)
        || n % m == 0
        || (m % 2 == 0 && (m / 2) % 2 == 1 && n % (m / 2) == 0))
}

/// All admissible m in [3, m_max], sorted. Complete once m_max >= max(6, 2n).
pub fn admissible_m(n: u64, m_max: u64) -> Result<Vec<u64>> {
    check_mn_domain(3, n)?;
    (3..=m_max).filter_map(|m| match exists_affinely_regular(m, n) {
        Ok(true) => Some(Ok(m)),
        Ok(false) => None,
        Err(e) => Some(Err(e)),
    }).collect()
}

/// Coordinates of zeta_m^j on the k_m-basis {1, zeta_m}: zeta_m^j =
/// a_j + b_j * zeta_m with a_j, b_j in Z[zeta_m + conj(zeta_m)]. Computed by
/// the recurrence x_{j+1} = c * x_j - x_{j-1} with c = zeta_m + conj(zeta_m).
pub fn basis_coords(j: i64, m: u64) -> Result<(RealCyclotomicNumber, RealCyclotomicNumber)> {
    if m < 3 {
        return Err(CycError::Domain(format!("basis_coords needs m >= 3, got {m}")));
    }
    let c = RealCyclotomicNumber::real_generator(m)?.into_value();
    let jj = j.rem_euclid(m as i64) as u64;
    let mut a = CyclotomicNumber::one(m);
    let mut b = CyclotomicNumber::zero(m);
    for _ in 0..jj {
        // zeta^(j+1) = (a + b*zeta)*zeta = b*(c*zeta - 1) + a*zeta.
        let next_a = b.neg();
        let next_b = a.add(&c.mul(&b)?)?;
        a = next_a;
        b = next_b;
    }
    Ok((RealCyclotomicNumber::new(a)?, RealCyclotomicNumber::new(b)?))
}

/// The inclusion k_m -> k_n subset K_n, realized by lifting to lcm(m, n) and
/// lowering to n. Defined exactly when the target field contains the value.
fn iota(x: &CyclotomicNumber, m: u64, n: u64) -> Result<CyclotomicNumber> {
    let l = m.lcm(&n);
    let lifted = x.lift(l)?;
    lifted.try_lower(n)?.ok_or_else(|| {
        CycError::Domain(format!(
            "defect: k_{m} element {x} does not lower to conductor {n} despite admissibility"
        ))
    })
}

/// The affinely regular m-gon with vertices in O_n given by the linear
/// extension of 1 -> 1, zeta_m -> zeta_n applied to the regular m-gon.
pub fn construct_polygon_in_field(m: u64, n: u64) -> Result<Polygon> {
    check_mn_domain(m, n)?;
    if !exists_affinely_regular(m, n)? {
        return Err(CycError::Domain(format!(
            "no affinely regular {m}-gon exists in a cyclotomic model set over O_{n}"
        )));
    }
    let zeta_n = CyclotomicNumber::root_of_unity(n)?;
    let mut vertices = Vec::with_capacity(m as usize);
    for j in 0..m {
        let (a, b) = basis_coords(j as i64, m)?;
        let ia = iota(a.value(), m, n)?;
        let ib = iota(b.value(), m, n)?;
        vertices.push(ia.add(&ib.mul(&zeta_n)?)?);
    }
    Polygon::new(n, vertices)
}

/// Exact affine-regularity check. Returns the witness, or None when the
/// recurrence residual is not constant.
pub fn verify_affinely_regular(p: &Polygon) -> Result<Option<AffineWitness>> {
    let m = p.len() as u64;
    let work = m.lcm(&p.conductor());
    let zm = CyclotomicNumber::root_of_unity(m)?.lift(work)?;
    let c = zm.add(&zm.conj())?;
    let v: Vec<CyclotomicNumber> = p
        .vertices()
        .iter()
        .map(|x| x.lift(work))
        .collect::<Result<_>>()?;
    let mm = v.len();
    let mut residual: Option<CyclotomicNumber> = None;
    for j in 0..mm {
        let r = v[(j + 1) % mm]
            .add(&v[(j + mm - 1) % mm])?
            .sub(&c.mul(&v[j])?)?;
        match &residual {
            None => residual = Some(r),
            Some(r0) if *r0 != r => return Ok(None),
            _ => {}
        }
    }
    Ok(Some(AffineWitness {
        m: mm,
        c_m: RealCyclotomicNumber::new(c)?,
        residual: residual.expect("m >= 3"),
    }))
}

/// Result of placing a polygon inside a model set by a homothety
/// z -> scale * z + translate.
#[derive(Clone, Debug)]
pub struct Inflation {
    pub scale: u64,
    pub translate: CyclotomicNumber,
    pub polygon: Polygon,
}

/// Searches for an integer homothety mapping every vertex of P to a point of
/// the generated patch. Deterministic order: scale = 1, 2, ... up to
/// max_scale; for each scale, candidate translates are the patch points by
/// increasing embedded magnitude. Exhaustion is Inconclusive, never a
/// nonexistence verdict.
pub fn inflate_into_model_set(
    p: &Polygon,
    patch: &Patch,
    max_scale: u64,
) -> Result<Inflation> {
    if p.conductor() != patch.descriptor().conductor() {
        return Err(CycError::ConductorMismatch(
            p.conductor(),
            patch.descriptor().conductor(),
        ));
    }
    let mut candidates: Vec<(f64, &CyclotomicNumber)> = patch
        .points()
        .iter()
        .map(|t| {
            let (x, y) = t.embed_f64();
            (x.hypot(y), t)
        })
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(b.1)));
    let budget = crate::search_budget(2_000_000);
    let mut tried: u64 = 0;
    for s in 1..=max_scale {
        let sq = crate::cyclotomic::Rational::from_integer(s.into());
        let scaled: Vec<CyclotomicNumber> = p.vertices().iter().map(|v| v.scale(&sq)).collect();
        for (_, t) in &candidates {
            tried += 1;
            if tried > budget {
                return Err(CycError::Inconclusive);
            }
            let mut ok = true;
            for v in &scaled {
                if !patch.contains(&v.add(t)?) {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(Inflation {
                    scale: s,
                    translate: (*t).clone(),
                    polygon: p.scale_translate(s, t)?,
                });
            }
        }
    }
    Err(CycError::Inconclusive)
}

// polygon JSON: {"n": N, "vertices": [["c0", "c1", ...], ...]}.
impl Serialize for Polygon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Polygon", 2)?;
        st.serialize_field("n", &self.n)?;
        let vertices: Vec<Vec<String>> = self
            .vertices
            .iter()
            .map(|v| v.coeffs().iter().map(crate::cyclotomic::rational_to_string).collect())
            .collect();
        st.serialize_field("vertices", &vertices)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for Polygon {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        #[derive(serde::Deserialize)]
        struct Raw {
            n: u64,
            vertices: Vec<Vec<String>>,
        }
        let raw = Raw::deserialize(d)?;
        let vertices = raw
            .vertices
            .iter()
            .map(|row| {
                let coeffs = row
                    .iter()
                    .map(|c| {
                        crate::cyclotomic::parse_rational(c)
                            .ok_or_else(|| D::Error::custom("bad rational"))
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                CyclotomicNumber::from_coeffs(raw.n, coeffs).map_err(D::Error::custom)
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Polygon::new(raw.n, vertices).map_err(D::Error::custom)
    }
}

/// Parallel-chord ratio |Psi(z^2) - Psi(z^-1)| / |Psi(z) - Psi(1)| of an
/// affinely regular polygon, evaluated numerically; equals |1 + c_m|.
pub fn parallel_chord_ratio(p: &Polygon) -> Result<f64> {
    if p.len() < 4 {
        return Err(CycError::Degenerate("chord ratio needs m >= 4".into()));
    }
    let v = p.vertices();
    let m = v.len();
    let num = v[2].sub(&v[m - 1])?.embed().abs();
    let den = v[1].sub(&v[0])?.embed().abs();
    if den == 0.0 {
        return Err(CycError::Degenerate("repeated vertices".into()));
    }
    Ok(num / den)
}
