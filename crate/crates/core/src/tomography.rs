//! Discrete parallel X-rays on finite subsets of model-set patches:
//! U-polygons, the vertex-switching construction producing distinct convex
//! subsets with identical X-rays, the direction-count lower bound, and a
//! small-instance brute-force determination oracle.
//!
//! All statements here are relativized to a finite patch: a collision
//! certifies non-determination, while NoCollision at one radius does not
//! certify determination of the infinite set.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cyclotomic::{CyclotomicNumber, Rational};
use crate::error::{CycError, Result};
use crate::geometry::{convex_hull, point_in_hull};
use crate::model_sets::{ModelSetDescriptor, Patch};
use crate::polygon::{construct_polygon_in_field, inflate_into_model_set, Polygon};

/// A direction of the plane: a nonzero element of O_n modulo real scaling.
/// The stored representative has primitive integer coefficients with the
/// first nonzero one positive; equality is exact parallelism (cross = 0),
/// which is coarser than equality of representatives.
#[derive(Clone, Debug)]
pub struct Direction {
    n: u64,
    rep: CyclotomicNumber,
}

impl Direction {
    pub fn new(z: &CyclotomicNumber) -> Result<Self> {
        if z.is_zero() {
            return Err(CycError::Degenerate("the zero vector has no direction".into()));
        }
        // clear denominators, divide by the content, normalize the sign.
        let mut denom_lcm = BigInt::from(1);
        for c in z.coeffs() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = z
            .coeffs()
            .iter()
            .map(|c| (c * Rational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        let first_neg = ints.iter().find(|v| !v.is_zero()).map(|v| v.is_negative()).unwrap_or(false);
        if first_neg {
            content = -content;
        }
        let coeffs: Vec<Rational> = ints
            .iter()
            .map(|v| Rational::from_integer(v / &content))
            .collect();
        Ok(Direction { n: z.conductor(), rep: CyclotomicNumber::from_coeffs(z.conductor(), coeffs)? })
    }

    pub fn from_integer_coeffs(n: u64, coeffs: &[i64]) -> Result<Self> {
        Self::new(&CyclotomicNumber::from_integer_coeffs(n, coeffs)?)
    }

    /// The direction of the difference b - a.
    pub fn from_points(a: &CyclotomicNumber, b: &CyclotomicNumber) -> Result<Self> {
        Self::new(&b.sub(a)?)
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn rep(&self) -> &CyclotomicNumber {
        &self.rep
    }

    pub fn is_parallel_to(&self, other: &Direction) -> Result<bool> {
        if self.n != other.n {
            return Err(CycError::ConductorMismatch(self.n, other.n));
        }
        Ok(self.rep.cross(&other.rep)?.is_zero())
    }
}

impl PartialEq for Direction {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rep.cross(&other.rep).map(|c| c.is_zero()).unwrap_or(false)
    }
}

impl Eq for Direction {}

impl Serialize for Direction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Direction", 2)?;
        st.serialize_field("n", &self.n)?;
        let coeffs: Vec<String> =
            self.rep.coeffs().iter().map(crate::cyclotomic::rational_to_string).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// The X-ray of a finite set in one direction: counts per supported line.
/// Lines are keyed exactly by kappa(x) = cross(x, rep); two points share a
/// key iff they lie on a common line in the direction.
#[derive(Clone, Debug, PartialEq)]
pub struct XRayTable {
    pub direction: Direction,
    pub buckets: BTreeMap<CyclotomicNumber, usize>,
}

impl XRayTable {
    pub fn total(&self) -> usize {
        self.buckets.values().sum()
    }
}

impl Serialize for XRayTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct Bucket {
            key: Vec<String>,
            count: usize,
        }
        let mut st = s.serialize_struct("XRayTable", 2)?;
        st.serialize_field("direction", &self.direction)?;
        let buckets: Vec<Bucket> = self
            .buckets
            .iter()
            .map(|(k, &count)| Bucket {
                key: k.coeffs().iter().map(crate::cyclotomic::rational_to_string).collect(),
                count,
            })
            .collect();
        st.serialize_field("buckets", &buckets)?;
        st.end()
    }
}

/// Discrete parallel X-ray of the set F in direction u. Duplicate input
/// points are collapsed (F is a set).
pub fn xray(f: &[CyclotomicNumber], u: &Direction) -> Result<XRayTable> {
    let mut seen = HashSet::new();
    let mut buckets: BTreeMap<CyclotomicNumber, usize> = BTreeMap::new();
    for x in f {
        if x.conductor() != u.n {
            return Err(CycError::ConductorMismatch(u.n, x.conductor()));
        }
        if !seen.insert(x.clone()) {
            continue;
        }
        let key = x.cross(&u.rep)?;
        *buckets.entry(key).or_insert(0) += 1;
    }
    Ok(XRayTable { direction: u.clone(), buckets })
}

/// Whether F and F' have identical X-rays in every direction of U.
pub fn xrays_equal(f: &[CyclotomicNumber], g: &[CyclotomicNumber], us: &[Direction]) -> Result<bool> {
    for u in us {
        if xray(f, u)?.buckets != xray(g, u)?.buckets {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether P is a U-polygon: for every vertex v and every direction u, the
/// line through v in direction u meets another vertex.
pub fn is_u_polygon(p: &Polygon, us: &[Direction]) -> Result<bool> {
    let v = p.vertices();
    for u in us {
        for i in 0..v.len() {
            let mut met = false;
            for j in 0..v.len() {
                if i == j {
                    continue;
                }
                if v[i].sub(&v[j])?.cross(&u.rep)?.is_zero() {
                    met = true;
                    break;
                }
            }
            if !met {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The pairwise non-parallel edge directions of a convex polygon.
pub fn edge_directions(p: &Polygon) -> Result<Vec<Direction>> {
    let v = p.vertices();
    let mut out: Vec<Direction> = Vec::new();
    for i in 0..v.len() {
        let d = Direction::from_points(&v[i], &v[(i + 1) % v.len()])?;
        let mut dup = false;
        for e in &out {
            if e.is_parallel_to(&d)? {
                dup = true;
                break;
            }
        }
        if !dup {
            out.push(d);
        }
    }
    Ok(out)
}

/// Whether F = conv(F) intersected with the patch, i.e. F is a convex subset
/// of the patch. F must consist of patch points.
pub fn is_convex_subset(f: &[CyclotomicNumber], patch: &Patch) -> Result<bool> {
    let fset: HashSet<&CyclotomicNumber> = f.iter().collect();
    for x in f {
        if !patch.contains(x) {
            return Err(CycError::Domain(format!("{x} is not a patch point")));
        }
    }
    if f.len() <= 1 {
        return Ok(true);
    }
    let hull = convex_hull(f)?;
    for z in patch.points() {
        if fset.contains(z) {
            continue;
        }
        if point_in_hull(&hull, z)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The switching construction: splits the vertices of a U-polygon into the
/// two alternation classes V (even cyclic indices from the coefficient-
/// lexicographically least vertex) and V', and pads both with the patch
/// points strictly inside the polygon. The resulting sets are distinct,
/// equinumerous convex subsets of the patch with identical X-rays in the
/// directions of U; all five facts are asserted before returning.
pub fn build_counterexample(
    p: &Polygon,
    patch: &Patch,
    us: &[Direction],
) -> Result<(Vec<CyclotomicNumber>, Vec<CyclotomicNumber>)> {
    if !is_u_polygon(p, us)? {
        return Err(CycError::Domain("polygon is not a U-polygon for the given directions".into()));
    }
    let v = p.vertices();
    if v.len() % 2 != 0 {
        // U-polygons have an even number of vertices; reaching this with a
        // genuine U-polygon would be a defect upstream.
        return Err(CycError::Degenerate(format!(
            "U-polygon with odd vertex count {}",
            v.len()
        )));
    }
    for x in v {
        if !patch.contains(x) {
            return Err(CycError::Domain(format!("vertex {x} lies outside the patch")));
        }
    }
    let start = (0..v.len()).min_by_key(|&i| &v[i]).expect("nonempty");
    let vset: HashSet<&CyclotomicNumber> = v.iter().collect();
    let hull = convex_hull(v)?;
    let mut interior: Vec<CyclotomicNumber> = Vec::new();
    for z in patch.points() {
        if !vset.contains(z) && point_in_hull(&hull, z)? {
            interior.push(z.clone());
        }
    }
    let mut f = interior.clone();
    let mut g = interior;
    for k in 0..v.len() {
        let x = v[(start + k) % v.len()].clone();
        if k % 2 == 0 {
            f.push(x);
        } else {
            g.push(x);
        }
    }
    f.sort();
    g.sort();
    // switching soundness, asserted on every run.
    if f == g {
        return Err(CycError::Degenerate("switching produced identical sets".into()));
    }
    if f.len() != g.len() {
        return Err(CycError::Degenerate("switching produced unequal cardinalities".into()));
    }
    if !xrays_equal(&f, &g, us)? {
        return Err(CycError::Degenerate("switching produced unequal X-rays".into()));
    }
    if !is_convex_subset(&f, patch)? || !is_convex_subset(&g, patch)? {
        return Err(CycError::Degenerate("switching produced a non-convex subset".into()));
    }
    Ok((f, g))
}

/// Outcome of the brute-force determination probe.
#[derive(Clone, Debug, PartialEq)]
pub enum Determination {
    NoCollision,
    Collision(Vec<CyclotomicNumber>, Vec<CyclotomicNumber>),
}

/// Exhaustively enumerates convex subsets of the patch with at most size_cap
/// points, in canonical order (by size, then lexicographically over sorted
/// patch points), and reports the first pair with identical X-rays in all
/// directions of U. The budget caps the number of subsets examined.
pub fn determination_bruteforce(
    patch: &Patch,
    us: &[Direction],
    size_cap: usize,
) -> Result<Determination> {
    let pts = patch.points();
    let budget = crate::search_budget(2_000_000);
    let mut examined: u64 = 0;
    type Sig = Vec<Vec<(CyclotomicNumber, usize)>>;
    let mut seen: HashMap<Sig, Vec<CyclotomicNumber>> = HashMap::new();
    for size in 1..=size_cap.min(pts.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            examined += 1;
            if examined > budget {
                return Err(CycError::Inconclusive);
            }
            let subset: Vec<CyclotomicNumber> = idx.iter().map(|&i| pts[i].clone()).collect();
            if is_convex_subset(&subset, patch)? {
                let sig: Sig = us
                    .iter()
                    .map(|u| {
                        xray(&subset, u).map(|t| t.buckets.into_iter().collect::<Vec<_>>())
                    })
                    .collect::<Result<_>>()?;
                if let Some(prev) = seen.get(&sig) {
                    return Ok(Determination::Collision(prev.clone(), subset));
                }
                seen.insert(sig, subset);
            }
            // next combination in lexicographic order.
            let Some(i) = (0..size).rev().find(|&i| idx[i] != i + pts.len() - size) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(Determination::NoCollision)
}

fn check_n_domain(n: u64) -> Result<()> {
    if n < 3 || n % 4 == 2 {
        return Err(CycError::Domain(format!(
            "need n >= 3 with n != 2 (mod 4), got {n}"
        )));
    }
    Ok(())
}

/// The lower bound max{3, lcm(n, 2)/2}: any number k of directions that
/// determines the convex subsets must strictly exceed this value.
pub fn min_k_bound(n: u64) -> Result<u64> {
    check_n_domain(n)?;
    Ok((n.lcm(&2) / 2).max(3))
}

/// Certifies min_k_bound(n): constructs the affinely regular m-gon with
/// m = lcm(n, 2) (falling back to m = 6 when lcm(n, 2)/2 < 3), inflates it
/// into the patch, and returns it with its edge-direction set, whose
/// cardinality equals the bound.
pub fn witness_bound(
    n: u64,
    patch: &Patch,
    max_scale: u64,
) -> Result<(Vec<Direction>, Polygon)> {
    check_n_domain(n)?;
    let m0 = n.lcm(&2);
    let m = if m0 / 2 < 3 { 6 } else { m0 };
    let p = construct_polygon_in_field(m, n)?;
    let placed = inflate_into_model_set(&p, patch, max_scale)?;
    let us = edge_directions(&placed.polygon)?;
    if us.len() as u64 != min_k_bound(n)? {
        return Err(CycError::Degenerate(format!(
            "defect: witness for n = {n} has {} edge directions, expected {}",
            us.len(),
            min_k_bound(n)?
        )));
    }
    Ok((us, placed.polygon))
}

/// Convenience: a default descriptor's patch for tomography demos.
pub fn demo_patch(n: u64, radius: i64) -> Result<Patch> {
    let d = ModelSetDescriptor::new(n)?;
    Patch::generate(&d, Rational::from_integer(BigInt::from(radius)))
}
