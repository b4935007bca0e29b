//! Finite patches of cyclotomic model sets.
//!
//! The crystallographic cases n in {3, 4} are lattice translates of O_n; the
//! cut-and-project cases n in {5, 8, 12} keep the points of O_n whose star
//! image lands in a convex polygonal window in the internal plane. Windows
//! are regular polygons with a rational circumradius plus a small generic
//! shift, so no star image ever lies exactly on the window boundary.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{phi, CyclotomicNumber, Rational};
use crate::error::{CycError, Result};
use crate::interval::real_sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelSetKind {
    Lattice,
    CutAndProject,
}

/// Description of a cyclotomic model set inside a translate of O_n.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSetDescriptor {
    n: u64,
    kind: ModelSetKind,
    star_exponent: u64,
    window_circumradius: Rational,
    window_shift: CyclotomicNumber,
    translate: CyclotomicNumber,
}

/// Documented default window circumradius for the cut-and-project cases.
/// Large enough that the window contains the unit circle (so all n-th roots
/// of unity are members when the translate is zero), small enough that the
/// short lattice vectors with large star images stay excluded.
pub const DEFAULT_WINDOW_CIRCUMRADIUS: (i64, i64) = (13, 10);

fn default_shift(n: u64) -> CyclotomicNumber {
    // a small irrational generic shift in the internal plane:
    // (618/1000000) * zeta_n.
    CyclotomicNumber::root_of_unity(n)
        .expect("valid conductor")
        .scale(&Rational::new(BigInt::from(618), BigInt::from(1_000_000)))
}

impl ModelSetDescriptor {
    /// Default descriptor for a supported conductor: lattice for n in {3, 4},
    /// cut-and-project for n in {5, 8, 12}.
    pub fn new(n: u64) -> Result<Self> {
        match n {
            3 | 4 => Self::lattice(n),
            5 | 8 | 12 => Self::cut_and_project(n),
            _ => Err(CycError::Domain(format!(
                "supported conductors are 3, 4 (lattice) and 5, 8, 12 (cut-and-project), got {n}"
            ))),
        }
    }

    pub fn lattice(n: u64) -> Result<Self> {
        if !matches!(n, 3 | 4) {
            return Err(CycError::Domain(format!("lattice model sets need n in {{3, 4}}, got {n}")));
        }
        Ok(ModelSetDescriptor {
            n,
            kind: ModelSetKind::Lattice,
            star_exponent: 1,
            window_circumradius: Rational::zero(),
            window_shift: CyclotomicNumber::zero(n),
            translate: CyclotomicNumber::zero(n),
        })
    }

    pub fn cut_and_project(n: u64) -> Result<Self> {
        // fixed star exponents: the standard non-identity, non-conjugate choice.
        let star_exponent = match n {
            5 => 2,
            8 => 3,
            12 => 5,
            _ => {
                return Err(CycError::Domain(format!(
                    "cut-and-project model sets need n in {{5, 8, 12}}, got {n}"
                )))
            }
        };
        Ok(ModelSetDescriptor {
            n,
            kind: ModelSetKind::CutAndProject,
            star_exponent,
            window_circumradius: Rational::new(
                BigInt::from(DEFAULT_WINDOW_CIRCUMRADIUS.0),
                BigInt::from(DEFAULT_WINDOW_CIRCUMRADIUS.1),
            ),
            window_shift: default_shift(n),
            translate: CyclotomicNumber::zero(n),
        })
    }

    pub fn with_window_circumradius(mut self, r: Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(CycError::Degenerate("window circumradius must be positive".into()));
        }
        self.window_circumradius = r;
        Ok(self)
    }

    pub fn with_translate(mut self, t: CyclotomicNumber) -> Result<Self> {
        if t.conductor() != self.n {
            return Err(CycError::ConductorMismatch(self.n, t.conductor()));
        }
        self.translate = t;
        Ok(self)
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn kind(&self) -> ModelSetKind {
        self.kind
    }

    pub fn star_exponent(&self) -> u64 {
        self.star_exponent
    }

    pub fn window_circumradius(&self) -> &Rational {
        &self.window_circumradius
    }

    pub fn translate(&self) -> &CyclotomicNumber {
        &self.translate
    }

    /// The star map sigma: zeta_n -> zeta_n^a into the internal plane.
    pub fn star_map(&self, z: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        if self.kind != ModelSetKind::CutAndProject {
            return Err(CycError::Domain("star map is undefined for lattice model sets".into()));
        }
        if z.conductor() != self.n {
            return Err(CycError::ConductorMismatch(self.n, z.conductor()));
        }
        z.galois_apply(self.star_exponent as i64)
    }

    /// Counterclockwise window vertices as exact elements of K_n (regular
    /// n-gon for even n, regular 2n-gon for odd n, shifted generically).
    pub fn window_vertices(&self) -> Result<Vec<CyclotomicNumber>> {
        if self.kind != ModelSetKind::CutAndProject {
            return Err(CycError::Domain("lattice model sets have no window".into()));
        }
        let n = self.n;
        let (root, count) = if n % 2 == 0 {
            (CyclotomicNumber::root_of_unity(n)?, n)
        } else {
            // primitive 2n-th root inside K_n, at angle pi/n.
            (CyclotomicNumber::root_power(n, ((n + 1) / 2) as i64)?.neg(), 2 * n)
        };
        let mut out = Vec::with_capacity(count as usize);
        let mut v = CyclotomicNumber::one(n);
        for _ in 0..count {
            out.push(v.scale(&self.window_circumradius).add(&self.window_shift)?);
            v = v.mul(&root)?;
        }
        Ok(out)
    }

    /// Exact window membership of an internal-plane point. Boundary
    /// incidence is an error by design, never resolved by tolerance.
    pub fn window_contains(&self, p: &CyclotomicNumber) -> Result<bool> {
        let verts = self.window_vertices()?;
        for i in 0..verts.len() {
            let j = (i + 1) % verts.len();
            match crate::geometry::orientation(&verts[i], &verts[j], p)? {
                0 => return Err(CycError::WindowBoundaryIncidence),
                -1 => return Ok(false),
                _ => {}
            }
        }
        Ok(true)
    }

    /// Exact model-set membership (no radius cutoff).
    pub fn is_member(&self, z: &CyclotomicNumber) -> Result<bool> {
        if z.conductor() != self.n {
            return Err(CycError::ConductorMismatch(self.n, z.conductor()));
        }
        let w = z.sub(&self.translate)?;
        if !w.is_integral() {
            return Ok(false);
        }
        match self.kind {
            ModelSetKind::Lattice => Ok(true),
            ModelSetKind::CutAndProject => {
                let star = w.galois_apply(self.star_exponent as i64)?;
                self.window_contains(&star)
            }
        }
    }
}

/// A finite, exhaustively generated patch of a model set.
#[derive(Clone, Debug)]
pub struct Patch {
    descriptor: ModelSetDescriptor,
    region_radius: Rational,
    points: Vec<CyclotomicNumber>,
    index: HashSet<CyclotomicNumber>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeloneDiagnostics {
    pub min_distance: f64,
    pub covering_radius_estimate: f64,
}

// guard for the coefficient enumeration.
const MAX_CANDIDATES: u128 = 400_000_000;
const BAND: f64 = 1e-7;

fn gauss_inverse(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let k = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for c in 0..k {
        let piv = (c..k).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))?;
        if m[piv][c].abs() < 1e-12 {
            return None;
        }
        m.swap(c, piv);
        let d = m[c][c];
        for j in 0..2 * k {
            m[c][j] /= d;
        }
        for i in 0..k {
            if i != c {
                let f = m[i][c];
                for j in 0..2 * k {
                    m[i][j] -= f * m[c][j];
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[k..].to_vec()).collect())
}

impl Patch {
    /// Enumerates all model-set points with |embed(z)| <= region_radius.
    ///
    /// Integer coefficient vectors run over a box derived from the inverse of
    /// the joint physical/internal embedding, so the enumeration is
    /// exhaustive. A floating prefilter with a conservative band keeps the
    /// exact tests confined to near-boundary candidates.
    pub fn generate(descriptor: &ModelSetDescriptor, region_radius: Rational) -> Result<Patch> {
        if !region_radius.is_positive() {
            return Err(CycError::Domain("region radius must be positive".into()));
        }
        let n = descriptor.n;
        let ph = phi(n)? as usize;
        let cap = descriptor.kind == ModelSetKind::CutAndProject;

        // f64 basis of the physical (and internal) embeddings.
        let mut basis_phys = Vec::with_capacity(ph);
        let mut basis_int = Vec::with_capacity(ph);
        for k in 0..ph {
            let zk = CyclotomicNumber::root_power(n, k as i64)?;
            let e = zk.embed();
            basis_phys.push((e.re, e.im));
            if cap {
                let es = zk.galois_apply(descriptor.star_exponent as i64)?.embed();
                basis_int.push((es.re, es.im));
            }
        }

        // rows: re/im of physical embedding, then re/im of internal embedding.
        let dims = if cap { 4 } else { 2 };
        let mut a = vec![vec![0.0f64; ph]; dims];
        for k in 0..ph {
            a[0][k] = basis_phys[k].0;
            a[1][k] = basis_phys[k].1;
            if cap {
                a[2][k] = basis_int[k].0;
                a[3][k] = basis_int[k].1;
            }
        }
        let inv = gauss_inverse(&a).ok_or_else(|| {
            CycError::Degenerate("embedding basis is numerically singular".into())
        })?;

        let r_f = region_radius.to_f64().unwrap_or(f64::INFINITY);
        let tr_e = descriptor.translate.embed();
        let r_phys = r_f + tr_e.abs() + 0.01;
        let r_int = if cap {
            descriptor.window_circumradius.to_f64().unwrap_or(0.0)
                + descriptor.window_shift.embed().abs()
                + 0.01
        } else {
            0.0
        };
        let caps: Vec<f64> = if cap {
            vec![r_phys, r_phys, r_int, r_int]
        } else {
            vec![r_phys, r_phys]
        };
        let mut bounds = Vec::with_capacity(ph);
        let mut total: u128 = 1;
        for k in 0..ph {
            let b: f64 = (0..dims).map(|j| inv[k][j].abs() * caps[j]).sum();
            let m = (b * 1.000001).ceil() as i64 + 1;
            bounds.push(m);
            total = total.saturating_mul((2 * m as u128) + 1);
        }
        if total > MAX_CANDIDATES {
            return Err(CycError::SearchSpaceTooLarge(total));
        }

        // window edges for the f64 prefilter: inward normals and offsets.
        let mut window_edges_f: Vec<(f64, f64, f64)> = Vec::new();
        if cap {
            let verts = descriptor.window_vertices()?;
            let vf: Vec<(f64, f64)> = verts
                .iter()
                .map(|v| {
                    let e = v.embed();
                    (e.re, e.im)
                })
                .collect();
            for i in 0..vf.len() {
                let (x0, y0) = vf[i];
                let (x1, y1) = vf[(i + 1) % vf.len()];
                // inward normal of the ccw edge.
                let (nx, ny) = (-(y1 - y0), x1 - x0);
                let len = nx.hypot(ny);
                let (nx, ny) = (nx / len, ny / len);
                window_edges_f.push((nx, ny, nx * x0 + ny * y0));
            }
        }

        let rsq = &region_radius * &region_radius;
        let mut points = Vec::new();
        let mut coeff = vec![0i64; ph];
        let mut stack_phys = vec![(tr_e.re, tr_e.im); ph + 1];
        let mut stack_int = vec![(0.0f64, 0.0f64); ph + 1];

        // odometer over the coefficient box with incremental partial sums.
        enumerate_box(
            &bounds,
            0,
            &mut coeff,
            &mut stack_phys,
            &mut stack_int,
            &basis_phys,
            &basis_int,
            &mut |coeff, (px, py), (ix, iy)| {
                let d2 = px * px + py * py;
                let out_r = d2 > (r_f + BAND) * (r_f + BAND);
                if out_r {
                    return Ok(());
                }
                let mut window_fast_in = true;
                let mut window_fast_out = false;
                for &(nx, ny, c) in &window_edges_f {
                    let s = nx * ix + ny * iy - c;
                    if s < -BAND {
                        window_fast_out = true;
                        break;
                    }
                    if s < BAND {
                        window_fast_in = false;
                    }
                }
                if window_fast_out {
                    return Ok(());
                }
                let in_r_fast = d2 < (r_f - BAND) * (r_f - BAND);
                if in_r_fast && window_fast_in {
                    points.push(point_from_coeffs(descriptor, coeff)?);
                    return Ok(());
                }
                // near a boundary: decide exactly.
                let z = point_from_coeffs(descriptor, coeff)?;
                let nsq = z.norm_square();
                let diff = CyclotomicNumber::from_rational(n, rsq.clone()).sub(nsq.value())?;
                if real_sign(&diff)? < 0 {
                    return Ok(());
                }
                if cap {
                    let star = z.sub(&descriptor.translate)?.galois_apply(descriptor.star_exponent as i64)?;
                    if !descriptor.window_contains(&star)? {
                        return Ok(());
                    }
                }
                points.push(z);
                Ok(())
            },
        )?;

        points.sort();
        let index: HashSet<CyclotomicNumber> = points.iter().cloned().collect();
        Ok(Patch {
            descriptor: descriptor.clone(),
            region_radius,
            points,
            index,
        })
    }

    pub fn descriptor(&self) -> &ModelSetDescriptor {
        &self.descriptor
    }

    pub fn region_radius(&self) -> &Rational {
        &self.region_radius
    }

    /// Points in canonical (coefficient-lexicographic) order.
    pub fn points(&self) -> &[CyclotomicNumber] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Membership in the generated set. For z within the region radius this
    /// coincides with model-set membership, by exhaustiveness.
    pub fn contains(&self, z: &CyclotomicNumber) -> bool {
        self.index.contains(z)
    }

    /// Minimum pairwise distance and a sampled covering-radius estimate.
    pub fn delone_diagnostics(&self) -> Result<DeloneDiagnostics> {
        if self.points.len() < 2 {
            return Err(CycError::Degenerate("need at least 2 points".into()));
        }
        let coords: Vec<(f64, f64)> = self.points.iter().map(|p| p.embed_f64()).collect();
        let mut min_d2 = f64::INFINITY;
        for i in 0..coords.len() {
            for j in (i + 1)..coords.len() {
                let dx = coords[i].0 - coords[j].0;
                let dy = coords[i].1 - coords[j].1;
                min_d2 = min_d2.min(dx * dx + dy * dy);
            }
        }
        // interior-restricted covering estimate over a sample grid.
        let r = self.region_radius.to_f64().unwrap_or(1.0) * 0.7;
        let step = 0.25f64;
        let mut covering: f64 = 0.0;
        let cells = (2.0 * r / step).ceil() as i64;
        for gi in 0..=cells {
            for gj in 0..=cells {
                let x = -r + gi as f64 * step;
                let y = -r + gj as f64 * step;
                if x * x + y * y > r * r {
                    continue;
                }
                let nearest = coords
                    .iter()
                    .map(|&(px, py)| ((px - x).powi(2) + (py - y).powi(2)).sqrt())
                    .fold(f64::INFINITY, f64::min);
                covering = covering.max(nearest);
            }
        }
        Ok(DeloneDiagnostics {
            min_distance: min_d2.sqrt(),
            covering_radius_estimate: covering,
        })
    }
}

fn point_from_coeffs(d: &ModelSetDescriptor, coeff: &[i64]) -> Result<CyclotomicNumber> {
    CyclotomicNumber::from_integer_coeffs(d.n, coeff)?.add(&d.translate)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_box(
    bounds: &[i64],
    depth: usize,
    coeff: &mut Vec<i64>,
    stack_phys: &mut Vec<(f64, f64)>,
    stack_int: &mut Vec<(f64, f64)>,
    basis_phys: &[(f64, f64)],
    basis_int: &[(f64, f64)],
    visit: &mut dyn FnMut(&[i64], (f64, f64), (f64, f64)) -> Result<()>,
) -> Result<()> {
    if depth == bounds.len() {
        return visit(coeff, stack_phys[depth], stack_int[depth]);
    }
    let m = bounds[depth];
    for a in -m..=m {
        coeff[depth] = a;
        let (px, py) = stack_phys[depth];
        stack_phys[depth + 1] = (
            px + a as f64 * basis_phys[depth].0,
            py + a as f64 * basis_phys[depth].1,
        );
        if !basis_int.is_empty() {
            let (ix, iy) = stack_int[depth];
            stack_int[depth + 1] = (
                ix + a as f64 * basis_int[depth].0,
                iy + a as f64 * basis_int[depth].1,
            );
        }
        enumerate_box(
            bounds, depth + 1, coeff, stack_phys, stack_int, basis_phys, basis_int, visit,
        )?;
    }
    Ok(())
}

// ---- JSON form ----

#[derive(Serialize, Deserialize)]
struct DescriptorJson {
    n: u64,
    kind: ModelSetKind,
    star_exponent: u64,
    window_circumradius: String,
    window_shift: CyclotomicNumber,
    translate: CyclotomicNumber,
}

#[derive(Serialize, Deserialize)]
struct PatchJson {
    descriptor: DescriptorJson,
    region_radius: String,
    /// integer coordinates of z - translate on the power basis.
    points: Vec<Vec<i64>>,
}

impl Serialize for ModelSetDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DescriptorJson {
            n: self.n,
            kind: self.kind,
            star_exponent: self.star_exponent,
            window_circumradius: crate::cyclotomic::rational_to_string(&self.window_circumradius),
            window_shift: self.window_shift.clone(),
            translate: self.translate.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModelSetDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DescriptorJson::deserialize(d)?;
        let r = crate::cyclotomic::parse_rational(&raw.window_circumradius)
            .ok_or_else(|| serde::de::Error::custom("bad circumradius"))?;
        Ok(ModelSetDescriptor {
            n: raw.n,
            kind: raw.kind,
            star_exponent: raw.star_exponent,
            window_circumradius: r,
            window_shift: raw.window_shift,
            translate: raw.translate,
        })
    }
}

impl Serialize for Patch {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error;
        let points = self
            .points
            .iter()
            .map(|p| {
                let w = p.sub(&self.descriptor.translate).map_err(S::Error::custom)?;
                w.coeffs()
                    .iter()
                    .map(|c| {
                        if !c.is_integer() {
                            return Err(S::Error::custom("non-integral patch point"));
                        }
                        c.numer().to_i64().ok_or_else(|| S::Error::custom("coefficient overflow"))
                    })
                    .collect::<std::result::Result<Vec<i64>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        PatchJson {
            descriptor: DescriptorJson {
                n: self.descriptor.n,
                kind: self.descriptor.kind,
                star_exponent: self.descriptor.star_exponent,
                window_circumradius: crate::cyclotomic::rational_to_string(
                    &self.descriptor.window_circumradius,
                ),
                window_shift: self.descriptor.window_shift.clone(),
                translate: self.descriptor.translate.clone(),
            },
            region_radius: crate::cyclotomic::rational_to_string(&self.region_radius),
            points,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Patch {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = PatchJson::deserialize(d)?;
        let descriptor = ModelSetDescriptor {
            n: raw.descriptor.n,
            kind: raw.descriptor.kind,
            star_exponent: raw.descriptor.star_exponent,
            window_circumradius: crate::cyclotomic::parse_rational(
                &raw.descriptor.window_circumradius,
            )
            .ok_or_else(|| D::Error::custom("bad circumradius"))?,
            window_shift: raw.descriptor.window_shift,
            translate: raw.descriptor.translate,
        };
        let region_radius = crate::cyclotomic::parse_rational(&raw.region_radius)
            .ok_or_else(|| D::Error::custom("bad radius"))?;
        let mut points = raw
            .points
            .iter()
            .map(|v| {
                CyclotomicNumber::from_integer_coeffs(descriptor.n, v)
                    .and_then(|w| w.add(&descriptor.translate))
                    .map_err(D::Error::custom)
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        points.sort();
        let index = points.iter().cloned().collect();
        Ok(Patch { descriptor, region_radius, points, index })
    }
}

pub fn rational_from_f64(x: f64) -> Result<Rational> {
    BigRational::from_float(x).ok_or_else(|| CycError::Domain(format!("{x} is not finite")))
}
