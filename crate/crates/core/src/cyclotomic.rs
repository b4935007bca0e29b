//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! Elements are stored on the power basis {zeta_N^k : k < phi(N)}, reduced
//! modulo the N-th cyclotomic polynomial, with arbitrary-precision rational
//! coefficients. Canonical reduced form makes equality and hashing decidable.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{CycError, Result};
use crate::fields;

pub type Rational = BigRational;

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient.
pub fn phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(CycError::ZeroArgument);
    }
    let mut out = 1u64;
    for (p, e) in factorize(n) {
        out *= p.pow(e - 1) * (p - 1);
    }
    Ok(out)
}

/// Moebius function.
pub fn mobius(n: u64) -> Result<i32> {
    if n == 0 {
        return Err(CycError::ZeroArgument);
    }
    let fac = factorize(n);
    if fac.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if fac.len() % 2 == 0 { 1 } else { -1 })
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

// ---- integer polynomial helpers (ascending coefficients) ----

fn poly_trim(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

/// Exact division of integer polynomials; the divisor must be monic (or
/// divide exactly, as it does for cyclotomic factors of x^n - 1).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    let lead = &den[dn];
    assert!(!lead.is_zero());
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for i in (0..=qn).rev() {
        let c = &rem[i + dn] / lead;
        if !c.is_zero() {
            for (j, d) in den.iter().enumerate() {
                let v = &rem[i + j] - &c * d;
                rem[i + j] = v;
            }
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

static CYCLO_CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();

/// The n-th cyclotomic polynomial Phi_n, coefficients in ascending order.
/// Monic of degree phi(n), with Phi_n(zeta_n) = 0.
pub fn cyclotomic_polynomial(n: u64) -> Result<Vec<BigInt>> {
    if n == 0 {
        return Err(CycError::ZeroArgument);
    }
    Ok(cyclo_arc(n).as_ref().clone())
}

fn cyclo_arc(n: u64) -> Arc<Vec<BigInt>> {
    let cache = CYCLO_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclo_arc(d);
        poly = poly_div_exact(&poly, &phi_d);
    }
    poly_trim(&mut poly);
    let arc = Arc::new(poly);
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

/// Cached per-conductor data: the reduction modulus and the reduced
/// representations of all powers zeta_N^j.
pub struct ConductorContext {
    pub n: u64,
    pub phi: usize,
    /// Phi_n, ascending coefficients, monic of degree phi.
    pub modulus: Vec<BigInt>,
    /// powers[j] = zeta_n^j reduced to the power basis, j < max(n, 2*phi - 1).
    pub powers: Vec<Vec<BigInt>>,
}

static CTX_CACHE: OnceLock<Mutex<HashMap<u64, Arc<ConductorContext>>>> = OnceLock::new();

impl ConductorContext {
    pub fn get(n: u64) -> Result<Arc<ConductorContext>> {
        if n == 0 {
            return Err(CycError::ZeroArgument);
        }
        let cache = CTX_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(c) = cache.lock().unwrap().get(&n) {
            return Ok(c.clone());
        }
        let ctx = Arc::new(Self::build(n)?);
        cache.lock().unwrap().insert(n, ctx.clone());
        Ok(ctx)
    }

    fn build(n: u64) -> Result<ConductorContext> {
        let ph = phi(n)? as usize;
        let modulus = cyclotomic_polynomial(n)?;
        debug_assert_eq!(modulus.len(), ph + 1);
        // enough rows for conductor-size exponents and for the high part of
        // a product of two reduced elements (degree up to 2*ph - 2).
        let rows = (n as usize).max(2 * ph - 1);
        let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
        let mut row = vec![BigInt::zero(); ph];
        row[0] = BigInt::one();
        powers.push(row.clone());
        for _ in 1..rows {
            // multiply by x, reduce the overflow using x^phi = -(lower part).
            let carry = row[ph - 1].clone();
            for i in (1..ph).rev() {
                row[i] = row[i - 1].clone();
            }
            row[0] = BigInt::zero();
            if !carry.is_zero() {
                for i in 0..ph {
                    let v = &row[i] - &carry * &modulus[i];
                    row[i] = v;
                }
            }
            powers.push(row.clone());
        }
        Ok(ConductorContext { n, phi: ph, modulus, powers })
    }

    fn power_row(&self, j: usize) -> &[BigInt] {
        debug_assert!(j < self.powers.len());
        &self.powers[j]
    }
}

/// An element of Q(zeta_N) in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicNumber {
    n: u64,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(n: u64) -> Self {
        let ph = phi(n).expect("positive conductor") as usize;
        CyclotomicNumber { n, coeffs: vec![Rational::zero(); ph] }
    }

    pub fn one(n: u64) -> Self {
        Self::from_rational(n, Rational::one())
    }

    pub fn from_rational(n: u64, q: Rational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = q;
        z
    }

    pub fn from_integer(n: u64, k: i64) -> Self {
        Self::from_rational(n, Rational::from_integer(BigInt::from(k)))
    }

    /// zeta_n itself.
    pub fn root_of_unity(n: u64) -> Result<Self> {
        Self::root_power(n, 1)
    }

    /// zeta_n^j, with j taken modulo n (negative allowed).
    pub fn root_power(n: u64, j: i64) -> Result<Self> {
        let ctx = ConductorContext::get(n)?;
        let jj = j.rem_euclid(n as i64) as usize;
        let coeffs = ctx.power_row(jj).iter().map(|c| Rational::from_integer(c.clone())).collect();
        Ok(CyclotomicNumber { n, coeffs })
    }

    pub fn from_coeffs(n: u64, coeffs: Vec<Rational>) -> Result<Self> {
        let expected = phi(n)? as usize;
        if coeffs.len() != expected {
            return Err(CycError::BadCoefficientLength { n, got: coeffs.len(), expected });
        }
        Ok(CyclotomicNumber { n, coeffs })
    }

    /// Builds from integer coordinates in the power basis.
    pub fn from_integer_coeffs(n: u64, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(
            n,
            coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect(),
        )
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Membership in O_n = Z[zeta_n]: integral coordinates on the power basis.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_same_conductor(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(CycError::ConductorMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_conductor(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CyclotomicNumber { n: self.n, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_conductor(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CyclotomicNumber { n: self.n, coeffs })
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CyclotomicNumber { n: self.n, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_conductor(other)?;
        let ctx = ConductorContext::get(self.n)?;
        let ph = ctx.phi;
        // schoolbook convolution, then reduction of the high part.
        let mut conv = vec![Rational::zero(); 2 * ph - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        let mut out = vec![Rational::zero(); ph];
        for (k, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < ph {
                out[k] += c;
            } else {
                for (i, r) in ctx.powers[k].iter().enumerate() {
                    if !r.is_zero() {
                        out[i] += &c * &Rational::from_integer(r.clone());
                    }
                }
            }
        }
        Ok(CyclotomicNumber { n: self.n, coeffs: out })
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Applies the Galois automorphism zeta_n -> zeta_n^a (gcd(a, n) = 1).
    pub fn galois_apply(&self, a: i64) -> Result<Self> {
        let n = self.n;
        let aa = a.rem_euclid(n as i64) as u64;
        if n > 1 && aa.gcd(&n) != 1 {
            return Err(CycError::NotCoprime { a, n });
        }
        let ctx = ConductorContext::get(n)?;
        let mut out = vec![Rational::zero(); ctx.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let target = ((aa as u128 * k as u128) % n.max(1) as u128) as usize;
            for (i, r) in ctx.power_row(target).iter().enumerate() {
                if !r.is_zero() {
                    out[i] += c * &Rational::from_integer(r.clone());
                }
            }
        }
        Ok(CyclotomicNumber { n, coeffs: out })
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois_apply(-1).expect("-1 is a unit mod n")
    }

    /// Exact test for membership in the maximal real subfield.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// z * conj(z), wrapped as a real value.
    pub fn norm_square(&self) -> RealCyclotomicNumber {
        let v = self.mul(&self.conj()).expect("same conductor");
        RealCyclotomicNumber::new(v).expect("z * conj(z) is real")
    }

    /// The plane cross value w*conj(o) - conj(w)*o. Purely imaginary; zero
    /// iff the two values are parallel as plane vectors.
    pub fn cross(&self, other: &Self) -> Result<Self> {
        let a = self.mul(&other.conj())?;
        let b = self.conj().mul(other)?;
        a.sub(&b)
    }

    /// Re-represents the value in Q(zeta_target), conductor(self) | target.
    pub fn lift(&self, target: u64) -> Result<Self> {
        if target == 0 {
            return Err(CycError::ZeroArgument);
        }
        if target % self.n != 0 {
            return Err(CycError::NotAMultiple { base: self.n, target });
        }
        if target == self.n {
            return Ok(self.clone());
        }
        let ctx = ConductorContext::get(target)?;
        let r = (target / self.n) as usize;
        let mut out = vec![Rational::zero(); ctx.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, row) in ctx.power_row(k * r).iter().enumerate() {
                if !row.is_zero() {
                    out[i] += c * &Rational::from_integer(row.clone());
                }
            }
        }
        Ok(CyclotomicNumber { n: target, coeffs: out })
    }

    /// Tries to re-represent the value at conductor `m`, where K_m must be a
    /// subfield of the current field. Returns `None` when the value does not
    /// lie in the image of Q(zeta_m).
    pub fn try_lower(&self, m: u64) -> Result<Option<Self>> {
        let n = self.n;
        if m == 0 {
            return Err(CycError::ZeroArgument);
        }
        if !fields::k_field_subset(m, n) {
            return Err(CycError::NotASubfield { sub: m, sup: n });
        }
        if m == n {
            return Ok(Some(self.clone()));
        }
        let ctx_n = ConductorContext::get(n)?;
        let phi_m = phi(m)? as usize;
        // images of zeta_m^k inside K_n, as columns of the linear system.
        let basis: Vec<Vec<Rational>> = (0..phi_m)
            .map(|k| image_of_root_power(&ctx_n, m, k as u64))
            .collect::<Result<_>>()?;
        match solve_exact(&basis, &self.coeffs) {
            Some(x) => Ok(Some(CyclotomicNumber { n: m, coeffs: x })),
            None => Ok(None),
        }
    }

    /// Lowest conductor n' | n with n' not congruent to 2 mod 4 that still
    /// represents the value.
    pub fn normalize_conductor(&self) -> Result<Self> {
        for d in divisors(self.n) {
            if d % 4 == 2 {
                continue;
            }
            if let Some(z) = self.try_lower(d)? {
                return Ok(z);
            }
        }
        Ok(self.clone())
    }
}

/// Image of zeta_m^k in K_n under the canonical inclusion K_m into K_n.
/// Requires K_m subset K_n, i.e. m | n, or m = 2o with o odd and o | n.
fn image_of_root_power(ctx_n: &ConductorContext, m: u64, k: u64) -> Result<Vec<Rational>> {
    let n = ctx_n.n;
    let (exp, sign) = if n % m == 0 {
        (((n / m) as u128 * k as u128 % n as u128) as usize, false)
    } else {
        // m = 2o, o odd, o | n: zeta_m = -zeta_o^((o+1)/2).
        let o = m / 2;
        debug_assert!(m % 4 == 2 && n % o == 0);
        let e_in_o = (k as u128 * ((o + 1) / 2) as u128 % o as u128) as u64;
        ((((n / o) as u128 * e_in_o as u128) % n as u128) as usize, k % 2 == 1)
    };
    let row = ctx_n.power_row(exp);
    Ok(row
        .iter()
        .map(|c| {
            let q = Rational::from_integer(c.clone());
            if sign {
                -q
            } else {
                q
            }
        })
        .collect())
}

/// Solves sum_k x_k * cols[k] = rhs exactly over Q, if consistent.
fn solve_exact(cols: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let rows = rhs.len();
    let ncols = cols.len();
    // augmented matrix, row-major.
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in c..=ncols {
            let v = &m[r][j] * &inv;
            m[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=ncols {
                    let v = &m[i][j] - &f * &m[r][j];
                    m[i][j] = v;
                }
            }
        }
        pivot_rows.push((r, c));
        r += 1;
        if r == rows {
            break;
        }
    }
    // inconsistency check.
    for i in r..rows {
        if !m[i][ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, col) in pivot_rows {
        x[col] = m[row][ncols].clone();
    }
    Some(x)
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z{}^{k}", self.n)?;
            } else {
                write!(f, "{c}*z{}^{k}", self.n)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// JSON form: {"n": N, "coeffs": ["p/q", ...]} with coeffs of length phi(N).
impl serde::Serialize for CyclotomicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CyclotomicNumber", 2)?;
        st.serialize_field("n", &self.n)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(rational_to_string).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            n: u64,
            coeffs: Vec<String>,
        }
        let raw = Raw::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| serde::de::Error::custom("bad rational")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CyclotomicNumber::from_coeffs(raw.n, coeffs).map_err(serde::de::Error::custom)
    }
}

pub fn rational_to_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rational::from_integer(n))
    }
}

/// A cyclotomic number fixed by complex conjugation: an element of the
/// maximal real subfield k_N = Q(zeta_N + conj(zeta_N)).
#[derive(Clone, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
pub struct RealCyclotomicNumber(CyclotomicNumber);

impl RealCyclotomicNumber {
    pub fn new(z: CyclotomicNumber) -> Result<Self> {
        if !z.is_real() {
            return Err(CycError::Domain(format!("{z} is not fixed by conjugation")));
        }
        Ok(RealCyclotomicNumber(z))
    }

    /// zeta_n + conj(zeta_n), the standard generator of k_n.
    pub fn real_generator(n: u64) -> Result<Self> {
        let z = CyclotomicNumber::root_of_unity(n)?;
        Self::new(z.add(&z.conj())?)
    }

    pub fn from_rational(n: u64, q: Rational) -> Self {
        RealCyclotomicNumber(CyclotomicNumber::from_rational(n, q))
    }

    pub fn value(&self) -> &CyclotomicNumber {
        &self.0
    }

    pub fn into_value(self) -> CyclotomicNumber {
        self.0
    }

    /// Membership in the real ring of integers o_n. The element lies in o_n
    /// exactly when it lies in O_n, since o_n = O_n intersected with k_n.
    pub fn is_integral(&self) -> bool {
        self.0.is_integral()
    }
}

/// Complex floating approximation with a rigorous absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmbedValue {
    pub re: f64,
    pub im: f64,
    pub bound: f64,
}

impl EmbedValue {
    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

impl CyclotomicNumber {
    /// Numeric evaluation under zeta_N -> exp(2*pi*i/N), with an absolute
    /// error bound. `precision` is in binary digits (>= 53).
    pub fn embed_with_precision(&self, precision: u32) -> EmbedValue {
        let terms = (precision as usize / 4).max(16);
        let (re_iv, im_iv) = crate::interval::embed_interval(self, terms);
        let re = re_iv.mid_f64();
        let im = im_iv.mid_f64();
        let slack = (re.abs() + im.abs() + 1.0) * 1e-15;
        EmbedValue {
            re,
            im,
            bound: re_iv.half_width_f64().max(im_iv.half_width_f64()) + slack,
        }
    }

    /// Default-precision embedding (64 binary digits).
    pub fn embed(&self) -> EmbedValue {
        self.embed_with_precision(64)
    }

    /// Fast unvalidated f64 evaluation; use only for plotting/filters.
    pub fn embed_f64(&self) -> (f64, f64) {
        let n = self.n as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = c.to_f64().unwrap_or(f64::NAN);
            let th = 2.0 * std::f64::consts::PI * (k as f64) / n;
            re += cf * th.cos();
            im += cf * th.sin();
        }
        (re, im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }

    #[test]
    fn phi_matches_bruteforce() {
        // independent oracle: count k in 1..=n with gcd(k, n) = 1.
        let brute = |n: u64| (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64;
        assert_eq!(phi(1).unwrap(), 1);
        assert_eq!(phi(8).unwrap(), brute(8));
        assert_eq!(phi(8).unwrap(), 4);
        assert_eq!(phi(12).unwrap(), brute(12));
        assert_eq!(phi(12).unwrap(), 4);
        for n in 1..=300 {
            assert_eq!(phi(n).unwrap(), brute(n), "phi({n})");
        }
        assert!(phi(0).is_err());
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert!(mobius(0).is_err());
        // oracle: sum over divisors of mobius is the unit impulse.
        for n in 1..=200u64 {
            let s: i32 = divisors(n).iter().map(|&d| mobius(d).unwrap()).sum();
            assert_eq!(s, if n == 1 { 1 } else { 0 });
        }
    }

    #[test]
    fn cyclotomic_polynomials() {
        let to_i = |p: Vec<BigInt>| p.iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(to_i(cyclotomic_polynomial(1).unwrap()), vec![-1, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(4).unwrap()), vec![1, 0, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(8).unwrap()), vec![1, 0, 0, 0, 1]);
        for n in 1..=100 {
            let p = cyclotomic_polynomial(n).unwrap();
            assert_eq!(p.len() as u64, phi(n).unwrap() + 1);
            assert!(p.last().unwrap().is_one());
        }
    }

    #[test]
    fn basic_arithmetic() {
        let i = CyclotomicNumber::root_of_unity(4).unwrap();
        assert_eq!(i.mul(&i).unwrap(), CyclotomicNumber::from_integer(4, -1));

        let w = CyclotomicNumber::root_of_unity(3).unwrap();
        let w2 = w.mul(&w).unwrap();
        assert_eq!(w.add(&w2).unwrap(), CyclotomicNumber::from_integer(3, -1));

        let x = CyclotomicNumber::from_coeffs(8, vec![q(3), q(-1), q(7), q(2)]).unwrap();
        assert_eq!(x.mul(&CyclotomicNumber::one(8)).unwrap(), x);
        assert_eq!(x.add(&x.neg()).unwrap(), CyclotomicNumber::zero(8));
    }

    #[test]
    fn galois_examples() {
        let z8 = CyclotomicNumber::root_of_unity(8).unwrap();
        assert_eq!(z8.galois_apply(-1).unwrap(), CyclotomicNumber::root_power(8, 7).unwrap());
        let c = z8.add(&z8.conj()).unwrap();
        let expect = CyclotomicNumber::root_power(8, 3)
            .unwrap()
            .add(&CyclotomicNumber::root_power(8, -3).unwrap())
            .unwrap();
        assert_eq!(c.galois_apply(3).unwrap(), expect);
        let x = CyclotomicNumber::from_coeffs(8, vec![q(1), q(2), q(3), q(4)]).unwrap();
        assert_eq!(x.galois_apply(1).unwrap(), x);
        assert!(z8.galois_apply(2).is_err());
    }

    #[test]
    fn reality_and_norms() {
        let z5 = CyclotomicNumber::root_of_unity(5).unwrap();
        assert!(z5.add(&z5.conj()).unwrap().is_real());
        assert!(!CyclotomicNumber::root_of_unity(4).unwrap().is_real());
        assert!(CyclotomicNumber::from_rational(12, Rational::new(BigInt::from(7), BigInt::from(3))).is_real());

        for n in [3u64, 4, 5, 8, 12] {
            let z = CyclotomicNumber::root_of_unity(n).unwrap();
            assert_eq!(z.norm_square().value(), &CyclotomicNumber::one(n));
        }
        assert!(CyclotomicNumber::zero(8).norm_square().value().is_zero());
        let one_plus_i = CyclotomicNumber::one(4)
            .add(&CyclotomicNumber::root_of_unity(4).unwrap())
            .unwrap();
        assert_eq!(one_plus_i.norm_square().value(), &CyclotomicNumber::from_integer(4, 2));
    }

    #[test]
    fn lift_and_lower_roundtrip() {
        let z3 = CyclotomicNumber::root_of_unity(3).unwrap();
        let lifted = z3.lift(6).unwrap();
        assert_eq!(lifted, CyclotomicNumber::root_power(6, 2).unwrap());
        assert_eq!(lifted.try_lower(3).unwrap().unwrap(), z3);

        let q23 = CyclotomicNumber::from_rational(1, Rational::new(BigInt::from(2), BigInt::from(3)));
        let l = q23.lift(12).unwrap();
        assert!(l.is_rational());
        assert_eq!(l.as_rational().unwrap(), Rational::new(BigInt::from(2), BigInt::from(3)));

        let z4 = CyclotomicNumber::root_of_unity(4).unwrap();
        assert_eq!(z4.lift(12).unwrap().try_lower(4).unwrap().unwrap(), z4);

        let z12 = CyclotomicNumber::root_of_unity(12).unwrap();
        assert!(z12.try_lower(4).unwrap().is_none());
        let real12 = z12.add(&z12.conj()).unwrap();
        assert_eq!(real12.try_lower(12).unwrap().unwrap(), real12);

        // lowering into a conductor 2 mod 4: zeta_6 lives in K_3's extension K_6 = K_3.
        let z6 = CyclotomicNumber::root_of_unity(6).unwrap();
        let in_k3 = z6.try_lower(3);
        // K_6 = K_3, but 6 is the representation conductor here; lowering 6 -> 3 is legal
        // because K_3 subset K_6.
        let back = in_k3.unwrap().unwrap();
        assert_eq!(back.lift(6).unwrap(), z6.try_lower(6).unwrap().unwrap());
    }

    #[test]
    fn lower_to_2_mod_4_conductor() {
        // zeta_6 represented in K_12, lowered to conductor 6.
        let z6_in_12 = CyclotomicNumber::root_power(12, 2).unwrap();
        let z6 = z6_in_12.try_lower(6).unwrap().unwrap();
        assert_eq!(z6, CyclotomicNumber::root_of_unity(6).unwrap());
    }

    #[test]
    fn normalize_conductor_finds_minimal() {
        let z4_in_12 = CyclotomicNumber::root_power(12, 3).unwrap();
        assert_eq!(z4_in_12.normalize_conductor().unwrap().conductor(), 4);
        let rat = CyclotomicNumber::from_integer(40, 7);
        assert_eq!(rat.normalize_conductor().unwrap().conductor(), 1);
    }

    #[test]
    fn json_roundtrip() {
        let x = CyclotomicNumber::from_coeffs(
            8,
            vec![q(1), Rational::new(BigInt::from(-2), BigInt::from(3)), q(0), q(5)],
        )
        .unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.contains("\"n\":8"));
        assert!(s.contains("-2/3"));
        let y: CyclotomicNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
