//! Rational interval arithmetic for rigorous sign decisions.
//!
//! Coordinates of model-set points are algebraic irrationals, so floating
//! comparisons alone are unsound. Sign queries combine an exact zero test on
//! the coefficient vector with interval evaluation of the embedding; the
//! interval is refined until it excludes zero.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::{CyclotomicNumber, Rational};
use crate::error::{CycError, Result};

#[derive(Clone, Debug)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn point(q: Rational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn zero() -> Self {
        Interval::point(Rational::zero())
    }

    pub fn with_radius(center: Rational, radius: Rational) -> Self {
        debug_assert!(!radius.is_negative());
        Interval { lo: &center - &radius, hi: &center + &radius }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        Interval { lo, hi }
    }

    pub fn scale(&self, q: &Rational) -> Interval {
        if q.is_negative() {
            Interval { lo: &self.hi * q, hi: &self.lo * q }
        } else {
            Interval { lo: &self.lo * q, hi: &self.hi * q }
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Some(sign) when the interval excludes zero.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    pub fn half_width_f64(&self) -> f64 {
        ((&self.hi - &self.lo) / Rational::from_integer(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::INFINITY)
    }
}

/// Tightens an interval to endpoints with denominator 2^bits; keeps the
/// enclosure property while capping the size of the rationals that flow into
/// the Taylor series.
fn dyadic_enclosure(iv: &Interval, bits: u32) -> Interval {
    use num_integer::Integer;
    let scale = BigInt::one() << bits;
    let lo = (iv.lo.numer() * &scale).div_floor(iv.lo.denom());
    let hi = (iv.hi.numer() * &scale).div_ceil(iv.hi.denom());
    Interval {
        lo: Rational::new(lo, scale.clone()),
        hi: Rational::new(hi, scale),
    }
}

/// pi to roughly 150 decimal digits, as a rational enclosure.
fn pi_interval() -> Interval {
    const PI_DIGITS: &str = "3141592653589793238462643383279502884197169399375105820974944592\
3078164062862089986280348253421170679821480865132823066470938446095505822317253594081284811";
    let numer: BigInt = PI_DIGITS.parse().unwrap();
    let denom = BigInt::from(10u8).pow((PI_DIGITS.len() - 1) as u32);
    Interval {
        lo: Rational::new(numer.clone(), denom.clone()),
        hi: Rational::new(numer + BigInt::one(), denom),
    }
}

/// cos and sin of a rational interval via Taylor series with the Lagrange
/// remainder |x|^M / M!. Valid for any argument; intended for |x| <= pi.
fn cos_sin_interval(theta: &Interval, terms: usize) -> (Interval, Interval) {
    let x = theta.lo.clone();
    let width = &theta.hi - &theta.lo;
    let order = 2 * terms;
    // partial sums of cos and sin at the rational point x.
    let x2 = &x * &x;
    let mut cos_sum = Rational::one();
    let mut sin_sum = x.clone();
    let mut term_c = Rational::one(); // x^(2i) / (2i)!
    let mut term_s = x.clone(); // x^(2i+1) / (2i+1)!
    for i in 1..terms {
        let d2i = BigInt::from((2 * i - 1) * (2 * i));
        term_c = &term_c * &x2 / Rational::from_integer(d2i);
        let d2i1 = BigInt::from((2 * i) * (2 * i + 1));
        term_s = &term_s * &x2 / Rational::from_integer(d2i1);
        if i % 2 == 0 {
            cos_sum += &term_c;
            sin_sum += &term_s;
        } else {
            cos_sum -= &term_c;
            sin_sum -= &term_s;
        }
    }
    // remainder bound |x|^order / order! for both series (|sin/cos^(k)| <= 1),
    // plus the interval width (the derivative of cos/sin is bounded by 1).
    let mut rem = Rational::one();
    let ax = x.abs();
    for k in 1..=order {
        rem = rem * &ax / Rational::from_integer(BigInt::from(k));
    }
    let slack = &rem + &width;
    (
        Interval::with_radius(cos_sum, slack.clone()),
        Interval::with_radius(sin_sum, slack),
    )
}

/// cos/sin enclosures of the root angles 2*pi*k/n recur constantly, so they
/// are cached per (n, k, terms).
fn root_cos_sin(n: u64, k: usize, terms: usize) -> (Interval, Interval) {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize, usize), (Interval, Interval)>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(n, k, terms)) {
        return v.clone();
    }
    // reduce the angle to [-pi, pi] so the series converges fast.
    let kk = if 2 * (k as u64) > n { k as i64 - n as i64 } else { k as i64 };
    let frac = Rational::new(BigInt::from(2 * kk), BigInt::from(n));
    let theta = dyadic_enclosure(&pi_interval().scale(&frac), 240);
    let (c, s) = cos_sin_interval(&theta, terms);
    // compact endpoints: the huge factorial denominators of the partial sums
    // would otherwise dominate every downstream addition.
    let v = (dyadic_enclosure(&c, 240), dyadic_enclosure(&s, 240));
    cache.lock().unwrap().insert((n, k, terms), v.clone());
    v
}

/// Rigorous enclosure of the embedding of z under zeta_N -> exp(2*pi*i/N).
/// Returns (real part, imaginary part). `terms` controls Taylor precision.
pub fn embed_interval(z: &CyclotomicNumber, terms: usize) -> (Interval, Interval) {
    let n = z.conductor();
    let mut re = Interval::zero();
    let mut im = Interval::zero();
    for (k, c) in z.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (cos_k, sin_k) = root_cos_sin(n, k, terms);
        re = re.add(&cos_k.scale(c));
        im = im.add(&sin_k.scale(c));
    }
    (re, im)
}

const TERM_SCHEDULE: [usize; 4] = [8, 16, 32, 64];

/// Exact sign of the real part of z. Decides zero exactly via conjugation.
pub fn re_sign(z: &CyclotomicNumber) -> Result<i8> {
    let twice_re = z.add(&z.conj())?;
    if twice_re.is_zero() {
        return Ok(0);
    }
    for terms in TERM_SCHEDULE {
        let (re, _) = embed_interval(&twice_re, terms);
        if let Some(s) = re.sign() {
            return Ok(s);
        }
    }
    Err(CycError::SignUndecided)
}

/// Exact sign of the imaginary part of z. Decides zero exactly via conjugation.
pub fn im_sign(z: &CyclotomicNumber) -> Result<i8> {
    let twice_i_im = z.sub(&z.conj())?;
    if twice_i_im.is_zero() {
        return Ok(0);
    }
    for terms in TERM_SCHEDULE {
        let (_, im) = embed_interval(&twice_i_im, terms);
        if let Some(s) = im.sign() {
            return Ok(s);
        }
    }
    Err(CycError::SignUndecided)
}

/// Exact sign of a value known to be real.
pub fn real_sign(z: &CyclotomicNumber) -> Result<i8> {
    debug_assert!(z.is_real());
    if z.is_zero() {
        return Ok(0);
    }
    for terms in TERM_SCHEDULE {
        let (re, _) = embed_interval(z, terms);
        if let Some(s) = re.sign() {
            return Ok(s);
        }
    }
    Err(CycError::SignUndecided)
}
