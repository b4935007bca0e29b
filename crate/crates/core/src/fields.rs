//! Decidable predicates for the inclusion lattice of cyclotomic fields K_n
//! and their maximal real subfields k_n, plus the totient classifications
//! that drive the polygon characterization.

use num_integer::Integer;
use serde::Serialize;

use crate::cyclotomic::phi;
use crate::error::{CycError, Result};

/// K_m subset of K_n, decided arithmetically: m | n, or m = 2 (mod 4) and m | 2n.
pub fn k_field_subset(m: u64, n: u64) -> bool {
    if m == 0 || n == 0 {
        return false;
    }
    n % m == 0 || (m % 4 == 2 && (2 * n) % m == 0)
}

/// K_m = K_n: m = n, or m odd and n = 2m, or n odd and m = 2n.
pub fn k_field_equal(m: u64, n: u64) -> bool {
    m == n || (m % 2 == 1 && n == 2 * m) || (n % 2 == 1 && m == 2 * n)
}

/// k_m subset of k_n for m, n >= 3: K_m subset of K_n, or m in {3, 4, 6}.
pub fn real_subfield_subset(m: u64, n: u64) -> Result<bool> {
    if m < 3 || n < 3 {
        return Err(CycError::Domain(format!(
            "real subfield predicates need arguments >= 3, got ({m}, {n})"
        )));
    }
    Ok(k_field_subset(m, n) || matches!(m, 3 | 4 | 6))
}

/// k_m = k_n for m, n >= 3: K_m = K_n, or both m, n in {3, 4, 6}.
pub fn real_subfield_equal(m: u64, n: u64) -> Result<bool> {
    if m < 3 || n < 3 {
        return Err(CycError::Domain(format!(
            "real subfield predicates need arguments >= 3, got ({m}, {n})"
        )));
    }
    Ok(k_field_equal(m, n) || (matches!(m, 3 | 4 | 6) && matches!(n, 3 | 4 | 6)))
}

/// Conductor of K_m intersected with K_n, which is K_gcd(m, n).
pub fn intersection_conductor(m: u64, n: u64) -> Result<u64> {
    if m == 0 || n == 0 {
        return Err(CycError::ZeroArgument);
    }
    Ok(m.gcd(&n))
}

/// Deterministic trial-division primality, adequate at desk scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Sophie Germain prime: p prime with 2p + 1 prime as well.
pub fn is_sophie_germain(p: u64) -> bool {
    is_prime(p) && is_prime(2 * p + 1)
}

/// Classification of phi(n)/2 for n >= 3, n not congruent to 2 mod 4.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PhiHalfKind {
    One,
    Prime,
    Composite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiHalfClass {
    pub n: u64,
    pub kind: PhiHalfKind,
    /// phi(n)/2.
    pub witness: u64,
}

/// Classifies phi(n)/2 on the domain n >= 3, n != 2 (mod 4).
///
/// One exactly for n in {3, 4}; Prime exactly for n in
/// S = {8, 9, 12} union {2p + 1 : p Sophie Germain}. Both the primality route
/// and the explicit description of S are computed and must agree.
pub fn classify_phi_half(n: u64) -> Result<PhiHalfClass> {
    if n < 3 {
        return Err(CycError::Domain(format!("classify_phi_half needs n >= 3, got {n}")));
    }
    if n % 4 == 2 {
        return Err(CycError::Domain(format!(
            "classify_phi_half rejects n = 2 (mod 4), got {n}"
        )));
    }
    let half = phi(n)? / 2;
    let kind = if half == 1 {
        PhiHalfKind::One
    } else if is_prime(half) {
        PhiHalfKind::Prime
    } else {
        PhiHalfKind::Composite
    };
    // explicit description of the set S; the two routes must agree.
    let in_s = matches!(n, 8 | 9 | 12) || (n % 2 == 1 && is_sophie_germain((n - 1) / 2));
    debug_assert_eq!(kind == PhiHalfKind::Prime, in_s, "S description disagrees at n = {n}");
    if (kind == PhiHalfKind::Prime) != in_s {
        return Err(CycError::Domain(format!("internal classification defect at n = {n}")));
    }
    Ok(PhiHalfClass { n, kind, witness: half })
}
