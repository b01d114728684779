//! Imaginary quadratic field data and upper bounds on dihedral (CM)
//! eigenforms of prime-power level.
//!
//! Class numbers h(D) are computed exactly by enumerating reduced primitive
//! binary quadratic forms (a, b, c) of discriminant D = b^2 - 4ac < 0:
//! |b| <= a <= c with b >= 0 whenever |b| = a or a = c. Everything the crate
//! needs stays well below |D| ~ 10^6, so the O(|D|) enumeration is fine.
//!
//! An eigenform of weight k and level p^n induced from a Hecke character of
//! an imaginary quadratic field forces the field to be Q(sqrt(-p)); for
//! p == 1 (mod 4) there is no such field of p-power discriminant, so the
//! count is zero. For p == 3 (mod 4), the character conductor divides
//! p^floor(n/2), and counting ray classes bounds the number of eigenforms by
//! `h(-p) * Phi(p^m O)` with `Phi(I) = N(I) prod_{P | I} (1 - N(P)^{-1})`,
//! independent of the weight.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::arith;

/// Errors from the quadratic-field computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadraticError {
    /// Discriminants must be negative here.
    NotNegative(i64),
    /// Not a fundamental discriminant.
    NotFundamental(i64),
    /// An odd prime was required.
    NotOddPrime(u64),
    /// p == 1 (mod 4): -p is not a fundamental discriminant, use the
    /// zero-count path instead.
    SplitResidueClass(u64),
    /// Level exponent must be >= 1.
    ZeroExponent,
    /// Result exceeds 128 bits; beyond the supported desk scale.
    Overflow,
}

impl fmt::Display for QuadraticError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadraticError::NotNegative(d) => write!(f, "discriminant {d} is not negative"),
            QuadraticError::NotFundamental(d) => {
                write!(f, "{d} is not a fundamental discriminant")
            }
            QuadraticError::NotOddPrime(p) => write!(f, "{p} is not an odd prime"),
            QuadraticError::SplitResidueClass(p) => {
                write!(f, "{p} == 1 (mod 4): no imaginary quadratic field of {p}-power discriminant")
            }
            QuadraticError::ZeroExponent => write!(f, "level exponent must be >= 1"),
            QuadraticError::Overflow => write!(f, "value exceeds 128-bit desk scale"),
        }
    }
}

impl std::error::Error for QuadraticError {}

/// The field `Q(sqrt(-p))` for an odd prime `p == 3 (mod 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImagQuadField {
    pub p: u64,
    /// Fundamental discriminant, equal to -p.
    pub discriminant: i64,
    pub class_number: u64,
}

impl ImagQuadField {
    pub fn new(p: u64) -> Result<Self, QuadraticError> {
        if p == 2 || !arith::is_prime(p) {
            return Err(QuadraticError::NotOddPrime(p));
        }
        if p % 4 != 3 {
            return Err(QuadraticError::SplitResidueClass(p));
        }
        let d = -(p as i64);
        Ok(ImagQuadField {
            p,
            discriminant: d,
            class_number: class_number(d)?,
        })
    }
}

/// Weight/prime/exponent triple for a dihedral count bound. The bound itself
/// does not depend on the weight (the ray-class count cannot see k), but the
/// set being bounded does, so the key carries it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DihedralBoundInput {
    pub weight: u32,
    pub p: u64,
    pub exponent: u32,
}

impl DihedralBoundInput {
    /// Conductor exponent bound `m = floor(n/2)`.
    pub fn derived_exponent(&self) -> u32 {
        self.exponent / 2
    }

    pub fn count_bound(&self) -> Result<u128, QuadraticError> {
        dihedral_count_bound(self.p, self.exponent)
    }
}

fn classnum_memo() -> &'static RwLock<HashMap<i64, u64>> {
    static MEMO: OnceLock<RwLock<HashMap<i64, u64>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Seed the class-number memo; values must equal a fresh recomputation.
pub fn seed_class_number(d: i64, h: u64) {
    classnum_memo().write().unwrap().insert(d, h);
}

/// Snapshot of the class-number memo, sorted by discriminant.
pub fn snapshot_class_numbers() -> Vec<(i64, u64)> {
    let mut v: Vec<_> = classnum_memo()
        .read()
        .unwrap()
        .iter()
        .map(|(&d, &h)| (d, h))
        .collect();
    v.sort_unstable();
    v
}

/// Is `d` a fundamental discriminant (of a quadratic field)?
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let r = d.rem_euclid(4);
    if r == 1 {
        is_squarefree(d.unsigned_abs())
    } else if r == 0 {
        let q = d / 4;
        let qr = q.rem_euclid(4);
        (qr == 2 || qr == 3) && is_squarefree(q.unsigned_abs())
    } else {
        false
    }
}

fn is_squarefree(n: u64) -> bool {
    match arith::factor(n) {
        Ok(f) => f.factors().iter().all(|&(_, e)| e == 1),
        Err(_) => false,
    }
}

/// Class number of the fundamental discriminant `d < 0`, by direct count of
/// reduced forms.
pub fn class_number(d: i64) -> Result<u64, QuadraticError> {
    if d >= 0 {
        return Err(QuadraticError::NotNegative(d));
    }
    if !is_fundamental_discriminant(d) {
        return Err(QuadraticError::NotFundamental(d));
    }
    if let Some(&h) = classnum_memo().read().unwrap().get(&d) {
        return Ok(h);
    }
    let h = count_reduced_forms(d);
    assert!(h >= 1, "class number must be positive at D = {d}");
    classnum_memo().write().unwrap().insert(d, h);
    Ok(h)
}

/// Reduced-form count: a-major loop. `b` runs over the residue class of D
/// mod 2 in [-a, a]; c is forced; keep a <= c with the boundary rule.
fn count_reduced_forms(d: i64) -> u64 {
    let abs_d = d.unsigned_abs();
    let a_max = arith::isqrt(abs_d / 3).max(1);
    let mut count = 0u64;
    for a in 1..=a_max {
        let ai = a as i64;
        let four_a = 4 * ai;
        // largest b <= a with b == d (mod 2)
        let mut b = if (ai - d) % 2 == 0 { ai } else { ai - 1 };
        while b >= -ai {
            let num = b * b - d;
            if num % four_a == 0 {
                let c = num / four_a;
                if c >= ai && !(b < 0 && (b == -ai || c == ai)) && primitive(a, b, c as u64) {
                    count += 1;
                }
            }
            b -= 2;
        }
    }
    count
}

fn primitive(a: u64, b: i64, c: u64) -> bool {
    arith::gcd(arith::gcd(a, b.unsigned_abs()), c) == 1
}

/// `Phi(p^m O)` for the ramified prime of `Q(sqrt(-p))`, `p == 3 (mod 4)`:
/// 1 at m = 0 and `p^{2m}(1 - 1/p)` for m >= 1.
pub fn phi_norm(p: u64, m: u32) -> Result<u128, QuadraticError> {
    if p == 2 || !arith::is_prime(p) {
        return Err(QuadraticError::NotOddPrime(p));
    }
    if p % 4 != 3 {
        return Err(QuadraticError::SplitResidueClass(p));
    }
    if m == 0 {
        return Ok(1);
    }
    // p^{2m}(1 - 1/p) = p^{2m-1}(p - 1)
    let mut v: u128 = (p - 1) as u128;
    for _ in 0..(2 * m - 1) {
        v = v.checked_mul(p as u128).ok_or(QuadraticError::Overflow)?;
    }
    Ok(v)
}

/// Upper bound for the number of dihedral eigenforms of level `p^n` (any
/// weight >= 2): 0 for p == 1 (mod 4), else `h(-p) Phi(p^{floor(n/2)} O)`.
pub fn dihedral_count_bound(p: u64, n: u32) -> Result<u128, QuadraticError> {
    if p == 2 || !arith::is_prime(p) {
        return Err(QuadraticError::NotOddPrime(p));
    }
    if n == 0 {
        return Err(QuadraticError::ZeroExponent);
    }
    if p % 4 == 1 {
        return Ok(0);
    }
    let h = class_number(-(p as i64))? as u128;
    let phi = phi_norm(p, n / 2)?;
    h.checked_mul(phi).ok_or(QuadraticError::Overflow)
}

/// Bound for ordered pairs of dihedral eigenforms over all levels up to
/// `(p^{n1}, p^{n2})`: the product of the per-level sums.
pub fn dihedral_pair_bound(p: u64, n1: u32, n2: u32) -> Result<u128, QuadraticError> {
    if n1 == 0 || n2 == 0 {
        return Err(QuadraticError::ZeroExponent);
    }
    let mut s1: u128 = 0;
    for i in 1..=n1 {
        s1 = s1
            .checked_add(dihedral_count_bound(p, i)?)
            .ok_or(QuadraticError::Overflow)?;
    }
    let mut s2: u128 = 0;
    for j in 1..=n2 {
        s2 = s2
            .checked_add(dihedral_count_bound(p, j)?)
            .ok_or(QuadraticError::Overflow)?;
    }
    s1.checked_mul(s2).ok_or(QuadraticError::Overflow)
}
