//! Exact dimensions of `S_k(Gamma1(N))` and of its new subspace.
//!
//! The primary route is the classical genus/cusp closed form: for weight
//! k >= 3 and a congruence subgroup of genus g with e2, e3 elliptic points of
//! order 2, 3 and u1 regular / u2 irregular cusps,
//!
//! ```text
//! dim S_k = (k-1)(g-1) + floor(k/4) e2 + floor(k/3) e3 + cusp terms
//! ```
//!
//! where the cusp terms are (k/2 - 1)(u1 + u2) for even k and
//! ((k-2) u1 + (k-1) u2)/2 for odd k (Shimura Thm 2.25, Diamond-Shurman
//! Thms 3.5.1/3.6.1); dim S_2 is the genus. The only irregular cusp in the
//! Gamma1 tower occurs at N = 4, and -I lies in Gamma1(N) exactly for N <= 2,
//! which kills odd weights there.
//!
//! An independent character-sum route (Cohen-Oesterle) lives in
//! [`characters`]; the two are cross-checked in the test suite.
//!
//! The new subspace is obtained from the full space by the divisor sieve
//! `dim S_k^new(N) = sum_{d|N} mu_bar(N/d) dim S_k(d)` with the multiplier
//! from [`crate::arith::mu_bar`], the Dirichlet inverse of sigma0. (The
//! weight `(-2)^{#{p: v_p = 2}}` sometimes quoted for this sieve does not
//! invert the sigma0 decomposition; the inverse has -2 on primes and +1 on
//! prime squares, which is what makes the round-trip identity exact.)

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{self, ArithError};

pub mod characters;

/// Errors from dimension computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimError {
    /// Weight k <= 1 (weight-one and smaller spaces are out of scope).
    WeightOutOfScope(u32),
    /// Level must be >= 1.
    ZeroLevel,
    /// A prime was required.
    NotPrime(u64),
    /// Requested level p^n exceeds 64 bits.
    LevelOverflow(u64, u32),
}

impl fmt::Display for DimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimError::WeightOutOfScope(k) => {
                write!(f, "weight {k} out of scope (need k >= 2)")
            }
            DimError::ZeroLevel => write!(f, "level must be a positive integer"),
            DimError::NotPrime(p) => write!(f, "{p} is not prime"),
            DimError::LevelOverflow(p, n) => write!(f, "level {p}^{n} overflows 64 bits"),
        }
    }
}

impl std::error::Error for DimError {}

impl From<ArithError> for DimError {
    fn from(e: ArithError) -> Self {
        match e {
            ArithError::ZeroInput => DimError::ZeroLevel,
            ArithError::NotPrime(p) => DimError::NotPrime(p),
        }
    }
}

/// Geometric invariants of the modular curve `X_1(N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gamma1Invariants {
    /// The level N.
    pub level: u64,
    /// Index of Gamma1(N) in SL2(Z): `N^2 prod_{p|N} (1 - p^-2)`.
    pub index: u128,
    /// Degree of the covering X_1(N) -> X(1); equals `index` for N <= 2
    /// (where -I is in the group) and `index / 2` for N >= 3.
    pub degree: u128,
    /// Regular cusps.
    pub cusps_regular: u64,
    /// Irregular cusps (nonzero only at N = 4).
    pub cusps_irregular: u64,
    /// Elliptic points of order 2 (nonzero only at N <= 2).
    pub eps2: u64,
    /// Elliptic points of order 3 (nonzero only at N = 1, 3).
    pub eps3: u64,
    /// Genus of X_1(N).
    pub genus: u128,
}

impl Gamma1Invariants {
    pub fn cusps_total(&self) -> u64 {
        self.cusps_regular + self.cusps_irregular
    }
}

/// Weight/level pair indexing a space of cusp forms; `weight >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DimensionKey {
    pub weight: u32,
    pub level: u64,
}

fn dim_memo() -> &'static RwLock<HashMap<DimensionKey, u128>> {
    static MEMO: OnceLock<RwLock<HashMap<DimensionKey, u128>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn new_memo() -> &'static RwLock<HashMap<DimensionKey, u128>> {
    static MEMO: OnceLock<RwLock<HashMap<DimensionKey, u128>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Seed the in-process memo for `dim_cusp`. Values must equal a fresh
/// recomputation: the memo is a cache, never an authority.
pub fn seed_dim_cusp(k: u32, n: u64, value: u128) {
    dim_memo()
        .write()
        .unwrap()
        .insert(DimensionKey { weight: k, level: n }, value);
}

/// Seed the in-process memo for `dim_new`.
pub fn seed_dim_new(k: u32, n: u64, value: u128) {
    new_memo()
        .write()
        .unwrap()
        .insert(DimensionKey { weight: k, level: n }, value);
}

/// Snapshot of the `dim_cusp` memo, sorted by key.
pub fn snapshot_dim_cusp() -> Vec<(u32, u64, u128)> {
    let mut v: Vec<_> = dim_memo()
        .read()
        .unwrap()
        .iter()
        .map(|(key, &d)| (key.weight, key.level, d))
        .collect();
    v.sort_unstable();
    v
}

/// Snapshot of the `dim_new` memo, sorted by key.
pub fn snapshot_dim_new() -> Vec<(u32, u64, u128)> {
    let mut v: Vec<_> = new_memo()
        .read()
        .unwrap()
        .iter()
        .map(|(key, &d)| (key.weight, key.level, d))
        .collect();
    v.sort_unstable();
    v
}

/// Invariants of `X_1(N)` for any `N >= 1`.
///
/// N <= 4 carries the exceptional data (elliptic points, the irregular cusp
/// of Gamma1(4)); from N = 5 on everything comes from the closed forms
/// `index = N^2 prod (1 - p^-2)` and `cusps = (1/2) sum_{d|N} phi(d) phi(N/d)`.
pub fn gamma1_invariants(n: u64) -> Result<Gamma1Invariants, DimError> {
    if n == 0 {
        return Err(DimError::ZeroLevel);
    }
    let (index, degree, cusps_regular, cusps_irregular, eps2, eps3) = match n {
        1 => (1u128, 1u128, 1u64, 0u64, 1u64, 1u64),
        2 => (3, 3, 2, 0, 1, 0),
        3 => (8, 4, 2, 0, 0, 1),
        4 => (12, 6, 2, 1, 0, 0),
        _ => {
            let f = arith::factor(n)?;
            let mut index: u128 = 1;
            for &(p, e) in f.factors() {
                let p = p as u128;
                index *= p.pow(2 * e - 2) * (p * p - 1);
            }
            let degree = index / 2;
            let mut twice_cusps: u128 = 0;
            for d in arith::divisors(n)? {
                twice_cusps += arith::euler_phi(d)? as u128 * arith::euler_phi(n / d)? as u128;
            }
            debug_assert_eq!(twice_cusps % 2, 0);
            let cusps = (twice_cusps / 2) as u64;
            (index, degree, cusps, 0, 0, 0)
        }
    };
    // genus from 12g = 12 + degree - 6*cusps - 3*eps2 - 4*eps3
    let twelve_g = 12i128 + degree as i128
        - 6 * (cusps_regular + cusps_irregular) as i128
        - 3 * eps2 as i128
        - 4 * eps3 as i128;
    assert!(
        twelve_g >= 0 && twelve_g % 12 == 0,
        "genus formula not integral at N = {n}: 12g = {twelve_g}"
    );
    Ok(Gamma1Invariants {
        level: n,
        index,
        degree,
        cusps_regular,
        cusps_irregular,
        eps2,
        eps3,
        genus: (twelve_g / 12) as u128,
    })
}

/// Exact `dim_C S_k(Gamma1(N))` for `k >= 2`.
pub fn dim_cusp(k: u32, n: u64) -> Result<u128, DimError> {
    if k < 2 {
        return Err(DimError::WeightOutOfScope(k));
    }
    if n == 0 {
        return Err(DimError::ZeroLevel);
    }
    let key = DimensionKey { weight: k, level: n };
    if let Some(&d) = dim_memo().read().unwrap().get(&key) {
        return Ok(d);
    }
    let inv = gamma1_invariants(n)?;
    let g = inv.genus as i128;
    let kk = k as i128;
    let dim: i128 = if k == 2 {
        g
    } else if n <= 2 {
        // -I in Gamma1(N): odd weights vanish.
        if k % 2 == 1 {
            0
        } else {
            (kk - 1) * (g - 1)
                + (kk / 4) * inv.eps2 as i128
                + (kk / 3) * inv.eps3 as i128
                + (kk / 2 - 1) * inv.cusps_total() as i128
        }
    } else {
        let base = (kk - 1) * (g - 1) + (kk / 4) * inv.eps2 as i128 + (kk / 3) * inv.eps3 as i128;
        let cusp_term = if k % 2 == 0 {
            (kk / 2 - 1) * inv.cusps_total() as i128
        } else {
            let twice = (kk - 2) * inv.cusps_regular as i128 + (kk - 1) * inv.cusps_irregular as i128;
            assert!(twice % 2 == 0, "odd-weight cusp term not integral at N = {n}");
            twice / 2
        };
        base + cusp_term
    };
    assert!(dim >= 0, "negative dimension at k = {k}, N = {n}");
    let dim = dim as u128;
    dim_memo().write().unwrap().insert(key, dim);
    Ok(dim)
}

/// Exact `dim_C S_k^new(Gamma1(N))` via the divisor sieve.
pub fn dim_new(k: u32, n: u64) -> Result<u128, DimError> {
    if k < 2 {
        return Err(DimError::WeightOutOfScope(k));
    }
    if n == 0 {
        return Err(DimError::ZeroLevel);
    }
    let key = DimensionKey { weight: k, level: n };
    if let Some(&d) = new_memo().read().unwrap().get(&key) {
        return Ok(d);
    }
    let mut acc: i128 = 0;
    for d in arith::divisors(n)? {
        let w = arith::mu_bar(n / d)? as i128;
        if w != 0 {
            let dim = dim_cusp(k, d)? as i128;
            acc = acc.checked_add(w.checked_mul(dim).expect("sieve term overflow"))
                .expect("sieve sum overflow");
        }
    }
    assert!(acc >= 0, "newform sieve went negative at k = {k}, N = {n}");
    let out = acc as u128;
    new_memo().write().unwrap().insert(key, out);
    Ok(out)
}

/// `sum_{i=1..n} dim S_k^new(Gamma1(p^i))` for prime `p`.
pub fn dim_new_sum(k: u32, p: u64, n: u32) -> Result<u128, DimError> {
    if !arith::is_prime(p) {
        return Err(DimError::NotPrime(p));
    }
    if n == 0 {
        return Err(DimError::ZeroLevel);
    }
    let mut level: u64 = 1;
    let mut total: u128 = 0;
    for i in 1..=n {
        level = level
            .checked_mul(p)
            .ok_or(DimError::LevelOverflow(p, i))?;
        total += dim_new(k, level)?;
    }
    Ok(total)
}

/// `dim S_k^new(Gamma1(p^n)) / p^{2n}` as an exact rational.
pub fn newform_ratio(k: u32, p: u64, n: u32) -> Result<BigRational, DimError> {
    if !arith::is_prime(p) {
        return Err(DimError::NotPrime(p));
    }
    if n == 0 {
        return Err(DimError::ZeroLevel);
    }
    let mut level: u64 = 1;
    for i in 1..=n {
        level = level
            .checked_mul(p)
            .ok_or(DimError::LevelOverflow(p, i))?;
    }
    let dim = dim_new(k, level)?;
    let num = BigInt::from(dim);
    let den = BigInt::from(p).pow(2 * n);
    Ok(BigRational::new(num, den))
}
