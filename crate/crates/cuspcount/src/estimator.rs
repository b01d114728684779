//! The counting pipeline: how many cuspidal GL(4) lifts of level `p^N` come
//! from tensor products of a weight-k1 and a weight-k2 newform of p-power
//! level.
//!
//! For `N > 24` split `t = floor(N/4)` as `n1 + n2`. Newform pairs with
//! level exponents up to `(n1, n2)` produce, apart from the dihedral pairs
//! over a common imaginary quadratic field (bounded in [`crate::quadratic`])
//! and twist-equivalent pairs (empty once `k1 > k2`), distinct cuspidal
//! lifts whose level exponent lands in the admissible conductor window
//! `[2, 4 n1 + 4 n2 - 12]`, hence within `p^N`. The resulting lower-bound
//! witness is
//!
//! ```text
//! (sum_{i<=n1} dim S_k1^new(p^i)) * (sum_{j<=n2} dim S_k2^new(p^j)) - dihedral bound
//! ```
//!
//! and the report normalizes it by `p^{2 floor(N/4)}`.
//!
//! Levels with exponent 1 and non-supercuspidal local components are counted
//! by the sums even though the conductor window is only proved for
//! supercuspidal pairs; every report carries an explicit caveat for this
//! rather than silently changing the count. Reports are pair-count
//! witnesses: coincidences between distinct tensor products are not ruled
//! out here.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::arith;
use crate::dims::{self, DimError};
use crate::quadratic::{self, QuadraticError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimatorError {
    /// The lower-bound argument needs N > 24.
    HypothesisViolated(u32),
    /// k1 > k2 is required (it also empties the twist-equivalent set).
    WeightsOutOfOrder { k1: u32, k2: u32 },
    /// Weights must be >= 2.
    WeightTooSmall(u32),
    /// Scans run over odd primes only.
    NotOddPrime(u64),
    Dim(DimError),
    Quadratic(QuadraticError),
}

impl fmt::Display for EstimatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EstimatorError::HypothesisViolated(n) => {
                write!(f, "level exponent {n} violates the hypothesis N > 24")
            }
            EstimatorError::WeightsOutOfOrder { k1, k2 } => {
                write!(f, "need k1 > k2 >= 2, got k1 = {k1}, k2 = {k2}")
            }
            EstimatorError::WeightTooSmall(k) => write!(f, "weight {k} too small (need >= 2)"),
            EstimatorError::NotOddPrime(p) => write!(f, "{p} is not an odd prime"),
            EstimatorError::Dim(e) => write!(f, "{e}"),
            EstimatorError::Quadratic(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for EstimatorError {}

impl From<DimError> for EstimatorError {
    fn from(e: DimError) -> Self {
        EstimatorError::Dim(e)
    }
}

impl From<QuadraticError> for EstimatorError {
    fn from(e: QuadraticError) -> Self {
        EstimatorError::Quadratic(e)
    }
}

/// Level `p^N` with odd prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelDescriptor {
    pub p: u64,
    pub exponent: u32,
}

impl LevelDescriptor {
    pub fn new(p: u64, exponent: u32) -> Result<Self, EstimatorError> {
        if p == 2 || !arith::is_prime(p) {
            return Err(EstimatorError::NotOddPrime(p));
        }
        Ok(LevelDescriptor { p, exponent })
    }
}

/// Report flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Caveat {
    /// The newform sums include exponent-1 levels and non-supercuspidal
    /// local components, beyond what the conductor window is proved for.
    NonSupercuspidalLevelsIncluded,
    /// One of the newform sums is zero, so the witness is vacuous.
    DegenerateCount,
    /// The dihedral bound exceeded the pair count; the lower bound was
    /// floored at zero.
    ClampedAtZero,
}

impl fmt::Display for Caveat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Caveat::NonSupercuspidalLevelsIncluded => "non-supercuspidal-levels-included",
            Caveat::DegenerateCount => "degenerate-count",
            Caveat::ClampedAtZero => "clamped-at-zero",
        };
        write!(f, "{s}")
    }
}

/// Everything the pipeline computed for one `(k1, k2, p, N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EstimateReport {
    pub k1: u32,
    pub k2: u32,
    pub p: u64,
    /// The level exponent N.
    pub level_exponent: u32,
    pub n1: u32,
    pub n2: u32,
    /// `sum_{i<=n1} dim S_k1^new(Gamma1(p^i))`.
    pub dim_sum1: BigUint,
    /// `sum_{j<=n2} dim S_k2^new(Gamma1(p^j))`.
    pub dim_sum2: BigUint,
    /// Product of the two sums.
    pub pair_count: BigUint,
    /// Upper bound for same-field dihedral pairs.
    pub dihedral_bound: BigUint,
    /// `max(pair_count - dihedral_bound, 0)`.
    pub lower_bound: BigUint,
    /// `lower_bound / p^{2 floor(N/4)}`, exact.
    pub normalized_ratio: BigRational,
    /// `4 n1 + 4 n2 - 12 <= N` (true by construction of the split).
    pub conductor_window_ok: bool,
    pub caveats: Vec<Caveat>,
}

/// Split `t = floor(N/4)` into `(ceil(t/2), floor(t/2))`; any split with
/// both parts >= 2 reproduces the bound, the balanced one maximizes the
/// p-power in the pair count.
pub fn split_levels(n: u32) -> Result<(u32, u32), EstimatorError> {
    if n <= 24 {
        return Err(EstimatorError::HypothesisViolated(n));
    }
    let t = n / 4;
    let n1 = t.div_ceil(2);
    let n2 = t / 2;
    debug_assert!(n1 >= 2 && n2 >= 2 && n1 + n2 == t);
    Ok((n1, n2))
}

fn validate_weights(k1: u32, k2: u32) -> Result<(), EstimatorError> {
    if k2 < 2 {
        return Err(EstimatorError::WeightTooSmall(k2));
    }
    if k1 <= k2 {
        return Err(EstimatorError::WeightsOutOfOrder { k1, k2 });
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn assemble_report(
    k1: u32,
    k2: u32,
    p: u64,
    n: u32,
    n1: u32,
    n2: u32,
    dim_sum1: u128,
    dim_sum2: u128,
    dihedral: u128,
) -> EstimateReport {
    let a = BigUint::from(dim_sum1);
    let b = BigUint::from(dim_sum2);
    let pair_count = &a * &b;
    let dihedral_bound = BigUint::from(dihedral);
    let mut caveats = vec![Caveat::NonSupercuspidalLevelsIncluded];
    if dim_sum1 == 0 || dim_sum2 == 0 {
        caveats.push(Caveat::DegenerateCount);
    }
    let lower_bound = if dihedral_bound > pair_count {
        caveats.push(Caveat::ClampedAtZero);
        BigUint::ZERO
    } else {
        &pair_count - &dihedral_bound
    };
    let t = n / 4;
    let denom = BigInt::from(p).pow(2 * t);
    let normalized_ratio = BigRational::new(BigInt::from(lower_bound.clone()), denom);
    EstimateReport {
        k1,
        k2,
        p,
        level_exponent: n,
        n1,
        n2,
        dim_sum1: a,
        dim_sum2: b,
        pair_count,
        dihedral_bound,
        lower_bound,
        normalized_ratio,
        conductor_window_ok: 4 * n1 + 4 * n2 <= n + 12,
        caveats,
    }
}

/// Run the pipeline at a single level `p^N` (odd p, N > 24, k1 > k2 >= 2).
///
/// The twist-equivalent pair set contributes nothing once k1 > k2, so the
/// only subtraction is the dihedral bound.
pub fn lower_bound_count(
    k1: u32,
    k2: u32,
    level: &LevelDescriptor,
) -> Result<EstimateReport, EstimatorError> {
    validate_weights(k1, k2)?;
    if level.p == 2 || !arith::is_prime(level.p) {
        return Err(EstimatorError::NotOddPrime(level.p));
    }
    let (n1, n2) = split_levels(level.exponent)?;
    let a = dims::dim_new_sum(k1, level.p, n1)?;
    let b = dims::dim_new_sum(k2, level.p, n2)?;
    let dihedral = quadratic::dihedral_pair_bound(level.p, n1, n2)?;
    Ok(assemble_report(
        k1,
        k2,
        level.p,
        level.exponent,
        n1,
        n2,
        a,
        b,
        dihedral,
    ))
}

/// Per-prime scan output: the prime together with its report or error.
pub type ScanEntry = (u64, Result<EstimateReport, EstimatorError>);

/// One report per prime, input order preserved; per-prime failures are
/// collected, not fatal.
pub fn scan(k1: u32, k2: u32, n: u32, primes: &[u64]) -> Vec<ScanEntry> {
    primes
        .iter()
        .map(|&p| {
            let r = LevelDescriptor::new(p, n).and_then(|lvl| lower_bound_count(k1, k2, &lvl));
            (p, r)
        })
        .collect()
}

/// Same as [`scan`] but computed on `jobs` worker threads. The output order
/// is the input order regardless of completion order.
pub fn scan_parallel(k1: u32, k2: u32, n: u32, primes: &[u64], jobs: usize) -> Vec<ScanEntry> {
    let jobs = jobs.max(1).min(primes.len().max(1));
    if jobs == 1 {
        return scan(k1, k2, n, primes);
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<ScanEntry>>> = primes.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= primes.len() {
                    break;
                }
                let p = primes[i];
                let r = LevelDescriptor::new(p, n).and_then(|lvl| lower_bound_count(k1, k2, &lvl));
                *slots[i].lock().unwrap() = Some((p, r));
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("worker filled every slot"))
        .collect()
}

/// Crude witness for the upper bound: `pair_count / p^{2N}`, which stays
/// below 1 and decays as p grows.
pub fn upper_bound_check(
    k1: u32,
    k2: u32,
    level: &LevelDescriptor,
) -> Result<BigRational, EstimatorError> {
    let report = lower_bound_count(k1, k2, level)?;
    let denom = BigInt::from(level.p).pow(2 * level.exponent);
    Ok(BigRational::new(
        BigInt::from(report.pair_count),
        denom,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{ToPrimitive, Zero};

    #[test]
    fn split_examples() {
        assert_eq!(split_levels(28).unwrap(), (4, 3));
        assert_eq!(split_levels(32).unwrap(), (4, 4));
        assert_eq!(
            split_levels(24).unwrap_err(),
            EstimatorError::HypothesisViolated(24)
        );
        for n in 25..=100u32 {
            let (n1, n2) = split_levels(n).unwrap();
            assert_eq!(n1 + n2, n / 4);
            assert!(n1 >= 2 && n2 >= 2);
            assert!(4 * n1 + 4 * n2 <= n + 12);
        }
    }

    #[test]
    fn report_at_split_prime() {
        // 13 == 1 (mod 4): dihedral pairs cannot occur.
        let lvl = LevelDescriptor::new(13, 28).unwrap();
        let r = lower_bound_count(3, 2, &lvl).unwrap();
        assert!(r.dihedral_bound.is_zero());
        assert_eq!(r.lower_bound, r.pair_count);
        assert!(r.conductor_window_ok);
        assert_eq!(r.caveats, vec![Caveat::NonSupercuspidalLevelsIncluded]);
    }

    #[test]
    fn report_at_inert_prime() {
        let lvl = LevelDescriptor::new(7, 28).unwrap();
        let r = lower_bound_count(3, 2, &lvl).unwrap();
        assert_eq!(r.dihedral_bound, BigUint::from(182_155u64));
        assert_eq!(
            r.lower_bound,
            &r.pair_count - &r.dihedral_bound,
            "no clamping expected at p = 7"
        );
    }

    #[test]
    fn report_validations() {
        assert_eq!(
            LevelDescriptor::new(2, 28).unwrap_err(),
            EstimatorError::NotOddPrime(2)
        );
        assert_eq!(
            LevelDescriptor::new(15, 28).unwrap_err(),
            EstimatorError::NotOddPrime(15)
        );
        let lvl = LevelDescriptor::new(5, 28).unwrap();
        assert_eq!(
            lower_bound_count(2, 2, &lvl).unwrap_err(),
            EstimatorError::WeightsOutOfOrder { k1: 2, k2: 2 }
        );
        assert_eq!(
            lower_bound_count(3, 1, &lvl).unwrap_err(),
            EstimatorError::WeightTooSmall(1)
        );
        let low = LevelDescriptor::new(5, 24).unwrap();
        assert_eq!(
            lower_bound_count(3, 2, &low).unwrap_err(),
            EstimatorError::HypothesisViolated(24)
        );
    }

    #[test]
    fn degenerate_and_clamped_flags() {
        let r = assemble_report(3, 2, 5, 28, 4, 3, 0, 17, 0);
        assert!(r.caveats.contains(&Caveat::DegenerateCount));
        assert!(r.lower_bound.is_zero());
        assert!(r.normalized_ratio.is_zero());

        let r = assemble_report(3, 2, 5, 28, 4, 3, 3, 4, 100);
        assert!(r.caveats.contains(&Caveat::ClampedAtZero));
        assert!(r.lower_bound.is_zero());

        let r = assemble_report(3, 2, 5, 28, 4, 3, 30, 4, 100);
        assert!(!r.caveats.contains(&Caveat::ClampedAtZero));
        assert_eq!(r.lower_bound, BigUint::from(20u32));
    }

    #[test]
    fn scan_semantics() {
        assert!(scan(3, 2, 28, &[]).is_empty());
        let out = scan(3, 2, 28, &[5, 7, 11]);
        assert_eq!(out.len(), 3);
        for (p, r) in &out {
            let r = r.as_ref().unwrap();
            assert_eq!(r.p, *p);
            assert!(r.normalized_ratio > BigRational::zero(), "ratio at p={p}");
        }
        // duplicates produce duplicate reports
        let dup = scan(3, 2, 28, &[5, 5]);
        assert_eq!(dup[0].1.as_ref().unwrap(), dup[1].1.as_ref().unwrap());
        // per-element errors are collected
        let mixed = scan(3, 2, 28, &[4, 5]);
        assert!(mixed[0].1.is_err());
        assert!(mixed[1].1.is_ok());
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        let primes = arith::primes_in_range(3, 60);
        let seq = scan(3, 2, 28, &primes);
        for jobs in [2usize, 4, 7] {
            let par = scan_parallel(3, 2, 28, &primes, jobs);
            assert_eq!(par.len(), seq.len());
            for ((p1, r1), (p2, r2)) in seq.iter().zip(&par) {
                assert_eq!(p1, p2);
                match (r1, r2) {
                    (Ok(a), Ok(b)) => assert_eq!(a, b),
                    (Err(a), Err(b)) => assert_eq!(a, b),
                    _ => panic!("sequential/parallel disagree at p = {p1}"),
                }
            }
        }
    }

    #[test]
    fn upper_bound_decays() {
        let r31 = upper_bound_check(3, 2, &LevelDescriptor::new(31, 28).unwrap()).unwrap();
        let r101 = upper_bound_check(3, 2, &LevelDescriptor::new(101, 28).unwrap()).unwrap();
        assert!(r31.to_f64().unwrap() < 1.0);
        assert!(r101 < r31);
    }
}
