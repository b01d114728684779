//! Exact integer arithmetic shared by every other module: factorisation by
//! trial division, divisor lists, p-adic valuations, and the newform sieve
//! multiplier `mu_bar`.
//!
//! Everything here is a pure function of its inputs; all inputs in this crate
//! stay at desk scale (<= ~10^12), so trial division with a mod-30 wheel is
//! all the factoring we need.

use std::fmt;

/// Errors from the arithmetic primitives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithError {
    /// A positive integer was required.
    ZeroInput,
    /// The argument must be prime.
    NotPrime(u64),
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::ZeroInput => write!(f, "expected a positive integer, got 0"),
            ArithError::NotPrime(p) => write!(f, "{p} is not prime"),
        }
    }
}

impl std::error::Error for ArithError {}

/// A positive integer together with its prime factorisation.
///
/// Primes are strictly increasing and every exponent is >= 1; the empty list
/// represents 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }
}

/// Factor `n >= 1` by trial division (2, 3, 5, then a mod-30 wheel).
pub fn factor(n: u64) -> Result<FactoredInteger, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroInput);
    }
    let mut m = n;
    let mut factors = Vec::new();
    for p in [2u64, 3, 5] {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    // Wheel over residues coprime to 30: 7, 11, 13, 17, 19, 23, 29, 31, ...
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0usize;
    while p.saturating_mul(p) <= m {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += WHEEL[i];
        i = (i + 1) % WHEEL.len();
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(FactoredInteger { value: n, factors })
}

/// Trial-division primality test, good through 64 bits at desk scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5] {
        if n % p == 0 {
            return n == p;
        }
    }
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0usize;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            return false;
        }
        p += WHEEL[i];
        i = (i + 1) % WHEEL.len();
    }
    true
}

/// Multiplicative sieve weight with `mu_bar(p) = -2`, `mu_bar(p^2) = 1` and
/// `mu_bar(p^r) = 0` for `r >= 3`.
///
/// This is the Dirichlet inverse of the divisor-count function `sigma0`, so
/// `sum_{d|n} mu_bar(n/d) * sigma0(d)` is 1 at n = 1 and 0 elsewhere; it is
/// exactly the weight that inverts the old/new decomposition
/// `dim S_k(N) = sum_{d|N} sigma0(N/d) * dim S_k^new(d)`.
pub fn mu_bar(n: u64) -> Result<i64, ArithError> {
    let f = factor(n)?;
    let mut out = 1i64;
    for &(_, e) in f.factors() {
        match e {
            1 => out *= -2,
            2 => {}
            _ => return Ok(0),
        }
    }
    Ok(out)
}

/// Number of divisors of `n >= 1`.
pub fn sigma0(n: u64) -> Result<u64, ArithError> {
    let f = factor(n)?;
    Ok(f.factors().iter().map(|&(_, e)| (e + 1) as u64).product())
}

/// All divisors of `n >= 1`, sorted ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>, ArithError> {
    let f = factor(n)?;
    let mut divs = vec![1u64];
    for &(p, e) in f.factors() {
        let prev = divs.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            divs.extend(prev.iter().map(|d| d * pe));
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Exponent of the prime `p` in `n >= 1`.
pub fn valuation(n: u64, p: u64) -> Result<u32, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroInput);
    }
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    let mut m = n;
    let mut v = 0u32;
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    Ok(v)
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> Result<u64, ArithError> {
    let f = factor(n)?;
    let mut out = n;
    for &(p, _) in f.factors() {
        out = out / p * (p - 1);
    }
    Ok(out)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Integer square root (largest `r` with `r*r <= n`).
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}

/// Primes in `[lo, hi]`, ascending (simple Eratosthenes sieve).
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || hi < lo {
        return Vec::new();
    }
    let hi_usize = hi as usize;
    let mut is_comp = vec![false; hi_usize + 1];
    let mut out = Vec::new();
    for n in 2..=hi_usize {
        if !is_comp[n] {
            if n as u64 >= lo {
                out.push(n as u64);
            }
            let mut m = n * n;
            while m <= hi_usize {
                is_comp[m] = true;
                m += n;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        assert_eq!(factor(1).unwrap().factors(), &[]);
        assert_eq!(factor(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factor(97).unwrap().factors(), &[(97, 1)]);
        assert_eq!(factor(0).unwrap_err(), ArithError::ZeroInput);
    }

    #[test]
    fn factor_invariants_hold() {
        for n in 1..=5000u64 {
            let f = factor(n).unwrap();
            let mut prod = 1u64;
            let mut last = 0u64;
            for &(p, e) in f.factors() {
                assert!(p > last, "primes not increasing for {n}");
                assert!(e >= 1);
                assert!(is_prime(p), "{p} not prime in factorisation of {n}");
                prod *= p.pow(e);
                last = p;
            }
            assert_eq!(prod, n);
        }
    }

    #[test]
    fn mu_bar_prime_powers() {
        assert_eq!(mu_bar(1).unwrap(), 1);
        for p in [2u64, 3, 5, 7, 11, 97] {
            assert_eq!(mu_bar(p).unwrap(), -2);
            assert_eq!(mu_bar(p * p).unwrap(), 1);
            assert_eq!(mu_bar(p * p * p).unwrap(), 0);
            assert_eq!(mu_bar(p * p * p * p).unwrap(), 0);
        }
        assert_eq!(mu_bar(12).unwrap(), -2); // 2^2 * 3 -> 1 * (-2)
    }

    #[test]
    fn mu_bar_is_dirichlet_inverse_of_sigma0() {
        // sum_{d|n} mu_bar(n/d) sigma0(d) = [n == 1] for all n <= 10^4.
        for n in 1..=10_000u64 {
            let mut s = 0i64;
            for d in divisors(n).unwrap() {
                s += mu_bar(n / d).unwrap() * sigma0(d).unwrap() as i64;
            }
            assert_eq!(s, i64::from(n == 1), "convolution identity fails at {n}");
        }
    }

    #[test]
    fn mu_bar_multiplicative_on_coprime_pairs() {
        for a in 1..=200u64 {
            for b in 1..=200u64 {
                if gcd(a, b) == 1 {
                    assert_eq!(
                        mu_bar(a * b).unwrap(),
                        mu_bar(a).unwrap() * mu_bar(b).unwrap(),
                        "mu_bar not multiplicative at ({a},{b})"
                    );
                }
            }
        }
    }

    #[test]
    fn divisor_helpers() {
        assert_eq!(sigma0(1).unwrap(), 1);
        assert_eq!(divisors(25).unwrap(), vec![1, 5, 25]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(valuation(250, 5).unwrap(), 3);
        assert_eq!(valuation(250, 3).unwrap(), 0);
        assert_eq!(valuation(250, 10).unwrap_err(), ArithError::NotPrime(10));
    }

    #[test]
    fn phi_and_primes() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert_eq!(primes_in_range(5, 20), vec![5, 7, 11, 13, 17, 19]);
        assert!(is_prime(999_999_937));
        assert!(!is_prime(999_999_939));
    }

    #[test]
    fn isqrt_exact() {
        for n in 0..2000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "isqrt wrong at {n}");
        }
    }
}
