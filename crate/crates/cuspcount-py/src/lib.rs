//! Python bindings for the cuspcount library.
//!
//! Exposes the exact dimension formulas, class-number bounds, conductor
//! windows, archimedean parameter recipes and the lower-bound scan as plain
//! functions and small classes. Counts that exceed 64 bits come back as
//! Python ints at full precision.
//!
//! Build with `cargo build --release -p cuspcount-py`; see
//! `python/smoke_test.py` in the repository for a usage tour.

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cuspcount::arith;
use cuspcount::cohomology;
use cuspcount::conductor;
use cuspcount::dims;
use cuspcount::estimator;
use cuspcount::quadratic;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

// ---------------------------------------------------------------------------
// arithmetic

#[pyfunction]
fn factor(n: u64) -> PyResult<Vec<(u64, u32)>> {
    Ok(arith::factor(n).map_err(value_err)?.factors().to_vec())
}

#[pyfunction]
fn mu_bar(n: u64) -> PyResult<i64> {
    arith::mu_bar(n).map_err(value_err)
}

#[pyfunction]
fn sigma0(n: u64) -> PyResult<u64> {
    arith::sigma0(n).map_err(value_err)
}

#[pyfunction]
fn divisors(n: u64) -> PyResult<Vec<u64>> {
    arith::divisors(n).map_err(value_err)
}

#[pyfunction]
fn valuation(n: u64, p: u64) -> PyResult<u32> {
    arith::valuation(n, p).map_err(value_err)
}

#[pyfunction]
fn is_prime(n: u64) -> bool {
    arith::is_prime(n)
}

#[pyfunction]
fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    arith::primes_in_range(lo, hi)
}

// ---------------------------------------------------------------------------
// dimensions

/// Invariants of the modular curve X_1(N).
#[pyclass(name = "Gamma1Invariants", get_all, frozen)]
#[derive(Clone)]
struct PyGamma1Invariants {
    level: u64,
    index: u128,
    degree: u128,
    cusps_regular: u64,
    cusps_irregular: u64,
    eps2: u64,
    eps3: u64,
    genus: u128,
}

#[pymethods]
impl PyGamma1Invariants {
    fn __repr__(&self) -> String {
        format!(
            "Gamma1Invariants(level={}, index={}, degree={}, cusps_regular={}, cusps_irregular={}, eps2={}, eps3={}, genus={})",
            self.level,
            self.index,
            self.degree,
            self.cusps_regular,
            self.cusps_irregular,
            self.eps2,
            self.eps3,
            self.genus
        )
    }
}

#[pyfunction]
fn gamma1_invariants(n: u64) -> PyResult<PyGamma1Invariants> {
    let i = dims::gamma1_invariants(n).map_err(value_err)?;
    Ok(PyGamma1Invariants {
        level: i.level,
        index: i.index,
        degree: i.degree,
        cusps_regular: i.cusps_regular,
        cusps_irregular: i.cusps_irregular,
        eps2: i.eps2,
        eps3: i.eps3,
        genus: i.genus,
    })
}

#[pyfunction]
fn dim_cusp(k: u32, n: u64) -> PyResult<u128> {
    dims::dim_cusp(k, n).map_err(value_err)
}

#[pyfunction]
fn dim_new(k: u32, n: u64) -> PyResult<u128> {
    dims::dim_new(k, n).map_err(value_err)
}

#[pyfunction]
fn dim_new_sum(k: u32, p: u64, n: u32) -> PyResult<u128> {
    dims::dim_new_sum(k, p, n).map_err(value_err)
}

/// Independent character-sum route for dim S_k(Gamma1(N)).
#[pyfunction]
fn dim_cusp_by_characters(k: u32, n: u64) -> PyResult<u128> {
    dims::characters::dim_cusp_by_characters(k, n).map_err(value_err)
}

/// `dim S_k^new(Gamma1(p^n)) / p^{2n}` as an exact (numerator, denominator).
#[pyfunction]
fn newform_ratio(k: u32, p: u64, n: u32) -> PyResult<(BigInt, BigInt)> {
    let r = dims::newform_ratio(k, p, n).map_err(value_err)?;
    Ok((r.numer().clone(), r.denom().clone()))
}

// ---------------------------------------------------------------------------
// quadratic fields and dihedral bounds

#[pyfunction]
fn is_fundamental_discriminant(d: i64) -> bool {
    quadratic::is_fundamental_discriminant(d)
}

#[pyfunction]
fn class_number(d: i64) -> PyResult<u64> {
    quadratic::class_number(d).map_err(value_err)
}

#[pyfunction]
fn phi_norm(p: u64, m: u32) -> PyResult<u128> {
    quadratic::phi_norm(p, m).map_err(value_err)
}

#[pyfunction]
fn dihedral_count_bound(p: u64, n: u32) -> PyResult<u128> {
    quadratic::dihedral_count_bound(p, n).map_err(value_err)
}

#[pyfunction]
fn dihedral_pair_bound(p: u64, n1: u32, n2: u32) -> PyResult<u128> {
    quadratic::dihedral_pair_bound(p, n1, n2).map_err(value_err)
}

// ---------------------------------------------------------------------------
// conductors

#[pyfunction]
fn conductor_from_level(m: u32, e: u8) -> PyResult<u32> {
    conductor::conductor_from_level(m, e).map_err(value_err)
}

#[pyfunction]
fn level_range_from_conductor(c: u32) -> PyResult<(u32, u32)> {
    conductor::level_range_from_conductor(c).map_err(value_err)
}

#[pyfunction]
fn rs_conductor_range(c1: u32, c2: u32) -> PyResult<(u32, u32)> {
    let r = conductor::rs_conductor_range(c1, c2).map_err(value_err)?;
    Ok((r.lo, r.hi))
}

#[pyfunction]
fn admissible_tensor_levels(s1: u32, s2: u32) -> PyResult<(u32, u32)> {
    let r = conductor::admissible_tensor_levels(s1, s2).map_err(value_err)?;
    Ok((r.lo, r.hi))
}

// ---------------------------------------------------------------------------
// archimedean bookkeeping

/// Archimedean parameter of a GL(4) lift.
#[pyclass(name = "ArchClass", get_all, frozen)]
#[derive(Clone)]
struct PyArchClass {
    w: i64,
    ell: Vec<i64>,
    /// "0" or "1/2"
    twist: String,
    twist_doubled: i64,
    mu: Vec<i64>,
}

#[pymethods]
impl PyArchClass {
    fn __repr__(&self) -> String {
        format!(
            "ArchClass(w={}, ell={:?}, twist={}, mu={:?})",
            self.w, self.ell, self.twist, self.mu
        )
    }
}

fn arch_class(a: cohomology::ArchClass) -> PyArchClass {
    PyArchClass {
        w: a.parameter.w,
        ell: a.parameter.ell.to_vec(),
        twist: a.twist.to_string(),
        twist_doubled: a.twist.doubled(),
        mu: a.weight.mu.to_vec(),
    }
}

#[pyfunction]
fn tensor_infinity(k1: u32, k2: u32) -> PyResult<PyArchClass> {
    Ok(arch_class(
        cohomology::tensor_infinity(k1, k2).map_err(value_err)?,
    ))
}

#[pyfunction]
fn sym3_infinity(k3: u32) -> PyResult<PyArchClass> {
    Ok(arch_class(cohomology::sym3_infinity(k3).map_err(value_err)?))
}

/// Twist J(w, ell) by |.|^{twice_s / 2}; integral twists shift w by twice_s,
/// half-integral twists raise ValueError (no cohomology).
#[pyfunction]
fn tate_twist(w: i64, ell: Vec<i64>, twice_s: i64) -> PyResult<(i64, Vec<i64>)> {
    if ell.len() != 4 {
        return Err(PyValueError::new_err("ell must have exactly 4 entries"));
    }
    let param = cohomology::CuspParameter {
        w,
        ell: [ell[0], ell[1], ell[2], ell[3]],
    };
    let t = cohomology::tate_twist(&param, cohomology::HalfInt::from_doubled(twice_s))
        .map_err(value_err)?;
    Ok((t.w, t.ell.to_vec()))
}

/// Classification of a cusp form for the cuspidality rules.
#[pyclass(name = "FormDescriptor", frozen)]
#[derive(Clone)]
struct PyFormDescriptor {
    inner: cohomology::FormDescriptor,
}

#[pymethods]
impl PyFormDescriptor {
    /// Dihedral form induced from the field of this fundamental discriminant.
    #[staticmethod]
    fn dihedral(weight: u32, discriminant: i64) -> PyResult<Self> {
        Ok(PyFormDescriptor {
            inner: cohomology::FormDescriptor::dihedral(weight, discriminant).map_err(value_err)?,
        })
    }

    /// Non-dihedral form; equal twist_class labels mean twist-equivalent.
    #[staticmethod]
    fn non_dihedral(weight: u32, twist_class: String) -> Self {
        PyFormDescriptor {
            inner: cohomology::FormDescriptor::non_dihedral(weight, twist_class),
        }
    }

    fn __repr__(&self) -> String {
        match &self.inner.kind {
            cohomology::FormKind::Dihedral { discriminant } => format!(
                "FormDescriptor.dihedral({}, {})",
                self.inner.weight, discriminant
            ),
            cohomology::FormKind::NonDihedral { twist_class } => format!(
                "FormDescriptor.non_dihedral({}, {:?})",
                self.inner.weight, twist_class
            ),
        }
    }
}

/// "cuspidal", "not cuspidal: twist-equivalent pair" or
/// "not cuspidal: both induced from the same field".
#[pyfunction]
fn cuspidality(d1: &PyFormDescriptor, d2: &PyFormDescriptor) -> String {
    cohomology::cuspidality(&d1.inner, &d2.inner).to_string()
}

/// Outcome of the at-infinity comparison of the two lifts.
#[pyclass(name = "OverlapSummary", get_all, frozen)]
#[derive(Clone)]
struct PyOverlapSummary {
    /// "no-overlap" or "inconclusive"
    at_infinity: String,
    parity_case: String,
    /// `(k1 - 1) / 2` when the mixed/odd conditions were evaluated.
    required_weight: Option<i64>,
    conditions_satisfied: Option<bool>,
}

#[pymethods]
impl PyOverlapSummary {
    fn __repr__(&self) -> String {
        format!(
            "OverlapSummary(at_infinity={:?}, parity_case={:?}, required_weight={:?}, conditions_satisfied={:?})",
            self.at_infinity, self.parity_case, self.required_weight, self.conditions_satisfied
        )
    }
}

#[pyfunction]
fn overlap_at_infinity(k1: u32, k2: u32, k3: u32) -> PyResult<PyOverlapSummary> {
    let v = cohomology::overlap_at_infinity(k1, k2, k3).map_err(value_err)?;
    Ok(match v {
        cohomology::OverlapVerdict::NoOverlap { case, conditions } => PyOverlapSummary {
            at_infinity: "no-overlap".into(),
            parity_case: case.to_string(),
            required_weight: conditions.map(|c| c.required_weight),
            conditions_satisfied: conditions.map(|c| c.satisfied),
        },
        cohomology::OverlapVerdict::InconclusiveAtInfinity { conditions } => PyOverlapSummary {
            at_infinity: "inconclusive".into(),
            parity_case: cohomology::ParityCase::MixedOddK1.to_string(),
            required_weight: Some(conditions.required_weight),
            conditions_satisfied: Some(conditions.satisfied),
        },
    })
}

#[pyfunction]
fn ext_sq_tensor() -> Vec<(String, u32)> {
    cohomology::ext_sq_tensor().summands
}

#[pyfunction]
fn ext_sq_sym3() -> Vec<(String, u32)> {
    cohomology::ext_sq_sym3().summands
}

/// The exterior-square no-overlap certificate.
#[pyclass(name = "Certificate", get_all, frozen)]
#[derive(Clone)]
struct PyCertificate {
    tensor_dims: Vec<u32>,
    sym3_dims: Vec<u32>,
    unmatched_rank: u32,
    contradiction: bool,
    sym4_status: String,
}

#[pymethods]
impl PyCertificate {
    fn __repr__(&self) -> String {
        format!(
            "Certificate(tensor_dims={:?}, sym3_dims={:?}, unmatched_rank={}, contradiction={})",
            self.tensor_dims, self.sym3_dims, self.unmatched_rank, self.contradiction
        )
    }
}

#[pyfunction]
#[pyo3(signature = (k1, k2, k3, sym4_cuspidal = true))]
fn no_overlap_certificate(k1: u32, k2: u32, k3: u32, sym4_cuspidal: bool) -> PyResult<PyCertificate> {
    let c = cohomology::no_overlap_certificate(k1, k2, k3, sym4_cuspidal).map_err(value_err)?;
    Ok(PyCertificate {
        contradiction: c.contradiction(),
        sym4_status: match c.sym4_status {
            cohomology::Sym4Status::Cuspidal => "cuspidal".into(),
            cohomology::Sym4Status::ForcedCuspidalByWeight => "forced-cuspidal-by-weight".into(),
        },
        tensor_dims: c.tensor_dims,
        sym3_dims: c.sym3_dims,
        unmatched_rank: c.unmatched_rank,
    })
}

// ---------------------------------------------------------------------------
// the counting pipeline

/// Everything the pipeline computed for one (k1, k2, p, N).
#[pyclass(name = "EstimateReport", get_all, frozen)]
#[derive(Clone)]
struct PyEstimateReport {
    k1: u32,
    k2: u32,
    p: u64,
    level_exponent: u32,
    n1: u32,
    n2: u32,
    dim_sum1: BigUint,
    dim_sum2: BigUint,
    pair_count: BigUint,
    dihedral_bound: BigUint,
    lower_bound: BigUint,
    ratio_num: BigInt,
    ratio_den: BigInt,
    conductor_window_ok: bool,
    caveats: Vec<String>,
}

#[pymethods]
impl PyEstimateReport {
    /// The normalized ratio as a float (exact value is ratio_num/ratio_den).
    fn ratio(&self) -> f64 {
        let num: f64 = self.ratio_num.to_string().parse().unwrap_or(f64::NAN);
        let den: f64 = self.ratio_den.to_string().parse().unwrap_or(f64::NAN);
        num / den
    }

    fn __repr__(&self) -> String {
        format!(
            "EstimateReport(p={}, n1={}, n2={}, pair_count={}, dihedral_bound={}, lower_bound={})",
            self.p, self.n1, self.n2, self.pair_count, self.dihedral_bound, self.lower_bound
        )
    }
}

fn wrap_report(r: estimator::EstimateReport) -> PyEstimateReport {
    PyEstimateReport {
        k1: r.k1,
        k2: r.k2,
        p: r.p,
        level_exponent: r.level_exponent,
        n1: r.n1,
        n2: r.n2,
        dim_sum1: r.dim_sum1,
        dim_sum2: r.dim_sum2,
        pair_count: r.pair_count,
        dihedral_bound: r.dihedral_bound,
        lower_bound: r.lower_bound,
        ratio_num: r.normalized_ratio.numer().clone(),
        ratio_den: r.normalized_ratio.denom().clone(),
        conductor_window_ok: r.conductor_window_ok,
        caveats: r.caveats.iter().map(|c| c.to_string()).collect(),
    }
}

/// Split floor(N/4) into the balanced (n1, n2); requires N > 24.
#[pyfunction]
fn split_levels(n: u32) -> PyResult<(u32, u32)> {
    estimator::split_levels(n).map_err(value_err)
}

#[pyfunction]
fn lower_bound_count(k1: u32, k2: u32, p: u64, n: u32) -> PyResult<PyEstimateReport> {
    let lvl = estimator::LevelDescriptor::new(p, n).map_err(value_err)?;
    Ok(wrap_report(
        estimator::lower_bound_count(k1, k2, &lvl).map_err(value_err)?,
    ))
}

/// One report per prime, in input order. Raises on the first bad prime.
#[pyfunction]
fn scan(k1: u32, k2: u32, n: u32, primes: Vec<u64>) -> PyResult<Vec<PyEstimateReport>> {
    let mut out = Vec::with_capacity(primes.len());
    for (p, r) in estimator::scan(k1, k2, n, &primes) {
        out.push(wrap_report(r.map_err(|e| value_err(format!("p={p}: {e}")))?));
    }
    Ok(out)
}

/// `pair_count / p^{2N}` as an exact (numerator, denominator).
#[pyfunction]
fn upper_bound_check(k1: u32, k2: u32, p: u64, n: u32) -> PyResult<(BigInt, BigInt)> {
    let lvl = estimator::LevelDescriptor::new(p, n).map_err(value_err)?;
    let r = estimator::upper_bound_check(k1, k2, &lvl).map_err(value_err)?;
    Ok((r.numer().clone(), r.denom().clone()))
}

#[pymodule]
fn cuspcount_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(mu_bar, m)?)?;
    m.add_function(wrap_pyfunction!(sigma0, m)?)?;
    m.add_function(wrap_pyfunction!(divisors, m)?)?;
    m.add_function(wrap_pyfunction!(valuation, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(primes_in_range, m)?)?;

    m.add_class::<PyGamma1Invariants>()?;
    m.add_function(wrap_pyfunction!(gamma1_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(dim_cusp, m)?)?;
    m.add_function(wrap_pyfunction!(dim_new, m)?)?;
    m.add_function(wrap_pyfunction!(dim_new_sum, m)?)?;
    m.add_function(wrap_pyfunction!(dim_cusp_by_characters, m)?)?;
    m.add_function(wrap_pyfunction!(newform_ratio, m)?)?;

    m.add_function(wrap_pyfunction!(is_fundamental_discriminant, m)?)?;
    m.add_function(wrap_pyfunction!(class_number, m)?)?;
    m.add_function(wrap_pyfunction!(phi_norm, m)?)?;
    m.add_function(wrap_pyfunction!(dihedral_count_bound, m)?)?;
    m.add_function(wrap_pyfunction!(dihedral_pair_bound, m)?)?;

    m.add_function(wrap_pyfunction!(conductor_from_level, m)?)?;
    m.add_function(wrap_pyfunction!(level_range_from_conductor, m)?)?;
    m.add_function(wrap_pyfunction!(rs_conductor_range, m)?)?;
    m.add_function(wrap_pyfunction!(admissible_tensor_levels, m)?)?;

    m.add_class::<PyArchClass>()?;
    m.add_class::<PyFormDescriptor>()?;
    m.add_class::<PyOverlapSummary>()?;
    m.add_class::<PyCertificate>()?;
    m.add_function(wrap_pyfunction!(tensor_infinity, m)?)?;
    m.add_function(wrap_pyfunction!(sym3_infinity, m)?)?;
    m.add_function(wrap_pyfunction!(tate_twist, m)?)?;
    m.add_function(wrap_pyfunction!(cuspidality, m)?)?;
    m.add_function(wrap_pyfunction!(overlap_at_infinity, m)?)?;
    m.add_function(wrap_pyfunction!(ext_sq_tensor, m)?)?;
    m.add_function(wrap_pyfunction!(ext_sq_sym3, m)?)?;
    m.add_function(wrap_pyfunction!(no_overlap_certificate, m)?)?;

    m.add_class::<PyEstimateReport>()?;
    m.add_function(wrap_pyfunction!(split_levels, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound_count, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bound_check, m)?)?;
    Ok(())
}
