//! Archimedean bookkeeping for GL(4): parameters of cohomological
//! representations, the weight recipes for tensor-product and symmetric-cube
//! lifts of elliptic cusp forms, Tate twists, the cuspidality rules for
//! tensor products, and the exterior-square certificate that a tensor
//! product never agrees with a symmetric cube up to a GL(1) twist.
//!
//! A cohomological cuspidal representation of GL(4, R) is an induced product
//! of two discrete series `J(w, ell)` indexed by an integer w and a tuple
//! `ell_1 > ell_2 > -ell_2 > -ell_1 > ...` with `ell_2 > 0` and
//! `w + ell_i` odd. The associated dominant highest weight is
//! `mu_i = (ell_i - (2 rho)_i + w) / 2` with `2 rho = (3, 1, -1, -3)`.

use std::fmt;

use crate::quadratic;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CohomologyError {
    /// The representation (or its requested twist) has no cohomology.
    NotCohomological(&'static str),
    /// Weights must be >= 2.
    WeightTooSmall(u32),
    /// The first weight must be strictly larger than the second.
    WeightsOutOfOrder { k1: u32, k2: u32 },
    /// Weight-one forms are excluded throughout.
    WeightOne,
    /// A dihedral descriptor needs a negative fundamental discriminant.
    InvalidDiscriminant(i64),
}

impl fmt::Display for CohomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomologyError::NotCohomological(why) => write!(f, "not cohomological: {why}"),
            CohomologyError::WeightTooSmall(k) => write!(f, "weight {k} too small (need >= 2)"),
            CohomologyError::WeightsOutOfOrder { k1, k2 } => {
                write!(f, "weights out of order: need k1 > k2, got k1 = {k1}, k2 = {k2}")
            }
            CohomologyError::WeightOne => write!(f, "weight-one forms are out of scope"),
            CohomologyError::InvalidDiscriminant(d) => {
                write!(f, "{d} is not a negative fundamental discriminant")
            }
        }
    }
}

impl std::error::Error for CohomologyError {}

/// A half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };
    pub const HALF: HalfInt = HalfInt { doubled: 1 };

    pub fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt { doubled: 2 * n }
    }

    pub fn doubled(self) -> i64 {
        self.doubled
    }

    pub fn is_integral(self) -> bool {
        self.doubled % 2 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

/// Parameter `J(w, ell)` of a cohomological representation of GL(4, R).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CuspParameter {
    pub w: i64,
    pub ell: [i64; 4],
}

impl CuspParameter {
    pub const RANK: usize = 4;

    /// Strict decrease, antisymmetry, positivity of the middle entry, and
    /// the parity constraint `w + ell_i` odd (rank 4 is even).
    pub fn validate(&self) -> Result<(), CohomologyError> {
        let l = &self.ell;
        for i in 0..3 {
            if l[i] <= l[i + 1] {
                return Err(CohomologyError::NotCohomological("parameter entries not strictly decreasing"));
            }
        }
        for i in 0..4 {
            if l[i] != -l[3 - i] {
                return Err(CohomologyError::NotCohomological("parameter not antisymmetric"));
            }
            if (self.w + l[i]).rem_euclid(2) != 1 {
                return Err(CohomologyError::NotCohomological("parity constraint w + ell_i odd fails"));
            }
        }
        if l[1] <= 0 {
            return Err(CohomologyError::NotCohomological("middle entry must be positive"));
        }
        Ok(())
    }

    /// Dominant highest weight attached to `J(w, ell)`.
    pub fn dominant_weight(&self) -> DominantWeight {
        const TWO_RHO: [i64; 4] = [3, 1, -1, -3];
        let mut mu = [0i64; 4];
        for i in 0..4 {
            let num = self.ell[i] - TWO_RHO[i] + self.w;
            debug_assert!(num % 2 == 0, "weight entry not integral");
            mu[i] = num / 2;
        }
        DominantWeight { mu }
    }
}

impl fmt::Display for CuspParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "J({}, ({}, {}, {}, {}))",
            self.w, self.ell[0], self.ell[1], self.ell[2], self.ell[3]
        )
    }
}

/// Nonincreasing integer 4-tuple with constant `mu_i + mu_{5-i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DominantWeight {
    pub mu: [i64; 4],
}

impl DominantWeight {
    pub fn validate(&self) -> Result<(), CohomologyError> {
        for i in 0..3 {
            if self.mu[i] < self.mu[i + 1] {
                return Err(CohomologyError::NotCohomological("weight not dominant"));
            }
        }
        let s = self.mu[0] + self.mu[3];
        if self.mu[1] + self.mu[2] != s {
            return Err(CohomologyError::NotCohomological("weight not self-dual up to a central shift"));
        }
        Ok(())
    }
}

/// Archimedean class of a lift: the parameter, the half-integral twist (if
/// any) needed to make it cohomological, and the dominant weight.
///
/// `twist` is 1/2 exactly when the untwisted representation is not
/// cohomological.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArchClass {
    pub parameter: CuspParameter,
    pub twist: HalfInt,
    pub weight: DominantWeight,
}

/// Classification of a GL(2) cusp form as the cuspidality rules see it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormKind {
    /// Induced from a Hecke character of the imaginary quadratic field of
    /// this fundamental discriminant.
    Dihedral { discriminant: i64 },
    /// Not induced; `twist_class` is an opaque label, equal labels meaning
    /// the two forms are twists of each other by some GL(1) character.
    NonDihedral { twist_class: String },
}

/// A cusp form as input to the cuspidality rules: its weight and its
/// declared classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormDescriptor {
    pub weight: u32,
    pub kind: FormKind,
}

impl FormDescriptor {
    pub fn dihedral(weight: u32, discriminant: i64) -> Result<Self, CohomologyError> {
        if discriminant >= 0 || !quadratic::is_fundamental_discriminant(discriminant) {
            return Err(CohomologyError::InvalidDiscriminant(discriminant));
        }
        Ok(FormDescriptor {
            weight,
            kind: FormKind::Dihedral { discriminant },
        })
    }

    pub fn non_dihedral(weight: u32, twist_class: impl Into<String>) -> Self {
        FormDescriptor {
            weight,
            kind: FormKind::NonDihedral {
                twist_class: twist_class.into(),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotCuspidalReason {
    /// Both non-dihedral and one is a twist of the other.
    TwistEquivalent,
    /// Both induced from the same imaginary quadratic field.
    SameField,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cuspidality {
    Cuspidal,
    NotCuspidal(NotCuspidalReason),
}

impl fmt::Display for Cuspidality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cuspidality::Cuspidal => write!(f, "cuspidal"),
            Cuspidality::NotCuspidal(NotCuspidalReason::TwistEquivalent) => {
                write!(f, "not cuspidal: twist-equivalent pair")
            }
            Cuspidality::NotCuspidal(NotCuspidalReason::SameField) => {
                write!(f, "not cuspidal: both induced from the same field")
            }
        }
    }
}

/// Archimedean class of the tensor-product lift of forms of weights
/// `k1 > k2 >= 2`.
///
/// The parameter tuple is `(k1+k2-2, k1-k2, k2-k1, 2-k1-k2)`. For odd
/// `k1 + k2` the lift itself is cohomological (`w = 0`, no twist); for even
/// `k1 + k2` only the half-integral Tate twist is (`w = 1`, twist 1/2).
/// Equal weights are rejected: the parameter degenerates and no twist is
/// cohomological.
pub fn tensor_infinity(k1: u32, k2: u32) -> Result<ArchClass, CohomologyError> {
    if k2 < 2 {
        return Err(CohomologyError::WeightTooSmall(k2));
    }
    if k1 == k2 {
        return Err(CohomologyError::NotCohomological(
            "equal weights degenerate the tensor parameter",
        ));
    }
    if k1 < k2 {
        return Err(CohomologyError::WeightsOutOfOrder { k1, k2 });
    }
    let s = (k1 + k2) as i64;
    let d = (k1 - k2) as i64;
    let ell = [s - 2, d, -d, 2 - s];
    let (w, twist) = if s % 2 == 1 {
        (0, HalfInt::ZERO)
    } else {
        (1, HalfInt::HALF)
    };
    let parameter = CuspParameter { w, ell };
    parameter.validate()?;
    let weight = parameter.dominant_weight();
    weight.validate()?;
    Ok(ArchClass {
        parameter,
        twist,
        weight,
    })
}

/// Archimedean class of the symmetric-cube lift of a form of weight
/// `k3 >= 2`: parameter `(3k3-3, k3-1, 1-k3, 3-3k3)`, cohomological as-is
/// for even `k3` and after the half twist for odd `k3`.
pub fn sym3_infinity(k3: u32) -> Result<ArchClass, CohomologyError> {
    if k3 == 1 {
        return Err(CohomologyError::WeightOne);
    }
    if k3 < 2 {
        return Err(CohomologyError::WeightTooSmall(k3));
    }
    let k = k3 as i64;
    let ell = [3 * k - 3, k - 1, 1 - k, 3 - 3 * k];
    let (w, twist) = if k3 % 2 == 0 {
        (0, HalfInt::ZERO)
    } else {
        (1, HalfInt::HALF)
    };
    let parameter = CuspParameter { w, ell };
    parameter.validate()?;
    let weight = parameter.dominant_weight();
    weight.validate()?;
    Ok(ArchClass {
        parameter,
        twist,
        weight,
    })
}

/// Twist `J(w, ell)` by `|.|^s`: cohomological exactly for integral s, where
/// it becomes `J(w + 2s, ell)`.
pub fn tate_twist(p: &CuspParameter, s: HalfInt) -> Result<CuspParameter, CohomologyError> {
    if !s.is_integral() {
        return Err(CohomologyError::NotCohomological(
            "half-integral Tate twist has no cohomology",
        ));
    }
    Ok(CuspParameter {
        w: p.w + s.doubled(),
        ell: p.ell,
    })
}

/// Cuspidality of the tensor product of two cusp forms, by classification:
/// exactly one dihedral is always cuspidal; two non-dihedral forms fail
/// exactly when twist-equivalent; two dihedral forms fail exactly when
/// induced from the same field.
pub fn cuspidality(d1: &FormDescriptor, d2: &FormDescriptor) -> Cuspidality {
    match (&d1.kind, &d2.kind) {
        (FormKind::Dihedral { .. }, FormKind::NonDihedral { .. })
        | (FormKind::NonDihedral { .. }, FormKind::Dihedral { .. }) => Cuspidality::Cuspidal,
        (FormKind::NonDihedral { twist_class: t1 }, FormKind::NonDihedral { twist_class: t2 }) => {
            if t1 == t2 {
                Cuspidality::NotCuspidal(NotCuspidalReason::TwistEquivalent)
            } else {
                Cuspidality::Cuspidal
            }
        }
        (FormKind::Dihedral { discriminant: f1 }, FormKind::Dihedral { discriminant: f2 }) => {
            if f1 == f2 {
                Cuspidality::NotCuspidal(NotCuspidalReason::SameField)
            } else {
                Cuspidality::Cuspidal
            }
        }
    }
}

/// Parity pattern of `(k1 + k2, k3)` driving the at-infinity comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityCase {
    /// k1 + k2 and k3 both even.
    BothEven,
    /// k1 + k2 and k3 both odd.
    BothOdd,
    /// Different parity with k1 even.
    MixedEvenK1,
    /// Different parity with k1 odd.
    MixedOddK1,
}

impl fmt::Display for ParityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParityCase::BothEven => "both-even",
            ParityCase::BothOdd => "both-odd",
            ParityCase::MixedEvenK1 => "mixed-parity-k1-even",
            ParityCase::MixedOddK1 => "mixed-parity-k1-odd",
        };
        write!(f, "{s}")
    }
}

/// Necessary conditions for the two archimedean classes to coincide in the
/// mixed-parity case with k1 odd: the twist must vanish and the weights must
/// chain as `k2 = k3 = (k1 - 1)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InfinityConditions {
    /// s = 0 is forced; recorded for the report.
    pub twist_must_vanish: bool,
    /// The common value `(k1 - 1)/2` that k2 and k3 must equal.
    pub required_weight: i64,
    /// Whether `k2 = k3 = (k1 - 1)/2` actually holds.
    pub satisfied: bool,
}

/// Outcome of comparing the representations at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapVerdict {
    /// The parameters can never match; in the mixed/odd case the necessary
    /// conditions are recorded with `satisfied = false`.
    NoOverlap {
        case: ParityCase,
        conditions: Option<InfinityConditions>,
    },
    /// Parameter comparison alone cannot rule the overlap out.
    InconclusiveAtInfinity { conditions: InfinityConditions },
}

/// Compare the tensor-product and symmetric-cube classes at infinity.
///
/// Matching parities of `k1 + k2` and `k3` put the two lifts in different
/// twist classes (exactly one of them needs the half twist), so they never
/// agree. In the mixed-parity case the parameters can only agree with twist
/// `s = 0` and the weight chain `k2 = k3 = (k1 - 1)/2`, which is impossible
/// for even k1; for odd k1 the comparison is inconclusive exactly when the
/// chain holds.
pub fn overlap_at_infinity(k1: u32, k2: u32, k3: u32) -> Result<OverlapVerdict, CohomologyError> {
    tensor_infinity(k1, k2)?;
    sym3_infinity(k3)?;
    let sum_even = (k1 + k2) % 2 == 0;
    let k3_even = k3 % 2 == 0;
    match (sum_even, k3_even) {
        (true, true) => Ok(OverlapVerdict::NoOverlap {
            case: ParityCase::BothEven,
            conditions: None,
        }),
        (false, false) => Ok(OverlapVerdict::NoOverlap {
            case: ParityCase::BothOdd,
            conditions: None,
        }),
        _ => {
            if k1 % 2 == 0 {
                Ok(OverlapVerdict::NoOverlap {
                    case: ParityCase::MixedEvenK1,
                    conditions: None,
                })
            } else {
                let required = (k1 as i64 - 1) / 2;
                let satisfied = k2 as i64 == required && k3 as i64 == required;
                let conditions = InfinityConditions {
                    twist_must_vanish: true,
                    required_weight: required,
                    satisfied,
                };
                if satisfied {
                    Ok(OverlapVerdict::InconclusiveAtInfinity { conditions })
                } else {
                    Ok(OverlapVerdict::NoOverlap {
                        case: ParityCase::MixedOddK1,
                        conditions: Some(conditions),
                    })
                }
            }
        }
    }
}

/// Formal isobaric sum: labelled summands with their GL(n) dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsobaricSum {
    pub summands: Vec<(String, u32)>,
}

impl IsobaricSum {
    pub fn total_dim(&self) -> u32 {
        self.summands.iter().map(|&(_, d)| d).sum()
    }

    /// Dimensions only, descending.
    pub fn dims(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.summands.iter().map(|&(_, d)| d).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

/// Exterior square of a tensor-product lift:
/// `Sym^2(pi1) x omega(pi2)  [+]  Sym^2(pi2) x omega(pi1)`, a 3 + 3 split.
pub fn ext_sq_tensor() -> IsobaricSum {
    IsobaricSum {
        summands: vec![
            ("Sym2(pi1)*omega(pi2)".to_string(), 3),
            ("Sym2(pi2)*omega(pi1)".to_string(), 3),
        ],
    }
}

/// Exterior square of a twisted symmetric cube:
/// `Sym^4(pi3) x chi^2 omega(pi3)  [+]  chi^2 omega(pi3)^3`, a 5 + 1 split.
pub fn ext_sq_sym3() -> IsobaricSum {
    IsobaricSum {
        summands: vec![
            ("Sym4(pi3)*chi^2*omega(pi3)".to_string(), 5),
            ("chi^2*omega(pi3)^3".to_string(), 1),
        ],
    }
}

/// How the rank-5 summand on the symmetric-cube side stays irreducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sym4Status {
    /// Sym^4 of the underlying form was declared cuspidal.
    Cuspidal,
    /// Declared non-cuspidal; that would force the form to have weight one,
    /// contradicting k3 >= 2, so Sym^4 is cuspidal after all.
    ForcedCuspidalByWeight,
}

/// The no-overlap certificate: exterior squares of the two lifts decompose
/// with different dimension partitions, {3, 3} against {5, 1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub tensor_side: IsobaricSum,
    pub sym3_side: IsobaricSum,
    /// Partition of 6 on the tensor side (descending).
    pub tensor_dims: Vec<u32>,
    /// Partition of 6 on the symmetric-cube side (descending).
    pub sym3_dims: Vec<u32>,
    /// A dimension present on the symmetric-cube side and absent on the
    /// tensor side (the rank-5 summand).
    pub unmatched_rank: u32,
    pub sym4_status: Sym4Status,
}

impl Certificate {
    /// True when the partitions cannot match, i.e. the identity
    /// `tensor = sym3 (x) chi` is contradictory.
    pub fn contradiction(&self) -> bool {
        !self.tensor_dims.contains(&self.unmatched_rank)
    }
}

/// Produce the certificate that a cuspidal tensor-product lift of weights
/// `(k1, k2)` never equals a twisted cuspidal symmetric cube of weight `k3`.
///
/// Equality would force equal exterior squares, but one side is a {3, 3}
/// isobaric sum and the other a {5, 1} sum whose rank-5 piece stays
/// irreducible (a non-cuspidal Sym^4 would force weight one, excluded here),
/// so no rank-5 summand can appear on the tensor side.
pub fn no_overlap_certificate(
    k1: u32,
    k2: u32,
    k3: u32,
    sym4_cuspidal: bool,
) -> Result<Certificate, CohomologyError> {
    if k3 <= 1 {
        return Err(CohomologyError::WeightOne);
    }
    if k2 < 2 {
        return Err(CohomologyError::WeightTooSmall(k2));
    }
    if k1 == k2 {
        return Err(CohomologyError::NotCohomological(
            "equal weights degenerate the tensor parameter",
        ));
    }
    if k1 < k2 {
        return Err(CohomologyError::WeightsOutOfOrder { k1, k2 });
    }
    let tensor_side = ext_sq_tensor();
    let sym3_side = ext_sq_sym3();
    let tensor_dims = tensor_side.dims();
    let sym3_dims = sym3_side.dims();
    let unmatched_rank = *sym3_dims
        .iter()
        .find(|d| !tensor_dims.contains(d))
        .expect("partitions differ");
    let cert = Certificate {
        tensor_side,
        sym3_side,
        tensor_dims,
        sym3_dims,
        unmatched_rank,
        sym4_status: if sym4_cuspidal {
            Sym4Status::Cuspidal
        } else {
            Sym4Status::ForcedCuspidalByWeight
        },
    };
    debug_assert!(cert.contradiction());
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_infinity_odd_sum() {
        let a = tensor_infinity(5, 2).unwrap();
        assert_eq!(a.parameter.ell, [5, 3, -3, -5]);
        assert_eq!(a.parameter.w, 0);
        assert_eq!(a.twist, HalfInt::ZERO);
        assert_eq!(a.weight.mu, [1, 1, -1, -1]);
    }

    #[test]
    fn tensor_infinity_even_sum() {
        let a = tensor_infinity(4, 2).unwrap();
        assert_eq!(a.parameter.ell, [4, 2, -2, -4]);
        assert_eq!(a.parameter.w, 1);
        assert_eq!(a.twist, HalfInt::HALF);
        assert_eq!(a.weight.mu, [1, 1, 0, 0]);
    }

    #[test]
    fn tensor_infinity_rejections() {
        assert!(matches!(
            tensor_infinity(3, 3).unwrap_err(),
            CohomologyError::NotCohomological(_)
        ));
        assert_eq!(
            tensor_infinity(3, 1).unwrap_err(),
            CohomologyError::WeightTooSmall(1)
        );
        assert_eq!(
            tensor_infinity(2, 4).unwrap_err(),
            CohomologyError::WeightsOutOfOrder { k1: 2, k2: 4 }
        );
    }

    #[test]
    fn tensor_infinity_invariants_sweep() {
        for k1 in 3..=50u32 {
            for k2 in 2..k1 {
                let a = tensor_infinity(k1, k2).unwrap();
                a.parameter.validate().unwrap();
                a.weight.validate().unwrap();
                // twist is 1/2 exactly in the even-sum case
                assert_eq!(a.twist == HalfInt::HALF, (k1 + k2) % 2 == 0);
                assert_eq!(a.parameter.dominant_weight(), a.weight);
            }
        }
    }

    #[test]
    fn sym3_infinity_examples() {
        let a = sym3_infinity(2).unwrap();
        assert_eq!(a.parameter.ell, [3, 1, -1, -3]);
        assert_eq!(a.parameter.w, 0);
        assert_eq!(a.twist, HalfInt::ZERO);

        let b = sym3_infinity(3).unwrap();
        assert_eq!(b.parameter.ell, [6, 2, -2, -6]);
        assert_eq!(b.parameter.w, 1);
        assert_eq!(b.twist, HalfInt::HALF);

        assert_eq!(sym3_infinity(1).unwrap_err(), CohomologyError::WeightOne);
        for k3 in 2..=50u32 {
            let c = sym3_infinity(k3).unwrap();
            c.parameter.validate().unwrap();
            c.weight.validate().unwrap();
        }
    }

    #[test]
    fn tate_twist_rules() {
        let p = sym3_infinity(2).unwrap().parameter;
        assert_eq!(tate_twist(&p, HalfInt::ZERO).unwrap(), p);
        let up = tate_twist(&p, HalfInt::from_int(1)).unwrap();
        assert_eq!(up.w, 2);
        assert_eq!(up.ell, p.ell);
        assert!(matches!(
            tate_twist(&p, HalfInt::HALF).unwrap_err(),
            CohomologyError::NotCohomological(_)
        ));
        // integral twists invert
        for s in -4i64..=4 {
            let t = tate_twist(&p, HalfInt::from_int(s)).unwrap();
            let back = tate_twist(&t, HalfInt::from_int(-s)).unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn cuspidality_rules() {
        let dih3 = FormDescriptor::dihedral(4, -3).unwrap();
        let dih7 = FormDescriptor::dihedral(4, -7).unwrap();
        let f = FormDescriptor::non_dihedral(4, "t");
        let g = FormDescriptor::non_dihedral(4, "u");

        assert_eq!(cuspidality(&dih3, &f), Cuspidality::Cuspidal);
        assert_eq!(
            cuspidality(&f, &f.clone()),
            Cuspidality::NotCuspidal(NotCuspidalReason::TwistEquivalent)
        );
        assert_eq!(cuspidality(&f, &g), Cuspidality::Cuspidal);
        assert_eq!(
            cuspidality(&dih7, &dih7.clone()),
            Cuspidality::NotCuspidal(NotCuspidalReason::SameField)
        );
        assert_eq!(cuspidality(&dih3, &dih7), Cuspidality::Cuspidal);

        // symmetry
        let pool = [dih3, dih7, f, g];
        for a in &pool {
            for b in &pool {
                assert_eq!(cuspidality(a, b), cuspidality(b, a));
            }
        }

        assert_eq!(
            FormDescriptor::dihedral(4, -12).unwrap_err(),
            CohomologyError::InvalidDiscriminant(-12)
        );
    }

    #[test]
    fn overlap_examples() {
        assert_eq!(
            overlap_at_infinity(6, 4, 2).unwrap(),
            OverlapVerdict::NoOverlap {
                case: ParityCase::BothEven,
                conditions: None
            }
        );
        match overlap_at_infinity(5, 2, 2).unwrap() {
            OverlapVerdict::InconclusiveAtInfinity { conditions } => {
                assert!(conditions.twist_must_vanish);
                assert_eq!(conditions.required_weight, 2);
                assert!(conditions.satisfied);
            }
            other => panic!("expected inconclusive, got {other:?}"),
        }
        assert_eq!(
            overlap_at_infinity(4, 3, 2).unwrap(),
            OverlapVerdict::NoOverlap {
                case: ParityCase::MixedEvenK1,
                conditions: None
            }
        );
        // mixed parity, k1 odd, chain violated
        match overlap_at_infinity(5, 3, 3).unwrap() {
            OverlapVerdict::NoOverlap {
                case: ParityCase::MixedOddK1,
                conditions: Some(c),
            } => assert!(!c.satisfied),
            other => panic!("expected no-overlap with recorded conditions, got {other:?}"),
        }
    }

    #[test]
    fn exterior_squares() {
        let t = ext_sq_tensor();
        let s = ext_sq_sym3();
        assert_eq!(t.dims(), vec![3, 3]);
        assert_eq!(s.dims(), vec![5, 1]);
        assert_eq!(t.total_dim(), 6);
        assert_eq!(s.total_dim(), 6);
    }

    #[test]
    fn certificate_examples() {
        let c = no_overlap_certificate(5, 2, 2, true).unwrap();
        assert!(c.contradiction());
        assert_eq!(c.unmatched_rank, 5);
        assert_eq!(c.sym4_status, Sym4Status::Cuspidal);

        let c2 = no_overlap_certificate(5, 2, 2, false).unwrap();
        assert!(c2.contradiction());
        assert_eq!(c2.sym4_status, Sym4Status::ForcedCuspidalByWeight);

        assert_eq!(
            no_overlap_certificate(5, 2, 1, true).unwrap_err(),
            CohomologyError::WeightOne
        );
    }
}
