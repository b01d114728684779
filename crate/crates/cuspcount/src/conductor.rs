//! Level/conductor dictionary for supercuspidal representations of GL(2)
//! over a p-adic field, and the conductor window of a Rankin-Selberg product.
//!
//! For a supercuspidal of level m and ramification index e in {1, 2} the
//! conductor is c = 2(1 + m/e), always an integer and at least 2; since
//! 1 <= e <= 2 this traps c between m + 2 and 2m + 2. For two supercuspidals
//! the Rankin-Selberg conductor satisfies
//! `2 <= c(pi1 x pi2) <= 4 c(pi1) + 4 c(pi2) - 12`, which is also the window
//! of level exponents at which their tensor product can show up.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConductorError {
    /// Ramification index must be 1 or 2.
    InvalidRamification(u8),
    /// Conductors of supercuspidals are at least 2.
    ConductorTooSmall(u32),
    /// A conductor < 2 means the local component is not supercuspidal.
    NonSupercuspidal(u32),
}

impl fmt::Display for ConductorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConductorError::InvalidRamification(e) => {
                write!(f, "ramification index {e} not in {{1, 2}}")
            }
            ConductorError::ConductorTooSmall(c) => {
                write!(f, "conductor {c} < 2")
            }
            ConductorError::NonSupercuspidal(c) => {
                write!(f, "conductor {c} < 2: local component is not supercuspidal")
            }
        }
    }
}

impl std::error::Error for ConductorError {}

/// Level, ramification index and conductor of a supercuspidal GL(2) datum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupercuspidalDatum {
    pub level: u32,
    pub ram_index: u8,
    pub conductor: u32,
}

impl SupercuspidalDatum {
    pub fn new(level: u32, ram_index: u8) -> Result<Self, ConductorError> {
        let c = conductor_from_level(level, ram_index)?;
        Ok(SupercuspidalDatum {
            level,
            ram_index,
            conductor: c,
        })
    }
}

/// An inclusive conductor (or level-exponent) window `[lo, hi]` with
/// `2 <= lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConductorRange {
    pub lo: u32,
    pub hi: u32,
}

/// `c = 2(1 + m/e)`: 2m + 2 for e = 1, m + 2 for e = 2.
pub fn conductor_from_level(m: u32, e: u8) -> Result<u32, ConductorError> {
    let c = match e {
        1 => 2 * m + 2,
        2 => m + 2,
        _ => return Err(ConductorError::InvalidRamification(e)),
    };
    debug_assert!(m + 2 <= c && c <= 2 * m + 2);
    Ok(c)
}

/// Invert the chain `m + 2 <= c <= 2m + 2`: levels compatible with conductor
/// `c` lie in `[ceil((c-2)/2), c-2]`.
pub fn level_range_from_conductor(c: u32) -> Result<(u32, u32), ConductorError> {
    if c < 2 {
        return Err(ConductorError::ConductorTooSmall(c));
    }
    let lo = (c - 2).div_ceil(2);
    let hi = c - 2;
    Ok((lo, hi))
}

/// Rankin-Selberg conductor window for supercuspidal conductors `c1, c2 >= 2`.
pub fn rs_conductor_range(c1: u32, c2: u32) -> Result<ConductorRange, ConductorError> {
    if c1 < 2 {
        return Err(ConductorError::ConductorTooSmall(c1));
    }
    if c2 < 2 {
        return Err(ConductorError::ConductorTooSmall(c2));
    }
    Ok(ConductorRange {
        lo: 2,
        hi: 4 * c1 + 4 * c2 - 12,
    })
}

/// Window of level exponents at which the tensor product of two local
/// supercuspidals with conductors `s1, s2` can occur. Same arithmetic as
/// [`rs_conductor_range`], but a conductor below 2 is reported as the
/// distinct non-supercuspidal failure.
pub fn admissible_tensor_levels(s1: u32, s2: u32) -> Result<ConductorRange, ConductorError> {
    if s1 < 2 {
        return Err(ConductorError::NonSupercuspidal(s1));
    }
    if s2 < 2 {
        return Err(ConductorError::NonSupercuspidal(s2));
    }
    rs_conductor_range(s1, s2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conductor_from_level_examples() {
        assert_eq!(conductor_from_level(0, 1).unwrap(), 2);
        assert_eq!(conductor_from_level(1, 2).unwrap(), 3);
        assert_eq!(conductor_from_level(2, 1).unwrap(), 6);
        assert_eq!(
            conductor_from_level(1, 3).unwrap_err(),
            ConductorError::InvalidRamification(3)
        );
        let d = SupercuspidalDatum::new(2, 2).unwrap();
        assert_eq!(d.conductor, 4);
    }

    #[test]
    fn level_range_examples() {
        assert_eq!(level_range_from_conductor(2).unwrap(), (0, 0));
        assert_eq!(level_range_from_conductor(5).unwrap(), (2, 3));
        assert_eq!(level_range_from_conductor(3).unwrap(), (1, 1));
        assert_eq!(
            level_range_from_conductor(1).unwrap_err(),
            ConductorError::ConductorTooSmall(1)
        );
    }

    #[test]
    fn round_trip() {
        for m in 0..=20u32 {
            for e in [1u8, 2] {
                let c = conductor_from_level(m, e).unwrap();
                let (lo, hi) = level_range_from_conductor(c).unwrap();
                assert!(lo <= m && m <= hi, "round trip fails at m={m} e={e}");
            }
        }
    }

    #[test]
    fn rs_range_examples() {
        assert_eq!(rs_conductor_range(2, 2).unwrap(), ConductorRange { lo: 2, hi: 4 });
        assert_eq!(rs_conductor_range(2, 3).unwrap(), ConductorRange { lo: 2, hi: 8 });
        assert_eq!(rs_conductor_range(3, 3).unwrap(), ConductorRange { lo: 2, hi: 12 });
    }

    #[test]
    fn rs_range_monotone() {
        for c1 in 2..=12u32 {
            for c2 in 2..=12u32 {
                let h = rs_conductor_range(c1, c2).unwrap().hi;
                assert!(rs_conductor_range(c1 + 1, c2).unwrap().hi > h);
                assert!(rs_conductor_range(c1, c2 + 1).unwrap().hi > h);
            }
        }
    }

    #[test]
    fn tensor_levels() {
        assert_eq!(
            admissible_tensor_levels(2, 2).unwrap(),
            ConductorRange { lo: 2, hi: 4 }
        );
        assert_eq!(admissible_tensor_levels(3, 2).unwrap().hi, 8);
        assert_eq!(
            admissible_tensor_levels(2, 1).unwrap_err(),
            ConductorError::NonSupercuspidal(1)
        );
        // The two windows agree when both sides are supercuspidal.
        for s1 in 2..=10u32 {
            for s2 in 2..=10u32 {
                assert_eq!(
                    admissible_tensor_levels(s1, s2).unwrap().hi,
                    rs_conductor_range(s1, s2).unwrap().hi
                );
            }
        }
    }
}
