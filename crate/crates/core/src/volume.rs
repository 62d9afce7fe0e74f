//! Result types shared by the volume algorithms.

use num_bigint::BigInt;

use crate::arith::{render_fixed, truncate_to_digits, Rat};

/// Digits kept by fixed precision mode unless configured otherwise.
pub const DEFAULT_FIXED_DIGITS: u32 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Exact,
    /// Summands truncated toward zero to multiples of `10^-p`.
    Fixed(u32),
}

/// `Vol conv(0, P)` and `Vol P` of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Volumes {
    pub cone_pyramid: Rat,
    pub polytope: Rat,
}

impl Volumes {
    pub fn from_pyramid(cone_pyramid: Rat, grading_denominator: &BigInt) -> Self {
        let polytope = &cone_pyramid * Rat::from_integer(grading_denominator.clone());
        Self {
            cone_pyramid,
            polytope,
        }
    }
}

/// Volumes as integer multiples of `10^-digits`, with a bound on the
/// accumulated truncation error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedVolumes {
    pub digits: u32,
    pub cone_pyramid: BigInt,
    pub polytope: BigInt,
    pub error_bound: Rat,
}

impl FixedVolumes {
    /// Truncates exact volumes once; the error is below one unit.
    pub fn from_exact(v: &Volumes, digits: u32) -> Self {
        Self {
            digits,
            cone_pyramid: truncate_to_digits(&v.cone_pyramid, digits),
            polytope: truncate_to_digits(&v.polytope, digits),
            error_bound: unit(digits),
        }
    }

    pub fn polytope_value(&self) -> Rat {
        Rat::new(self.polytope.clone(), unit(self.digits).denom().clone())
    }

    pub fn cone_pyramid_value(&self) -> Rat {
        Rat::new(self.cone_pyramid.clone(), unit(self.digits).denom().clone())
    }

    pub fn polytope_decimal(&self) -> String {
        render_fixed(&self.polytope, self.digits)
    }

    pub fn cone_pyramid_decimal(&self) -> String {
        render_fixed(&self.cone_pyramid, self.digits)
    }
}

/// `10^-digits`
pub fn unit(digits: u32) -> Rat {
    Rat::new(BigInt::from(1), num_traits::pow(BigInt::from(10), digits as usize))
}

/// Output of one run in the requested precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VolumeValue {
    Exact(Volumes),
    Fixed(FixedVolumes),
}

impl VolumeValue {
    pub fn polytope(&self) -> Rat {
        match self {
            VolumeValue::Exact(v) => v.polytope.clone(),
            VolumeValue::Fixed(f) => f.polytope_value(),
        }
    }

    pub fn cone_pyramid(&self) -> Rat {
        match self {
            VolumeValue::Exact(v) => v.cone_pyramid.clone(),
            VolumeValue::Fixed(f) => f.cone_pyramid_value(),
        }
    }

    pub fn exact(&self) -> Option<&Volumes> {
        match self {
            VolumeValue::Exact(v) => Some(v),
            VolumeValue::Fixed(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use num_traits::Signed;

    #[test]
    fn fixed_truncation_of_a_third() {
        let v = Volumes::from_pyramid(rat(1, 3), &BigInt::from(1));
        let f = FixedVolumes::from_exact(&v, 2);
        assert_eq!(f.polytope_decimal(), "0.33");
        assert!((f.polytope_value() - rat(1, 3)).abs() <= f.error_bound);
    }
}
