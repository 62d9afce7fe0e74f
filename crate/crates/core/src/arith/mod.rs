//! Exact integer and rational arithmetic with a checked machine-word tier and
//! an arbitrary precision tier, plus the linear algebra kernels on top.

mod lattice;
mod matrix;
mod rational;
mod scalar;

pub use lattice::{
    content, coordinates_in_hermite_basis, divide_by_content, hermite_rows, integer_kernel,
    lattice_basis_of_span, pivot_columns, primitivize,
};
pub use matrix::{det, independent_subset, invert_with_denominator, rank_of, EchelonBasis, IntMatrix};
pub use rational::{
    is_integer, parse_rational, rat, render_decimal, render_fixed, render_fraction, sign_of,
    truncate_to_digits, Rat,
};
pub use scalar::{convert_vec, to_big_vec, Scalar, Tier};

use crate::error::{Error, Result};

/// Runs `f` in the machine-word tier and restarts it from scratch in
/// arbitrary precision if it reports an overflow. `force_arbitrary` skips the
/// first attempt.
pub fn with_restart<T>(
    force_arbitrary: bool,
    f: impl Fn(Tier) -> Result<T>,
) -> Result<(T, Tier)> {
    if !force_arbitrary {
        match f(Tier::MachineWord) {
            Err(Error::Overflow) => {}
            other => return other.map(|t| (t, Tier::MachineWord)),
        }
    }
    f(Tier::Arbitrary).map(|t| (t, Tier::Arbitrary))
}

/// Exact dot product of integer vectors as a big integer.
pub fn dot_big<N: Scalar>(a: &[N], b: &[N]) -> num_bigint::BigInt {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.to_bigint() * y.to_bigint())
        .sum()
}
