//! Arithmetic of star cells that share a cell of the dual triangulation.
//!
//! Let `G` have rays `λ_1, …, λ_d` and support vectors `ℓ_1, …, ℓ_d`, and let
//! `G'` replace `λ_s` by `μ`. The support vectors of `G'` are `−ℓ_s` and
//! `k_i = −ℓ_s(μ) ℓ_i + ℓ_i(μ) ℓ_s`, so only their values are ever formed.

use num_bigint::BigInt;

use crate::arith::{IntMatrix, Scalar};
use crate::error::{Error, Result};

/// Values at `α` of the support vectors of the neighbour obtained by
/// replacing the ray paired with slot `shared` by `μ`.
///
/// `l_alpha[i] = ℓ_i(α)`, `l_mu[i] = ℓ_i(μ)`. Slot `shared` of the result is
/// `−ℓ_shared(α)`, every other slot `k_i(α)`.
pub fn piggyback_transfer<N: Scalar>(l_alpha: &[N], l_mu: &[N], shared: usize) -> Result<Vec<N>> {
    let ld_mu = &l_mu[shared];
    if ld_mu.is_zero() {
        return Err(Error::SharedFacetDegenerate);
    }
    let ld_alpha = &l_alpha[shared];
    (0..l_alpha.len())
        .map(|i| {
            if i == shared {
                ld_alpha.neg()
            } else {
                N::mul_sub(&l_mu[i], ld_alpha, ld_mu, &l_alpha[i])
            }
        })
        .collect()
}

/// `|det(k_1, …, −ℓ_s, …, k_d)| = |ℓ_s(μ)|^(d-1) · |det(ℓ_1, …, ℓ_d)|`
pub fn piggyback_det_abs(ld_mu: &BigInt, det_abs: &BigInt, dim: usize) -> BigInt {
    num_traits::pow(num_traits::Signed::abs(ld_mu), dim.saturating_sub(1)) * det_abs
}

/// `det N' = ∏ ℓ_i(λ_i) / det M` for the matrix `N'` with columns `ℓ_i`,
/// where `M` has rows `λ_i`.
pub fn base_cell_det<N: Scalar>(diagonal: &[N], det_m: &N) -> Result<BigInt> {
    let mut prod = BigInt::from(1);
    for v in diagonal {
        prod *= v.to_bigint();
    }
    let det_m = det_m.to_bigint();
    if num_traits::Zero::is_zero(&det_m) {
        return Err(Error::SingularMatrix);
    }
    debug_assert!(num_traits::Zero::is_zero(&(&prod % &det_m)));
    Ok(prod / det_m)
}

/// The star cells attached to one cell `δ` of the dual triangulation.
///
/// The base cell omits the ray at position `base` of `δ`; its rays in row
/// order are the remaining rays of `δ` followed by the center. Every other
/// cell omits a ray `λ_b` instead and is reached from the base cell by
/// swapping `λ_b` for `μ = λ_base`.
#[derive(Debug, Clone)]
pub struct StarCells<N> {
    dim: usize,
    base: usize,
    /// Support vectors of the base cell: `M ℓ_i = D e_i`.
    ells: Vec<Vec<N>>,
    denominator: N,
    /// `ℓ_i(μ)`
    mu_values: Vec<N>,
}

impl<N: Scalar> StarCells<N> {
    /// `delta` lists the rays of `δ` in ascending order.
    pub fn new(delta: &[&[N]], base: usize, center: &[N]) -> Result<Self> {
        let dim = center.len();
        let mut rows: Vec<&[N]> = delta
            .iter()
            .enumerate()
            .filter(|(p, _)| *p != base)
            .map(|(_, r)| *r)
            .collect();
        rows.push(center);
        let (inv, denominator) = IntMatrix::from_rows(&rows, dim)?.invert_with_denominator()?;
        let ells: Vec<Vec<N>> = (0..dim).map(|j| inv.column(j)).collect();
        let mu_values = ells
            .iter()
            .map(|l| N::dot(l, delta[base]))
            .collect::<Result<_>>()?;
        Ok(Self {
            dim,
            base,
            ells,
            denominator,
            mu_values,
        })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `D = |det M|` of the base cell.
    pub fn denominator(&self) -> &N {
        &self.denominator
    }

    pub fn ells(&self) -> &[Vec<N>] {
        &self.ells
    }

    pub fn mu_values(&self) -> &[N] {
        &self.mu_values
    }

    /// Row of the base cell holding the ray at position `p` of `δ`.
    pub fn slot(&self, p: usize) -> usize {
        debug_assert_ne!(p, self.base);
        if p < self.base {
            p
        } else {
            p - 1
        }
    }

    /// Slot of the center in every cell.
    pub fn center_slot(&self) -> usize {
        self.dim - 1
    }

    /// `ℓ_i(α)` for the base cell.
    pub fn values(&self, alpha: &[N]) -> Result<Vec<N>> {
        self.ells.iter().map(|l| N::dot(l, alpha)).collect()
    }

    /// Support vector values of the cell omitting position `omitted`, given
    /// the base cell values. They are oriented to be positive on the cell,
    /// the slot of the omitted ray now pairing with `μ`.
    pub fn cell_values(&self, base_values: &[N], omitted: usize) -> Result<Vec<N>> {
        if omitted == self.base {
            return Ok(base_values.to_vec());
        }
        let shared = self.slot(omitted);
        let mut k = piggyback_transfer(base_values, &self.mu_values, shared)?;
        // k_i(λ_j) = −ℓ_s(μ) D δ_ij, so the orientation is the sign of −ℓ_s(μ)
        if self.mu_values[shared].is_positive() {
            for v in k.iter_mut() {
                *v = v.neg()?;
            }
        }
        Ok(k)
    }

    /// `|det|` of the support vectors of the cell omitting `omitted`.
    pub fn det_abs(&self, omitted: usize) -> BigInt {
        let base = num_traits::pow(self.denominator.to_bigint(), self.dim - 1);
        if omitted == self.base {
            base
        } else {
            piggyback_det_abs(&self.mu_values[self.slot(omitted)].to_bigint(), &base, self.dim)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_dimensional_hand_case() {
        let l_alpha = [1i64, 1];
        let l_mu = [1i64, -1];
        // ℓ_2 shared
        let k = piggyback_transfer(&l_alpha, &l_mu, 1).unwrap();
        assert_eq!(k, vec![2, -1]);
    }

    #[test]
    fn vanishing_mu_value_gives_scaled_copy() {
        let k = piggyback_transfer(&[3i64, 5, 7], &[0, 2, -4], 2).unwrap();
        assert_eq!(k[0], 4 * 3);
        assert_eq!(piggyback_transfer(&[1i64, 1], &[1, 0], 1), Err(Error::SharedFacetDegenerate));
    }

    #[test]
    fn base_determinant_identity_on_unit_cell() {
        let m = IntMatrix::<i64>::from_i64_rows(&[&[2, 1], &[0, 3]]);
        let (n, d) = m.invert_with_denominator().unwrap();
        assert_eq!(d, 6);
        let cols: Vec<Vec<i64>> = (0..2).map(|j| crate::arith::primitivize(&n.column(j)).unwrap()).collect();
        let diag: Vec<i64> = (0..2).map(|i| <i64 as Scalar>::dot(m.row(i), &cols[i]).unwrap()).collect();
        let det_n = IntMatrix::from_rows(&cols, 2).unwrap().det().unwrap();
        assert_eq!(base_cell_det(&diag, &m.det().unwrap()).unwrap(), BigInt::from(det_n));
    }
}
