use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::hollow::HollowFacet;
use super::piggyback::StarCells;
use super::pyramid::AdditionPyramid;
use crate::arith::{convert_vec, truncate_to_digits, IntMatrix, Rat, Scalar};
use crate::error::{Error, Result};
use crate::volume::{unit, FixedVolumes, Precision, VolumeValue, Volumes};

/// Signed volume `(−1)^e |det| / ∏ |ℓ_i(deg)|` of the pyramid over `R_δ`.
pub fn signed_contribution(degree_values: &[BigInt], det_abs: &BigInt) -> Result<Rat> {
    let mut denom = BigInt::from(1);
    let mut negative = false;
    for v in degree_values {
        if Zero::is_zero(v) {
            return Err(Error::GenericityViolated);
        }
        negative ^= Signed::is_negative(v);
        denom *= Signed::abs(v);
    }
    let c = Rat::new(det_abs.clone(), denom);
    Ok(if negative { -c } else { c })
}

/// Contributions of all star cells attached to `h`, centered at `omega`.
fn delta_contributions<N: Scalar>(
    forms: &[Vec<N>],
    h: &HollowFacet,
    deg: &[N],
    omega: &[N],
) -> Result<Vec<Rat>> {
    let rays: Vec<&[N]> = h.rays().into_iter().map(|i| forms[i].as_slice()).collect();
    let omitted = h.omitted_positions();
    let star = StarCells::new(&rays, omitted[0], omega).map_err(|e| match e {
        Error::SingularMatrix => Error::GenericityViolated,
        other => other,
    })?;
    let base = star.values(deg)?;
    omitted
        .iter()
        .map(|&p| {
            let vals: Vec<BigInt> = star.cell_values(&base, p)?.iter().map(Scalar::to_bigint).collect();
            signed_contribution(&vals, &star.det_abs(p))
        })
        .collect()
}

enum Partial {
    Exact(AdditionPyramid<Rat>),
    Fixed(BigInt, BigInt),
}

/// Evaluates the star triangulation with center `omega`.
///
/// In exact mode all contributions are accumulated in addition pyramids, one
/// per worker. In fixed mode each contribution (to `Vol P̄` and, scaled by
/// `k`, to `Vol P`) is truncated toward zero to a multiple of `10^-p` first;
/// the error is then below `|Γ| · 10^-p`.
pub fn evaluate_signed<N: Scalar>(
    forms: &[Vec<N>],
    hollow: &[HollowFacet],
    deg: &[N],
    omega: &[BigInt],
    grading_denominator: &BigInt,
    precision: Precision,
) -> Result<VolumeValue> {
    let omega: Vec<N> = convert_vec(omega)?;
    let k = Rat::from_integer(grading_denominator.clone());
    let identity = || match precision {
        Precision::Exact => Partial::Exact(AdditionPyramid::default()),
        Precision::Fixed(_) => Partial::Fixed(BigInt::from(0), BigInt::from(0)),
    };
    let total = hollow
        .par_iter()
        .try_fold(identity, |mut acc, h| -> Result<Partial> {
            for c in delta_contributions(forms, h, deg, &omega)? {
                match (&mut acc, precision) {
                    (Partial::Exact(pyr), _) => pyr.push(c),
                    (Partial::Fixed(a, b), Precision::Fixed(p)) => {
                        *b += truncate_to_digits(&(&c * &k), p);
                        *a += truncate_to_digits(&c, p);
                    }
                    _ => unreachable!(),
                }
            }
            Ok(acc)
        })
        .try_reduce(identity, |a, b| {
            Ok(match (a, b) {
                (Partial::Exact(x), Partial::Exact(y)) => Partial::Exact(x.merge(y)),
                (Partial::Fixed(a1, b1), Partial::Fixed(a2, b2)) => Partial::Fixed(a1 + a2, b1 + b2),
                _ => unreachable!(),
            })
        })?;
    Ok(match (total, precision) {
        (Partial::Exact(pyr), _) => VolumeValue::Exact(Volumes::from_pyramid(pyr.finalize(), grading_denominator)),
        (Partial::Fixed(a, b), Precision::Fixed(p)) => {
            let cells: usize = hollow.iter().map(HollowFacet::len).sum();
            VolumeValue::Fixed(FixedVolumes {
                digits: p,
                cone_pyramid: a,
                polytope: b,
                error_bound: unit(p) * Rat::from_integer(BigInt::from(cells)),
            })
        }
        _ => unreachable!(),
    })
}

/// A cell of the signed decomposition, formed by direct inversion.
///
/// The rays are a boundary facet `λ_1, …, λ_{d-1}` of the dual triangulation
/// and the center `ω`; `ells[i]` is the support vector vanishing on every ray
/// but the `i`-th (the center is last) and positive on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedCell<N> {
    pub lambdas: Vec<Vec<N>>,
    pub center: Vec<N>,
    pub ells: Vec<Vec<N>>,
    pub degree_values: Vec<N>,
    /// `e = #{i : ℓ_i(deg) < 0}`
    pub negative: usize,
}

impl<N: Scalar> SignedCell<N> {
    pub fn from_inversion(lambdas: Vec<Vec<N>>, center: Vec<N>, deg: &[N]) -> Result<Self> {
        let dim = center.len();
        let mut rows: Vec<&[N]> = lambdas.iter().map(Vec::as_slice).collect();
        rows.push(&center);
        let (inv, _) = IntMatrix::from_rows(&rows, dim)?.invert_with_denominator()?;
        let ells: Vec<Vec<N>> = (0..dim).map(|j| inv.column(j)).collect();
        let degree_values: Vec<N> = ells.iter().map(|l| N::dot(l, deg)).collect::<Result<_>>()?;
        if degree_values.iter().any(Scalar::is_zero) {
            return Err(Error::GenericityViolated);
        }
        let negative = degree_values.iter().filter(|v| v.is_negative()).count();
        Ok(Self {
            lambdas,
            center,
            ells,
            degree_values,
            negative,
        })
    }

    /// `+1` or `-1`
    pub fn sign(&self) -> i32 {
        if self.negative % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Signed volume computed from the determinant of the support vectors.
    pub fn contribution(&self) -> Result<Rat> {
        let det = IntMatrix::from_rows(&self.ells, self.center.len())?.det()?;
        let vals: Vec<BigInt> = self.degree_values.iter().map(Scalar::to_bigint).collect();
        signed_contribution(&vals, &Signed::abs(&det.to_bigint()))
    }

    /// Whether the homogeneous point `y` lies in the cone over `R_δ`;
    /// `None` if it lies on one of its facets.
    ///
    /// The cone is generated by `s_i ℓ_i` with `s_i` the sign of `ℓ_i(deg)`;
    /// since `ℓ_i` pairs with the `i`-th ray `g_i`, `y` is inside iff
    /// `s_i g_i(y) > 0` for all `i`.
    pub fn contains(&self, y: &[N]) -> Result<Option<bool>> {
        let mut inside = true;
        for (g, v) in self.lambdas.iter().chain(std::iter::once(&self.center)).zip(&self.degree_values) {
            let x = N::dot(g, y)?;
            if x.is_zero() {
                return Ok(None);
            }
            if x.is_negative() != v.is_negative() {
                inside = false;
            }
        }
        Ok(Some(inside))
    }
}

/// All cells of the signed decomposition centered at `omega`, formed
/// independently of the piggyback arithmetic.
pub fn signed_cells<N: Scalar>(
    forms: &[Vec<N>],
    hollow: &[HollowFacet],
    deg: &[N],
    omega: &[BigInt],
) -> Result<Vec<SignedCell<N>>> {
    let omega: Vec<N> = convert_vec(omega)?;
    let per_delta: Vec<Vec<SignedCell<N>>> = hollow
        .par_iter()
        .map(|h| {
            h.phi
                .ones()
                .map(|omitted| {
                    let lambdas = h.delta.ones().filter(|&r| r != omitted).map(|r| forms[r].clone()).collect();
                    SignedCell::from_inversion(lambdas, omega.clone(), deg)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(per_delta.into_iter().flatten().collect())
}
