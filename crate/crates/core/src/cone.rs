//! Pointed rational cones: dualization, extreme rays, gradings, lattice
//! heights, and the re-embedding of a cone into the lattice of its span.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;

use crate::arith::{
    self, content, coordinates_in_hermite_basis, integer_kernel, lattice_basis_of_span, primitivize,
    rank_of, IntMatrix, Rat, Scalar,
};
use crate::error::{Error, Result};

struct DdRay<N> {
    v: Vec<N>,
    zeros: FixedBitSet,
}

/// Extreme rays of `{y : a·y >= 0 for every row a}` by incremental double
/// description, sorted lexicographically.
///
/// Fails with `NotPointed` if the rows do not span the dual space, since the
/// cone then contains a line.
pub fn halfspace_extreme_rays<N: Scalar>(rows: &[Vec<N>], dim: usize) -> Result<Vec<Vec<N>>> {
    let m = rows.len();
    let init = arith::independent_subset(rows, dim)?;
    if init.len() < dim || dim == 0 {
        return Err(Error::NotPointed);
    }
    let a0 = IntMatrix::from_rows(&init.iter().map(|&i| &rows[i]).collect::<Vec<_>>(), dim)?;
    let (inv, _) = a0.invert_with_denominator()?;
    let mut rays: Vec<DdRay<N>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut zeros = FixedBitSet::with_capacity(m);
        for (k, &row) in init.iter().enumerate() {
            if k != j {
                zeros.insert(row);
            }
        }
        rays.push(DdRay {
            v: primitivize(&inv.column(j))?,
            zeros,
        });
    }
    let mut in_init = FixedBitSet::with_capacity(m);
    for &i in &init {
        in_init.insert(i);
    }
    let min_common = dim.saturating_sub(2);
    for (i, a) in rows.iter().enumerate() {
        if in_init.contains(i) {
            continue;
        }
        let values: Vec<N> = rays.iter().map(|r| N::dot(a, &r.v)).collect::<Result<_>>()?;
        if values.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.insert(i);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[q].zeros);
                if common.count_ones(..) < min_common {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == q || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (&values[p], values[q].neg()?);
                let mut v = Vec::with_capacity(dim);
                for (x, y) in rays[p].v.iter().zip(&rays[q].v) {
                    // vp * y + |vq| * x
                    v.push(vp.mul(y)?.add(&vq.mul(x)?)?);
                }
                let v = primitivize(&v)?;
                common.insert(i);
                fresh.push(DdRay { v, zeros: common });
            }
        }
        let mut next = Vec::with_capacity(pos.len() + fresh.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if values[k].is_zero() {
                r.zeros.insert(i);
                next.push(r);
            } else if values[k].is_positive() {
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
    }
    let mut out: Vec<Vec<N>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Support forms of the full-dimensional pointed cone generated by
/// `generators`: the extreme integral generators of the dual cone, primitive,
/// irredundant and sorted lexicographically.
pub fn dualize<N: Scalar>(generators: &[Vec<N>], dim: usize) -> Result<Vec<Vec<N>>> {
    let gens: Vec<Vec<N>> = generators
        .iter()
        .filter(|g| !g.iter().all(Scalar::is_zero))
        .cloned()
        .collect();
    if gens.is_empty() {
        return Err(Error::ZeroCone);
    }
    if rank_of(&gens, dim)? < dim {
        return Err(Error::NotFullDim);
    }
    let forms = halfspace_extreme_rays(&gens, dim)?;
    // the dual is full dimensional exactly when the cone is pointed
    if rank_of(&forms, dim)? < dim {
        return Err(Error::NotPointed);
    }
    Ok(forms)
}

/// Forms (indices) vanishing on `v`.
fn vanishing<N: Scalar>(forms: &[Vec<N>], v: &[N]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (j, f) in forms.iter().enumerate() {
        if N::dot(f, v)?.is_zero() {
            out.push(j);
        }
    }
    Ok(out)
}

/// The extreme integral generators among `generators`: a generator is kept iff
/// the support forms vanishing on it have rank `dim - 1`.
pub fn extreme_rays<N: Scalar>(
    generators: &[Vec<N>],
    support_forms: &[Vec<N>],
    dim: usize,
) -> Result<Vec<Vec<N>>> {
    let mut out = Vec::new();
    for g in generators {
        if g.iter().all(Scalar::is_zero) {
            continue;
        }
        let z = vanishing(support_forms, g)?;
        let zf: Vec<&Vec<N>> = z.iter().map(|&j| &support_forms[j]).collect();
        if rank_of(&zf, dim)? + 1 == dim {
            out.push(primitivize(g)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `k` with `deg|L = k·deg'` for a primitive `deg'` on the lattice spanned by
/// `lattice_basis`.
pub fn grading_denominator<N: Scalar>(deg: &[N], lattice_basis: &[Vec<N>]) -> Result<N> {
    let values: Vec<N> = lattice_basis
        .iter()
        .map(|b| N::dot(deg, b))
        .collect::<Result<_>>()?;
    let k = content(&values)?;
    if k.is_zero() {
        return Err(Error::ZeroGrading);
    }
    Ok(k)
}

/// Lattice height of the point `point / denominator` over the linear subspace
/// spanned by `subspace`: `|λ(x)|` for the primitive form `λ` on
/// `span(subspace, x) ∩ ℤⁿ` vanishing on the subspace.
pub fn lattice_height_int<N: Scalar>(point: &[N], denominator: &N, subspace: &[Vec<N>]) -> Result<Rat> {
    let dim = point.len();
    let h_rank = rank_of(subspace, dim)?;
    let mut all: Vec<Vec<N>> = subspace.to_vec();
    all.push(point.to_vec());
    let basis = lattice_basis_of_span(&all, dim)?;
    if basis.len() == h_rank {
        return Ok(Rat::from_integer(BigInt::from(0)));
    }
    if basis.len() != h_rank + 1 {
        return Err(Error::DegenerateSpan);
    }
    let coords = |v: &[N]| -> Result<Vec<N>> {
        coordinates_in_hermite_basis(&basis, v)?.ok_or(Error::DegenerateSpan)
    };
    let h_coords: Vec<Vec<N>> = subspace.iter().map(|h| coords(h)).collect::<Result<_>>()?;
    let lambda = if h_coords.is_empty() {
        // H = {0}: the lattice is ℤ·x' with x' primitive and λ(x') = 1
        vec![N::one()]
    } else {
        let m = IntMatrix::from_rows(&h_coords, basis.len())?;
        let mut k = integer_kernel(&m)?;
        if k.len() != 1 {
            return Err(Error::DegenerateSpan);
        }
        k.pop().expect("one kernel vector")
    };
    let value = N::dot(&lambda, &coords(point)?)?;
    Ok(Rat::new(value.to_bigint(), denominator.to_bigint()).abs_value())
}

trait AbsValue {
    fn abs_value(self) -> Self;
}

impl AbsValue for Rat {
    fn abs_value(self) -> Self {
        num_traits::Signed::abs(&self)
    }
}

/// Lattice height of a rational point over the subspace spanned by integer
/// vectors.
pub fn lattice_height(x: &[Rat], subspace: &[Vec<BigInt>]) -> Result<Rat> {
    let den = x
        .iter()
        .fold(BigInt::from(1), |acc, r| num_integer::Integer::lcm(&acc, r.denom()));
    let point: Vec<BigInt> = x.iter().map(|r| r.numer() * (&den / r.denom())).collect();
    lattice_height_int(&point, &den, subspace)
}

/// A pointed rational cone re-embedded into the lattice `L = ℝC ∩ ℤⁿ` of its
/// span, together with a grading.
///
/// All vectors except `embedding` are coordinates with respect to the basis
/// `embedding` of `L`, so the working cone is full dimensional and the working
/// lattice is the standard one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeModel<N> {
    ambient_dim: usize,
    embedding: Vec<Vec<N>>,
    generators: Vec<Vec<N>>,
    support_forms: Vec<Vec<N>>,
    grading: Vec<N>,
    grading_denominator: N,
}

impl<N: Scalar> ConeModel<N> {
    /// Cone generated by `generators` (ambient coordinates).
    pub fn from_generators(generators: &[Vec<N>], grading: &[N]) -> Result<Self> {
        let ambient_dim = grading.len();
        check_widths(generators, ambient_dim)?;
        let embedding = lattice_basis_of_span(generators, ambient_dim)?;
        if embedding.is_empty() {
            return Err(Error::ZeroCone);
        }
        let coords = to_coordinates(&embedding, generators)?;
        let dim = embedding.len();
        let forms = dualize(&coords, dim)?;
        let rays = extreme_rays(&coords, &forms, dim)?;
        Self::assemble(ambient_dim, embedding, rays, forms, grading)
    }

    /// Cone `{x : a·x >= 0, e·x = 0}` for inequality rows `a` and equation rows
    /// `e` (ambient coordinates).
    pub fn from_constraints(inequalities: &[Vec<N>], equations: &[Vec<N>], grading: &[N]) -> Result<Self> {
        let ambient_dim = grading.len();
        check_widths(inequalities, ambient_dim)?;
        check_widths(equations, ambient_dim)?;
        let solution = if equations.is_empty() {
            IntMatrix::<N>::identity(ambient_dim).to_rows()
        } else {
            integer_kernel(&IntMatrix::from_rows(equations, ambient_dim)?)?
        };
        if solution.is_empty() {
            return Err(Error::ZeroCone);
        }
        let restricted = restrict_forms(inequalities, &solution)?;
        let rays0 = halfspace_extreme_rays(&restricted, solution.len())?;
        if rays0.is_empty() {
            return Err(Error::ZeroCone);
        }
        // implicit equations: pass to the span of the rays
        let inner = lattice_basis_of_span(&rays0, solution.len())?;
        let rays = to_coordinates(&inner, &rays0)?;
        let dim = inner.len();
        let embedding = IntMatrix::from_rows(&inner, solution.len())?
            .mul(&IntMatrix::from_rows(&solution, ambient_dim)?)?
            .to_rows();
        let mut forms = Vec::new();
        for a in restrict_forms(inequalities, &embedding)? {
            if a.iter().all(Scalar::is_zero) {
                continue;
            }
            let a = primitivize(&a)?;
            let zero_rays: Vec<&Vec<N>> = rays
                .iter()
                .filter(|r| N::dot(&a, r).map(|v| v.is_zero()).unwrap_or(false))
                .collect();
            if rank_of(&zero_rays, dim)? + 1 == dim {
                forms.push(a);
            }
        }
        forms.sort();
        forms.dedup();
        let mut rays = rays;
        rays.sort();
        Self::assemble(ambient_dim, embedding, rays, forms, grading)
    }

    fn assemble(
        ambient_dim: usize,
        embedding: Vec<Vec<N>>,
        generators: Vec<Vec<N>>,
        support_forms: Vec<Vec<N>>,
        grading: &[N],
    ) -> Result<Self> {
        let grading_denominator = grading_denominator(grading, &embedding)?;
        let grading = restrict_forms(&[grading.to_vec()], &embedding)?.remove(0);
        for g in &generators {
            if !N::dot(&grading, g)?.is_positive() {
                return Err(Error::UnboundedPolytope);
            }
        }
        Ok(Self {
            ambient_dim,
            embedding,
            generators,
            support_forms,
            grading,
            grading_denominator,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the cone (and of the working lattice).
    pub fn dim(&self) -> usize {
        self.embedding.len()
    }

    pub fn is_full_dim(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn embedding(&self) -> &[Vec<N>] {
        &self.embedding
    }

    /// Extreme integral generators, lexicographically sorted.
    pub fn generators(&self) -> &[Vec<N>] {
        &self.generators
    }

    pub fn support_forms(&self) -> &[Vec<N>] {
        &self.support_forms
    }

    pub fn grading(&self) -> &[N] {
        &self.grading
    }

    pub fn grading_denominator(&self) -> &N {
        &self.grading_denominator
    }

    pub fn degree(&self, v: &[N]) -> Result<N> {
        N::dot(&self.grading, v)
    }

    /// Ambient coordinates of a vector given in lattice coordinates.
    pub fn to_ambient(&self, v: &[N]) -> Result<Vec<N>> {
        IntMatrix::from_rows(&self.embedding, self.ambient_dim)?.left_mul_vec(v)
    }

    /// For every support form, the set of generators it vanishes on.
    pub fn form_incidence(&self) -> Result<Vec<FixedBitSet>> {
        self.support_forms
            .iter()
            .map(|f| {
                let mut s = FixedBitSet::with_capacity(self.generators.len());
                for (i, g) in self.generators.iter().enumerate() {
                    if N::dot(f, g)?.is_zero() {
                        s.insert(i);
                    }
                }
                Ok(s)
            })
            .collect()
    }

    /// Same cone in the other arithmetic tier.
    pub fn convert<M: Scalar>(&self) -> Result<ConeModel<M>> {
        let conv = |vs: &[Vec<N>]| -> Result<Vec<Vec<M>>> {
            vs.iter()
                .map(|v| v.iter().map(|x| M::from_bigint(&x.to_bigint())).collect())
                .collect()
        };
        Ok(ConeModel {
            ambient_dim: self.ambient_dim,
            embedding: conv(&self.embedding)?,
            generators: conv(&self.generators)?,
            support_forms: conv(&self.support_forms)?,
            grading: conv(std::slice::from_ref(&self.grading))?.remove(0),
            grading_denominator: M::from_bigint(&self.grading_denominator.to_bigint())?,
        })
    }
}

fn check_widths<N>(rows: &[Vec<N>], width: usize) -> Result<()> {
    match rows.iter().find(|r| r.len() != width) {
        Some(r) => Err(Error::InconsistentDimensions(format!(
            "row of length {} where {width} is expected",
            r.len()
        ))),
        None => Ok(()),
    }
}

/// Forms `a` composed with the basis: `(a·b_1, …, a·b_d)`.
fn restrict_forms<N: Scalar>(forms: &[Vec<N>], basis: &[Vec<N>]) -> Result<Vec<Vec<N>>> {
    forms
        .iter()
        .map(|a| basis.iter().map(|b| N::dot(a, b)).collect())
        .collect()
}

fn to_coordinates<N: Scalar>(basis: &[Vec<N>], vectors: &[Vec<N>]) -> Result<Vec<Vec<N>>> {
    vectors
        .iter()
        .map(|v| {
            coordinates_in_hermite_basis(basis, v)?.ok_or_else(|| {
                Error::InconsistentDimensions("vector outside the lattice of the span".into())
            })
        })
        .collect()
}
