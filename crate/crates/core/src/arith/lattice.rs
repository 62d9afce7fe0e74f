use super::{IntMatrix, Scalar};
use crate::error::{Error, Result};

/// gcd of the entries; `gcd(0, .., 0) = 0`.
pub fn content<N: Scalar>(v: &[N]) -> Result<N> {
    let mut g = N::zero();
    for x in v {
        if !x.is_zero() {
            g = g.gcd(x)?;
            if g == N::one() {
                break;
            }
        }
    }
    Ok(g)
}

/// Divides `v` in place by the gcd of its entries (no-op on zero vectors).
pub fn divide_by_content<N: Scalar>(v: &mut [N]) -> Result<()> {
    let g = content(v)?;
    if !g.is_zero() && g != N::one() {
        for x in v.iter_mut() {
            *x = x.div_exact(&g)?;
        }
    }
    Ok(())
}

/// The primitive integral vector on the ray through `v`.
pub fn primitivize<N: Scalar>(v: &[N]) -> Result<Vec<N>> {
    if v.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroVector);
    }
    let mut out = v.to_vec();
    divide_by_content(&mut out)?;
    Ok(out)
}

fn column_combine<N: Scalar>(
    m: &mut IntMatrix<N>,
    p: usize,
    c: usize,
    (s, t, u, w): (&N, &N, &N, &N),
) -> Result<()> {
    // (col_p, col_c) <- (s col_p + t col_c, u col_p + w col_c)
    for i in 0..m.rows() {
        let (a, b) = (m[(i, p)].clone(), m[(i, c)].clone());
        if a.is_zero() && b.is_zero() {
            continue;
        }
        m[(i, p)] = s.mul(&a)?.add(&t.mul(&b)?)?;
        m[(i, c)] = u.mul(&a)?.add(&w.mul(&b)?)?;
    }
    Ok(())
}

/// A ℤ-basis of `{x ∈ ℤⁿ : A x = 0}`, returned in Hermite normal form.
///
/// Unimodular column operations bring `A` to lower echelon form `A U = [H | 0]`;
/// the columns of `U` behind the pivots span the integer kernel.
pub fn integer_kernel<N: Scalar>(a: &IntMatrix<N>) -> Result<Vec<Vec<N>>> {
    let n = a.cols();
    let mut work = a.clone();
    let mut u = IntMatrix::<N>::identity(n);
    let mut pivot = 0;
    for i in 0..a.rows() {
        if pivot == n {
            break;
        }
        for c in pivot + 1..n {
            if work[(i, c)].is_zero() {
                continue;
            }
            let (x, y) = (work[(i, pivot)].clone(), work[(i, c)].clone());
            let (g, s, t) = x.extended_gcd(&y)?;
            let u_coef = y.div_exact(&g)?.neg()?;
            let w_coef = x.div_exact(&g)?;
            column_combine(&mut work, pivot, c, (&s, &t, &u_coef, &w_coef))?;
            column_combine(&mut u, pivot, c, (&s, &t, &u_coef, &w_coef))?;
        }
        if !work[(i, pivot)].is_zero() {
            pivot += 1;
        }
    }
    let kernel: Vec<Vec<N>> = (pivot..n).map(|c| u.column(c)).collect();
    hermite_rows(&kernel, n)
}

/// Row Hermite normal form of the lattice spanned by `vectors` (zero rows
/// dropped). Pivots are positive and entries above a pivot are reduced into
/// `[0, pivot)`.
pub fn hermite_rows<N: Scalar, V: AsRef<[N]>>(vectors: &[V], dim: usize) -> Result<Vec<Vec<N>>> {
    let mut rows: Vec<Vec<N>> = vectors
        .iter()
        .map(|v| v.as_ref().to_vec())
        .filter(|v| !v.iter().all(Scalar::is_zero))
        .collect();
    for v in &rows {
        if v.len() != dim {
            return Err(Error::InconsistentDimensions(format!(
                "vector of length {} in dimension {dim}",
                v.len()
            )));
        }
    }
    let mut r = 0;
    for c in 0..dim {
        if r == rows.len() {
            break;
        }
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let (x, y) = (rows[r][c].clone(), rows[i][c].clone());
            let (g, s, t) = x.extended_gcd(&y)?;
            let (yg, xg) = (y.div_exact(&g)?, x.div_exact(&g)?);
            for j in 0..dim {
                let (a, b) = (rows[r][j].clone(), rows[i][j].clone());
                rows[r][j] = s.mul(&a)?.add(&t.mul(&b)?)?;
                rows[i][j] = xg.mul(&b)?.sub(&yg.mul(&a)?)?;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = x.neg()?;
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c])?;
            if !q.is_zero() {
                for j in 0..dim {
                    rows[i][j] = rows[i][j].sub(&q.mul(&rows[r][j])?)?;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    Ok(rows)
}

/// A ℤ-basis of `span(vectors) ∩ ℤⁿ` (saturated), in Hermite normal form.
pub fn lattice_basis_of_span<N: Scalar, V: AsRef<[N]>>(vectors: &[V], dim: usize) -> Result<Vec<Vec<N>>> {
    let nonzero: Vec<&[N]> = vectors
        .iter()
        .map(AsRef::as_ref)
        .filter(|v| !v.iter().all(Scalar::is_zero))
        .collect();
    if nonzero.is_empty() {
        return Ok(Vec::new());
    }
    let a = IntMatrix::from_rows(&nonzero, dim)?;
    let orth = integer_kernel(&a)?;
    let orth = IntMatrix::from_rows(&orth, dim)?;
    integer_kernel(&orth)
}

/// Coordinates of `x` with respect to a basis in row Hermite normal form.
/// Returns `None` if `x` is not in the lattice spanned by the basis.
pub fn coordinates_in_hermite_basis<N: Scalar>(basis: &[Vec<N>], x: &[N]) -> Result<Option<Vec<N>>> {
    let mut rest = x.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for b in basis {
        let p = b
            .iter()
            .position(|v| !v.is_zero())
            .expect("basis rows are nonzero");
        let q = rest[p].div_floor(&b[p])?;
        if !rest[p].sub(&q.mul(&b[p])?)?.is_zero() {
            return Ok(None);
        }
        if !q.is_zero() {
            for (x, bv) in rest.iter_mut().zip(b) {
                *x = x.sub(&q.mul(bv)?)?;
            }
        }
        coords.push(q);
    }
    Ok(rest.iter().all(Scalar::is_zero).then_some(coords))
}

/// Columns on which a Hermite basis has its pivots.
pub fn pivot_columns<N: Scalar>(basis: &[Vec<N>]) -> Vec<usize> {
    basis
        .iter()
        .map(|b| b.iter().position(|v| !v.is_zero()).expect("nonzero row"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn primitivize_examples() {
        assert_eq!(primitivize(&[2i64, 4, 6]).unwrap(), vec![1, 2, 3]);
        assert_eq!(primitivize(&[-3i64, 3]).unwrap(), vec![-1, 1]);
        assert_eq!(primitivize(&[5i64, 0, 0]).unwrap(), vec![1, 0, 0]);
        assert_eq!(primitivize(&[0i64, 0]), Err(Error::ZeroVector));
        assert_eq!(content(&[0i64, 0]).unwrap(), 0);
    }

    #[test]
    fn span_basis_examples() {
        assert_eq!(lattice_basis_of_span(&[vec![2i64, 4]], 2).unwrap(), vec![vec![1, 2]]);
        let id = vec![vec![1i64, 0], vec![0, 1]];
        assert_eq!(lattice_basis_of_span(&id, 2).unwrap(), id);
        assert_eq!(lattice_basis_of_span(&[vec![2i64, 0], vec![0, 2]], 2).unwrap(), id);
        assert!(lattice_basis_of_span::<i64, Vec<i64>>(&[], 3).unwrap().is_empty());
        assert!(lattice_basis_of_span(&[vec![0i64, 0]], 2).unwrap().is_empty());
    }

    #[test]
    fn kernel_of_row_sums() {
        // x + y + z = 0
        let a = IntMatrix::<i64>::from_i64_rows(&[&[1, 1, 1]]);
        let k = integer_kernel(&a).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v.iter().sum::<i64>(), 0);
        }
        let m = IntMatrix::from_rows(&k, 3).unwrap();
        // the kernel basis is saturated: its 2x2 minors are coprime
        let minors = [
            m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)],
            m[(0, 0)] * m[(1, 2)] - m[(0, 2)] * m[(1, 0)],
            m[(0, 1)] * m[(1, 2)] - m[(0, 2)] * m[(1, 1)],
        ];
        assert_eq!(content(&minors).unwrap(), 1);
    }

    fn small_vectors() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5).prop_flat_map(|dim| {
            prop::collection::vec(prop::collection::vec(-6i64..=6, dim), 1..5)
        })
    }

    proptest! {
        #[test]
        fn span_basis_contains_inputs_and_lies_in_span(vs in small_vectors()) {
            let dim = vs[0].len();
            let basis = lattice_basis_of_span(&vs, dim).unwrap();
            let rank = crate::arith::rank_of(&vs, dim).unwrap();
            prop_assert_eq!(basis.len(), rank);
            for v in &vs {
                prop_assert!(coordinates_in_hermite_basis(&basis, v).unwrap().is_some());
            }
            let mut joint = vs.clone();
            joint.extend(basis.iter().cloned());
            prop_assert_eq!(crate::arith::rank_of(&joint, dim).unwrap(), rank);
            // saturation: gcd of maximal minors is 1
            if rank > 0 {
                let m = IntMatrix::<BigInt>::from_rows(
                    &basis.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    dim,
                ).unwrap();
                let mut g = BigInt::from(0);
                for cols in choose(dim, rank) {
                    let sub: Vec<Vec<BigInt>> = (0..rank).map(|i| cols.iter().map(|&c| m[(i, c)].clone()).collect()).collect();
                    let d = IntMatrix::from_rows(&sub, rank).unwrap().det().unwrap();
                    g = num_integer::Integer::gcd(&g, &d);
                }
                prop_assert_eq!(g, BigInt::from(1));
            }
        }

        #[test]
        fn primitivize_is_idempotent(v in prop::collection::vec(-50i64..=50, 1..6)) {
            prop_assume!(v.iter().any(|x| *x != 0));
            let p = primitivize(&v).unwrap();
            prop_assert_eq!(primitivize(&p).unwrap(), p.clone());
            prop_assert_eq!(content(&p).unwrap(), 1);
        }
    }

    fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = choose(n - 1, k);
        for mut c in choose(n - 1, k - 1) {
            c.push(n - 1);
            out.push(c);
        }
        out
    }
}
