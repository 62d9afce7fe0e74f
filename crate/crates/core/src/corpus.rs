//! Named test polytopes.

use num_bigint::BigInt;
use rand::Rng;

use crate::arith::Rat;
use crate::input::ProblemInput;

/// `[0,1]^d` by its `2d` inequalities.
pub fn cube(d: usize) -> ProblemInput {
    let mut rows = Vec::new();
    for i in 0..d {
        let mut lower = vec![0i64; d + 1];
        lower[i] = 1;
        let mut upper = vec![0i64; d + 1];
        upper[i] = -1;
        upper[d] = 1;
        rows.push(lower);
        rows.push(upper);
    }
    ProblemInput::from_integer_constraints(&rows, &[]).expect("cube")
}

/// `conv(±e_i)`
pub fn cross_polytope(d: usize) -> ProblemInput {
    let mut verts = Vec::new();
    for i in 0..d {
        for s in [1i64, -1] {
            let mut v = vec![0; d];
            v[i] = s;
            verts.push(v);
        }
    }
    ProblemInput::from_integer_vertices(&verts).expect("cross polytope")
}

/// `conv(0, e_1, …, e_d)`
pub fn standard_simplex(d: usize) -> ProblemInput {
    let mut verts = vec![vec![0i64; d]];
    for i in 0..d {
        let mut v = vec![0; d];
        v[i] = 1;
        verts.push(v);
    }
    ProblemInput::from_integer_vertices(&verts).expect("simplex")
}

/// Doubly stochastic `n×n` matrices, by sign conditions and row and column sums.
pub fn birkhoff(n: usize) -> ProblemInput {
    let m = n * n;
    let ineq: Vec<Vec<i64>> = (0..m)
        .map(|i| {
            let mut r = vec![0; m + 1];
            r[i] = 1;
            r
        })
        .collect();
    let mut eq = Vec::new();
    for i in 0..n {
        let mut row = vec![0; m + 1];
        let mut col = vec![0; m + 1];
        for j in 0..n {
            row[n * i + j] = 1;
            col[n * j + i] = 1;
        }
        row[m] = -1;
        col[m] = -1;
        eq.push(row);
        eq.push(col);
    }
    ProblemInput::from_integer_constraints(&ineq, &eq).expect("birkhoff")
}

pub fn hexagon() -> ProblemInput {
    ProblemInput::from_integer_vertices(&[
        vec![1, 0],
        vec![2, 0],
        vec![3, 1],
        vec![2, 2],
        vec![1, 2],
        vec![0, 1],
    ])
    .expect("hexagon")
}

/// A lattice polytope that is not simple and not simplicial.
pub fn square_pyramid() -> ProblemInput {
    ProblemInput::from_integer_vertices(&[
        vec![0, 0, 0],
        vec![2, 0, 0],
        vec![0, 2, 0],
        vec![2, 2, 0],
        vec![1, 1, 3],
    ])
    .expect("pyramid")
}

/// `d + 1` vertices with coordinates `a/b`, `|a| <= 6`, `1 <= b <= 4`; retried
/// until the simplex is full dimensional.
pub fn random_rational_simplex(d: usize, rng: &mut impl Rng) -> Vec<Vec<Rat>> {
    loop {
        let verts: Vec<Vec<Rat>> = (0..=d)
            .map(|_| {
                (0..d)
                    .map(|_| Rat::new(BigInt::from(rng.gen_range(-6i64..=6)), BigInt::from(rng.gen_range(1i64..=4))))
                    .collect()
            })
            .collect();
        let rows: Vec<Vec<Rat>> = verts[1..]
            .iter()
            .map(|v| v.iter().zip(&verts[0]).map(|(a, b)| a - b).collect())
            .collect();
        if !rational_det(&rows).eq(&Rat::from_integer(0.into())) {
            return verts;
        }
    }
}

/// Determinant over the rationals by Gaussian elimination.
pub fn rational_det(rows: &[Vec<Rat>]) -> Rat {
    let mut a = rows.to_vec();
    let n = a.len();
    let mut det = Rat::from_integer(1.into());
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != Rat::from_integer(0.into())) else {
            return Rat::from_integer(0.into());
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= &a[k][k];
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
    }
    det
}

/// The named polytopes used across the test suites.
pub fn named() -> Vec<(String, ProblemInput)> {
    let mut out = vec![
        ("square".to_string(), ProblemInput::from_integer_vertices(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).expect("square")),
        ("hexagon".to_string(), hexagon()),
        ("square-pyramid".to_string(), square_pyramid()),
        ("birkhoff-3".to_string(), birkhoff(3)),
    ];
    for d in 2..=4 {
        out.push((format!("cube-{d}"), cube(d)));
        out.push((format!("cross-{d}"), cross_polytope(d)));
        out.push((format!("simplex-{d}"), standard_simplex(d)));
    }
    out
}
