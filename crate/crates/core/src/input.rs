//! Text input format.
//!
//! ```text
//! # unit square
//! amb_space 2
//! vertices 4
//! 0 0
//! 1 0
//! 0 1
//! 1 1
//! ```
//!
//! Blocks: `amb_space n` (first), then either `vertices r` with `r` rows of
//! `n` rationals, or any of `inequalities r` / `equations r` with rows of
//! `n + 1` integers `a_1 … a_n b` meaning `a·x + b >= 0` resp. `= 0`. An
//! optional `grading` block holds one row of `n + 1` integers acting on the
//! homogenized space `(x, t)`; the default is `t`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::arith::{convert_vec, parse_rational, primitivize, Rat, Scalar};
use crate::cone::ConeModel;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InputMode {
    Vertices,
    Constraints,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInput {
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<Rat>>,
    pub inequalities: Vec<Vec<BigInt>>,
    pub equations: Vec<Vec<BigInt>>,
    /// Acts on `(x, t)`; `None` means `t`.
    pub grading: Option<Vec<BigInt>>,
}

fn int_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

impl ProblemInput {
    pub fn from_vertices(vertices: Vec<Vec<Rat>>) -> Result<Self> {
        let ambient_dim = vertices.first().map(Vec::len).ok_or(Error::ZeroCone)?;
        let input = Self {
            ambient_dim,
            vertices,
            inequalities: Vec::new(),
            equations: Vec::new(),
            grading: None,
        };
        input.validate()?;
        Ok(input)
    }

    pub fn from_integer_vertices(vertices: &[Vec<i64>]) -> Result<Self> {
        Self::from_vertices(
            vertices
                .iter()
                .map(|v| v.iter().map(|&x| Rat::from_integer(x.into())).collect())
                .collect(),
        )
    }

    /// `inequalities` and `equations` are rows `a_1 … a_n b`.
    pub fn from_constraints(inequalities: Vec<Vec<BigInt>>, equations: Vec<Vec<BigInt>>) -> Result<Self> {
        let ambient_dim = inequalities
            .first()
            .or(equations.first())
            .map(|r| r.len().saturating_sub(1))
            .ok_or(Error::ZeroCone)?;
        let input = Self {
            ambient_dim,
            vertices: Vec::new(),
            inequalities,
            equations,
            grading: None,
        };
        input.validate()?;
        Ok(input)
    }

    pub fn from_integer_constraints(inequalities: &[Vec<i64>], equations: &[Vec<i64>]) -> Result<Self> {
        Self::from_constraints(int_rows(inequalities), int_rows(equations))
    }

    pub fn with_grading(mut self, grading: Vec<BigInt>) -> Result<Self> {
        self.grading = Some(grading);
        self.validate()?;
        Ok(self)
    }

    pub fn mode(&self) -> InputMode {
        if self.vertices.is_empty() {
            InputMode::Constraints
        } else {
            InputMode::Vertices
        }
    }

    pub fn has_default_grading(&self) -> bool {
        self.grading.is_none()
    }

    fn validate(&self) -> Result<()> {
        let n = self.ambient_dim;
        let width = |rows_len: Option<usize>, expected: usize, what: &str| match rows_len {
            Some(l) => Err(Error::InconsistentDimensions(format!(
                "{what} row of length {l}, expected {expected}"
            ))),
            None => Ok(()),
        };
        width(self.vertices.iter().map(Vec::len).find(|&l| l != n), n, "vertex")?;
        width(self.inequalities.iter().map(Vec::len).find(|&l| l != n + 1), n + 1, "inequality")?;
        width(self.equations.iter().map(Vec::len).find(|&l| l != n + 1), n + 1, "equation")?;
        if let Some(g) = &self.grading {
            width((g.len() != n + 1).then_some(g.len()), n + 1, "grading")?;
        }
        if !self.vertices.is_empty() && !(self.inequalities.is_empty() && self.equations.is_empty()) {
            return Err(Error::InconsistentDimensions(
                "vertices cannot be combined with constraints".into(),
            ));
        }
        if self.vertices.is_empty() && self.inequalities.is_empty() && self.equations.is_empty() {
            return Err(Error::ZeroCone);
        }
        Ok(())
    }

    pub fn grading_row(&self) -> Vec<BigInt> {
        self.grading.clone().unwrap_or_else(|| {
            let mut g = vec![BigInt::from(0); self.ambient_dim + 1];
            g[self.ambient_dim] = BigInt::from(1);
            g
        })
    }

    /// Primitive generators `(q v, q)` of the cone over the vertices.
    pub fn homogenized_vertices(&self) -> Result<Vec<Vec<BigInt>>> {
        self.vertices
            .iter()
            .map(|v| {
                let q = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
                let mut row: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(q.clone())).to_integer()).collect();
                row.push(q);
                primitivize(&row)
            })
            .collect()
    }

    /// Inequalities of the cone over `P`, with `t >= 0` appended.
    pub fn homogenized_inequalities(&self) -> Vec<Vec<BigInt>> {
        let mut rows = self.inequalities.clone();
        let mut t = vec![BigInt::from(0); self.ambient_dim + 1];
        t[self.ambient_dim] = BigInt::from(1);
        rows.push(t);
        rows
    }

    pub fn cone<N: Scalar>(&self) -> Result<ConeModel<N>> {
        let conv = |rows: &[Vec<BigInt>]| -> Result<Vec<Vec<N>>> { rows.iter().map(|r| convert_vec(r)).collect() };
        let grading: Vec<N> = convert_vec(&self.grading_row())?;
        match self.mode() {
            InputMode::Vertices => ConeModel::from_generators(&conv(&self.homogenized_vertices()?)?, &grading),
            InputMode::Constraints => ConeModel::from_constraints(
                &conv(&self.homogenized_inequalities())?,
                &conv(&self.equations)?,
                &grading,
            ),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).run()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "amb_space {}", self.ambient_dim);
        let row = |out: &mut String, items: Vec<String>| {
            let _ = writeln!(out, "{}", items.join(" "));
        };
        if !self.vertices.is_empty() {
            let _ = writeln!(out, "vertices {}", self.vertices.len());
            for v in &self.vertices {
                row(&mut out, v.iter().map(ToString::to_string).collect());
            }
        }
        for (name, rows) in [("inequalities", &self.inequalities), ("equations", &self.equations)] {
            if !rows.is_empty() {
                let _ = writeln!(out, "{name} {}", rows.len());
                for r in rows {
                    row(&mut out, r.iter().map(ToString::to_string).collect());
                }
            }
        }
        if let Some(g) = &self.grading {
            let _ = writeln!(out, "grading");
            row(&mut out, g.iter().map(ToString::to_string).collect());
        }
        out
    }
}

struct Parser<'a> {
    lines: std::iter::Peekable<Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a>>,
    last_line: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
                .filter(|(_, t)| !t.is_empty()),
        );
        Self {
            lines: it.peekable(),
            last_line: 0,
        }
    }

    fn next_line(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        match self.lines.next() {
            Some((n, t)) => {
                self.last_line = n;
                Ok((n, t))
            }
            None => Err(Error::parse(self.last_line + 1, format!("unexpected end of input, expected {what}"))),
        }
    }

    fn count(line: usize, tokens: &[&str]) -> Result<usize> {
        match tokens {
            [_, n] => n.parse().map_err(|_| Error::parse(line, format!("invalid count `{n}`"))),
            _ => Err(Error::parse(line, format!("`{}` expects exactly one count", tokens[0]))),
        }
    }

    fn rows<T>(&mut self, r: usize, width: usize, what: &str, conv: impl Fn(&str) -> Option<T>) -> Result<Vec<Vec<T>>> {
        (0..r)
            .map(|_| {
                let (line, tokens) = self.next_line(what)?;
                if tokens.len() != width {
                    return Err(Error::InconsistentDimensions(format!(
                        "line {line}: {what} row has {} entries, expected {width}",
                        tokens.len()
                    )));
                }
                tokens
                    .iter()
                    .map(|t| conv(t).ok_or_else(|| Error::parse(line, format!("invalid number `{t}`"))))
                    .collect()
            })
            .collect()
    }

    fn run(mut self) -> Result<ProblemInput> {
        let (line, tokens) = self.next_line("`amb_space`")?;
        if tokens[0] != "amb_space" {
            return Err(Error::parse(line, "input must start with `amb_space`"));
        }
        let n = Self::count(line, &tokens)?;
        if n == 0 {
            return Err(Error::parse(line, "ambient dimension must be positive"));
        }
        let mut input = ProblemInput {
            ambient_dim: n,
            vertices: Vec::new(),
            inequalities: Vec::new(),
            equations: Vec::new(),
            grading: None,
        };
        let integer = |t: &str| t.parse::<BigInt>().ok();
        while self.lines.peek().is_some() {
            let (line, tokens) = self.next_line("a block")?;
            match tokens[0] {
                "vertices" => {
                    let r = Self::count(line, &tokens)?;
                    input.vertices.extend(self.rows(r, n, "vertex", parse_rational)?);
                }
                "inequalities" => {
                    let r = Self::count(line, &tokens)?;
                    input.inequalities.extend(self.rows(r, n + 1, "inequality", integer)?);
                }
                "equations" => {
                    let r = Self::count(line, &tokens)?;
                    input.equations.extend(self.rows(r, n + 1, "equation", integer)?);
                }
                "grading" => {
                    if tokens.len() != 1 {
                        return Err(Error::parse(line, "`grading` takes its row on the next line"));
                    }
                    if input.grading.is_some() {
                        return Err(Error::parse(line, "duplicate `grading` block"));
                    }
                    input.grading = self.rows(1, n + 1, "grading", integer)?.pop();
                }
                "amb_space" => return Err(Error::parse(line, "duplicate `amb_space`")),
                other => return Err(Error::parse(line, format!("unknown keyword `{other}`"))),
            }
        }
        input.validate()?;
        Ok(input)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn square_from_vertices() {
        let p = ProblemInput::parse("# unit square\namb_space 2\nvertices 4\n0 0\n1 0\n0 1\n1 1\n").unwrap();
        assert_eq!(p.mode(), InputMode::Vertices);
        assert_eq!(p.vertices.len(), 4);
        assert!(p.has_default_grading());
        let c = p.cone::<i64>().unwrap();
        assert_eq!(c.dim(), 3);
        assert_eq!(c.generators().len(), 4);
    }

    #[test]
    fn cube_from_inequalities() {
        let text = "amb_space 3\ninequalities 6\n1 0 0 0\n0 1 0 0\n0 0 1 0\n-1 0 0 1\n0 -1 0 1\n0 0 -1 1\n";
        let p = ProblemInput::parse(text).unwrap();
        assert_eq!(p.mode(), InputMode::Constraints);
        let c = p.cone::<i64>().unwrap();
        assert_eq!((c.dim(), c.generators().len(), c.support_forms().len()), (4, 8, 6));
    }

    #[test]
    fn birkhoff_three_dimensions() {
        let mut ineq = Vec::new();
        for i in 0..9 {
            let mut r = vec![0i64; 10];
            r[i] = 1;
            ineq.push(r);
        }
        let mut eq = Vec::new();
        for i in 0..3 {
            let mut row = vec![0i64; 10];
            let mut col = vec![0i64; 10];
            for j in 0..3 {
                row[3 * i + j] = 1;
                col[3 * j + i] = 1;
            }
            row[9] = -1;
            col[9] = -1;
            eq.push(row);
            eq.push(col);
        }
        let p = ProblemInput::from_integer_constraints(&ineq, &eq).unwrap();
        let c = p.cone::<i64>().unwrap();
        // solution lattice of rank 5, polytope of dimension 4
        assert_eq!(c.dim(), 5);
        assert_eq!(c.generators().len(), 6);
    }

    #[test]
    fn rational_vertices_are_homogenized_primitively() {
        let p = ProblemInput::parse("amb_space 2\nvertices 2\n1/2 1/3\n2 0.5\n").unwrap();
        let h = p.homogenized_vertices().unwrap();
        assert_eq!(h[0], vec![BigInt::from(3), BigInt::from(2), BigInt::from(6)]);
        assert_eq!(h[1], vec![BigInt::from(4), BigInt::from(1), BigInt::from(2)]);
        assert_eq!(p.vertices[1][1], rat(1, 2));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = ProblemInput::parse("amb_space 2\nvertices 1\n0 x\n").unwrap_err();
        assert_eq!(e, Error::parse(3, "invalid number `x`"));
        let e = ProblemInput::parse("amb_space 2\n\nfoo 3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = ProblemInput::parse("vertices 1\n0 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = ProblemInput::parse("amb_space 2\nvertices 2\n0 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }));
        let e = ProblemInput::parse("amb_space 2\nvertices 1\n0 0 1\n").unwrap_err();
        assert!(matches!(e, Error::InconsistentDimensions(_)));
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn unbounded_constraints_are_rejected() {
        // x >= 0 alone
        let p = ProblemInput::from_integer_constraints(&[vec![1, 0]], &[]).unwrap();
        assert_eq!(p.cone::<i64>().unwrap_err(), Error::UnboundedPolytope);
    }

    #[test]
    fn round_trip() {
        let text = "amb_space 2\nvertices 3\n0 0\n1/2 0\n0 3\ngrading\n0 0 2\n";
        let p = ProblemInput::parse(text).unwrap();
        assert_eq!(ProblemInput::parse(&p.to_text()).unwrap(), p);
        let q = ProblemInput::from_integer_constraints(&[vec![1, 0, 0], vec![0, 1, 0], vec![-1, -1, 1]], &[]).unwrap();
        assert_eq!(ProblemInput::parse(&q.to_text()).unwrap(), q);
    }
}
