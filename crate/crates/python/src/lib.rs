//! Python bindings: `polyvol.Polytope`, `polyvol.VolumeReport` and a few
//! lattice helpers. Rationals cross the boundary as `fractions.Fraction`.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyString;

use polyvol_core::arith::{self, IntMatrix, Rat};
use polyvol_core::{run, Algorithm, Error, Precision, ProblemInput, RunOptions, VolumeReport, VolumeValue};

create_exception!(polyvol, PolyvolError, PyValueError);

fn to_py_err(e: Error) -> PyErr {
    PolyvolError::new_err((e.to_string(), e.exit_code()))
}

fn fraction<'py>(py: Python<'py>, r: &Rat) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.numer().clone(), r.denom().clone()))
}

/// Accepts `int`, `fractions.Fraction` or a string `"a/b"`.
fn extract_rational(ob: &Bound<'_, PyAny>) -> PyResult<Rat> {
    if let Ok(s) = ob.cast::<PyString>() {
        let s = s.to_str()?;
        return arith::parse_rational(s).ok_or_else(|| PyValueError::new_err(format!("not a rational number: {s:?}")));
    }
    if let Ok(i) = ob.extract::<BigInt>() {
        return Ok(Rat::from_integer(i));
    }
    let num: BigInt = ob.getattr("numerator")?.extract()?;
    let den: BigInt = ob.getattr("denominator")?.extract()?;
    if den == BigInt::from(0) {
        return Err(PyValueError::new_err("zero denominator"));
    }
    Ok(Rat::new(num, den))
}

fn extract_rows(rows: &Bound<'_, PyAny>) -> PyResult<Vec<Vec<Rat>>> {
    rows.try_iter()?
        .map(|row| row?.try_iter()?.map(|v| extract_rational(&v?)).collect())
        .collect()
}

fn parse_algorithm(name: Option<&str>) -> PyResult<Option<Algorithm>> {
    match name {
        None | Some("auto") => Ok(None),
        Some(s) => s.parse().map(Some).map_err(|_| {
            PyValueError::new_err(format!("unknown algorithm {s:?}; expected auto, primal, descent or lawrence"))
        }),
    }
}

/// A rational polytope given by vertices or by linear constraints.
#[pyclass(module = "polyvol", frozen)]
struct Polytope {
    input: ProblemInput,
}

#[pymethods]
impl Polytope {
    /// Convex hull of the given points (rows of ints, Fractions or "a/b").
    #[staticmethod]
    fn from_vertices(vertices: &Bound<'_, PyAny>) -> PyResult<Self> {
        let input = ProblemInput::from_vertices(extract_rows(vertices)?).map_err(to_py_err)?;
        Ok(Self { input })
    }

    /// `{x : a·x + b >= 0}` for each inequality row `(a, b)`, intersected
    /// with `a·x + b = 0` for each equation row.
    #[staticmethod]
    #[pyo3(signature = (inequalities, equations = Vec::new()))]
    fn from_constraints(inequalities: Vec<Vec<BigInt>>, equations: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let input = ProblemInput::from_constraints(inequalities, equations).map_err(to_py_err)?;
        Ok(Self { input })
    }

    /// Parses the text input format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self {
            input: ProblemInput::parse(text).map_err(to_py_err)?,
        })
    }

    /// Copy with the grading replaced; the row acts on `(x, t)`.
    fn with_grading(&self, grading: Vec<BigInt>) -> PyResult<Self> {
        let input = self.input.clone().with_grading(grading).map_err(to_py_err)?;
        Ok(Self { input })
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.input.ambient_dim
    }

    #[getter]
    fn grading(&self) -> Vec<BigInt> {
        self.input.grading_row()
    }

    fn to_text(&self) -> String {
        self.input.to_text()
    }

    /// Lattice-normalized volume.
    ///
    /// `precision=None` is exact; an integer requests that many decimal
    /// digits. `verify` is a sample count for the signed-indicator check.
    #[pyo3(signature = (
        algorithm = None,
        precision = None,
        threads = None,
        seed = 0,
        pattern_depth = 1,
        euclidean = false,
        verify = None,
        force_arbitrary = false,
    ))]
    #[allow(clippy::too_many_arguments)]
    fn volume(
        &self,
        py: Python<'_>,
        algorithm: Option<&str>,
        precision: Option<u32>,
        threads: Option<usize>,
        seed: u64,
        pattern_depth: usize,
        euclidean: bool,
        verify: Option<usize>,
        force_arbitrary: bool,
    ) -> PyResult<Report> {
        let opts = RunOptions {
            algorithm: parse_algorithm(algorithm)?,
            precision: precision.map_or(Precision::Exact, Precision::Fixed),
            threads,
            seed,
            pattern_depth,
            euclidean,
            verify,
            force_arbitrary,
            ..Default::default()
        };
        let input = &self.input;
        let report = py.detach(|| run(input, &opts)).map_err(to_py_err)?;
        Ok(Report { report })
    }

    fn __repr__(&self) -> String {
        format!("Polytope(ambient_dim={})", self.input.ambient_dim)
    }
}

/// Result of one volume computation.
#[pyclass(module = "polyvol", name = "VolumeReport", frozen)]
struct Report {
    report: VolumeReport,
}

#[pymethods]
impl Report {
    #[getter]
    fn algorithm(&self) -> String {
        self.report.algorithm.to_string()
    }

    /// `Vol P` as a Fraction (the truncated value in fixed precision).
    #[getter]
    fn volume<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.report.value.polytope())
    }

    /// `Vol P̄`, the pyramid over the polytope with apex at the origin.
    #[getter]
    fn volume_cone_pyramid<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.report.value.cone_pyramid())
    }

    #[getter]
    fn grading_denominator(&self) -> BigInt {
        self.report.grading_denominator.clone()
    }

    #[getter]
    fn exact(&self) -> bool {
        matches!(self.report.value, VolumeValue::Exact(_))
    }

    #[getter]
    fn error_bound<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        match &self.report.value {
            VolumeValue::Fixed(f) => fraction(py, &f.error_bound).map(Some),
            VolumeValue::Exact(_) => Ok(None),
        }
    }

    #[getter]
    fn euclidean_volume<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        self.report.euclidean_volume.as_ref().map(|r| fraction(py, r)).transpose()
    }

    /// Diagnostics as a dict.
    #[getter]
    fn diagnostics<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let text = self.report.to_json()["diagnostics"].to_string();
        py.import("json")?.getattr("loads")?.call1((text,))
    }

    fn to_json(&self) -> String {
        self.report.to_json().to_string()
    }

    fn to_text(&self) -> String {
        self.report.to_text()
    }

    fn __repr__(&self) -> String {
        format!(
            "VolumeReport(algorithm={:?}, volume={})",
            self.report.algorithm.name(),
            arith::render_fraction(&self.report.value.polytope())
        )
    }
}

/// Determinant of a square integer matrix.
#[pyfunction]
fn det(rows: Vec<Vec<BigInt>>) -> PyResult<BigInt> {
    let n = rows.len();
    IntMatrix::from_rows(&rows, n).and_then(|m| m.det()).map_err(to_py_err)
}

/// The vector divided by the gcd of its entries.
#[pyfunction]
fn primitivize(v: Vec<BigInt>) -> PyResult<Vec<BigInt>> {
    arith::primitivize(&v).map_err(to_py_err)
}

/// A basis of the lattice `span(vectors) ∩ ℤⁿ` in Hermite normal form.
#[pyfunction]
fn lattice_basis_of_span(vectors: Vec<Vec<BigInt>>) -> PyResult<Vec<Vec<BigInt>>> {
    let dim = vectors.first().map_or(0, Vec::len);
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(PyValueError::new_err("vectors of different lengths"));
    }
    arith::lattice_basis_of_span(&vectors, dim).map_err(to_py_err)
}

#[pymodule]
fn polyvol(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polytope>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(det, m)?)?;
    m.add_function(wrap_pyfunction!(primitivize, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_basis_of_span, m)?)?;
    m.add("PolyvolError", m.py().get_type::<PolyvolError>())?;
    Ok(())
}
