//! Python bindings. Matrices cross the boundary as lists of row lists.

use pyo3::exceptions::{PyKeyError, PyNotImplementedError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use diact::{
    datasets, DemandSegment, Error, Frame, ImpactKind, Kind, LegacyVariant, MakeUseTables, Matrix,
    SystemOptions, Vector,
};

type Rows = Vec<Vec<f64>>;

fn to_py(err: Error) -> PyErr {
    match err {
        Error::Unsupported(_) => PyNotImplementedError::new_err(err.to_string()),
        Error::UnknownFixture(_) | Error::MissingPublished { .. } => {
            PyKeyError::new_err(err.to_string())
        }
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn matrix(rows: &Rows) -> PyResult<Matrix> {
    Matrix::from_rows(rows).map_err(to_py)
}

fn vector(v: &[f64]) -> PyResult<Vector> {
    Vector::new(v.to_vec()).map_err(to_py)
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(to_py)
}

/// A validated input-output system.
#[pyclass(name = "IoSystem", module = "diact_py", frozen)]
struct PyIoSystem {
    inner: diact::IoSystem,
}

#[pymethods]
impl PyIoSystem {
    /// Build from a transactions matrix `z` and final demand `f`.
    #[staticmethod]
    #[pyo3(signature = (z, f, sector_names=None, allow_negative_demand=false))]
    fn from_transactions(
        z: Rows,
        f: Vec<f64>,
        sector_names: Option<Vec<String>>,
        allow_negative_demand: bool,
    ) -> PyResult<Self> {
        let opts = SystemOptions {
            allow_negative_demand,
        };
        diact::IoSystem::from_transactions_with(
            matrix(&z)?,
            vector(&f)?,
            sector_names.unwrap_or_default(),
            opts,
        )
        .map(|inner| Self { inner })
        .map_err(to_py)
    }

    /// Build from technical coefficients `a` and final demand `f`.
    #[staticmethod]
    #[pyo3(signature = (a, f, sector_names=None, allow_negative_demand=false))]
    fn from_coefficients(
        a: Rows,
        f: Vec<f64>,
        sector_names: Option<Vec<String>>,
        allow_negative_demand: bool,
    ) -> PyResult<Self> {
        let opts = SystemOptions {
            allow_negative_demand,
        };
        diact::IoSystem::from_coefficients_with(
            matrix(&a)?,
            vector(&f)?,
            sector_names.unwrap_or_default(),
            opts,
        )
        .map(|inner| Self { inner })
        .map_err(to_py)
    }

    /// Industry-by-industry system from use (commodity by industry) and make
    /// (industry by commodity) tables.
    #[staticmethod]
    #[pyo3(signature = (use_table, make_table, f))]
    fn from_make_use(use_table: Rows, make_table: Rows, f: Vec<f64>) -> PyResult<Self> {
        let tables = MakeUseTables::new(matrix(&use_table)?, matrix(&make_table)?, vec![], vec![])
            .map_err(to_py)?;
        tables
            .into_system(vector(&f)?)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn sector_names(&self) -> Vec<String> {
        self.inner.sector_names().to_vec()
    }

    #[getter]
    fn final_demand(&self) -> Vec<f64> {
        self.inner.final_demand().to_vec()
    }

    #[getter]
    fn gross_output(&self) -> Vec<f64> {
        self.inner.gross_output().to_vec()
    }

    #[getter]
    fn transactions(&self) -> Rows {
        self.inner.transactions().to_rows()
    }

    #[getter]
    fn coefficients(&self) -> Rows {
        self.inner.coefficients().to_rows()
    }

    #[getter]
    fn leontief(&self) -> Rows {
        self.inner.leontief().to_rows()
    }

    #[getter]
    fn spectral_radius(&self) -> f64 {
        self.inner.spectral_radius()
    }

    fn subthroughflow(&self) -> Rows {
        diact::subthroughflow(&self.inner).values.to_rows()
    }

    /// `kind` is direct, indirect or transfer; `frame` is simple or composite.
    #[pyo3(signature = (kind, frame="simple"))]
    fn requirements(&self, kind: &str, frame: &str) -> PyResult<Rows> {
        Ok(diact::requirements(&self.inner, parse(kind)?, parse(frame)?)
            .values
            .to_rows())
    }

    #[pyo3(signature = (kind, frame="simple"))]
    fn transactions_matrix(&self, kind: &str, frame: &str) -> PyResult<Rows> {
        Ok(diact::transactions(&self.inner, parse(kind)?, parse(frame)?)
            .values
            .to_rows())
    }

    #[pyo3(signature = (kind, frame="simple"))]
    fn gross_outputs(&self, kind: &str, frame: &str) -> PyResult<Vec<f64>> {
        Ok(diact::diact_gross_outputs(&self.inner, parse(kind)?, parse(frame)?).to_vec())
    }

    /// Classical indirect-effects matrix `e1`..`e4`.
    fn legacy(&self, variant: &str) -> PyResult<Rows> {
        let v: LegacyVariant = parse(variant)?;
        Ok(diact::legacy_indirect(&self.inner, v).to_rows())
    }

    /// Returns `{"delta_t": [[...]], "delta_x": [...]}`.
    #[pyo3(signature = (segment, frame="simple", kind="indirect", allow_negative=false))]
    fn impact<'py>(
        &self,
        py: Python<'py>,
        segment: Vec<f64>,
        frame: &str,
        kind: &str,
        allow_negative: bool,
    ) -> PyResult<Bound<'py, PyDict>> {
        let frame: Frame = parse(frame)?;
        let kind: ImpactKind = parse(kind)?;
        let seg = DemandSegment::with_negative(frame, vector(&segment)?, allow_negative)
            .map_err(to_py)?;
        let r = diact::impact(&self.inner, &seg, kind).map_err(to_py)?;
        let out = PyDict::new(py);
        out.set_item("delta_t", r.delta_t.to_rows())?;
        out.set_item("delta_x", r.delta_x.to_vec())?;
        Ok(out)
    }

    /// Truncated-series check of the Leontief inverse.
    #[pyo3(signature = (tol=1e-8))]
    fn verify<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        let r = diact::verify_system(&self.inner, tol).map_err(to_py)?;
        let out = PyDict::new(py);
        out.set_item("terms_used", r.terms_used)?;
        out.set_item("residual_inf_norm", r.residual_inf_norm)?;
        out.set_item("converged", r.converged)?;
        out.set_item("legacy_residual_inf_norm", r.legacy_residual_inf_norm)?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!(
            "IoSystem(n={}, spectral_radius={:.6})",
            self.inner.n(),
            self.inner.spectral_radius()
        )
    }
}

/// Names of the bundled fixtures.
#[pyfunction]
fn fixtures() -> PyResult<Vec<String>> {
    datasets::catalog().map_err(to_py)
}

/// The fixture's system (final demand of ones when none is bundled).
#[pyfunction]
fn load_fixture(name: &str) -> PyResult<PyIoSystem> {
    let fix = datasets::load(name).map_err(to_py)?;
    fix.system().map(|inner| PyIoSystem { inner }).map_err(to_py)
}

/// Published simple requirements of a fixture, or None when not bundled.
#[pyfunction]
fn published(name: &str, kind: &str) -> PyResult<Option<Rows>> {
    let fix = datasets::load(name).map_err(to_py)?;
    let kind: Kind = parse(kind)?;
    Ok(fix.published(kind).map(Matrix::to_rows))
}

/// Requirements straight from use and make tables.
#[pyfunction]
#[pyo3(signature = (use_table, make_table, kind, frame="simple"))]
fn requirements_from_make_use(
    use_table: Rows,
    make_table: Rows,
    kind: &str,
    frame: &str,
) -> PyResult<Rows> {
    let tables = MakeUseTables::new(matrix(&use_table)?, matrix(&make_table)?, vec![], vec![])
        .map_err(to_py)?;
    diact::requirements_from_make_use(&tables, parse(kind)?, parse(frame)?)
        .map(|r| r.values.to_rows())
        .map_err(to_py)
}

/// `Σ_{k<n_terms} Aᵏ`.
#[pyfunction]
fn truncated_leontief(a: Rows, n_terms: usize) -> PyResult<Rows> {
    diact::truncated_leontief(&matrix(&a)?, n_terms)
        .map(|m| m.to_rows())
        .map_err(to_py)
}

#[pyfunction]
fn spectral_radius(a: Rows) -> PyResult<f64> {
    diact::spectral_radius_bound(&matrix(&a)?).map_err(to_py)
}

#[pymodule]
fn diact_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIoSystem>()?;
    m.add_function(wrap_pyfunction!(fixtures, m)?)?;
    m.add_function(wrap_pyfunction!(load_fixture, m)?)?;
    m.add_function(wrap_pyfunction!(published, m)?)?;
    m.add_function(wrap_pyfunction!(requirements_from_make_use, m)?)?;
    m.add_function(wrap_pyfunction!(truncated_leontief, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_radius, m)?)?;
    Ok(())
}
