//! Python bindings. Complex results come back as Python `complex`; tables
//! and designs are wrapped classes with JSON round-tripping.

use num_complex::Complex64;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;

use gzernike::angular::{self, SphIndex};
use gzernike::connect::{self, ExpansionTable};
use gzernike::profiles::{self, DesignSpec, SProfileSpec, WaveletDesign};
use gzernike::radial::{self, RadialIndex2, RadialIndex3};
use gzernike::transforms;
use gzernike::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Index(_) => PyIndexError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_err(e: serde_json::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn idx3(n: usize, l: usize, alpha: f64) -> PyResult<RadialIndex3> {
    RadialIndex3::new(n, l, alpha).map_err(py_err)
}

fn sph(l: usize, m: i64) -> PyResult<SphIndex> {
    SphIndex::new(l, m).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, l, rho, alpha=0.0))]
fn radial3(n: usize, l: usize, rho: f64, alpha: f64) -> PyResult<f64> {
    radial::radial3_direct(idx3(n, l, alpha)?, rho).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, m, rho, alpha=0.0))]
fn radial2(n: usize, m: i64, rho: f64, alpha: f64) -> PyResult<f64> {
    let idx = RadialIndex2::new(n, m, alpha).map_err(py_err)?;
    radial::radial2_direct(idx, rho).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, l, alpha=0.0))]
fn norm3(n: usize, l: usize, alpha: f64) -> PyResult<f64> {
    Ok(radial::norm3(idx3(n, l, alpha)?))
}

#[pyfunction]
#[pyo3(signature = (n, m, alpha=0.0))]
fn norm2(n: usize, m: i64, alpha: f64) -> PyResult<f64> {
    Ok(radial::norm2(
        RadialIndex2::new(n, m, alpha).map_err(py_err)?,
    ))
}

#[pyfunction]
fn ylm(l: usize, m: i64, theta: f64, phi: f64) -> PyResult<Complex64> {
    Ok(angular::ylm(sph(l, m)?, theta, phi))
}

#[pyfunction]
fn funk_multiplier(l: usize) -> f64 {
    angular::funk_multiplier(l)
}

/// Fourier transform of `Z_{n,l,m}^α` at a point.
#[pyfunction]
#[pyo3(signature = (n, l, m, x, alpha=0.0))]
fn fourier_zernike(n: usize, l: usize, m: i64, x: [f64; 3], alpha: f64) -> PyResult<Complex64> {
    transforms::fourier_zernike(idx3(n, l, alpha)?, sph(l, m)?, x).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, l, q, alpha=0.0))]
fn fourier_radial_moment(n: usize, l: usize, q: f64, alpha: f64) -> PyResult<f64> {
    transforms::fourier_radial_moment(idx3(n, l, alpha)?, q).map_err(py_err)
}

/// Radon transform of `Z_{n,l,m}^α` over the plane `x·η = τ`.
#[pyfunction]
#[pyo3(signature = (n, l, m, tau, eta, alpha=0.0))]
fn radon_zernike(
    n: usize,
    l: usize,
    m: i64,
    tau: f64,
    eta: [f64; 3],
    alpha: f64,
) -> PyResult<Complex64> {
    transforms::radon_zernike(idx3(n, l, alpha)?, sph(l, m)?, tau, eta).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (p, l, alpha=0.0, disk=false))]
fn connection_row(p: usize, l: usize, alpha: f64, disk: bool) -> PyResult<Vec<f64>> {
    let row = if disk {
        connect::connection_row_2d(p, l, alpha)
    } else {
        connect::connection_row(p, l, alpha)
    };
    Ok(row.map_err(py_err)?.values().to_vec())
}

#[pyfunction]
fn epsilon_for_peak(beta: usize, delta: usize, eta: usize, rho_bar: f64) -> PyResult<f64> {
    profiles::epsilon_for_peak(beta, delta, eta, rho_bar).map_err(py_err)
}

#[pyfunction]
fn peak_range(beta: usize, delta: usize, eta: usize) -> (f64, f64) {
    profiles::peak_range(beta, delta, eta)
}

#[pyfunction]
fn allscale_profile(beta: usize, alpha: f64) -> PyResult<(f64, f64)> {
    profiles::allscale_profile(beta, alpha).map_err(py_err)
}

#[pyfunction]
fn s_profile(beta: usize, delta: usize, eta: usize, epsilon: f64, rho: f64) -> PyResult<f64> {
    Ok(SProfileSpec::new(beta, delta, eta, epsilon)
        .map_err(py_err)?
        .eval(rho))
}

/// Coefficients of a radial profile against `R_{l+2s}^{l,α}`.
#[pyclass(name = "ExpansionTable", frozen)]
struct PyExpansionTable(ExpansionTable);

#[pymethods]
impl PyExpansionTable {
    #[new]
    fn new(l: usize, alpha: f64, coeffs: Vec<f64>) -> PyResult<Self> {
        Ok(Self(ExpansionTable::new(l, alpha, coeffs).map_err(py_err)?))
    }

    #[getter]
    fn l(&self) -> usize {
        self.0.l()
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.0.alpha()
    }

    #[getter]
    fn coeffs(&self) -> Vec<f64> {
        self.0.coeffs().to_vec()
    }

    #[getter]
    fn tail_energy(&self) -> f64 {
        self.0.tail_energy()
    }

    fn reconstruct(&self, rho: f64) -> f64 {
        self.0.reconstruct(rho)
    }

    /// Next order up, one coefficient shorter.
    fn lift(&self) -> PyResult<Self> {
        Ok(Self(connect::lift_b_coeffs(&self.0).map_err(py_err)?))
    }

    fn __len__(&self) -> usize {
        self.0.coeffs().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "ExpansionTable(l={}, alpha={}, terms={})",
            self.0.l(),
            self.0.alpha(),
            self.0.coeffs().len()
        )
    }
}

#[pyfunction]
fn expand_s_profile(
    beta: usize,
    delta: usize,
    eta: usize,
    epsilon: f64,
    lmax: usize,
    smax: usize,
) -> PyResult<Vec<PyExpansionTable>> {
    let spec = SProfileSpec::new(beta, delta, eta, epsilon).map_err(py_err)?;
    let tables = profiles::expand_s_profile(&spec, lmax, smax).map_err(py_err)?;
    Ok(tables.into_iter().map(PyExpansionTable).collect())
}

/// Cap-plus-profile wavelet design.
#[pyclass(name = "WaveletDesign", frozen)]
struct PyWaveletDesign(WaveletDesign);

#[pymethods]
impl PyWaveletDesign {
    /// Builds a design from a spec given as a JSON string.
    #[staticmethod]
    fn from_spec_json(text: &str) -> PyResult<Self> {
        let spec: DesignSpec = serde_json::from_str(text).map_err(json_err)?;
        Ok(Self(WaveletDesign::build(&spec).map_err(py_err)?))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self(serde_json::from_str(text).map_err(json_err)?))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(json_err)
    }

    fn synthesize(&self, x: [f64; 3]) -> PyResult<Complex64> {
        profiles::synthesize_wavelet(&self.0, x).map_err(py_err)
    }

    fn angular_coeff(&self, l: usize, m: i64) -> PyResult<Complex64> {
        Ok(self.0.angular.get(sph(l, m)?))
    }

    #[getter]
    fn radial_tables(&self) -> Vec<PyExpansionTable> {
        self.0
            .radial_tables
            .iter()
            .cloned()
            .map(PyExpansionTable)
            .collect()
    }

    #[getter]
    fn max_tail_energy(&self) -> f64 {
        self.0.max_tail_energy()
    }
}

/// Runs the conformance suites and returns the report as a JSON string.
#[pyfunction]
#[pyo3(signature = (suite=None, seed=0))]
fn verify(suite: Option<String>, seed: u64) -> PyResult<String> {
    let opts = gzernike::verify::VerifyOptions {
        suite,
        seed,
        ..Default::default()
    };
    let report = gzernike::verify::run(&opts).map_err(py_err)?;
    serde_json::to_string(&report).map_err(json_err)
}

#[pymodule]
#[pyo3(name = "gzernike")]
fn gzernike_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", gzernike::VERSION)?;
    m.add_class::<PyExpansionTable>()?;
    m.add_class::<PyWaveletDesign>()?;
    m.add_function(wrap_pyfunction!(radial3, m)?)?;
    m.add_function(wrap_pyfunction!(radial2, m)?)?;
    m.add_function(wrap_pyfunction!(norm3, m)?)?;
    m.add_function(wrap_pyfunction!(norm2, m)?)?;
    m.add_function(wrap_pyfunction!(ylm, m)?)?;
    m.add_function(wrap_pyfunction!(funk_multiplier, m)?)?;
    m.add_function(wrap_pyfunction!(fourier_zernike, m)?)?;
    m.add_function(wrap_pyfunction!(fourier_radial_moment, m)?)?;
    m.add_function(wrap_pyfunction!(radon_zernike, m)?)?;
    m.add_function(wrap_pyfunction!(connection_row, m)?)?;
    m.add_function(wrap_pyfunction!(epsilon_for_peak, m)?)?;
    m.add_function(wrap_pyfunction!(peak_range, m)?)?;
    m.add_function(wrap_pyfunction!(allscale_profile, m)?)?;
    m.add_function(wrap_pyfunction!(s_profile, m)?)?;
    m.add_function(wrap_pyfunction!(expand_s_profile, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
