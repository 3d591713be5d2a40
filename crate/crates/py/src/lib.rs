//! Python bindings for `trimode_core`.

use num_complex::Complex64 as C64;
use pyo3::exceptions::{PyArithmeticError, PyNotImplementedError, PyValueError};
use pyo3::prelude::*;

use trimode_core::algebra::{self, SU11Label, SU2Label, Truncation};
use trimode_core::diag::{self, AnalyticMethod};
use trimode_core::spectra::{self, DeltaSign, Energy, QuantumNumbersNM, QuantumNumbersSU11, QuantumNumbersSU2};
use trimode_core::wavefn::{self, GridSpec, WaveSample};
use trimode_core::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidArgument(_) | Error::Domain(_) => PyValueError::new_err(e.to_string()),
        Error::UnsupportedOperation(_) | Error::MethodInapplicable(_) => PyNotImplementedError::new_err(e.to_string()),
        Error::Accuracy { .. } => PyArithmeticError::new_err(e.to_string()),
    }
}

fn complex(e: Energy) -> C64 {
    C64::new(e.re(), e.im())
}

fn delta_sign(name: &str) -> PyResult<DeltaSign> {
    match name {
        "paper" => Ok(DeltaSign::Paper),
        "alt" => Ok(DeltaSign::Alt),
        other => Err(PyValueError::new_err(format!(
            "delta_sign must be 'paper' or 'alt', got {other:?}"
        ))),
    }
}

fn method(name: &str, sign: &str) -> PyResult<AnalyticMethod> {
    Ok(match name {
        "bogoliubov" => AnalyticMethod::Bogoliubov,
        "su11" => AnalyticMethod::Su11,
        "nm" => AnalyticMethod::NormalMode(delta_sign(sign)?),
        "su2" => AnalyticMethod::Su2,
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    })
}

/// Frequencies `w1, w2, w3` of modes `a, b, c` and the coupling `g`.
#[pyclass(frozen, skip_from_py_object, name = "ModelParams", module = "trimode")]
#[derive(Clone, Copy)]
struct PyModelParams(spectra::ModelParams);

#[pymethods]
impl PyModelParams {
    #[new]
    #[pyo3(signature = (w1, w2, w3, g))]
    fn new(w1: f64, w2: f64, w3: f64, g: f64) -> PyResult<Self> {
        spectra::ModelParams::new(w1, w2, w3, g).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn isotropic(omega: f64, g: f64) -> PyResult<Self> {
        spectra::ModelParams::isotropic(omega, g).map(Self).map_err(to_py)
    }

    fn with_g(&self, g: f64) -> Self {
        Self(self.0.with_g(g))
    }

    #[getter]
    fn w1(&self) -> f64 {
        self.0.omega1
    }

    #[getter]
    fn w2(&self) -> f64 {
        self.0.omega2
    }

    #[getter]
    fn w3(&self) -> f64 {
        self.0.omega3
    }

    #[getter]
    fn g(&self) -> f64 {
        self.0.g
    }

    fn __repr__(&self) -> String {
        let p = self.0;
        format!(
            "ModelParams(w1={}, w2={}, w3={}, g={})",
            p.omega1, p.omega2, p.omega3, p.g
        )
    }
}

/// Occupations `(n_a, n_b, n_c)` of the block `(q_ab, q_ac)`.
#[pyfunction]
fn block_basis(q_ab: i64, q_ac: i64) -> PyResult<Vec<(u32, u32, u32)>> {
    let b = trimode_core::fock::block_basis(q_ab, q_ac).map_err(to_py)?;
    Ok(b.basis.iter().map(|o| (o.n_a, o.n_b, o.n_c)).collect())
}

/// Ascending eigenvalues of H on one block.
#[pyfunction]
fn block_spectrum(params: &PyModelParams, q_ab: u32, q_ac: u32) -> PyResult<Vec<f64>> {
    Ok(diag::block_spectrum(&params.0, q_ab, q_ac).map_err(to_py)?.eigenvalues)
}

/// Closed-form candidates for one block, ascending by real part.
#[pyfunction]
#[pyo3(signature = (params, q_ab, q_ac, method, delta_sign = "paper"))]
fn analytic_block_spectrum(
    params: &PyModelParams,
    q_ab: u32,
    q_ac: u32,
    method: &str,
    delta_sign: &str,
) -> PyResult<Vec<C64>> {
    let m = self::method(method, delta_sign)?;
    let cands = diag::analytic_candidates(&params.0, q_ab, q_ac, m).map_err(to_py)?;
    Ok(cands.into_iter().map(complex).collect())
}

#[pyfunction]
fn energy_su11(params: &PyModelParams, n_a: u32, n_l: u32, m_n: i64) -> C64 {
    complex(spectra::energy_su11(&params.0, &QuantumNumbersSU11 { n_a, n_l, m_n }))
}

#[pyfunction]
fn energy_bogoliubov(params: &PyModelParams, n_a: u32, n_abar: u32, n_d: u32) -> PyResult<C64> {
    spectra::energy_bogoliubov(&params.0, n_a, n_abar, n_d)
        .map(complex)
        .map_err(to_py)
}

#[pyfunction]
fn energy_su2(params: &PyModelParams, n_c: u32, n_l: u32, m_n: i64) -> PyResult<f64> {
    let q = QuantumNumbersSU2 { n_c, n_l, m_n };
    q.validate().map_err(to_py)?;
    Ok(spectra::energy_su2(&params.0, &q))
}

#[pyfunction]
#[pyo3(signature = (params, n_c, n_1, n_2, delta_sign = "paper"))]
fn energy_normal_mode(params: &PyModelParams, n_c: u32, n_1: u32, n_2: u32, delta_sign: &str) -> PyResult<f64> {
    let q = QuantumNumbersNM { n_c, n_1, n_2 };
    Ok(spectra::energy_normal_mode(
        &params.0,
        &q,
        self::delta_sign(delta_sign)?,
    ))
}

/// `(|X|^2, |Y|^2, Omega)`.
#[pyfunction]
fn normal_mode_coeffs(params: &PyModelParams, n_c: u32) -> (f64, f64, f64) {
    let c = spectra::normal_mode_coeffs(&params.0, n_c);
    (c.x2, c.y2, c.omega)
}

#[pyfunction]
fn expval_su11(params: &PyModelParams, alpha: C64, n: u32, m_n: i64) -> C64 {
    complex(spectra::expval_su11(&params.0, alpha, n, m_n))
}

#[pyfunction]
fn expval_su2(params: &PyModelParams, beta: C64, n_prime: u32, m_prime: i64) -> f64 {
    spectra::expval_su2(&params.0, beta, n_prime, m_prime)
}

#[pyfunction]
fn matching_alpha(g: f64, omega: f64, beta_abs: f64) -> PyResult<f64> {
    spectra::matching_alpha(g, omega, beta_abs).map_err(to_py)
}

/// Amplitudes of `D(xi)|k, n>` in `|k, m>` for the sector `N_d = m_nd`,
/// and the missing norm.
#[pyfunction]
#[pyo3(signature = (m_nd, n, xi, m_max = None))]
fn pncs_su11(m_nd: i64, n: u32, xi: C64, m_max: Option<usize>) -> PyResult<(Vec<C64>, f64)> {
    let truncation = m_max.map_or(Truncation::Adaptive, Truncation::Fixed);
    let a = algebra::pncs_su11(SU11Label::from_sector(m_nd, n), xi, truncation).map_err(to_py)?;
    Ok((a.values, a.tail))
}

/// Amplitudes of `D(xi)|j, mu>` indexed by `j + mu'`.
#[pyfunction]
fn pncs_su2(two_j: u32, two_mu: i64, xi: C64) -> PyResult<(Vec<C64>, f64)> {
    let label = SU2Label::new(two_j, two_mu).map_err(to_py)?;
    let a = algebra::pncs_su2(label, xi).map_err(to_py)?;
    Ok((a.values, a.tail))
}

#[pyfunction]
fn surrogate_su2_spectrum(d: f64, lambda: C64, two_j: u32) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let r = diag::surrogate_su2_spectrum(d, lambda, two_j).map_err(to_py)?;
    Ok((r.eigenvalues, r.analytic.unwrap_or_default()))
}

#[pyfunction]
#[pyo3(signature = (s, delta, lambda, m_nd, cutoff = 80))]
fn surrogate_su11_spectrum(s: f64, delta: f64, lambda: C64, m_nd: i64, cutoff: u32) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let r = diag::surrogate_su11_spectrum(s, delta, lambda, m_nd, cutoff).map_err(to_py)?;
    Ok((r.eigenvalues, r.analytic.unwrap_or_default()))
}

/// `(q_ab, q_ac, g, deviation)` rows of the exact-vs-closed-form scan.
#[pyfunction]
#[pyo3(signature = (params, qmax, g_grid, method = "su11", delta_sign = "paper"))]
fn discrepancy_scan(
    params: &PyModelParams,
    qmax: u32,
    g_grid: Vec<f64>,
    method: &str,
    delta_sign: &str,
) -> PyResult<Vec<(u32, u32, f64, f64)>> {
    let m = self::method(method, delta_sign)?;
    let scan = diag::discrepancy_scan(&params.0, qmax, qmax, &g_grid, m).map_err(to_py)?;
    Ok(scan.points.iter().map(|p| (p.q_ab, p.q_ac, p.g, p.deviation)).collect())
}

#[pyfunction]
fn ho1d(n: u32, x: f64) -> f64 {
    wavefn::ho1d(n, x)
}

#[pyfunction]
fn ho2d(n_l: u32, m_n: i64, rho: f64, phi: f64) -> C64 {
    wavefn::ho2d(n_l, m_n, rho, phi)
}

fn polar(rho: Vec<f64>, phi: Vec<f64>) -> PyResult<GridSpec> {
    let g = GridSpec::Polar { rho, phi };
    g.validate().map_err(to_py)?;
    Ok(g)
}

fn values(samples: Vec<WaveSample>) -> Vec<C64> {
    samples.into_iter().map(|s| s.value).collect()
}

/// Values on the polar grid `rho x phi`, `rho` outer.
#[pyfunction]
fn pncs_wavefunction_su11(n_l: u32, m_n: i64, zeta: C64, rho: Vec<f64>, phi: Vec<f64>) -> PyResult<Vec<C64>> {
    wavefn::pncs_wavefunction_su11(n_l, m_n, zeta, &polar(rho, phi)?)
        .map(values)
        .map_err(to_py)
}

/// Values on the polar grid `rho x phi`, `rho` outer.
#[pyfunction]
fn pncs_wavefunction_su2(n_l: u32, m_n: i64, zeta: C64, rho: Vec<f64>, phi: Vec<f64>) -> PyResult<Vec<C64>> {
    wavefn::pncs_wavefunction_su2(n_l, m_n, zeta, &polar(rho, phi)?)
        .map(values)
        .map_err(to_py)
}

#[pymodule]
fn trimode(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModelParams>()?;
    m.add_function(wrap_pyfunction!(block_basis, m)?)?;
    m.add_function(wrap_pyfunction!(block_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(analytic_block_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(energy_su11, m)?)?;
    m.add_function(wrap_pyfunction!(energy_bogoliubov, m)?)?;
    m.add_function(wrap_pyfunction!(energy_su2, m)?)?;
    m.add_function(wrap_pyfunction!(energy_normal_mode, m)?)?;
    m.add_function(wrap_pyfunction!(normal_mode_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(expval_su11, m)?)?;
    m.add_function(wrap_pyfunction!(expval_su2, m)?)?;
    m.add_function(wrap_pyfunction!(matching_alpha, m)?)?;
    m.add_function(wrap_pyfunction!(pncs_su11, m)?)?;
    m.add_function(wrap_pyfunction!(pncs_su2, m)?)?;
    m.add_function(wrap_pyfunction!(surrogate_su2_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(surrogate_su11_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(discrepancy_scan, m)?)?;
    m.add_function(wrap_pyfunction!(ho1d, m)?)?;
    m.add_function(wrap_pyfunction!(ho2d, m)?)?;
    m.add_function(wrap_pyfunction!(pncs_wavefunction_su11, m)?)?;
    m.add_function(wrap_pyfunction!(pncs_wavefunction_su2, m)?)?;
    Ok(())
}
