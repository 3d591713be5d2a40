//! Exact diagonalization of the Hamiltonian blocks, scalar-coupling
//! surrogates of the tilted Hamiltonians, and comparison of exact block
//! spectra against the closed-form spectra.

mod eigen;
mod expm;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, hermiticity_residual, HermitianEigen};
pub use expm::matrix_exponential;

use crate::algebra::{self, Generators};
use crate::error::{invalid, Error, Result};
use crate::fock::{block_basis, hamiltonian_matrix, BasisSpec};
use crate::spectra::{
    energy_bogoliubov, energy_normal_mode, energy_su11, energy_su2, DeltaSign, Energy, QuantumNumbersNM,
    QuantumNumbersSU11, QuantumNumbersSU2,
};
use crate::{ComplexMatrix, ModelParams, C64};

/// Smallest per-mode cutoff accepted by the su(1,1) surrogate.
pub const MIN_SURROGATE_CUTOFF: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exact,
    Bogoliubov,
    Su11,
    NormalMode,
    Su2,
    Surrogate,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Bogoliubov => "bogoliubov",
            Method::Su11 => "su11",
            Method::NormalMode => "normal_mode",
            Method::Su2 => "su2",
            Method::Surrogate => "surrogate",
        }
    }
}

/// What a list of eigenvalues belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumLabel {
    Block { q_ab: u32, q_ac: u32 },
    Su11Sector { m_nd: i64, cutoff: u32 },
    Su2Multiplet { two_j: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumResult {
    pub label: SpectrumLabel,
    pub method: Method,
    /// Ascending. For closed-form methods these are real parts.
    pub eigenvalues: Vec<f64>,
    /// Closed-form prediction aligned with `eigenvalues` (surrogates only).
    pub analytic: Option<Vec<f64>>,
    /// Closed-form values with a nonzero imaginary part.
    pub nonreal: usize,
}

/// Low-lying levels of a truncated problem at increasing cutoffs.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub cutoffs: Vec<u32>,
    pub levels: Vec<Vec<f64>>,
    /// `max_i |levels[c+1][i] - levels[c][i]|` for successive cutoffs.
    pub cauchy: Vec<f64>,
    /// Whether the Cauchy differences are nonincreasing.
    pub monotone: bool,
}

/// Exact spectrum of H on the invariant block `(q_ab, q_ac)`.
pub fn block_spectrum(params: &ModelParams, q_ab: u32, q_ac: u32) -> Result<SpectrumResult> {
    let h = hamiltonian_matrix(params, BasisSpec::SingleBlock { q_ab, q_ac })?;
    Ok(SpectrumResult {
        label: SpectrumLabel::Block { q_ab, q_ac },
        method: Method::Exact,
        eigenvalues: hermitian_eigenvalues(&h.to_dense())?,
        analytic: None,
        nonreal: 0,
    })
}

fn sector_surrogate(gens: &Generators, coeff: f64, lambda: C64) -> Result<ComplexMatrix> {
    let h = gens
        .cartan
        .scale_re(coeff)
        .add(&gens.raising.scale(lambda))?
        .add(&gens.lowering.scale(lambda.conj()))?;
    Ok(h.to_dense())
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(invalid("parameters must be finite"))
    }
}

/// Spectrum of `S K0 + lambda K+ + lambda* K- + (delta/2) N_d - S/2` on the
/// sector `N_d = m_nd` of the `(b, c)` space truncated at `cutoff` per mode.
pub fn surrogate_su11_spectrum(s: f64, delta: f64, lambda: C64, m_nd: i64, cutoff: u32) -> Result<SpectrumResult> {
    check_finite(&[s, delta, lambda.re, lambda.im])?;
    if 2.0 * lambda.norm() >= s {
        return Err(Error::Domain(format!(
            "|2 lambda| = {} must be below S = {s}",
            2.0 * lambda.norm()
        )));
    }
    if cutoff < MIN_SURROGATE_CUTOFF {
        return Err(invalid(format!(
            "cutoff must be at least {MIN_SURROGATE_CUTOFF}, got {cutoff}"
        )));
    }
    if m_nd.unsigned_abs() > cutoff as u64 {
        return Err(invalid(format!("sector {m_nd} is empty at cutoff {cutoff}")));
    }
    let gens = algebra::su11_generators(BasisSpec::two_mode_bc(cutoff, cutoff))?.sector(m_nd)?;
    let h = sector_surrogate(&gens, s, lambda)?;
    let shift = delta / 2.0 * m_nd as f64 - s / 2.0;
    let eigenvalues: Vec<f64> = hermitian_eigenvalues(&h)?.into_iter().map(|e| e + shift).collect();
    let root = (s * s - 4.0 * lambda.norm_sqr()).sqrt();
    let k = (m_nd.unsigned_abs() as f64 + 1.0) / 2.0;
    let analytic = (0..eigenvalues.len()).map(|n| root * (k + n as f64) + shift).collect();
    Ok(SpectrumResult {
        label: SpectrumLabel::Su11Sector { m_nd, cutoff },
        method: Method::Surrogate,
        eigenvalues,
        analytic: Some(analytic),
        nonreal: 0,
    })
}

/// Lowest `n_levels` su(1,1) surrogate levels at each cutoff.
pub fn su11_convergence(
    s: f64,
    delta: f64,
    lambda: C64,
    m_nd: i64,
    cutoffs: &[u32],
    n_levels: usize,
) -> Result<ConvergenceReport> {
    let mut levels = Vec::with_capacity(cutoffs.len());
    for &c in cutoffs {
        let r = surrogate_su11_spectrum(s, delta, lambda, m_nd, c)?;
        levels.push(r.eigenvalues.into_iter().take(n_levels).collect::<Vec<_>>());
    }
    let cauchy: Vec<f64> = levels
        .windows(2)
        .map(|w| w[0].iter().zip(&w[1]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
        .collect();
    let monotone = cauchy.windows(2).all(|w| w[1] <= w[0]);
    Ok(ConvergenceReport {
        cutoffs: cutoffs.to_vec(),
        levels,
        cauchy,
        monotone,
    })
}

fn su2_multiplet(two_j: u32) -> Result<Generators> {
    algebra::su2_generators(BasisSpec::two_mode_ab(two_j, two_j))?.sector(two_j as i64)
}

/// Spectrum of `d J0 + lambda J+ + lambda* J-` on the multiplet `j = two_j/2`.
pub fn surrogate_su2_spectrum(d: f64, lambda: C64, two_j: u32) -> Result<SpectrumResult> {
    check_finite(&[d, lambda.re, lambda.im])?;
    let gens = su2_multiplet(two_j)?;
    let h = sector_surrogate(&gens, d, lambda)?;
    let root = (d * d + 4.0 * lambda.norm_sqr()).sqrt();
    let analytic = (0..=two_j).map(|i| root * (i as f64 - two_j as f64 / 2.0)).collect();
    Ok(SpectrumResult {
        label: SpectrumLabel::Su2Multiplet { two_j },
        method: Method::Surrogate,
        eigenvalues: hermitian_eigenvalues(&h)?,
        analytic: Some(analytic),
        nonreal: 0,
    })
}

/// Tilt parameter that removes the ladder terms of `d J0 + lambda J+ + h.c.`.
pub fn tilt_xi_su2(d: f64, lambda: C64) -> C64 {
    let r = lambda.norm();
    if r == 0.0 {
        return C64::new(0.0, 0.0);
    }
    let theta = (2.0 * r).atan2(d);
    -(lambda / r) * (theta / 2.0)
}

/// Tilt parameter that removes the ladder terms of `S K0 + lambda K+ + h.c.`.
pub fn tilt_xi_su11(s: f64, lambda: C64) -> Result<C64> {
    let r = lambda.norm();
    if 2.0 * r >= s {
        return Err(Error::Domain(format!("|2 lambda| = {} must be below S = {s}", 2.0 * r)));
    }
    if r == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let theta = (2.0 * r / s).atanh();
    Ok(-(lambda / r) * (theta / 2.0))
}

/// `D† (d J0 + lambda J+ + lambda* J-) D` on one multiplet with the tilt of
/// [`tilt_xi_su2`]; diagonal with entries `sqrt(d² + 4|lambda|²) mu`.
pub fn tilted_surrogate_su2(d: f64, lambda: C64, two_j: u32) -> Result<ComplexMatrix> {
    let gens = su2_multiplet(two_j)?;
    let h = sector_surrogate(&gens, d, lambda)?;
    let u = algebra::displacement_exact(&gens, tilt_xi_su2(d, lambda))?;
    Ok(u.adjoint() * h * u)
}

/// `D† (S K0 + lambda K+ + lambda* K-) D` on a truncated `N_d` sector with
/// the tilt of [`tilt_xi_su11`]. Only entries far from the cutoff are
/// meaningful.
pub fn tilted_surrogate_su11(s: f64, lambda: C64, m_nd: i64, cutoff: u32) -> Result<ComplexMatrix> {
    let xi = tilt_xi_su11(s, lambda)?;
    let gens = algebra::su11_generators(BasisSpec::two_mode_bc(cutoff, cutoff))?.sector(m_nd)?;
    let h = sector_surrogate(&gens, s, lambda)?;
    let u = algebra::displacement_exact(&gens, xi)?;
    Ok(u.adjoint() * h * u)
}

/// Closed-form spectrum whose candidates are compared with the exact block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnalyticMethod {
    Bogoliubov,
    Su11,
    NormalMode(DeltaSign),
    Su2,
}

impl AnalyticMethod {
    pub fn method(&self) -> Method {
        match self {
            AnalyticMethod::Bogoliubov => Method::Bogoliubov,
            AnalyticMethod::Su11 => Method::Su11,
            AnalyticMethod::NormalMode(_) => Method::NormalMode,
            AnalyticMethod::Su2 => Method::Su2,
        }
    }
}

/// Closed-form energies for every state of a block, with quantum numbers
/// assigned so that the candidates reduce to the bare energies at `g = 0`.
pub fn analytic_candidates(params: &ModelParams, q_ab: u32, q_ac: u32, method: AnalyticMethod) -> Result<Vec<Energy>> {
    let block = block_basis(q_ab as i64, q_ac as i64)?;
    let mut out = Vec::with_capacity(block.dim());
    for s in &block.basis {
        let e = match method {
            AnalyticMethod::Bogoliubov => energy_bogoliubov(params, s.n_a, s.n_b, s.n_c)?,
            AnalyticMethod::Su11 => energy_su11(
                params,
                &QuantumNumbersSU11 {
                    n_a: s.n_a,
                    n_l: s.n_b.min(s.n_c),
                    m_n: s.n_c as i64 - s.n_b as i64,
                },
            ),
            AnalyticMethod::NormalMode(sign) => {
                let (n_1, n_2) = if params.omega1 >= params.omega2 {
                    (s.n_a, s.n_b)
                } else {
                    (s.n_b, s.n_a)
                };
                let q = QuantumNumbersNM { n_c: s.n_c, n_1, n_2 };
                // the normal-mode spectrum drops w2 N_s
                Energy::Real(energy_normal_mode(params, &q, sign) + params.omega2 * (s.n_a + s.n_b) as f64)
            }
            AnalyticMethod::Su2 => {
                let diff = s.n_a as i64 - s.n_b as i64;
                let m_n = if params.omega1 >= params.omega2 { diff } else { -diff };
                let two_j = (s.n_a + s.n_b) as i64;
                let q = QuantumNumbersSU2 {
                    n_c: s.n_c,
                    n_l: ((two_j - m_n) / 2) as u32,
                    m_n,
                };
                Energy::Real(energy_su2(params, &q))
            }
        };
        out.push(e);
    }
    out.sort_by(|a, b| a.re().total_cmp(&b.re()));
    Ok(out)
}

/// Closed-form block spectrum as a [`SpectrumResult`] of real parts.
pub fn analytic_block_spectrum(
    params: &ModelParams,
    q_ab: u32,
    q_ac: u32,
    method: AnalyticMethod,
) -> Result<SpectrumResult> {
    let cands = analytic_candidates(params, q_ab, q_ac, method)?;
    Ok(SpectrumResult {
        label: SpectrumLabel::Block { q_ab, q_ac },
        method: method.method(),
        eigenvalues: cands.iter().map(Energy::re).collect(),
        analytic: None,
        nonreal: cands.iter().filter(|e| !e.is_real()).count(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscrepancyRow {
    pub q_ab: u32,
    pub q_ac: u32,
    pub exact: Vec<f64>,
    /// Real parts of the sorted candidates.
    pub analytic: Vec<f64>,
    /// Candidates with a nonzero imaginary part.
    pub nonreal: usize,
    /// Largest absolute difference after sorting both lists.
    pub deviation: f64,
}

/// Exact versus closed-form spectra for all blocks up to the given charges.
pub fn discrepancy_table(
    params: &ModelParams,
    q_ab_max: u32,
    q_ac_max: u32,
    method: AnalyticMethod,
) -> Result<Vec<DiscrepancyRow>> {
    let mut rows = Vec::new();
    for q_ab in 0..=q_ab_max {
        for q_ac in 0..=q_ac_max {
            let exact = block_spectrum(params, q_ab, q_ac)?.eigenvalues;
            let cands = analytic_candidates(params, q_ab, q_ac, method)?;
            let analytic: Vec<f64> = cands.iter().map(Energy::re).collect();
            let deviation = exact
                .iter()
                .zip(&analytic)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            rows.push(DiscrepancyRow {
                q_ab,
                q_ac,
                exact,
                analytic,
                nonreal: cands.iter().filter(|e| !e.is_real()).count(),
                deviation,
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanPoint {
    pub q_ab: u32,
    pub q_ac: u32,
    pub g: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscrepancyScan {
    /// Ordered by `g`, then `q_ab`, then `q_ac`.
    pub points: Vec<ScanPoint>,
    /// `(g, max deviation over blocks)`.
    pub max_by_g: Vec<(f64, f64)>,
    /// Least-squares slope of `ln max deviation` against `ln g` over points
    /// with `g > 0` and nonzero deviation.
    pub slope: Option<f64>,
}

/// [`discrepancy_table`] repeated over a grid of couplings.
pub fn discrepancy_scan(
    params: &ModelParams,
    q_ab_max: u32,
    q_ac_max: u32,
    g_grid: &[f64],
    method: AnalyticMethod,
) -> Result<DiscrepancyScan> {
    let mut points = Vec::new();
    let mut max_by_g = Vec::new();
    for &g in g_grid {
        if !g.is_finite() {
            return Err(invalid("coupling grid must be finite"));
        }
        let table = discrepancy_table(&params.with_g(g), q_ab_max, q_ac_max, method)?;
        let worst = table.iter().map(|r| r.deviation).fold(0.0, f64::max);
        points.extend(table.iter().map(|r| ScanPoint {
            q_ab: r.q_ab,
            q_ac: r.q_ac,
            g,
            deviation: r.deviation,
        }));
        max_by_g.push((g, worst));
    }
    let slope = log_log_slope(&max_by_g);
    Ok(DiscrepancyScan {
        points,
        max_by_g,
        slope,
    })
}

/// Least-squares slope of `ln y` against `ln x` over positive pairs.
pub fn log_log_slope(pairs: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = pairs
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}
