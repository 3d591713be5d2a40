//! Closed-form spectra of the four algebraic diagonalization routes, their
//! transformation parameters, and coherent-state expectation values.
//!
//! Operator-valued parameters are evaluated at number-operator eigenvalues
//! (`n_a` for the su(1,1) side, `n_c` for the su(2) side) with the coupling
//! phase fixed so the effective coupling is real and positive.

use crate::error::{invalid, Error, Result};
use crate::C64;

/// Frequencies and coupling of the three-mode Hamiltonian (hbar = 1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub omega1: f64,
    pub omega2: f64,
    pub omega3: f64,
    pub g: f64,
}

impl ModelParams {
    pub fn new(omega1: f64, omega2: f64, omega3: f64, g: f64) -> Result<Self> {
        for (name, w) in [("omega1", omega1), ("omega2", omega2), ("omega3", omega3)] {
            if !(w.is_finite() && w > 0.0) {
                return Err(invalid(format!("{name} must be finite and positive, got {w}")));
            }
        }
        if !g.is_finite() {
            return Err(invalid("coupling g must be finite"));
        }
        Ok(Self {
            omega1,
            omega2,
            omega3,
            g,
        })
    }

    pub fn isotropic(omega: f64, g: f64) -> Result<Self> {
        Self::new(omega, omega, omega, g)
    }

    pub fn with_g(&self, g: f64) -> Self {
        Self { g, ..*self }
    }
}

/// An energy that may have left the real axis.
///
/// The su(1,1) route takes a square root of `(w2+w3)^2 - 4 g^2 n`; past the
/// threshold the result is carried as a complex value instead of an error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Energy {
    Real(f64),
    NonReal { re: f64, im: f64 },
}

impl Energy {
    /// `offset + factor * sqrt(radicand)`.
    fn from_root(radicand: f64, factor: f64, offset: f64) -> Self {
        if radicand >= 0.0 {
            Energy::Real(factor * radicand.sqrt() + offset)
        } else {
            Energy::NonReal {
                re: offset,
                im: factor * (-radicand).sqrt(),
            }
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Energy::Real(_))
    }

    pub fn real(&self) -> Option<f64> {
        match *self {
            Energy::Real(e) => Some(e),
            Energy::NonReal { .. } => None,
        }
    }

    pub fn re(&self) -> f64 {
        match *self {
            Energy::Real(e) => e,
            Energy::NonReal { re, .. } => re,
        }
    }

    pub fn im(&self) -> f64 {
        match *self {
            Energy::Real(_) => 0.0,
            Energy::NonReal { im, .. } => im,
        }
    }
}

/// `(n_a, n_l, m_n)`: pump photons, radial and angular labels of the
/// two-dimensional oscillator carried by modes `b`, `c`.
///
/// `m_n = n_c - n_b`. Negative `m_n` is accepted and uses the Bargmann
/// index `k = (|m_n| + 1) / 2`; for `m_n >= 0` this is the usual closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuantumNumbersSU11 {
    pub n_a: u32,
    pub n_l: u32,
    pub m_n: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuantumNumbersNM {
    pub n_c: u32,
    pub n_1: u32,
    pub n_2: u32,
}

/// `(n_c, n_l, m_n)` with `j = n_l + m_n/2` and `mu = m_n/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuantumNumbersSU2 {
    pub n_c: u32,
    pub n_l: u32,
    pub m_n: i64,
}

impl QuantumNumbersSU2 {
    pub fn validate(&self) -> Result<()> {
        let two_j = 2 * self.n_l as i64 + self.m_n;
        if two_j < self.m_n.abs() {
            return Err(invalid(format!(
                "invalid su(2) labels: j = {}/2 < |mu| = {}/2",
                two_j,
                self.m_n.abs()
            )));
        }
        Ok(())
    }
}

/// Which detuning sign the normal-mode spectrum uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DeltaSign {
    /// `(w2 - w1)`, the sign written in the closed-form spectrum.
    #[default]
    Paper,
    /// `Delta = w1 - w2`, the detuning used in the normal-mode construction.
    Alt,
}

impl DeltaSign {
    pub fn detuning(&self, params: &ModelParams) -> f64 {
        match self {
            DeltaSign::Paper => params.omega2 - params.omega1,
            DeltaSign::Alt => params.omega1 - params.omega2,
        }
    }
}

fn require_equal_idler_frequencies(params: &ModelParams) -> Result<f64> {
    if (params.omega2 - params.omega3).abs() > 1e-12 {
        return Err(Error::MethodInapplicable(format!(
            "Bogoliubov route needs omega2 == omega3, got {} and {}",
            params.omega2, params.omega3
        )));
    }
    Ok(params.omega2)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BogoliubovParams {
    /// Squeezing parameter; NaN outside the domain.
    pub r: f64,
    /// Mixing phase. Zero under the real-coupling convention.
    pub theta: f64,
    pub domain_ok: bool,
}

/// `r = 1/2 ln[(w + |g| sqrt(n_a)) / (w - |g| sqrt(n_a))]` for `w2 = w3 = w`.
pub fn bogoliubov_params(params: &ModelParams, n_a: u32) -> Result<BogoliubovParams> {
    let w = require_equal_idler_frequencies(params)?;
    let beta = params.g.abs() * (n_a as f64).sqrt();
    let domain_ok = beta < w;
    let r = if domain_ok {
        0.5 * ((w + beta) / (w - beta)).ln()
    } else {
        f64::NAN
    };
    Ok(BogoliubovParams {
        r,
        theta: 0.0,
        domain_ok,
    })
}

/// `sqrt(w^2 - g^2 n_a) (n_abar + n_d + 1) + w1 n_a - w`.
pub fn energy_bogoliubov(params: &ModelParams, n_a: u32, n_abar: u32, n_d: u32) -> Result<Energy> {
    let w = require_equal_idler_frequencies(params)?;
    let radicand = w * w - params.g * params.g * n_a as f64;
    let ladder = (n_abar + n_d) as f64 + 1.0;
    Ok(Energy::from_root(radicand, ladder, params.omega1 * n_a as f64 - w))
}

/// General spectrum from the su(1,1) tilt.
pub fn energy_su11(params: &ModelParams, q: &QuantumNumbersSU11) -> Energy {
    let s = params.omega2 + params.omega3;
    let radicand = s * s - 4.0 * params.g * params.g * q.n_a as f64;
    let k0 = q.n_l as f64 + q.m_n.unsigned_abs() as f64 / 2.0 + 0.5;
    let offset = params.omega1 * q.n_a as f64 + (params.omega3 - params.omega2) * q.m_n as f64 / 2.0 - s / 2.0;
    Energy::from_root(radicand, k0, offset)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TiltSu11 {
    /// Hyperbolic tilt angle; NaN outside the domain.
    pub theta: f64,
    pub domain_ok: bool,
}

/// `theta = artanh(2 |g| sqrt(n_a) / (w2 + w3))`.
pub fn tilt_params_su11(params: &ModelParams, n_a: u32) -> TiltSu11 {
    let ratio = 2.0 * params.g.abs() * (n_a as f64).sqrt() / (params.omega2 + params.omega3);
    let domain_ok = ratio < 1.0;
    TiltSu11 {
        theta: if domain_ok { ratio.atanh() } else { f64::NAN },
        domain_ok,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalModeCoeffs {
    pub x2: f64,
    pub y2: f64,
    pub omega: f64,
}

/// Squared norms of the normal-mode mixing coefficients at `c†c = n_c`,
/// with `Delta = w1 - w2` and `Omega = sqrt(Delta^2 + 4 g^2 n_c)`.
pub fn normal_mode_coeffs(params: &ModelParams, n_c: u32) -> NormalModeCoeffs {
    let delta = params.omega1 - params.omega2;
    let coupling = 4.0 * params.g * params.g * n_c as f64;
    let omega = (delta * delta + coupling).sqrt();
    if omega == 0.0 {
        return NormalModeCoeffs {
            x2: 1.0,
            y2: 0.0,
            omega,
        };
    }
    // |X|^2 = 2 g^2 n_c / (Omega (Omega - Delta)) = (Omega + Delta) / (2 Omega);
    // pick the form without cancellation for each sign of Delta.
    let (x2, y2) = if delta >= 0.0 {
        (
            (omega + delta) / (2.0 * omega),
            coupling / (2.0 * omega * (omega + delta)),
        )
    } else {
        (
            coupling / (2.0 * omega * (omega - delta)),
            (omega - delta) / (2.0 * omega),
        )
    };
    NormalModeCoeffs { x2, y2, omega }
}

/// Interaction-picture normal-mode spectrum
/// `1/2 sqrt(D^2 + 4 g^2 N_c)(N_1 - N_2) + D/2 (N_1 + N_2) + w3 N_c`.
pub fn energy_normal_mode(params: &ModelParams, q: &QuantumNumbersNM, sign: DeltaSign) -> f64 {
    let d = sign.detuning(params);
    let root = (d * d + 4.0 * params.g * params.g * q.n_c as f64).sqrt();
    0.5 * root * (q.n_1 as f64 - q.n_2 as f64) + 0.5 * d * (q.n_1 + q.n_2) as f64 + params.omega3 * q.n_c as f64
}

/// General spectrum from the su(2) tilt.
pub fn energy_su2(params: &ModelParams, q: &QuantumNumbersSU2) -> f64 {
    let d = params.omega2 - params.omega1;
    let root = (d * d + 4.0 * params.g * params.g * q.n_c as f64).sqrt();
    0.5 * root * q.m_n as f64
        + (params.omega2 + params.omega1) * (q.n_l as f64 + q.m_n as f64 / 2.0)
        + params.omega3 * q.n_c as f64
}

/// `theta = atan2(2 g sqrt(n_c), w2 - w1)`, zero when both vanish.
pub fn tilt_params_su2(params: &ModelParams, n_c: u32) -> f64 {
    let y = 2.0 * params.g * (n_c as f64).sqrt();
    let x = params.omega2 - params.omega1;
    if x == 0.0 && y == 0.0 {
        0.0
    } else {
        y.atan2(x)
    }
}

/// Expectation value of the su(1,1) Hamiltonian in a pump coherent state
/// times an su(1,1) number coherent state.
pub fn expval_su11(params: &ModelParams, alpha: C64, n: u32, m_n: i64) -> Energy {
    let s = params.omega2 + params.omega3;
    let a2 = alpha.norm_sqr();
    let radicand = s * s - 4.0 * params.g * params.g * a2;
    let offset = params.omega1 * a2 + (params.omega3 - params.omega2) * m_n as f64 / 2.0 - s / 2.0;
    Energy::from_root(radicand, 0.5 * (n as f64 + 1.0), offset)
}

/// Expectation value of the su(2) Hamiltonian in a `c`-mode coherent state
/// times an su(2) number coherent state.
pub fn expval_su2(params: &ModelParams, beta: C64, n_prime: u32, m_prime: i64) -> f64 {
    let d = params.omega2 - params.omega1;
    let b2 = beta.norm_sqr();
    let root = (d * d + 4.0 * params.g * params.g * b2).sqrt();
    0.5 * root * m_prime as f64 + 0.5 * (params.omega2 + params.omega1) * n_prime as f64 + params.omega3 * b2
}

/// `|alpha| = |beta| / sqrt(1 - (g/w)^2)`, the isotropic lowest-state
/// matching amplitude.
pub fn matching_alpha(g: f64, omega: f64, beta_abs: f64) -> Result<f64> {
    if omega.is_nan() || omega <= 0.0 || g.abs() >= omega {
        return Err(Error::Domain(format!(
            "matching requires |g| < omega, got g = {g}, omega = {omega}"
        )));
    }
    let r = g / omega;
    Ok(beta_abs / (1.0 - r * r).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn p(w1: f64, w2: f64, w3: f64, g: f64) -> ModelParams {
        ModelParams::new(w1, w2, w3, g).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(0.0, 1.0, 1.0, 0.1).is_err());
        assert!(ModelParams::new(1.0, -1.0, 1.0, 0.1).is_err());
        assert!(ModelParams::new(1.0, 1.0, 1.0, f64::NAN).is_err());
        assert!(ModelParams::new(1.0, 1.0, 1.0, -0.3).is_ok());
    }

    #[test]
    fn bogoliubov_parameter_examples() {
        let r = bogoliubov_params(&p(1.0, 2.0, 2.0, 1.0), 0).unwrap();
        assert_eq!(r.r, 0.0);
        let r = bogoliubov_params(&p(1.0, 2.0, 2.0, 1.0), 1).unwrap();
        assert!(r.domain_ok);
        assert_abs_diff_eq!(r.r, 0.5 * 3f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(r.r, 0.5493061443340549, epsilon = 1e-12);
        let r = bogoliubov_params(&p(1.0, 1.0, 1.0, 1.0), 1).unwrap();
        assert!(!r.domain_ok);
        assert!(matches!(
            bogoliubov_params(&p(1.0, 1.0, 2.0, 1.0), 1),
            Err(Error::MethodInapplicable(_))
        ));
    }

    #[test]
    fn bogoliubov_energy_examples() {
        let w = 1.7;
        for (n_a, n_abar, n_d) in [(0, 0, 0), (2, 1, 3), (4, 0, 2)] {
            let e = energy_bogoliubov(&p(w, w, w, 0.0), n_a, n_abar, n_d).unwrap();
            assert_abs_diff_eq!(e.real().unwrap(), w * (n_a + n_abar + n_d) as f64, epsilon = 1e-12);
        }
        let e = energy_bogoliubov(&p(1.0, 2.0, 2.0, 1.0), 1, 0, 0).unwrap();
        assert_abs_diff_eq!(e.real().unwrap(), 3f64.sqrt() - 1.0, epsilon = 1e-15);
        let e = energy_bogoliubov(&p(1.0, 1.0, 1.0, 2.0), 1, 0, 0).unwrap();
        assert!(!e.is_real());
        assert_abs_diff_eq!(e.im(), 3f64.sqrt(), epsilon = 1e-15);
        assert!(energy_bogoliubov(&p(1.0, 1.0, 2.0, 2.0), 1, 0, 0).is_err());
    }

    #[test]
    fn su11_energy_examples() {
        let w = 0.9;
        for n_a in 0..3 {
            for n_l in 0..3 {
                for m_n in 0..3 {
                    let q = QuantumNumbersSU11 { n_a, n_l, m_n };
                    let e = energy_su11(&p(w, w, w, 0.0), &q).real().unwrap();
                    assert_abs_diff_eq!(e, w * (n_a + 2 * n_l) as f64 + w * m_n as f64, epsilon = 1e-12);
                }
            }
        }
        let q = QuantumNumbersSU11 { n_a: 1, n_l: 0, m_n: 1 };
        let e = energy_su11(&p(1.0, 2.0, 3.0, 0.5), &q).real().unwrap();
        assert_abs_diff_eq!(e, 24f64.sqrt() - 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e, 3.898979485566356, epsilon = 1e-12);
    }

    #[test]
    fn su11_negative_angular_label_mirrors_idlers() {
        // swapping w2 <-> w3 and m_n -> -m_n leaves the energy unchanged
        let q = QuantumNumbersSU11 { n_a: 2, n_l: 1, m_n: 3 };
        let q_neg = QuantumNumbersSU11 { m_n: -3, ..q };
        let a = energy_su11(&p(1.1, 0.6, 1.9, 0.2), &q).re();
        let b = energy_su11(&p(1.1, 1.9, 0.6, 0.2), &q_neg).re();
        assert_abs_diff_eq!(a, b, epsilon = 1e-14);
    }

    #[test]
    fn tilt_su11_examples() {
        let prm = p(1.0, 1.0, 1.0, 0.5);
        assert_eq!(tilt_params_su11(&prm, 0).theta, 0.0);
        let t = tilt_params_su11(&prm, 1);
        assert_abs_diff_eq!(t.theta, 0.5f64.atanh(), epsilon = 1e-15);
        assert_abs_diff_eq!(t.theta, 0.5493061443340549, epsilon = 1e-12);
        assert!(!tilt_params_su11(&p(1.0, 1.0, 1.0, 1.0), 1).domain_ok);
    }

    #[test]
    fn normal_mode_coeff_examples() {
        let c = normal_mode_coeffs(&p(1.0, 1.0, 1.0, 0.4), 3);
        assert_abs_diff_eq!(c.x2, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(c.y2, 0.5, epsilon = 1e-15);
        // Delta = 3, g = 1, n_c = 4
        let c = normal_mode_coeffs(&p(4.0, 1.0, 1.0, 1.0), 4);
        assert_abs_diff_eq!(c.omega, 5.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.y2, 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(c.x2, 0.8, epsilon = 1e-15);
        // removable singularity: n_c = 0 with Delta > 0 is the identity map
        let c = normal_mode_coeffs(&p(2.0, 1.0, 1.0, 1.0), 0);
        assert_eq!((c.x2, c.y2), (1.0, 0.0));
        let c = normal_mode_coeffs(&p(1.0, 1.0, 1.0, 1.0), 0);
        assert_eq!((c.x2, c.y2, c.omega), (1.0, 0.0, 0.0));
    }

    #[test]
    fn normal_mode_energy_examples() {
        let w3 = 1.3;
        let q = QuantumNumbersNM { n_c: 2, n_1: 0, n_2: 0 };
        assert_abs_diff_eq!(
            energy_normal_mode(&p(1.0, 2.0, w3, 0.7), &q, DeltaSign::Paper),
            2.0 * w3
        );
        // g = 0, w2 > w1: (w2 - w1) N_1 + w3 N_c
        let q = QuantumNumbersNM { n_c: 1, n_1: 3, n_2: 2 };
        let e = energy_normal_mode(&p(1.0, 2.5, w3, 0.0), &q, DeltaSign::Paper);
        assert_abs_diff_eq!(e, 1.5 * 3.0 + w3, epsilon = 1e-14);
        let q = QuantumNumbersNM { n_c: 1, n_1: 1, n_2: 0 };
        let e = energy_normal_mode(&p(1.0, 1.0, w3, 0.5), &q, DeltaSign::Paper);
        assert_abs_diff_eq!(e, 0.5 + w3, epsilon = 1e-15);
        // the two sign conventions coincide at resonance and differ otherwise
        let e_alt = energy_normal_mode(&p(1.0, 1.0, w3, 0.5), &q, DeltaSign::Alt);
        assert_abs_diff_eq!(e, e_alt);
        let q = QuantumNumbersNM { n_c: 1, n_1: 2, n_2: 1 };
        let a = energy_normal_mode(&p(1.0, 2.0, w3, 0.5), &q, DeltaSign::Paper);
        let b = energy_normal_mode(&p(1.0, 2.0, w3, 0.5), &q, DeltaSign::Alt);
        // only D/2 (N_1 + N_2) changes sign: (1 - (-1))/2 * 3
        assert_abs_diff_eq!(a - b, 3.0, epsilon = 1e-14);
    }

    #[test]
    fn su2_energy_examples() {
        let w = 1.4;
        let w3 = 0.8;
        let q = QuantumNumbersSU2 { n_c: 3, n_l: 2, m_n: 1 };
        let e = energy_su2(&p(w, w, w3, 0.0), &q);
        assert_abs_diff_eq!(e, 2.0 * w * 2.5 + 3.0 * w3, epsilon = 1e-14);
        let q = QuantumNumbersSU2 { n_c: 5, n_l: 0, m_n: 0 };
        assert_abs_diff_eq!(energy_su2(&p(1.0, 2.0, w3, 1.0), &q), 5.0 * w3, epsilon = 1e-14);
        let q = QuantumNumbersSU2 { n_c: 4, n_l: 0, m_n: 1 };
        let e = energy_su2(&p(1.0, 2.0, w3, 1.0), &q);
        assert_abs_diff_eq!(e, 0.5 * 17f64.sqrt() + 1.5 + 4.0 * w3, epsilon = 1e-14);
        assert!(QuantumNumbersSU2 {
            n_c: 0,
            n_l: 0,
            m_n: -1
        }
        .validate()
        .is_err());
        assert!(QuantumNumbersSU2 {
            n_c: 0,
            n_l: 2,
            m_n: -2
        }
        .validate()
        .is_ok());
    }

    #[test]
    fn tilt_su2_examples() {
        assert_eq!(tilt_params_su2(&p(1.0, 2.0, 1.0, 0.3), 0), 0.0);
        assert_abs_diff_eq!(tilt_params_su2(&p(1.0, 1.0, 1.0, 0.3), 2), std::f64::consts::FRAC_PI_2);
        // 2 g sqrt(n_c) = 1, w2 - w1 = 1
        assert_abs_diff_eq!(
            tilt_params_su2(&p(1.0, 2.0, 1.0, 0.5), 1),
            std::f64::consts::FRAC_PI_4,
            epsilon = 1e-15
        );
        assert_eq!(tilt_params_su2(&p(1.0, 1.0, 1.0, 0.0), 3), 0.0);
    }

    #[test]
    fn expval_su11_examples() {
        let w = 1.2;
        let e = expval_su11(&p(w, w, w, 0.3), C64::new(0.0, 0.0), 0, 0);
        assert_abs_diff_eq!(e.real().unwrap(), 0.0, epsilon = 1e-15);
        let e = expval_su11(&p(1.0, 2.0, 2.0, 1.0), C64::new(1.0, 0.0), 0, 0);
        assert_abs_diff_eq!(e.real().unwrap(), 3f64.sqrt() - 1.0, epsilon = 1e-15);
        assert!(!expval_su11(&p(1.0, 1.0, 1.0, 2.0), C64::new(1.0, 0.0), 0, 0).is_real());
    }

    #[test]
    fn expval_su11_small_coupling_expansion() {
        // sqrt expansion: w sqrt(1 - x) = w - w x / 2 + O(x^2), x = g^2 |a|^2 / w^2
        let w = 1.5;
        let alpha = C64::new(0.6, 0.8);
        for n in 0..4 {
            for &g in &[0.01, 0.02, 0.04] {
                let exact = expval_su11(&p(w, w, w, g), alpha, n, 0).real().unwrap();
                let a2 = alpha.norm_sqr();
                let approx = (w - g * g * a2 / (2.0 * w)) * (n as f64 + 1.0) + w * (a2 - 1.0);
                let x = g * g * a2 / (w * w);
                assert!((exact - approx).abs() <= w * x * x * (n as f64 + 1.0));
            }
        }
    }

    #[test]
    fn expval_su2_examples() {
        let w = 1.3;
        assert_eq!(expval_su2(&p(w, w, w, 0.4), C64::new(0.0, 0.0), 0, 0), 0.0);
        let g = 0.4;
        let beta = C64::new(0.3, -1.1);
        for (n, m) in [(0, 0), (2, 1), (3, -2)] {
            let e = expval_su2(&p(w, w, w, g), beta, n, m);
            // isotropic form g|b| m' + w n' + w |b|^2
            let iso = g * beta.norm() * m as f64 + w * n as f64 + w * beta.norm_sqr();
            assert_abs_diff_eq!(e, iso, epsilon = 1e-14);
        }
        let w3 = 0.7;
        assert_abs_diff_eq!(
            expval_su2(&p(1.0, 1.0, w3, 2.0), C64::new(1.0, 0.0), 0, 1),
            2.0 + w3,
            epsilon = 1e-15
        );
    }

    #[test]
    fn matching_alpha_examples() {
        assert_eq!(matching_alpha(0.0, 1.0, 0.7).unwrap(), 0.7);
        assert_abs_diff_eq!(matching_alpha(0.6, 1.0, 1.0).unwrap(), 1.25, epsilon = 1e-15);
        assert!(matches!(matching_alpha(1.0, 1.0, 1.0), Err(Error::Domain(_))));
    }

    proptest! {
        #[test]
        fn su11_reduces_to_bogoliubov(
            w1 in 0.1f64..3.0, w in 0.1f64..3.0, g in -2.0f64..2.0,
            n_a in 0u32..8, n_l in 0u32..8, m_n in 0i64..8,
        ) {
            let prm = p(w1, w, w, g);
            let a = energy_su11(&prm, &QuantumNumbersSU11 { n_a, n_l, m_n });
            let n = 2 * n_l + m_n as u32;
            let b = energy_bogoliubov(&prm, n_a, n, 0).unwrap();
            prop_assert_eq!(a.is_real(), b.is_real());
            prop_assert!((a.re() - b.re()).abs() <= 1e-12 * (1.0 + b.re().abs()));
            prop_assert!((a.im() - b.im()).abs() <= 1e-12 * (1.0 + b.im().abs()));
        }

        #[test]
        fn normal_mode_norms_sum_to_one(
            w1 in 0.1f64..3.0, w2 in 0.1f64..3.0, g in -2.0f64..2.0, n_c in 0u32..50,
        ) {
            let c = normal_mode_coeffs(&p(w1, w2, 1.0, g), n_c);
            prop_assert!((c.x2 + c.y2 - 1.0).abs() <= 1e-12);
            prop_assert!(c.x2 >= 0.0 && c.y2 >= 0.0);
        }

        #[test]
        fn nonreal_flag_iff_negative_radicand(
            w2 in 0.1f64..3.0, w3 in 0.1f64..3.0, g in 0.0f64..3.0, n_a in 0u32..10,
        ) {
            let prm = p(1.0, w2, w3, g);
            let e = energy_su11(&prm, &QuantumNumbersSU11 { n_a, n_l: 0, m_n: 0 });
            let s = w2 + w3;
            prop_assert_eq!(!e.is_real(), s * s < 4.0 * g * g * n_a as f64);
        }

        #[test]
        fn su11_monotone_in_radial_label(
            w1 in 0.1f64..3.0, w2 in 0.1f64..3.0, w3 in 0.1f64..3.0, g in 0.0f64..0.5,
            n_a in 0u32..4, n_l in 0u32..10, m_n in -4i64..5,
        ) {
            let prm = p(w1, w2, w3, g);
            let q = QuantumNumbersSU11 { n_a, n_l, m_n };
            let e0 = energy_su11(&prm, &q);
            let e1 = energy_su11(&prm, &QuantumNumbersSU11 { n_l: n_l + 1, ..q });
            if let (Some(a), Some(b)) = (e0.real(), e1.real()) {
                prop_assert!(b >= a);
            }
        }
    }
}
