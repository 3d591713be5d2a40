//! Real-space wavefunctions of the oscillators and of the number coherent
//! states.
//!
//! Two-dimensional functions use `(rho, phi)` with
//!
//! ```text
//! psi_{n_l,m}(rho, phi) = (-1)^n_l sqrt(n_l!/(n_l+|m|)!) / sqrt(pi)
//!                         e^{i m phi} rho^|m| L_{n_l}^|m|(rho²) e^{-rho²/2}
//! ```
//!
//! normalized against `rho drho dphi`.

mod poly;
mod quadrature;

pub use poly::{assoc_laguerre, hermite};
pub use quadrature::{
    gauss_hermite, gauss_legendre, NormReport, Quadrature, DEFAULT_N_PHI, DEFAULT_N_RHO, DEFAULT_RHO_MAX, TAIL_WARNING,
};

use std::f64::consts::PI;

use crate::algebra::{self, SU11Label, SU2Label, Truncation};
use crate::error::{invalid, Error, Result};
use crate::special::ln_factorial;
use crate::C64;

/// Sample points of a wavefunction.
#[derive(Clone, Debug, PartialEq)]
pub enum GridSpec {
    Cartesian {
        x: Vec<f64>,
    },
    /// Points are all `(rho, phi)` pairs, `rho` outer.
    Polar {
        rho: Vec<f64>,
        phi: Vec<f64>,
    },
}

impl GridSpec {
    /// `n` evenly spaced points on `[lo, hi]`.
    pub fn cartesian(lo: f64, hi: f64, n: usize) -> Result<Self> {
        let g = GridSpec::Cartesian { x: linspace(lo, hi, n) };
        g.validate()?;
        Ok(g)
    }

    /// `n_rho` evenly spaced radii on `[rho_lo, rho_hi]` times `n_phi`
    /// evenly spaced angles on `[0, 2 pi)`.
    pub fn polar(rho_lo: f64, rho_hi: f64, n_rho: usize, n_phi: usize) -> Result<Self> {
        let phi = (0..n_phi).map(|k| 2.0 * PI * k as f64 / n_phi as f64).collect();
        let g = GridSpec::Polar {
            rho: linspace(rho_lo, rho_hi, n_rho),
            phi,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let axes: Vec<&Vec<f64>> = match self {
            GridSpec::Cartesian { x } => vec![x],
            GridSpec::Polar { rho, phi } => {
                if rho.first().is_some_and(|r| *r < 0.0) {
                    return Err(invalid("radii must be nonnegative"));
                }
                vec![rho, phi]
            }
        };
        for axis in axes {
            if axis.len() < 2 {
                return Err(invalid("every grid axis needs at least two points"));
            }
            if axis.iter().any(|v| !v.is_finite()) || axis.windows(2).any(|w| w[0] >= w[1]) {
                return Err(invalid("grid points must be finite and strictly increasing"));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        match self {
            GridSpec::Cartesian { x } => x.len(),
            GridSpec::Polar { rho, phi } => rho.len() * phi.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> Vec<Coord> {
        match self {
            GridSpec::Cartesian { x } => x.iter().map(|&x| Coord::Cartesian { x }).collect(),
            GridSpec::Polar { rho, phi } => rho
                .iter()
                .flat_map(|&r| phi.iter().map(move |&p| Coord::Polar { rho: r, phi: p }))
                .collect(),
        }
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![lo; n];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Coord {
    Cartesian { x: f64 },
    Polar { rho: f64, phi: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveSample {
    pub coord: Coord,
    pub value: C64,
}

fn polar_only(grid: &GridSpec) -> Result<()> {
    grid.validate()?;
    match grid {
        GridSpec::Polar { .. } => Ok(()),
        GridSpec::Cartesian { .. } => Err(invalid("two-dimensional wavefunctions need a polar grid")),
    }
}

fn sample(grid: &GridSpec, f: impl Fn(f64, f64) -> C64) -> Vec<WaveSample> {
    grid.points()
        .into_iter()
        .map(|coord| {
            let value = match coord {
                Coord::Polar { rho, phi } => f(rho, phi),
                Coord::Cartesian { .. } => unreachable!("checked polar"),
            };
            WaveSample { coord, value }
        })
        .collect()
}

/// Normalized one-dimensional oscillator eigenfunction.
pub fn ho1d(n: u32, x: f64) -> f64 {
    // normalized recurrence keeps every intermediate O(1)
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-x * x / 2.0).exp();
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Two-dimensional oscillator eigenfunction; negative `m_n` gives the
/// complex conjugate angular factor.
pub fn ho2d(n_l: u32, m_n: i64, rho: f64, phi: f64) -> C64 {
    let m = m_n.unsigned_abs() as u32;
    let radial = assoc_laguerre(n_l, m, rho * rho);
    let sign = if n_l.is_multiple_of(2) { 1.0 } else { -1.0 };
    let ln_mag = 0.5 * (ln_factorial(n_l as u64) - ln_factorial((n_l + m) as u64) - PI.ln()) - rho * rho / 2.0
        + if m > 0 { m as f64 * rho.ln() } else { 0.0 };
    C64::from_polar(sign * radial * ln_mag.exp(), m_n as f64 * phi)
}

/// `rho^m' L_{n'}^{m'}(rho²)` for a possibly negative integer order `m'`,
/// with the reflection `L_n^{-k}(x) = (-x)^k (n-k)!/n! L_{n-k}^k(x)`.
fn radial_general(n: u32, m: i64, rho: f64) -> f64 {
    let x = rho * rho;
    if m >= 0 {
        return rho.powi(m as i32) * assoc_laguerre(n, m as u32, x);
    }
    let k = m.unsigned_abs() as u32;
    if k > n {
        return 0.0;
    }
    let ratio = (ln_factorial((n - k) as u64) - ln_factorial(n as u64)).exp();
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * ratio * rho.powi(k as i32) * assoc_laguerre(n - k, k, x)
}

fn check_disk(zeta: C64) -> Result<()> {
    if !(zeta.re.is_finite() && zeta.im.is_finite()) || zeta.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "|zeta| = {} is not inside the unit disk",
            zeta.norm()
        )));
    }
    Ok(())
}

/// Number coherent state `D(xi)|n_l, m_n>` of the su(1,1) oscillator in
/// closed form, `zeta` being the normal-form parameter of `D`.
pub fn pncs_wavefunction_su11(n_l: u32, m_n: i64, zeta: C64, grid: &GridSpec) -> Result<Vec<WaveSample>> {
    polar_only(grid)?;
    check_disk(zeta)?;
    let m = m_n.unsigned_abs() as u32;
    let (n, mf) = (n_l as f64, m as f64);
    let one = C64::new(1.0, 0.0);
    let shrink = 1.0 - zeta.norm_sqr();
    let ln_up = (one + zeta.conj()).ln();
    let ln_down = (one + zeta).ln();
    let width = (one - zeta) / (one + zeta);
    let scale = shrink / (one + zeta).norm_sqr();
    let constant =
        0.5 * (ln_factorial(n_l as u64) - ln_factorial((n_l + m) as u64) - PI.ln()) + (mf + 1.0) / 2.0 * shrink.ln();
    let sign = if n_l.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sample(grid, |rho, phi| {
        let x = rho * rho;
        let mut e = C64::new(constant, m_n as f64 * phi) + ln_up * n - ln_down * (n + mf + 1.0) - width * (x / 2.0);
        if m > 0 {
            e += rho.ln() * mf;
        }
        e.exp() * (sign * assoc_laguerre(n_l, m, x * scale))
    }))
}

/// Series form of [`pncs_wavefunction_su11`]: coherent-state amplitudes
/// times oscillator eigenfunctions.
pub fn pncs_wavefunction_su11_series(n_l: u32, m_n: i64, zeta: C64, grid: &GridSpec) -> Result<Vec<WaveSample>> {
    polar_only(grid)?;
    check_disk(zeta)?;
    let xi = if zeta.norm() == 0.0 {
        C64::new(0.0, 0.0)
    } else {
        zeta / zeta.norm() * zeta.norm().atanh()
    };
    let amps = algebra::pncs_su11(SU11Label::from_sector(m_n, n_l), xi, Truncation::Adaptive)?;
    Ok(sample(grid, |rho, phi| {
        amps.values
            .iter()
            .enumerate()
            .map(|(k, a)| a * ho2d(k as u32, m_n, rho, phi))
            .sum()
    }))
}

/// su(2) multiplet of the oscillator state `(n_l, m_n)`.
fn su2_label(n_l: u32, m_n: i64) -> Result<SU2Label> {
    let two_j = 2 * n_l as i64 + m_n.abs();
    let two_j = u32::try_from(two_j).map_err(|_| invalid("multiplet too large"))?;
    SU2Label::new(two_j, m_n)
}

/// Number coherent state of the su(2) oscillator from the explicit double
/// sum over lowering and raising orders. `zeta` is the normal-form
/// parameter, `eta = ln(1 + |zeta|²)`.
pub fn pncs_wavefunction_su2(n_l: u32, m_n: i64, zeta: C64, grid: &GridSpec) -> Result<Vec<WaveSample>> {
    polar_only(grid)?;
    if !(zeta.re.is_finite() && zeta.im.is_finite()) {
        return Err(invalid("zeta must be finite"));
    }
    let label = su2_label(n_l, m_n)?;
    let (jp, jm) = (label.j_plus_mu(), label.j_minus_mu());
    let eta = zeta.norm_sqr().ln_1p();
    struct Term {
        coeff: C64,
        n_prime: u32,
        m_prime: i64,
    }
    let mut terms = Vec::new();
    for n in 0..=jp {
        for s in 0..=(jm + n) {
            let n_prime = jm + n - s;
            let m_prime = m_n - 2 * n as i64 + 2 * s as i64;
            let ln_mag = -ln_factorial(s as u64) - ln_factorial(n as u64)
                + eta / 2.0 * (m_n - 2 * n as i64) as f64
                + ln_factorial((jm + n) as u64)
                - ln_factorial((jp - n) as u64)
                + 0.5 * (ln_factorial(jp as u64) - ln_factorial(jm as u64));
            let power = zeta.powu(s) * (-zeta.conj()).powu(n);
            let sign = if (n_prime) % 2 == 0 { 1.0 } else { -1.0 };
            terms.push(Term {
                coeff: power * (sign * ln_mag.exp()),
                n_prime,
                m_prime,
            });
        }
    }
    Ok(sample(grid, |rho, phi| {
        let gauss = (-rho * rho / 2.0).exp() / PI.sqrt();
        terms
            .iter()
            .map(|t| t.coeff * C64::from_polar(1.0, t.m_prime as f64 * phi) * radial_general(t.n_prime, t.m_prime, rho))
            .sum::<C64>()
            * gauss
    }))
}

/// Series form of [`pncs_wavefunction_su2`]: multiplet amplitudes times
/// oscillator eigenfunctions.
pub fn pncs_wavefunction_su2_series(n_l: u32, m_n: i64, zeta: C64, grid: &GridSpec) -> Result<Vec<WaveSample>> {
    polar_only(grid)?;
    let label = su2_label(n_l, m_n)?;
    let xi = if zeta.norm() == 0.0 {
        C64::new(0.0, 0.0)
    } else {
        zeta / zeta.norm() * zeta.norm().atan()
    };
    let amps = algebra::pncs_su2(label, xi)?;
    let two_j = label.two_j() as i64;
    Ok(sample(grid, |rho, phi| {
        amps.values
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let m_prime = 2 * i as i64 - two_j;
                let n_prime = ((two_j - m_prime.abs()) / 2) as u32;
                a * ho2d(n_prime, m_prime, rho, phi)
            })
            .sum()
    }))
}

/// Samples of [`ho1d`] or [`ho2d`] on a grid.
pub fn sample_oscillator(n_l: u32, m_n: i64, grid: &GridSpec) -> Result<Vec<WaveSample>> {
    grid.validate()?;
    Ok(grid
        .points()
        .into_iter()
        .map(|coord| WaveSample {
            coord,
            value: match coord {
                Coord::Cartesian { x } => C64::new(ho1d(n_l, x), 0.0),
                Coord::Polar { rho, phi } => ho2d(n_l, m_n, rho, phi),
            },
        })
        .collect())
}
