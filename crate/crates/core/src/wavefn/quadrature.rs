//! Gauss rules and norm checks on sampled wavefunctions.

use std::f64::consts::PI;

use super::{Coord, GridSpec, WaveSample};
use crate::error::{invalid, Result};
use crate::C64;

/// Tail mass above which a [`NormReport`] carries a warning.
pub const TAIL_WARNING: f64 = 1e-9;

/// Default polar rule: radius and node counts.
pub const DEFAULT_RHO_MAX: f64 = 12.0;
pub const DEFAULT_N_RHO: usize = 96;
pub const DEFAULT_N_PHI: usize = 128;

/// Nodes and weights of the `n`-point Gauss-Hermite rule for `exp(-x²)`,
/// nodes ascending.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let pim4 = PI.powf(-0.25);
    let m = n.div_ceil(2);
    let nf = n as f64;
    let mut z = 0.0f64;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            // orthonormal recurrence
            let (mut p1, mut p2) = (pim4, 0.0);
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                p1 = z * (2.0 / j as f64).sqrt() * p2 - ((j as f64 - 1.0) / j as f64).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    let mut pairs: Vec<(f64, f64)> = x.into_iter().zip(w).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[a, b]`,
/// nodes ascending.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j as f64 - 1.0) * z * p2 - (j as f64 - 1.0) * p3) / j as f64;
            }
            pp = nf * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 {
                break;
            }
        }
        x[i] = mid - half * z;
        x[n - 1 - i] = mid + half * z;
        w[i] = 2.0 * half / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Result of a quadrature norm check.
#[derive(Clone, Debug, PartialEq)]
pub struct NormReport {
    /// `∫|psi|²`.
    pub norm: f64,
    /// Estimated mass outside the grid.
    pub tail: f64,
    pub warning: Option<String>,
}

impl NormReport {
    fn new(norm: f64, tail: f64) -> Self {
        let warning =
            (tail > TAIL_WARNING).then(|| format!("grid does not cover the support: estimated tail mass {tail:e}"));
        Self { norm, tail, warning }
    }
}

/// A grid with quadrature weights for `∫ dx` or `∫ rho drho dphi`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadrature {
    pub grid: GridSpec,
    /// One weight per grid point in [`GridSpec::points`] order.
    pub weights: Vec<f64>,
    kind: Kind,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Kind {
    Hermite,
    Polar { rho_max: f64 },
}

impl Quadrature {
    /// Gauss-Hermite rule on the real line; weights include `exp(x²)`.
    pub fn hermite(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(invalid("need at least two nodes"));
        }
        let (x, w) = gauss_hermite(n);
        let weights = x.iter().zip(&w).map(|(x, w)| w * (x * x).exp()).collect();
        Ok(Self {
            grid: GridSpec::Cartesian { x },
            weights,
            kind: Kind::Hermite,
        })
    }

    /// Gauss-Legendre in `rho` on `[0, rho_max]` (weights include `rho`) and
    /// the periodic trapezoid rule in `phi`.
    pub fn polar(rho_max: f64, n_rho: usize, n_phi: usize) -> Result<Self> {
        if !(rho_max.is_finite() && rho_max > 0.0) || n_rho < 2 || n_phi < 2 {
            return Err(invalid("polar rule needs rho_max > 0 and at least two nodes per axis"));
        }
        let (rho, wr) = gauss_legendre(n_rho, 0.0, rho_max);
        let phi: Vec<f64> = (0..n_phi).map(|k| 2.0 * PI * k as f64 / n_phi as f64).collect();
        let wp = 2.0 * PI / n_phi as f64;
        let mut weights = Vec::with_capacity(n_rho * n_phi);
        for (r, w) in rho.iter().zip(&wr) {
            weights.extend(std::iter::repeat_n(w * r * wp, n_phi));
        }
        Ok(Self {
            grid: GridSpec::Polar { rho, phi },
            weights,
            kind: Kind::Polar { rho_max },
        })
    }

    /// The default polar rule.
    pub fn default_polar() -> Self {
        Self::polar(DEFAULT_RHO_MAX, DEFAULT_N_RHO, DEFAULT_N_PHI).expect("valid defaults")
    }

    /// `sum_i w_i conj(a_i) b_i`.
    pub fn inner(&self, a: &[C64], b: &[C64]) -> Result<C64> {
        if a.len() != self.weights.len() || b.len() != self.weights.len() {
            return Err(invalid("sample count does not match the quadrature grid"));
        }
        Ok(self
            .weights
            .iter()
            .zip(a.iter().zip(b))
            .map(|(w, (x, y))| x.conj() * y * *w)
            .sum())
    }

    /// Norm of samples taken on [`Self::grid`].
    pub fn norm(&self, samples: &[WaveSample]) -> Result<NormReport> {
        let values: Vec<C64> = samples.iter().map(|s| s.value).collect();
        let norm = self.inner(&values, &values)?.re;
        let tail = match (&self.kind, &self.grid) {
            (Kind::Hermite, _) => {
                let last = values.len() - 1;
                (self.weights[0] * values[0].norm_sqr()).max(self.weights[last] * values[last].norm_sqr())
            }
            (Kind::Polar { .. }, GridSpec::Polar { phi, .. }) => {
                // Gaussian tail beyond the outermost ring: pi <|psi|²>
                let ring = &values[values.len() - phi.len()..];
                PI * ring.iter().map(|z| z.norm_sqr()).sum::<f64>() / phi.len() as f64
            }
            _ => unreachable!("kind matches grid"),
        };
        Ok(NormReport::new(norm, tail))
    }

    /// Norm of a function sampled on the grid; the tail is estimated from the
    /// function at the outer radius.
    pub fn norm_of(&self, f: impl Fn(Coord) -> C64) -> NormReport {
        let values: Vec<C64> = self.grid.points().into_iter().map(&f).collect();
        let norm = self.inner(&values, &values).expect("sampled on grid").re;
        let tail = match (&self.kind, &self.grid) {
            (Kind::Polar { rho_max }, GridSpec::Polar { phi, .. }) => {
                PI * phi
                    .iter()
                    .map(|&p| f(Coord::Polar { rho: *rho_max, phi: p }).norm_sqr())
                    .sum::<f64>()
                    / phi.len() as f64
            }
            _ => {
                let last = values.len() - 1;
                (self.weights[0] * values[0].norm_sqr()).max(self.weights[last] * values[last].norm_sqr())
            }
        };
        NormReport::new(norm, tail)
    }
}
