//! Jordan-Schwinger realizations of su(1,1) and su(2), their displacement
//! operators and number coherent states.
//!
//! The su(1,1) carrier is a two-mode space `(b, c)`:
//!
//! ```text
//! K0 = (b†b + c†c + 1)/2   K+ = b†c†   K- = b c   N_d = c†c - b†b
//! ```
//!
//! A sector `N_d = m` carries the discrete series with `k = (|m| + 1)/2`
//! and `|k, n>` is the state with `min(n_b, n_c) = n`.
//!
//! The su(2) carrier is `(a, b)`:
//!
//! ```text
//! J0 = (a†a - b†b)/2   J+ = a†b   J- = b†a   N_s = a†a + b†b
//! ```
//!
//! with `|j, mu>` the state `n_a = j + mu`, `n_b = j - mu`.

use std::collections::BTreeMap;

use crate::diag::matrix_exponential;
use crate::error::{invalid, Error, Result};
use crate::fock::{BasisSpec, Mode, SparseOperator};
use crate::special::{ln_factorial, ln_gamma_pos};
use crate::{ComplexMatrix, C64};

const PNCS_TAIL: f64 = 1e-14;
const PNCS_MAX_TERMS: usize = 500;
const PNCS_NORM_DEFECT: f64 = 1e-12;
/// Rounding in the alternating double sum grows with `n` and `|xi|`; at
/// `|xi| = 1`, `n = 8` it reaches a few `1e-12`.
const PNCS_ROUNDING_DEFECT: f64 = 1e-10;
const MAX_DIRECT_FACTORIAL: u32 = 170;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    Su11,
    Su2,
}

/// Discrete-series label `|k, n>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SU11Label {
    pub k: f64,
    pub n: u32,
}

impl SU11Label {
    pub fn new(k: f64, n: u32) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(invalid(format!("Bargmann index must be positive, got {k}")));
        }
        Ok(Self { k, n })
    }

    /// Label of the state `min(n_b, n_c) = n` in the sector `N_d = m_nd`.
    pub fn from_sector(m_nd: i64, n: u32) -> Self {
        Self {
            k: (m_nd.unsigned_abs() as f64 + 1.0) / 2.0,
            n,
        }
    }
}

/// Occupations `(n_b, n_c)` of `|k, n>` in the sector `N_d = m_nd`.
pub fn su11_occupations(m_nd: i64, n: u32) -> (u32, u32) {
    let shift = m_nd.unsigned_abs() as u32;
    if m_nd >= 0 {
        (n, n + shift)
    } else {
        (n + shift, n)
    }
}

/// Dicke label `|j, mu>` stored as `(2j, 2mu)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SU2Label {
    two_j: u32,
    two_mu: i64,
}

impl SU2Label {
    pub fn new(two_j: u32, two_mu: i64) -> Result<Self> {
        if two_mu.unsigned_abs() > two_j as u64 || (two_j as i64 - two_mu) % 2 != 0 {
            return Err(invalid(format!(
                "mu = {}/2 is not a member of the j = {}/2 multiplet",
                two_mu, two_j
            )));
        }
        Ok(Self { two_j, two_mu })
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn two_mu(&self) -> i64 {
        self.two_mu
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn mu(&self) -> f64 {
        self.two_mu as f64 / 2.0
    }

    /// `j + mu`, the `a` occupation.
    pub fn j_plus_mu(&self) -> u32 {
        ((self.two_j as i64 + self.two_mu) / 2) as u32
    }

    /// `j - mu`, the `b` occupation.
    pub fn j_minus_mu(&self) -> u32 {
        ((self.two_j as i64 - self.two_mu) / 2) as u32
    }
}

/// Parameters of `D(xi) = exp(zeta X+) exp(eta X0) exp(-zeta* X-)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DisplacementParams {
    pub xi: C64,
    pub zeta: C64,
    pub eta: f64,
}

impl DisplacementParams {
    /// su(1,1): `zeta = tanh|xi| xi/|xi|`, `eta = -2 ln cosh|xi|`.
    /// su(2): `zeta = tan|xi| xi/|xi|`, `eta = -2 ln |cos|xi||`.
    pub fn new(group: Group, xi: C64) -> Result<Self> {
        check_xi(xi)?;
        let r = xi.norm();
        if r == 0.0 {
            return Ok(Self {
                xi,
                zeta: C64::new(0.0, 0.0),
                eta: 0.0,
            });
        }
        let unit = xi / r;
        Ok(match group {
            Group::Su11 => Self {
                xi,
                zeta: unit * r.tanh(),
                eta: -2.0 * ln_cosh(r),
            },
            Group::Su2 => Self {
                xi,
                zeta: unit * r.tan(),
                eta: -2.0 * r.cos().abs().ln(),
            },
        })
    }
}

fn ln_cosh(x: f64) -> f64 {
    let x = x.abs();
    x + (-2.0 * x).exp().ln_1p() - std::f64::consts::LN_2
}

fn check_xi(xi: C64) -> Result<()> {
    if xi.re.is_finite() && xi.im.is_finite() {
        Ok(())
    } else {
        Err(invalid("xi must be finite"))
    }
}

/// Coefficients of the closed-form similarity transforms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BCHCoefficients {
    /// `alpha = sinh 2|xi|`, `beta = (cosh 2|xi| - 1)/2`.
    Su11 { alpha: f64, beta: f64 },
    /// `delta = sin 2|xi|`, `epsilon = (cos 2|xi| - 1)/2`.
    Su2 { delta: f64, epsilon: f64 },
}

impl BCHCoefficients {
    pub fn new(group: Group, xi: C64) -> Self {
        let r = xi.norm();
        match group {
            Group::Su11 => BCHCoefficients::Su11 {
                alpha: (2.0 * r).sinh(),
                beta: r.sinh().powi(2),
            },
            Group::Su2 => BCHCoefficients::Su2 {
                delta: (2.0 * r).sin(),
                epsilon: -r.sin().powi(2),
            },
        }
    }
}

/// Generators of one realization on a two-mode basis.
#[derive(Clone, Debug)]
pub struct Generators {
    pub group: Group,
    pub modes: (Mode, Mode),
    pub cutoffs: (u32, u32),
    /// Occupations `(n_first, n_second)` of the rows.
    pub states: Vec<(u32, u32)>,
    /// `K0` or `J0`.
    pub cartan: SparseOperator,
    /// `K+` or `J+`.
    pub raising: SparseOperator,
    /// `K-` or `J-`.
    pub lowering: SparseOperator,
    /// `N_d` or `N_s`.
    pub number: SparseOperator,
}

impl Generators {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    /// Eigenvalue of the number operator on each row.
    pub fn number_values(&self) -> Vec<i64> {
        self.states
            .iter()
            .map(|&(n1, n2)| match self.group {
                Group::Su11 => n2 as i64 - n1 as i64,
                Group::Su2 => n1 as i64 + n2 as i64,
            })
            .collect()
    }

    /// Rows grouped by number-operator eigenvalue, ascending.
    pub fn sectors(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut map: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, v) in self.number_values().into_iter().enumerate() {
            map.entry(v).or_default().push(i);
        }
        map
    }

    /// Rows on which the truncated algebra relations hold: both modes below
    /// their cutoff for su(1,1), complete multiplets for su(2).
    pub fn interior(&self) -> Vec<usize> {
        let (c1, c2) = self.cutoffs;
        (0..self.dim())
            .filter(|&i| {
                let (n1, n2) = self.states[i];
                match self.group {
                    Group::Su11 => n1 < c1 && n2 < c2,
                    Group::Su2 => n1 + n2 <= c1.min(c2),
                }
            })
            .collect()
    }

    /// Generators restricted to the given rows, in the given order.
    pub fn restrict(&self, rows: &[usize]) -> Result<Self> {
        Ok(Self {
            group: self.group,
            modes: self.modes,
            cutoffs: self.cutoffs,
            states: rows.iter().map(|&i| self.states[i]).collect(),
            cartan: self.cartan.restrict(rows)?,
            raising: self.raising.restrict(rows)?,
            lowering: self.lowering.restrict(rows)?,
            number: self.number.restrict(rows)?,
        })
    }

    /// Generators on the eigenspace `number = value`, ordered by ascending
    /// cartan eigenvalue.
    pub fn sector(&self, value: i64) -> Result<Self> {
        let mut rows = self.sectors().remove(&value).unwrap_or_default();
        let cartan = self.cartan.diagonal_values();
        rows.sort_by(|&a, &b| cartan[a].total_cmp(&cartan[b]));
        self.restrict(&rows)
    }

    /// Row holding the given occupations.
    pub fn index_of(&self, n1: u32, n2: u32) -> Option<usize> {
        self.states.iter().position(|&s| s == (n1, n2))
    }
}

fn two_mode(basis: BasisSpec) -> Result<((Mode, Mode), u32, u32)> {
    basis.validate()?;
    match basis {
        BasisSpec::TwoModeTruncated { modes, cut_1, cut_2 } => Ok((modes, cut_1, cut_2)),
        other => Err(invalid(format!(
            "Jordan-Schwinger generators need a two-mode basis, got {other:?}"
        ))),
    }
}

fn build(
    group: Group,
    basis: BasisSpec,
    cartan: impl Fn(u32, u32) -> f64,
    number: impl Fn(u32, u32) -> f64,
    raise: impl Fn(u32, u32) -> Option<((u32, u32), f64)>,
) -> Result<Generators> {
    let (modes, c1, c2) = two_mode(basis)?;
    let states: Vec<(u32, u32)> = basis
        .states()
        .iter()
        .map(|o| (o.get(modes.0), o.get(modes.1)))
        .collect();
    let index = |n1: u32, n2: u32| -> Option<usize> {
        (n1 <= c1 && n2 <= c2).then(|| n1 as usize * (c2 as usize + 1) + n2 as usize)
    };
    let mut up = Vec::new();
    for (col, &(n1, n2)) in states.iter().enumerate() {
        if let Some(((t1, t2), amp)) = raise(n1, n2) {
            if let Some(row) = index(t1, t2) {
                up.push((row, col, C64::new(amp, 0.0)));
            }
        }
    }
    let raising = SparseOperator::from_triplets(states.len(), up, false)?;
    let lowering = raising.adjoint();
    let cartan = SparseOperator::diagonal(&states.iter().map(|&(a, b)| cartan(a, b)).collect::<Vec<_>>());
    let number = SparseOperator::diagonal(&states.iter().map(|&(a, b)| number(a, b)).collect::<Vec<_>>());
    Ok(Generators {
        group,
        modes,
        cutoffs: (c1, c2),
        states,
        cartan,
        raising,
        lowering,
        number,
    })
}

/// `K0, K+, K-, N_d` on a two-mode basis; the first mode plays `b`, the
/// second `c`.
pub fn su11_generators(basis: BasisSpec) -> Result<Generators> {
    build(
        Group::Su11,
        basis,
        |b, c| (b as f64 + c as f64 + 1.0) / 2.0,
        |b, c| c as f64 - b as f64,
        |b, c| Some(((b + 1, c + 1), ((b as f64 + 1.0) * (c as f64 + 1.0)).sqrt())),
    )
}

/// `J0, J+, J-, N_s` on a two-mode basis; the first mode plays `a`, the
/// second `b`.
pub fn su2_generators(basis: BasisSpec) -> Result<Generators> {
    build(
        Group::Su2,
        basis,
        |a, b| (a as f64 - b as f64) / 2.0,
        |a, b| a as f64 + b as f64,
        |a, b| (b > 0).then(|| ((a + 1, b - 1), ((a as f64 + 1.0) * b as f64).sqrt())),
    )
}

/// Quadratic Casimir `K0² - (K+K- + K-K+)/2` or `J0² + (J+J- + J-J+)/2`.
pub fn casimir(gens: &Generators) -> Result<SparseOperator> {
    let sq = gens.cartan.matmul(&gens.cartan)?;
    let sym = gens
        .raising
        .matmul(&gens.lowering)?
        .add(&gens.lowering.matmul(&gens.raising)?)?;
    let sign = match gens.group {
        Group::Su11 => -0.5,
        Group::Su2 => 0.5,
    };
    sq.axpy(C64::new(sign, 0.0), &sym)
}

/// `exp(xi X+ - xi* X-)` evaluated by dense exponentiation of each
/// number-operator sector.
pub fn displacement_exact(gens: &Generators, xi: C64) -> Result<ComplexMatrix> {
    check_xi(xi)?;
    let generator = gens.raising.scale(xi).sub(&gens.lowering.scale(xi.conj()))?;
    let mut out = ComplexMatrix::zeros(gens.dim(), gens.dim());
    for rows in gens.sectors().values() {
        let local = generator.restrict(rows)?.to_dense();
        let e = matrix_exponential(&local)?;
        scatter(&mut out, rows, &e);
    }
    Ok(out)
}

fn scatter(out: &mut ComplexMatrix, rows: &[usize], block: &ComplexMatrix) {
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in rows.iter().enumerate() {
            out[(r, c)] = block[(i, j)];
        }
    }
}

/// `exp(zeta X+) exp(eta X0) exp(-zeta* X-)`; the ladder exponentials are
/// terminating series on the truncated space.
pub fn displacement_normal_order(gens: &Generators, xi: C64) -> Result<ComplexMatrix> {
    let p = DisplacementParams::new(gens.group, xi)?;
    let r = xi.norm();
    // exp(eta X0) has eigenvalues c^(-2 x0) with 2 x0 an integer
    let c = match gens.group {
        Group::Su11 => {
            if p.zeta.norm() >= 1.0 {
                return Err(Error::Domain(format!(
                    "|zeta| = {} is not inside the unit disk",
                    p.zeta.norm()
                )));
            }
            r.cosh()
        }
        Group::Su2 => {
            let c = r.cos();
            if c.abs() < 1e-12 {
                return Err(Error::Domain("normal form is singular at cos|xi| = 0".into()));
            }
            c
        }
    };
    let mut out = ComplexMatrix::zeros(gens.dim(), gens.dim());
    for rows in gens.sectors().values() {
        let up = nilpotent_exp(&gens.raising.restrict(rows)?, p.zeta)?;
        let down = nilpotent_exp(&gens.lowering.restrict(rows)?, -p.zeta.conj())?;
        let x0 = gens.cartan.restrict(rows)?.diagonal_values();
        let mut mid = up;
        for (j, x) in x0.iter().enumerate() {
            let f = c.powi(-((2.0 * x).round() as i32));
            for i in 0..rows.len() {
                mid[(i, j)] *= f;
            }
        }
        scatter(&mut out, rows, &(mid * down));
    }
    Ok(out)
}

fn nilpotent_exp(op: &SparseOperator, s: C64) -> Result<ComplexMatrix> {
    let d = op.dim();
    let mut out = ComplexMatrix::zeros(d, d);
    for col in 0..d {
        let mut v = vec![C64::new(0.0, 0.0); d];
        v[col] = C64::new(1.0, 0.0);
        for p in 1..=d + 1 {
            for (i, x) in v.iter().enumerate() {
                out[(i, col)] += x;
            }
            v = op.apply(&v)?;
            let f = s / p as f64;
            v.iter_mut().for_each(|x| *x *= f);
            if v.iter().all(|x| x.norm() == 0.0) {
                break;
            }
        }
    }
    Ok(out)
}

/// Truncation policy for the infinite su(1,1) series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Extend until the appended amplitude and the missing norm both fall
    /// below `1e-14`, at most 500 terms.
    Adaptive,
    /// Amplitudes for final excitations `0..=m_max`.
    Fixed(usize),
}

/// Amplitudes of a number coherent state.
#[derive(Clone, Debug, PartialEq)]
pub struct Amplitudes {
    /// su(1,1): indexed by final excitation `m`. su(2): indexed by `j + mu'`.
    pub values: Vec<C64>,
    /// `1 - sum |amplitude|²`, clamped at zero.
    pub tail: f64,
}

impl Amplitudes {
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

fn missing_norm(values: &[C64]) -> f64 {
    (1.0 - values.iter().map(|z| z.norm_sqr()).sum::<f64>()).max(0.0)
}

/// Amplitude of `|k, m>` in `D(xi)|k, n>` from the double series.
fn pncs_su11_term(k: f64, n: u32, m: u32, p: &DisplacementParams) -> C64 {
    let z = p.zeta.norm();
    let arg = p.zeta.arg();
    let ln_z = z.ln();
    let n_f = n as f64;
    let mut acc = C64::new(0.0, 0.0);
    // final excitation m = n - j + s
    for j in 0..=n {
        let Some(s) = (m + j).checked_sub(n) else {
            continue;
        };
        let (jf, sf) = (j as f64, s as f64);
        let mut ln_mag = -ln_factorial(s as u64) - ln_factorial(j as u64)
            + p.eta * (k + n_f - jf)
            + 0.5 * (ln_gamma_pos(2.0 * k + n_f) + ln_gamma_pos(2.0 * k + m as f64))
            - ln_gamma_pos(2.0 * k + n_f - jf)
            + 0.5 * (ln_factorial(n as u64) + ln_factorial(m as u64))
            - ln_factorial((n - j) as u64);
        if s + j > 0 {
            ln_mag += (sf + jf) * ln_z;
        }
        let phase = arg * (sf - jf);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += C64::from_polar(sign * ln_mag.exp(), phase);
    }
    acc
}

/// `D(xi)|k, n>` expanded in `|k, m>`.
pub fn pncs_su11(label: SU11Label, xi: C64, truncation: Truncation) -> Result<Amplitudes> {
    let p = DisplacementParams::new(Group::Su11, xi)?;
    if p.zeta.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "|zeta| = {} is not inside the unit disk",
            p.zeta.norm()
        )));
    }
    let n = label.n;
    if p.zeta.norm() == 0.0 {
        let len = match truncation {
            Truncation::Adaptive => n as usize + 1,
            Truncation::Fixed(t) => t + 1,
        };
        let mut values = vec![C64::new(0.0, 0.0); len];
        if (n as usize) < len {
            values[n as usize] = C64::new(1.0, 0.0);
        }
        let tail = missing_norm(&values);
        return Ok(Amplitudes { values, tail });
    }
    match truncation {
        Truncation::Fixed(m_max) => {
            let values: Vec<C64> = (0..=m_max as u32).map(|m| pncs_su11_term(label.k, n, m, &p)).collect();
            let tail = missing_norm(&values);
            if tail > PNCS_NORM_DEFECT {
                return Err(Error::Accuracy {
                    message: format!("truncation at m = {m_max} leaves norm outside the basis"),
                    tail,
                });
            }
            Ok(Amplitudes { values, tail })
        }
        Truncation::Adaptive => {
            let mut values: Vec<C64> = Vec::new();
            for m in 0..PNCS_MAX_TERMS as u32 {
                let a = pncs_su11_term(label.k, n, m, &p);
                let decreasing = values.last().is_some_and(|prev| a.norm() <= prev.norm());
                values.push(a);
                if m > n && decreasing && a.norm() < PNCS_TAIL {
                    let tail = missing_norm(&values);
                    if tail > PNCS_ROUNDING_DEFECT {
                        return Err(Error::Accuracy {
                            message: "series lost precision to cancellation".into(),
                            tail,
                        });
                    }
                    return Ok(Amplitudes { values, tail });
                }
            }
            Err(Error::Accuracy {
                message: format!("series not converged after {PNCS_MAX_TERMS} terms"),
                tail: missing_norm(&values),
            })
        }
    }
}

/// `D(xi)|j, mu>` expanded in `|j, mu'>`, indexed by `j + mu'`.
pub fn pncs_su2(label: SU2Label, xi: C64) -> Result<Amplitudes> {
    let p = DisplacementParams::new(Group::Su2, xi)?;
    let (jp, jm) = (label.j_plus_mu(), label.j_minus_mu());
    let len = label.two_j() as usize + 1;
    let mut values = vec![C64::new(0.0, 0.0); len];
    if p.zeta.norm() == 0.0 {
        values[jp as usize] = C64::new(1.0, 0.0);
        return Ok(Amplitudes { values, tail: 0.0 });
    }
    let c = xi.norm().cos();
    if c.abs() < 1e-12 {
        return Err(Error::Domain("normal form is singular at cos|xi| = 0".into()));
    }
    // direct products keep every term to a few ulps, which matters because
    // the alternating sum cancels terms much larger than the result
    if label.two_j() > MAX_DIRECT_FACTORIAL {
        return Err(invalid(format!(
            "multiplet 2j = {} is too large for the direct series",
            label.two_j()
        )));
    }
    let fact = factorials(label.two_j() as usize);
    let f = |k: u32| fact[k as usize];
    for n in 0..=jp {
        for s in 0..=(jm + n) {
            // exp(eta (mu - n)) = c^(-(2 mu - 2 n))
            let power = label.two_mu() - 2 * n as i64;
            let weight = c.powi(-(power as i32)) * f(jm + n) / f(jp - n)
                * (f(jp) * f(jp - n + s) / (f(jm) * f(jm + n - s))).sqrt()
                / (f(s) * f(n));
            let z = p.zeta.powu(s) * (-p.zeta.conj()).powu(n);
            values[(jp - n + s) as usize] += z * weight;
        }
    }
    let tail = missing_norm(&values);
    Ok(Amplitudes { values, tail })
}

fn factorials(n: usize) -> Vec<f64> {
    let mut out = vec![1.0; n + 1];
    for k in 1..=n {
        out[k] = out[k - 1] * k as f64;
    }
    out
}

/// Closed forms of `D† X0 D`, `D† X+ D`, `D† X- D`.
pub fn similarity_closed_form(gens: &Generators, xi: C64) -> Result<(ComplexMatrix, ComplexMatrix, ComplexMatrix)> {
    check_xi(xi)?;
    let (x0, xp, xm) = (
        gens.cartan.to_dense(),
        gens.raising.to_dense(),
        gens.lowering.to_dense(),
    );
    let r = xi.norm();
    if r == 0.0 {
        return Ok((x0, xp, xm));
    }
    let u = xi / r;
    let re = |x: f64| C64::new(x, 0.0);
    Ok(match BCHCoefficients::new(gens.group, xi) {
        BCHCoefficients::Su11 { alpha, beta } => (
            &x0 * re(2.0 * beta + 1.0) + &xp * (u * alpha / 2.0) + &xm * (u.conj() * alpha / 2.0),
            &x0 * (u.conj() * alpha) + (&xp + &xm * (u.conj() / u)) * re(beta) + &xp,
            &x0 * (u * alpha) + (&xm + &xp * (u / u.conj())) * re(beta) + &xm,
        ),
        BCHCoefficients::Su2 { delta, epsilon } => (
            &x0 * re(2.0 * epsilon + 1.0) + &xp * (u * delta / 2.0) + &xm * (u.conj() * delta / 2.0),
            &x0 * (-u.conj() * delta) + (&xp + &xm * (u.conj() / u)) * re(epsilon) + &xp,
            &x0 * (-u * delta) + (&xm + &xp * (u / u.conj())) * re(epsilon) + &xm,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::commutator;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn max_entry_on(m: &ComplexMatrix, rows: &[usize], cols: &[usize]) -> f64 {
        let mut worst = 0.0f64;
        for &r in rows {
            for &c in cols {
                worst = worst.max(m[(r, c)].norm());
            }
        }
        worst
    }

    fn rows_of(op: &SparseOperator, rows: &[usize]) -> f64 {
        op.entries()
            .iter()
            .filter(|e| rows.contains(&e.0))
            .map(|e| e.2.norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn su11_vacuum_and_raising() {
        let g = su11_generators(BasisSpec::two_mode_bc(3, 3)).unwrap();
        let vac = g.index_of(0, 0).unwrap();
        assert_eq!(g.cartan.get(vac, vac), C64::new(0.5, 0.0));
        let up = g.index_of(1, 1).unwrap();
        assert_eq!(g.raising.get(up, vac), C64::new(1.0, 0.0));
        assert_eq!(g.raising.nnz(), 9);
    }

    #[test]
    fn su11_commutators_on_interior() {
        let g = su11_generators(BasisSpec::two_mode_bc(6, 5)).unwrap();
        let interior = g.interior();
        let c = commutator(&g.lowering, &g.raising).unwrap();
        let diff = c.sub(&g.cartan.scale_re(2.0)).unwrap();
        assert!(rows_of(&diff, &interior) <= 1e-12);
        assert!(diff.max_abs() > 1.0, "truncation edge must show up");

        // [K0, K±] = ±K± holds on every row
        let c = commutator(&g.cartan, &g.raising).unwrap().sub(&g.raising).unwrap();
        assert!(c.max_abs() <= 1e-12);
        let c = commutator(&g.cartan, &g.lowering).unwrap().add(&g.lowering).unwrap();
        assert!(c.max_abs() <= 1e-12);
        for op in [&g.cartan, &g.raising, &g.lowering] {
            assert_eq!(commutator(&g.number, op).unwrap().max_abs(), 0.0);
        }
    }

    #[test]
    fn su11_casimir() {
        let g = su11_generators(BasisSpec::two_mode_bc(7, 7)).unwrap();
        let cas = casimir(&g).unwrap();
        let nd = g.number.diagonal_values();
        let interior = g.interior();
        for &i in &interior {
            assert_abs_diff_eq!(cas.get(i, i).re, (nd[i] * nd[i] - 1.0) / 4.0, epsilon = 1e-12);
        }
        let off: f64 = cas
            .entries()
            .iter()
            .filter(|e| e.0 != e.1)
            .map(|e| e.2.norm())
            .fold(0.0, f64::max);
        assert_eq!(off, 0.0);
        for m in 0..4 {
            let i = g.index_of(0, m).unwrap();
            assert_abs_diff_eq!(cas.get(i, i).re, (m as f64 * m as f64 - 1.0) / 4.0, epsilon = 1e-12);
        }
        let i = g.index_of(2, 2).unwrap();
        assert_abs_diff_eq!(cas.get(i, i).re, -0.25, epsilon = 1e-12);
    }

    #[test]
    fn su2_relations() {
        let g = su2_generators(BasisSpec::two_mode_ab(5, 5)).unwrap();
        let complete = g.interior();
        let c = commutator(&g.raising, &g.lowering).unwrap();
        let diff = c.sub(&g.cartan.scale_re(2.0)).unwrap();
        assert!(rows_of(&diff, &complete) <= 1e-12);
        for op in [&g.cartan, &g.raising, &g.lowering] {
            assert_eq!(commutator(&g.number, op).unwrap().max_abs(), 0.0);
        }
        let sectors = g.sectors();
        for two_j in 0..=5 {
            assert_eq!(sectors[&two_j].len(), two_j as usize + 1);
        }
        // J+ |j=1, mu=0> = sqrt(2) |j=1, mu=1>
        let from = g.index_of(1, 1).unwrap();
        let to = g.index_of(2, 0).unwrap();
        assert_abs_diff_eq!(g.raising.get(to, from).re, 2f64.sqrt(), epsilon = 1e-15);

        let cas = casimir(&g).unwrap();
        let ns = g.number.diagonal_values();
        for &i in &complete {
            let j = ns[i] / 2.0;
            assert_abs_diff_eq!(cas.get(i, i).re, j * (j + 1.0), epsilon = 1e-12);
        }
        for &i in &sectors[&2] {
            assert_abs_diff_eq!(cas.get(i, i).re, 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn wrong_basis_is_rejected() {
        assert!(su11_generators(BasisSpec::cube(2)).is_err());
    }

    #[test]
    fn displacement_identity_at_zero() {
        let g = su11_generators(BasisSpec::two_mode_bc(4, 4)).unwrap();
        let id = ComplexMatrix::identity(g.dim(), g.dim());
        assert_eq!(displacement_exact(&g, C64::new(0.0, 0.0)).unwrap(), id);
        assert_eq!(displacement_normal_order(&g, C64::new(0.0, 0.0)).unwrap(), id);
    }

    #[test]
    fn su2_half_rotation() {
        let g = su2_generators(BasisSpec::two_mode_ab(1, 1)).unwrap();
        let g = g.sector(1).unwrap();
        // rows ordered by J0: |mu=-1/2> then |mu=+1/2>
        assert_eq!(g.states, vec![(0, 1), (1, 0)]);
        let theta = 0.9;
        let d = displacement_exact(&g, C64::new(-theta / 2.0, 0.0)).unwrap();
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        assert_abs_diff_eq!(d[(0, 0)].re, c, epsilon = 1e-15);
        assert_abs_diff_eq!(d[(1, 1)].re, c, epsilon = 1e-15);
        assert_abs_diff_eq!(d[(0, 1)].re, s, epsilon = 1e-15);
        assert_abs_diff_eq!(d[(1, 0)].re, -s, epsilon = 1e-15);
        let n = displacement_normal_order(&g, C64::new(-theta / 2.0, 0.0)).unwrap();
        assert!((n - &d).iter().all(|z| z.norm() < 1e-15));

        let amps = pncs_su2(SU2Label::new(1, -1).unwrap(), C64::new(-theta / 2.0, 0.0)).unwrap();
        assert_abs_diff_eq!(amps.values[0].re, c, epsilon = 1e-15);
        assert_abs_diff_eq!(amps.values[1].re, -s, epsilon = 1e-15);
    }

    fn unitarity_defect(g: &Generators, xi: C64, keep: usize) -> f64 {
        let d = displacement_exact(g, xi).unwrap();
        let gram = d.adjoint() * &d;
        let cols: Vec<usize> = (0..keep).collect();
        let mut worst = 0.0f64;
        for &c in &cols {
            for r in 0..g.dim() {
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((gram[(r, c)] - C64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    #[test]
    fn su11_displacement_unitary_on_low_states() {
        let full = su11_generators(BasisSpec::two_mode_bc(150, 150)).unwrap();
        let xi = C64::from_polar(1.0, 0.7);
        for m in [0, 1, -2] {
            let g = full.sector(m).unwrap();
            assert!(unitarity_defect(&g, xi, 5) <= 1e-10, "sector {m}");
        }
        let small = su11_generators(BasisSpec::two_mode_bc(40, 40))
            .unwrap()
            .sector(0)
            .unwrap();
        assert!(unitarity_defect(&small, C64::from_polar(0.4, 0.7), 5) <= 1e-10);
    }

    #[test]
    fn su11_normal_order_matches_exponential() {
        let full = su11_generators(BasisSpec::two_mode_bc(90, 90)).unwrap();
        let xi = C64::from_polar(0.5, -1.1);
        for m in [0, 3, -1] {
            let g = full.sector(m).unwrap();
            let e = displacement_exact(&g, xi).unwrap();
            let n = displacement_normal_order(&g, xi).unwrap();
            let low: Vec<usize> = (0..30).collect();
            assert!(max_entry_on(&(e - n), &low, &low) <= 1e-9, "sector {m}");
        }
    }

    #[test]
    fn su11_vacuum_column_is_perelomov_state() {
        let full = su11_generators(BasisSpec::two_mode_bc(60, 60)).unwrap();
        let xi = C64::from_polar(0.6, 0.3);
        let zeta = DisplacementParams::new(Group::Su11, xi).unwrap().zeta;
        for m_nd in [0i64, 2] {
            let g = full.sector(m_nd).unwrap();
            let k = (m_nd as f64 + 1.0) / 2.0;
            let d = displacement_normal_order(&g, xi).unwrap();
            for n in 0..20 {
                let expect = (1.0 - zeta.norm_sqr()).powf(k)
                    * (ln_gamma_pos(n as f64 + 2.0 * k) - ln_factorial(n) - ln_gamma_pos(2.0 * k))
                        .exp()
                        .sqrt()
                    * zeta.powu(n as u32);
                assert!((d[(n as usize, 0)] - expect).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn su11_normal_order_domain() {
        let g = su11_generators(BasisSpec::two_mode_bc(2, 2)).unwrap();
        assert!(matches!(
            displacement_normal_order(&g, C64::new(40.0, 0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn pncs_su11_limits() {
        let label = SU11Label::new(1.5, 3).unwrap();
        let a = pncs_su11(label, C64::new(0.0, 0.0), Truncation::Adaptive).unwrap();
        assert_eq!(
            a.values,
            vec![
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0)
            ]
        );

        let xi = C64::from_polar(0.8, 2.0);
        let zeta = DisplacementParams::new(Group::Su11, xi).unwrap().zeta;
        let k = 1.0;
        let a = pncs_su11(SU11Label::new(k, 0).unwrap(), xi, Truncation::Adaptive).unwrap();
        for (n, amp) in a.values.iter().enumerate() {
            let expect = (1.0 - zeta.norm_sqr()).powf(k)
                * ((ln_gamma_pos(n as f64 + 2.0) - ln_factorial(n as u64)).exp()).sqrt()
                * zeta.powu(n as u32);
            assert!((amp - expect).norm() < 1e-14);
        }
        assert!((a.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn pncs_su11_fixed_truncation_reports_tail() {
        let label = SU11Label::new(0.5, 1).unwrap();
        match pncs_su11(label, C64::new(1.0, 0.0), Truncation::Fixed(10)) {
            Err(Error::Accuracy { tail, .. }) => assert!(tail > 1e-3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(pncs_su11(label, C64::new(0.3, 0.0), Truncation::Fixed(120)).is_ok());
    }

    #[test]
    fn pncs_su11_matches_exponential_column() {
        let full = su11_generators(BasisSpec::two_mode_bc(260, 260)).unwrap();
        let xi = C64::from_polar(1.0, 0.4);
        for (m_nd, n) in [(0i64, 0u32), (1, 2), (-3, 4), (2, 7)] {
            let g = full.sector(m_nd).unwrap();
            let d = displacement_exact(&g, xi).unwrap();
            let a = pncs_su11(SU11Label::from_sector(m_nd, n), xi, Truncation::Adaptive).unwrap();
            assert!((a.norm() - 1.0).abs() < 1e-10);
            let (b0, c0) = su11_occupations(m_nd, n);
            let col = g.index_of(b0, c0).unwrap();
            for (m, amp) in a.values.iter().enumerate() {
                let (b, c) = su11_occupations(m_nd, m as u32);
                match g.index_of(b, c) {
                    Some(row) => assert!((d[(row, col)] - amp).norm() <= 1e-9, "m_nd {m_nd} n {n} m {m}"),
                    None => assert!(amp.norm() < 1e-12),
                }
            }
        }
    }

    #[test]
    fn pncs_su2_matches_exponential_column() {
        let full = su2_generators(BasisSpec::two_mode_ab(9, 9)).unwrap();
        // close to |xi| = pi/2 the alternating sum cancels terms of order
        // cos|xi|^-2j and loses digits, see `su2_series_conditioning`
        for xi in [
            C64::from_polar(0.4, 1.0),
            C64::from_polar(0.9, 0.2),
            C64::from_polar(1.1, -2.2),
            C64::from_polar(2.5, 0.5),
        ] {
            for two_j in [1u32, 2, 5, 9] {
                let g = full.sector(two_j as i64).unwrap();
                let d = displacement_exact(&g, xi).unwrap();
                for two_mu in (-(two_j as i64)..=two_j as i64).step_by(2) {
                    let label = SU2Label::new(two_j, two_mu).unwrap();
                    let a = pncs_su2(label, xi).unwrap();
                    assert_eq!(a.values.len(), two_j as usize + 1);
                    assert!(
                        (a.norm() - 1.0).abs() <= 1e-12,
                        "xi {xi} 2j {two_j} 2mu {two_mu}: {:e}",
                        a.norm() - 1.0
                    );
                    let col = label.j_plus_mu() as usize;
                    for (row, amp) in a.values.iter().enumerate() {
                        assert!(
                            (d[(row, col)] - amp).norm() <= 1e-9,
                            "xi {xi} 2j {two_j} 2mu {two_mu} row {row}: {} vs {}",
                            d[(row, col)],
                            amp
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn su2_series_conditioning() {
        // error grows like eps * cos|xi|^-2j; still far below unit scale
        let label = SU2Label::new(9, 7).unwrap();
        let near = pncs_su2(label, C64::from_polar(1.5, 0.1)).unwrap();
        assert!((near.norm() - 1.0).abs() < 1e-5);
        let far = pncs_su2(label, C64::from_polar(1.0, 0.1)).unwrap();
        assert!((far.norm() - 1.0).abs() <= 1e-12);
        assert!(matches!(
            pncs_su2(label, C64::new(std::f64::consts::FRAC_PI_2, 0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn su2_normal_order_beyond_quarter_turn() {
        let g = su2_generators(BasisSpec::two_mode_ab(4, 4)).unwrap();
        let xi = C64::from_polar(2.2, 0.3);
        let e = displacement_exact(&g, xi).unwrap();
        let n = displacement_normal_order(&g, xi).unwrap();
        let complete = g.interior();
        assert!(max_entry_on(&(e - n), &complete, &complete) <= 1e-12);
    }

    #[test]
    fn similarity_identity_at_zero() {
        let g = su11_generators(BasisSpec::two_mode_bc(3, 3)).unwrap();
        let (a, b, c) = similarity_closed_form(&g, C64::new(0.0, 0.0)).unwrap();
        assert_eq!(a, g.cartan.to_dense());
        assert_eq!(b, g.raising.to_dense());
        assert_eq!(c, g.lowering.to_dense());
    }

    #[test]
    fn su11_similarity_against_conjugation() {
        let full = su11_generators(BasisSpec::two_mode_bc(120, 120)).unwrap();
        let xi = C64::from_polar(0.3, 0.9);
        for m in [0, 2] {
            let g = full.sector(m).unwrap();
            let d = displacement_exact(&g, xi).unwrap();
            let dd = d.adjoint();
            let (a, b, c) = similarity_closed_form(&g, xi).unwrap();
            let low: Vec<usize> = (0..40).collect();
            let conj = |x: &SparseOperator| &dd * x.to_dense() * &d;
            assert!(max_entry_on(&(conj(&g.cartan) - a), &low, &low) <= 1e-8);
            assert!(max_entry_on(&(conj(&g.raising) - b), &low, &low) <= 1e-8);
            assert!(max_entry_on(&(conj(&g.lowering) - c), &low, &low) <= 1e-8);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn su2_similarity_exact_in_multiplet(two_j in 0i64..7, r in 0.01f64..3.0, phi in -3.1f64..3.1) {
            let g = su2_generators(BasisSpec::two_mode_ab(6, 6)).unwrap().sector(two_j).unwrap();
            let xi = C64::from_polar(r, phi);
            let d = displacement_exact(&g, xi).unwrap();
            let dd = d.adjoint();
            let (a, b, c) = similarity_closed_form(&g, xi).unwrap();
            let conj = |x: &SparseOperator| &dd * x.to_dense() * &d;
            for (lhs, rhs) in [(conj(&g.cartan), a), (conj(&g.raising), b), (conj(&g.lowering), c)] {
                let err = (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max);
                prop_assert!(err <= 1e-12);
            }
        }

        #[test]
        fn bch_coefficient_ranges(r in 0.0f64..5.0) {
            if let BCHCoefficients::Su11 { beta, alpha } = BCHCoefficients::new(Group::Su11, C64::new(r, 0.0)) {
                prop_assert!(beta >= 0.0);
                prop_assert!((alpha - (2.0 * r).sinh()).abs() <= 1e-12 * alpha.abs().max(1.0));
            }
            if let BCHCoefficients::Su2 { epsilon, .. } = BCHCoefficients::new(Group::Su2, C64::new(r, 0.0)) {
                prop_assert!((-1.0..=0.0).contains(&epsilon));
            }
        }

        #[test]
        fn normal_form_parameters(r in 0.0f64..6.0, phi in -3.1f64..3.1) {
            let xi = C64::from_polar(r, phi);
            let p = DisplacementParams::new(Group::Su11, xi).unwrap();
            prop_assert!(p.zeta.norm() < 1.0);
            prop_assert!((p.eta - (1.0 - p.zeta.norm_sqr()).ln()).abs() <= 1e-9);
            if r < 1.5 {
                let q = DisplacementParams::new(Group::Su2, xi).unwrap();
                prop_assert!((q.eta - (1.0 + q.zeta.norm_sqr()).ln()).abs() <= 1e-9);
            }
        }
    }
}
