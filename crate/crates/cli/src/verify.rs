//! Invariant suites behind `trimode verify`.

use num_complex::Complex64 as C64;
use serde_json::Value;
use trimode_core::algebra::{
    casimir, displacement_exact, displacement_normal_order, pncs_su11, pncs_su2, similarity_closed_form,
    su11_generators, su11_occupations, su2_generators, Generators, SU11Label, SU2Label, Truncation,
};
use trimode_core::diag::{self, hermitian_eigenvalues};
use trimode_core::fock::{commutator, hamiltonian_matrix, ladder_matrix, LadderKind};
use trimode_core::spectra::{self, QuantumNumbersSU11};
use trimode_core::wavefn::{self, GridSpec, Quadrature};
use trimode_core::{BasisSpec, ComplexMatrix, Mode, ModelParams, Result, SparseOperator};

use crate::output::{cell, num, Obj, Report, Table};

/// One measured residual against its bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: Vec<Check>,
    /// Set when the suite could not run to completion.
    pub error: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(Check::passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Context {
    pub params: ModelParams,
    pub inject_fault: bool,
}

type Suite = fn(&Context) -> Result<Vec<Check>>;

pub const SUITES: [(&str, Suite); 10] = [
    ("fock", fock_suite),
    ("su11-algebra", su11_algebra),
    ("su2-algebra", su2_algebra),
    ("displacement", displacement),
    ("bch", bch),
    ("spectra-identities", spectra_identities),
    ("su2-surrogate", su2_surrogate),
    ("su11-surrogate", su11_surrogate),
    ("block-integrity", block_integrity),
    ("wavefunctions", wavefunctions),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.0).collect()
}

/// Runs the selected suites in their fixed order; an empty selection runs
/// all of them. Unknown names are an error.
pub fn run(ctx: &Context, only: &[String]) -> std::result::Result<Vec<SuiteResult>, String> {
    if let Some(bad) = only.iter().find(|n| !SUITES.iter().any(|s| s.0 == n.as_str())) {
        return Err(format!("unknown suite {bad:?}; known: {}", suite_names().join(", ")));
    }
    Ok(SUITES
        .iter()
        .filter(|(name, _)| only.is_empty() || only.iter().any(|o| o == name))
        .map(|&(name, suite)| match suite(ctx) {
            Ok(checks) => SuiteResult {
                name,
                checks,
                error: None,
            },
            Err(e) => SuiteResult {
                name,
                checks: Vec::new(),
                error: Some(e.to_string()),
            },
        })
        .collect())
}

pub fn report(ctx: &Context, results: &[SuiteResult]) -> Report {
    let mut table = Table::new(&["suite", "check", "residual", "tolerance", "passed"]);
    let mut suites = Vec::with_capacity(results.len());
    for r in results {
        let mut checks = Vec::with_capacity(r.checks.len());
        for c in &r.checks {
            table.push(vec![
                r.name.to_string(),
                c.name.clone(),
                cell(c.residual),
                cell(c.tolerance),
                c.passed().to_string(),
            ]);
            checks.push(
                Obj::new()
                    .with("name", Value::String(c.name.clone()))
                    .with("residual", num(c.residual))
                    .with("tolerance", num(c.tolerance))
                    .with("passed", Value::Bool(c.passed()))
                    .build(),
            );
        }
        if let Some(e) = &r.error {
            table.push(vec![
                r.name.to_string(),
                format!("error: {e}"),
                String::new(),
                String::new(),
                "false".into(),
            ]);
            checks.push(
                Obj::new()
                    .with("name", Value::String("error".into()))
                    .with("residual", Value::Null)
                    .with("tolerance", Value::Null)
                    .with("passed", Value::Bool(false))
                    .build(),
            );
        }
        suites.push(
            Obj::new()
                .with("name", Value::String(r.name.into()))
                .with("passed", Value::Bool(r.passed()))
                .with("error", r.error.clone().map_or(Value::Null, Value::String))
                .with("checks", Value::Array(checks))
                .build(),
        );
    }
    let p = &ctx.params;
    let json = Obj::new()
        .with(
            "params",
            Obj::new()
                .with("w1", num(p.omega1))
                .with("w2", num(p.omega2))
                .with("w3", num(p.omega3))
                .with("g", num(p.g))
                .build(),
        )
        .with("passed", Value::Bool(results.iter().all(SuiteResult::passed)))
        .with("suites", Value::Array(suites))
        .build();
    Report { json, table }
}

fn max_on(m: &ComplexMatrix, rows: &[usize], cols: &[usize]) -> f64 {
    let mut worst = 0.0f64;
    for &r in rows {
        for &c in cols {
            worst = worst.max(m[(r, c)].norm());
        }
    }
    worst
}

fn max_on_rows(op: &SparseOperator, rows: &[usize]) -> f64 {
    op.entries()
        .iter()
        .filter(|e| rows.binary_search(&e.0).is_ok())
        .map(|e| e.2.norm())
        .fold(0.0, f64::max)
}

fn fock_suite(ctx: &Context) -> Result<Vec<Check>> {
    let basis = BasisSpec::cube(5);
    let h = hamiltonian_matrix(&ctx.params, basis)?;
    let states = basis.states();
    let charge = |f: fn(&trimode_core::Occupation) -> u32| {
        SparseOperator::diagonal(&states.iter().map(|o| f(o) as f64).collect::<Vec<_>>())
    };
    let q_ab = commutator(&h, &charge(|o| o.n_a + o.n_b))?.max_abs();
    let q_ac = commutator(&h, &charge(|o| o.n_a + o.n_c))?.max_abs();

    // [a, a†] = 1 away from the top occupation of a
    let a = ladder_matrix(basis, Mode::A, LadderKind::Annihilate)?;
    let ad = ladder_matrix(basis, Mode::A, LadderKind::Create)?;
    let defect = commutator(&a, &ad)?.sub(&SparseOperator::identity(basis.dim()))?;
    let inner: Vec<usize> = (0..states.len()).filter(|&i| states[i].n_a < 5).collect();
    Ok(vec![
        Check::new("[H, n_a+n_b]", q_ab, 0.0),
        Check::new("[H, n_a+n_c]", q_ac, 0.0),
        Check::new("hermiticity", h.hermiticity_residual(), 1e-14),
        Check::new("[a, a+] - 1 below cutoff", max_on_rows(&defect, &inner), 1e-12),
    ])
}

fn su11_algebra(ctx: &Context) -> Result<Vec<Check>> {
    let g = su11_generators(BasisSpec::two_mode_bc(40, 40))?;
    let interior = g.interior();
    let two_k0 = g.cartan.scale_re(if ctx.inject_fault { -2.0 } else { 2.0 });
    let lowering_raising = commutator(&g.lowering, &g.raising)?.sub(&two_k0)?;
    let k0_up = commutator(&g.cartan, &g.raising)?.sub(&g.raising)?;
    let k0_down = commutator(&g.cartan, &g.lowering)?.add(&g.lowering)?;
    let mut number = 0.0f64;
    for x in [&g.cartan, &g.raising, &g.lowering] {
        number = number.max(commutator(&g.number, x)?.max_abs());
    }
    let nd = g.number.diagonal_values();
    let expect = SparseOperator::diagonal(&nd.iter().map(|m| m * m / 4.0 - 0.25).collect::<Vec<_>>());
    let cas = casimir(&g)?.sub(&expect)?;
    Ok(vec![
        Check::new(
            "[K-, K+] - 2 K0 (interior)",
            max_on_rows(&lowering_raising, &interior),
            1e-12,
        ),
        Check::new("[K0, K+] - K+ (interior)", max_on_rows(&k0_up, &interior), 1e-12),
        Check::new("[K0, K-] + K- (interior)", max_on_rows(&k0_down, &interior), 1e-12),
        Check::new("[N_d, K]", number, 0.0),
        Check::new(
            "Casimir - (N_d^2 - 1)/4 (interior)",
            max_on_rows(&cas, &interior),
            1e-12,
        ),
    ])
}

fn su2_algebra(_: &Context) -> Result<Vec<Check>> {
    let g = su2_generators(BasisSpec::two_mode_ab(30, 30))?;
    let complete = g.interior();
    let up_down = commutator(&g.raising, &g.lowering)?.sub(&g.cartan.scale_re(2.0))?;
    let j0_up = commutator(&g.cartan, &g.raising)?.sub(&g.raising)?;
    let j0_down = commutator(&g.cartan, &g.lowering)?.add(&g.lowering)?;
    let mut number = 0.0f64;
    for x in [&g.cartan, &g.raising, &g.lowering] {
        number = number.max(commutator(&g.number, x)?.max_abs());
    }
    let ns = g.number.diagonal_values();
    let expect = SparseOperator::diagonal(&ns.iter().map(|n| n / 2.0 * (n / 2.0 + 1.0)).collect::<Vec<_>>());
    let cas = casimir(&g)?.sub(&expect)?;
    Ok(vec![
        Check::new("[J+, J-] - 2 J0 (complete)", max_on_rows(&up_down, &complete), 1e-12),
        Check::new("[J0, J+] - J+ (complete)", max_on_rows(&j0_up, &complete), 1e-12),
        Check::new("[J0, J-] + J- (complete)", max_on_rows(&j0_down, &complete), 1e-12),
        Check::new("[N_s, J]", number, 0.0),
        Check::new("Casimir - j(j+1) (complete)", max_on_rows(&cas, &complete), 1e-12),
    ])
}

/// Largest deviation between a number coherent state and the matching
/// column of the sector exponential.
fn su11_column_error(full: &Generators, xi: C64, m_nd: i64, n: u32) -> Result<f64> {
    let g = full.sector(m_nd)?;
    let d = displacement_exact(&g, xi)?;
    let a = pncs_su11(SU11Label::from_sector(m_nd, n), xi, Truncation::Adaptive)?;
    let (b0, c0) = su11_occupations(m_nd, n);
    let col = g.index_of(b0, c0).expect("label inside the truncation");
    let mut worst = 0.0f64;
    for (m, amp) in a.values.iter().enumerate() {
        let (b, c) = su11_occupations(m_nd, m as u32);
        worst = worst.max(match g.index_of(b, c) {
            Some(row) => (d[(row, col)] - amp).norm(),
            None => amp.norm(),
        });
    }
    Ok(worst)
}

fn su2_column_error(two_j: u32, xi: C64) -> Result<f64> {
    let g = su2_generators(BasisSpec::two_mode_ab(two_j, two_j))?.sector(two_j as i64)?;
    let d = displacement_exact(&g, xi)?;
    let mut worst = 0.0f64;
    for two_mu in (-(two_j as i64)..=two_j as i64).step_by(2) {
        let label = SU2Label::new(two_j, two_mu)?;
        let a = pncs_su2(label, xi)?;
        let col = label.j_plus_mu() as usize;
        for (row, amp) in a.values.iter().enumerate() {
            worst = worst.max((d[(row, col)] - amp).norm());
        }
    }
    Ok(worst)
}

fn displacement(_: &Context) -> Result<Vec<Check>> {
    let xis = [C64::from_polar(0.35, 0.7), C64::from_polar(0.8, -2.0)];
    let su11 = su11_generators(BasisSpec::two_mode_bc(120, 120))?;
    let mut normal11 = 0.0f64;
    let mut column11 = 0.0f64;
    for xi in xis {
        for m_nd in [0i64, 3] {
            let g = su11.sector(m_nd)?;
            let e = displacement_exact(&g, xi)?;
            let n = displacement_normal_order(&g, xi)?;
            // the normal-ordered sum cancels terms that grow with the row
            // index, so compare on the first rows only
            let low: Vec<usize> = (0..20).collect();
            normal11 = normal11.max(max_on(&(e - n), &low, &low));
            for n in [0, 2, 5] {
                column11 = column11.max(su11_column_error(&su11, xi, m_nd, n)?);
            }
        }
    }
    let su2 = su2_generators(BasisSpec::two_mode_ab(8, 8))?;
    let complete = su2.interior();
    let mut normal2 = 0.0f64;
    let mut column2 = 0.0f64;
    for xi in xis {
        let e = displacement_exact(&su2, xi)?;
        let n = displacement_normal_order(&su2, xi)?;
        normal2 = normal2.max(max_on(&(e - n), &complete, &complete));
        for two_j in 0..=8 {
            column2 = column2.max(su2_column_error(two_j, xi)?);
        }
    }
    Ok(vec![
        Check::new("su(1,1) exponential vs normal order", normal11, 1e-9),
        Check::new("su(1,1) number coherent state columns", column11, 1e-9),
        Check::new("su(2) exponential vs normal order", normal2, 1e-9),
        Check::new("su(2) number coherent state columns", column2, 1e-9),
    ])
}

fn conjugation_error(g: &Generators, xi: C64, rows: &[usize]) -> Result<f64> {
    let d = displacement_exact(g, xi)?;
    let dd = d.adjoint();
    let (a, b, c) = similarity_closed_form(g, xi)?;
    let mut worst = 0.0f64;
    for (x, closed) in [(&g.cartan, a), (&g.raising, b), (&g.lowering, c)] {
        let lhs = &dd * x.to_dense() * &d;
        worst = worst.max(max_on(&(lhs - closed), rows, rows));
    }
    Ok(worst)
}

fn bch(_: &Context) -> Result<Vec<Check>> {
    let xis = [
        C64::from_polar(0.25, 0.3),
        C64::from_polar(0.5, 2.5),
        C64::from_polar(0.4, -1.2),
    ];
    let su11 = su11_generators(BasisSpec::two_mode_bc(150, 150))?;
    let low: Vec<usize> = (0..20).collect();
    let mut e11 = 0.0f64;
    let mut e2 = 0.0f64;
    for xi in xis {
        for m_nd in [0, 1] {
            e11 = e11.max(conjugation_error(&su11.sector(m_nd)?, xi, &low)?);
        }
        for two_j in 0..=6u32 {
            let g = su2_generators(BasisSpec::two_mode_ab(two_j, two_j))?.sector(two_j as i64)?;
            let all: Vec<usize> = (0..g.dim()).collect();
            e2 = e2.max(conjugation_error(&g, xi * 3.0, &all)?);
        }
    }
    Ok(vec![
        Check::new("su(1,1) closed-form similarity (low rows)", e11, 1e-8),
        Check::new("su(2) closed-form similarity (multiplets)", e2, 1e-12),
    ])
}

fn spectra_identities(ctx: &Context) -> Result<Vec<Check>> {
    let p = ctx.params;
    let equal = ModelParams::new(p.omega1, p.omega2, p.omega2, p.g)?;
    let mut reduction = 0.0f64;
    let mut ladder = 0.0f64;
    let mut flag_mismatch = 0.0f64;
    let mut monotone = 0.0f64;
    let free = ModelParams::isotropic(p.omega1, 0.0)?;
    for n_a in 0..8u32 {
        for n_l in 0..6u32 {
            for m_n in 0..6i64 {
                let q = QuantumNumbersSU11 { n_a, n_l, m_n };
                let a = spectra::energy_su11(&equal, &q);
                let b = spectra::energy_bogoliubov(&equal, n_a, 2 * n_l + m_n as u32, 0)?;
                let scale = 1.0 + b.re().abs() + b.im().abs();
                reduction = reduction.max(((a.re() - b.re()).abs() + (a.im() - b.im()).abs()) / scale);
                let e0 = spectra::energy_su11(&free, &q).re();
                ladder = ladder.max((e0 - p.omega1 * (n_a as f64 + 2.0 * n_l as f64 + m_n as f64)).abs());

                let s = p.omega2 + p.omega3;
                let nonreal = s * s < 4.0 * p.g * p.g * n_a as f64;
                let e = spectra::energy_su11(&p, &q);
                if e.is_real() == nonreal {
                    flag_mismatch = 1.0;
                }
                if e.is_real() {
                    let next = spectra::energy_su11(&p, &QuantumNumbersSU11 { n_l: n_l + 1, ..q });
                    monotone = monotone.max(e.re() - next.re());
                }
            }
        }
    }
    let mut norms = 0.0f64;
    for delta in [-1.5, -0.3, 0.0, 0.4, 2.0] {
        for g in [0.0, 0.05, 0.7] {
            for n_c in [0u32, 1, 5, 40] {
                let prm = ModelParams::new(2.0 + delta, 2.0, p.omega3, g)?;
                let c = spectra::normal_mode_coeffs(&prm, n_c);
                if c.omega > 0.0 {
                    norms = norms.max((c.x2 + c.y2 - 1.0).abs());
                }
            }
        }
    }
    Ok(vec![
        Check::new("su(1,1) equals Bogoliubov at w2 = w3 (relative)", reduction, 1e-12),
        Check::new("isotropic g = 0 ladder", ladder, 1e-12),
        Check::new("non-real flag mismatches", flag_mismatch, 0.0),
        Check::new("decrease in n_l", monotone.max(0.0), 0.0),
        Check::new("|X|^2 + |Y|^2 - 1", norms, 1e-12),
    ])
}

fn su2_surrogate(_: &Context) -> Result<Vec<Check>> {
    let mut worst = 0.0f64;
    for (d, lambda) in [
        (0.0, C64::new(0.3, 0.0)),
        (0.7, C64::from_polar(0.45, 1.1)),
        (-1.2, C64::from_polar(0.8, -2.4)),
    ] {
        for two_j in 0..=12 {
            let r = diag::surrogate_su2_spectrum(d, lambda, two_j)?;
            let closed = r.analytic.expect("surrogates carry the closed form");
            for (a, b) in r.eigenvalues.iter().zip(&closed) {
                worst = worst.max((a - b).abs());
            }
            // tilting diagonalizes the multiplet
            let t = diag::tilted_surrogate_su2(d, lambda, two_j)?;
            let off = t
                .iter()
                .enumerate()
                .filter(|(i, _)| i % (t.nrows() + 1) != 0)
                .map(|(_, z)| z.norm())
                .fold(0.0, f64::max);
            worst = worst.max(off);
        }
    }
    Ok(vec![Check::new("multiplet spectrum vs closed form", worst, 1e-12)])
}

fn su11_surrogate(ctx: &Context) -> Result<Vec<Check>> {
    let s = ctx.params.omega2 + ctx.params.omega3;
    let delta = ctx.params.omega3 - ctx.params.omega2;
    let mut cauchy = 0.0f64;
    let mut closed = 0.0f64;
    for ratio in [0.3, 0.6] {
        let lambda = C64::from_polar(ratio * s / 2.0, 0.4);
        for m_nd in [0i64, 2] {
            let rep = diag::su11_convergence(s, delta, lambda, m_nd, &[60, 80], 5)?;
            cauchy = cauchy.max(rep.cauchy[0]);
            let r = diag::surrogate_su11_spectrum(s, delta, lambda, m_nd, 80)?;
            let analytic = r.analytic.expect("surrogates carry the closed form");
            for (a, b) in r.eigenvalues.iter().zip(&analytic).take(5) {
                closed = closed.max((a - b).abs());
            }
        }
    }
    Ok(vec![
        Check::new("Cauchy difference, cutoffs 60 and 80", cauchy, 1e-10),
        Check::new("low levels vs closed form at cutoff 80", closed, 1e-8),
    ])
}

fn block_integrity(ctx: &Context) -> Result<Vec<Check>> {
    let q = 4u32;
    let basis = BasisSpec::cube(q);
    let h = hamiltonian_matrix(&ctx.params, basis)?.to_dense();
    let states = basis.states();
    let shared: Vec<usize> = (0..states.len())
        .filter(|&i| states[i].q_ab() <= q && states[i].q_ac() <= q)
        .collect();
    let sub = ComplexMatrix::from_fn(shared.len(), shared.len(), |r, c| h[(shared[r], shared[c])]);
    let cube = hermitian_eigenvalues(&sub)?;
    let mut blocks = Vec::new();
    let mut parity = 0.0f64;
    let mut projection = 0.0f64;
    for q_ab in 0..=q {
        for q_ac in 0..=q {
            let e = diag::block_spectrum(&ctx.params, q_ab, q_ac)?.eigenvalues;
            let flipped = diag::block_spectrum(&ctx.params.with_g(-ctx.params.g), q_ab, q_ac)?.eigenvalues;
            parity = parity.max(e.iter().zip(&flipped).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
            let rows: Vec<usize> = (0..states.len())
                .filter(|&i| states[i].q_ab() == q_ab && states[i].q_ac() == q_ac)
                .collect();
            let proj = ComplexMatrix::from_fn(rows.len(), rows.len(), |r, c| h[(rows[r], rows[c])]);
            let pe = hermitian_eigenvalues(&proj)?;
            projection = projection.max(e.iter().zip(&pe).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
            blocks.extend(e);
        }
    }
    blocks.sort_by(f64::total_cmp);
    let direct = if blocks.len() == cube.len() {
        blocks.iter().zip(&cube).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    let herm = diag::hermiticity_residual(&h);
    Ok(vec![
        Check::new("direct sum of blocks vs truncated cube", direct, 1e-10),
        Check::new("projection of cube onto blocks", projection, 1e-12),
        Check::new("g -> -g", parity, 1e-12),
        Check::new("hermiticity", herm, 0.0),
    ])
}

fn pointwise(a: &[wavefn::WaveSample], b: &[wavefn::WaveSample]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.value - y.value).norm())
        .fold(0.0, f64::max)
}

fn wavefunctions(_: &Context) -> Result<Vec<Check>> {
    let plot = GridSpec::polar(0.0, 6.0, 64, 64)?;
    let quad = Quadrature::default_polar();
    let mut series = 0.0f64;
    let mut norm = 0.0f64;
    for (n_l, m_n) in [(0u32, 0i64), (1, 2), (2, -1)] {
        for zeta in [C64::from_polar(0.3, 0.5), C64::from_polar(0.6, -2.0)] {
            let closed = wavefn::pncs_wavefunction_su11(n_l, m_n, zeta, &plot)?;
            let sum = wavefn::pncs_wavefunction_su11_series(n_l, m_n, zeta, &plot)?;
            series = series.max(pointwise(&closed, &sum));
            let closed = wavefn::pncs_wavefunction_su2(n_l, m_n, zeta, &plot)?;
            let sum = wavefn::pncs_wavefunction_su2_series(n_l, m_n, zeta, &plot)?;
            series = series.max(pointwise(&closed, &sum));
            for f in [wavefn::pncs_wavefunction_su11, wavefn::pncs_wavefunction_su2] {
                norm = norm.max((quad.norm(&f(n_l, m_n, zeta, &quad.grid)?)?.norm - 1.0).abs());
            }
        }
    }
    let hermite = Quadrature::hermite(80)?;
    for n in 0..8 {
        norm = norm.max(
            (hermite
                .norm_of(|c| match c {
                    wavefn::Coord::Cartesian { x } => C64::new(wavefn::ho1d(n, x), 0.0),
                    wavefn::Coord::Polar { .. } => unreachable!("cartesian rule"),
                })
                .norm
                - 1.0)
                .abs(),
        );
    }
    let labels: Vec<(u32, i64)> = (0..=3).flat_map(|n| (0..=3).map(move |m| (n, m))).collect();
    let samples: Vec<Vec<C64>> = labels
        .iter()
        .map(|&(n, m)| wavefn::sample_oscillator(n, m, &quad.grid).map(|s| s.iter().map(|w| w.value).collect()))
        .collect::<Result<_>>()?;
    let mut ortho = 0.0f64;
    for (i, a) in samples.iter().enumerate() {
        for (j, b) in samples.iter().enumerate() {
            let expect = if i == j { 1.0 } else { 0.0 };
            ortho = ortho.max((quad.inner(a, b)? - expect).norm());
        }
    }
    Ok(vec![
        Check::new("closed form vs series (pointwise)", series, 1e-7),
        Check::new("quadrature norm - 1", norm, 1e-6),
        Check::new("oscillator orthonormality", ortho, 1e-7),
    ])
}
