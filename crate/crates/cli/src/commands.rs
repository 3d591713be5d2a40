use std::path::PathBuf;

use num_complex::Complex64 as C64;
use serde_json::Value;
use trimode_core::algebra::{self, su11_occupations, SU11Label, SU2Label, Truncation};
use trimode_core::diag::{self, AnalyticMethod};
use trimode_core::spectra::{self, DeltaSign, Energy, QuantumNumbersNM, QuantumNumbersSU11, QuantumNumbersSU2};
use trimode_core::wavefn::{self, Coord, GridSpec, Quadrature};
use trimode_core::{Error as CoreError, ModelParams};

use crate::args::{AnalyticArgs, CoherentArgs, Common, CompareArgs, DeltaSignArg, GroupArg, MethodArg, SpectrumArgs};
use crate::config::{parse_list, pick, ConfigFile};
use crate::error::{CliError, CliResult};
use crate::output::{cell, int, num, nums, Format, Obj, Report, Table};

const MODEL_KEYS: [&str; 7] = ["w1", "w2", "w3", "g", "format", "out", "config"];

/// Parameters shared by all commands after merging flags, config and
/// defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub params: ModelParams,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub fn load_config(common: &Common) -> CliResult<ConfigFile> {
    match &common.config {
        Some(p) => ConfigFile::load(p),
        None => Ok(ConfigFile::default()),
    }
}

pub fn settings(common: &Common, file: &ConfigFile, extra_keys: &[&str]) -> CliResult<Settings> {
    let mut known: Vec<&str> = MODEL_KEYS.to_vec();
    known.extend_from_slice(extra_keys);
    if let Some(k) = file.unknown(&known).first() {
        return Err(CliError::Invalid(format!("unknown config key {k}")));
    }
    let params = ModelParams::new(
        pick(common.w1, file, "w1", 1.0)?,
        pick(common.w2, file, "w2", 1.0)?,
        pick(common.w3, file, "w3", 1.0)?,
        pick(common.g, file, "g", 0.1)?,
    )?;
    let out = match &common.out {
        Some(p) => Some(p.clone()),
        None => file.raw("out").map(PathBuf::from),
    };
    Ok(Settings {
        params,
        format: pick(common.format, file, "format", Format::Json)?,
        out,
    })
}

fn params_json(p: &ModelParams) -> Value {
    Obj::new()
        .with("w1", num(p.omega1))
        .with("w2", num(p.omega2))
        .with("w3", num(p.omega3))
        .with("g", num(p.g))
        .build()
}

fn delta_sign(arg: DeltaSignArg) -> DeltaSign {
    match arg {
        DeltaSignArg::Paper => DeltaSign::Paper,
        DeltaSignArg::Alt => DeltaSign::Alt,
    }
}

fn method_name(m: MethodArg) -> &'static str {
    match m {
        MethodArg::Bogoliubov => "bogoliubov",
        MethodArg::Su11 => "su11",
        MethodArg::Nm => "nm",
        MethodArg::Su2 => "su2",
    }
}

fn sign_name(s: DeltaSignArg) -> &'static str {
    match s {
        DeltaSignArg::Paper => "paper",
        DeltaSignArg::Alt => "alt",
    }
}

pub fn spectrum(args: &SpectrumArgs) -> CliResult<(Report, Settings)> {
    let file = load_config(&args.common)?;
    let s = settings(&args.common, &file, &["qmin", "qmax"])?;
    let blocks: Vec<(u32, u32)> = if args.block.is_empty() {
        let lo = pick(args.qmin, &file, "qmin", 0)?;
        let hi = pick(args.qmax, &file, "qmax", 2)?;
        (lo..=hi).flat_map(|a| (lo..=hi).map(move |c| (a, c))).collect()
    } else {
        args.block.chunks(2).map(|b| (b[0], b[1])).collect()
    };
    Ok((spectrum_report(&s.params, &blocks)?, s))
}

pub fn spectrum_report(params: &ModelParams, blocks: &[(u32, u32)]) -> CliResult<Report> {
    let mut rows = Vec::with_capacity(blocks.len());
    let mut table = Table::new(&["q_ab", "q_ac", "index", "eigenvalue"]);
    for &(q_ab, q_ac) in blocks {
        let r = diag::block_spectrum(params, q_ab, q_ac)?;
        for (i, e) in r.eigenvalues.iter().enumerate() {
            table.push(vec![q_ab.to_string(), q_ac.to_string(), i.to_string(), cell(*e)]);
        }
        rows.push(
            Obj::new()
                .with("q_ab", int(q_ab as i64))
                .with("q_ac", int(q_ac as i64))
                .with("eigenvalues", nums(&r.eigenvalues))
                .build(),
        );
    }
    Ok(Report {
        json: Value::Array(rows),
        table,
    })
}

struct AnalyticRow {
    labels: [i64; 3],
    energy: Energy,
    /// Both detuning conventions, normal-mode rows only.
    signs: Option<(f64, f64)>,
}

pub fn analytic(args: &AnalyticArgs) -> CliResult<(Report, Settings)> {
    let file = load_config(&args.common)?;
    let s = settings(&args.common, &file, &["method", "delta-sign", "nmax"])?;
    let method = pick(args.method, &file, "method", MethodArg::Su11)?;
    let sign = pick(args.delta_sign, &file, "delta-sign", DeltaSignArg::Paper)?;
    let nmax = pick(args.nmax, &file, "nmax", 2)?;
    Ok((analytic_report(&s.params, method, sign, nmax)?, s))
}

pub fn analytic_report(params: &ModelParams, method: MethodArg, sign: DeltaSignArg, nmax: u32) -> CliResult<Report> {
    let n = nmax as i64;
    let mut rows = Vec::new();
    match method {
        MethodArg::Bogoliubov => {
            for n_a in 0..=nmax {
                for n_abar in 0..=nmax {
                    for n_d in 0..=nmax {
                        rows.push(AnalyticRow {
                            labels: [n_a as i64, n_abar as i64, n_d as i64],
                            energy: spectra::energy_bogoliubov(params, n_a, n_abar, n_d)?,
                            signs: None,
                        });
                    }
                }
            }
        }
        MethodArg::Su11 => {
            for n_a in 0..=nmax {
                for n_l in 0..=nmax {
                    for m_n in -n..=n {
                        let q = QuantumNumbersSU11 { n_a, n_l, m_n };
                        rows.push(AnalyticRow {
                            labels: [n_a as i64, n_l as i64, m_n],
                            energy: spectra::energy_su11(params, &q),
                            signs: None,
                        });
                    }
                }
            }
        }
        MethodArg::Nm => {
            for n_c in 0..=nmax {
                for n_1 in 0..=nmax {
                    for n_2 in 0..=nmax {
                        let q = QuantumNumbersNM { n_c, n_1, n_2 };
                        let paper = spectra::energy_normal_mode(params, &q, DeltaSign::Paper);
                        let alt = spectra::energy_normal_mode(params, &q, DeltaSign::Alt);
                        let chosen = match sign {
                            DeltaSignArg::Paper => paper,
                            DeltaSignArg::Alt => alt,
                        };
                        rows.push(AnalyticRow {
                            labels: [n_c as i64, n_1 as i64, n_2 as i64],
                            energy: Energy::Real(chosen),
                            signs: Some((paper, alt)),
                        });
                    }
                }
            }
        }
        MethodArg::Su2 => {
            for n_c in 0..=nmax {
                for n_l in 0..=nmax {
                    for m_n in -n..=n {
                        let q = QuantumNumbersSU2 { n_c, n_l, m_n };
                        if q.validate().is_err() {
                            continue;
                        }
                        rows.push(AnalyticRow {
                            labels: [n_c as i64, n_l as i64, m_n],
                            energy: Energy::Real(spectra::energy_su2(params, &q)),
                            signs: None,
                        });
                    }
                }
            }
        }
    }

    let names: [&str; 3] = match method {
        MethodArg::Bogoliubov => ["n_a", "n_abar", "n_d"],
        MethodArg::Su11 => ["n_a", "n_l", "m_n"],
        MethodArg::Nm => ["n_c", "n_1", "n_2"],
        MethodArg::Su2 => ["n_c", "n_l", "m_n"],
    };
    let header: &'static [&'static str] = match method {
        MethodArg::Bogoliubov => &["n_a", "n_abar", "n_d", "energy", "energy_im", "nonreal"],
        MethodArg::Su11 => &["n_a", "n_l", "m_n", "energy", "energy_im", "nonreal"],
        MethodArg::Nm => &[
            "n_c",
            "n_1",
            "n_2",
            "energy",
            "energy_im",
            "nonreal",
            "energy_paper",
            "energy_alt",
        ],
        MethodArg::Su2 => &["n_c", "n_l", "m_n", "energy", "energy_im", "nonreal"],
    };
    let mut table = Table::new(header);
    let mut json_rows = Vec::with_capacity(rows.len());
    for r in &rows {
        let mut line: Vec<String> = r.labels.iter().map(i64::to_string).collect();
        line.extend([
            cell(r.energy.re()),
            cell(r.energy.im()),
            (!r.energy.is_real()).to_string(),
        ]);
        let mut obj = Obj::new();
        for (name, v) in names.iter().zip(r.labels) {
            obj = obj.with(name, int(v));
        }
        obj = obj
            .with("energy", num(r.energy.re()))
            .with("energy_im", num(r.energy.im()))
            .with("nonreal", Value::Bool(!r.energy.is_real()));
        if let Some((paper, alt)) = r.signs {
            line.extend([cell(paper), cell(alt)]);
            obj = obj.with("energy_paper", num(paper)).with("energy_alt", num(alt));
        }
        table.push(line);
        json_rows.push(obj.build());
    }
    let mut json = Obj::new()
        .with("method", Value::String(method_name(method).into()))
        .with("params", params_json(params));
    if method == MethodArg::Nm {
        json = json.with("delta_sign", Value::String(sign_name(sign).into()));
    }
    Ok(Report {
        json: json.with("rows", Value::Array(json_rows)).build(),
        table,
    })
}

/// Resolved inputs of `coherent`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherentSpec {
    pub group: GroupArg,
    pub n_l: u32,
    pub m_n: i64,
    pub zeta: C64,
    pub grid: Option<(f64, usize, usize)>,
}

pub fn coherent(args: &CoherentArgs) -> CliResult<(Report, Settings)> {
    let file = load_config(&args.common)?;
    let s = settings(
        &args.common,
        &file,
        &[
            "group", "n-l", "m-n", "zeta-re", "zeta-im", "grid", "rho-max", "n-rho", "n-phi",
        ],
    )?;
    let grid = args.grid || file.get::<bool>("grid")?.unwrap_or(false);
    let spec = CoherentSpec {
        group: pick(args.group, &file, "group", GroupArg::Su11)?,
        n_l: pick(args.n_l, &file, "n-l", 0)?,
        m_n: pick(args.m_n, &file, "m-n", 0)?,
        zeta: C64::new(
            pick(args.zeta_re, &file, "zeta-re", 0.0)?,
            pick(args.zeta_im, &file, "zeta-im", 0.0)?,
        ),
        grid: if grid {
            Some((
                pick(args.rho_max, &file, "rho-max", 6.0)?,
                pick(args.n_rho, &file, "n-rho", 61)?,
                pick(args.n_phi, &file, "n-phi", 64)?,
            ))
        } else {
            None
        },
    };
    Ok((coherent_report(&spec)?, s))
}

/// `xi` of the displacement whose normal-form parameter is `zeta`.
pub fn zeta_to_xi(group: GroupArg, zeta: C64) -> CliResult<C64> {
    let r = zeta.norm();
    if !(zeta.re.is_finite() && zeta.im.is_finite()) {
        return Err(CliError::Invalid("zeta must be finite".into()));
    }
    if r == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let angle = match group {
        GroupArg::Su11 => {
            if r >= 1.0 {
                return Err(CoreError::Domain(format!("|zeta| = {r} must be below 1 for su(1,1)")).into());
            }
            r.atanh()
        }
        GroupArg::Su2 => r.atan(),
    };
    Ok(zeta / r * angle)
}

fn su2_label(n_l: u32, m_n: i64) -> CliResult<SU2Label> {
    let two_j =
        u32::try_from(2 * n_l as i64 + m_n.abs()).map_err(|_| CliError::Invalid("multiplet too large".into()))?;
    Ok(SU2Label::new(two_j, m_n)?)
}

pub fn coherent_report(spec: &CoherentSpec) -> CliResult<Report> {
    let xi = zeta_to_xi(spec.group, spec.zeta)?;
    let group = match spec.group {
        GroupArg::Su11 => "su11",
        GroupArg::Su2 => "su2",
    };
    let head = Obj::new()
        .with("group", Value::String(group.into()))
        .with("n_l", int(spec.n_l as i64))
        .with("m_n", int(spec.m_n))
        .with(
            "zeta",
            Obj::new()
                .with("re", num(spec.zeta.re))
                .with("im", num(spec.zeta.im))
                .build(),
        )
        .with("xi", Obj::new().with("re", num(xi.re)).with("im", num(xi.im)).build());

    if let Some((rho_max, n_rho, n_phi)) = spec.grid {
        let plot = GridSpec::polar(0.0, rho_max, n_rho, n_phi)?;
        let quad = Quadrature::default_polar();
        let eval = |g: &GridSpec| match spec.group {
            GroupArg::Su11 => wavefn::pncs_wavefunction_su11(spec.n_l, spec.m_n, spec.zeta, g),
            GroupArg::Su2 => wavefn::pncs_wavefunction_su2(spec.n_l, spec.m_n, spec.zeta, g),
        };
        let samples = eval(&plot)?;
        let norm = quad.norm(&eval(&quad.grid)?)?;
        let mut table = Table::new(&["rho", "phi", "re", "im", "abs2"]);
        let mut json_rows = Vec::with_capacity(samples.len());
        for smp in &samples {
            let Coord::Polar { rho, phi } = smp.coord else {
                unreachable!("polar grid")
            };
            let v = smp.value;
            table.push(vec![cell(rho), cell(phi), cell(v.re), cell(v.im), cell(v.norm_sqr())]);
            json_rows.push(
                Obj::new()
                    .with("rho", num(rho))
                    .with("phi", num(phi))
                    .with("re", num(v.re))
                    .with("im", num(v.im))
                    .with("abs2", num(v.norm_sqr()))
                    .build(),
            );
        }
        let mut norm_obj = Obj::new().with("norm", num(norm.norm)).with("tail", num(norm.tail));
        norm_obj = norm_obj.with("warning", norm.warning.map_or(Value::Null, Value::String));
        return Ok(Report {
            json: head
                .with("quadrature", norm_obj.build())
                .with("samples", Value::Array(json_rows))
                .build(),
            table,
        });
    }

    let (amps, occupations): (_, Vec<(u32, u32)>) = match spec.group {
        GroupArg::Su11 => {
            let label = SU11Label::from_sector(spec.m_n, spec.n_l);
            let a = algebra::pncs_su11(label, xi, Truncation::Adaptive)?;
            let occ = (0..a.values.len())
                .map(|m| su11_occupations(spec.m_n, m as u32))
                .collect();
            (a, occ)
        }
        GroupArg::Su2 => {
            let label = su2_label(spec.n_l, spec.m_n)?;
            let a = algebra::pncs_su2(label, xi)?;
            let two_j = label.two_j();
            let occ = (0..=two_j).map(|i| (i, two_j - i)).collect();
            (a, occ)
        }
    };
    let (first, second) = match spec.group {
        GroupArg::Su11 => ("n_b", "n_c"),
        GroupArg::Su2 => ("n_a", "n_b"),
    };
    let mut table = Table::new(&["index", "n_first", "n_second", "re", "im", "abs2"]);
    let mut json_rows = Vec::with_capacity(amps.values.len());
    for (i, (a, (n1, n2))) in amps.values.iter().zip(&occupations).enumerate() {
        table.push(vec![
            i.to_string(),
            n1.to_string(),
            n2.to_string(),
            cell(a.re),
            cell(a.im),
            cell(a.norm_sqr()),
        ]);
        json_rows.push(
            Obj::new()
                .with("index", int(i as i64))
                .with(first, int(*n1 as i64))
                .with(second, int(*n2 as i64))
                .with("re", num(a.re))
                .with("im", num(a.im))
                .with("abs2", num(a.norm_sqr()))
                .build(),
        );
    }
    Ok(Report {
        json: head
            .with("tail", num(amps.tail))
            .with("amplitudes", Value::Array(json_rows))
            .build(),
        table,
    })
}

/// Resolved inputs of `compare`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompareSpec {
    pub method: MethodArg,
    pub sign: DeltaSignArg,
    pub qmax: u32,
    pub g_grid: Vec<f64>,
    pub beta_grid: Vec<f64>,
}

pub fn compare(args: &CompareArgs) -> CliResult<(Report, Settings)> {
    let file = load_config(&args.common)?;
    let s = settings(
        &args.common,
        &file,
        &["method", "delta-sign", "qmax", "g-grid", "beta-grid"],
    )?;
    let g_text = args
        .g_grid
        .clone()
        .or_else(|| file.raw("g-grid").map(str::to_string))
        .unwrap_or_else(|| "0,0.0125,0.025,0.05,0.1".into());
    let beta_text = args
        .beta_grid
        .clone()
        .or_else(|| file.raw("beta-grid").map(str::to_string))
        .unwrap_or_else(|| "0.5,1,2".into());
    let spec = CompareSpec {
        method: pick(args.method, &file, "method", MethodArg::Su11)?,
        sign: pick(args.delta_sign, &file, "delta-sign", DeltaSignArg::Paper)?,
        qmax: pick(args.qmax, &file, "qmax", 4)?,
        g_grid: parse_list(&g_text, "g-grid")?,
        beta_grid: parse_list(&beta_text, "beta-grid")?,
    };
    Ok((compare_report(&s.params, &spec)?, s))
}

/// One `|beta|` of the expectation matching scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatchPoint {
    pub beta: f64,
    pub alpha_predicted: f64,
    /// `|alpha|` minimizing the gap on the scan grid.
    pub alpha_scan: f64,
    pub gap_at_predicted: f64,
    pub gap_at_scan: f64,
}

/// Lowest-state expectation matching at isotropic frequency `omega`.
pub fn matching_scan(omega: f64, g: f64, betas: &[f64]) -> CliResult<Vec<MatchPoint>> {
    let params = ModelParams::isotropic(omega, g)?;
    let gap = |alpha: f64, beta: f64| {
        let a = spectra::expval_su11(&params, C64::new(alpha, 0.0), 0, 0);
        let b = spectra::expval_su2(&params, C64::new(beta, 0.0), 0, 0);
        if a.is_real() {
            (a.re() - b).abs()
        } else {
            f64::INFINITY
        }
    };
    let steps = 30_000;
    let mut out = Vec::with_capacity(betas.len());
    for &beta in betas {
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(CliError::Invalid(format!("beta-grid values must be >= 0, got {beta}")));
        }
        let predicted = spectra::matching_alpha(g, omega, beta)?;
        let top = 3.0 * predicted.max(1e-3);
        let (alpha_scan, gap_at_scan) = (0..=steps)
            .map(|k| top * k as f64 / steps as f64)
            .map(|a| (a, gap(a, beta)))
            .fold((0.0, f64::INFINITY), |best, p| if p.1 < best.1 { p } else { best });
        out.push(MatchPoint {
            beta,
            alpha_predicted: predicted,
            alpha_scan,
            gap_at_predicted: gap(predicted, beta),
            gap_at_scan,
        });
    }
    Ok(out)
}

pub fn analytic_method(method: MethodArg, sign: DeltaSignArg) -> AnalyticMethod {
    match method {
        MethodArg::Bogoliubov => AnalyticMethod::Bogoliubov,
        MethodArg::Su11 => AnalyticMethod::Su11,
        MethodArg::Nm => AnalyticMethod::NormalMode(delta_sign(sign)),
        MethodArg::Su2 => AnalyticMethod::Su2,
    }
}

pub fn compare_report(params: &ModelParams, spec: &CompareSpec) -> CliResult<Report> {
    if spec.g_grid.is_empty() {
        return Err(CliError::Invalid("g-grid is empty".into()));
    }
    if let Some(g) = spec.g_grid.iter().find(|g| !(g.is_finite() && **g >= 0.0)) {
        return Err(CliError::Invalid(format!("g-grid values must be >= 0, got {g}")));
    }
    let method = analytic_method(spec.method, spec.sign);
    let scan = diag::discrepancy_scan(params, spec.qmax, spec.qmax, &spec.g_grid, method)?;
    let matching = matching_scan(params.omega1, params.g, &spec.beta_grid)?;

    let mut table = Table::new(&["q_ab", "q_ac", "g", "deviation"]);
    let mut rows = Vec::with_capacity(scan.points.len());
    for p in &scan.points {
        table.push(vec![
            p.q_ab.to_string(),
            p.q_ac.to_string(),
            cell(p.g),
            cell(p.deviation),
        ]);
        rows.push(
            Obj::new()
                .with("q_ab", int(p.q_ab as i64))
                .with("q_ac", int(p.q_ac as i64))
                .with("g", num(p.g))
                .with("deviation", num(p.deviation))
                .build(),
        );
    }
    let max_by_g = scan
        .max_by_g
        .iter()
        .map(|(g, d)| Obj::new().with("g", num(*g)).with("deviation", num(*d)).build())
        .collect();
    let matching_json = matching
        .iter()
        .map(|m| {
            Obj::new()
                .with("beta", num(m.beta))
                .with("alpha_predicted", num(m.alpha_predicted))
                .with("alpha_scan", num(m.alpha_scan))
                .with("gap_at_predicted", num(m.gap_at_predicted))
                .with("gap_at_scan", num(m.gap_at_scan))
                .build()
        })
        .collect();
    let mut json = Obj::new()
        .with("method", Value::String(method_name(spec.method).into()))
        .with("params", params_json(params))
        .with("qmax", int(spec.qmax as i64));
    if spec.method == MethodArg::Nm {
        json = json.with("delta_sign", Value::String(sign_name(spec.sign).into()));
    }
    let json = json
        .with("rows", Value::Array(rows))
        .with("max_by_g", Value::Array(max_by_g))
        .with("slope", scan.slope.map_or(Value::Null, num))
        .with(
            "matching",
            Obj::new()
                .with("omega", num(params.omega1))
                .with("g", num(params.g))
                .with("points", Value::Array(matching_json))
                .build(),
        )
        .build();
    Ok(Report { json, table })
}
