//! Implementations of the CLI subcommands.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::path::Path;

use dimerq_core::coherence::{g0_closed, magnetization, magnetization_fourier, CoherenceSpectrum};
use dimerq_core::discord::CorrelationReport;
use dimerq_core::entanglement::{
    beta1_min, beta2_min, concurrence_beta_xi, g1_max, g1_min, g2_max, g2_min, thresholds, Slice,
    ThresholdReport, xi2_max, xi2_min,
};
use dimerq_core::numeric::linspace;
use dimerq_core::point::{resolve_point, ResolvedPoint};
use dimerq_core::state::DimerParams;
use dimerq_core::verify::{run_verification, ClosedForms};
use dimerq_core::Error as CoreError;

use crate::output::{emit, fmt_sig, round_sig12, Cell, Table};
use crate::{CliError, CommonPoint, FiguresArgs, PointArgs, SweepArgs, SweepVarKind, ThresholdsArgs, VerifyArgs};

const RANGES_HINT: &str = "admissible region: beta >= 0; xi in [0, 1]; \
0 <= G <= tanh(beta/2)/2 at fixed beta; 0 <= G <= (1 - xi^2)/2 at fixed xi";

const MEASURE_COLUMNS: &[&str] = &[
    "beta",
    "xi",
    "dtau_mod_2pi",
    "g_minus2",
    "g_0",
    "g_plus2",
    "q_discord",
    "classical_corr",
    "mutual_info",
    "entropy_a",
    "concurrence",
    "status",
];

const T_SWEEP_COLUMNS: &[&str] = &[
    "beta",
    "xi",
    "delta",
    "t",
    "g_minus2",
    "g_0",
    "g_plus2",
    "iz_trace",
    "iz_fourier",
    "status",
];

/// The (β, ξ, G) inputs of one evaluation plus the D·τ bookkeeping value.
#[derive(Debug, Clone, Copy, Default)]
struct PointInputs {
    beta: Option<f64>,
    xi: Option<f64>,
    g: Option<f64>,
    d_tau: Option<f64>,
}

fn gather_inputs(common: &CommonPoint, lone_coupling_ok: bool) -> Result<PointInputs, CliError> {
    let mut inputs = PointInputs {
        beta: common.beta,
        xi: common.xi,
        g: common.g,
        d_tau: None,
    };
    match (common.coupling, common.tau) {
        (Some(d), Some(tau)) => {
            if common.xi.is_some() {
                return Err(CliError::Usage(format!(
                    "xi is over-determined: given directly and via --coupling/--tau; {RANGES_HINT}"
                )));
            }
            inputs.d_tau = Some(d * tau);
            inputs.xi = Some((d * tau).cos().abs());
        }
        (None, None) => {}
        // a tau sweep supplies tau from the grid
        (Some(_), None) if lone_coupling_ok => {}
        _ => {
            return Err(CliError::Usage(
                "--coupling and --tau must be given together".into(),
            ))
        }
    }
    Ok(inputs)
}

fn resolve(inputs: &PointInputs) -> Result<ResolvedPoint, CoreError> {
    resolve_point(inputs.beta, inputs.xi, inputs.g)
}

fn measure_row(point: &ResolvedPoint, d_tau: Option<f64>) -> Result<Vec<Cell>, CoreError> {
    let report = CorrelationReport::evaluate(point.beta, point.xi)?;
    let concurrence = concurrence_beta_xi(point.beta, point.xi)?;
    let g0 = g0_closed(point.beta, point.xi)?;
    let d_tau_recorded = d_tau
        .map(|v| v.rem_euclid(TAU))
        .unwrap_or_else(|| point.xi.acos());
    Ok(vec![
        Cell::Num(point.beta),
        Cell::Num(point.xi),
        Cell::Num(d_tau_recorded),
        Cell::Num(point.g),
        Cell::Num(g0),
        Cell::Num(point.g),
        Cell::Num(report.discord),
        Cell::Num(report.classical_correlations),
        Cell::Num(report.mutual_information),
        Cell::Num(report.entropy_a),
        Cell::Num(concurrence),
        Cell::Text("ok"),
    ])
}

fn out_of_domain_row(inputs: &PointInputs) -> Vec<Cell> {
    let echo = |v: Option<f64>| v.map(Cell::Num).unwrap_or(Cell::Missing);
    vec![
        echo(inputs.beta),
        echo(inputs.xi),
        echo(inputs.d_tau.map(|v| v.rem_euclid(TAU))),
        echo(inputs.g),
        Cell::Missing,
        echo(inputs.g),
        Cell::Missing,
        Cell::Missing,
        Cell::Missing,
        Cell::Missing,
        Cell::Missing,
        Cell::Text("out_of_domain"),
    ]
}

pub fn cmd_point(args: &PointArgs) -> Result<(), CliError> {
    let inputs = gather_inputs(&args.point, false)?;
    let point = resolve(&inputs)
        .map_err(|e| CliError::Usage(format!("{e}; {RANGES_HINT}")))?;
    let mut table = Table::new(MEASURE_COLUMNS);
    table.push(measure_row(&point, inputs.d_tau).map_err(CliError::from)?);
    emit(&table.render(args.format), args.out.as_deref())?;
    Ok(())
}

struct SweepAxis {
    kind: SweepVarKind,
    values: Vec<f64>,
}

fn sweep_axes(args: &SweepArgs) -> Result<Vec<SweepAxis>, CliError> {
    let n = args.vars.len();
    if n == 0 || n > 2 {
        return Err(CliError::Usage(
            "--var must be given once (or twice for a 2-variable grid)".into(),
        ));
    }
    if args.starts.len() != n || args.stops.len() != n || args.counts.len() != n {
        return Err(CliError::Usage(
            "each --var needs matching --start, --stop and --count".into(),
        ));
    }
    if n == 2 && args.vars[0] == args.vars[1] {
        return Err(CliError::Usage("the two swept variables must differ".into()));
    }
    let mut axes = Vec::new();
    for i in 0..n {
        let (start, stop, count) = (args.starts[i], args.stops[i], args.counts[i]);
        if count < 2 {
            return Err(CliError::Usage(format!("--count must be at least 2, got {count}")));
        }
        let ordered = start.is_finite() && stop.is_finite() && start < stop;
        if !ordered {
            return Err(CliError::Usage(format!(
                "--start must be below --stop, got [{start}, {stop}]"
            )));
        }
        axes.push(SweepAxis {
            kind: args.vars[i],
            values: linspace(start, stop, count).collect(),
        });
    }
    Ok(axes)
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let axes = sweep_axes(args)?;
    let sweeping_t = axes.iter().any(|a| a.kind == SweepVarKind::T);
    if sweeping_t {
        if axes.len() != 1 {
            return Err(CliError::Usage("t sweeps are one-dimensional".into()));
        }
        return sweep_evolution_time(args, &axes[0]);
    }

    let sweeping_tau = axes.iter().any(|a| a.kind == SweepVarKind::Tau);
    let base = gather_inputs(&args.fixed, sweeping_tau)?;
    for axis in &axes {
        let clashes = match axis.kind {
            SweepVarKind::Beta => base.beta.is_some(),
            SweepVarKind::Xi => base.xi.is_some(),
            SweepVarKind::G => base.g.is_some(),
            SweepVarKind::Tau => args.fixed.tau.is_some(),
            SweepVarKind::T => false,
        };
        if clashes {
            return Err(CliError::Usage(format!(
                "swept variable {:?} is also fixed",
                axis.kind
            )));
        }
        if axis.kind == SweepVarKind::Tau && args.fixed.coupling.is_none() {
            return Err(CliError::Usage(
                "sweeping tau requires --coupling for the preparation phase".into(),
            ));
        }
    }

    // a tau sweep is the experiment readout: add the magnetization after
    // the mixing period at the fixed evolution time
    let columns: Vec<&'static str> = if sweeping_tau {
        let mut cols = vec!["tau"];
        cols.extend_from_slice(MEASURE_COLUMNS);
        cols.extend_from_slice(&["t", "iz_trace", "iz_fourier"]);
        cols
    } else {
        MEASURE_COLUMNS.to_vec()
    };
    let mut table = Table::new(&columns);

    let outer: &[f64] = &axes[0].values;
    let inner: Vec<f64> = axes.get(1).map(|a| a.values.clone()).unwrap_or(vec![f64::NAN]);
    for &u in outer {
        for &v in &inner {
            let mut inputs = base;
            let mut tau_cell = None;
            let assignments: Vec<(SweepVarKind, f64)> = if axes.len() == 2 {
                vec![(axes[0].kind, u), (axes[1].kind, v)]
            } else {
                vec![(axes[0].kind, u)]
            };
            for (kind, value) in assignments {
                match kind {
                    SweepVarKind::Beta => inputs.beta = Some(value),
                    SweepVarKind::Xi => inputs.xi = Some(value),
                    SweepVarKind::G => inputs.g = Some(value),
                    SweepVarKind::Tau => {
                        let d = args.fixed.coupling.expect("checked above");
                        inputs.d_tau = Some(d * value);
                        inputs.xi = Some((d * value).cos().abs());
                        tau_cell = Some(value);
                    }
                    SweepVarKind::T => unreachable!("handled separately"),
                }
            }
            let resolved = resolve(&inputs);
            let mut row = match &resolved {
                Ok(point) => measure_row(point, inputs.d_tau).map_err(CliError::from)?,
                Err(CoreError::OutOfDomain { .. }) => out_of_domain_row(&inputs),
                Err(e) => return Err(CliError::Usage(format!("{e}; {RANGES_HINT}"))),
            };
            if sweeping_tau {
                row.insert(0, tau_cell.map(Cell::Num).unwrap_or(Cell::Missing));
                row.push(Cell::Num(args.t));
                let magnetization_cells = match (&resolved, tau_cell) {
                    (Ok(point), Some(tau)) if point.beta.is_finite() => {
                        let d = args.fixed.coupling.expect("checked above");
                        let p = DimerParams::new(point.beta, d, tau, args.delta, args.t)
                            .map_err(CliError::from)?;
                        (
                            Cell::Num(magnetization(&p).map_err(CliError::from)?),
                            Cell::Num(magnetization_fourier(&p).map_err(CliError::from)?),
                        )
                    }
                    _ => (Cell::Missing, Cell::Missing),
                };
                row.push(magnetization_cells.0);
                row.push(magnetization_cells.1);
            }
            table.push(row);
        }
    }
    emit(&table.render(args.format), args.out.as_deref())?;
    Ok(())
}

fn sweep_evolution_time(args: &SweepArgs, axis: &SweepAxis) -> Result<(), CliError> {
    let beta = args.fixed.beta.ok_or_else(|| {
        CliError::Usage("t sweeps need a fixed --beta".into())
    })?;
    let (coupling, tau) = match (args.fixed.coupling, args.fixed.tau, args.fixed.xi) {
        (Some(d), Some(tau), None) => (d, tau),
        (None, None, Some(xi)) => {
            if !(0.0..=1.0).contains(&xi) {
                return Err(CliError::Usage(format!("xi = {xi} outside [0, 1]")));
            }
            (1.0, xi.acos())
        }
        _ => {
            return Err(CliError::Usage(
                "t sweeps need either --coupling with --tau, or --xi".into(),
            ))
        }
    };
    let mut table = Table::new(T_SWEEP_COLUMNS);
    for &t in &axis.values {
        let params = DimerParams::new(beta, coupling, tau, args.delta, t).map_err(CliError::from)?;
        let spectrum = CoherenceSpectrum::evaluate(&params).map_err(CliError::from)?;
        let trace = magnetization(&params).map_err(CliError::from)?;
        let fourier = magnetization_fourier(&params).map_err(CliError::from)?;
        table.push(vec![
            Cell::Num(beta),
            Cell::Num(params.xi()),
            Cell::Num(args.delta),
            Cell::Num(t),
            Cell::Num(spectrum.g_minus2),
            Cell::Num(spectrum.g_0),
            Cell::Num(spectrum.g_plus2),
            Cell::Num(trace),
            Cell::Num(fourier),
            Cell::Text("ok"),
        ]);
    }
    emit(&table.render(args.format), args.out.as_deref())?;
    Ok(())
}

pub fn cmd_thresholds(args: &ThresholdsArgs) -> Result<(), CliError> {
    let slice = match (args.beta, args.g, args.xi) {
        (Some(b), None, None) => Slice::Beta(b),
        (None, Some(g), None) => Slice::G(g),
        (None, None, Some(xi)) => Slice::Xi(xi),
        _ => {
            return Err(CliError::Usage(
                "exactly one of --beta, --g, --xi selects the slice".into(),
            ))
        }
    };
    let report = thresholds(slice).map_err(|e| CliError::Usage(format!("{e}; {RANGES_HINT}")))?;
    let (name, value): (&'static str, f64) = match slice {
        Slice::Beta(b) => ("beta", b),
        Slice::G(g) => ("g", g),
        Slice::Xi(x) => ("xi", x),
    };
    let mut table = Table::new(&[
        "slice", "value", "g1_max", "g1_min", "beta1_min", "beta2_min", "g2_max", "g2_min",
        "xi2_max", "xi2_min",
    ]);
    let cell = |v: Option<f64>| v.map(Cell::Num).unwrap_or(Cell::Missing);
    let ThresholdReport {
        g1_max,
        g1_min,
        beta1_min,
        beta2_min,
        g2_max,
        g2_min,
        xi2_max,
        xi2_min,
    } = report;
    table.push(vec![
        Cell::Text(name),
        Cell::Num(value),
        cell(g1_max),
        cell(g1_min),
        cell(beta1_min),
        cell(beta2_min),
        cell(g2_max),
        cell(g2_min),
        cell(xi2_max),
        cell(xi2_min),
    ]);
    emit(&table.render(args.format), args.out.as_deref())?;
    Ok(())
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let report = run_verification(args.grid, &ClosedForms::default())
        .map_err(|e| CliError::Usage(e.to_string()))?;
    for check in &report.checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        println!(
            "{status}  {}  (worst {}, tol {})",
            check.name,
            fmt_sig(check.worst, 3),
            fmt_sig(check.tolerance, 3)
        );
    }
    let passed = report.checks.len() - report.failures();
    println!("{passed}/{} checks passed", report.checks.len());
    if report.all_passed() {
        Ok(())
    } else {
        Err(CliError::Verification(report.failures()))
    }
}

// ---------------------------------------------------------------------------
// figures
// ---------------------------------------------------------------------------

const FIG2_BETAS: [f64; 3] = [1.0, 2.0, 5.0];
const FIG_GS: [f64; 3] = [0.1, 0.25, 0.4];
const FIG3_XIS: [f64; 3] = [0.9, FRAC_1_SQRT_2, 0.0];
const SLICE_POINTS: usize = 201;

pub fn cmd_figures(args: &FiguresArgs) -> Result<(), CliError> {
    std::fs::create_dir_all(&args.out)?;
    write_fig1(&args.out)?;
    write_fig2a(&args.out)?;
    write_fig2b(&args.out)?;
    write_fig3a(&args.out)?;
    write_fig3b(&args.out)?;
    write_thresholds_json(&args.out)?;
    Ok(())
}

fn curve_row(point: &ResolvedPoint) -> Result<(f64, f64), CliError> {
    let q = dimerq_core::discord::discord_closed(point.beta, point.xi).map_err(CliError::from)?;
    let c = concurrence_beta_xi(point.beta, point.xi).map_err(CliError::from)?;
    Ok((q, c))
}

fn write_fig1(dir: &Path) -> Result<(), CliError> {
    let mut table = Table::new(&["beta", "xi", "q_discord"]);
    for beta in linspace(0.0, 5.0, 101) {
        for xi in linspace(0.0, 1.0, 101) {
            let q = dimerq_core::discord::discord_closed(beta, xi).map_err(CliError::from)?;
            table.push(vec![Cell::Num(beta), Cell::Num(xi), Cell::Num(q)]);
        }
    }
    emit(&table.to_csv(), Some(&dir.join("fig1.csv")))?;
    Ok(())
}

fn write_fig2a(dir: &Path) -> Result<(), CliError> {
    let mut table = Table::new(&["beta", "g", "xi", "q_discord", "concurrence"]);
    for beta in FIG2_BETAS {
        let g_top = g1_max(beta).map_err(CliError::from)?;
        for g in linspace(0.0, g_top, SLICE_POINTS) {
            let point = resolve_point(Some(beta), None, Some(g)).map_err(CliError::from)?;
            let (q, c) = curve_row(&point)?;
            table.push(vec![
                Cell::Num(beta),
                Cell::Num(g),
                Cell::Num(point.xi),
                Cell::Num(q),
                Cell::Num(c),
            ]);
        }
    }
    emit(&table.to_csv(), Some(&dir.join("fig2a.csv")))?;
    Ok(())
}

fn write_fig2b(dir: &Path) -> Result<(), CliError> {
    let mut table = Table::new(&["g", "beta", "xi", "q_discord", "concurrence"]);
    for g in FIG_GS {
        let beta_floor = beta1_min(g).map_err(CliError::from)?;
        for beta in linspace(beta_floor, 5.0, SLICE_POINTS) {
            let point = resolve_point(Some(beta), None, Some(g)).map_err(CliError::from)?;
            let (q, c) = curve_row(&point)?;
            table.push(vec![
                Cell::Num(g),
                Cell::Num(beta),
                Cell::Num(point.xi),
                Cell::Num(q),
                Cell::Num(c),
            ]);
        }
    }
    emit(&table.to_csv(), Some(&dir.join("fig2b.csv")))?;
    Ok(())
}

fn write_fig3a(dir: &Path) -> Result<(), CliError> {
    let mut table = Table::new(&["xi", "g", "beta", "q_discord", "concurrence"]);
    for xi in FIG3_XIS {
        let g_top = g2_max(xi).map_err(CliError::from)?;
        for g in linspace(0.0, g_top, SLICE_POINTS) {
            let point = resolve_point(None, Some(xi), Some(g)).map_err(CliError::from)?;
            let (q, c) = curve_row(&point)?;
            table.push(vec![
                Cell::Num(xi),
                Cell::Num(g),
                Cell::Num(point.beta),
                Cell::Num(q),
                Cell::Num(c),
            ]);
        }
    }
    emit(&table.to_csv(), Some(&dir.join("fig3a.csv")))?;
    Ok(())
}

fn write_fig3b(dir: &Path) -> Result<(), CliError> {
    let mut table = Table::new(&["g", "xi", "beta", "q_discord", "concurrence"]);
    for g in FIG_GS {
        let xi_top = xi2_max(g).map_err(CliError::from)?;
        for xi in linspace(0.0, xi_top, SLICE_POINTS) {
            let point = resolve_point(None, Some(xi), Some(g)).map_err(CliError::from)?;
            let (q, c) = curve_row(&point)?;
            table.push(vec![
                Cell::Num(g),
                Cell::Num(xi),
                Cell::Num(point.beta),
                Cell::Num(q),
                Cell::Num(c),
            ]);
        }
    }
    emit(&table.to_csv(), Some(&dir.join("fig3b.csv")))?;
    Ok(())
}

fn write_thresholds_json(dir: &Path) -> Result<(), CliError> {
    let nums = |values: Vec<f64>| -> serde_json::Value {
        serde_json::Value::Array(
            values
                .into_iter()
                .map(|v| {
                    serde_json::Number::from_f64(round_sig12(v))
                        .map(serde_json::Value::Number)
                        .unwrap_or(serde_json::Value::Null)
                })
                .collect(),
        )
    };

    let mut fig2a = serde_json::Map::new();
    let mut g1_maxes = Vec::new();
    let mut q_at = Vec::new();
    let mut c_at = Vec::new();
    let mut g1_mins = Vec::new();
    for beta in FIG2_BETAS {
        let g_top = g1_max(beta).map_err(CliError::from)?;
        let point = resolve_point(Some(beta), None, Some(g_top)).map_err(CliError::from)?;
        let (q, c) = curve_row(&point)?;
        g1_maxes.push(g_top);
        q_at.push(q);
        c_at.push(c);
        g1_mins.push(g1_min(beta).map_err(CliError::from)?);
    }
    fig2a.insert("beta".into(), nums(FIG2_BETAS.to_vec()));
    fig2a.insert("g1_max".into(), nums(g1_maxes));
    fig2a.insert("q_at_g1_max".into(), nums(q_at));
    fig2a.insert("concurrence_at_g1_max".into(), nums(c_at));
    fig2a.insert("g1_min".into(), nums(g1_mins));

    let mut fig2b = serde_json::Map::new();
    let mut beta1_mins = Vec::new();
    let mut q_at = Vec::new();
    let mut c_at = Vec::new();
    let mut beta2_mins = Vec::new();
    for g in FIG_GS {
        let floor = beta1_min(g).map_err(CliError::from)?;
        let point = resolve_point(Some(floor), None, Some(g)).map_err(CliError::from)?;
        let (q, c) = curve_row(&point)?;
        beta1_mins.push(floor);
        q_at.push(q);
        c_at.push(c);
        beta2_mins.push(beta2_min(g).map_err(CliError::from)?);
    }
    fig2b.insert("g".into(), nums(FIG_GS.to_vec()));
    fig2b.insert("beta1_min".into(), nums(beta1_mins));
    fig2b.insert("q_at_beta1_min".into(), nums(q_at));
    fig2b.insert("concurrence_at_beta1_min".into(), nums(c_at));
    fig2b.insert("beta2_min".into(), nums(beta2_mins));

    let mut fig3a = serde_json::Map::new();
    let mut g2_maxes = Vec::new();
    let mut q_at = Vec::new();
    let mut c_at = Vec::new();
    let mut g2_mins = Vec::new();
    for xi in FIG3_XIS {
        let g_top = g2_max(xi).map_err(CliError::from)?;
        let point = resolve_point(None, Some(xi), Some(g_top)).map_err(CliError::from)?;
        let (q, c) = curve_row(&point)?;
        g2_maxes.push(g_top);
        q_at.push(q);
        c_at.push(c);
        g2_mins.push(g2_min(xi).map_err(CliError::from)?);
    }
    fig3a.insert("xi".into(), nums(FIG3_XIS.to_vec()));
    fig3a.insert("g2_max".into(), nums(g2_maxes));
    fig3a.insert("q_at_g2_max".into(), nums(q_at));
    fig3a.insert("concurrence_at_g2_max".into(), nums(c_at));
    fig3a.insert("g2_min".into(), nums(g2_mins));

    let mut fig3b = serde_json::Map::new();
    let mut xi2_maxes = Vec::new();
    let mut q_at = Vec::new();
    let mut c_at = Vec::new();
    let mut xi2_mins = Vec::new();
    for g in FIG_GS {
        let xi_top = xi2_max(g).map_err(CliError::from)?;
        let point = resolve_point(None, Some(xi_top), Some(g)).map_err(CliError::from)?;
        let (q, c) = curve_row(&point)?;
        xi2_maxes.push(xi_top);
        q_at.push(q);
        c_at.push(c);
        xi2_mins.push(xi2_min(g).map_err(CliError::from)?);
    }
    fig3b.insert("g".into(), nums(FIG_GS.to_vec()));
    fig3b.insert("xi2_max".into(), nums(xi2_maxes));
    fig3b.insert("q_at_xi2_max".into(), nums(q_at));
    fig3b.insert("concurrence_at_xi2_max".into(), nums(c_at));
    fig3b.insert("xi2_min".into(), nums(xi2_mins));

    let mut root = serde_json::Map::new();
    root.insert("fig2a".into(), serde_json::Value::Object(fig2a));
    root.insert("fig2b".into(), serde_json::Value::Object(fig2b));
    root.insert("fig3a".into(), serde_json::Value::Object(fig3a));
    root.insert("fig3b".into(), serde_json::Value::Object(fig3b));

    let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(root))
        .expect("serializable thresholds");
    text.push('\n');
    emit(&text, Some(&dir.join("thresholds.json")))?;
    Ok(())
}
