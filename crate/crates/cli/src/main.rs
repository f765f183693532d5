//! Command-line surface for the measurement simulator.
//!
//! Subcommands: `run` (full per-final-state report at one pointer width),
//! `sweep` (conditional means across widths with strong/weak asymptote
//! columns), `mc` (seeded Monte Carlo with oracle columns) and `response`
//! (exact vs first-order perturbation response).
//!
//! Exit codes: 0 success, 2 configuration errors, 3 numerical failures.

mod params;
mod report;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use pointersim_core::montecarlo::{estimate, sample_trials, write_trials_csv, Regime};
use pointersim_core::pointer::{
    joint_distribution, momentum_mean_reading, PointerProfile, QuadratureGrid,
};
use pointersim_core::qcore::Observable;
use pointersim_core::scenarios::{
    build_identity_two_level, build_spin_scenario, build_three_path, load_scenario,
    SpinScenarioParams, ThreePathParams,
};
use pointersim_core::values::{abl_value, linear_response, weak_value};
use pointersim_core::{JointDistribution64, Scenario64};

use params::{parse_param_map, reject_leftovers, take_complex, take_optional_real, take_real};
use report::{
    GridInfo, McOracle, McReport, ResponseReport, ResponseRow, RunFinal, RunReport, SweepAsymptote,
    SweepFinal, SweepReport, SweepRow, SCHEMA_VERSION,
};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError::Config(message.into())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) | CliError::Numerical(m) => write!(f, "{m}"),
        }
    }
}

impl From<pointersim_core::Error> for CliError {
    fn from(e: pointersim_core::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "pointersim",
    version,
    about = "Pre/post-selected measurements with tunable-strength pointers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-final-state probabilities, conditional values and mean readings.
    Run(RunArgs),
    /// Conditional mean readings across a list of pointer widths.
    Sweep(SweepArgs),
    /// Seeded Monte Carlo trials with statistical estimates.
    Mc(McArgs),
    /// Exact vs first-order response to an impulsive perturbation.
    Response(ResponseArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Built-in scenario name (spin, three-path, identity-two-level) or a
    /// scenario file path.
    #[arg(long)]
    scenario: String,

    /// Builder parameters, e.g. theta=1.0,phi=0.5 or a=0.3,a_prime=0.1+0.2i.
    #[arg(long)]
    params: Option<String>,

    /// Observable name within the scenario.
    #[arg(long, default_value = "pi_1")]
    observable: String,

    /// Pointer width (measurement inaccuracy).
    #[arg(long, default_value_t = 1.0)]
    delta_f: f64,

    /// Coupling strength scaling the pointer shifts.
    #[arg(long, default_value_t = 1.0)]
    beta: f64,

    /// Override the automatic grid point count (odd, >= 513).
    #[arg(long)]
    grid_points: Option<usize>,

    /// Override the automatic grid span as `lo,hi`.
    #[arg(long, value_name = "LO,HI", allow_hyphen_values = true)]
    grid_span: Option<String>,

    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Pointer widths to sweep (comma separated, at least two).
    #[arg(long, value_delimiter = ',', required = true)]
    strengths: Vec<f64>,
}

#[derive(Args)]
struct McArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Number of Monte Carlo trials.
    #[arg(long, default_value_t = 100_000)]
    trials: u64,

    /// RNG seed; fixed seeds give byte-identical reports.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Also write the raw trials as CSV to this path.
    #[arg(long, value_name = "PATH")]
    dump_trials: Option<PathBuf>,
}

#[derive(Args)]
struct ResponseArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Perturbation strengths (comma separated); each row also evaluates
    /// the halved strength for the residual ratio.
    #[arg(long, value_delimiter = ',', required = true)]
    strengths: Vec<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Mc(args) => cmd_mc(&args),
        Command::Response(args) => cmd_response(&args),
    };
    match outcome {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn build_scenario(name: &str, params: Option<&str>) -> Result<Scenario64, CliError> {
    let mut map = parse_param_map(params)?;
    match name {
        "spin" => {
            let theta = take_real(&mut map, "theta", 0.0)?;
            let theta_prime = take_real(&mut map, "theta_prime", 0.0)?;
            let phi = take_real(&mut map, "phi", 0.0)?;
            let phi_prime = take_real(&mut map, "phi_prime", 0.0)?;
            let epsilon = take_optional_real(&mut map, "epsilon")?;
            reject_leftovers(&map)?;
            let mut p = SpinScenarioParams::new(theta, theta_prime, phi, phi_prime);
            if let Some(eps) = epsilon {
                p = p.with_epsilon(eps)?;
            }
            Ok(build_spin_scenario(p)?)
        }
        "three-path" => {
            let third = Complex64::new(1.0 / 3.0, 0.0);
            let a = take_complex(&mut map, "a", third)?;
            let a_prime = take_complex(&mut map, "a_prime", third)?;
            reject_leftovers(&map)?;
            Ok(build_three_path(ThreePathParams::new(a, a_prime))?)
        }
        "identity-two-level" => {
            reject_leftovers(&map)?;
            Ok(build_identity_two_level()?)
        }
        path => {
            if !map.is_empty() {
                return Err(CliError::config(
                    "--params only applies to built-in scenarios",
                ));
            }
            Ok(load_scenario(Path::new(path))?)
        }
    }
}

struct Setup {
    scenario: Scenario64,
    observable: Observable<f64>,
}

fn setup(common: &CommonArgs) -> Result<Setup, CliError> {
    if !(common.delta_f.is_finite() && common.delta_f > 0.0) {
        return Err(CliError::config("--delta-f must be finite and positive"));
    }
    if !(common.beta.is_finite() && common.beta > 0.0) {
        return Err(CliError::config("--beta must be finite and positive"));
    }
    let scenario = build_scenario(&common.scenario, common.params.as_deref())?;
    let observable = scenario.observable(&common.observable)?.clone();
    Ok(Setup {
        scenario,
        observable,
    })
}

fn profile_for(width: f64, beta: f64) -> Result<PointerProfile<f64>, CliError> {
    Ok(PointerProfile::gaussian(width)?.with_coupling(beta)?)
}

fn resolve_grid(
    common: &CommonArgs,
    observable: &Observable<f64>,
    profile: &PointerProfile<f64>,
) -> Result<QuadratureGrid<f64>, CliError> {
    let shifts: Vec<f64> = observable
        .eigenvalues()
        .iter()
        .map(|b| b * profile.coupling())
        .collect();
    let auto = QuadratureGrid::auto(&shifts, profile.width())?;
    if common.grid_span.is_none() && common.grid_points.is_none() {
        return Ok(auto);
    }
    let (lo, hi) = match &common.grid_span {
        None => (auto.f_min(), auto.f_max()),
        Some(text) => {
            let parts: Vec<&str> = text.split(',').collect();
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::config(format!("--grid-span: `{s}` is not a number")))
            };
            match parts.as_slice() {
                [a, b] => (parse(a)?, parse(b)?),
                _ => return Err(CliError::config("--grid-span expects `lo,hi`")),
            }
        }
    };
    Ok(QuadratureGrid::new(
        lo,
        hi,
        common.grid_points.unwrap_or_else(|| auto.points()),
    )?)
}

fn joint(
    setup: &Setup,
    common: &CommonArgs,
    width: f64,
) -> Result<(JointDistribution64, PointerProfile<f64>), CliError> {
    let profile = profile_for(width, common.beta)?;
    let grid = resolve_grid(common, &setup.observable, &profile)?;
    let jd = joint_distribution(&setup.scenario.chain, &setup.observable, &profile, grid)?;
    Ok((jd, profile))
}

fn render<R: serde::Serialize>(
    format: OutputFormat,
    report: &R,
    csv: String,
) -> Result<String, CliError> {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(report)
            .map(|mut s| {
                s.push('\n');
                s
            })
            .map_err(|e| CliError::config(e.to_string())),
        OutputFormat::Csv => Ok(csv),
    }
}

fn cmd_run(args: &RunArgs) -> Result<String, CliError> {
    let common = &args.common;
    let setup = setup(common)?;
    let (jd, profile) = joint(&setup, common, common.delta_f)?;
    let table = setup.scenario.chain.path_table()?;
    let eigenvalues = setup.observable.eigenvalues().to_vec();

    let mut finals = Vec::new();
    for i in 0..jd.dim() {
        let abl = abl_value(&table, &eigenvalues, i).ok();
        let wv = weak_value(&table, &eigenvalues, i)?;
        let momentum =
            momentum_mean_reading(&setup.scenario.chain, &setup.observable, &profile, i).ok();
        finals.push(RunFinal {
            final_index: i,
            postselection_probability: jd.postselection_probability(i)?,
            abl_value: abl.as_ref().map(|a| a.value),
            abl_probability: abl.as_ref().map(|a| a.postselection_probability),
            weak_value: wv.finite().map(|c| [c.re, c.im]),
            weak_diverged: wv.diverged,
            weak_denominator_magnitude: wv.denominator_magnitude,
            conditional_mean: jd.conditional_mean_reading(i).ok(),
            momentum_mean: momentum,
            unconditional_mean: jd.unconditional_mean_reading(i)?,
        });
    }
    let report = RunReport {
        schema: SCHEMA_VERSION,
        command: "run",
        scenario: setup.scenario.name.clone(),
        observable: common.observable.clone(),
        delta_f: common.delta_f,
        beta: common.beta,
        grid: GridInfo {
            f_min: jd.grid().f_min(),
            f_max: jd.grid().f_max(),
            points: jd.grid().points(),
        },
        norm_defect: jd.norm_defect(),
        finals,
    };
    let csv = report.to_csv();
    render(common.output, &report, csv)
}

fn cmd_sweep(args: &SweepArgs) -> Result<String, CliError> {
    let common = &args.common;
    if args.strengths.len() < 2 {
        return Err(CliError::config("--strengths needs at least two widths"));
    }
    if args.strengths.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
        return Err(CliError::config("--strengths must be finite and positive"));
    }
    let setup = setup(common)?;
    let table = setup.scenario.chain.path_table()?;
    let eigenvalues = setup.observable.eigenvalues().to_vec();
    let dim = setup.scenario.chain.dim();

    let mut asymptotes = Vec::new();
    for i in 0..dim {
        let contrast = table.interference_contrast(i)?;
        let abl = abl_value(&table, &eigenvalues, i).ok();
        let wv = weak_value(&table, &eigenvalues, i)?;
        asymptotes.push(SweepAsymptote {
            final_index: i,
            abl_reading: abl.map(|a| common.beta * a.value),
            weak_reading: wv.finite().map(|c| common.beta * c.re),
            coherent_probability: contrast.coherent,
            incoherent_probability: contrast.incoherent,
        });
    }

    let mut rows = Vec::new();
    for &width in &args.strengths {
        let (jd, _) = joint(&setup, common, width)?;
        let mut finals = Vec::new();
        for i in 0..dim {
            finals.push(SweepFinal {
                final_index: i,
                postselection_probability: jd.postselection_probability(i)?,
                conditional_mean: jd.conditional_mean_reading(i).ok(),
            });
        }
        rows.push(SweepRow {
            delta_f: width,
            norm_defect: jd.norm_defect(),
            finals,
        });
    }

    let report = SweepReport {
        schema: SCHEMA_VERSION,
        command: "sweep",
        scenario: setup.scenario.name.clone(),
        observable: common.observable.clone(),
        beta: common.beta,
        asymptotes,
        rows,
    };
    let csv = report.to_csv();
    render(common.output, &report, csv)
}

fn infer_regime(eigenvalues: &[f64], beta: f64, width: f64) -> Regime {
    let mut shifts: Vec<f64> = eigenvalues.iter().map(|b| b * beta).collect();
    shifts.sort_by(f64::total_cmp);
    shifts.dedup();
    let min_gap = shifts
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    if min_gap.is_finite() && width <= min_gap / 6.0 {
        Regime::Strong
    } else {
        Regime::Weak
    }
}

fn cmd_mc(args: &McArgs) -> Result<String, CliError> {
    let common = &args.common;
    if args.trials == 0 {
        return Err(CliError::config("--trials must be >= 1"));
    }
    let setup = setup(common)?;
    let (jd, _) = joint(&setup, common, common.delta_f)?;
    let table = setup.scenario.chain.path_table()?;
    let eigenvalues = setup.observable.eigenvalues().to_vec();
    let regime = infer_regime(&eigenvalues, common.beta, common.delta_f);

    if let Some(path) = &args.dump_trials {
        let file = std::fs::File::create(path)
            .map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        let stream = sample_trials(&jd, args.trials, args.seed)?;
        write_trials_csv(std::io::BufWriter::new(file), stream)
            .map_err(|e| CliError::config(e.to_string()))?;
    }

    let stream = sample_trials(&jd, args.trials, args.seed)?;
    let est = estimate(stream, &eigenvalues, common.beta, regime, args.seed)?;

    let mut oracle = Vec::new();
    for i in 0..jd.dim() {
        oracle.push(McOracle {
            final_index: i,
            postselection_probability: jd.postselection_probability(i)?,
            conditional_mean: jd.conditional_mean_reading(i).ok(),
            abl_value: abl_value(&table, &eigenvalues, i).ok().map(|a| a.value),
            weak_value_re: weak_value(&table, &eigenvalues, i)?.finite().map(|c| c.re),
        });
    }

    let report = McReport {
        schema: SCHEMA_VERSION,
        command: "mc",
        scenario: setup.scenario.name.clone(),
        observable: common.observable.clone(),
        delta_f: common.delta_f,
        beta: common.beta,
        trials: args.trials,
        seed: args.seed,
        regime,
        oracle,
        estimate: est,
    };
    let csv = report.to_csv();
    render(common.output, &report, csv)
}

fn cmd_response(args: &ResponseArgs) -> Result<String, CliError> {
    let common = &args.common;
    if args.strengths.is_empty() {
        return Err(CliError::config("--strengths needs at least one value"));
    }
    if args.strengths.iter().any(|s| !s.is_finite()) {
        return Err(CliError::config("--strengths must be finite"));
    }
    let setup = setup(common)?;
    let final_index = 0;
    let base = setup.observable.eigenvalues().to_vec();
    let mid = setup.scenario.chain.mid_basis().clone();

    let evaluate = |strength: f64| -> Result<(f64, f64, f64), CliError> {
        let scaled: Vec<f64> = base.iter().map(|b| b * strength).collect();
        let v = Observable::new(mid.clone(), scaled)?;
        let r = linear_response(&setup.scenario.chain, &v, final_index)?;
        Ok((r.p0, r.delta_p_exact, r.first_order_prediction))
    };

    let mut rows = Vec::new();
    for &strength in &args.strengths {
        let (p0, exact, predicted) = evaluate(strength)?;
        let (_, exact_half, predicted_half) = evaluate(strength / 2.0)?;
        let residual = (exact - predicted).abs();
        let residual_at_half = (exact_half - predicted_half).abs();
        rows.push(ResponseRow {
            strength,
            p0,
            delta_p_exact: exact,
            first_order_prediction: predicted,
            residual,
            residual_at_half,
            residual_ratio: (residual_at_half > 0.0).then(|| residual / residual_at_half),
        });
    }

    let report = ResponseReport {
        schema: SCHEMA_VERSION,
        command: "response",
        scenario: setup.scenario.name.clone(),
        observable: common.observable.clone(),
        final_index,
        rows,
    };
    let csv = report.to_csv();
    render(common.output, &report, csv)
}
