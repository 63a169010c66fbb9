//! The `powersum` command line.
//!
//! Exit codes: 0 on success, 1 when a check or an agreement verdict fails,
//! 2 on any usage or configuration error.

pub mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::conjecture::{characterization_trial, minmax_search, SearchSense};
use crate::error::Error;
use crate::extremal::{classify_regime, predict_extrema, ExtremumReport, LocationClass};
use crate::oracle::{global_optimize, unbounded_probe, OracleResult};
use crate::sum::power_sum;
use crate::types::{BasePoints, Extremum, GammaConfig, PowerParam, ProbeAngle};
use crate::verify::{self, SuiteSummary, VerificationOutcome};
use output::{Cell, Table};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "powersum", version, about = "Powered-distance sums on concentric circles")]
pub struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the sum on a uniform probe grid.
    Eval {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        /// Grid points `x_i = 2πi/samples`.
        #[arg(long, default_value_t = 360)]
        samples: usize,
    },
    /// Predicted and brute-force extrema with an agreement verdict.
    Extremize {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
    /// Run a named check set.
    Verify(VerifyArgs),
    /// Tabulate the sum over a λ range and a probe grid.
    Sweep {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda_max: f64,
        #[arg(long)]
        lambda_step: f64,
        #[arg(long, default_value_t = 360)]
        samples: usize,
    },
    /// Configuration searches and characterization trials.
    #[command(subcommand)]
    Conjecture(ConjectureCmd),
}

/// Base points: either `--regular --n N` or `--angles a,b,c`.
#[derive(Debug, Clone, Args)]
pub struct BaseArgs {
    #[arg(long)]
    pub regular: bool,
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated angles; accepts forms like `pi/3`, `-2pi/5`, `1.2`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_angle)]
    pub angles: Option<Vec<f64>>,
    /// Radius of the probe circle.
    #[arg(long, short = 'a', default_value_t = 1.0)]
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    #[value(name = "even-power", alias = "theorem3")]
    EvenPower,
    #[value(name = "even-power-sharpness")]
    EvenPowerSharpness,
    #[value(name = "regimes")]
    Regimes,
    #[value(name = "triangle-sharp")]
    TriangleSharp,
    #[value(name = "triangle-bound")]
    TriangleBound,
    #[value(name = "inverse-square", alias = "chebyshev-bound")]
    InverseSquare,
    #[value(name = "exp-sum-roots")]
    ExpSumRoots,
    #[value(name = "two-chord", alias = "lemma2")]
    TwoChord,
    #[value(name = "derivative")]
    Derivative,
    #[value(name = "derivative-loci")]
    DerivativeLoci,
    #[value(name = "minmax")]
    Minmax,
    #[value(name = "all")]
    All,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub check: CheckName,
    /// Point counts.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    /// `all` or a comma-separated list.
    #[arg(long)]
    pub k: Option<String>,
    /// Probe-circle radii.
    #[arg(long, short = 'a', value_delimiter = ',')]
    pub a: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Option<Vec<f64>>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
}

#[derive(Debug, Subcommand)]
pub enum ConjectureCmd {
    /// Multistart search over triangles for the min-max (or max-min) value.
    Minmax {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Descend perturbed polygons toward even-power constancy.
    Characterize {
        #[arg(long)]
        n: usize,
        /// Exponents `k` of `|XP|^{2k}`; defaults to `1..n`.
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<usize>>,
        #[arg(long, short = 'a', default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 0.5)]
        budget: f64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parses a float or a multiple of π such as `pi`, `-pi/4`, `2pi/3`, `0.5*pi`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    let Some(pos) = t.find("pi") else {
        return t.parse().map_err(|_| format!("not an angle: {s}"));
    };
    let coef = t[..pos].trim_end_matches('*');
    let coef = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| format!("not an angle: {s}"))?,
    };
    let rest = &t[pos + 2..];
    let div = if rest.is_empty() {
        1.0
    } else if let Some(d) = rest.strip_prefix('/') {
        d.parse::<f64>().map_err(|_| format!("not an angle: {s}"))?
    } else {
        return Err(format!("not an angle: {s}"));
    };
    Ok(coef * std::f64::consts::PI / div)
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Validated base configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub gamma: GammaConfig,
    pub base: BasePoints,
}

impl BaseArgs {
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let gamma = GammaConfig::new(self.radius)?;
        let base = match (self.regular, &self.angles) {
            (true, Some(_)) => return Err(usage("give either --regular or --angles, not both")),
            (false, None) => return Err(usage("one of --regular or --angles is required")),
            (true, None) => {
                let n = self.n.ok_or_else(|| usage("--regular needs --n"))?;
                BasePoints::regular(n, 0.0)?
            }
            (false, Some(angles)) => {
                if let Some(n) = self.n {
                    if n != angles.len() {
                        return Err(usage(format!("--n {n} disagrees with {} angles", angles.len())));
                    }
                }
                BasePoints::new(angles.iter().copied())?
            }
        };
        Ok(RunConfig { gamma, base })
    }
}

fn check_tolerance(tol: f64) -> Result<(), CliError> {
    if (1e-12..=1e-2).contains(&tol) {
        Ok(())
    } else {
        Err(usage(format!("tolerance {tol} outside [1e-12, 1e-2]")))
    }
}

fn lambda(v: f64) -> Result<PowerParam, CliError> {
    Ok(PowerParam::new(v)?)
}

/// What a subcommand produced: the same data as one JSON document and as a
/// table, plus the exit code.
pub struct Emitted {
    pub json: Value,
    pub table: Table,
    pub code: i32,
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialize")
}

/// Parses `args` and runs, writing results to the chosen sink and
/// diagnostics to standard error. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli).and_then(|em| emit(&cli, &em).map(|_| em.code)) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(cli: &Cli, em: &Emitted) -> Result<(), CliError> {
    let sink: Box<dyn Write> = match &cli.output {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    match cli.format {
        Format::Json => output::write_json(&em.json, &mut sink)?,
        Format::Csv => em.table.write_csv(&mut sink)?,
    }
    sink.flush()?;
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<Emitted, CliError> {
    match &cli.command {
        Command::Eval { base, lambda: l, samples } => cmd_eval(&base.resolve()?, lambda(*l)?, *samples),
        Command::Extremize { base, lambda: l, tolerance } => {
            check_tolerance(*tolerance)?;
            cmd_extremize(&base.resolve()?, lambda(*l)?, *tolerance)
        }
        Command::Verify(args) => cmd_verify(args),
        Command::Sweep {
            base,
            lambda_min,
            lambda_max,
            lambda_step,
            samples,
        } => cmd_sweep(&base.resolve()?, *lambda_min, *lambda_max, *lambda_step, *samples),
        Command::Conjecture(c) => cmd_conjecture(c),
    }
}

fn grid(samples: usize) -> Result<Vec<f64>, CliError> {
    if samples == 0 {
        return Err(usage("--samples must be positive"));
    }
    Ok((0..samples)
        .map(|i| std::f64::consts::TAU * i as f64 / samples as f64)
        .collect())
}

fn config_json(cfg: &RunConfig) -> Value {
    json!({
        "n": cfg.base.len(),
        "radius": cfg.gamma.radius(),
        "regular": cfg.base.is_regular(),
        "angles": cfg.base.angles(),
    })
}

pub fn cmd_eval(cfg: &RunConfig, lam: PowerParam, samples: usize) -> Result<Emitted, CliError> {
    let xs = grid(samples)?;
    let mut table = Table::new(vec!["x", "value"]);
    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        let v = power_sum(cfg.gamma, &cfg.base, lam, ProbeAngle::new(x));
        table.push(vec![x.into(), v.into()]);
        rows.push(json!({ "x": x, "value": value_json(v) }));
    }
    Ok(Emitted {
        json: json!({ "config": config_json(cfg), "lambda": lam.value(), "rows": rows }),
        table,
        code: EXIT_PASS,
    })
}

fn value_json(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::String(crate::types::float_token(v))
    }
}

pub fn cmd_sweep(cfg: &RunConfig, lo: f64, hi: f64, step: f64, samples: usize) -> Result<Emitted, CliError> {
    if step.is_nan() || step <= 0.0 || !lo.is_finite() || !hi.is_finite() || hi < lo {
        return Err(usage("need finite --lambda-min <= --lambda-max and --lambda-step > 0"));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > 100_000 {
        return Err(usage("λ range has too many steps"));
    }
    let xs = grid(samples)?;
    let mut table = Table::new(vec!["lambda", "x", "value"]);
    let mut rows = Vec::new();
    for i in 0..count {
        let l = lo + step * i as f64;
        let lam = lambda(l)?;
        for &x in &xs {
            let v = power_sum(cfg.gamma, &cfg.base, lam, ProbeAngle::new(x));
            table.push(vec![l.into(), x.into(), v.into()]);
            rows.push(json!({ "lambda": l, "x": x, "value": value_json(v) }));
        }
    }
    Ok(Emitted {
        json: json!({ "config": config_json(cfg), "rows": rows }),
        table,
        code: EXIT_PASS,
    })
}

#[derive(Debug, Serialize)]
struct Side {
    kind: Extremum,
    #[serde(skip_serializing_if = "Option::is_none")]
    predicted: Option<ExtremumReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleResult>,
    unbounded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    angular_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relative_error: Option<f64>,
    agree: Option<bool>,
}

/// Prediction against the oracle. Agreement means the oracle point lies
/// within `max(1e-6, 10·tol)` of a witness and the values agree to
/// `max(1e-9, tol)` relative.
pub fn cmd_extremize(cfg: &RunConfig, lam: PowerParam, tol: f64) -> Result<Emitted, CliError> {
    let (gamma, base) = (cfg.gamma, &cfg.base);
    let predicted = if base.is_regular() && base.len() >= 2 {
        let (lo, hi) = predict_extrema(gamma, base, lam)?;
        Some([lo, hi])
    } else {
        None
    };
    let ang_tol = (10.0 * tol).max(1e-6);
    let val_tol = tol.max(1e-9);
    let mut sides = Vec::new();
    for (i, kind) in [Extremum::Min, Extremum::Max].into_iter().enumerate() {
        let pred = predicted.as_ref().map(|p| p[i].clone());
        let oracle = match global_optimize(gamma, base, lam, kind, tol) {
            Ok(r) => Some(r),
            Err(Error::Unbounded) => None,
            Err(e) => return Err(e.into()),
        };
        let mut side = Side {
            kind,
            predicted: pred.clone(),
            oracle: oracle.clone(),
            unbounded: oracle.is_none(),
            angular_error: None,
            relative_error: None,
            agree: None,
        };
        if let Some(p) = &pred {
            side.agree = Some(match (p.location_class, &oracle) {
                (LocationClass::UnboundedAtVertexRay, None) => unbounded_probe(gamma, base, lam, 1e9),
                (LocationClass::UnboundedAtVertexRay, Some(_)) | (_, None) => false,
                (LocationClass::Constant, Some(r)) => {
                    let err = (r.value - p.value).abs() / p.value.abs();
                    side.relative_error = Some(err);
                    r.constant || err <= val_tol
                }
                (_, Some(r)) => {
                    let d = p.distance_to_witness(r.argopt);
                    let err = (r.value - p.value).abs() / p.value.abs();
                    side.angular_error = Some(d);
                    side.relative_error = Some(err);
                    d <= ang_tol && err <= val_tol
                }
            });
        }
        sides.push(side);
    }

    let regime = if base.len() >= 2 { Some(classify_regime(base.len(), lam)?) } else { None };
    let constant = predicted
        .as_ref()
        .is_some_and(|p| p[0].location_class == LocationClass::Constant);
    let verdict = match predicted {
        None => "oracle-only",
        Some(_) if sides.iter().all(|s| s.agree == Some(true)) => {
            if constant {
                "constant"
            } else {
                "pass"
            }
        }
        Some(_) => "fail",
    };
    let code = if verdict == "fail" { EXIT_CHECK_FAIL } else { EXIT_PASS };

    let mut table = Table::new(vec![
        "kind",
        "predicted_class",
        "predicted_value",
        "oracle_argopt",
        "oracle_value",
        "angular_error",
        "relative_error",
        "verdict",
    ]);
    for s in &sides {
        let opt = |v: Option<f64>| -> Cell { v.map(Cell::Num).unwrap_or_else(|| "".into()) };
        table.push(vec![
            format!("{:?}", s.kind).to_lowercase().into(),
            s.predicted
                .as_ref()
                .map(|p| Cell::Text(to_json(&p.location_class).as_str().unwrap_or_default().to_string()))
                .unwrap_or_else(|| "".into()),
            opt(s.predicted.as_ref().map(|p| p.value)),
            opt(s.oracle.as_ref().map(|r| r.argopt.value())),
            if s.unbounded { Cell::Num(f64::INFINITY) } else { opt(s.oracle.as_ref().map(|r| r.value)) },
            opt(s.angular_error),
            opt(s.relative_error),
            verdict.into(),
        ]);
    }
    Ok(Emitted {
        json: json!({
            "config": config_json(cfg),
            "lambda": lam.value(),
            "regime": regime.map(|r| to_json(&r)),
            "min": to_json(&sides[0]),
            "max": to_json(&sides[1]),
            "verdict": verdict,
        }),
        table,
        code,
    })
}

fn parse_k(k: &Option<String>) -> Result<Option<Vec<usize>>, CliError> {
    match k.as_deref() {
        None | Some("all") => Ok(None),
        Some(list) => list
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| usage(format!("bad --k value: {p}"))))
            .collect::<Result<Vec<_>, _>>()
            .map(Some),
    }
}

/// Runs one named check with the defaults used by the acceptance suite,
/// overridden by any flags given.
pub fn run_check(name: CheckName, a: &VerifyArgs) -> Result<Vec<VerificationOutcome>, CliError> {
    check_tolerance(a.tolerance)?;
    let ns = |d: &[usize]| a.n.clone().unwrap_or_else(|| d.to_vec());
    let radii = |d: &[f64]| a.a.clone().unwrap_or_else(|| d.to_vec());
    let seed = a.seed;
    let out = match name {
        CheckName::EvenPower => {
            let ks = parse_k(&a.k)?;
            verify::check_even_power(
                &ns(&[2, 3, 4, 5, 6, 7, 8]),
                ks.as_deref(),
                &radii(&[0.5, 1.0, 2.0]),
                a.samples.unwrap_or(1000),
                seed,
            )?
        }
        CheckName::EvenPowerSharpness => verify::check_even_power_sharpness(
            &ns(&[2, 3, 4, 5, 6, 7, 8]),
            &radii(&[0.5, 1.0, 2.0]),
            a.samples.unwrap_or(1000),
            seed,
        )?,
        CheckName::Regimes => {
            verify::check_regimes(&ns(&[3, 4, 5, 6]), &radii(&[0.8, 1.0, 1.25]), a.lambda.as_deref(), a.tolerance)?
        }
        CheckName::TriangleSharp => verify::check_triangle_sharp(
            a.lambda
                .as_deref()
                .unwrap_or(&[0.5, 1.0, 1.5, 4.0, 5.0, 7.0, 2.5, 3.0, 3.5, -0.5, -1.0, -3.0]),
        )?,
        CheckName::TriangleBound => verify::check_triangle_random(
            a.trials.unwrap_or(1000),
            a.lambda.as_deref().unwrap_or(&verify::TRIANGLE_LAMBDAS),
            seed,
        )?,
        CheckName::InverseSquare => verify::check_inverse_square(&ns(&[3, 4, 5, 6, 7, 8]), a.trials.unwrap_or(1000), seed)?,
        CheckName::ExpSumRoots => verify::check_exp_sum_roots(a.trials.unwrap_or(10_000), a.n.as_ref().and_then(|v| v.first().copied()).unwrap_or(6), seed)?,
        CheckName::TwoChord => verify::check_two_chord(a.grid.unwrap_or(1000))?,
        CheckName::Derivative => verify::check_derivative(a.trials.unwrap_or(1000), seed)?,
        CheckName::DerivativeLoci => verify::check_derivative_loci(&ns(&[3, 4, 5]), &radii(&[1.0, 1.3]), None)?,
        CheckName::Minmax => verify::check_minmax(
            a.lambda.as_deref().unwrap_or(&[-1.0, 1.0, 3.0]),
            a.restarts.unwrap_or(8),
            seed,
        )?,
        CheckName::All => {
            let mut all = Vec::new();
            for c in ALL_CHECKS {
                eprintln!("running {}", c.to_possible_value().expect("named").get_name());
                all.extend(run_check(c, a)?);
            }
            all
        }
    };
    Ok(out)
}

pub const ALL_CHECKS: [CheckName; 11] = [
    CheckName::EvenPower,
    CheckName::EvenPowerSharpness,
    CheckName::Regimes,
    CheckName::TriangleSharp,
    CheckName::TriangleBound,
    CheckName::InverseSquare,
    CheckName::ExpSumRoots,
    CheckName::TwoChord,
    CheckName::Derivative,
    CheckName::DerivativeLoci,
    CheckName::Minmax,
];

pub fn cmd_verify(a: &VerifyArgs) -> Result<Emitted, CliError> {
    if a.check == CheckName::All && (a.n.is_some() || a.a.is_some() || a.lambda.is_some() || a.k.is_some()) {
        return Err(usage("`all` runs every check at its defaults; --n, --k, --a and --lambda apply to single checks"));
    }
    let summary = SuiteSummary::new(run_check(a.check, a)?);
    let mut table = Table::new(vec!["check", "predicted", "observed", "tolerance", "passed", "detail"]);
    for c in &summary.checks {
        table.push(vec![
            c.check.clone().into(),
            c.predicted.into(),
            c.observed.into(),
            c.tolerance.into(),
            c.passed.into(),
            c.detail.clone().into(),
        ]);
    }
    for c in summary.checks.iter().filter(|c| !c.passed) {
        eprintln!("FAIL {} {}", c.check, c.detail);
    }
    Ok(Emitted {
        code: if summary.passed { EXIT_PASS } else { EXIT_CHECK_FAIL },
        json: to_json(&summary),
        table,
    })
}

pub fn cmd_conjecture(c: &ConjectureCmd) -> Result<Emitted, CliError> {
    match c {
        ConjectureCmd::Minmax { lambda: l, restarts, seed } => {
            let res = minmax_search(lambda(*l)?, SearchSense::for_lambda(*l), *restarts, *seed)?;
            let mut table = Table::new(vec!["restart", "start_b", "start_c", "config_b", "config_c", "objective", "gap", "regularity_distance"]);
            for (i, r) in res.restarts.iter().enumerate() {
                table.push(vec![
                    i.into(),
                    r.start[0].into(),
                    r.start[1].into(),
                    r.config[1].into(),
                    r.config[2].into(),
                    r.objective.into(),
                    r.gap.into(),
                    r.regularity_distance.into(),
                ]);
            }
            Ok(Emitted {
                json: json!({
                    "lambda": l,
                    "sense": SearchSense::for_lambda(*l),
                    "result": to_json(&res),
                }),
                table,
                code: EXIT_PASS,
            })
        }
        ConjectureCmd::Characterize {
            n,
            k,
            radius,
            budget,
            trials,
            seed,
        } => {
            let k_set = k.clone().unwrap_or_else(|| (1..*n).collect());
            let gamma = GammaConfig::new(*radius)?;
            let res = characterization_trial(*n, gamma, &k_set, *budget, *trials, *seed)?;
            let mut table = Table::new(vec!["trial", "initial_regularity_distance", "deviation", "regularity_distance", "iterations"]);
            for (i, t) in res.iter().enumerate() {
                table.push(vec![
                    i.into(),
                    t.initial_regularity_distance.into(),
                    t.deviation.into(),
                    t.regularity_distance.into(),
                    t.iterations.into(),
                ]);
            }
            let collapsed = res.iter().filter(|t| t.regularity_distance < 1e-6).count();
            let stuck = res.iter().filter(|t| t.regularity_distance >= 1e-6 && t.deviation > 1e-6).count();
            Ok(Emitted {
                json: json!({
                    "n": n,
                    "k_set": k_set,
                    "radius": radius,
                    "restriction": "candidates constrained to the unit circle",
                    "collapsed_to_regular": collapsed,
                    "nonregular_with_deviation": stuck,
                    "counterexamples": res.len() - collapsed - stuck,
                    "trials": to_json(&res),
                }),
                table,
                code: EXIT_PASS,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_forms() {
        let pi = std::f64::consts::PI;
        assert_eq!(parse_angle("1.5").unwrap(), 1.5);
        assert_eq!(parse_angle("pi").unwrap(), pi);
        assert_eq!(parse_angle("-pi/4").unwrap(), -pi / 4.0);
        assert_eq!(parse_angle("2pi/3").unwrap(), 2.0 * pi / 3.0);
        assert_eq!(parse_angle("0.5*pi").unwrap(), 0.5 * pi);
        assert!(parse_angle("pie").is_err());
        assert!(parse_angle("x").is_err());
    }

    #[test]
    fn base_args_exclusive() {
        let mk = |regular, n, angles: Option<Vec<f64>>| BaseArgs { regular, n, angles, radius: 1.0 };
        assert!(mk(true, Some(3), None).resolve().is_ok());
        assert!(mk(true, None, None).resolve().is_err());
        assert!(mk(false, None, None).resolve().is_err());
        assert!(mk(true, Some(3), Some(vec![0.0, 1.0])).resolve().is_err());
        assert!(mk(false, Some(3), Some(vec![0.0, 1.0])).resolve().is_err());
        assert!(mk(false, None, Some(vec![0.0, 1.0])).resolve().is_ok());
    }
}
