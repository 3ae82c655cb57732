//! Command-line front end.
//!
//! Subcommands: `evolve` (Bloch trajectory), `inversion` (final inversion and
//! transition probability), `sweep` (w(+inf) over a 1-2 parameter grid),
//! `compare` (analytic vs integrated trajectory report), `resonant`
//! (trajectory through the on-resonance route).
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 comparison
//! failure. All numbers are printed with 17 significant digits so a CSV
//! round-trip is exact in double precision.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::demkov::{BlochVector, DemkovSolution, ModelParams, TimeSeries};
use crate::error::Error;
use crate::oracle::{integrate_bloch, IntegratorConfig};
use crate::resonant::ResonantSolution;
use crate::specialfn::PrecisionPolicy;

#[derive(Parser, Debug)]
#[command(
    name = "demkov",
    version,
    about = "Exact two-level dynamics under an exponentially peaked pulse with dephasing",
    args_override_self = true
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the Bloch-vector trajectory (t, u, v, w) on a uniform time grid
    Evolve(EvolveArgs),
    /// Report the final inversion w(+inf) and the transition probability
    Inversion(InversionArgs),
    /// Tabulate w(+inf) over a grid in one or two reduced parameters
    Sweep(SweepArgs),
    /// Compare the closed form against the built-in integrator
    Compare(CompareArgs),
    /// Trajectory through the dedicated on-resonance route (delta = 0)
    Resonant(ResonantArgs),
}

/// Model parameters: either the reduced triple (T = 1 implied) or the
/// physical set; mixing the two is an error.
#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Reduced dephasing T*Gamma/2
    #[arg(long)]
    gamma: Option<f64>,
    /// Reduced detuning T*Delta/2
    #[arg(long)]
    delta: Option<f64>,
    /// Reduced peak coupling T*Omega0/2
    #[arg(long)]
    omega: Option<f64>,
    /// Physical detuning
    #[arg(long)]
    detuning: Option<f64>,
    /// Physical peak Rabi frequency
    #[arg(long)]
    rabi0: Option<f64>,
    /// Physical pulse width T
    #[arg(long)]
    width: Option<f64>,
    /// Physical dephasing rate
    #[arg(long)]
    dephasing: Option<f64>,
}

impl ParamArgs {
    fn to_model(&self) -> Result<ModelParams, CliError> {
        let reduced = self.gamma.is_some() || self.delta.is_some() || self.omega.is_some();
        let physical = self.detuning.is_some()
            || self.rabi0.is_some()
            || self.width.is_some()
            || self.dephasing.is_some();
        if reduced && physical {
            return Err(CliError::usage(
                "reduced (--gamma/--delta/--omega) and physical \
                 (--detuning/--rabi0/--width/--dephasing) parameters cannot be mixed",
            ));
        }
        let params = if physical {
            let width = self
                .width
                .ok_or_else(|| CliError::usage("--width is required with physical parameters"))?;
            ModelParams::new(
                self.detuning.unwrap_or(0.0),
                self.rabi0.unwrap_or(0.0),
                width,
                self.dephasing.unwrap_or(0.0),
            )
        } else {
            ModelParams::from_reduced(
                self.gamma.unwrap_or(0.0),
                self.delta.unwrap_or(0.0),
                self.omega.unwrap_or(0.0),
            )
        };
        params.map_err(|e| CliError::usage(&e.to_string()))
    }
}

#[derive(Args, Debug, Clone)]
struct PolicyArgs {
    /// Target relative accuracy of the series evaluations
    #[arg(long)]
    target_rel_error: Option<f64>,
    /// Series term budget
    #[arg(long)]
    max_terms: Option<usize>,
    /// |z| above which the asymptotic expansion is permitted
    #[arg(long)]
    z_switch: Option<f64>,
    /// Working-precision floor in decimal digits
    #[arg(long)]
    digits: Option<u32>,
}

impl PolicyArgs {
    fn to_policy(&self) -> PrecisionPolicy {
        let mut p = PrecisionPolicy::default();
        if let Some(e) = self.target_rel_error {
            p.target_rel_error = e;
        }
        if let Some(m) = self.max_terms {
            p.max_terms = m;
        }
        if let Some(z) = self.z_switch {
            p.z_switch = z;
        }
        if let Some(d) = self.digits {
            p.digits_floor = d;
        }
        p
    }
}

#[derive(Args, Debug, Clone)]
struct OracleArgs {
    /// Integrator relative tolerance
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Integrator absolute tolerance
    #[arg(long)]
    abs_tol: Option<f64>,
    /// Integration starts at -t_start_factor * T
    #[arg(long)]
    t_start_factor: Option<f64>,
    /// Integration ends at t_end_factor * T
    #[arg(long)]
    t_end_factor: Option<f64>,
}

impl OracleArgs {
    fn to_config(&self) -> IntegratorConfig {
        let mut c = IntegratorConfig::default();
        if let Some(r) = self.rel_tol {
            c.rel_tol = r;
        }
        if let Some(a) = self.abs_tol {
            c.abs_tol = a;
        }
        if let Some(s) = self.t_start_factor {
            c.t_start_factor = s;
        }
        if let Some(e) = self.t_end_factor {
            c.t_end_factor = e;
        }
        c
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Output file (stdout when omitted)
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    /// Flat key=value config file; command-line flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct TimeGridArgs {
    /// Start of the time grid
    #[arg(long, allow_hyphen_values = true, default_value_t = -5.0)]
    t_min: f64,
    /// End of the time grid
    #[arg(long, allow_hyphen_values = true, default_value_t = 5.0)]
    t_max: f64,
    /// Number of samples
    #[arg(long, default_value_t = 1001)]
    n: usize,
}

#[derive(Args, Debug)]
struct EvolveArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    grid: TimeGridArgs,
    #[command(flatten)]
    policy: PolicyArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct InversionArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    policy: PolicyArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Grid axis `name=min:max:count[:log]` with name in
    /// {gamma, delta, omega}; repeat for a second axis
    #[arg(long, required = true)]
    grid: Vec<String>,
    #[command(flatten)]
    policy: PolicyArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    grid: TimeGridArgs,
    /// Sup-norm tolerance for the pass/fail verdict
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    #[command(flatten)]
    policy: PolicyArgs,
    #[command(flatten)]
    oracle: OracleArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct ResonantArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    grid: TimeGridArgs,
    #[command(flatten)]
    policy: PolicyArgs,
    #[command(flatten)]
    output: OutputArgs,
}

/// Per-point row of a comparison run.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComparePoint {
    pub t: f64,
    pub analytic: f64,
    pub oracle: f64,
    pub abs_diff: f64,
}

/// Analytic-vs-integrator report on the inversion `w(t)`.
#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub points: Vec<ComparePoint>,
    pub sup_norm: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug)]
struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn usage(msg: &str) -> Self {
        CliError {
            code: 1,
            message: format!("usage error: {msg}"),
        }
    }

    fn io(e: std::io::Error) -> Self {
        CliError {
            code: 1,
            message: format!("i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter(_) => 1,
            _ => 2,
        };
        CliError {
            code,
            message: format!("error: {e}"),
        }
    }
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Write `content` through a temp file in the destination directory so a
/// failed run never leaves a partial file behind.
fn write_atomic(path: &Path, content: &str) -> Result<(), CliError> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(d) => tempfile::NamedTempFile::new_in(d),
        None => tempfile::NamedTempFile::new_in("."),
    }
    .map_err(CliError::io)?;
    tmp.write_all(content.as_bytes()).map_err(CliError::io)?;
    tmp.persist(path)
        .map_err(|e| CliError::io(e.error))?;
    Ok(())
}

fn emit(output: &OutputArgs, content: &str) -> Result<(), CliError> {
    match &output.output {
        Some(path) => write_atomic(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn series_to_csv(ts: &TimeSeries) -> String {
    let mut s = String::from("t,u,v,w\n");
    for (t, st) in ts.times.iter().zip(&ts.states) {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            fmt17(*t),
            fmt17(st.u),
            fmt17(st.v),
            fmt17(st.w)
        );
    }
    s
}

#[derive(Serialize)]
struct SeriesRecord {
    t: f64,
    u: f64,
    v: f64,
    w: f64,
}

fn series_to_json(ts: &TimeSeries) -> String {
    let records: Vec<SeriesRecord> = ts
        .times
        .iter()
        .zip(&ts.states)
        .map(|(t, s)| SeriesRecord {
            t: *t,
            u: s.u,
            v: s.v,
            w: s.w,
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&records).expect("serialization cannot fail");
    out.push('\n');
    out
}

fn render_series(ts: &TimeSeries, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => series_to_csv(ts),
        OutputFormat::Json => series_to_json(ts),
    }
}

fn cmd_evolve(args: &EvolveArgs) -> Result<(), CliError> {
    let params = args.params.to_model()?;
    let sol = DemkovSolution::new(params, args.policy.to_policy())?;
    let ts = sol.time_series(args.grid.t_min, args.grid.t_max, args.grid.n)?;
    emit(&args.output, &render_series(&ts, args.output.format))
}

fn cmd_resonant(args: &ResonantArgs) -> Result<(), CliError> {
    let params = args.params.to_model()?;
    if params.delta != 0.0 {
        return Err(CliError::usage("the resonant command requires delta = 0"));
    }
    let policy = args.policy.to_policy();
    let rp = crate::demkov::reduce(&params);
    if rp.omega == 0.0 {
        let sol = DemkovSolution::new(params, policy)?;
        let ts = sol.time_series(args.grid.t_min, args.grid.t_max, args.grid.n)?;
        return emit(&args.output, &render_series(&ts, args.output.format));
    }
    let rsol = ResonantSolution::new(&rp, &policy)?;
    let g = &args.grid;
    if !(g.t_min < g.t_max) || g.n < 2 {
        return Err(CliError::usage("need t_min < t_max and n >= 2"));
    }
    let dt = (g.t_max - g.t_min) / (g.n - 1) as f64;
    let mut times = Vec::with_capacity(g.n);
    let mut states = Vec::with_capacity(g.n);
    for i in 0..g.n {
        let t = if i + 1 == g.n {
            g.t_max
        } else {
            g.t_min + i as f64 * dt
        };
        let (w, wd, _) = rsol.w_derivs(t, &policy)?;
        times.push(t);
        states.push(BlochVector {
            u: 0.0,
            v: wd / params.rabi(t),
            w,
        });
    }
    let ts = TimeSeries { times, states };
    emit(&args.output, &render_series(&ts, args.output.format))
}

fn cmd_inversion(args: &InversionArgs) -> Result<(), CliError> {
    let params = args.params.to_model()?;
    let sol = DemkovSolution::new(params, args.policy.to_policy())?;
    let route = match sol.route() {
        crate::demkov::BlochRoute::General => "general",
        crate::demkov::BlochRoute::Resonant => "resonant",
        crate::demkov::BlochRoute::Frozen => "frozen",
    };
    let report = format!(
        "route: {route}\nw_infinity: {}\ntransition_probability: {}\nest_rel_error: {}\n",
        fmt17(sol.w_infinity()),
        fmt17(sol.transition_probability()),
        fmt17(sol.w_infinity_est_error()),
    );
    emit(&args.output, &report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GridParam {
    Gamma,
    Delta,
    Omega,
}

#[derive(Debug, Clone)]
struct GridAxis {
    param: GridParam,
    values: Vec<f64>,
}

fn parse_axis(spec: &str) -> Result<GridAxis, CliError> {
    let (name, rest) = spec
        .split_once('=')
        .ok_or_else(|| CliError::usage("grid axis must look like name=min:max:count[:log]"))?;
    let param = match name {
        "gamma" => GridParam::Gamma,
        "delta" => GridParam::Delta,
        "omega" => GridParam::Omega,
        other => {
            return Err(CliError::usage(&format!(
                "unknown grid parameter '{other}' (expected gamma, delta, or omega)"
            )))
        }
    };
    let parts: Vec<&str> = rest.split(':').collect();
    if parts.len() < 3 || parts.len() > 4 {
        return Err(CliError::usage("grid axis must look like name=min:max:count[:log]"));
    }
    let min: f64 = parts[0]
        .parse()
        .map_err(|_| CliError::usage("grid min must be a number"))?;
    let max: f64 = parts[1]
        .parse()
        .map_err(|_| CliError::usage("grid max must be a number"))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| CliError::usage("grid count must be a positive integer"))?;
    if count == 0 {
        return Err(CliError::usage("grid count must be >= 1"));
    }
    let log = match parts.get(3) {
        None | Some(&"linear") => false,
        Some(&"log") => true,
        Some(other) => {
            return Err(CliError::usage(&format!(
                "unknown grid scale '{other}' (expected linear or log)"
            )))
        }
    };
    if log && (min <= 0.0 || max <= 0.0) {
        return Err(CliError::usage("log-scale grid endpoints must be positive"));
    }
    let values = if count == 1 {
        vec![min]
    } else if log {
        let (lo, hi) = (min.ln(), max.ln());
        (0..count)
            .map(|i| (lo + (hi - lo) * i as f64 / (count - 1) as f64).exp())
            .collect()
    } else {
        (0..count)
            .map(|i| min + (max - min) * i as f64 / (count - 1) as f64)
            .collect()
    };
    Ok(GridAxis { param, values })
}

fn axis_name(p: GridParam) -> &'static str {
    match p {
        GridParam::Gamma => "gamma",
        GridParam::Delta => "delta",
        GridParam::Omega => "omega",
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    if args.params.detuning.is_some()
        || args.params.rabi0.is_some()
        || args.params.width.is_some()
        || args.params.dephasing.is_some()
    {
        return Err(CliError::usage("sweep grids operate on reduced parameters"));
    }
    if args.grid.is_empty() || args.grid.len() > 2 {
        return Err(CliError::usage("sweep takes one or two --grid axes"));
    }
    let axes: Vec<GridAxis> = args
        .grid
        .iter()
        .map(|s| parse_axis(s))
        .collect::<Result<_, _>>()?;
    if axes.len() == 2 && axes[0].param == axes[1].param {
        return Err(CliError::usage("the two grid axes must differ"));
    }
    let base = (
        args.params.gamma.unwrap_or(0.0),
        args.params.delta.unwrap_or(0.0),
        args.params.omega.unwrap_or(0.0),
    );
    // Lexicographic cell order: first axis outer, second inner.
    let mut cells: Vec<(f64, Option<f64>)> = Vec::new();
    match axes.len() {
        1 => {
            for &a in &axes[0].values {
                cells.push((a, None));
            }
        }
        _ => {
            for &a in &axes[0].values {
                for &b in &axes[1].values {
                    cells.push((a, Some(b)));
                }
            }
        }
    }
    let policy = args.policy.to_policy();
    let results: Vec<Result<f64, Error>> = cells
        .par_iter()
        .map(|&(a, b)| {
            let (mut g, mut d, mut om) = base;
            match axes[0].param {
                GridParam::Gamma => g = a,
                GridParam::Delta => d = a,
                GridParam::Omega => om = a,
            }
            if let (Some(bv), Some(axis)) = (b, axes.get(1)) {
                match axis.param {
                    GridParam::Gamma => g = bv,
                    GridParam::Delta => d = bv,
                    GridParam::Omega => om = bv,
                }
            }
            let params = ModelParams::from_reduced(g, d, om)?;
            Ok(DemkovSolution::new(params, policy.clone())?.w_infinity())
        })
        .collect();
    let mut values = Vec::with_capacity(results.len());
    for r in results {
        values.push(r?);
    }

    let content = match args.output.format {
        OutputFormat::Csv => {
            let mut s = String::new();
            match axes.len() {
                1 => {
                    let _ = writeln!(s, "{},w_infinity", axis_name(axes[0].param));
                    for (&(a, _), w) in cells.iter().zip(&values) {
                        let _ = writeln!(s, "{},{}", fmt17(a), fmt17(*w));
                    }
                }
                _ => {
                    let _ = writeln!(
                        s,
                        "{},{},w_infinity",
                        axis_name(axes[0].param),
                        axis_name(axes[1].param)
                    );
                    for (&(a, b), w) in cells.iter().zip(&values) {
                        let _ = writeln!(s, "{},{},{}", fmt17(a), fmt17(b.unwrap()), fmt17(*w));
                    }
                }
            }
            s
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Cell {
                #[serde(flatten)]
                coords: std::collections::BTreeMap<&'static str, f64>,
                w_infinity: f64,
            }
            let rows: Vec<Cell> = cells
                .iter()
                .zip(&values)
                .map(|(&(a, b), w)| {
                    let mut coords = std::collections::BTreeMap::new();
                    coords.insert(axis_name(axes[0].param), a);
                    if let (Some(bv), Some(axis)) = (b, axes.get(1)) {
                        coords.insert(axis_name(axis.param), bv);
                    }
                    Cell {
                        coords,
                        w_infinity: *w,
                    }
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&rows).expect("serialization cannot fail");
            out.push('\n');
            out
        }
    };
    emit(&args.output, &content)
}

fn cmd_compare(args: &CompareArgs) -> Result<(), CliError> {
    let params = args.params.to_model()?;
    let g = &args.grid;
    if !(g.t_min < g.t_max) || g.n < 2 {
        return Err(CliError::usage("need t_min < t_max and n >= 2"));
    }
    let policy = args.policy.to_policy();
    let cfg = args.oracle.to_config();
    let sol = DemkovSolution::new(params, policy)?;
    let dt = (g.t_max - g.t_min) / (g.n - 1) as f64;
    let times: Vec<f64> = (0..g.n)
        .map(|i| {
            if i + 1 == g.n {
                g.t_max
            } else {
                g.t_min + i as f64 * dt
            }
        })
        .collect();
    let traj = integrate_bloch(&params, &cfg, &times)?;
    let mut points = Vec::with_capacity(times.len());
    let mut sup = 0.0f64;
    for (t, state) in times.iter().zip(&traj.states) {
        let analytic = sol.w(*t)?;
        let diff = (analytic - state.w).abs();
        sup = sup.max(diff);
        points.push(ComparePoint {
            t: *t,
            analytic,
            oracle: state.w,
            abs_diff: diff,
        });
    }
    let report = CompareReport {
        points,
        sup_norm: sup,
        tolerance: args.tolerance,
        pass: sup <= args.tolerance,
    };
    let content = match args.output.format {
        OutputFormat::Csv => {
            let mut s = String::from("t,analytic_w,oracle_w,abs_diff\n");
            for p in &report.points {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    fmt17(p.t),
                    fmt17(p.analytic),
                    fmt17(p.oracle),
                    fmt17(p.abs_diff)
                );
            }
            let _ = writeln!(s, "# sup_norm,{}", fmt17(report.sup_norm));
            let _ = writeln!(s, "# tolerance,{}", fmt17(report.tolerance));
            let _ = writeln!(s, "# pass,{}", report.pass);
            s
        }
        OutputFormat::Json => {
            let mut out =
                serde_json::to_string_pretty(&report).expect("serialization cannot fail");
            out.push('\n');
            out
        }
    };
    emit(&args.output, &content)?;
    if args.output.output.is_some() {
        println!(
            "sup_norm: {}\ntolerance: {}\nverdict: {}",
            fmt17(report.sup_norm),
            fmt17(report.tolerance),
            if report.pass { "pass" } else { "fail" }
        );
    }
    if report.pass {
        Ok(())
    } else {
        Err(CliError {
            code: 3,
            message: format!(
                "comparison failed: sup-norm {} exceeds tolerance {}",
                fmt17(report.sup_norm),
                fmt17(report.tolerance)
            ),
        })
    }
}

/// Expand `--config FILE` into command-line tokens placed right after the
/// subcommand, so explicit flags (parsed later) take precedence.
fn apply_config(args: Vec<String>) -> Result<Vec<String>, CliError> {
    let mut path: Option<PathBuf> = None;
    for (i, a) in args.iter().enumerate() {
        if a == "--config" {
            path = args.get(i + 1).map(PathBuf::from);
            if path.is_none() {
                return Err(CliError::usage("--config requires a file path"));
            }
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        }
    }
    let Some(path) = path else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path).map_err(CliError::io)?;
    let mut tokens = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::usage(&format!(
                "{}: line {}: expected key=value",
                path.display(),
                lineno + 1
            ))
        })?;
        tokens.push(format!("--{}", key.trim().replace('_', "-")));
        tokens.push(value.trim().to_string());
    }
    // The subcommand is the first non-flag token after the program name.
    let sub_idx = args
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, a)| !a.starts_with('-'))
        .map(|(i, _)| i)
        .ok_or_else(|| CliError::usage("missing subcommand"))?;
    let mut out = args;
    out.splice(sub_idx + 1..sub_idx + 1, tokens);
    Ok(out)
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Evolve(a) => cmd_evolve(a),
        Command::Inversion(a) => cmd_inversion(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Resonant(a) => cmd_resonant(a),
    }
}

/// Run the CLI on explicit arguments (index 0 is the program name) and return
/// the process exit code.
pub fn run_with_args(args: Vec<String>) -> i32 {
    let args = match apply_config(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("{}", e.message);
            return e.code;
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version by "erroring" with a display request
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.message);
            e.code
        }
    }
}
