//! Command-line front end: frontier datasets as CSV, oracle verification
//! suites and one-off scalar quantities.
//!
//! All quantities are dimensionless: overlaps, probabilities, fidelities and
//! contraction strengths all live in `[0, 1]`.

use std::fmt::Write as _;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qtradeoff::oracle::suite::{max_violation, run_suite, Probe, SuiteKind, SuiteRow};
use qtradeoff::{
    density_from_bloch, frontier_curve, max_probability_mixed, max_probability_pure,
    quantum_inversion_frontier, semiclassical_frontier, uhlmann_fidelity, BlochVector,
    DensityMatrix, SearchConfig, StatePair, TradeoffCurve,
};

/// Digits in CSV output; enough to round-trip every double.
pub const CSV_DIGITS: usize = 17;
/// Digits in human-facing output.
pub const HUMAN_DIGITS: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "qtradeoff",
    version,
    about = "Probability-fidelity tradeoff frontiers for qubit state pairs",
    long_about = "Probability-fidelity tradeoff frontiers for qubit state pairs.\n\n\
        All quantities are dimensionless. Overlaps |<a|b>|, probabilities, \
        fidelities and contraction strengths take values in [0, 1]."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frontier F(p) for transforming a symmetric pair with overlap s_psi
    /// into one with overlap s_phi. CSV columns: s_psi,s_phi,p,F
    CurveTransform {
        /// Input overlap |<psi+|psi->|, in [0, 1)
        #[arg(long = "s-psi")]
        s_psi: f64,
        /// Target overlaps |<phi+|phi->|, comma separated, each in [0, s_psi]
        #[arg(long = "s-phi", value_delimiter = ',', required = true)]
        s_phi: Vec<f64>,
        #[command(flatten)]
        out: CurveOutput,
    },
    /// Semiclassical inversion frontier of diag(1, beta) over diagonal
    /// inputs. CSV columns: beta,p,F
    CurveSemiclassical {
        /// Smallest singular values of the contraction, comma separated,
        /// each in (0, 1]
        #[arg(long, value_delimiter = ',', required = true)]
        beta: Vec<f64>,
        #[command(flatten)]
        out: CurveOutput,
    },
    /// Inversion frontier of diag(1, beta) for a pure pair symmetric about
    /// the z axis. CSV columns: beta,s_in,p,F with s_in the overlap after
    /// contraction
    CurveQuantumInversion {
        /// Smallest singular value of the contraction, in (0, 1]
        #[arg(long)]
        beta: f64,
        /// Overlap of the input pair before contraction, in [0, 1)
        #[arg(long = "overlap-in")]
        overlap_in: f64,
        #[command(flatten)]
        out: CurveOutput,
    },
    /// Searches random and constructive operations for points above the
    /// analytic frontiers. Exit status 0 if the largest deviation is within
    /// tolerance, 1 otherwise
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        search: SearchArgs,
        /// Also write every report as CSV to this file
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Uhlmann fidelity of two qubit states, each given once as --bloch or
    /// --diag
    Fidelity {
        #[command(flatten)]
        states: StateArgs,
    },
    /// Largest worst-case success probability for mapping a pair with
    /// overlap s_in onto a target pair, given by overlap or by two states
    Probability {
        /// Input overlap, in [0, 1]
        #[arg(long = "s-in")]
        s_in: f64,
        /// Target overlap of a pure pair, in [0, 1]
        #[arg(long = "s-out", conflicts_with_all = ["bloch", "diag"])]
        s_out: Option<f64>,
        #[command(flatten)]
        states: StateArgs,
    },
}

#[derive(Debug, Args)]
pub struct CurveOutput {
    /// Points per curve, at least 2
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Recorded in the header; curves are deterministic
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file, written atomically; standard output if omitted
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Random starts per grid point, positive
    #[arg(long, default_value_t = 256)]
    pub restarts: usize,
    /// Refinement iterations per start, positive
    #[arg(long, default_value_t = 500)]
    pub iters: usize,
    /// Kraus operators in searched operations, 1 to 4
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    /// Seed for the random starts
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest accepted |best F - frontier F|, positive
    #[arg(long, default_value_t = 1e-6, allow_negative_numbers = true)]
    pub tolerance: f64,
}

impl SearchArgs {
    pub fn config(&self) -> SearchConfig {
        SearchConfig {
            restarts: self.restarts,
            refine_iters: self.iters,
            kraus_rank: self.rank,
            seed: self.seed,
            tolerance: self.tolerance,
        }
    }
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// Bloch vector x,y,z with length at most 1; repeatable
    #[arg(long, value_parser = parse_triple, allow_negative_numbers = true)]
    pub bloch: Vec<[f64; 3]>,
    /// Diagonal state diag(x, 1 - x) with x in [0, 1]; repeatable
    #[arg(long)]
    pub diag: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Transform,
    Semiclassical,
    Quantum,
    All,
}

impl From<SuiteArg> for SuiteKind {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Transform => SuiteKind::Transform,
            SuiteArg::Semiclassical => SuiteKind::Semiclassical,
            SuiteArg::Quantum => SuiteKind::Quantum,
            SuiteArg::All => SuiteKind::All,
        }
    }
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    <[f64; 3]>::try_from(v).map_err(|v| format!("expected x,y,z, got {} values", v.len()))
}

/// Failure of a command, mapped to an exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl From<qtradeoff::Error> for CliError {
    fn from(e: qtradeoff::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// `printf("%.*g")`: `digits` significant digits, trailing zeros removed.
pub fn fmt_g(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv(x: f64) -> String {
    fmt_g(x, CSV_DIGITS)
}

fn human(x: f64) -> String {
    fmt_g(x, HUMAN_DIGITS)
}

fn check_points(points: usize) -> Result<(), CliError> {
    if points < 2 {
        return Err(CliError::Usage(format!(
            "points must be at least 2, got {points}"
        )));
    }
    Ok(())
}

fn header(invocation: &str, seed: u64, columns: &str) -> String {
    format!("# {invocation}\n# seed {seed}\n{columns}\n")
}

fn push_curve(buf: &mut String, prefix: &[f64], curve: &TradeoffCurve) {
    let prefix: String = prefix.iter().map(|v| csv(*v) + ",").collect();
    for pt in curve.points() {
        let _ = writeln!(buf, "{prefix}{},{}", csv(pt.p), csv(pt.f));
    }
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, or to `stdout` when no path is given.
pub fn emit(path: Option<&Path>, contents: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        None => stdout.write_all(contents.as_bytes())?,
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(contents.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| e.error)?;
        }
    }
    Ok(())
}

pub fn curve_transform(s_psi: f64, s_phi: &[f64], points: usize) -> Result<String, CliError> {
    check_points(points)?;
    let mut buf = String::new();
    for &s in s_phi {
        push_curve(&mut buf, &[s_psi, s], &frontier_curve(s_psi, s, points)?);
    }
    Ok(buf)
}

pub fn curve_semiclassical(betas: &[f64], points: usize) -> Result<String, CliError> {
    check_points(points)?;
    let mut buf = String::new();
    for &beta in betas {
        push_curve(&mut buf, &[beta], &semiclassical_frontier(beta, points)?);
    }
    Ok(buf)
}

pub fn curve_quantum_inversion(
    beta: f64,
    overlap_in: f64,
    points: usize,
) -> Result<String, CliError> {
    check_points(points)?;
    if !(0.0..1.0).contains(&overlap_in) {
        return Err(CliError::Usage(format!(
            "overlap-in = {overlap_in} outside [0, 1)"
        )));
    }
    let psi = StatePair::canonical_z(overlap_in)?;
    let curve = quantum_inversion_frontier(beta, &psi, points)?;
    let s_in = qtradeoff::contracted_pair(beta, &psi)?.overlap();
    let mut buf = String::new();
    push_curve(&mut buf, &[beta, s_in], &curve);
    Ok(buf)
}

fn states(args: &StateArgs) -> Result<Vec<DensityMatrix>, CliError> {
    let mut out = Vec::new();
    for r in &args.bloch {
        out.push(density_from_bloch(&BlochVector::new(*r)?));
    }
    for &x in &args.diag {
        out.push(DensityMatrix::diagonal(x)?);
    }
    Ok(out)
}

fn two_states(args: &StateArgs) -> Result<(DensityMatrix, DensityMatrix), CliError> {
    match states(args)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        s => Err(CliError::Usage(format!(
            "expected exactly two states from --bloch/--diag, got {}",
            s.len()
        ))),
    }
}

pub fn fidelity(args: &StateArgs) -> Result<f64, CliError> {
    let (a, b) = two_states(args)?;
    Ok(uhlmann_fidelity(&a, &b))
}

pub fn probability(s_in: f64, s_out: Option<f64>, args: &StateArgs) -> Result<f64, CliError> {
    match s_out {
        Some(s_out) => Ok(max_probability_pure(s_in, s_out)?),
        None => {
            let (a, b) = two_states(args)?;
            Ok(max_probability_mixed(s_in, (&a, &b))?)
        }
    }
}

fn probe_columns(probe: &Probe) -> [String; 3] {
    match *probe {
        Probe::Transform { s_psi, s_phi } => ["transform".into(), csv(s_psi), csv(s_phi)],
        Probe::Semiclassical { beta } => ["semiclassical".into(), csv(beta), String::new()],
        Probe::Quantum { beta, overlap_in } => ["quantum".into(), csv(beta), csv(overlap_in)],
    }
}

fn probe_label(probe: &Probe) -> String {
    match *probe {
        Probe::Transform { s_psi, s_phi } => {
            format!("transform s_psi={} s_phi={}", human(s_psi), human(s_phi))
        }
        Probe::Semiclassical { beta } => format!("semiclassical beta={}", human(beta)),
        Probe::Quantum { beta, overlap_in } => {
            format!(
                "quantum beta={} overlap_in={}",
                human(beta),
                human(overlap_in)
            )
        }
    }
}

/// CSV of suite rows. Columns: suite,a,b,p,frontier_F,best_F,best_p,violation,samples
/// where `a,b` are `s_psi,s_phi`, `beta,` or `beta,overlap_in`.
pub fn suite_csv(rows: &[SuiteRow], invocation: &str, cfg: &SearchConfig) -> String {
    let mut buf = header(
        invocation,
        cfg.seed,
        "suite,a,b,p,frontier_F,best_F,best_p,violation,samples",
    );
    for row in rows {
        let [s, a, b] = probe_columns(&row.probe);
        let r = &row.report;
        let _ = writeln!(
            buf,
            "{s},{a},{b},{},{},{},{},{},{}",
            csv(r.target_p),
            csv(r.frontier_value),
            csv(r.best_point.f),
            csv(r.best_point.p),
            csv(r.violation),
            r.samples_evaluated
        );
    }
    buf
}

/// Whether to color the summary table.
pub fn use_color() -> bool {
    std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stdout().is_terminal()
}

pub fn summary_table(rows: &[SuiteRow], tolerance: f64, color: bool) -> String {
    let paint = |ok: bool, s: String| {
        if !color {
            s
        } else if ok {
            format!("\x1b[32m{s}\x1b[0m")
        } else {
            format!("\x1b[31m{s}\x1b[0m")
        }
    };
    let mut buf = format!(
        "{:<44} {:>16} {:>16} {:>16} {:>20}\n",
        "curve", "p", "frontier F", "oracle F", "violation"
    );
    for row in rows {
        let r = &row.report;
        let ok = r.violation.abs() <= tolerance;
        let _ = writeln!(
            buf,
            "{:<44} {:>16} {:>16} {:>16} {}",
            probe_label(&row.probe),
            human(r.target_p),
            human(r.frontier_value),
            human(r.best_point.f),
            paint(ok, format!("{:>20}", human(r.violation)))
        );
    }
    let worst = max_violation(rows);
    let ok = worst <= tolerance;
    let _ = writeln!(
        buf,
        "{} grid points, max |violation| {} (tolerance {}): {}",
        rows.len(),
        human(worst),
        human(tolerance),
        paint(ok, if ok { "PASS".into() } else { "FAIL".into() })
    );
    buf
}

/// Runs a parsed command. Returns the exit status for commands that
/// complete; usage and i/o failures come back as errors.
pub fn run(cli: &Cli, invocation: &str, stdout: &mut dyn Write) -> Result<u8, CliError> {
    match &cli.command {
        Command::CurveTransform { s_psi, s_phi, out } => {
            let body = curve_transform(*s_psi, s_phi, out.points)?;
            let text = header(invocation, out.seed, "s_psi,s_phi,p,F") + &body;
            emit(out.output.as_deref(), &text, stdout)?;
        }
        Command::CurveSemiclassical { beta, out } => {
            let body = curve_semiclassical(beta, out.points)?;
            let text = header(invocation, out.seed, "beta,p,F") + &body;
            emit(out.output.as_deref(), &text, stdout)?;
        }
        Command::CurveQuantumInversion {
            beta,
            overlap_in,
            out,
        } => {
            let body = curve_quantum_inversion(*beta, *overlap_in, out.points)?;
            let text = header(invocation, out.seed, "beta,s_in,p,F") + &body;
            emit(out.output.as_deref(), &text, stdout)?;
        }
        Command::Verify {
            suite,
            search,
            output,
        } => {
            let cfg = search.config();
            cfg.validate()?;
            let rows = run_suite((*suite).into(), &cfg)?;
            stdout.write_all(summary_table(&rows, cfg.tolerance, use_color()).as_bytes())?;
            if let Some(path) = output {
                emit(Some(path), &suite_csv(&rows, invocation, &cfg), stdout)?;
            }
            if max_violation(&rows) > cfg.tolerance {
                return Ok(1);
            }
        }
        Command::Fidelity { states } => {
            writeln!(stdout, "{}", human(fidelity(states)?))?;
        }
        Command::Probability {
            s_in,
            s_out,
            states,
        } => {
            writeln!(stdout, "{}", human(probability(*s_in, *s_out, states)?))?;
        }
    }
    Ok(0)
}
