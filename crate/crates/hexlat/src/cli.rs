//! Command-line front end: argument parsing, dispatch and CSV/JSON rendering.
//!
//! [`run`] takes the argument list and returns the exit code and the rendered
//! output, so the binary is a thin wrapper and tests can drive it in-process.

use crate::energy::{energy, theta_lattice, PotentialSpec};
use crate::error::Error;
use crate::lattice_domain::{reduce_to_fundamental, UpperHalfPoint};
use crate::minimization::{
    minimize_generic, minimize_theta_difference, minimize_w, phase_scan, MinimizeOutcome, PhaseProblem,
};
use crate::special_functions::SeriesConfig;
use crate::verification::{verify_all, verify_only, VerifyConfig, DEFAULT_SEED};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EVALUATION: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Output format and the number of significant decimal digits for floats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutputFormat {
    pub format: Format,
    pub precision: usize,
}

#[derive(Debug, Parser)]
#[command(name = "hexlat", version, about = "Lattice energies, hexagonal minimizers and bound verification")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Significant decimal digits, 6 to 17.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u8).range(6..=17), global = true)]
    pub precision: u8,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized verification points.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Relative truncation tolerance of every series.
    #[arg(long, default_value_t = 1e-14, global = true)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lattice theta function θ(α; x + iy).
    #[command(allow_negative_numbers = true)]
    Theta { alpha: f64, x: f64, y: f64 },
    /// Energy per particle of a potential at the lattice with shape x + iy.
    #[command(allow_negative_numbers = true)]
    Energy {
        /// `w`, `thetadiff`, `gaussian` or the path of a potential-spec JSON file.
        problem: String,
        x: f64,
        y: f64,
        #[command(flatten)]
        params: ProblemParams,
    },
    /// Minimize an energy over lattice shapes.
    #[command(allow_negative_numbers = true)]
    Minimize {
        /// `w`, `thetadiff` or the path of a potential-spec JSON file.
        problem: String,
        #[command(flatten)]
        params: ProblemParams,
    },
    /// Classify a grid of (α, b) and report the boundary per α.
    PhaseScan {
        /// `w` or `thetadiff`.
        problem: String,
        /// Comma-separated α values.
        #[arg(long, value_delimiter = ',', required = true)]
        alphas: Vec<f64>,
        /// `start:stop:step`, inclusive of `stop`.
        #[arg(long, conflicts_with = "b_values")]
        b_range: Option<String>,
        /// Comma-separated b values.
        #[arg(long, value_delimiter = ',')]
        b_values: Option<Vec<f64>>,
        /// Second scale of the theta difference.
        #[arg(long, default_value_t = 2.0)]
        a: f64,
    },
    /// Run the numerical bound checks.
    Verify {
        /// Only these report ids.
        #[arg(long, num_args = 1..)]
        only: Vec<String>,
    },
    /// Map x + iy into the fundamental domain.
    #[command(allow_negative_numbers = true)]
    Reduce { x: f64, y: f64 },
}

#[derive(Debug, Clone, Args)]
pub struct ProblemParams {
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 2.0)]
    pub a: f64,
    #[arg(long, default_value_t = 0.0)]
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Nums(Vec<f64>),
    Int(i64),
    Bool(bool),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

/// Named columns and rows; rendered as CSV with a header or as JSON objects
/// with the same field names.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

pub fn format_float(v: f64, precision: usize) -> String {
    if v.is_finite() {
        format!("{:.*e}", precision - 1, v)
    } else {
        v.to_string()
    }
}

fn rounded(v: f64, precision: usize) -> f64 {
    format_float(v, precision).parse().unwrap_or(v)
}

impl Table {
    pub fn render(&self, fmt: OutputFormat, seed: u64) -> Result<String, CliError> {
        match fmt.format {
            Format::Csv => self.render_csv(fmt.precision, seed),
            Format::Json => self.render_json(fmt.precision, seed),
        }
    }

    fn render_csv(&self, p: usize, seed: u64) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).map_err(CliError::output)?;
        for row in &self.rows {
            let fields = row.iter().map(|c| match c {
                Cell::Num(v) => format_float(*v, p),
                Cell::Nums(vs) => vs.iter().map(|v| format_float(*v, p)).collect::<Vec<_>>().join(";"),
                Cell::Int(i) => i.to_string(),
                Cell::Bool(b) => b.to_string(),
                Cell::Text(s) => s.clone(),
                Cell::Empty => String::new(),
            });
            w.write_record(fields).map_err(CliError::output)?;
        }
        let body = String::from_utf8(w.into_inner().map_err(|e| CliError::output(e.into_error()))?)
            .map_err(CliError::output)?;
        Ok(format!("# hexlat {} seed={seed} precision={p}\n{body}", self.command))
    }

    fn render_json(&self, p: usize, seed: u64) -> Result<String, CliError> {
        use serde_json::{json, Map, Value};
        let num = |v: f64| {
            let r = rounded(v, p);
            serde_json::Number::from_f64(r).map_or_else(|| Value::String(v.to_string()), Value::Number)
        };
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (name, c) in self.columns.iter().zip(row) {
                    let v = match c {
                        Cell::Num(v) => num(*v),
                        Cell::Nums(vs) => Value::Array(vs.iter().map(|v| num(*v)).collect()),
                        Cell::Int(i) => json!(i),
                        Cell::Bool(b) => json!(b),
                        Cell::Text(s) => json!(s),
                        Cell::Empty => Value::Null,
                    };
                    m.insert(name.to_string(), v);
                }
                Value::Object(m)
            })
            .collect();
        let doc = json!({ "command": self.command, "seed": seed, "precision": p, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).map_err(CliError::output)?;
        s.push('\n');
        Ok(s)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Eval(Error),
    #[error("output failed: {0}")]
    Output(String),
}

impl CliError {
    fn output<E: std::fmt::Display>(e: E) -> Self {
        CliError::Output(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Eval(_) | CliError::Output(_) => EXIT_EVALUATION,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NonPositiveX(_)
            | Error::NonPositiveAlpha(_)
            | Error::NonPositiveY(_)
            | Error::InvalidConfig(_)
            | Error::InvalidParameter(_)
            | Error::UnsupportedOrder { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Eval(e),
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((table, code)) => {
            let fmt = OutputFormat {
                format: cli.global.format,
                precision: cli.global.precision as usize,
            };
            let text = match table.render(fmt, cli.global.seed) {
                Ok(t) => t,
                Err(e) => return failure(e),
            };
            match &cli.global.out {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
                    Err(e) => failure(CliError::output(format!("{}: {e}", path.display()))),
                },
                None => Outcome { code, stdout: text, stderr: String::new() },
            }
        }
        Err(e) => failure(e),
    }
}

fn failure(e: CliError) -> Outcome {
    Outcome {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

fn series(g: &GlobalArgs) -> Result<SeriesConfig, CliError> {
    let d = SeriesConfig::default();
    Ok(SeriesConfig::new(g.tol, d.max_terms(), d.poisson_switch())?)
}

fn point(x: f64, y: f64) -> Result<UpperHalfPoint, CliError> {
    Ok(UpperHalfPoint::new(x, y)?)
}

fn read_spec(path: &Path) -> Result<PotentialSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let spec: PotentialSpec =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    spec.validate()?;
    Ok(spec)
}

fn named_spec(problem: &str, p: &ProblemParams) -> Result<PotentialSpec, CliError> {
    Ok(match problem {
        "w" => PotentialSpec::PolyGaussian { alpha: p.alpha, b: p.b },
        "thetadiff" => PotentialSpec::GaussianDiff { alpha: p.alpha, a: p.a, b: p.b },
        "gaussian" => PotentialSpec::Gaussian { alpha: p.alpha },
        other => read_spec(Path::new(other))?,
    })
}

/// Parses `start:stop:step` into the inclusive grid.
pub fn parse_range(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("malformed range {s:?}, expected start:stop:step"));
    let parts: Vec<f64> = s
        .split(':')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let [start, stop, step] = parts[..] else { return Err(bad()) };
    if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    if n > 100_000 {
        return Err(CliError::Usage(format!("range {s:?} has more than 100000 points")));
    }
    Ok((0..=n).map(|i| start + step * i as f64).collect())
}

fn execute(cli: &Cli) -> Result<(Table, i32), CliError> {
    let g = &cli.global;
    let cfg = series(g)?;
    match &cli.command {
        Command::Theta { alpha, x, y } => {
            let v = theta_lattice(*alpha, point(*x, *y)?, &cfg)?;
            Ok((
                Table {
                    command: "theta",
                    columns: vec!["alpha", "x", "y", "theta"],
                    rows: vec![vec![(*alpha).into(), (*x).into(), (*y).into(), v.into()]],
                },
                EXIT_OK,
            ))
        }
        Command::Energy { problem, x, y, params } => {
            let spec = named_spec(problem, params)?;
            let v = energy(&spec, point(*x, *y)?, &cfg)?;
            Ok((
                Table {
                    command: "energy",
                    columns: vec!["problem", "x", "y", "energy"],
                    rows: vec![vec![problem.as_str().into(), (*x).into(), (*y).into(), v.into()]],
                },
                EXIT_OK,
            ))
        }
        Command::Minimize { problem, params } => {
            let out = match problem.as_str() {
                "w" => minimize_w(params.alpha, params.b, &cfg)?,
                "thetadiff" => minimize_theta_difference(params.alpha, params.a, params.b, &cfg)?,
                _ => minimize_generic(&named_spec(problem, params)?, &cfg)?,
            };
            Ok((minimize_table(problem, &out), EXIT_OK))
        }
        Command::PhaseScan { problem, alphas, b_range, b_values, a } => {
            let kind = match problem.as_str() {
                "w" => PhaseProblem::W,
                "thetadiff" => PhaseProblem::ThetaDiff { a: *a },
                other => return Err(CliError::Usage(format!("phase-scan problem must be w or thetadiff, got {other:?}"))),
            };
            let bs = match (b_range, b_values) {
                (Some(r), _) => parse_range(r)?,
                (None, Some(v)) => v.clone(),
                (None, None) => return Err(CliError::Usage("one of --b-range or --b-values is required".into())),
            };
            let t = phase_scan(alphas, &bs, kind, &cfg)?;
            let mut rows = Vec::new();
            for c in &t.cells {
                rows.push(vec![
                    "cell".into(),
                    c.alpha.into(),
                    c.b.into(),
                    c.classification.label().into(),
                    Cell::Empty,
                    Cell::Empty,
                ]);
            }
            for bd in &t.boundaries {
                rows.push(vec![
                    "boundary".into(),
                    bd.alpha.into(),
                    Cell::Empty,
                    Cell::Empty,
                    bd.last_hexagonal_b.into(),
                    bd.first_no_minimizer_b.into(),
                ]);
            }
            Ok((
                Table {
                    command: "phase-scan",
                    columns: vec!["row", "alpha", "b", "classification", "last_hexagonal_b", "first_no_minimizer_b"],
                    rows,
                },
                EXIT_OK,
            ))
        }
        Command::Verify { only } => {
            let vcfg = VerifyConfig {
                seed: g.seed,
                series: cfg,
                ..VerifyConfig::default()
            };
            let reports = if only.is_empty() { verify_all(&vcfg)? } else { verify_only(only, &vcfg)? };
            let all_pass = reports.iter().all(|r| r.pass);
            let rows = reports
                .into_iter()
                .map(|r| {
                    vec![
                        r.lemma_id.into(),
                        r.pass.into(),
                        r.computed.into(),
                        r.claimed.into(),
                        r.comparison.symbol().into(),
                        r.tolerance.into(),
                        r.grid.into(),
                        r.note.map_or(Cell::Empty, Cell::Text),
                    ]
                })
                .collect();
            Ok((
                Table {
                    command: "verify",
                    columns: vec!["lemma_id", "pass", "computed", "claimed", "comparison", "tolerance", "grid", "note"],
                    rows,
                },
                if all_pass { EXIT_OK } else { EXIT_VERIFY_FAILED },
            ))
        }
        Command::Reduce { x, y } => {
            let (p, w) = reduce_to_fundamental(point(*x, *y)?)?;
            Ok((
                Table {
                    command: "reduce",
                    columns: vec!["x", "y", "word", "word_length"],
                    rows: vec![vec![p.x.into(), p.y.into(), w.display().into(), Cell::Int(w.len() as i64)]],
                },
                EXIT_OK,
            ))
        }
    }
}

fn minimize_table(problem: &str, out: &MinimizeOutcome) -> Table {
    let row = match out {
        MinimizeOutcome::Minimizer { z_star, value, distance_to_hex, advisory } => vec![
            problem.into(),
            "minimizer".into(),
            out.classification().label().into(),
            z_star.x.into(),
            z_star.y.into(),
            (*value).into(),
            (*distance_to_hex).into(),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            (*advisory).into(),
        ],
        MinimizeOutcome::NoMinimizer { witness_y, witness_values, asymptotic_slope_sign, advisory } => vec![
            problem.into(),
            "no_minimizer".into(),
            out.classification().label().into(),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Nums(witness_y.clone()),
            Cell::Nums(witness_values.clone()),
            Cell::Int(*asymptotic_slope_sign as i64),
            (*advisory).into(),
        ],
    };
    Table {
        command: "minimize",
        columns: vec![
            "problem",
            "outcome",
            "classification",
            "x",
            "y",
            "value",
            "distance_to_hex",
            "witness_y",
            "witness_values",
            "asymptotic_slope_sign",
            "advisory",
        ],
        rows: vec![row],
    }
}
