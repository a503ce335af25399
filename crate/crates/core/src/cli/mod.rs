//! Command-line front end. [`run`] returns the rendered report and exit
//! code, so the binary is a thin wrapper and tests need no subprocess.

mod commands;

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::combinatorics::{catalog, parse_icp, PolyhedronCombinatorics, CATALOG_NAMES};

/// Environment variable supplying the default root tolerance.
pub const TOLERANCE_ENV: &str = "IDEAL_COXETER_TOL";
/// Environment variable supplying the default volume tolerance.
pub const VOLUME_TOLERANCE_ENV: &str = "IDEAL_COXETER_VOLUME_TOL";

/// Exit status of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Failure = 1,
    Usage = 2,
    Inconclusive = 3,
}

impl ExitCode {
    /// Precedence when combining several outcomes: usage errors dominate,
    /// then inconclusive results, then failures.
    fn rank(self) -> u8 {
        match self {
            ExitCode::Ok => 0,
            ExitCode::Failure => 1,
            ExitCode::Inconclusive => 2,
            ExitCode::Usage => 3,
        }
    }

    pub fn worst(self, other: ExitCode) -> ExitCode {
        if other.rank() > self.rank() {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: ExitCode,
    pub report: String,
}

impl CommandOutcome {
    pub fn new(exit_code: ExitCode, report: impl Into<String>) -> Self {
        CommandOutcome {
            exit_code,
            report: report.into(),
        }
    }

    pub fn usage(msg: impl fmt::Display) -> Self {
        Self::new(ExitCode::Usage, format!("error: {msg}\n"))
    }

    pub fn code(&self) -> i32 {
        self.exit_code as i32
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ideal-coxeter",
    version,
    about = "Growth functions, growth rates and volumes of ideal Coxeter polyhedra"
)]
pub struct Cli {
    /// Tab-separated machine-readable output.
    #[arg(long, global = true)]
    pub tsv: bool,

    /// Run the command on every `.icp` file of a directory instead of one input.
    #[arg(long, global = true, value_name = "DIR")]
    pub all: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

/// A polyhedron: an ICP file, or a built-in name (P1..P5, OCT).
#[derive(Debug, Args)]
pub struct Input {
    /// ICP file or built-in name; omit with --all.
    pub input: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a model and run the realizability checks.
    Validate(Input),
    /// Growth function by both formulas, the polynomial g and series terms.
    Growth {
        #[command(flatten)]
        input: Input,
        /// Print the coefficients a_0..=a_N.
        #[arg(long, value_name = "N")]
        series: Option<usize>,
    },
    /// Certified growth rate and Perron check.
    Rate {
        #[command(flatten)]
        input: Input,
        /// Enclosure width for the dominant root (decimal or p/q).
        #[arg(long, env = TOLERANCE_ENV, default_value = "1e-10")]
        tol: String,
        /// Certify this denominator polynomial instead, e.g. `4t^2-4t+1`.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "input")]
        poly: Option<String>,
    },
    /// Volume of a catalog polyhedron.
    Volume {
        /// One of P1..P5.
        name: String,
        #[arg(long, env = VOLUME_TOLERANCE_ENV, default_value = "1e-12")]
        tol: f64,
    },
    /// Glue two polyhedra along a face and verify the result.
    Glue {
        a: String,
        b: String,
        #[arg(long)]
        face_a: usize,
        #[arg(long)]
        face_b: usize,
        /// Edge matching `k1:l1,k2:l2,...` of neighbour faces.
        #[arg(long, required_unless_present = "auto")]
        map: Option<String>,
        /// Try every adjacency-preserving matching.
        #[arg(long)]
        auto: bool,
        #[arg(long, env = TOLERANCE_ENV, default_value = "1e-10")]
        tol: String,
    },
    /// Sphere sizes by breadth-first enumeration of the group.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = crate::oracle::DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Built-in polyhedra with f, c, tau and volume.
    Catalog {
        #[arg(long, env = TOLERANCE_ENV, default_value = "1e-10")]
        tol: String,
    },
}

/// Parses a positive tolerance given as a decimal (`1e-10`, `0.001`) or a
/// fraction (`1/1000`) into an exact rational.
pub fn parse_tolerance(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("`{s}` is not a positive tolerance");
    let value = if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        BigRational::new(n, d)
    } else {
        let (mant, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let scale = exp - frac.len() as i32;
        let ten = BigInt::from(10);
        if scale >= 0 {
            BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
        } else {
            BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
        }
    };
    if value.is_positive() {
        Ok(value)
    } else {
        Err(bad())
    }
}

/// Loads an ICP file, or a built-in model when no such file exists.
pub fn load(arg: &str) -> Result<PolyhedronCombinatorics, CommandOutcome> {
    let path = Path::new(arg);
    if !path.exists() && CATALOG_NAMES.contains(&arg) {
        return catalog(arg).map_err(CommandOutcome::usage);
    }
    let text = std::fs::read_to_string(path).map_err(|e| CommandOutcome::usage(format!("{arg}: {e}")))?;
    parse_icp(&text).map_err(|e| CommandOutcome::usage(format!("{arg}: {e}")))
}

/// `.icp` files of a directory in name order.
fn icp_files(dir: &Path) -> Result<Vec<String>, CommandOutcome> {
    let rd = std::fs::read_dir(dir).map_err(|e| CommandOutcome::usage(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "icp"))
        .collect();
    files.sort();
    Ok(files.into_iter().map(|p| p.display().to_string()).collect())
}

/// Runs the per-input command on one input or on every file of `--all`.
fn for_inputs(cli_all: &Option<PathBuf>, input: &Input, mut f: impl FnMut(&str) -> CommandOutcome) -> CommandOutcome {
    let inputs = match (cli_all, &input.input) {
        (Some(_), Some(_)) => return CommandOutcome::usage("give either an input or --all, not both"),
        (None, None) => return CommandOutcome::usage("missing input (file, built-in name or --all DIR)"),
        (None, Some(one)) => return f(one),
        (Some(dir), None) => match icp_files(dir) {
            Ok(v) => v,
            Err(o) => return o,
        },
    };
    let mut code = ExitCode::Ok;
    let mut report = String::new();
    for path in inputs {
        let o = f(&path);
        code = code.worst(o.exit_code);
        report.push_str(&o.report);
    }
    CommandOutcome::new(code, report)
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { ExitCode::Usage } else { ExitCode::Ok };
            return CommandOutcome::new(code, e.render().to_string());
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> CommandOutcome {
    let tsv = cli.tsv;
    let no_batch = |name: &str| {
        if cli.all.is_some() {
            Some(CommandOutcome::usage(format!("--all does not apply to `{name}`")))
        } else {
            None
        }
    };
    match &cli.command {
        Command::Validate(input) => for_inputs(&cli.all, input, |s| commands::cmd_validate(s, tsv)),
        Command::Growth { input, series } => for_inputs(&cli.all, input, |s| commands::cmd_growth(s, *series, tsv)),
        Command::Rate { input, tol, poly } => {
            let tol = match parse_tolerance(tol) {
                Ok(t) => t,
                Err(e) => return CommandOutcome::usage(e),
            };
            match poly {
                Some(text) => match no_batch("rate --poly") {
                    Some(o) => o,
                    None => commands::cmd_rate_poly(text, &tol, tsv),
                },
                None => for_inputs(&cli.all, input, |s| commands::cmd_rate(s, &tol, tsv)),
            }
        }
        Command::Volume { name, tol } => no_batch("volume").unwrap_or_else(|| commands::cmd_volume(name, *tol, tsv)),
        Command::Glue {
            a,
            b,
            face_a,
            face_b,
            map,
            auto,
            tol,
        } => {
            if let Some(o) = no_batch("glue") {
                return o;
            }
            let tol = match parse_tolerance(tol) {
                Ok(t) => t,
                Err(e) => return CommandOutcome::usage(e),
            };
            commands::cmd_glue(a, b, *face_a, *face_b, map.as_deref(), *auto, &tol, tsv)
        }
        Command::Oracle { input, depth } => for_inputs(&cli.all, input, |s| commands::cmd_oracle(s, *depth, tsv)),
        Command::Catalog { tol } => {
            if let Some(o) = no_batch("catalog") {
                return o;
            }
            match parse_tolerance(tol) {
                Ok(t) => commands::cmd_catalog(&t, tsv),
                Err(e) => CommandOutcome::usage(e),
            }
        }
    }
}
