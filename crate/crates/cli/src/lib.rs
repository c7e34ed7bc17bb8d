//! Command-line front end for `projrigid`: input documents, bundled examples,
//! report rendering and argument handling.
//!
//! Exit codes: 0 on success (a non-rigid verdict is a result, not a failure),
//! 1 for unreadable or malformed input, 2 when the input is well formed but a
//! precondition of the requested operation fails.

pub mod bundled;
pub mod commands;
pub mod document;
pub mod error;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use projrigid::lie::ModuleKind;

pub use document::{InputDocument, Problem};
pub use error::CliError;
pub use report::Report;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "PROJRIGID_THREADS";

#[derive(Debug, Parser)]
#[command(name = "projrigid", version, about = "Twisted cohomology and projective rigidity of hyperbolic 3-manifold groups")]
pub struct Cli {
    /// Print the JSON report instead of the human-readable text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

fn module_kind(s: &str) -> Result<ModuleKind, String> {
    s.parse()
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate an input: parse it, then check relators and cusp commutation.
    Check {
        /// Input JSON file, or `bundled:NAME`.
        input: String,
    },
    /// Cocycles, coboundaries and cohomology with coefficients in one module.
    Cohomology {
        input: String,
        /// One of v, so31, sl4, gl4.
        #[arg(long, default_value = "v", value_parser = module_kind)]
        module: ModuleKind,
        /// Also compute H^2 with an Euler characteristic check.
        #[arg(long)]
        h2: bool,
    },
    /// Infinitesimal projective rigidity verdict.
    Rigidity { input: String },
    /// Decide which slopes of a cusp are flexing.
    Flexing {
        input: String,
        /// Cusp index, starting at 0.
        #[arg(long, default_value_t = 0)]
        cusp: usize,
        /// Comma-separated slopes `p/q` meaning meridian^p * longitude^q.
        #[arg(long)]
        slopes: String,
        /// Also state the filling prediction along the line `q*p' - p*q' = C`
        /// for each flexing slope `p/q`.
        #[arg(long, allow_hyphen_values = true)]
        line: Option<i64>,
    },
    /// Elements of a module fixed by the given words.
    Invariant {
        input: String,
        /// Comma-separated words.
        #[arg(long)]
        words: String,
        #[arg(long, default_value = "v", value_parser = module_kind)]
        module: ModuleKind,
    },
    /// Killing pairing of a cocycle on a word with an element fixed by it.
    Pairing {
        input: String,
        /// Cochain file `{"module": .., "values": {generator: matrix}}`.
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        word: String,
        /// Matrix file `{"matrix": [[..]]}`.
        #[arg(long)]
        invariant: PathBuf,
    },
    /// Cup product of two cocycles on each relator and its class.
    Cup {
        input: String,
        #[arg(long)]
        z1: PathBuf,
        #[arg(long)]
        z2: PathBuf,
    },
    /// Pull a cocycle back along an automorphism realized by an intertwiner.
    Auto {
        input: String,
        /// Automorphism file `{"images": {generator: word}}`.
        #[arg(long)]
        phi: PathBuf,
        /// Matrix file with `A` such that `rho(phi(x)) = A rho(x) A^-1`.
        #[arg(long)]
        intertwiner: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Root-space self-test of su(3,1).
    #[command(name = "su31-selftest")]
    Su31Selftest,
    /// Print a bundled example input (figure8, whitehead, torus).
    Example { name: String },
}

/// Reads an input path, or a bundled example given as `bundled:NAME`.
pub fn load_input(path: &str) -> Result<Problem, CliError> {
    if let Some(name) = path.strip_prefix("bundled:") {
        let text = bundled::get(name).ok_or_else(|| {
            CliError::input(format!("unknown bundled example {name:?}; available: {}", bundled::NAMES.join(", ")))
        })?;
        return Problem::from_bytes(text.as_bytes());
    }
    let bytes = std::fs::read(path).map_err(|e| CliError::input(format!("{path}: {e}")))?;
    Problem::from_bytes(&bytes)
}

fn thread_count() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::input(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
    }
}

/// Output of a command: either a report or raw text (for `example`).
enum Output {
    Report(Report),
    Raw(String),
}

fn execute(command: &Command) -> Result<Output, CliError> {
    use commands as c;
    use document::read_json;
    let report = match command {
        Command::Check { input } => c::check(&load_input(input)?)?,
        Command::Cohomology { input, module, h2 } => c::cohomology(&load_input(input)?, *module, *h2)?,
        Command::Rigidity { input } => c::rigidity(&load_input(input)?)?,
        Command::Flexing { input, cusp, slopes, line } => {
            c::flexing(&load_input(input)?, *cusp, &c::parse_slopes(slopes)?, *line)?
        }
        Command::Invariant { input, words, module } => {
            c::invariant(&load_input(input)?, &c::parse_word_list(words), *module)?
        }
        Command::Pairing { input, cocycle, word, invariant } => {
            let p = load_input(input)?;
            c::pairing(&p, &read_json(cocycle)?, word, &read_json(invariant)?)?
        }
        Command::Cup { input, z1, z2 } => {
            let p = load_input(input)?;
            c::cup(&p, &read_json(z1)?, &read_json(z2)?)?
        }
        Command::Auto { input, phi, intertwiner, cocycle } => {
            let p = load_input(input)?;
            c::auto(&p, &read_json(phi)?, &read_json(intertwiner)?, &read_json(cocycle)?)?
        }
        Command::Su31Selftest => c::su31_selftest()?,
        Command::Example { name } => {
            let text = bundled::get(name).ok_or_else(|| {
                CliError::input(format!("unknown example {name:?}; available: {}", bundled::NAMES.join(", ")))
            })?;
            return Ok(Output::Raw(text.to_string()));
        }
    };
    Ok(Output::Report(report))
}

/// Runs the tool on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(rendered.as_bytes()) } else { stderr.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let outcome = thread_count().and_then(|threads| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            builder = builder.num_threads(n);
        }
        let pool = builder.build().map_err(|e| CliError::input(format!("cannot start worker threads: {e}")))?;
        pool.install(|| execute(&cli.command))
    });
    match outcome {
        Ok(Output::Raw(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Ok(Output::Report(r)) => {
            let text = if cli.json { r.to_json() } else { r.to_text() };
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
