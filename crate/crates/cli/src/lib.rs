//! Argument handling and dispatch for the `qmds` binary.
//!
//! Machine-readable output (JSON, CSV) goes to the primary stream;
//! progress and error messages go to the diagnostic stream.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use qmds_core::checks;
use qmds_core::format::read_code_file;
use qmds_core::verify::{all_passed, emit, probe_additive};
use qmds_core::{
    additive_code, extended_code_for_distance, nonexistence_5_1_5, sweep, verify_code, verify_construction, CodeFile,
    ConstructionResult, Error, Family, FieldTower, OutputFormat, DEFAULT_MAX_FIELD_SIZE,
};

/// Exit status: everything checked out.
pub const EXIT_OK: i32 = 0;
/// Exit status: a code or suite failed verification.
pub const EXIT_VERIFICATION: i32 = 1;
/// Exit status: invalid, excluded or malformed input.
pub const EXIT_INVALID: i32 = 2;
/// Exit status: reading or writing a file failed.
pub const EXIT_IO: i32 = 3;

/// Environment variable overriding the maximum field size q^2.
pub const FIELD_BOUND_ENV: &str = "QMDS_MAX_FIELD_SIZE";

#[derive(Debug, Parser)]
#[command(name = "qmds", version, about = "Hermitian self-orthogonal GRS codes and the quantum MDS codes they give")]
pub struct Cli {
    /// Largest field size q^2 that may be built.
    #[arg(long, global = true, env = FIELD_BOUND_ENV, default_value_t = DEFAULT_MAX_FIELD_SIZE)]
    pub max_field_size: u64,

    /// Report timings on the diagnostic stream.
    #[arg(short, long, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build, verify and write a code from one of the two families.
    #[command(subcommand)]
    Construct(Construct),
    /// Re-verify a code file.
    Verify {
        file: PathBuf,
    },
    /// Build and verify every admissible code for a list of q.
    Sweep(SweepArgs),
    /// Run the identity and criterion self-test suites for one q.
    CheckLemmas {
        #[arg(long)]
        q: u64,
    },
    /// Exhaustive search for a Hermitian self-orthogonal [5,1,5] code over GF(4).
    No515,
    /// Check whether additive-coset codes one dimension past their range stay self-orthogonal.
    Probe {
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_Q_LIST)]
        q: Vec<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Additive-coset GRS code of length tq and dimension k.
    Theorem1 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multiplicative-coset extended GRS code of length t(q+1)+2 whose quantum code has distance d.
    Theorem2 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub const DEFAULT_Q_LIST: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_Q_LIST)]
    pub q: Vec<u64>,
    #[arg(long, default_value = "both", value_parser = ["theorem1", "theorem2", "both"])]
    pub family: String,
    #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
    pub format: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failure, with the exit status it maps to.
#[derive(Debug)]
struct Failure {
    status: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Io(_) => EXIT_IO,
            Error::Csv(c) if c.is_io_error() => EXIT_IO,
            Error::Verification(_) => EXIT_VERIFICATION,
            _ => EXIT_INVALID,
        };
        Failure { status, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { status: EXIT_IO, message: e.to_string() }
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, diag: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(diag, "{}", e.render());
                    EXIT_INVALID
                }
            };
        }
    };
    let start = Instant::now();
    let status = match dispatch(&cli, out, diag) {
        Ok(status) => status,
        Err(f) => {
            let _ = writeln!(diag, "error: {}", f.message);
            f.status
        }
    };
    if cli.verbose {
        let _ = writeln!(diag, "finished in {:.3}s", start.elapsed().as_secs_f64());
    }
    let _ = out.flush();
    status
}

fn dispatch(cli: &Cli, out: &mut dyn Write, diag: &mut dyn Write) -> Outcome {
    let bound = cli.max_field_size;
    match &cli.command {
        Command::Construct(c) => construct(c, bound, out, diag),
        Command::Verify { file } => verify(file, bound, out, diag),
        Command::Sweep(args) => run_sweep(args, bound, out, diag),
        Command::CheckLemmas { q } => run_self_tests(*q, bound, out, diag),
        Command::No515 => no515(out, diag),
        Command::Probe { q } => probe(q, bound, out),
    }
}

fn field(q: u64, bound: u64) -> Result<Arc<FieldTower>, Failure> {
    Ok(Arc::new(FieldTower::for_order_with_bound(q, bound)?))
}

/// Writes to `path` if given, else to the primary stream.
fn write_output(path: Option<&Path>, out: &mut dyn Write, body: impl FnOnce(&mut dyn Write) -> Outcome) -> Outcome {
    match path {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure { status: EXIT_IO, message: format!("{}: {e}", path.display()) })?;
            let mut file = BufWriter::new(file);
            let status = body(&mut file)?;
            file.flush()?;
            Ok(status)
        }
        None => body(out),
    }
}

fn construct(c: &Construct, bound: u64, out: &mut dyn Write, diag: &mut dyn Write) -> Outcome {
    let (result, path): (ConstructionResult, _) = match c {
        Construct::Theorem1 { q, t, k, out } => (additive_code(&field(*q, bound)?, *t, *k)?, out),
        Construct::Theorem2 { q, t, d, out } => (extended_code_for_distance(&field(*q, bound)?, *t, *d)?, out),
    };
    let report = verify_construction(&result);
    writeln!(
        diag,
        "{} {} [{}, {}, {}] -> {}: {} (distance: {})",
        result.provenance,
        if report.passed() { "verified" } else { "FAILED" },
        report.length,
        report.dimension,
        report.length - report.dimension + 1,
        result.quantum,
        if report.hermitian_self_orthogonal { "Hermitian self-orthogonal" } else { "not self-orthogonal" },
        report.distance_method.as_str(),
    )?;
    if !report.passed() {
        return Ok(EXIT_VERIFICATION);
    }
    let text = CodeFile::from_construction(&result).to_json()?;
    write_output(path.as_deref(), out, |w| {
        w.write_all(text.as_bytes())?;
        Ok(EXIT_OK)
    })
}

fn verify(file: &Path, bound: u64, out: &mut dyn Write, diag: &mut dyn Write) -> Outcome {
    let contents = read_code_file(file).map_err(|e| {
        let Failure { status, message } = Failure::from(e);
        Failure { status, message: format!("{}: {message}", file.display()) }
    })?;
    let report = match contents.to_construction(bound)? {
        Some(result) => verify_construction(&result),
        None => verify_code(&contents.to_code(bound)?),
    };
    serde_json::to_writer_pretty(&mut *out, &report).map_err(Error::from)?;
    writeln!(out)?;
    writeln!(diag, "{}: {}", file.display(), if report.passed() { "verified" } else { "FAILED" })?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFICATION })
}

fn run_sweep(args: &SweepArgs, bound: u64, out: &mut dyn Write, diag: &mut dyn Write) -> Outcome {
    let family: Family = args.family.parse()?;
    let format: OutputFormat = args.format.parse()?;
    let rows = sweep(&args.q, family, bound)?;
    write_output(args.out.as_deref(), out, |w| {
        emit(&rows, format, w)?;
        Ok(EXIT_OK)
    })?;
    let excluded = rows.iter().filter(|r| r.is_excluded()).count();
    let failed = rows.iter().filter(|r| !r.passed()).count();
    writeln!(diag, "{} rows: {} failed, {} excluded", rows.len(), failed, excluded)?;
    Ok(if all_passed(&rows) { EXIT_OK } else { EXIT_VERIFICATION })
}

fn run_self_tests(q: u64, bound: u64, out: &mut dyn Write, diag: &mut dyn Write) -> Outcome {
    let outcomes = checks::run_all(&field(q, bound)?)?;
    for o in &outcomes {
        serde_json::to_writer(&mut *out, o).map_err(Error::from)?;
        writeln!(out)?;
        let verdict = match (o.skipped, o.passed()) {
            (Some(why), _) => format!("skipped ({why})"),
            (None, true) => "ok".to_string(),
            (None, false) => "FAILED".to_string(),
        };
        writeln!(diag, "{:<36} {:>7} cases  {verdict}", o.suite, o.cases)?;
    }
    Ok(if outcomes.iter().all(|o| o.passed()) { EXIT_OK } else { EXIT_VERIFICATION })
}

fn no515(out: &mut dyn Write, diag: &mut dyn Write) -> Outcome {
    let record = nonexistence_5_1_5();
    serde_json::to_writer(&mut *out, &record).map_err(Error::from)?;
    writeln!(out)?;
    writeln!(
        diag,
        "{}: {} full-weight candidates ({} classes), none Hermitian self-orthogonal",
        if record.confirmed { "confirmed" } else { "REFUTED" },
        record.examined,
        record.classes
    )?;
    Ok(if record.confirmed { EXIT_OK } else { EXIT_VERIFICATION })
}

fn probe(q: &[u64], bound: u64, out: &mut dyn Write) -> Outcome {
    for row in probe_additive(q, bound)? {
        serde_json::to_writer(&mut *out, &row).map_err(Error::from)?;
        writeln!(out)?;
    }
    Ok(EXIT_OK)
}
