//! Command-line front end: parse a matrix over F_q\[t\], run the zeta
//! pipeline and the dichotomy diagnostics, emit deterministic JSON
//! reports.
//!
//! Exit codes: 0 success, 2 parse/validation error, 3 internal
//! inconsistency. The environment variable TORUS_ZETA_THREADS caps the
//! worker count for the fixed-point loop.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use torus_zeta::report::{
    closed_form_display, report_to_json, run_analyze, run_diagnose, DiagnoseOpts, MatrixInput,
    PipelineError, Report, VerdictSection, REPORT_SCHEMA,
};

#[derive(Parser)]
#[command(
    name = "torus-zeta",
    about = "Classify the dynamical zeta function of a matrix action on a \
             positive-characteristic torus, with exact rationality diagnostics",
    version
)]
struct Cli {
    /// Print the JSON schema of the report format and exit.
    #[arg(long)]
    json_schema: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args)]
struct CommonIo {
    /// Input file: a JSON matrix description.
    #[arg(short, long)]
    input: PathBuf,
    /// Output file for the JSON report (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Largest iterate k for the fixed-point counts.
    #[arg(long, default_value_t = 48)]
    kmax: u64,
    /// Number of zeta series coefficients.
    #[arg(long, default_value_t = 64)]
    terms: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Fixed-point counts, spectral data, the algebraic/transcendental
    /// verdict, and the exact series.
    Analyze {
        #[command(flatten)]
        io: CommonIo,
    },
    /// Everything `analyze` emits, plus dichotomy diagnostics over the
    /// normalized window c_k = N_k / q^(Rk).
    Diagnose {
        #[command(flatten)]
        io: CommonIo,
        /// Emit Hankel decay rows for n = 0..N (needs 2N <= kmax).
        #[arg(long, value_name = "N")]
        hankel_max: Option<usize>,
        /// Scan for a rational generating function of the c-window.
        #[arg(long)]
        kronecker: bool,
        /// Track lcm of denominators outside the exceptional set; in the
        /// transcendental case, tabulate the denominator blow-up witness.
        #[arg(long)]
        lcm: bool,
        /// Build the exceptional set up to this bound and check its
        /// density ceiling.
        #[arg(long, value_name = "BOUND")]
        exceptional_set: Option<u64>,
    },
    /// Print the exact zeta coefficients; for algebraic verdicts, also
    /// cross-expand the closed form and assert equality.
    Series {
        #[command(flatten)]
        io: CommonIo,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.json_schema {
        print!("{REPORT_SCHEMA}");
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: no command given (try --help)");
        return ExitCode::from(2);
    };
    match run(command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn threads() -> usize {
    let available = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    match std::env::var("TORUS_ZETA_THREADS") {
        Ok(v) => match v.parse::<usize>() {
            Ok(n) if n >= 1 => n.min(available.max(n)),
            _ => available,
        },
        Err(_) => available,
    }
}

fn load_input(path: &PathBuf) -> Result<MatrixInput, PipelineError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| PipelineError::Parse(format!("{}: {e}", path.display())))?;
    MatrixInput::from_json(&text)
}

fn emit(report: &Report, output: &Option<PathBuf>) -> Result<(), PipelineError> {
    let json = report_to_json(report);
    match output {
        Some(path) => std::fs::write(path, json)
            .map_err(|e| PipelineError::Parse(format!("{}: {e}", path.display()))),
        None => {
            print!("{json}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<(), PipelineError> {
    match command {
        Command::Analyze { io } => {
            let input = load_input(&io.input)?;
            let report = run_analyze(&input, io.kmax, io.terms, threads())?;
            emit(&report, &io.output)
        }
        Command::Diagnose { io, hankel_max, kronecker, lcm, exceptional_set } => {
            let input = load_input(&io.input)?;
            let opts = DiagnoseOpts {
                hankel_max,
                kronecker,
                lcm,
                exceptional_set_bound: exceptional_set,
            };
            let report = run_diagnose(&input, io.kmax, io.terms, threads(), &opts)?;
            emit(&report, &io.output)
        }
        Command::Series { io } => {
            let input = load_input(&io.input)?;
            // run_analyze already cross-checks the closed form against the
            // exponential series in the algebraic case.
            let report = run_analyze(&input, io.kmax, io.terms, threads())?;
            for c in &report.series {
                println!("{}", shorten(c));
            }
            if let VerdictSection::Algebraic { closed_form, .. } = &report.verdict {
                eprintln!(
                    "closed form {} expands to the series above; checked exactly for {} terms",
                    closed_form_display(report.q, report.spectral.r, &closed_form.factors),
                    io.terms
                );
            }
            Ok(())
        }
    }
}

/// "5/1" prints as "5"; proper fractions keep the slash.
fn shorten(r: &str) -> String {
    match r.strip_suffix("/1") {
        Some(n) => n.to_string(),
        None => r.to_string(),
    }
}
