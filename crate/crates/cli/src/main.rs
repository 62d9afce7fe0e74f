use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use polyvol_core::volume::DEFAULT_FIXED_DIGITS;
use polyvol_core::{run, Algorithm, Error, Precision, ProblemInput, RunOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    Auto,
    Primal,
    Descent,
    Lawrence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

fn parse_precision(s: &str) -> Result<Precision, String> {
    match s {
        "exact" => Ok(Precision::Exact),
        "fixed" => Ok(Precision::Fixed(DEFAULT_FIXED_DIGITS)),
        _ => match s.strip_prefix("fixed:") {
            Some(d) => d
                .parse()
                .map(Precision::Fixed)
                .map_err(|_| format!("invalid digit count `{d}`")),
            None => Err("expected `exact`, `fixed` or `fixed:<digits>`".into()),
        },
    }
}

/// Exact lattice-normalized volume of a rational polytope.
#[derive(Debug, Parser)]
#[command(name = "polyvol", version)]
struct Cli {
    /// Input file; `-` reads standard input.
    input: PathBuf,

    #[arg(long, value_enum, default_value = "auto")]
    algorithm: AlgorithmArg,

    /// `exact`, `fixed` or `fixed:<digits>`.
    #[arg(long, default_value = "exact", value_parser = parse_precision)]
    precision: Precision,

    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,

    /// Check the signed decomposition on random points and compare all
    /// three algorithms.
    #[arg(long, num_args = 0..=1, require_equals = true, default_missing_value = "1000", value_name = "SAMPLES")]
    verify: Option<usize>,

    /// Also report `Vol P / d!` for full-dimensional polytopes.
    #[arg(long)]
    euclidean: bool,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, value_enum, default_value = "text")]
    report: ReportFormat,

    /// Pattern depth of the hollow triangulation.
    #[arg(long, default_value_t = 1)]
    pattern_depth: usize,

    /// Rounds of the generic element search before giving up.
    #[arg(long, default_value_t = polyvol_core::lawrence::DEFAULT_MAX_RETRIES)]
    max_retries: usize,

    /// Skip the machine-word attempt.
    #[arg(long)]
    arbitrary_precision: bool,

    /// Write the primal triangulation to this file (primal only).
    #[arg(long, value_name = "PATH")]
    triangulation: Option<PathBuf>,
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match read_input(&cli.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let algorithm = match cli.algorithm {
        AlgorithmArg::Auto => None,
        AlgorithmArg::Primal => Some(Algorithm::Primal),
        AlgorithmArg::Descent => Some(Algorithm::Descent),
        AlgorithmArg::Lawrence => Some(Algorithm::Lawrence),
    };
    if cli.triangulation.is_some() && algorithm != Some(Algorithm::Primal) {
        eprintln!("error: --triangulation requires --algorithm=primal");
        return ExitCode::from(2);
    }
    let opts = RunOptions {
        algorithm,
        precision: cli.precision,
        threads: cli.threads,
        seed: cli.seed,
        pattern_depth: cli.pattern_depth,
        max_retries: cli.max_retries,
        force_arbitrary: cli.arbitrary_precision,
        euclidean: cli.euclidean,
        verify: cli.verify,
        export_triangulation: cli.triangulation.is_some(),
    };
    let result = ProblemInput::parse(&text).and_then(|input| run(&input, &opts));
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    if let (Some(path), Some(tri)) = (&cli.triangulation, &report.triangulation) {
        if let Err(e) = std::fs::write(path, tri) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(3);
        }
    }
    match cli.report {
        ReportFormat::Text => print!("{}", report.to_text()),
        ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("json")),
    }
    ExitCode::SUCCESS
}

fn exit_code(e: &Error) -> u8 {
    e.exit_code() as u8
}
