//! `kpath`: enumerate k-path graphs, encode them as graph6, compute graph
//! spectra, and search for extremal eigenvalues.
//!
//! Exit codes: 0 success / verified, 1 usage error, 2 verification failure,
//! 3 internal error.

use std::fmt::Write as _;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kpath_core::extremal::{self, Direction, Objective, ObjectiveKind, SearchConfig};
use kpath_core::{g6, kpath, seq, spectra};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY_FAILED: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "kpath", version, about)]
struct Cli {
    /// Worker threads for the search pool (default: machine parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write all non-isomorphic k-path graphs of order n, one graph6 string
    /// per line, in enumeration order. The count goes to standard error.
    Generate(GenerateArgs),
    /// Print the number of non-isomorphic k-path graphs of order n.
    Count(CountArgs),
    /// Print the ascending eigenvalues of a graph matrix, one per line.
    Spectrum(SpectrumArgs),
    /// Exhaustively search the k-path graphs of fixed order for an extremal
    /// eigenvalue; prints one CSV/TSV row per (n, alpha) cell.
    Search(SearchArgs),
    /// Check the extremal-structure conjectures over a range of orders.
    /// Exits 0 when every check passes, 2 otherwise.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    /// Output file (atomic rename); standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct SpectrumArgs {
    /// graph6 string of the graph to analyze.
    #[arg(long)]
    g6: String,
    #[arg(long, value_enum)]
    matrix: MatrixArg,
    /// Convex-combination weight; required for --matrix a-alpha.
    #[arg(long)]
    alpha: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixArg {
    Laplacian,
    Signless,
    Adjacency,
    #[value(name = "a-alpha")]
    AAlpha,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    k: usize,
    /// Single order to search; use --n-min/--n-max for a range.
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    n: Option<usize>,
    #[arg(long, requires = "n_max")]
    n_min: Option<usize>,
    #[arg(long, requires = "n_min")]
    n_max: Option<usize>,
    #[arg(long, value_enum)]
    objective: ObjectiveArg,
    #[arg(long, value_enum)]
    direction: DirectionArg,
    /// Alpha value(s); repeatable. Required for the alpha objectives.
    #[arg(long)]
    alpha: Vec<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Decimal places for the value column.
    #[arg(long, default_value_t = 4)]
    precision: usize,
    /// Graph-count cap per search.
    #[arg(long)]
    budget: Option<u64>,
    /// Output file (atomic rename); standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    #[value(name = "alg-conn")]
    AlgConn,
    #[value(name = "alpha-index")]
    AlphaIndex,
    #[value(name = "alpha-lambda2")]
    AlphaLambda2,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Max,
    Min,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Tsv,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: usize,
    /// Alpha grid; defaults to 0.1, 0.2, ..., 0.9.
    #[arg(long)]
    alpha: Vec<f64>,
    #[arg(long)]
    budget: Option<u64>,
}

/// Anything that should stop the run, tagged with its exit code.
enum Failure {
    Usage(String),
    VerifyFailed,
    Internal(String),
}

impl Failure {
    fn report(self) -> ExitCode {
        match self {
            Failure::Usage(message) => {
                eprintln!("error: {message}");
                ExitCode::from(EXIT_USAGE)
            }
            Failure::VerifyFailed => ExitCode::from(EXIT_VERIFY_FAILED),
            Failure::Internal(message) => {
                eprintln!("error: {message}");
                ExitCode::from(EXIT_INTERNAL)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.exit_code() == 0 { 0 } else { EXIT_USAGE };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Failure::Usage("--threads must be at least 1".into()).report();
        }
        if let Err(err) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            return Failure::Internal(format!("thread pool: {err}")).report();
        }
    }
    let result = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Count(args) => cmd_count(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Search(args) => cmd_search(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => failure.report(),
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<(), Failure> {
    if args.n > g6::MAX_G6_ORDER {
        return Err(Failure::Usage(format!(
            "graph6 output supports n <= {}, got {}",
            g6::MAX_G6_ORDER,
            args.n
        )));
    }
    let stream = seq::enumerate(args.k, args.n).map_err(usage)?;
    let count = write_output(args.out.as_deref(), |w| {
        let mut count: u64 = 0;
        for sequence in stream {
            let g = kpath::build_from_sequence(&sequence, args.n).map_err(internal)?;
            let line = g6::encode(g.graph()).map_err(internal)?;
            writeln!(w, "{line}").map_err(io_failure)?;
            count += 1;
        }
        Ok(count)
    })?;
    eprintln!("{count}");
    Ok(())
}

fn cmd_count(args: CountArgs) -> Result<(), Failure> {
    match seq::count_closed_form(args.k, args.n) {
        Ok(result) => {
            eprintln!("method: closed-form");
            println!("{}", result.count);
            Ok(())
        }
        Err(seq::SeqError::NoClosedForm(_)) | Err(seq::SeqError::OutOfValidatedRange { .. }) => {
            let count = seq::enumerate(args.k, args.n).map_err(usage)?.count();
            eprintln!(
                "method: enumeration (no validated closed form for k = {}, n = {})",
                args.k, args.n
            );
            println!("{count}");
            Ok(())
        }
        Err(err) => Err(usage(err)),
    }
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<(), Failure> {
    let kind = match (args.matrix, args.alpha) {
        (MatrixArg::Laplacian, None) => spectra::MatrixKind::Laplacian,
        (MatrixArg::Signless, None) => spectra::MatrixKind::SignlessLaplacian,
        (MatrixArg::Adjacency, None) => spectra::MatrixKind::Adjacency,
        (MatrixArg::AAlpha, Some(alpha)) => spectra::MatrixKind::AAlpha(alpha),
        (MatrixArg::AAlpha, None) => {
            return Err(Failure::Usage("--matrix a-alpha requires --alpha".into()))
        }
        (_, Some(_)) => {
            return Err(Failure::Usage(
                "--alpha only applies to --matrix a-alpha".into(),
            ))
        }
    };
    let graph = g6::decode(&args.g6).map_err(usage)?;
    let spectrum = spectra::spectrum(&graph, kind).map_err(|err| match err {
        spectra::SpectraError::AlphaOutOfRange(_) => usage(err),
        other => internal(other),
    })?;
    let stdout = io::stdout();
    let mut w = stdout.lock();
    for value in spectrum.values() {
        writeln!(w, "{value:.6}").map_err(io_failure)?;
    }
    Ok(())
}

fn cmd_search(args: SearchArgs) -> Result<(), Failure> {
    let orders: Vec<usize> = match (args.n, args.n_min, args.n_max) {
        (Some(n), None, None) => vec![n],
        (None, Some(lo), Some(hi)) if lo <= hi => (lo..=hi).collect(),
        (None, Some(_), Some(_)) => {
            return Err(Failure::Usage("--n-min must not exceed --n-max".into()))
        }
        _ => {
            return Err(Failure::Usage(
                "give either --n or both --n-min and --n-max".into(),
            ))
        }
    };
    let direction = match args.direction {
        DirectionArg::Max => Direction::Max,
        DirectionArg::Min => Direction::Min,
    };
    let objectives: Vec<Objective> = match args.objective {
        ObjectiveArg::AlgConn => {
            if !args.alpha.is_empty() {
                return Err(Failure::Usage("--alpha does not apply to alg-conn".into()));
            }
            vec![Objective::new(
                ObjectiveKind::AlgebraicConnectivity,
                direction,
            )]
        }
        ObjectiveArg::AlphaIndex | ObjectiveArg::AlphaLambda2 => {
            if args.alpha.is_empty() {
                return Err(Failure::Usage(
                    "this objective requires at least one --alpha".into(),
                ));
            }
            args.alpha
                .iter()
                .map(|&alpha| {
                    let kind = match args.objective {
                        ObjectiveArg::AlphaIndex => ObjectiveKind::AlphaIndex(alpha),
                        _ => ObjectiveKind::AlphaLambda2(alpha),
                    };
                    Objective::new(kind, direction)
                })
                .collect()
        }
    };
    let config = search_config(args.budget);
    let separator = match args.format {
        FormatArg::Csv => ',',
        FormatArg::Tsv => '\t',
    };
    let records = extremal::sweep(args.k, orders, &objectives, &config).map_err(run_failure)?;
    write_output(args.out.as_deref(), |w| {
        for record in &records {
            let mut row = String::new();
            write!(row, "{}{separator}", record.n).unwrap();
            if let Some(alpha) = record.objective.kind.alpha() {
                write!(row, "{alpha}{separator}").unwrap();
            }
            write!(
                row,
                "{value:.prec$}{separator}{g6}{separator}{seq}{separator}{ties}",
                value = record.value,
                prec = args.precision,
                g6 = record.witness_g6,
                seq = record.witness_sequence,
                ties = record.tie_count,
            )
            .unwrap();
            writeln!(w, "{row}").map_err(io_failure)?;
        }
        Ok(())
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let n_min = args.n_min.unwrap_or(args.k + 1);
    if n_min > args.n_max {
        return Err(Failure::Usage("--n-min must not exceed --n-max".into()));
    }
    let alphas = if args.alpha.is_empty() {
        (1..=9).map(|i| i as f64 / 10.0).collect()
    } else {
        args.alpha.clone()
    };
    let config = search_config(args.budget);
    let report = extremal::verify_conjectures(args.k, n_min..=args.n_max, &alphas, &config)
        .map_err(run_failure)?;
    let stdout = io::stdout();
    let mut w = stdout.lock();
    for note in &report.skipped {
        writeln!(w, "skip: {note}").map_err(io_failure)?;
    }
    for check in &report.checks {
        let status = if check.passed { "pass" } else { "FAIL" };
        writeln!(
            w,
            "{status}: k = {}, {} ({})",
            check.k, check.description, check.detail
        )
        .map_err(io_failure)?;
    }
    let total = report.checks.len();
    let failed = report.failures().count();
    writeln!(w, "{} checks, {} failed", total, failed).map_err(io_failure)?;
    if failed > 0 {
        return Err(Failure::VerifyFailed);
    }
    Ok(())
}

fn search_config(budget: Option<u64>) -> SearchConfig {
    let mut config = SearchConfig::default();
    if let Some(budget) = budget {
        config.budget = budget;
    }
    config
}

/// Runs `body` against either standard output or an atomically-renamed file.
fn write_output<T>(
    path: Option<&Path>,
    body: impl FnOnce(&mut dyn Write) -> Result<T, Failure>,
) -> Result<T, Failure> {
    match path {
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            let value = body(&mut w)?;
            w.flush().map_err(io_failure)?;
            Ok(value)
        }
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
            let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))
                .map_err(io_failure)?;
            let value = {
                let mut w = BufWriter::new(tmp.as_file_mut());
                let value = body(&mut w)?;
                w.flush().map_err(io_failure)?;
                value
            };
            tmp.persist(path).map_err(|err| io_failure(err.error))?;
            Ok(value)
        }
    }
}

fn usage(err: impl std::fmt::Display) -> Failure {
    Failure::Usage(err.to_string())
}

fn internal(err: impl std::fmt::Display) -> Failure {
    Failure::Internal(err.to_string())
}

fn io_failure(err: io::Error) -> Failure {
    Failure::Internal(format!("i/o: {err}"))
}

/// Search/verify failures are internal unless they stem from bad parameters.
fn run_failure(err: extremal::ExtremalError) -> Failure {
    match err {
        extremal::ExtremalError::Seq(inner) => usage(inner),
        extremal::ExtremalError::KPath(inner) => usage(inner),
        err @ extremal::ExtremalError::RunnerUpUndefined { .. } => usage(err),
        extremal::ExtremalError::Spectra(spectra::SpectraError::AlphaOutOfRange(alpha)) => {
            Failure::Usage(format!("alpha = {alpha} outside [0, 1]"))
        }
        other => internal(other),
    }
}
