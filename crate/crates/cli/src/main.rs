mod commands;
mod error;
mod report;
mod spec;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use biham_core::wwm::MomentumSign;
use clap::{Parser, ValueEnum};

use commands::{Command, Context, Outcome, PLOT_SELECTORS};
use error::{CliError, CliResult};
use spec::{Format, ProblemSpec};

/// Alternative Hamiltonian descriptions: linear inverse problems, compatible
/// structures, recursion operators, finite-level quantum geometry and
/// phase-space quantisation.
#[derive(Parser, Debug)]
#[command(name = "biham", version)]
struct Cli {
    command: Command,

    /// JSON problem file.
    #[arg(long)]
    spec: PathBuf,

    /// Directory for the report, plot tables and artifacts.
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum)]
    format: Option<Format>,

    /// Overrides the seed in the problem file.
    #[arg(long)]
    seed: Option<u64>,

    /// Convention for the Wigner transform (wigner only).
    #[arg(long, value_enum)]
    momentum_sign: Option<SignArg>,

    /// Plot table to write: wigner, spectrum or involution-residuals.
    #[arg(long = "plot")]
    plots: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    Weyl,
    Standard,
}

impl From<SignArg> for MomentumSign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Weyl => MomentumSign::Weyl,
            SignArg::Standard => MomentumSign::Standard,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("BIHAM_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Threads(format!("BIHAM_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Threads(e.to_string()))
}

/// Returns whether every verdict and residual passed.
fn run(cli: &Cli) -> CliResult<bool> {
    configure_threads()?;
    let spec = ProblemSpec::load(&cli.spec)?;
    if let Some(name) = &spec.command {
        if name != cli.command.name() {
            return Err(CliError::spec(format!("problem file is for `{name}`, not `{}`", cli.command.name())));
        }
    }
    for p in &cli.plots {
        if !PLOT_SELECTORS.contains(&p.as_str()) {
            return Err(CliError::spec(format!("unknown plot `{p}` (expected one of {})", PLOT_SELECTORS.join(", "))));
        }
    }
    let out_dir = cli.out.clone().or_else(|| spec.output.path.clone());
    if !cli.plots.is_empty() && out_dir.is_none() {
        return Err(CliError::spec("--plot needs an output directory"));
    }
    if cli.momentum_sign.is_some() && cli.command != Command::Wigner {
        return Err(CliError::spec("--momentum-sign applies to wigner only"));
    }
    let format = cli.format.or(spec.output.format).unwrap_or_default();
    let ctx = Context {
        spec: &spec,
        seed: cli.seed.or(spec.seed).unwrap_or(0),
        momentum_sign: cli.momentum_sign.map(Into::into),
    };
    let mut outcome = commands::run(cli.command, &ctx)?;
    let unused = spec.tolerances.unused();
    if !unused.is_empty() {
        return Err(CliError::spec(format!("tolerances not used by {}: {}", cli.command.name(), unused.join(", "))));
    }
    for p in &cli.plots {
        if !outcome.plots.contains_key(p.as_str()) {
            return Err(CliError::spec(format!("{} does not produce a `{p}` plot", cli.command.name())));
        }
    }

    if let Some(dir) = &out_dir {
        write_outputs(dir, &mut outcome, &cli.plots, format)?;
    }
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    write_report(&outcome, format, &mut lock).map_err(|source| CliError::Write { path: "<stdout>".into(), source })?;
    lock.flush().map_err(|source| CliError::Write { path: "<stdout>".into(), source })?;
    Ok(outcome.report.passed)
}

fn write_report(outcome: &Outcome, format: Format, w: impl Write) -> io::Result<()> {
    match format {
        Format::Json => outcome.report.write_json(w),
        Format::Csv => outcome.report.write_csv(w),
    }
}

fn write_file(path: &Path, contents: &[u8]) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

fn write_outputs(dir: &Path, outcome: &mut Outcome, plots: &[String], format: Format) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|source| CliError::Write { path: dir.display().to_string(), source })?;
    for a in &outcome.artifacts {
        write_file(&dir.join(&a.file_name), &a.contents)?;
        outcome.report.artifacts.push(a.file_name.clone());
    }
    for p in plots {
        let name = format!("plot_{}.csv", p.replace('-', "_"));
        let mut buf = Vec::new();
        outcome.plots[p.as_str()].write_csv(&mut buf).map_err(|source| CliError::Write { path: name.clone(), source })?;
        write_file(&dir.join(&name), &buf)?;
        outcome.report.artifacts.push(name);
    }
    let name = match format {
        Format::Json => "report.json",
        Format::Csv => "report.csv",
    };
    let mut buf = Vec::new();
    write_report(outcome, format, &mut buf).map_err(|source| CliError::Write { path: name.into(), source })?;
    write_file(&dir.join(name), &buf)
}
