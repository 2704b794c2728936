use clap::{Parser, Subcommand, ValueEnum};
use kp1p1::exactseries::scalar::parse;
use kp1p1::finitegen::HaeConstant;
use kp1p1::graphsum::PsiCache;
use kp1p1::report::{self, Artifact, RunConfig};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Directory holding the persisted psi-integral cache when no flag is given.
const CACHE_ENV: &str = "KP1P1_CACHE_DIR";
const DEFAULT_CACHE_DIR: &str = ".kp1p1-cache";
const PSI_FILE: &str = "psi.txt";

#[derive(Parser)]
#[command(name = "kp1p1", version, about = "Exact genus-0 data, R-matrix, graph sums and anomaly checks for local P1 x P1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, default_value = "3", allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, global = true, default_value = "5", allow_hyphen_values = true)]
    mu: String,
    /// Total q-degree of every series.
    #[arg(short = 'D', global = true, default_value_t = 6)]
    trunc: u32,
    /// z-order of the I-function and the R-matrix.
    #[arg(short = 'K', global = true, default_value_t = 3)]
    depth: u32,
    #[arg(short = 'g', global = true, default_value_t = 2)]
    genus: u32,
    /// Keep the genus-zero term in the anomaly equation's split sum.
    #[arg(long, global = true)]
    hae_genus0_split: bool,
    #[arg(long, global = true, value_enum, default_value_t = ConstantArg::Propagator)]
    hae_constant: ConstantArg,
    /// Where JSON artifacts are written.
    #[arg(long, global = true, default_value = "kp1p1-artifacts")]
    out: PathBuf,
    /// Overrides the KP1P1_CACHE_DIR environment variable.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// I-function coefficients and the Picard-Fuchs check.
    Iseries,
    /// Connection matrices, the relation suite and the eigenvalue check.
    Relations,
    /// R-matrix coefficients, the QDE check and both routes to (R_k)_1.
    Rmatrix,
    /// Finite-generation fit of F_2.
    Fg,
    /// Graded-ring membership fits of R-matrix entries.
    Fit,
    /// The genus-2 anomaly equation.
    Hae,
    /// Every stage.
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstantArg {
    Printed,
    Propagator,
}

fn cache_path(cli: &Cli) -> PathBuf {
    let dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
    dir.join(PSI_FILE)
}

fn config(cli: &Cli) -> kp1p1::Result<RunConfig> {
    let scalar = |name: &str, s: &str| {
        parse(s).ok_or_else(|| kp1p1::Error::InvalidConfig(format!("{name} = {s:?} is not a rational number")))
    };
    let mut cfg = RunConfig::new(scalar("lambda", &cli.lambda)?, scalar("mu", &cli.mu)?, cli.trunc, cli.depth, cli.genus)?;
    cfg.genus0_split = cli.hae_genus0_split;
    cfg.constant = match cli.hae_constant {
        ConstantArg::Printed => HaeConstant::Printed,
        ConstantArg::Propagator => HaeConstant::Propagator,
    };
    Ok(cfg)
}

fn write(out: &Path, a: &Artifact) -> std::io::Result<()> {
    std::fs::create_dir_all(out)?;
    std::fs::write(out.join(format!("{}.json", a.command)), a.render())
}

fn run(cli: &Cli) -> kp1p1::Result<bool> {
    let cfg = config(cli)?;
    let cache = cache_path(cli);
    let psi = PsiCache::load(&cache)?;
    let artifacts = match cli.command {
        Command::Iseries => vec![report::iseries(&cfg)?],
        Command::Relations => vec![report::relations(&cfg)?],
        Command::Rmatrix => vec![report::rmatrix(&cfg)?],
        Command::Fit => vec![report::fit(&cfg)?],
        Command::Fg => vec![report::fg(&cfg, &psi)?],
        Command::Hae => vec![report::hae(&cfg, &psi)?],
        Command::All => report::all(&cfg, &psi)?,
    };
    psi.save(&cache)?;
    let mut ok = true;
    for a in &artifacts {
        println!("[{}] {}", a.command, if a.ok { "ok" } else { "FAILED" });
        for line in &a.summary {
            println!("  {line}");
        }
        write(&cli.out, a).map_err(|e| kp1p1::Error::Other(format!("writing {}: {e}", cli.out.display())))?;
        ok &= a.ok;
    }
    Ok(ok)
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
