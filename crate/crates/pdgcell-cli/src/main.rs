//! `pdgcell`: runs the verification suites and writes machine-readable reports.

mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use report::{emit, Format, Report};

const MAX_L: usize = 6;
const MAX_WEBSTER_N: usize = 3;
const PRIMES: [u32; 3] = [3, 5, 7];

#[derive(Debug, Parser)]
#[command(name = "pdgcell", version, about = "Exact p-DG cellular verification suites")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Print timing to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
struct Params {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    l: usize,
    #[arg(long, default_value_t = 5)]
    p: u32,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension, faithfulness and p-DG axioms of NH_n^l and its cyclic modules.
    Nilhecke(Params),
    /// Quiver Schur algebra tables, p-DG axioms and decomposition data.
    Schur(Params),
    /// Webster block model: basis census, corner algebra and cellular bases.
    Webster(Params),
    /// Quantum relations on V_1^(x)l and the comparison [Z(lambda)] -> F(...).
    K0(Params),
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Debug, Subcommand)]
enum Verify {
    /// Cellular triangularity, chain stability and p-DG axioms.
    Cellular(Params),
    /// Splitting complexes for every decomposition and position.
    Stosic(Params),
    /// Worked S_2^4 data: Z expansions, cell differentials, filtrations, quiver.
    #[command(name = "appendix-s24")]
    S24 {
        #[arg(long, default_value_t = 5)]
        p: u32,
    },
    /// S_1^l as the quiver algebra with its differential.
    #[command(name = "appendix-s1l")]
    S1l {
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 5)]
        p: u32,
    },
}

fn validate(n: usize, l: usize, p: u32) -> Result<(), String> {
    if !PRIMES.contains(&p) {
        return Err(format!("p = {p} must be one of {PRIMES:?}"));
    }
    if n > l || l > MAX_L {
        return Err(format!("need 0 <= n <= l <= {MAX_L}, got n = {n}, l = {l}"));
    }
    Ok(())
}

fn validate_command(cmd: &Command) -> Result<(), String> {
    match cmd {
        Command::Nilhecke(x) => validate(x.n, x.l, x.p),
        Command::Schur(x) | Command::Verify(Verify::Cellular(x)) => {
            validate(x.n, x.l, x.p)?;
            if x.n == 0 {
                return Err("the Schur suites need n >= 1".into());
            }
            Ok(())
        }
        Command::Webster(x) => {
            validate(x.n, x.l, x.p)?;
            if x.n == 0 || x.n > MAX_WEBSTER_N {
                return Err(format!("the Webster suite needs 1 <= n <= {MAX_WEBSTER_N}"));
            }
            Ok(())
        }
        Command::K0(x) => {
            validate(x.n, x.l, x.p)?;
            if x.l == 0 {
                return Err("k0 needs l >= 1".into());
            }
            Ok(())
        }
        Command::Verify(Verify::Stosic(x)) => validate(x.n, x.l, x.p),
        Command::Verify(Verify::S24 { p }) => validate(2, 4, *p),
        Command::Verify(Verify::S1l { l, p }) => {
            validate(1, *l, *p)?;
            if *l == 0 {
                return Err("appendix-s1l needs l >= 1".into());
            }
            Ok(())
        }
    }
}

fn dispatch(cmd: &Command) -> pdgcell::Result<Report> {
    match cmd {
        Command::Nilhecke(x) => suites::nilhecke(x.n, x.l, x.p),
        Command::Schur(x) => suites::schur(x.n, x.l, x.p),
        Command::Webster(x) => suites::webster(x.n, x.l, x.p),
        Command::K0(x) => suites::k0(x.n, x.l, x.p),
        Command::Verify(Verify::Cellular(x)) => suites::cellular(x.n, x.l, x.p),
        Command::Verify(Verify::Stosic(x)) => suites::stosic(x.n, x.l, x.p),
        Command::Verify(Verify::S24 { p }) => suites::s24(*p),
        Command::Verify(Verify::S1l { l, p }) => suites::s1l(*l, *p),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = validate_command(&cli.command) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if cli.verbose {
        eprintln!("{}: {} checks in {:.2?}", report.suite, report.checks.len(), start.elapsed());
    }
    if let Err(msg) = emit(&report, cli.format, cli.out.as_deref()) {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
