use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rootbox::bisolve::Mode;
use rootbox_cli::{cmd_bench, cmd_isolate1, cmd_solve, render, BenchArgs, CliError, Format, Recipe, SolveArgs};

#[derive(Parser)]
#[command(name = "rootbox", version, about = "Isolate the real roots of integer polynomial systems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Certified,
    Prob1,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    BoxesCsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum RecipeArg {
    Dense,
    Critical,
}

#[derive(clap::Args)]
struct Common {
    /// Input file, one polynomial per line; stdin when absent or `-`.
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "certified")]
    mode: ModeArg,
    /// Monotonic fiber shortcut (prob1 only).
    #[arg(long)]
    shortcut: bool,
    /// Initial box width 2^-L.
    #[arg(long, default_value_t = 10)]
    precision: u32,
    /// RNG seed; falls back to $SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Explicit variable order, comma separated.
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a polynomial system.
    Solve(Common),
    /// Isolate the real roots of one univariate polynomial.
    Isolate1(Common),
    /// Time random bivariate systems and print CSV.
    Bench {
        #[arg(long, default_value_t = 6)]
        degree: u32,
        /// Coefficient bit size; coefficients lie in [-100, 100] when absent.
        #[arg(long)]
        coeff_bits: Option<u32>,
        /// Keep only this many monomials per polynomial.
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "dense")]
        recipe: RecipeArg,
        #[arg(long, value_enum, default_value = "certified")]
        mode: ModeArg,
        /// Omit the wall-time column.
        #[arg(long)]
        no_time: bool,
        /// Run without the thread pool.
        #[arg(long)]
        sequential: bool,
    },
}

fn seed(flag: Option<u64>) -> Result<u64, CliError> {
    match flag {
        Some(s) => Ok(s),
        None => match std::env::var("SEED") {
            Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("SEED is not an integer: {v}"))),
            Err(_) => Ok(0),
        },
    }
}

fn mode(m: ModeArg) -> Mode {
    match m {
        ModeArg::Certified => Mode::Certified,
        ModeArg::Prob1 => Mode::Probability1,
    }
}

fn read_input(p: &Option<PathBuf>) -> Result<String, CliError> {
    match p {
        Some(p) if p.as_os_str() != "-" => Ok(std::fs::read_to_string(p)?),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.cmd {
        Cmd::Solve(c) => {
            let (text, args, fmt) = prepare(&c)?;
            Ok(render(&cmd_solve(&text, &args)?, fmt))
        }
        Cmd::Isolate1(c) => {
            let (text, args, fmt) = prepare(&c)?;
            Ok(render(&cmd_isolate1(&text, &args)?, fmt))
        }
        Cmd::Bench { degree, coeff_bits, terms, count, seed: s, recipe, mode: m, no_time, sequential } => {
            rootbox::exec::set_sequential(sequential);
            let recipe = match recipe {
                RecipeArg::Dense => Recipe::Dense,
                RecipeArg::Critical => Recipe::Critical,
            };
            let args = BenchArgs { degree, coeff_bits, terms, count, seed: seed(s)?, recipe, mode: mode(m), timing: !no_time };
            Ok(cmd_bench(&args))
        }
    }
}

fn prepare(c: &Common) -> Result<(String, SolveArgs, Format), CliError> {
    let text = read_input(&c.input)?;
    let args = SolveArgs { mode: mode(c.mode), shortcut: c.shortcut, precision: c.precision, seed: seed(c.seed)?, vars: c.vars.clone() };
    let fmt = match c.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
        FormatArg::BoxesCsv => Format::BoxesCsv,
    };
    Ok((text, args, fmt))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
