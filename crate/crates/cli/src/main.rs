//! `schur`: build, export and verify resolutions over Schur algebras.

mod export;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use schur_core::combinatorics::{
    enumerate_compositions, enumerate_partitions, enumerate_weight_matrices, MatrixConstraints,
};
use schur_core::{multiply_basis, Composition, WeightMatrix};

#[derive(Parser, Debug)]
#[command(name = "schur", version, about = "Schur algebras, bar resolutions and Weyl modules in exact arithmetic")]
struct Cli {
    /// Print progress to standard error (repeat for more).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List compositions, partitions or weight matrices.
    Enumerate(EnumerateArgs),
    /// Multiply two basis elements `xi_omega xi_pi`.
    Multiply(MultiplyArgs),
    /// Build a complex and write it as JSON.
    Resolve(ResolveArgs),
    /// Run verification checks; exit status 1 on any failure.
    Verify(verify::VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Compositions,
    Partitions,
    Matrices,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    kind: Kind,
    #[arg(short)]
    n: usize,
    #[arg(short)]
    r: u32,
    /// Column sums, comma separated (matrices only).
    #[arg(long)]
    column_sums: Option<String>,
    /// Row sums, comma separated (matrices only).
    #[arg(long)]
    row_sums: Option<String>,
    /// Only upper triangular matrices.
    #[arg(long)]
    upper: bool,
    /// Minimum filtration degree (implies --upper).
    #[arg(long)]
    min_degree: Option<u32>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MultiplyArgs {
    #[arg(short)]
    n: usize,
    #[arg(short)]
    r: u32,
    /// Left factor as a JSON matrix, e.g. "[[1,1],[0,0]]".
    omega: String,
    /// Right factor as a JSON matrix.
    pi: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexVariant {
    Borel,
    Weyl,
    Bh,
    SchurFunctor,
}

#[derive(Args, Debug)]
struct ResolveArgs {
    #[arg(short)]
    n: usize,
    #[arg(short)]
    r: u32,
    /// Comma separated composition, e.g. 2,1,0.
    #[arg(long)]
    lambda: String,
    #[arg(long, value_enum)]
    variant: ComplexVariant,
    /// Reduce modulo this prime before exporting.
    #[arg(long = "mod")]
    modulus: Option<u64>,
    /// Skip the homology summary.
    #[arg(long)]
    no_homology: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Errors in the arguments, reported with exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

pub fn parse_composition(text: &str, n: usize, r: u32) -> anyhow::Result<Composition> {
    let c = Composition::parse(text).map_err(|e| usage(e.to_string()))?;
    if c.n() != n || c.r() != r {
        return Err(usage(format!("{c} is not a composition of {r} into {n} parts")));
    }
    Ok(c)
}

fn parse_matrix(text: &str, n: usize, r: u32) -> anyhow::Result<WeightMatrix> {
    let rows: Vec<Vec<u32>> =
        serde_json::from_str(text).map_err(|e| usage(format!("bad matrix {text:?}: {e}")))?;
    let m = WeightMatrix::from_rows(rows).map_err(|e| usage(e.to_string()))?;
    if m.n() != n || m.r() != r {
        return Err(usage(format!("{m} is not an {n}x{n} matrix with total {r}")));
    }
    Ok(m)
}

fn write_output(path: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn enumerate(args: &EnumerateArgs) -> anyhow::Result<()> {
    if args.n == 0 {
        bail!(usage("n must be at least 1"));
    }
    let lines: Vec<String> = match args.kind {
        Kind::Compositions => enumerate_compositions(args.n, args.r).iter().map(ToString::to_string).collect(),
        Kind::Partitions => enumerate_partitions(args.n, args.r).iter().map(ToString::to_string).collect(),
        Kind::Matrices => {
            let mut c = MatrixConstraints::none();
            if let Some(text) = &args.column_sums {
                c = c.with_column_sums(parse_composition(text, args.n, args.r)?);
            }
            if let Some(text) = &args.row_sums {
                c = c.with_row_sums(parse_composition(text, args.n, args.r)?);
            }
            if args.upper {
                c = c.upper_triangular();
            }
            if let Some(s) = args.min_degree {
                c = c.with_min_degree(s);
            }
            enumerate_weight_matrices(args.n, args.r, &c)?.iter().map(ToString::to_string).collect()
        }
    };
    let mut text = lines.join("\n");
    text.push('\n');
    write_output(args.output.as_ref(), &text)
}

fn multiply(args: &MultiplyArgs) -> anyhow::Result<()> {
    let omega = parse_matrix(&args.omega, args.n, args.r)?;
    let pi = parse_matrix(&args.pi, args.n, args.r)?;
    println!("{}", multiply_basis(&omega, &pi)?);
    Ok(())
}

fn resolve(args: &ResolveArgs, verbose: u8) -> anyhow::Result<()> {
    let lambda = parse_composition(&args.lambda, args.n, args.r)?;
    if verbose > 0 {
        eprintln!("building {:?} complex for {lambda}", args.variant);
    }
    let mut complex = export::build(&lambda, args.variant)?;
    if let Some(p) = args.modulus {
        complex = schur_core::reduce_mod(&complex, p).map_err(|e| usage(e.to_string()))?;
    }
    let doc = export::document(&lambda, args.variant, &complex, !args.no_homology)?;
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    write_output(args.output.as_ref(), &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Enumerate(args) => enumerate(args).map(|_| true),
        Command::Multiply(args) => multiply(args).map(|_| true),
        Command::Resolve(args) => resolve(args, cli.verbose).map(|_| true),
        Command::Verify(args) => verify::run(args, cli.verbose),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() || e.downcast_ref::<schur_core::SchurError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
