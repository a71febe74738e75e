//! `twopop`: command-line front end for the two-pop-stack sortable permutation toolkit.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use twopop::enumeration::CountMethod;
use twopop::polyomino::CylinderPolyomino;
use twopop::{Error, Permutation, Policy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
    Bfile,
}

#[derive(Debug, Parser)]
#[command(
    name = "twopop",
    version,
    about = "Two-pop-stack sortable permutations"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Largest n for sweeps over all permutations of length n.
    #[arg(long, global = true, default_value_t = 11, value_parser = clap::value_parser!(u32).range(1..))]
    max_brute: u32,
    /// Largest polyomino size the enumerator accepts.
    #[arg(long, global = true, default_value_t = 13, value_parser = clap::value_parser!(u32).range(1..))]
    max_polyomino: u32,
    /// Worker threads; 0 picks one per core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run pop-stack passes and print every stage.
    Sort {
        #[arg(long, value_parser = parse_perm)]
        perm: Permutation,
        #[arg(long, default_value_t = 2)]
        passes: usize,
    },
    /// Compare the four sortability criteria; print a forbidden pattern if unsortable.
    Classify {
        #[arg(long, value_parser = parse_perm)]
        perm: Permutation,
    },
    /// Count sortable permutations, optionally by number of ascents.
    Enumerate(EnumerateArgs),
    /// Count or list polyominoes on a twisted cylinder.
    Polyomino(PolyominoArgs),
    /// Map a permutation to its polyomino, or cells back to the permutation.
    Bijection(BijectionArgs),
    /// Compare the three pattern classes with the sortable counts.
    Wilf {
        #[arg(long)]
        n: usize,
    },
    /// Evaluate the small identities and the open conjectures on the count tables.
    Conjectures {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        /// Exit 1 when any check fails.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    /// Print the row of counts by ascents for length n.
    #[arg(long)]
    pub by_ascents: bool,
    /// With --by-ascents, print every row up to n.
    #[arg(long, requires = "by_ascents")]
    pub all_rows: bool,
    #[arg(long, default_value = "recurrence", value_parser = parse_method)]
    pub method: CountMethod,
    /// Cross-check every method over the range it can reach.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct PolyominoArgs {
    #[arg(long)]
    pub width: usize,
    #[arg(long)]
    pub size: usize,
    /// List every polyomino as `w:i1,i2,...`.
    #[arg(long, conflicts_with = "by_right_free")]
    pub list: bool,
    /// With --list, draw each polyomino.
    #[arg(long, requires = "list")]
    pub render: bool,
    /// Counts by number of right-free cells.
    #[arg(long)]
    pub by_right_free: bool,
}

#[derive(Debug, Args)]
#[command(group = ArgGroup::new("input").required(true).multiple(false))]
pub struct BijectionArgs {
    #[arg(long, group = "input", value_parser = parse_perm, requires = "width")]
    pub perm: Option<Permutation>,
    /// Polyomino as `w:i1,i2,...`; decodes it back to a permutation.
    #[arg(long, group = "input", value_parser = parse_polyomino)]
    pub cells: Option<CylinderPolyomino>,
    #[arg(long, conflicts_with = "cells")]
    pub width: Option<usize>,
    /// Also draw the polyomino.
    #[arg(long)]
    pub render: bool,
    /// Map there and back and report whether the input is recovered.
    #[arg(long)]
    pub round_trip: bool,
}

fn parse_perm(s: &str) -> Result<Permutation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> Result<CountMethod, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_polyomino(s: &str) -> Result<CylinderPolyomino, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Outcome of a command that ran to completion.
pub enum Verdict {
    Ok,
    /// A well-posed question answered "no", or a failed check.
    False,
}

pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidInput(_) => 2,
        Error::PolicyRefusal { .. } => 3,
        Error::Domain(_) | Error::Disconnected { .. } | Error::Internal(_) => 1,
    }
}

fn run(cli: Cli) -> Result<Verdict, Error> {
    let policy = Policy {
        max_brute: cli.max_brute as usize,
        max_polyomino: cli.max_polyomino as usize,
    };
    let fmt = cli.format;
    match cli.command {
        Command::Sort { perm, passes } => commands::sort(&perm, passes, fmt),
        Command::Classify { perm } => commands::classify(&perm, fmt),
        Command::Enumerate(args) => commands::enumerate(&args, &policy, fmt),
        Command::Polyomino(args) => commands::polyomino(&args, &policy, fmt),
        Command::Bijection(args) => commands::bijection(&args, fmt),
        Command::Wilf { n } => commands::wilf(n, &policy, fmt),
        Command::Conjectures { n_max, strict } => commands::conjectures(n_max, strict, fmt),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build();
    let result = match pool {
        Ok(pool) => pool.install(|| run(cli)),
        Err(e) => Err(Error::Internal(format!("thread pool: {e}"))),
    };
    match result {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::False) => ExitCode::from(1),
        Err(e) => {
            eprintln!("twopop: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
