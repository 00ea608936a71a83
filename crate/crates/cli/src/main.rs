//! `triverify`: command-line access to every stage of the (2,m,n) pipeline.
//!
//! Exit codes: 0 on success (including skipped table rows), 1 when a result
//! disagrees with what was expected, 2 on invalid input.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use triverify_core::classify::{Budgets, SearchConfig, DEFAULT_PAIR_BUDGET, DEFAULT_SAMPLE_BUDGET, DEFAULT_SEED};
use triverify_core::perm::DEFAULT_ELEMENT_BUDGET;

#[derive(Parser, Debug)]
#[command(name = "triverify", version, about = "Verification toolkit for (2,m,n)-groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Worker threads; defaults to all cores.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=1024))]
    pub jobs: Option<u32>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Seed for every randomized step.
    #[arg(long, default_value_t = DEFAULT_SEED, value_parser = parse_u64)]
    pub seed: u64,

    /// Largest group order whose conjugacy classes are enumerated.
    #[arg(long, env = "TRIVERIFY_BUDGET", default_value_t = DEFAULT_ELEMENT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub element_budget: u64,

    /// Random (g, h) samples before falling back to exhaustive search.
    #[arg(long, default_value_t = DEFAULT_SAMPLE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub sample_budget: u64,

    /// Pair tests allowed in the exhaustive search.
    #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub pair_budget: u64,
}

impl SearchArgs {
    pub fn config(&self) -> SearchConfig {
        SearchConfig {
            seed: self.seed,
            budgets: Budgets {
                element_budget: self.element_budget,
                sample_budget: self.sample_budget,
                pair_budget: self.pair_budget,
            },
        }
    }
}

/// Accepts decimal or `0x`-prefixed hexadecimal.
fn parse_u64(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => s.replace('_', "").parse(),
    };
    r.map_err(|e| format!("{s:?}: {e}"))
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Euler characteristic |G|(1/m - 1/2 + 1/n) and its factorization.
    Chi {
        #[arg(long)]
        order: String,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Primitive prime divisor of q^a - 1.
    Ppd {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        a: u32,
    },
    /// Element orders, prime graph and independence numbers of a group.
    Primegraph {
        #[arg(long)]
        group: String,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, env = "TRIVERIFY_BUDGET", default_value_t = DEFAULT_ELEMENT_BUDGET)]
        element_budget: u64,
    },
    /// Decide whether a group is a (2,m,n)-group.
    Verify {
        #[arg(long, required_unless_present = "replay")]
        group: Option<String>,
        #[arg(long, required_unless_present = "replay")]
        m: Option<u64>,
        #[arg(long, required_unless_present = "replay")]
        n: Option<u64>,
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Rerun a saved verdict and require an identical transcript.
        #[arg(long, conflicts_with_all = ["group", "m", "n"])]
        replay: Option<PathBuf>,
        /// Exit with status 1 unless the verdict is this one.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Replay a file of table rows.
    Tables {
        #[arg(long)]
        rows: PathBuf,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// PSL_2(2^x) with {m,n} = {q+1, q-1}: odd part of chi for x = 2..=xmax.
    ScanPsl2 {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=63))]
        xmax: u32,
    },
    /// One class structure constant a(i, j, k), from a character table or by brute force.
    Structconst {
        /// Character table file; classes are given by label or index.
        #[arg(long, conflicts_with = "group", required_unless_present = "group")]
        table: Option<PathBuf>,
        /// Group whose classes are enumerated; classes are given by index.
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
        #[arg(long)]
        k: String,
        #[arg(long, env = "TRIVERIFY_BUDGET", default_value_t = DEFAULT_ELEMENT_BUDGET)]
        element_budget: u64,
    },
    /// Conjugacy classes of a group, in the order used by `structconst --group`.
    Classes {
        #[arg(long)]
        group: String,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, env = "TRIVERIFY_BUDGET", default_value_t = DEFAULT_ELEMENT_BUDGET)]
        element_budget: u64,
    },
    /// Write the built-in groups as a catalog file.
    ExportCatalog {
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the generated character table of S_n, D_n, C_n or PGL_2(q).
    ExportTable {
        #[arg(long)]
        group: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Yes,
    No,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
