/// `println!` that ignores a closed stdout (e.g. piping into `head`).
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oscox::coxeter::CoxeterType;

#[derive(Parser, Debug)]
#[command(name = "oscox", version, about = "Orlik-Solomon algebra invariants of finite Coxeter groups")]
pub struct Cli {
    /// Worker threads for averaging and audits (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Directory for basis-graph caches.
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Emit JSON on standard output.
    #[arg(long, global = true)]
    json: bool,

    /// More log output on standard error (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List positive roots with their indices and coordinates.
    Roots {
        #[arg(value_parser = parse_type)]
        ty: CoxeterType,
    },
    /// Build the basis graph and print statistics, DOT, or a cache file.
    Gamma {
        #[command(flatten)]
        common: Common,
        /// Print node, edge and path counts.
        #[arg(long)]
        stats: bool,
        /// Print the graph in DOT format.
        #[arg(long)]
        dot: bool,
        /// Write the graph to the cache directory.
        #[arg(long)]
        cache: bool,
    },
    /// Expand a monomial into the broken-circuit basis.
    Rewrite {
        #[command(flatten)]
        common: Common,
        /// Letters of an increasing word (1-based positions in the order).
        #[arg(required = true, num_args = 1..)]
        letters: Vec<u16>,
    },
    /// Check the invariant basis (full) or the top-degree statement (top).
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Scope::Full)]
        scope: Scope,
    },
}

#[derive(Args, Debug)]
pub struct Common {
    #[arg(value_parser = parse_type)]
    ty: CoxeterType,
    /// default | simples-last | reference-a3 | comma-separated permutation of 1..N.
    #[arg(long, default_value = "default")]
    order: String,
    /// Lift the group-order guard.
    #[arg(long)]
    allow_large: bool,
    /// Custom group-order guard.
    #[arg(long, conflicts_with = "allow_large")]
    guard: Option<u128>,
}

impl Common {
    fn guard(&self, default: u128) -> u128 {
        if self.allow_large {
            u128::MAX
        } else {
            self.guard.unwrap_or(default)
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    Top,
    Full,
}

fn parse_type(s: &str) -> Result<CoxeterType, String> {
    s.parse().map_err(|e: oscox::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        2 => "debug",
        _ => "trace",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }

    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
