//! Command-line front end.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sepkit::config::DEFAULT_ORACLE_CUTOFF;
use sepkit::grp::DEFAULT_MAX_ORDER;
use sepkit::par::ExecMode;
use sepkit::Config;

#[derive(Parser, Debug)]
#[command(
    name = "sepkit",
    version,
    about = "Separable algebras, splitting towers and stable degrees"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true, env = "SEPKIT_JSON")]
    pub json: bool,
    /// Seed for randomized subroutines.
    #[arg(long, global = true, env = "SEPKIT_SEED", default_value_t = Config::default().seed)]
    pub seed: u64,
    /// Largest group order that will be enumerated.
    #[arg(long, global = true, env = "SEPKIT_MAX_GROUP_ORDER", default_value_t = DEFAULT_MAX_ORDER)]
    pub max_group_order: usize,
    /// Largest coset count checked by the brute-force degree oracle.
    #[arg(long, global = true, env = "SEPKIT_ORACLE_CUTOFF", default_value_t = DEFAULT_ORACLE_CUTOFF)]
    pub oracle_cutoff: usize,
    /// Run without the thread pool.
    #[arg(long, global = true, env = "SEPKIT_SEQUENTIAL")]
    pub sequential: bool,
}

impl Global {
    pub fn config(&self) -> Config {
        Config {
            seed: self.seed,
            max_group_order: self.max_group_order,
            oracle_cutoff: self.oracle_cutoff,
            exec: if self.sequential {
                ExecMode::Sequential
            } else {
                ExecMode::Parallel
            },
            ..Config::default()
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Algebras given by structure constants.
    Alg {
        #[arg(value_enum)]
        action: AlgAction,
        file: PathBuf,
        /// Step limit for the splitting tower (default: dimension + 1).
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Permutation groups.
    Grp {
        #[arg(value_enum)]
        action: GrpAction,
        file: PathBuf,
        #[arg(short, long)]
        p: Option<u64>,
        /// Subgroup: a name from the file's "subgroups" or generators separated by ';'.
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        k: Option<String>,
    },
    /// Permutation modules in the stable module category.
    Stmod {
        #[arg(value_enum)]
        action: StmodAction,
        file: PathBuf,
        #[arg(short, long)]
        p: u64,
        #[arg(long)]
        h: Option<String>,
    },
    /// Rank-one verification, classification and Galois data over a corpus.
    Batch {
        /// JSON list of {"group": ref, "p": prime}; the built-in corpus if omitted.
        file: Option<PathBuf>,
    },
    /// Write the example corpus as JSON files.
    Corpus { dir: PathBuf },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum AlgAction {
    Validate,
    Separable,
    Idempotents,
    Tower,
    Degree,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum GrpAction {
    Info,
    Sylow,
    Prank,
    Np,
    Weyl,
    Doublecosets,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum StmodAction {
    Degree,
    Galois,
    Classify,
    Modg,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let json = cli.global.json;
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", render::emit(&out.report, json));
            ExitCode::from(out.exit_code)
        }
        Err(e) => {
            let report = serde_json::json!({"error": e.kind(), "message": e.to_string()});
            if json {
                print!("{}", render::emit(&report, true));
            }
            eprintln!("sepkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
