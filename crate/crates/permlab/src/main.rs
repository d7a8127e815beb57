use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use permlab::cli::{run_analyze, run_corpus_export, run_threshold, run_verify, VerifyParams};
use permlab::structure::Limits;

#[derive(Parser)]
#[command(
    name = "permlab",
    version,
    about = "permutation-group laboratory: stabilizer chains, block systems, suborbits and certificate-producing bound checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a single group given in the generator file format.
    Analyze {
        /// Path to a .grp file: a `degree: n` header, then one generator
        /// per line in disjoint-cycle notation.
        file: PathBuf,
        /// Emit the full report as JSON with sorted keys.
        #[arg(long)]
        json: bool,
        /// Maximum group order for element enumeration.
        #[arg(long, default_value_t = 1_000_000)]
        enum_limit: u64,
        /// Maximum group order for structure operations.
        #[arg(long, default_value_t = 1_000_000)]
        order_limit: u64,
    },
    /// Run every bound check over the generated corpus.
    Verify {
        #[arg(long, default_value_t = 12)]
        max_degree: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_order: u64,
        /// Random transitive groups per degree.
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        /// First seed of the pseudorandom stream.
        #[arg(long, default_value_t = 1)]
        seed0: u64,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1_000_000)]
        enum_limit: u64,
        #[arg(long, default_value_t = 1_000_000)]
        order_limit: u64,
    },
    /// Tabulate the extremal distinct-prime cycle counts m(k) against
    /// 2 k^(2/5) and report the threshold K0.
    Threshold { kmax: u64 },
    /// Corpus utilities.
    Corpus {
        #[command(subcommand)]
        action: CorpusCommand,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Write every corpus group to a directory, one generator file each.
    Export {
        dir: PathBuf,
        #[arg(long, default_value_t = 12)]
        max_degree: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_order: u64,
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        #[arg(long, default_value_t = 1)]
        seed0: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (output, code) = match cli.command {
        Command::Analyze {
            file,
            json,
            enum_limit,
            order_limit,
        } => run_analyze(
            &file,
            json,
            &Limits {
                enum_limit,
                order_limit,
            },
        ),
        Command::Verify {
            max_degree,
            max_order,
            seeds,
            seed0,
            json,
            enum_limit,
            order_limit,
        } => run_verify(
            &VerifyParams {
                max_degree,
                max_order,
                seeds,
                seed0,
                limits: Limits {
                    enum_limit,
                    order_limit,
                },
            },
            json,
        ),
        Command::Threshold { kmax } => run_threshold(kmax),
        Command::Corpus {
            action:
                CorpusCommand::Export {
                    dir,
                    max_degree,
                    max_order,
                    seeds,
                    seed0,
                },
        } => run_corpus_export(
            &dir,
            &VerifyParams {
                max_degree,
                max_order,
                seeds,
                seed0,
                limits: Limits::default(),
            },
        ),
    };
    print!("{output}");
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}
