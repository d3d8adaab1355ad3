use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use transport_entropy::cli::{self, CliError, Command, GenerateKind, RunOptions};
use transport_entropy::polytope::DEFAULT_VERTEX_LIMIT;
use transport_entropy::Precision;

#[derive(Parser)]
#[command(version, about = "Exact entropy optimization over couplings with fixed marginals")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimum joint entropy over C(P, Q)
    MinEntropy(Input),
    /// Is there a coupling with H(X,Y) = H(P)?
    DecideMin(Input),
    /// Maximum mutual information over C(P, m)
    OptimalChannel(Input),
    /// Is there a channel with I(X;Y) = log2 m?
    DecideChannel(Input),
    /// Minimum variation of information over C(P, Q)
    ViDistance(Input),
    /// Minimum normalized variation of information over C(P, Q)
    ViDistanceNormalized(Input),
    /// Total variation distance
    TotalVariation(Input),
    /// Rewrite a subset_sum or three_partition instance
    Reduce(Input),
    /// Check the witness carried by an instance file
    Verify(Input),
    /// Write a seeded random instance
    Generate(Gen),
}

#[derive(Args)]
struct Input {
    /// Instance file; stdin when omitted or "-"
    file: Option<PathBuf>,
    /// Vertex or assignment budget
    #[arg(long, default_value_t = DEFAULT_VERTEX_LIMIT)]
    limit: usize,
    /// Target interval width exponent b, for width 2^-b
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u32).range(1..=200))]
    precision: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    SubsetSum,
    ThreePartition,
    ThreePartitionUnplanted,
    Transportation,
}

#[derive(Args)]
struct Gen {
    kind: Kind,
    /// Number of weights, triples or marginal entries
    #[arg(long, default_value_t = 8)]
    size: usize,
    /// Largest weight, or the bound k for 3-Partition
    #[arg(long, default_value_t = 50)]
    max_weight: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn read_input(path: &Option<PathBuf>) -> Result<Vec<u8>, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        _ => {
            let mut buf = Vec::new();
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn execute(cmd: Cmd) -> Result<(serde_json::Value, i32), CliError> {
    let (command, input) = match cmd {
        Cmd::Generate(g) => {
            let kind = match g.kind {
                Kind::SubsetSum => GenerateKind::SubsetSum,
                Kind::ThreePartition => GenerateKind::ThreePartition,
                Kind::ThreePartitionUnplanted => GenerateKind::ThreePartitionUnplanted,
                Kind::Transportation => GenerateKind::Transportation,
            };
            let file = cli::generate(kind, g.size, g.max_weight, g.seed)?;
            return Ok((file.to_json(), 0));
        }
        Cmd::MinEntropy(i) => (Command::MinEntropy, i),
        Cmd::DecideMin(i) => (Command::DecideMin, i),
        Cmd::OptimalChannel(i) => (Command::OptimalChannel, i),
        Cmd::DecideChannel(i) => (Command::DecideChannel, i),
        Cmd::ViDistance(i) => (Command::ViDistance, i),
        Cmd::ViDistanceNormalized(i) => (Command::ViDistanceNormalized, i),
        Cmd::TotalVariation(i) => (Command::TotalVariation, i),
        Cmd::Reduce(i) => (Command::Reduce, i),
        Cmd::Verify(i) => (Command::Verify, i),
    };
    let file = cli::parse_instance(&read_input(&input.file)?)?;
    let opts = RunOptions {
        limit: input.limit,
        precision: Precision::bits(input.precision),
    };
    let result = cli::run(command, &file, opts)?;
    Ok((result.to_json(), result.exit_code()))
}

fn main() -> ExitCode {
    let args = Cli::parse();
    match execute(args.command) {
        Ok((json, code)) => {
            println!("{}", serde_json::to_string_pretty(&json).expect("valid JSON"));
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
