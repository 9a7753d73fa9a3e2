mod commands;

use clap::{Args, Parser, Subcommand};
use std::process::exit;
use talex_core::rep::RepFlavor;

/// Twisted Alexander polynomials from group presentations: degree bounds on
/// the Thurston norm and knot genus, and fibering obstructions.
#[derive(Parser)]
#[command(name = "talex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants for one input and one representation
    Compute(ComputeArgs),
    /// Search representations for the best genus bound
    Genus(CommonArgs),
    /// Fibering obstruction sweep
    Fiber(FiberArgs),
    /// Enumerate symmetric-group homomorphisms only
    Search(CommonArgs),
    /// Run the genus pipeline over every knot in a fixture table
    Batch(CommonArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Path to an input file, or the name of a fixture table entry
    #[arg(long)]
    input: String,
    /// Symmetric-group degrees, ascending (repeat or comma-separate)
    #[arg(long = "k", value_delimiter = ',')]
    k: Vec<usize>,
    /// Field characteristics (repeat or comma-separate)
    #[arg(long, value_delimiter = ',')]
    prime: Vec<u64>,
    /// Representation flavor: trivial, perm, or std
    #[arg(long, value_parser = flavor_arg)]
    flavor: Vec<RepFlavor>,
    /// Time budget in seconds
    #[arg(long, default_value_t = 60)]
    budget: u64,
    /// Worker threads for batch mode
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Emit the structured report instead of the human one
    #[arg(long)]
    json: bool,
    /// Longitude word: switch to the zero-surgered closed manifold
    #[arg(long)]
    longitude: Option<String>,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Homomorphism file; omitted means the trivial representation
    #[arg(long)]
    hom: Option<String>,
}

#[derive(Args)]
struct FiberArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Check only the homomorphisms in this file
    #[arg(long)]
    hom: Option<String>,
}

fn flavor_arg(s: &str) -> Result<RepFlavor, String> {
    RepFlavor::parse(s).map_err(|e| e.to_string())
}

/// 0 success, 2 input error, 3 budget exhausted, 4 internal invariant failure.
fn exit_code(e: &talex_core::Error) -> i32 {
    use talex_core::Error::*;
    match e {
        BudgetExhausted => 3,
        Internal(_) | AmbientRankMismatch { .. } => 4,
        _ => 2,
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute(args) => commands::compute(&args.common, args.hom.as_deref()),
        Command::Genus(args) => commands::genus(&args),
        Command::Fiber(args) => commands::fiber(&args.common, args.hom.as_deref()),
        Command::Search(args) => commands::search(&args),
        Command::Batch(args) => commands::batch(&args),
    };
    match outcome {
        Ok(code) => exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            exit(exit_code(&e));
        }
    }
}
