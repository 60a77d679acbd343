//! `vspart`: construct, verify and search for partitions of V_n(q).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "vspart", version, about = "Partitions of finite vector spaces into subspaces")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the non-negative solutions of the type equation for given dimensions.
    Solve(SolveArgs),
    /// Build a partition from an explicit construction.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Check that a partition file is a partition.
    Verify(FileArgs),
    /// Evaluate the minimum-dimension bounds on a partition file.
    Bounds(FileArgs),
    /// Restrict a partition to a subspace.
    Induce(InduceArgs),
    /// Search for a partition of a given type or dimension set.
    Search(SearchArgs),
    /// List every partition of a tiny space.
    Enumerate(SpaceArgs),
    /// Existence of each {2,3}-type of V_n(2).
    #[command(name = "classify-23")]
    Classify23 {
        #[arg(long)]
        n: usize,
    },
    /// Compare minimum-dimension counts of every partition against q^t + 1.
    ConjectureScan(SpaceArgs),
    /// The perfect mixed code of a partition.
    Code(ArtifactArgs),
    /// The resolvable coset design of a partition.
    Design(ArtifactArgs),
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub n: usize,
    /// Increasing component dimensions, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub dims: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Filters::All)]
    pub filters: Filters,
    /// Hyperplane levels for the hyperplane condition.
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
    /// Give up after this many solutions.
    #[arg(long, default_value_t = vspart_core::dioph::DEFAULT_SOLUTION_BUDGET)]
    pub max_solutions: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filters {
    All,
    None,
}

#[derive(Args, Debug)]
pub struct OutArgs {
    /// Write the partition file here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum ConstructCmd {
    /// d-spread of V_n(q).
    Spread {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Partition of type [(q^(n-d), d), (1, n-d)].
    NearSpread {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The d-spread of V_kd(q) restricted to a hyperplane.
    Hsection {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Partition of a requested type, e.g. --type 8x2,1x3.
    Typed {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long = "type")]
        ty: vspart_core::PartitionType,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Partition with dimension set exactly T, e.g. --T 1,2,3.
    Tpartition {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long = "T")]
        t: vspart_core::TSpec,
        #[arg(long, env = "VSPART_BUDGET", default_value_t = vspart_core::construct::DEFAULT_BUILD_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
pub struct FileArgs {
    pub file: PathBuf,
    /// Accept files that are not in canonical form.
    #[arg(long)]
    pub force: bool,
}

#[derive(Args, Debug)]
pub struct InduceArgs {
    #[command(flatten)]
    pub input: FileArgs,
    /// Spanning vectors of W: rows separated by ';', coordinates by ','.
    #[arg(long, conflicts_with = "hyperplane", required_unless_present = "hyperplane")]
    pub w: Option<String>,
    /// Use the hyperplane where the last coordinate vanishes.
    #[arg(long)]
    pub hyperplane: bool,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub n: usize,
    /// Exact type, e.g. 1x2,4x3.
    #[arg(long = "type", conflicts_with = "t", required_unless_present = "t")]
    pub ty: Option<vspart_core::PartitionType>,
    /// Dimension set, e.g. 1,2,3.
    #[arg(long = "T")]
    pub t: Option<vspart_core::TSpec>,
    /// Node budget.
    #[arg(long, env = "VSPART_BUDGET", default_value_t = vspart_core::search::DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Shuffle candidate order with this seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Skip the necessary-condition pruning.
    #[arg(long)]
    pub no_prune: bool,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct SpaceArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct ArtifactArgs {
    #[command(flatten)]
    pub input: FileArgs,
    /// Run the verification and set the exit status from it.
    #[arg(long)]
    pub check: bool,
}

/// Exit statuses: success, negative verdict, usage or budget problem.
pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
