use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "knormal",
    version,
    about = "Search, construct and verify k-normal polynomials over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List monic irreducibles of degree n whose roots are k-normal.
    Search(SearchArgs),
    /// Classify one polynomial by all three methods.
    Verify(VerifyArgs),
    /// Extend a seed into a sequence of irreducible or k-normal polynomials.
    Extend(ExtendArgs),
    /// Factor x^n - 1 and tabulate its divisors by degree.
    Factor(FactorArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    /// Extension degree of F_q over F_p.
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Monic irreducible modulus over F_p as a little-endian list, e.g. "1,1,1".
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Jsonl,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Write data to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub n: usize,
    /// Keep only this k; all irreducibles when omitted.
    #[arg(long)]
    pub k: Option<usize>,
    /// Largest number of candidates q^n to enumerate.
    #[arg(long, default_value_t = knormal::search::DEFAULT_MAX_CANDIDATES)]
    pub max_candidates: u64,
    /// Run on the calling thread only.
    #[arg(long)]
    pub sequential: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Caret expression ("x^4+x+1") or little-endian list ("1,1,0,0,1").
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    /// Expected k; the exit status is 1 when it does not match.
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NkMode {
    /// Single step from an N_k seed of degree n to degree np.
    #[value(name = "3.1")]
    Step,
    /// Iterated N_k sequence of degrees n p^u.
    #[value(name = "3.2")]
    Chain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IrreducibleMode {
    /// One composition with the two-condition irreducibility verdict.
    #[value(name = "2.3")]
    Compose,
    /// Iterated irreducible sequence.
    #[value(name = "2.4")]
    Chain,
}

#[derive(Debug, Args)]
pub struct ExtendArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    /// N_k construction (default 3.2 when neither mode is given).
    #[arg(long, value_enum, conflicts_with = "prop")]
    pub theorem: Option<NkMode>,
    /// Irreducible construction.
    #[arg(long, value_enum)]
    pub prop: Option<IrreducibleMode>,
    #[arg(long, default_value_t = 1)]
    pub delta: u64,
    #[arg(long, default_value_t = 0)]
    pub delta0: u64,
    #[arg(long, default_value_t = 1)]
    pub delta1: u64,
    #[arg(long, default_value_t = 1)]
    pub delta2: u64,
    /// Number of composition steps.
    #[arg(long, default_value_t = 2)]
    pub steps: usize,
    /// Largest degree checked by the oracles.
    #[arg(long, default_value_t = knormal::construct::DEFAULT_VERIFY_DEGREE)]
    pub budget: usize,
    /// Stop before any entry would exceed this degree.
    #[arg(long, default_value_t = knormal::construct::DEFAULT_MAX_DEGREE)]
    pub max_degree: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}
