use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Hofstadter's nested recursions F_k, their numeration systems and
/// discrepancies.
#[derive(Debug, Parser)]
#[command(name = "hofstadter", version)]
pub struct Cli {
    /// Working precision, in bits, of the complex root disks.
    #[arg(
        long,
        global = true,
        env = "HOFSTADTER_PRECISION_BITS",
        default_value_t = 128,
        value_parser = clap::value_parser!(u32).range(64..=4096)
    )]
    pub precision_bits: u32,

    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// F_k^j(n) and L_k(n), computed by recursion and by shifting
    /// decompositions, and cross-checked.
    Eval(EvalArgs),
    /// A_{k,0..=p}.
    Seq(SeqArgs),
    /// Canonical decomposition of n: positions, digits and rank.
    Decomp(DecompArgs),
    /// Prefix of the fixed point of the substitution k -> k1, i -> i+1.
    Word(WordArgs),
    /// Certified roots of X^k - X^(k-1) - 1 and the closed-form
    /// coefficients.
    Roots(KArg),
    /// Certified enclosures of sup and inf of F_k(n) - alpha_k n, k in {3, 4}.
    Certify(CertifyArgs),
    /// Histogram of F_k(n) - floor(alpha_k n).
    Conjecture(ScanArgs),
    /// Largest additivity defect F_k(n+m) - F_k(n) - F_k(m) for n+m <= nmax.
    Additivity(ScanArgs),
    /// Divergence probes of the discrepancy for k >= 5.
    Diverge(DivergeArgs),
    /// Points (delta_3(n), delta_3(F_3(n))) for n < nmax.
    Fractal(FractalArgs),
    /// Range of F_3(F_3(n)) - alpha_3^2 n and its floor-difference histogram.
    SecondIterate(NmaxArg),
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("k must be at least 1".into()),
        Ok(k) => Ok(k),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Args)]
pub struct KArg {
    #[arg(long, value_parser = positive)]
    pub k: usize,
}

#[derive(Debug, Args)]
pub struct NmaxArg {
    #[arg(long)]
    pub nmax: u64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_parser = positive)]
    pub k: usize,
    /// Argument; arbitrary size (the recursion check is skipped for huge n).
    #[arg(long)]
    pub n: num_bigint::BigUint,
    /// Number of iterations of F_k.
    #[arg(long, default_value_t = 1)]
    pub iter: usize,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    #[arg(long, value_parser = positive)]
    pub k: usize,
    #[arg(long)]
    pub p: usize,
}

#[derive(Debug, Args)]
pub struct DecompArgs {
    #[arg(long, value_parser = positive)]
    pub k: usize,
    #[arg(long)]
    pub n: num_bigint::BigUint,
}

#[derive(Debug, Args)]
pub struct WordArgs {
    #[arg(long, value_parser = positive)]
    pub k: usize,
    #[arg(long)]
    pub len: usize,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, value_parser = positive)]
    pub k: usize,
    /// Depth of the extrema table; defaults to 400 for k = 3 and 600 for k = 4.
    #[arg(long)]
    pub p: Option<usize>,
    /// Error allowed on each value converted through the bracket of alpha_k.
    #[arg(long, default_value = "1e-40", conflicts_with = "full")]
    pub alpha_eps: String,
    /// Use 1e-100 for the bracket error.
    #[arg(long)]
    pub full: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_parser = positive)]
    pub k: usize,
    #[arg(long)]
    pub nmax: u64,
}

#[derive(Debug, Args)]
pub struct DivergeArgs {
    #[arg(long, value_parser = positive)]
    pub k: usize,
    /// Number of terms for k = 5, largest position p for k >= 6.
    #[arg(long)]
    pub nmax: u64,
    /// Exhaustive scan bound on n for k >= 6.
    #[arg(long, default_value_t = 100_000)]
    pub scan: u64,
}

#[derive(Debug, Args)]
pub struct FractalArgs {
    #[arg(long)]
    pub nmax: u64,
    /// Replace the second coordinate by F_3(F_3(n)) - alpha_3^2 n.
    #[arg(long)]
    pub shear: bool,
    /// Destination file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
