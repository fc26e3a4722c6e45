use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

fn rational(s: &str) -> Result<BigRational, String> {
    zkernel::parse_rational(s).map_err(|e| e.to_string())
}

/// Diophantine approximation on Carnot groups and the Siegel model.
#[derive(Debug, Parser)]
#[command(name = "hdioph", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, serde::Serialize)]
pub struct Global {
    /// Seed of every randomized step.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Starting precision of dyadic surrogates; at least 64.
    #[arg(long = "precision-bits", global = true, default_value_t = 64)]
    pub precision_bits: u32,
    /// Directory receiving summary.json and detail.csv.
    #[arg(long, global = true, default_value = "hdioph-out")]
    pub out: PathBuf,
    /// Model of the Heisenberg group.
    #[arg(long, global = true, value_enum, default_value_t = Model::Carnot)]
    pub model: Model,
    /// Carnot group specification: a JSON file or one of heis1, heis2, engel.
    #[arg(long, global = true)]
    pub spec: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Carnot,
    Siegel,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gaussian-integer number theory.
    #[command(subcommand)]
    Nt(NtCommand),
    /// Group operations in either model.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Heisenberg continued fractions.
    #[command(subcommand)]
    Cf(CfCommand),
    /// Counting solutions `d(g, p/q) ≤ C·height^(−α)` on uniform samples.
    Count(CountArgs),
    /// All rational approximations of one point.
    Scan(ScanArgs),
    /// Diophantine exponent estimates.
    Exponent(ExponentArgs),
    /// Horoballs and excursions.
    #[command(subcommand)]
    Horo(HoroCommand),
    /// Schmidt games with White's strategy.
    Game(GameArgs),
    /// Cantor sets grown from White's strategy.
    Cantor(CantorArgs),
    /// Check a group specification or a game configuration file.
    Validate(ValidateArgs),
}

#[derive(Debug, Subcommand)]
pub enum NtCommand {
    /// Partial sums over Gaussian integers.
    Sum {
        #[arg(long)]
        kind: zkernel::SumKind,
        #[arg(long = "K")]
        k: u64,
        #[arg(long, default_value_t = 2)]
        exponent: u32,
    },
    /// Canonical gcd of two Gaussian integers.
    Gcd {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Norm, factorization, φ and μ of a Gaussian integer.
    Arith {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupCommand {
    Mul {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    Inv {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    Dilate {
        #[arg(long, value_parser = rational)]
        r: BigRational,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Norm of `g` and, given `h`, the distance between them.
    Norm {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        h: Option<String>,
    },
    /// Carry a point to the other model.
    Convert {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum CfCommand {
    /// Expand a point given exactly, or a random point through surrogates.
    Expand {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "random")]
        point: Option<String>,
        #[arg(long, conflicts_with = "point")]
        random: bool,
        /// Digit limit.
        #[arg(long, default_value_t = 64)]
        digits: usize,
    },
    /// Evaluate `γ₀ * ι(γ₁ * ι(⋯))` from `;`-separated digits.
    Evaluate {
        #[arg(long, allow_hyphen_values = true)]
        gamma0: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        digits: String,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Exponents {
    #[arg(long = "C", value_parser = rational, default_value = "1/2")]
    pub c: BigRational,
    #[arg(long, value_parser = rational)]
    pub alpha: Option<BigRational>,
    /// Height cutoff on Carnot groups.
    #[arg(long = "N", default_value_t = 10_000)]
    pub n: u64,
    /// Cutoff on `|q|` on Sieg¹.
    #[arg(long = "Nnorm", default_value_t = 200)]
    pub nnorm: u64,
    /// Only prime denominators.
    #[arg(long)]
    pub primes: bool,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Model, overriding --model.
    #[arg(value_enum)]
    pub model: Option<Model>,
    #[command(flatten)]
    pub exp: Exponents,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(value_enum)]
    pub model: Option<Model>,
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
    #[command(flatten)]
    pub exp: Exponents,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    X,
    T,
}

#[derive(Debug, Args)]
pub struct ExponentArgs {
    #[arg(value_enum)]
    pub model: Option<Model>,
    /// Sample an axis of Heis¹ instead of the whole unit box.
    #[arg(long, value_enum)]
    pub axis: Option<AxisArg>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "samples")]
    pub point: Option<String>,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long = "N", default_value_t = 1_000_000)]
    pub n: u64,
    #[arg(long = "Nnorm", default_value_t = 300)]
    pub nnorm: u64,
}

#[derive(Debug, Subcommand)]
pub enum HoroCommand {
    /// Image of a horoball under the Korányi inversion.
    Invert {
        /// `inf` or a Sieg¹ point.
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(long, value_parser = rational)]
        height: BigRational,
    },
    /// Horoheight of the invariant family at a rational point.
    Rational {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_parser = rational, default_value = "1")]
        s0: BigRational,
    },
    /// Horoballs entered by the vertical geodesic ending at a point.
    Excursion {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_parser = rational, default_value = "1")]
        s0: BigRational,
        #[arg(long = "Nnorm", default_value_t = 200)]
        nnorm: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BlackArg {
    Random,
    Adversarial,
}

#[derive(Debug, Args)]
pub struct GameArgs {
    #[arg(long, default_value_t = 15)]
    pub rounds: u32,
    #[arg(long, default_value_t = 1)]
    pub games: u64,
    #[arg(long, value_enum, default_value_t = BlackArg::Random)]
    pub black: BlackArg,
    /// Game configuration JSON; the default admissible one otherwise.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Cutoff on `|q|` for the BA constant of the limit centres;
    /// `R^⌊rounds/2⌋` by default.
    #[arg(long = "Nnorm")]
    pub nnorm: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CantorArgs {
    #[arg(long, default_value_t = 2)]
    pub branching: usize,
    #[arg(long, default_value_t = 3)]
    pub depth: u32,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Group specification or game configuration JSON.
    pub path: PathBuf,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
}
