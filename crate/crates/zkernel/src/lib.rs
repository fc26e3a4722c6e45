//! Exact arithmetic in ℤ[i] and ℚ(i), Gaussian totient and Möbius
//! functions, exhaustive counting oracles, and partial sums over Gaussian
//! integers of bounded norm.

pub mod count;
pub mod decimal;
pub mod error;
pub mod factor;
pub mod gauss;
pub mod grat;
pub mod parse;
pub mod rng;
pub mod sums;

pub use count::{count_disk_residues, count_linear_form_gauss, count_linear_solutions, reduce_mod};
pub use error::ZkError;
pub use factor::{divisors, factor, moebius, totient};
pub use gauss::{gi_gcd, gi_lcm, GaussInt};
pub use grat::{rat_to_f64, round_half_even, GaussRat};
pub use parse::{parse_gauss_rat, parse_rational};
pub use sums::{analytic_sum, SumKind, SumReport};
