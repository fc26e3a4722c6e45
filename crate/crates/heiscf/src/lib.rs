//! Heisenberg continued fractions on Sieg¹: nearest-integer map, Gauss
//! map, expansion, exact evaluation, convergents and quality statistics.

mod error;
mod expand;
mod nearest;

pub use error::CfError;
pub use expand::{
    convergents, digit_bound, evaluate, expand, expand_surrogate, gauss_step, quality, suggested_bits, CfExpansion,
    CfStatus,
};
pub use nearest::{nearest_sieg_int, Digit};
