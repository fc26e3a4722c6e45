//! The Siegel model of the Heisenberg group: points `(u, v)` on
//! `2·Re(v) = |u|²`, the gauge metric `|v|^(1/2)`, Korányi inversion, the
//! isometry with the Carnot model, heights of rational points and
//! enumeration of rational points near a target.

mod error;
mod iso;
pub mod lll;
mod near;
mod point;
mod radius;
mod rational;

pub use error::SiegelError;
pub use iso::{to_carnot, to_siegel};
pub use near::{min_scaled_distance, near_lattice, near_rationals, near_scan, NearHit};
pub use point::{koranyi_invert, s_dist, s_mul, s_norm, SiegelPoint};
pub use radius::Radius;
pub use rational::{enumerate_rationals, random_rational_point, siegel_height, RationalSiegelPoint};
