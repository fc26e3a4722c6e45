//! Rational Carnot groups given by polynomial group laws on graded
//! coordinates, with exact dilations, homogeneous norms and nearest points
//! of the dilated integer lattice.

mod error;
mod lattice;
mod metric;
mod point;
mod spec;

pub use error::CarnotError;
pub use lattice::{nearest_lattice_point, CarnotHit, DyadicHit, HeisDyadic};
pub use metric::{c_dist_inf, c_norm_inf, heis_gauge_norm, Radical};
pub use point::{c_dilate, c_inv, c_mul, CarnotPoint};
pub use spec::{random_small_point, CarnotSpec, Monomial, SpecConfig};
