//! Horoballs of complex hyperbolic space seen from the Siegel boundary:
//! horoheights, their transformation under the Korányi inversion, the
//! horoheights of the Γ-invariant family at rational points, and excursion
//! depths of vertical geodesics.

mod error;
mod excursion;
mod horoball;

pub use error::HyperError;
pub use excursion::{excursion_profile, max_depth, ExcursionRecord};
pub use horoball::{horoheight, invert_horoball, rational_horoheight, translate_horoball, HoroBase, Horoball, RationalHoroheight};
