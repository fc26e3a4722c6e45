//! Diophantine experiments: counting solutions on Carnot groups, the
//! Borel–Cantelli contrast, rational approximation scans on Sieg¹,
//! irrationality exponent estimates and badly approximable constants.

mod ba;
mod count;
mod error;
mod exponent;
mod sample;

pub use ba::{ba_constant, beaten_ratio, estimate_optimality_constant, BaConstant, OptimalityReport};
pub use count::{
    carnot_count, carnot_count_samples, carnot_upper_experiment, dyadic_checkpoints, dyadic_hits, least_squares_slope, siegel_scan,
    Checkpoint, CountReport, DenominatorFilter, Hits, SamplePoint, UpperReport,
};
pub use error::DiophError;
pub use exponent::{
    axis_experiment, default_window, estimate_exponent, fit_envelope, records, AxisReport, EstimateStatus, ExponentEstimate,
    ExponentSample, ExponentTarget, ENVELOPE_C, MIN_RECORDS,
};
pub use sample::{axis_point, uniform_heis_point, uniform_siegel_point, Axis, SAMPLE_BITS};
