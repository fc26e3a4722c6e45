use carnot::{CarnotSpec, HeisDyadic};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use siegel::{near_rationals, Radius, SiegelPoint};
use zkernel::rat_to_f64;

use crate::count::least_squares_slope;
use crate::error::DiophError;
use crate::sample::{axis_point, Axis};

/// A best approximation: its height and `−log d / log height`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentSample {
    pub height: f64,
    pub dist: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateStatus {
    Ok,
    InsufficientData,
    /// The target is itself a rational point within range.
    Exact,
}

/// The slope of `log(1/d)` against `log height` along the record
/// envelope, i.e. the successive best approximations, whose heights fall
/// in `window`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentEstimate {
    pub point: String,
    pub samples: Vec<ExponentSample>,
    pub estimate: Option<f64>,
    pub status: EstimateStatus,
    pub window: (f64, f64),
}

/// Fewest records a fit is made from.
pub const MIN_RECORDS: usize = 4;

/// The window `[N^(1/3), N]`: records below it mostly reflect the coarse
/// start of the envelope rather than its slope.
pub fn default_window(n: f64) -> (f64, f64) {
    (n.cbrt(), n)
}

/// Records of `(height, dist)` pairs listed by increasing height: each
/// kept pair is strictly closer than every earlier one.
pub fn records(hits: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut best = f64::INFINITY;
    let mut out = Vec::new();
    for &(h, d) in hits {
        if d < best {
            best = d;
            out.push((h, d));
        }
    }
    out
}

/// Envelope fit over the records of `hits` (sorted by height) inside `window`.
pub fn fit_envelope(point: String, hits: &[(f64, f64)], window: (f64, f64)) -> ExponentEstimate {
    let recs = records(hits);
    let samples: Vec<ExponentSample> = recs
        .iter()
        .filter(|(h, d)| *h > 1.0 && *d > 0.0)
        .map(|&(height, dist)| ExponentSample {
            height,
            dist,
            ratio: -dist.ln() / height.ln(),
        })
        .collect();
    if recs.iter().any(|&(h, d)| d == 0.0 && h <= window.1) {
        return ExponentEstimate {
            point,
            samples,
            estimate: None,
            status: EstimateStatus::Exact,
            window,
        };
    }
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.height >= window.0 && s.height <= window.1)
        .map(|s| (s.height.ln(), -s.dist.ln()))
        .collect();
    let estimate = if pts.len() >= MIN_RECORDS { least_squares_slope(&pts) } else { None };
    ExponentEstimate {
        point,
        samples,
        status: if estimate.is_some() { EstimateStatus::Ok } else { EstimateStatus::InsufficientData },
        estimate,
        window,
    }
}

/// Target of an exponent estimate.
#[derive(Debug, Clone, PartialEq)]
pub enum ExponentTarget {
    /// A dyadic point of Heis¹ with the default vertical weight; every
    /// `q ≤ N` is examined.
    Carnot(HeisDyadic),
    /// A point of Sieg¹; rationals with `|q| ≤ N` and `d ≤ 2/|q|` are
    /// examined, which contains every record that is such a hit.
    Siegel(SiegelPoint),
}

/// Records within `d ≤ ENVELOPE_C/|q|` are found on Sieg¹. A record
/// outside this radius cannot mask one inside it, since a miss at smaller
/// height is farther than `ENVELOPE_C/|q|`.
pub const ENVELOPE_C: i64 = 2;

pub fn estimate_exponent(target: &ExponentTarget, n: u64) -> Result<ExponentEstimate, DiophError> {
    let window = default_window(n as f64);
    match target {
        ExponentTarget::Carnot(p) => {
            if n > p.max_q() {
                return Err(DiophError::Domain(format!("N = {n} exceeds the exact range {}", p.max_q())));
            }
            let lambda = rat_to_f64(&CarnotSpec::heisenberg(1).weights()[1]);
            let mut best = f64::INFINITY;
            let mut hits = Vec::new();
            for q in 1..=n {
                let d2 = p.nearest(q).dist_sq_f64(lambda);
                // only records matter, so skip the rest early
                if d2 < best {
                    best = d2;
                    hits.push((q as f64, d2.sqrt()));
                }
            }
            Ok(fit_envelope(p.to_point().to_string(), &hits, window))
        }
        ExponentTarget::Siegel(h) => {
            let radius = Radius::power(BigRational::from_integer(ENVELOPE_C.into()), BigRational::from_integer(1.into()))?;
            let hi = BigInt::from(n) * n + 1u32;
            let found = near_rationals(h, &radius, &BigInt::from(1), &hi)?;
            let hits: Vec<(f64, f64)> = found.iter().map(|x| (x.point.height_f64(), x.dist_f64())).collect();
            Ok(fit_envelope(h.to_string(), &hits, window))
        }
    }
}

/// Exponent estimates for uniform samples of an axis of Heis¹.
#[derive(Debug, Clone, Serialize)]
pub struct AxisReport {
    pub axis: Axis,
    #[serde(rename = "N")]
    pub n: u64,
    pub estimates: Vec<Option<f64>>,
    pub mean: f64,
    pub std_dev: f64,
}

pub fn axis_experiment(axis: Axis, seed: u64, samples: usize, n: u64) -> Result<AxisReport, DiophError> {
    let estimates: Vec<Option<f64>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| estimate_exponent(&ExponentTarget::Carnot(axis_point(axis, seed, i)), n).map(|e| e.estimate))
        .collect::<Result<_, _>>()?;
    let vals: Vec<f64> = estimates.iter().flatten().copied().collect();
    let k = vals.len() as f64;
    let mean = vals.iter().sum::<f64>() / k;
    let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0).max(1.0);
    Ok(AxisReport {
        axis,
        n,
        estimates,
        mean,
        std_dev: var.sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_are_strict_minima() {
        let hits = [(1.0, 0.5), (2.0, 0.5), (3.0, 0.2), (4.0, 0.3), (5.0, 0.1)];
        assert_eq!(records(&hits), vec![(1.0, 0.5), (3.0, 0.2), (5.0, 0.1)]);
    }

    #[test]
    fn exact_power_law_is_recovered() {
        let hits: Vec<(f64, f64)> = (1..40).map(|k| (2f64.powi(k), 0.3 * 2f64.powf(-1.7 * k as f64))).collect();
        let e = fit_envelope("p".into(), &hits, (1.0, 1e30));
        assert!((e.estimate.unwrap() - 1.7).abs() < 1e-9);
        let e = fit_envelope("p".into(), &hits[..3], (1.0, 1e30));
        assert_eq!(e.status, EstimateStatus::InsufficientData);
    }
}
