use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;
use siegel::{near_rationals, RationalSiegelPoint, Radius, SiegelPoint};
use zkernel::rat_to_f64;

use crate::error::HyperError;

/// A horoball of the family that the vertical geodesic ending at the
/// target enters, with the depth of that excursion.
#[derive(Debug, Clone, Serialize)]
pub struct ExcursionRecord {
    pub base: RationalSiegelPoint,
    /// `2·log((s₀/|q|)/d)`; infinite when the target is the base itself.
    pub depth: f64,
}

impl ExcursionRecord {
    /// `q_re, q_im, r_re, r_im, p_re, p_im, depth`.
    pub fn csv_row(&self) -> Vec<String> {
        let q = self.base.q();
        let mut row = vec![q.re.to_string(), q.im.to_string()];
        for x in self.base.p_vec() {
            row.push(x.re.to_string());
            row.push(x.im.to_string());
        }
        row.push(if self.depth.is_infinite() { "inf".into() } else { format!("{:.12e}", self.depth) });
        row
    }
}

/// Every rational base `b` with `|q| ≤ nnorm` whose shadow contains `h`,
/// i.e. `d(h, b) < s₀/|q|`, with depth `2·log((s₀/|q|)/d(h, b))`; all other
/// bases have depth 0. Ordered by `N(q)` then numerators.
pub fn excursion_profile(h: &SiegelPoint, s0: &BigRational, nnorm: u64) -> Result<Vec<ExcursionRecord>, HyperError> {
    if h.n() != 1 {
        return Err(HyperError::Domain(format!("excursions need n = 1, got {}", h.n())));
    }
    if !s0.is_positive() {
        return Err(HyperError::Domain("s₀ must be positive".into()));
    }
    let radius = Radius::power(s0.clone(), BigRational::from_integer(1.into()))?;
    let hi = num_bigint::BigInt::from(nnorm) * nnorm + 1u32;
    let hits = near_rationals(h, &radius, &num_bigint::BigInt::from(1), &hi)?;
    let s0_4 = num_traits::pow(s0.clone(), 4);
    let s0f = rat_to_f64(s0);
    let mut out = Vec::new();
    for hit in hits {
        let nq = BigRational::from_integer(hit.point.norm_q().clone());
        // strict shadow membership: d⁴·N(q)² < s₀⁴
        if &hit.dist.radicand * &nq * &nq >= s0_4 {
            continue;
        }
        let depth = if hit.dist.is_zero() {
            f64::INFINITY
        } else {
            2.0 * (s0f / hit.scaled_f64()).ln()
        };
        out.push(ExcursionRecord { base: hit.point, depth });
    }
    Ok(out)
}

/// Largest depth in a profile, 0 when empty.
pub fn max_depth(profile: &[ExcursionRecord]) -> f64 {
    profile.iter().map(|r| r.depth).fold(0.0, f64::max)
}
