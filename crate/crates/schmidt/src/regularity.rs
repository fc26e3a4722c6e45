use rand::Rng;
use serde::Serialize;
use zkernel::rng::keyed_rng;

/// Lebesgue volume of the unit gauge ball `(x² + y²)² + t² ≤ 1` in Carnot
/// coordinates, `π²/2`.
pub const UNIT_BALL_VOLUME: f64 = std::f64::consts::PI * std::f64::consts::PI / 2.0;

/// Monte Carlo check of Ahlfors regularity with exponent 4.
#[derive(Debug, Clone, Serialize)]
pub struct RegularityEstimate {
    pub trials: usize,
    pub points_per_trial: usize,
    /// `max(μ(B)/r⁴, r⁴/μ(B))` over the trials, Haar measure normalised
    /// by [`UNIT_BALL_VOLUME`].
    pub l_hat: f64,
}

/// Estimates `μ(B(c, r))/r⁴` for random centres in the unit box and radii
/// in `[1/8, 1]` by hit-or-miss sampling in a bounding box of the ball.
pub fn measure_regularity(seed: u64, trials: usize, points_per_trial: usize) -> RegularityEstimate {
    let mut l_hat: f64 = 1.0;
    for k in 0..trials {
        let mut rng = keyed_rng(seed, "schmidt.regularity", k as u64);
        let (cx, cy): (f64, f64) = (rng.gen(), rng.gen());
        let r: f64 = rng.gen_range(0.125..=1.0);
        // c * (x, y, t) has t-coordinate ct + t + 2(cx·y − x·cy)
        let th = r * r + 2.0 * r * (cx.abs() + cy.abs());
        let mut inside = 0usize;
        for _ in 0..points_per_trial {
            let x = rng.gen_range(-r..r);
            let y = rng.gen_range(-r..r);
            let t = rng.gen_range(-th..th);
            // c⁻¹ * (c + offset) in coordinates relative to c
            let tt = t - 2.0 * (cx * y - x * cy);
            let rho2 = x * x + y * y;
            if rho2 * rho2 + tt * tt <= r.powi(4) {
                inside += 1;
            }
        }
        let vol = inside as f64 / points_per_trial as f64 * (2.0 * r) * (2.0 * r) * (2.0 * th);
        let ratio = vol / (UNIT_BALL_VOLUME * r.powi(4));
        l_hat = l_hat.max(ratio).max(1.0 / ratio);
    }
    RegularityEstimate {
        trials,
        points_per_trial,
        l_hat,
    }
}
