use heiscf::CfExpansion;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use siegel::{min_scaled_distance, near_rationals, NearHit, Radius, SiegelPoint};

use crate::error::DiophError;
use crate::sample::uniform_siegel_point;

/// `min |q|·d(h, p/q)` over rationals with `|q| ≤ N`.
#[derive(Debug, Clone, Serialize)]
pub struct BaConstant {
    #[serde(rename = "Nnorm")]
    pub nnorm: u64,
    pub value: f64,
    pub witness: NearHit,
    /// The target is itself one of the rationals, so the value is 0.
    pub rational: bool,
}

pub fn ba_constant(h: &SiegelPoint, nnorm: u64) -> Result<BaConstant, DiophError> {
    if nnorm == 0 {
        return Err(DiophError::Domain("Nnorm must be positive".into()));
    }
    // the nearest integer point is within (1/2)^(1/4) < 1, so 1 always finds a witness
    let witness = min_scaled_distance(h, &BigInt::from(nnorm), 1.0)?
        .ok_or_else(|| DiophError::Domain("no rational within |q|·d ≤ 1".into()))?;
    let rational = witness.dist.is_zero();
    Ok(BaConstant {
        nnorm,
        value: if rational { 0.0 } else { witness.scaled_f64() },
        witness,
        rational,
    })
}

/// Smallest `|Q|/|q_n|` over rationals `P/Q` strictly closer to `h` than
/// a convergent `p_n/q_n`, taken over all convergents and over
/// `|Q| < cap·|q_n|`; `cap` when no convergent is beaten in that range.
pub fn beaten_ratio(h: &SiegelPoint, exp: &CfExpansion, cap: f64) -> Result<f64, DiophError> {
    if !(cap >= 1.0 && cap.is_finite()) {
        return Err(DiophError::Domain("cap must be at least 1".into()));
    }
    let mut best = cap;
    for c in &exp.convergents {
        let d4 = c.dist4_from(h)?;
        if d4.is_zero() {
            continue;
        }
        let d = c.dist_from(h)?.to_f64();
        let r = BigRational::from_f64(d * (1.0 + 1e-9)).expect("finite distance");
        let radius = Radius::affine(BigRational::zero(), r)?;
        let hq = c.height_f64();
        let hi = BigInt::from_f64((cap * hq).powi(2).ceil() + 1.0).expect("finite bound");
        for x in near_rationals(h, &radius, &BigInt::from(1), &hi)? {
            let ratio = x.point.height_f64() / hq;
            if ratio < best && x.dist.radicand < d4 {
                best = ratio;
            }
        }
    }
    Ok(best)
}

/// The largest `M` for which no convergent of a sampled point is beaten
/// by a rational of height below `M·|q_n|`, capped at `cap`.
#[derive(Debug, Clone, Serialize)]
pub struct OptimalityReport {
    pub trials: usize,
    pub max_digits: usize,
    pub cap: f64,
    pub m_hat: f64,
    /// Per-trial ratios, in sample order.
    pub ratios: Vec<f64>,
}

pub fn estimate_optimality_constant(seed: u64, trials: usize, max_digits: usize, cap: f64) -> Result<OptimalityReport, DiophError> {
    let ratios: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let h = uniform_siegel_point(seed, i);
            let exp = heiscf::expand(&h, max_digits)?;
            beaten_ratio(&h, &exp, cap)
        })
        .collect::<Result<_, DiophError>>()?;
    Ok(OptimalityReport {
        trials,
        max_digits,
        cap,
        m_hat: ratios.iter().copied().fold(cap, f64::min),
        ratios,
    })
}
