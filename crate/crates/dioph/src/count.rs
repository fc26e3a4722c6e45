use carnot::{nearest_lattice_point, CarnotHit, CarnotPoint, CarnotSpec, HeisDyadic};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use siegel::{near_rationals, NearHit, Radius, SiegelPoint};
use zkernel::factor::factor_u64;
use zkernel::{rat_to_f64, GaussInt};

use crate::error::DiophError;
use crate::sample::uniform_heis_point;

fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Restriction on the denominators that are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DenominatorFilter {
    #[default]
    All,
    /// Rational primes for Carnot groups, Gaussian primes for Sieg¹.
    Primes,
}

impl DenominatorFilter {
    fn admits_u64(self, q: u64) -> bool {
        match self {
            DenominatorFilter::All => true,
            DenominatorFilter::Primes => matches!(factor_u64(q).as_slice(), [(_, 1)]),
        }
    }

    fn admits_gauss(self, q: &GaussInt) -> bool {
        match self {
            DenominatorFilter::All => true,
            DenominatorFilter::Primes => {
                let Some(n) = q.norm().to_u64() else { return false };
                match factor_u64(n).as_slice() {
                    [(_, 1)] => true,
                    [(p, 2)] => p % 4 == 3,
                    _ => false,
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplePoint {
    Carnot(CarnotPoint),
    Siegel(SiegelPoint),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hits {
    Carnot(Vec<CarnotHit>),
    Siegel(Vec<NearHit>),
}

impl Hits {
    pub fn len(&self) -> usize {
        match self {
            Hits::Carnot(h) => h.len(),
            Hits::Siegel(h) => h.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Heights `q` (resp. `|q|`) of the hits, in order.
    pub fn heights(&self) -> Vec<f64> {
        match self {
            Hits::Carnot(h) => h.iter().map(|x| x.q as f64).collect(),
            Hits::Siegel(h) => h.iter().map(|x| x.point.height_f64()).collect(),
        }
    }
}

/// Number of hits with height at most `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Checkpoint {
    pub n: u64,
    pub count: usize,
}

/// Solutions of `d(g, p/q) ≤ C·height^(−α)` with height at most `N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountReport {
    pub point: SamplePoint,
    #[serde(rename = "C", serialize_with = "ser_rat")]
    pub c: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub alpha: BigRational,
    #[serde(rename = "N")]
    pub n: u64,
    pub filter: DenominatorFilter,
    pub hits: Hits,
    pub checkpoints: Vec<Checkpoint>,
    /// Least-squares slope of the hit count against `log N` over the checkpoints.
    pub fitted_slope: Option<f64>,
    /// `B_Λ·C^Q`, given when `α = (Q+1)/Q` on a Carnot group.
    pub predicted_slope: Option<f64>,
}

impl CountReport {
    pub fn hit_count(&self) -> usize {
        self.hits.len()
    }
}

/// Dyadic checkpoints `N, ⌊N/2⌋, ⌊N/4⌋, …, 1` in increasing order.
pub fn dyadic_checkpoints(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = std::iter::successors(Some(n), |&m| (m > 1).then_some(m / 2))
        .filter(|&m| m >= 1)
        .collect();
    out.reverse();
    out
}

/// Slope of the least-squares line through `(xᵢ, yᵢ)`; `None` with fewer
/// than two distinct abscissae.
pub fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    let n = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn checkpoints_and_slope(heights: &[f64], n: u64) -> (Vec<Checkpoint>, Option<f64>) {
    let cps: Vec<Checkpoint> = dyadic_checkpoints(n)
        .into_iter()
        .map(|m| Checkpoint {
            n: m,
            // heights are sorted; tolerate float noise on |q| = √N(q)
            count: heights.partition_point(|&h| h <= m as f64 * (1.0 + 1e-12)),
        })
        .collect();
    let pts: Vec<(f64, f64)> = cps.iter().map(|c| ((c.n as f64).ln(), c.count as f64)).collect();
    let slope = least_squares_slope(&pts);
    (cps, slope)
}

fn check_params(c: &BigRational, alpha: &BigRational) -> Result<(), DiophError> {
    if !c.is_positive() {
        return Err(DiophError::Domain("C must be positive".into()));
    }
    if alpha.is_negative() {
        return Err(DiophError::Domain("α must be non-negative".into()));
    }
    if *alpha.denom() > BigInt::from(64) || *alpha.numer() > BigInt::from(1024) {
        return Err(DiophError::Domain(format!("α = {alpha} is too complicated for exact comparison")));
    }
    Ok(())
}

/// Exact test of `radicand^(1/root) ≤ C·q^(−α)`.
fn within(radicand: &BigRational, root: u32, q: u64, c: &BigRational, alpha: &BigRational) -> bool {
    let a = alpha.numer().to_usize().expect("checked exponent");
    let b = alpha.denom().to_usize().expect("checked exponent");
    let k = root as usize;
    let lhs = num_traits::pow(radicand.clone(), b) * num_traits::pow(BigRational::from_integer(q.into()), k * a);
    lhs <= num_traits::pow(c.clone(), k * b)
}

/// Hits of a dyadic Heis¹ point with `q_lo ≤ q ≤ q_hi`, screened in
/// floating point and decided exactly near the boundary.
pub fn dyadic_hits(
    p: &HeisDyadic,
    lambda: &BigRational,
    c: &BigRational,
    alpha: &BigRational,
    q_lo: u64,
    q_hi: u64,
    filter: DenominatorFilter,
) -> Vec<CarnotHit> {
    let (lf, cf, af) = (rat_to_f64(lambda), rat_to_f64(c), rat_to_f64(alpha));
    let mut hits = Vec::new();
    for q in q_lo.max(1)..=q_hi {
        let hit = p.nearest(q);
        let d2 = hit.dist_sq_f64(lf);
        let thr2 = (cf * (q as f64).powf(-af)).powi(2);
        let inside = if d2 < thr2 * (1.0 - 1e-9) {
            true
        } else if d2 > thr2 * (1.0 + 1e-9) {
            false
        } else {
            within(&hit.dist_sq(lambda), 2, q, c, alpha)
        };
        if inside && filter.admits_u64(q) {
            hits.push(hit.to_hit(lambda));
        }
    }
    hits
}

fn predicted_slope(spec: &CarnotSpec, c: &BigRational, alpha: &BigRational) -> Option<f64> {
    let q = spec.homogeneous_dim() as i64;
    (*alpha == BigRational::new((q + 1).into(), q.into()))
        .then(|| rat_to_f64(&(spec.b_lambda() * num_traits::pow(c.clone(), q as usize))))
}

/// All `q ≤ N` whose nearest lattice point `p` satisfies
/// `d(g, δ_{1/q} p) ≤ C·q^(−α)`. Heis¹ points with dyadic coordinates take
/// an exact integer fast path; anything else goes through the generic
/// nearest-point routine.
pub fn carnot_count(
    spec: &CarnotSpec,
    g: &CarnotPoint,
    c: &BigRational,
    alpha: &BigRational,
    n: u64,
    filter: DenominatorFilter,
) -> Result<CountReport, DiophError> {
    check_params(c, alpha)?;
    if g.coords.len() != spec.dim() {
        return Err(DiophError::Domain(format!("point has {} coordinates, group has {}", g.coords.len(), spec.dim())));
    }
    let fast = (spec.heis_n() == Some(1))
        .then(|| HeisDyadic::from_point(g))
        .flatten()
        .filter(|p| n <= p.max_q());
    let hits = match fast {
        Some(p) => dyadic_hits(&p, &spec.weights()[1], c, alpha, 1, n, filter),
        None => {
            let mut hits = Vec::new();
            for q in 1..=n {
                let hit = nearest_lattice_point(spec, g, q)?;
                if within(&hit.dist.radicand, hit.dist.root, q, c, alpha) && filter.admits_u64(q) {
                    hits.push(hit);
                }
            }
            hits
        }
    };
    let heights: Vec<f64> = hits.iter().map(|h| h.q as f64).collect();
    let (checkpoints, fitted_slope) = checkpoints_and_slope(&heights, n);
    Ok(CountReport {
        point: SamplePoint::Carnot(g.clone()),
        c: c.clone(),
        alpha: alpha.clone(),
        n,
        filter,
        hits: Hits::Carnot(hits),
        checkpoints,
        fitted_slope,
        predicted_slope: predicted_slope(spec, c, alpha),
    })
}

/// [`carnot_count`] on uniform samples of Heis¹ (default weights), one
/// report per sample index.
pub fn carnot_count_samples(
    seed: u64,
    samples: usize,
    c: &BigRational,
    alpha: &BigRational,
    n: u64,
    filter: DenominatorFilter,
) -> Result<Vec<CountReport>, DiophError> {
    let spec = CarnotSpec::heisenberg(1);
    (0..samples as u64)
        .into_par_iter()
        .map(|i| carnot_count(&spec, &uniform_heis_point(seed, i).to_point(), c, alpha, n, filter))
        .collect()
}

/// Summary of a run over many sampled points in a window of denominators.
#[derive(Debug, Clone, Serialize)]
pub struct UpperReport {
    pub samples: usize,
    #[serde(rename = "C", serialize_with = "ser_rat")]
    pub c: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub alpha: BigRational,
    pub q_range: (u64, u64),
    pub total_hits: usize,
    pub samples_with_hits: usize,
    pub fraction: f64,
    /// `samples · Σ_q min(1, B_Λ·C^Q·q^(Q−Qα))`, the volume heuristic.
    pub expected_hits: f64,
}

/// Fraction of uniform Heis¹ samples having a solution with
/// `q_lo ≤ q ≤ q_hi`.
pub fn carnot_upper_experiment(
    seed: u64,
    samples: usize,
    c: &BigRational,
    alpha: &BigRational,
    q_range: (u64, u64),
) -> Result<UpperReport, DiophError> {
    check_params(c, alpha)?;
    let spec = CarnotSpec::heisenberg(1);
    let lambda = spec.weights()[1].clone();
    let (lo, hi) = q_range;
    let per: Vec<usize> = (0..samples as u64)
        .into_par_iter()
        .map(|i| dyadic_hits(&uniform_heis_point(seed, i), &lambda, c, alpha, lo, hi, DenominatorFilter::All).len())
        .collect();
    let total_hits = per.iter().sum();
    let samples_with_hits = per.iter().filter(|&&k| k > 0).count();
    let qd = spec.homogeneous_dim() as f64;
    let lead = rat_to_f64(&spec.b_lambda()) * rat_to_f64(c).powf(qd);
    let af = rat_to_f64(alpha);
    let expected: f64 = (lo.max(1)..=hi).map(|q| (lead * (q as f64).powf(qd * (1.0 - af))).min(1.0)).sum();
    Ok(UpperReport {
        samples,
        c: c.clone(),
        alpha: alpha.clone(),
        q_range,
        total_hits,
        samples_with_hits,
        fraction: if samples == 0 { 0.0 } else { samples_with_hits as f64 / samples as f64 },
        expected_hits: expected * samples as f64,
    })
}

/// Rationals of Sieg¹ in lowest terms with `|q| ≤ N` and
/// `d(h, ·) ≤ C·|q|^(−α)`, ordered by `N(q)` then numerators.
pub fn siegel_scan(
    h: &SiegelPoint,
    c: &BigRational,
    alpha: &BigRational,
    nnorm: u64,
    filter: DenominatorFilter,
) -> Result<CountReport, DiophError> {
    check_params(c, alpha)?;
    let radius = Radius::power(c.clone(), alpha.clone())?;
    let hi = BigInt::from(nnorm) * nnorm + 1u32;
    let mut hits = near_rationals(h, &radius, &BigInt::from(1), &hi)?;
    hits.retain(|x| filter.admits_gauss(x.point.q()));
    let heights: Vec<f64> = hits.iter().map(|x| x.point.height_f64()).collect();
    let (checkpoints, fitted_slope) = checkpoints_and_slope(&heights, nnorm);
    Ok(CountReport {
        point: SamplePoint::Siegel(h.clone()),
        c: c.clone(),
        alpha: alpha.clone(),
        n: nnorm,
        filter,
        hits: Hits::Siegel(hits),
        checkpoints,
        fitted_slope,
        predicted_slope: None,
    })
}

impl Checkpoint {
    /// Count at the checkpoint `n`, zero if it is not one.
    pub fn lookup(cps: &[Checkpoint], n: u64) -> usize {
        cps.iter().find(|c| c.n == n).map_or(0, |c| c.count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checkpoints_halve_down_to_one() {
        assert_eq!(dyadic_checkpoints(10), vec![1, 2, 5, 10]);
        assert_eq!(dyadic_checkpoints(1), vec![1]);
        assert_eq!(dyadic_checkpoints(16), vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn slope_of_a_line() {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 3.0 * i as f64 + 1.0)).collect();
        assert!((least_squares_slope(&pts).unwrap() - 3.0).abs() < 1e-12);
        assert!(least_squares_slope(&pts[..1]).is_none());
    }

    #[test]
    fn prime_filters() {
        let f = DenominatorFilter::Primes;
        assert!(f.admits_u64(7) && !f.admits_u64(9) && !f.admits_u64(1));
        assert!(f.admits_gauss(&GaussInt::new(2, 1)));
        assert!(f.admits_gauss(&GaussInt::new(3, 0)));
        assert!(!f.admits_gauss(&GaussInt::new(5, 0)));
        assert!(!f.admits_gauss(&GaussInt::new(1, 0)));
    }

    #[test]
    fn exact_threshold() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        // d² = 1/64 at q = 4 against (1/2)·4^(−1/2) = 1/4 → d = 1/8 ≤ 1/4
        assert!(within(&r(1, 64), 2, 4, &r(1, 2), &r(1, 2)));
        // d = 1/4 exactly on the boundary
        assert!(within(&r(1, 16), 2, 4, &r(1, 2), &r(1, 2)));
        assert!(!within(&r(17, 256), 2, 4, &r(1, 2), &r(1, 2)));
    }
}
