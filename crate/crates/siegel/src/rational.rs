use carnot::Radical;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use zkernel::{gi_gcd, gi_lcm, GaussInt, GaussRat};

use crate::error::SiegelError;
use crate::point::SiegelPoint;

/// A rational point `(r₁/q, …, rₙ/q, p/q)` in lowest terms, `q` canonical.
/// The Siegel height is `|q| = N(q)^(1/2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalSiegelPoint {
    p_vec: Vec<GaussInt>,
    q: GaussInt,
    norm_q: BigInt,
}

impl RationalSiegelPoint {
    /// Builds the point with numerators `p_vec = (r₁, …, rₙ, p)` over `q`,
    /// reducing to lowest terms and a canonical denominator.
    pub fn new(p_vec: Vec<GaussInt>, q: GaussInt) -> Result<Self, SiegelError> {
        if q.is_zero() {
            return Err(SiegelError::domain("denominator must be nonzero"));
        }
        if p_vec.len() < 2 {
            return Err(SiegelError::domain("need at least one horizontal numerator and p"));
        }
        let mut g = q.clone();
        for x in &p_vec {
            if !x.is_zero() {
                g = gi_gcd(&g, x)?;
            }
        }
        let reduce = |x: &GaussInt| x.div_exact(&g).expect("gcd divides");
        let (qc, k) = reduce(&q).canonical_with_unit();
        // q = i^k · qc, so every numerator is divided by i^k as well
        let back = GaussInt::unit(4 - k.rem_euclid(4));
        let p_vec: Vec<GaussInt> = p_vec.iter().map(|x| &reduce(x) * &back).collect();
        let n = p_vec.len() - 1;
        let lhs = (&p_vec[n] * &qc.conj()).re * 2;
        let rhs: BigInt = p_vec[..n].iter().map(GaussInt::norm).sum();
        if lhs != rhs {
            return Err(SiegelError::Constraint(format!(
                "numerators {:?} over {qc} violate 2·Re(p·q̄) = Σ|r|²",
                p_vec
            )));
        }
        let norm_q = qc.norm();
        Ok(RationalSiegelPoint { p_vec, q: qc, norm_q })
    }

    /// Trusted constructor for callers that already enforce lowest terms,
    /// canonical `q` and the constraint.
    pub(crate) fn from_reduced(p_vec: Vec<GaussInt>, q: GaussInt) -> Self {
        let norm_q = q.norm();
        RationalSiegelPoint { p_vec, q, norm_q }
    }

    pub fn n(&self) -> usize {
        self.p_vec.len() - 1
    }

    pub fn p_vec(&self) -> &[GaussInt] {
        &self.p_vec
    }

    /// Horizontal numerators `r₁, …, rₙ`.
    pub fn r(&self) -> &[GaussInt] {
        &self.p_vec[..self.n()]
    }

    /// Vertical numerator.
    pub fn p(&self) -> &GaussInt {
        &self.p_vec[self.n()]
    }

    pub fn q(&self) -> &GaussInt {
        &self.q
    }

    pub fn norm_q(&self) -> &BigInt {
        &self.norm_q
    }

    /// The height `|q|`, exactly.
    pub fn height(&self) -> Radical {
        Radical::new(BigRational::from_integer(self.norm_q.clone()), 2)
    }

    pub fn height_f64(&self) -> f64 {
        self.norm_q.to_f64().unwrap_or(f64::INFINITY).sqrt()
    }

    pub fn point(&self) -> SiegelPoint {
        let f = |x: &GaussInt| GaussRat::new(x.clone(), self.q.clone()).expect("q is nonzero");
        SiegelPoint::new_unchecked(self.r().iter().map(f).collect(), f(self.p()))
    }

    /// `d(h, self)⁴ = N(w)/N(q)` with `w = p + v̄·q − Σ ūⱼ·rⱼ`.
    pub fn dist4_from(&self, h: &SiegelPoint) -> Result<BigRational, SiegelError> {
        if h.n() != self.n() {
            return Err(SiegelError::Dimension {
                expected: self.n(),
                got: h.n(),
            });
        }
        let mut w = &GaussRat::from(self.p().clone()) + &h.v().conj().scale_int(&self.q);
        for (u, r) in h.u().iter().zip(self.r()) {
            w = &w - &u.conj().scale_int(r);
        }
        Ok(w.norm() / BigRational::from_integer(self.norm_q.clone()))
    }

    /// `d(h, self)` as an exact fourth root.
    pub fn dist_from(&self, h: &SiegelPoint) -> Result<Radical, SiegelError> {
        Ok(Radical::new(self.dist4_from(h)?, 4))
    }

    /// Lexicographic key `(N(q), q, numerators)` used for deterministic ordering.
    pub fn sort_key(&self) -> (BigInt, Vec<BigInt>) {
        let mut flat = vec![self.q.re.clone(), self.q.im.clone()];
        for x in &self.p_vec {
            flat.push(x.re.clone());
            flat.push(x.im.clone());
        }
        (self.norm_q.clone(), flat)
    }
}

impl std::fmt::Debug for RationalSiegelPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?})/{}", self.p_vec, self.q)
    }
}

impl Serialize for RationalSiegelPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RationalSiegelPoint", 3)?;
        let p: Vec<String> = self.p_vec.iter().map(|x| x.to_string()).collect();
        st.serialize_field("p_vec", &p)?;
        st.serialize_field("q", &self.q.to_string())?;
        st.serialize_field("norm_q", &self.norm_q.to_string())?;
        st.end()
    }
}

/// Lowest-terms witness of a rational point: `q` is the canonical lcm of
/// the reduced coordinate denominators, hence of minimal norm.
pub fn siegel_height(h: &SiegelPoint) -> RationalSiegelPoint {
    let mut q = GaussInt::one();
    for z in h.u().iter().chain(std::iter::once(h.v())) {
        q = gi_lcm(&q, z.den());
    }
    let q = q.canonical();
    let p_vec = h
        .u()
        .iter()
        .chain(std::iter::once(h.v()))
        .map(|z| {
            z.num()
                * &q.div_exact(z.den()).expect("lcm is a multiple of every denominator")
        })
        .collect();
    RationalSiegelPoint::from_reduced(p_vec, q)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Integer points `(c, d)` on the line `a·c + b·d = m` inside the closed
/// disk of squared radius `rad2` around `(x0, y0)`; empty if unsolvable.
pub(crate) fn line_disk_points(a: i128, b: i128, m: i128, x0: f64, y0: f64, rad: f64) -> Vec<(i128, i128)> {
    let (g, s, t) = ext_gcd(a, b);
    if m % g != 0 {
        return Vec::new();
    }
    let (c0, d0) = (s * (m / g), t * (m / g));
    let (dx, dy) = (-b / g, a / g);
    let len2 = (dx * dx + dy * dy) as f64;
    // foot of the perpendicular from the disk center, in units of the step
    let kstar = ((x0 - c0 as f64) * dx as f64 + (y0 - d0 as f64) * dy as f64) / len2;
    let qn = ((a * a + b * b) as f64).sqrt();
    let off = (a as f64 * x0 + b as f64 * y0 - m as f64) / qn;
    let slack = rad * rad - off * off;
    if slack < 0.0 {
        return Vec::new();
    }
    let half = slack.sqrt() / len2.sqrt() + 1e-9;
    let lo = (kstar - half).ceil() as i128;
    let hi = (kstar + half).floor() as i128;
    (lo..=hi).map(|k| (c0 + k * dx, d0 + k * dy)).collect()
}

/// All points `(r/q, p/q)` of Sieg¹ with `r = (1+i)·r̃`, `gcd(r̃, q) = 1` and
/// gauge norm at most `R`, found through `|r̃|² = a·c + b·d` where `q = a+bi`
/// and `p = c+di`. Admissible `q`: canonical with `gcd(a, b) = 1`, or a
/// positive rational integer. Ordered lexicographically on `(r̃, p)`.
pub fn enumerate_rationals(q: &GaussInt, radius: &BigRational) -> Result<Vec<RationalSiegelPoint>, SiegelError> {
    let (a, b) = q
        .to_i64_pair()
        .ok_or_else(|| SiegelError::domain("denominator too large for enumeration"))?;
    let (a, b) = (a as i128, b as i128);
    let primitive = a > 0 && b >= 0 && a.gcd(&b) == 1;
    let integer = a > 0 && b == 0;
    if !(primitive || integer) {
        return Err(SiegelError::domain(format!(
            "q = {q} must be canonical with coprime parts, or a positive integer"
        )));
    }
    if radius.is_negative() {
        return Err(SiegelError::domain("radius must be non-negative"));
    }
    let nq = a * a + b * b;
    // N(p) ≤ R⁴·N(q)
    let pmax = (num_traits::pow(radius.clone(), 4) * BigRational::from_integer(nq.into()))
        .floor()
        .to_integer()
        .to_i128()
        .ok_or_else(|| SiegelError::domain("radius too large for enumeration"))?;
    // |r̃|² = Re(p·q̄) ≤ |p|·|q|
    let mmax = ((pmax as f64).sqrt() * (nq as f64).sqrt()).floor() as i128 + 1;
    let rt = (mmax as f64).sqrt() as i128 + 1;
    let one_plus_i = GaussInt::new(1, 1);
    let qg = GaussInt::new(a, b);
    let mut out = Vec::new();
    for x in -rt..=rt {
        for y in -rt..=rt {
            let m = x * x + y * y;
            if m > mmax {
                continue;
            }
            let rt_g = GaussInt::new(x, y);
            let coprime = if rt_g.is_zero() {
                nq == 1
            } else {
                gi_gcd(&rt_g, &qg)?.is_unit()
            };
            if !coprime {
                continue;
            }
            let r = &one_plus_i * &rt_g;
            let mut ps = line_disk_points(a, b, m, 0.0, 0.0, (pmax as f64).sqrt() + 1e-6);
            ps.retain(|&(c, d)| c * c + d * d <= pmax);
            ps.sort();
            for (c, d) in ps {
                out.push(RationalSiegelPoint::from_reduced(vec![r.clone(), GaussInt::new(c, d)], qg.clone()));
            }
        }
    }
    Ok(out)
}

/// A random rational point with `N(q) ≤ max_norm` before reduction, `u`
/// roughly uniform in the square `|Re u|, |Im u| ≤ 1` and `Im v` in `[−1, 1]`.
pub fn random_rational_point<R: Rng + ?Sized>(rng: &mut R, max_norm: u64) -> RationalSiegelPoint {
    assert!(max_norm >= 1, "max_norm must be positive");
    let side = (max_norm as f64).sqrt() as i64;
    loop {
        let (a, b) = (rng.gen_range(1..=side.max(1)), rng.gen_range(0..=side));
        if (a * a + b * b) as u64 > max_norm {
            continue;
        }
        let (a, b) = (a as i128, b as i128);
        let nq = a * a + b * b;
        let qabs = (nq as f64).sqrt();
        // r = u·q with u uniform in the unit square, rounded into (1+i)ℤ[i]
        let (ux, uy) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let (rx, ry) = ((ux * a as f64 - uy * b as f64).round() as i128, (ux * b as f64 + uy * a as f64).round() as i128);
        let ry = if (rx - ry).rem_euclid(2) != 0 { ry + 1 } else { ry };
        let m = (rx * rx + ry * ry) / 2;
        let (g, s, t) = ext_gcd(a, b);
        if m % g != 0 {
            continue;
        }
        // p = p₀ + k·i·q moves Im(p/q) by k
        let (c0, d0) = (s * (m / g), t * (m / g));
        let im0 = (d0 as f64 * a as f64 - c0 as f64 * b as f64) / (qabs * qabs);
        let target = rng.gen_range(-1.0..1.0) * (1.0 + 1.0 / qabs);
        let k = (target - im0).round() as i128;
        let (c, d) = (c0 - k * b, d0 + k * a);
        let p_vec = vec![GaussInt::new(rx, ry), GaussInt::new(c, d)];
        return RationalSiegelPoint::new(p_vec, GaussInt::new(a, b)).expect("constraint holds by construction");
    }
}
