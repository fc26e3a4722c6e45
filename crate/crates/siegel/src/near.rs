//! Rational points of Sieg¹ near a target. Two independent engines: a
//! denominator-by-denominator scan for moderate heights, and a lattice
//! search that reaches arbitrarily large heights.

use carnot::Radical;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use zkernel::{gi_gcd, rat_to_f64, GaussInt};

use crate::error::SiegelError;
use crate::lll::lll;
use crate::point::SiegelPoint;
use crate::radius::Radius;
use crate::rational::{line_disk_points, RationalSiegelPoint};

/// A rational point together with its exact distance to the target.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NearHit {
    pub point: RationalSiegelPoint,
    pub dist: Radical,
}

impl NearHit {
    pub fn dist_f64(&self) -> f64 {
        self.dist.to_f64()
    }

    /// `|q|·d`, the quantity whose infimum measures bad approximability.
    pub fn scaled_f64(&self) -> f64 {
        self.point.height_f64() * self.dist_f64()
    }
}

fn require_n1(h: &SiegelPoint) -> Result<(), SiegelError> {
    if h.n() != 1 {
        return Err(SiegelError::Dimension { expected: 1, got: h.n() });
    }
    Ok(())
}

fn sort_hits(hits: &mut [NearHit]) {
    hits.sort_by_cached_key(|h| h.point.sort_key());
}

/// Exact acceptance test for a candidate `(r, p)/q` with canonical `q`.
fn accept(h: &SiegelPoint, radius: &Radius, r: GaussInt, p: GaussInt, q: GaussInt) -> Result<Option<NearHit>, SiegelError> {
    // constraint 2·Re(p·q̄) = |r|²
    if (&p * &q.conj()).re * 2 != r.norm() {
        return Ok(None);
    }
    let g = gi_gcd(&gi_gcd(&q, &r)?, &p)?;
    if !g.is_unit() {
        return Ok(None);
    }
    let pt = RationalSiegelPoint::from_reduced(vec![r, p], q);
    let d4 = pt.dist4_from(h)?;
    if radius.contains(pt.norm_q(), &d4) {
        Ok(Some(NearHit {
            dist: Radical::new(d4, 4),
            point: pt,
        }))
    } else {
        Ok(None)
    }
}

/// All rationals in lowest terms with canonical `q`, `lo ≤ N(q) < hi`
/// and `d(h, ·) ≤ radius(|q|)`, by scanning every `q`. For each `q` the
/// numerator `r` ranges over `(1+i)ℤ[i]` in the disk
/// `|r − u·q| ≤ √2·ρ·|q|` and `p` over the line `2·Re(p·q̄) = |r|²` within
/// `|p + v̄·q − ū·r| ≤ ρ²·|q|`. Floating point only prunes; every reported
/// hit is confirmed exactly. Intended for `N(q)` up to about 10¹⁰.
pub fn near_scan(h: &SiegelPoint, radius: &Radius, lo: u64, hi: u64) -> Result<Vec<NearHit>, SiegelError> {
    require_n1(h)?;
    let mut hits = Vec::new();
    scan_range(h, radius, lo, hi, &mut hits)?;
    sort_hits(&mut hits);
    Ok(hits)
}

fn scan_range(h: &SiegelPoint, radius: &Radius, lo: u64, hi: u64, hits: &mut Vec<NearHit>) -> Result<(), SiegelError> {
    let (u, v) = (h.u()[0].to_f64(), h.v().to_f64());
    let lo = lo.max(1);
    let amax = (hi as f64).sqrt().ceil() as i64 + 1;
    for a in 1..=amax {
        for b in 0..=amax {
            let nq = (a * a + b * b) as u64;
            if nq < lo || nq >= hi {
                continue;
            }
            scan_one_q(h, radius, (u, v), a, b, hits)?;
        }
    }
    Ok(())
}

/// Rough number of `r` candidates [`scan_range`] visits on a shell.
fn scan_cost(radius: &Radius, nlo: f64, nhi: f64) -> f64 {
    let rho = radius.bound(nlo.sqrt(), nhi.sqrt());
    std::f64::consts::FRAC_PI_4 * (nhi - nlo + 1.0) * (2.0 * std::f64::consts::PI * rho * rho * nhi + 1.0)
}

fn scan_one_q(
    h: &SiegelPoint,
    radius: &Radius,
    (u, v): ((f64, f64), (f64, f64)),
    a: i64,
    b: i64,
    hits: &mut Vec<NearHit>,
) -> Result<(), SiegelError> {
    let qabs = ((a * a + b * b) as f64).sqrt();
    let rho = radius.at(qabs) * (1.0 + 1e-9);
    let (af, bf) = (a as f64, b as f64);
    // center u·q and radius of the r-disk
    let (cx, cy) = (u.0 * af - u.1 * bf, u.0 * bf + u.1 * af);
    let rr = 2f64.sqrt() * rho * qabs * (1.0 + 1e-9) + 1e-9;
    let prad = rho * rho * qabs * (1.0 + 1e-9) + 1e-9;
    let q = GaussInt::new(a, b);
    for x in (cx - rr).ceil() as i64..=(cx + rr).floor() as i64 {
        let dxr = x as f64 - cx;
        let w = (rr * rr - dxr * dxr).max(0.0).sqrt();
        let mut y = (cy - w).ceil() as i64;
        // r ∈ (1+i)ℤ[i] ⇔ x ≡ y (mod 2)
        if (x - y).rem_euclid(2) != 0 {
            y += 1;
        }
        while (y as f64) <= cy + w {
            let m = ((x as i128) * (x as i128) + (y as i128) * (y as i128)) / 2;
            // p-disk center ū·r − v̄·q
            let (xf, yf) = (x as f64, y as f64);
            let px = u.0 * xf + u.1 * yf - (v.0 * af + v.1 * bf);
            let py = u.0 * yf - u.1 * xf - (v.0 * bf - v.1 * af);
            for (c, d) in line_disk_points(a as i128, b as i128, m, px, py, prad) {
                let (ex, ey) = (c as f64 - px, d as f64 - py);
                if ex * ex + ey * ey > prad * prad {
                    continue;
                }
                if let Some(hit) = accept(h, radius, GaussInt::new(x, y), GaussInt::new(c, d), q.clone())? {
                    hits.push(hit);
                }
            }
            y += 2;
        }
    }
    Ok(())
}

/// Target volume of one lattice shell; shells are widened while the
/// expected number of lattice points stays below this.
const SHELL_VOLUME: f64 = 4.0e3;
const NODE_BUDGET: u64 = 20_000_000;
/// Shells whose scan visits fewer `r` candidates than this are scanned.
const SCAN_BUDGET: f64 = 2.0e6;

fn to_rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn isqrt_f64(n: &BigInt) -> f64 {
    rat_to_f64(&BigRational::from_integer(n.clone())).sqrt()
}

/// Same contract as [`near_scan`] with `BigInt` norm bounds, found by
/// short-vector enumeration. With `z = (q, r, p) ∈ ℤ[i]³` the conditions
/// `|q| ≤ Q`, `|r − u·q| ≤ A`, `|p + v̄·q − ū·r| ≤ B` cut out a box of a
/// unimodular image of ℤ⁶; its enclosing ellipsoid is searched on an
/// LLL-reduced basis, one height shell at a time.
pub fn near_lattice(h: &SiegelPoint, radius: &Radius, lo: &BigInt, hi: &BigInt) -> Result<Vec<NearHit>, SiegelError> {
    search(h, radius, lo, hi, false)
}

/// Same contract as [`near_lattice`], but shells whose ellipsoid is large
/// while a direct scan is cheap (small heights, wide radii) are scanned.
pub fn near_rationals(h: &SiegelPoint, radius: &Radius, lo: &BigInt, hi: &BigInt) -> Result<Vec<NearHit>, SiegelError> {
    search(h, radius, lo, hi, true)
}

fn search(h: &SiegelPoint, radius: &Radius, lo: &BigInt, hi: &BigInt, hybrid: bool) -> Result<Vec<NearHit>, SiegelError> {
    require_n1(h)?;
    let mut hits = Vec::new();
    let mut nlo = lo.clone().max(BigInt::one());
    while &nlo < hi {
        let qlo = isqrt_f64(&nlo);
        // widen the shell while its lattice volume stays small
        let mut nhi = (&nlo * 4u32).min(hi.clone());
        loop {
            let next = (&nhi * 4u32).min(hi.clone());
            if next == nhi || shell_volume(radius, qlo, isqrt_f64(&next)) > SHELL_VOLUME {
                break;
            }
            nhi = next;
        }
        let (flo, fhi) = (isqrt_f64(&nlo).powi(2), isqrt_f64(&nhi).powi(2));
        let volume = shell_volume(radius, qlo, fhi.sqrt());
        match (nlo.to_u64(), nhi.to_u64()) {
            (Some(a), Some(b)) if hybrid && volume > SHELL_VOLUME && scan_cost(radius, flo, fhi) < SCAN_BUDGET.max(volume) => {
                scan_range(h, radius, a, b, &mut hits)?;
            }
            _ => shell(h, radius, &nlo, &nhi, &mut hits)?,
        }
        nlo = nhi;
    }
    sort_hits(&mut hits);
    Ok(hits)
}

fn shell_volume(radius: &Radius, qlo: f64, qhi: f64) -> f64 {
    let rho = radius.bound(qlo, qhi);
    let (a, b) = (2f64.sqrt() * rho * qhi, rho * rho * qhi);
    // ellipsoid Σ|·|²/scale² ≤ 3 in six real dimensions
    std::f64::consts::PI.powi(3) / 6.0 * 27.0 * (a * b * qhi).powi(2)
}

fn shell(h: &SiegelPoint, radius: &Radius, nlo: &BigInt, nhi: &BigInt, hits: &mut Vec<NearHit>) -> Result<(), SiegelError> {
    let (qlo, qhi) = (isqrt_f64(nlo), isqrt_f64(nhi));
    let rho = radius.bound(qlo, qhi) * (1.0 + 1e-9);
    let sa = 2f64.sqrt() * rho * qhi * (1.0 + 1e-9) + 1e-300;
    let sb = rho * rho * qhi * (1.0 + 1e-9) + 1e-300;
    let sq = qhi * (1.0 + 1e-9);
    let (ur, ui) = h.u()[0].parts();
    let (vr, vi) = h.v().parts();
    let (uf, vf) = (h.u()[0].abs_f64(), h.v().abs_f64());
    // largest coordinate of any candidate, which sets the rounding precision
    let zr = uf * sq + sa;
    let zmax = sq + zr + vf * sq + uf * zr + sb;
    let s = (zmax.max(1.0).log2().ceil() as i64 + 48).max(64) as usize;
    let two_s = BigRational::from_integer(BigInt::one() << s);
    let inv = |x: f64| to_rat(1.0 / x) * &two_s;
    let (ia, ib, iq) = (inv(sa), inv(sb), inv(sq));
    let zero = BigRational::zero();
    let one = BigRational::one();
    // columns: q.re, q.im, r.re, r.im, p.re, p.im; rows: scaled forms
    let rows: [[BigRational; 6]; 6] = [
        [iq.clone(), zero.clone(), zero.clone(), zero.clone(), zero.clone(), zero.clone()],
        [zero.clone(), iq.clone(), zero.clone(), zero.clone(), zero.clone(), zero.clone()],
        // r − u·q
        [-&ur * &ia, &ui * &ia, ia.clone(), zero.clone(), zero.clone(), zero.clone()],
        [-&ui * &ia, -&ur * &ia, zero.clone(), ia.clone(), zero.clone(), zero.clone()],
        // p + v̄·q − ū·r
        [&vr * &ib, &vi * &ib, -&ur * &ib, -&ui * &ib, &one * &ib, zero.clone()],
        [-&vi * &ib, &vr * &ib, &ui * &ib, -&ur * &ib, zero.clone(), &one * &ib],
    ];
    let basis: Vec<Vec<BigInt>> = (0..6)
        .map(|col| rows.iter().map(|row| zkernel::round_half_even(&row[col])).collect())
        .collect();
    let red = lll(basis)?;
    let scale = BigInt::one() << (2 * s);
    let xs = red.short_vectors(3.0 * (1.0 + 1e-6), &scale, NODE_BUDGET)?;
    for x in xs {
        let z = red.combine(&x);
        let q = GaussInt::new(z[0].clone(), z[1].clone());
        if q.is_zero() || !q.is_canonical() {
            continue;
        }
        let nq = q.norm();
        if &nq < nlo || &nq >= nhi {
            continue;
        }
        let r = GaussInt::new(z[2].clone(), z[3].clone());
        let p = GaussInt::new(z[4].clone(), z[5].clone());
        if let Some(hit) = accept(h, radius, r, p, q)? {
            hits.push(hit);
        }
    }
    Ok(())
}

/// `min |q|·d(h, ·)` over rationals with `|q| ≤ cutoff`, together with a
/// witness. Searches height shells with an acceptance threshold that
/// tightens as better witnesses appear; returns `None` when no rational
/// reaches `start` (so the constant is at least `start`).
pub fn min_scaled_distance(h: &SiegelPoint, cutoff: &BigInt, start: f64) -> Result<Option<NearHit>, SiegelError> {
    require_n1(h)?;
    let hi: BigInt = cutoff * cutoff + 1u32;
    let mut best: Option<NearHit> = None;
    let mut k = to_rat(start);
    let mut nlo = BigInt::one();
    while nlo < hi {
        let nhi = (&nlo * 16u32).min(hi.clone());
        let radius = Radius::power(k.clone(), BigRational::one())?;
        let found = near_rationals(h, &radius, &nlo, &nhi)?;
        for hit in found {
            // |q|⁴·d⁴ compared exactly
            let s4 = &hit.dist.radicand * BigRational::from_integer(hit.point.norm_q() * hit.point.norm_q());
            let better = match &best {
                None => true,
                Some(b) => {
                    let b4 = &b.dist.radicand * BigRational::from_integer(b.point.norm_q() * b.point.norm_q());
                    s4 < b4
                }
            };
            if better {
                best = Some(hit);
            }
        }
        if let Some(b) = &best {
            if b.dist.is_zero() {
                break;
            }
            // shrink the threshold to the current record, rounded up
            let rec = b.scaled_f64();
            if rec > 0.0 && rec < rat_to_f64(&k) {
                k = to_rat(rec * (1.0 + 1e-9));
            }
        }
        nlo = nhi;
    }
    Ok(best)
}
