//! Nearest points of the dilated lattice `δ_q⁻¹ G(ℤ)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::CarnotError;
use crate::metric::Radical;
use crate::point::CarnotPoint;
use crate::spec::CarnotSpec;

/// A rational approximation `δ_q⁻¹ p` with its exact infinity-metric distance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarnotHit {
    pub q: u64,
    #[serde(serialize_with = "ser_ints")]
    pub p: Vec<BigInt>,
    pub dist: Radical,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::Serialize;
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
}

impl CarnotHit {
    /// CSV fields `q, p…, dist`.
    pub fn csv_row(&self) -> Vec<String> {
        let mut row = vec![self.q.to_string()];
        row.extend(self.p.iter().map(|x| x.to_string()));
        row.push(format!("{:.17e}", self.dist.to_f64()));
        row
    }
}

/// Layerwise rounding: coordinates of `p` are chosen one layer at a time to
/// cancel the corresponding layer of `(δ_q g)⁻¹ * p`. On Heis¹ this is the
/// closed form `a = round(qx)`, `b = round(qy)`,
/// `c = round(q²t − 2q(a·y − b·x))`; ties round to even.
pub fn nearest_lattice_point(spec: &CarnotSpec, g: &CarnotPoint, q: u64) -> Result<CarnotHit, CarnotError> {
    if q == 0 {
        return Err(CarnotError::Domain("q must be positive".into()));
    }
    let qr = BigRational::from_integer(BigInt::from(q));
    let big_g = spec.dilate(&qr, g)?;
    let g_inv = spec.inv(&big_g)?;
    let mut p = CarnotPoint::identity(spec);
    for j in 0..spec.dim() {
        // coordinate j of g_inv * p does not depend on p_j beyond the additive term
        let mut trial = p.clone();
        trial.coords[j] = BigRational::zero();
        let v = spec.mul(&g_inv, &trial)?.coords[j].clone();
        p.coords[j] = BigRational::from_integer(zkernel::round_half_even(&-v));
    }
    let rel = spec.mul(&g_inv, &p)?;
    let dist = spec.norm_inf(&rel)?.scale(&qr.recip());
    Ok(CarnotHit {
        q,
        p: p.coords.iter().map(|c| c.to_integer()).collect(),
        dist,
    })
}

/// A Heis¹ point whose coordinates are dyadic, `X/2^bits` etc. Nearest
/// lattice points are then computed in `i128` without rounding error; this
/// is the fast path behind the Monte Carlo harnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeisDyadic {
    pub x: i128,
    pub y: i128,
    pub t: i128,
    pub bits: u32,
}

/// Numerators of the residual `(δ_q g)`-relative offsets: `Δx = ex/(q·2^k)`,
/// `Δy = ey/(q·2^k)` and vertical `ew/(q²·2^k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicHit {
    pub q: u64,
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub ex: i128,
    pub ey: i128,
    pub ew: i128,
    pub bits: u32,
}

fn round_shift_half_even(n: i128, k: u32) -> i128 {
    let fl = n >> k;
    let rem = n - (fl << k);
    let half = 1i128 << (k - 1);
    match rem.cmp(&half) {
        std::cmp::Ordering::Less => fl,
        std::cmp::Ordering::Greater => fl + 1,
        std::cmp::Ordering::Equal => fl + (fl & 1),
    }
}

impl HeisDyadic {
    pub fn new(x: i128, y: i128, t: i128, bits: u32) -> Result<Self, CarnotError> {
        if !(1..=64).contains(&bits) {
            return Err(CarnotError::Domain("dyadic precision must be 1..=64 bits".into()));
        }
        let lim = 1i128 << (bits + 4);
        if x.abs() >= lim || y.abs() >= lim || t.abs() >= lim {
            return Err(CarnotError::Domain("dyadic coordinates must be below 16 in magnitude".into()));
        }
        Ok(HeisDyadic { x, y, t, bits })
    }

    /// Exact conversion from rational coordinates with power-of-two denominators.
    pub fn from_point(g: &CarnotPoint) -> Option<Self> {
        if g.coords.len() != 3 {
            return None;
        }
        let bits = g
            .coords
            .iter()
            .map(|c| c.denom().bits().saturating_sub(1) as u32)
            .max()?
            .max(1);
        let mut v = [0i128; 3];
        for (slot, c) in v.iter_mut().zip(&g.coords) {
            if c.denom().magnitude().count_ones() != 1 {
                return None;
            }
            let scaled = c * BigRational::from_integer(BigInt::one() << bits as usize);
            *slot = scaled.to_integer().to_i128()?;
        }
        Self::new(v[0], v[1], v[2], bits).ok()
    }

    pub fn to_point(&self) -> CarnotPoint {
        let d = BigInt::one() << self.bits as usize;
        let r = |n: i128| BigRational::new(BigInt::from(n), d.clone());
        CarnotPoint {
            coords: vec![r(self.x), r(self.y), r(self.t)],
        }
    }

    /// Largest `q` for which the `i128` evaluation cannot overflow.
    pub fn max_q(&self) -> u64 {
        // |q²T|, |2q·a·Y| < 2^(2·log q + bits + 6) must stay below 2^126
        let room = 126 - (self.bits + 6);
        1u64 << (room / 2).min(62)
    }

    pub fn nearest(&self, q: u64) -> DyadicHit {
        assert!(q >= 1 && q <= self.max_q(), "q={q} out of the overflow-safe range");
        let k = self.bits;
        let qi = q as i128;
        let a = round_shift_half_even(qi * self.x, k);
        let b = round_shift_half_even(qi * self.y, k);
        // c = round(q²t − 2q(a·y − b·x))
        let num = qi * qi * self.t - 2 * qi * (a * self.y - b * self.x);
        let c = round_shift_half_even(num, k);
        DyadicHit {
            q,
            a,
            b,
            c,
            ex: (a << k) - qi * self.x,
            ey: (b << k) - qi * self.y,
            ew: (c << k) - num,
            bits: k,
        }
    }
}

impl DyadicHit {
    /// Squared distance in floating point, `λ` being the vertical weight.
    pub fn dist_sq_f64(&self, lambda: f64) -> f64 {
        let scale = (self.bits as f64).exp2();
        let q = self.q as f64;
        let dx = self.ex as f64 / (q * scale);
        let dy = self.ey as f64 / (q * scale);
        let dw = lambda * (self.ew as f64).abs() / (q * q * scale);
        (dx * dx).max(dy * dy).max(dw)
    }

    /// Exact squared distance.
    pub fn dist_sq(&self, lambda: &BigRational) -> BigRational {
        let scale = BigInt::one() << self.bits as usize;
        let q = BigInt::from(self.q);
        let dx = BigRational::new(BigInt::from(self.ex), &q * &scale);
        let dy = BigRational::new(BigInt::from(self.ey), &q * &scale);
        let dw = lambda * BigRational::new(BigInt::from(self.ew).abs(), &q * &q * &scale);
        let m = if dx.abs() > dy.abs() { &dx * &dx } else { &dy * &dy };
        if dw > m {
            dw
        } else {
            m
        }
    }

    pub fn to_hit(&self, lambda: &BigRational) -> CarnotHit {
        CarnotHit {
            q: self.q,
            p: vec![BigInt::from(self.a), BigInt::from(self.b), BigInt::from(self.c)],
            dist: Radical::new(self.dist_sq(lambda), 2),
        }
    }
}
