use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use zkernel::rat_to_f64;

use crate::error::SiegelError;

/// Acceptance radius around a target as a function of the height `|q|`,
/// with an exact membership test on `d⁴`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Radius {
    /// `d ≤ c·|q|^(−α)`.
    Power {
        #[serde(serialize_with = "ser_rat")]
        c: BigRational,
        #[serde(serialize_with = "ser_rat")]
        alpha: BigRational,
    },
    /// `d ≤ ε/|q| + r`.
    Affine {
        #[serde(serialize_with = "ser_rat")]
        eps: BigRational,
        #[serde(serialize_with = "ser_rat")]
        r: BigRational,
    },
}

fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl Radius {
    pub fn power(c: BigRational, alpha: BigRational) -> Result<Self, SiegelError> {
        if !c.is_positive() {
            return Err(SiegelError::domain("radius constant must be positive"));
        }
        Ok(Radius::Power { c, alpha })
    }

    pub fn affine(eps: BigRational, r: BigRational) -> Result<Self, SiegelError> {
        if eps.is_negative() || r.is_negative() || (eps.is_zero() && r.is_zero()) {
            return Err(SiegelError::domain("affine radius needs ε, r ≥ 0, not both zero"));
        }
        Ok(Radius::Affine { eps, r })
    }

    /// The radius at height `|q| = h`.
    pub fn at(&self, h: f64) -> f64 {
        match self {
            Radius::Power { c, alpha } => rat_to_f64(c) * h.powf(-rat_to_f64(alpha)),
            Radius::Affine { eps, r } => rat_to_f64(eps) / h + rat_to_f64(r),
        }
    }

    /// Upper bound of the radius over heights in `[lo, hi]`.
    pub fn bound(&self, lo: f64, hi: f64) -> f64 {
        self.at(lo).max(self.at(hi))
    }

    /// Exact test of `d ≤ radius(|q|)` given `d⁴` and `N(q) = |q|²`.
    pub fn contains(&self, norm_q: &BigInt, d4: &BigRational) -> bool {
        let n = BigRational::from_integer(norm_q.clone());
        match self {
            Radius::Power { c, alpha } => {
                // d^(4b)·N(q)^(2a) ≤ c^(4b) for α = a/b
                let a = alpha.numer();
                let b = alpha.denom().to_usize().expect("exponent denominator fits usize");
                let two_a = (a * 2u32).abs().to_usize().expect("exponent numerator fits usize");
                let lhs = num_traits::pow(d4.clone(), b);
                let cb = num_traits::pow(c.clone(), 4 * b);
                let np = num_traits::pow(n, two_a);
                if a.is_negative() {
                    lhs <= cb * np
                } else {
                    lhs * np <= cb
                }
            }
            Radius::Affine { eps, r } => {
                // with s = |q|: d ≤ ε/s + r  ⇔  d⁴·n² ≤ (ε + r·s)⁴ = P + Q·s
                let e2 = eps * eps;
                let r2 = r * r;
                let p = &e2 * &e2 + BigRational::from_integer(6.into()) * &e2 * &r2 * &n + &r2 * &r2 * &n * &n;
                let q = BigRational::from_integer(4.into()) * eps * r * (&e2 + &r2 * &n);
                let lhs = d4 * &n * &n - p;
                if !lhs.is_positive() {
                    return true;
                }
                &lhs * &lhs <= &q * &q * &n
            }
        }
    }
}
