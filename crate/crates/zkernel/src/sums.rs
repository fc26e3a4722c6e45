//! Partial sums over Gaussian integers of bounded norm.
//!
//! Terms are grouped by norm `n`, so each sum becomes `Σ_{n ≤ K} c(n)/n^e`
//! with integer weights `c(n)`. Small cutoffs are summed in exact rationals.
//! Beyond [`EXACT_CUTOFF`] the exact denominator has millions of digits, so
//! each term is truncated to a fixed-point value with [`FIXED_BITS`]
//! fractional bits; the accumulated error is below `K·2^-FIXED_BITS`, far
//! under the 30 reported digits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::decimal::to_sig_digits;
use crate::error::ZkError;

pub const EXACT_CUTOFF: u64 = 2000;
pub const FIXED_BITS: u32 = 384;
pub const REPORT_DIGITS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumKind {
    InverseNormS,
    MoebiusK,
    PhiStarred,
}

impl std::str::FromStr for SumKind {
    type Err = ZkError;
    fn from_str(s: &str) -> Result<Self, ZkError> {
        match s {
            "inverse_norm_s" => Ok(SumKind::InverseNormS),
            "moebius_k" => Ok(SumKind::MoebiusK),
            "phi_starred" => Ok(SumKind::PhiStarred),
            _ => Err(ZkError::parse(format!("unknown sum kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumReport {
    pub kind: SumKind,
    #[serde(rename = "K")]
    pub k: u64,
    pub exponent: u32,
    /// Decimal string with 30 significant digits.
    pub value: String,
    pub term_count: u64,
    /// `"exact"` or `"fixed(<bits>)"`.
    pub provenance: String,
    #[serde(skip)]
    pub exact: BigRational,
}

impl SumReport {
    pub fn value_f64(&self) -> f64 {
        crate::grat::rat_to_f64(&self.exact)
    }
}

/// Smallest-prime-factor table for `0..=n`.
pub fn spf_sieve(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// `(μ(α), φ(α))` for `α = a + bi ≠ 0` with `N(α) = a² + b²` covered by `spf`.
pub fn mu_phi_small(a: i64, b: i64, spf: &[u32]) -> (i32, u64) {
    let mut n = (a * a + b * b) as usize;
    let g = a.unsigned_abs().gcd(&b.unsigned_abs());
    let mut mu = 1i32;
    let mut phi = 1u64;
    while n > 1 {
        let p = spf[n] as u64;
        let mut e = 0u32;
        while n as u64 % p == 0 {
            n /= p as usize;
            e += 1;
        }
        if p == 2 {
            if e > 1 {
                mu = 0;
            }
            mu = -mu;
            phi *= 1 << (e - 1);
        } else if p % 4 == 3 {
            let k = e / 2;
            if k > 1 {
                mu = 0;
            }
            mu = -mu;
            phi *= (p * p - 1) * (p * p).pow(k - 1);
        } else {
            // p = ππ̄; the rational power p^s dividing α contributes to both
            let mut s = 0u32;
            let mut gg = g;
            while gg % p == 0 {
                gg /= p;
                s += 1;
            }
            let exps = [e - s, s];
            for x in exps {
                if x == 0 {
                    continue;
                }
                if x > 1 {
                    mu = 0;
                }
                mu = -mu;
                phi *= (p - 1) * p.pow(x - 1);
            }
        }
    }
    (mu, phi)
}

fn weights(kind: SumKind, k: u64) -> (Vec<i64>, u64) {
    let kk = k as i64;
    let r = (k as f64).sqrt() as i64 + 1;
    let mut c = vec![0i64; k as usize + 1];
    let mut terms = 0u64;
    let spf = match kind {
        SumKind::InverseNormS => Vec::new(),
        _ => spf_sieve(k as usize),
    };
    for a in -r..=r {
        for b in -r..=r {
            let n = a * a + b * b;
            if n == 0 || n > kk {
                continue;
            }
            match kind {
                SumKind::InverseNormS => {
                    c[n as usize] += 1;
                    terms += 1;
                }
                SumKind::MoebiusK => {
                    if a > 0 && b >= 0 {
                        c[n as usize] += mu_phi_small(a, b, &spf).0 as i64;
                        terms += 1;
                    }
                }
                SumKind::PhiStarred => {
                    if a > 0 && b > 0 && a.gcd(&b) == 1 {
                        c[n as usize] += mu_phi_small(a, b, &spf).1 as i64;
                        terms += 1;
                    }
                }
            }
        }
    }
    (c, terms)
}

pub fn analytic_sum(kind: SumKind, k: u64, exponent: u32) -> Result<SumReport, ZkError> {
    if k < 1 {
        return Err(ZkError::domain("cutoff K must be at least 1"));
    }
    let e = match kind {
        SumKind::MoebiusK if exponent < 2 => {
            return Err(ZkError::domain("moebius_k needs exponent >= 2"))
        }
        SumKind::PhiStarred => 2,
        _ => exponent,
    };
    if k > 50_000_000 {
        return Err(ZkError::Range("cutoff K above 5e7 is not supported".into()));
    }
    let (c, term_count) = weights(kind, k);
    let (exact, provenance) = if k <= EXACT_CUTOFF {
        let mut acc = BigRational::zero();
        for (n, &w) in c.iter().enumerate().skip(1) {
            if w != 0 {
                acc += BigRational::new(BigInt::from(w), BigInt::from(n).pow(e));
            }
        }
        (acc, "exact".to_string())
    } else {
        let scale = BigInt::one() << FIXED_BITS;
        let mut acc = BigInt::zero();
        for (n, &w) in c.iter().enumerate().skip(1) {
            if w != 0 {
                // truncation toward zero; one unit of error per term at most
                acc += (&scale * w) / BigInt::from(n).pow(e);
            }
        }
        (BigRational::new(acc, scale), format!("fixed({FIXED_BITS})"))
    };
    Ok(SumReport {
        kind,
        k,
        exponent: e,
        value: to_sig_digits(&exact, REPORT_DIGITS),
        term_count,
        provenance,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor;
    use crate::gauss::GaussInt;

    #[test]
    fn fast_mu_phi_agree_with_factorization() {
        let spf = spf_sieve(5000);
        for a in -40i64..=40 {
            for b in -40i64..=40 {
                if a == 0 && b == 0 {
                    continue;
                }
                let x = GaussInt::new(a, b);
                let (mu, phi) = mu_phi_small(a, b, &spf);
                assert_eq!(mu, factor::moebius(&x).unwrap(), "mu at {x}");
                assert_eq!(BigInt::from(phi), factor::totient(&x).unwrap(), "phi at {x}");
            }
        }
    }

    #[test]
    fn small_examples() {
        let r = analytic_sum(SumKind::InverseNormS, 4, 1).unwrap();
        assert_eq!(r.exact, BigRational::from_integer(7.into()));
        assert_eq!(r.term_count, 12);
        let r = analytic_sum(SumKind::PhiStarred, 10, 2).unwrap();
        assert_eq!(r.exact, BigRational::new(13.into(), 20.into()));
        assert_eq!(r.value, "0.650000000000000000000000000000");
        assert!(analytic_sum(SumKind::MoebiusK, 10, 1).is_err());
        assert!(analytic_sum(SumKind::MoebiusK, 0, 2).is_err());
    }

    #[test]
    fn fixed_point_matches_exact_at_the_boundary() {
        // the exact path at K just below the cutoff and the fixed path just
        // above it differ only by the terms at the extra norms
        let lo = analytic_sum(SumKind::MoebiusK, EXACT_CUTOFF, 2).unwrap();
        let hi = analytic_sum(SumKind::MoebiusK, EXACT_CUTOFF + 1, 2).unwrap();
        assert_eq!(hi.provenance, format!("fixed({FIXED_BITS})"));
        let diff = crate::grat::rat_to_f64(&(&hi.exact - &lo.exact)).abs();
        assert!(diff < 1e-6);
    }
}
