//! Factorization in ℤ[i] through the norm.
//!
//! A Gaussian integer is factored by factoring its norm over ℤ by trial
//! division and then splitting each rational prime: `2 = -i(1+i)²`, primes
//! `≡ 3 (mod 4)` stay inert, and `p ≡ 1 (mod 4)` splits as `π·π̄`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::ZkError;
use crate::gauss::{gi_gcd, GaussInt};

/// Prime factorization of `n ≥ 1` as `(p, e)` pairs in increasing order.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut base = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

/// The canonical Gaussian prime of norm `p`, for a rational prime `p ≡ 1 (mod 4)`.
/// Its conjugate's canonical associate is the other prime above `p`.
pub fn split_prime(p: u64) -> GaussInt {
    debug_assert_eq!(p % 4, 1);
    // a non-residue c gives c^((p-1)/4) as a square root of -1
    let mut c = 2u64;
    let x = loop {
        let x = pow_mod(c, (p - 1) / 4, p);
        if (x as u128 * x as u128) % p as u128 == (p - 1) as u128 {
            break x;
        }
        c += 1;
    };
    gi_gcd(&GaussInt::new(p, 0), &GaussInt::new(x, 1)).expect("nonzero")
}

/// Factorization `α = unit · ∏ πᵢ^eᵢ` with canonical primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussFactorization {
    pub unit: GaussInt,
    pub factors: Vec<(GaussInt, u32)>,
}

impl GaussFactorization {
    pub fn expand(&self) -> GaussInt {
        self.factors
            .iter()
            .fold(self.unit.clone(), |acc, (p, e)| &acc * &p.pow(*e))
    }
}

pub fn norm_u64(a: &GaussInt) -> Result<u64, ZkError> {
    a.norm()
        .to_u64()
        .ok_or_else(|| ZkError::Range(format!("norm of {a} exceeds 64 bits")))
}

pub fn factor(a: &GaussInt) -> Result<GaussFactorization, ZkError> {
    if a.is_zero() {
        return Err(ZkError::domain("cannot factor zero"));
    }
    let n = norm_u64(a)?;
    let mut rest = a.clone();
    let mut factors = Vec::new();
    for (p, e) in factor_u64(n) {
        if p == 2 {
            let pi = GaussInt::new(1, 1);
            for _ in 0..e {
                rest = rest.div_exact(&pi).expect("1+i divides");
            }
            factors.push((pi, e));
        } else if p % 4 == 3 {
            let pi = GaussInt::new(p, 0);
            for _ in 0..e / 2 {
                rest = rest.div_exact(&pi).expect("inert prime divides");
            }
            factors.push((pi, e / 2));
        } else {
            let pi = split_prime(p);
            let pibar = pi.conj().canonical();
            for q in [pi, pibar] {
                let mut k = 0;
                while let Some(r) = rest.div_exact(&q) {
                    rest = r;
                    k += 1;
                }
                if k > 0 {
                    factors.push((q, k));
                }
            }
        }
    }
    debug_assert!(rest.is_unit());
    factors.sort_by(|x, y| x.0.norm().cmp(&y.0.norm()).then(x.0.re.cmp(&y.0.re)));
    Ok(GaussFactorization {
        unit: rest,
        factors,
    })
}

/// All canonical divisors of `a`.
pub fn divisors(a: &GaussInt) -> Result<Vec<GaussInt>, ZkError> {
    let f = factor(a)?;
    let mut out = vec![GaussInt::one()];
    for (p, e) in &f.factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = &acc * p;
                next.push(acc.canonical());
            }
        }
        out = next;
    }
    Ok(out.into_iter().map(|d| d.canonical()).collect())
}

/// Gaussian totient `φ(a) = N(a)·∏_{π|a} (1 − 1/N(π))`.
pub fn totient(a: &GaussInt) -> Result<BigInt, ZkError> {
    let f = factor(a)?;
    let mut acc = BigInt::one();
    for (p, e) in &f.factors {
        let np = p.norm();
        acc *= (&np - 1u32) * np.pow(e - 1);
    }
    Ok(acc)
}

/// Gaussian Möbius function; unit invariant.
pub fn moebius(a: &GaussInt) -> Result<i32, ZkError> {
    let f = factor(a)?;
    if f.factors.iter().any(|(_, e)| *e > 1) {
        return Ok(0);
    }
    Ok(if f.factors.len() % 2 == 0 { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GaussInt {
        GaussInt::new(a, b)
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(&g(1, 0)).unwrap(), BigInt::from(1));
        assert_eq!(totient(&g(1, 1)).unwrap(), BigInt::from(1));
        assert_eq!(totient(&g(3, 0)).unwrap(), BigInt::from(8));
        assert!(totient(&g(0, 0)).is_err());
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(&g(1, 0)).unwrap(), 1);
        assert_eq!(moebius(&g(1, 1)).unwrap(), -1);
        assert_eq!(moebius(&g(2, 0)).unwrap(), 0);
        assert_eq!(moebius(&g(5, 0)).unwrap(), 1);
        assert_eq!(moebius(&g(0, -7)).unwrap(), -1);
        assert!(moebius(&g(0, 0)).is_err());
    }

    #[test]
    fn factorization_expands_back() {
        for (a, b) in [(12, 7), (-30, 0), (0, 49), (65, -65), (3, 4), (1, 0)] {
            let x = g(a, b);
            assert_eq!(factor(&x).unwrap().expand(), x);
        }
    }

    #[test]
    fn split_primes_have_prime_norm() {
        for p in [5u64, 13, 17, 29, 1_000_000_009] {
            assert_eq!(split_prime(p).norm(), BigInt::from(p));
        }
    }

    #[test]
    fn divisor_count_matches_tau() {
        // 5 = (2+i)(2-i): four canonical divisors; 2 = unit·(1+i)²: three
        assert_eq!(divisors(&g(5, 0)).unwrap().len(), 4);
        assert_eq!(divisors(&g(2, 0)).unwrap().len(), 3);
        assert_eq!(divisors(&g(1, 0)).unwrap(), vec![g(1, 0)]);
    }
}
