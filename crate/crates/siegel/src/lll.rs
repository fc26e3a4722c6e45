//! Exact integral LLL reduction and Fincke–Pohst enumeration of short
//! vectors, used to find rational points near a target without scanning
//! denominators one by one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::SiegelError;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<BigInt>()
}

/// `round(a/b)` for `b > 0`, halves toward +∞.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    (a * 2u32 + b).div_floor(&(b * 2u32))
}

/// A reduced basis with the unimodular transform recording each reduced
/// vector as an integer combination of the input vectors.
pub struct Reduced {
    pub basis: Vec<Vec<BigInt>>,
    pub transform: Vec<Vec<BigInt>>,
    /// `d_0 = 1, d_i = det Gram(b_1..b_i)`; `|b*_i|² = d_i/d_{i−1}`.
    d: Vec<BigInt>,
    /// `λ_{i,j} = d_j·μ_{i,j}` for `j < i`.
    lambda: Vec<Vec<BigInt>>,
}

/// Integral LLL with `δ = 99/100` (Cohen, Algorithm 2.6.7). The input
/// vectors must be linearly independent.
pub fn lll(input: Vec<Vec<BigInt>>) -> Result<Reduced, SiegelError> {
    let n = input.len();
    let mut b = input;
    let mut h: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect();
    // 1-based d as in the textbook: d[0] = 1
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    d[0] = BigInt::from(1);
    if n == 0 {
        return Ok(Reduced { basis: b, transform: h, d, lambda: lam });
    }
    d[1] = dot(&b[0], &b[0]);
    if d[1].is_zero() {
        return Err(SiegelError::domain("lattice basis is degenerate"));
    }
    let (dn, dd) = (BigInt::from(99), BigInt::from(100));
    let mut k = 1usize; // 0-based index of the vector being inserted
    let mut kmax = 0usize;

    let red = |k: usize, l: usize, b: &mut Vec<Vec<BigInt>>, h: &mut Vec<Vec<BigInt>>, lam: &mut Vec<Vec<BigInt>>, d: &[BigInt]| {
        let two_l: BigInt = &lam[k][l] * 2u32;
        if two_l.abs() > d[l + 1] {
            let q = round_div(&lam[k][l], &d[l + 1]);
            for c in 0..b[k].len() {
                let t = &q * &b[l][c];
                b[k][c] -= t;
            }
            for c in 0..h[k].len() {
                let t = &q * &h[l][c];
                h[k][c] -= t;
            }
            let t = &q * &d[l + 1];
            lam[k][l] -= t;
            for i in 0..l {
                let t = &q * &lam[l][i];
                lam[k][i] -= t;
            }
        }
    };

    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(SiegelError::domain("lattice basis is degenerate"));
                    }
                    d[k + 1] = u;
                }
            }
        }
        red(k, k - 1, &mut b, &mut h, &mut lam, &d);
        let l2 = &lam[k][k - 1] * &lam[k][k - 1];
        let lhs = &dd * &d[k + 1] * &d[k - 1];
        let rhs = &dn * &d[k] * &d[k] - &dd * &l2;
        if lhs < rhs {
            // swap k and k−1
            b.swap(k, k - 1);
            h.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = lam[k][j].clone();
                lam[k][j] = lam[k - 1][j].clone();
                lam[k - 1][j] = t;
            }
            let lm = lam[k][k - 1].clone();
            let bb = (&d[k - 1] * &d[k + 1] + &lm * &lm) / &d[k];
            for i in k + 1..=kmax {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &lm * &t) / &d[k];
                lam[i][k - 1] = (&bb * &t + &lm * &lam[i][k]) / &d[k + 1];
            }
            d[k] = bb;
            if k > 1 {
                k -= 1;
            }
        } else {
            for l in (0..k - 1).rev() {
                red(k, l, &mut b, &mut h, &mut lam, &d);
            }
            k += 1;
        }
    }
    Ok(Reduced { basis: b, transform: h, d, lambda: lam })
}

fn ratio_f64(a: &BigInt, b: &BigInt) -> f64 {
    zkernel::rat_to_f64(&num_rational::BigRational::new(a.clone(), b.clone()))
}

impl Reduced {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coefficient vectors `x` with `|Σ xᵢ·bᵢ|² ≤ bound·scale`, where
    /// `scale` is applied to every Gram–Schmidt norm before the floating
    /// point search (to keep huge lattices in range). Fails once more than
    /// `budget` search nodes are visited.
    pub fn short_vectors(&self, bound: f64, scale: &BigInt, budget: u64) -> Result<Vec<Vec<i64>>, SiegelError> {
        let n = self.dim();
        let bstar: Vec<f64> = (0..n).map(|i| ratio_f64(&self.d[i + 1], &(&self.d[i] * scale))).collect();
        let mu: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..i).map(|j| ratio_f64(&self.lambda[i][j], &self.d[j + 1])).collect())
            .collect();
        let mut out = Vec::new();
        let mut x = vec![0i64; n];
        let mut nodes = 0u64;
        search(n, &bstar, &mu, bound, 0.0, &mut x, &mut out, &mut nodes, budget)?;
        Ok(out)
    }

    /// `Σ xᵢ·transformᵢ`, the input-coordinate combination for `x`.
    pub fn combine(&self, x: &[i64]) -> Vec<BigInt> {
        let n = self.transform[0].len();
        let mut z = vec![BigInt::zero(); n];
        for (xi, row) in x.iter().zip(&self.transform) {
            if *xi != 0 {
                for (zc, hc) in z.iter_mut().zip(row) {
                    *zc += hc * *xi;
                }
            }
        }
        z
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    level: usize,
    bstar: &[f64],
    mu: &[Vec<f64>],
    bound: f64,
    used: f64,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
    nodes: &mut u64,
    budget: u64,
) -> Result<(), SiegelError> {
    if level == 0 {
        out.push(x.clone());
        return Ok(());
    }
    let i = level - 1;
    let c: f64 = -(i + 1..x.len()).map(|j| mu[j][i] * x[j] as f64).sum::<f64>();
    let rem = bound - used;
    if rem < 0.0 {
        return Ok(());
    }
    let w = (rem / bstar[i]).sqrt();
    let lo = (c - w - 1e-9).ceil() as i64;
    let hi = (c + w + 1e-9).floor() as i64;
    for v in lo..=hi {
        *nodes += 1;
        if *nodes > budget {
            return Err(SiegelError::Budget(format!("more than {budget} enumeration nodes")));
        }
        let t = v as f64 - c;
        let nu = used + t * t * bstar[i];
        if nu <= bound * (1.0 + 1e-12) + 1e-12 {
            x[i] = v;
            search(level - 1, bstar, mu, bound, nu, x, out, nodes, budget)?;
        }
    }
    x[i] = 0;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn reduces_a_skewed_basis() {
        let basis = vec![v(&[1, 0, 0]), v(&[1000, 1, 0]), v(&[7000, 123, 1])];
        let red = lll(basis.clone()).unwrap();
        for b in &red.basis {
            assert!(dot(b, b) <= BigInt::from(3), "{b:?}");
        }
        // the transform maps input coordinates to the reduced vectors
        for (row, b) in red.transform.iter().zip(&red.basis) {
            let mut s = vec![BigInt::zero(); 3];
            for (c, inp) in row.iter().zip(&basis) {
                for k in 0..3 {
                    s[k] += c * &inp[k];
                }
            }
            assert_eq!(&s, b);
        }
    }

    #[test]
    fn enumerates_every_short_vector() {
        let basis = vec![v(&[3, 1]), v(&[1, 2])];
        let red = lll(basis.clone()).unwrap();
        let xs = red.short_vectors(10.0, &BigInt::from(1), 10_000).unwrap();
        let mut found: Vec<(i64, i64)> = xs
            .iter()
            .map(|x| {
                let z = red.combine(x);
                let p0: BigInt = &z[0] * &basis[0][0] + &z[1] * &basis[1][0];
                let p1: BigInt = &z[0] * &basis[0][1] + &z[1] * &basis[1][1];
                (i64::try_from(p0).unwrap(), i64::try_from(p1).unwrap())
            })
            .collect();
        found.sort();
        let mut expect = Vec::new();
        for a in -10i64..=10 {
            for b in -10i64..=10 {
                let p = (3 * a + b, a + 2 * b);
                if p.0 * p.0 + p.1 * p.1 <= 10 {
                    expect.push(p);
                }
            }
        }
        expect.sort();
        assert_eq!(found, expect);
    }
}
