//! Exhaustive lattice-point counts used as oracles for the asymptotic lemmas.

use std::collections::HashSet;
use std::f64::consts::PI;

use num_integer::Integer;
use serde::Serialize;

use crate::error::ZkError;
use crate::gauss::GaussInt;

/// Canonical representative of `a mod b`: the remainder of the rounded
/// quotient, which lies in a half-open fundamental square around 0.
pub fn reduce_mod(a: &GaussInt, b: &GaussInt) -> Result<GaussInt, ZkError> {
    a.rem_round(b)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiskCount {
    pub count: u64,
    /// `π·|S|·K²/|β|²`
    pub main_term: f64,
}

/// Number of `α` with `|α| ≤ K` whose residue mod `β` lies in `residues`.
pub fn count_disk_residues(
    k: f64,
    beta: &GaussInt,
    residues: &[GaussInt],
) -> Result<DiskCount, ZkError> {
    if beta.is_zero() {
        return Err(ZkError::domain("modulus must be nonzero"));
    }
    if !(k >= 0.0) {
        return Err(ZkError::domain("radius must be non-negative"));
    }
    let set: HashSet<GaussInt> = residues
        .iter()
        .map(|s| reduce_mod(s, beta))
        .collect::<Result<_, _>>()?;
    let nb = beta.abs_f64().powi(2);
    let main_term = PI * set.len() as f64 * k * k / nb;
    if set.is_empty() {
        return Ok(DiskCount { count: 0, main_term });
    }
    let r = k.floor() as i64;
    let k2 = k * k;
    let mut count = 0u64;
    for a in -r..=r {
        for b in -r..=r {
            if ((a * a + b * b) as f64) <= k2 && set.contains(&reduce_mod(&GaussInt::new(a, b), beta)?) {
                count += 1;
            }
        }
    }
    Ok(DiskCount { count, main_term })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearCount {
    pub count: u64,
    /// `2A + gcd(n, m)`
    pub bound: f64,
}

/// Pairs `0 ≤ x < m`, `0 ≤ y < n` with `|x·n − y·m + k| ≤ A`.
pub fn count_linear_solutions(n: u64, m: u64, k: f64, a: f64) -> LinearCount {
    let mut count = 0u64;
    for x in 0..m {
        for y in 0..n {
            let v = (x as i128 * n as i128 - y as i128 * m as i128) as f64 + k;
            if v.abs() <= a {
                count += 1;
            }
        }
    }
    LinearCount {
        count,
        bound: 2.0 * a + n.gcd(&m) as f64,
    }
}

/// Gaussian pairs `(x, y)` with `0 < |q·x − Q·y| ≤ A`, `|x/Q| < R`, `|y/q| < R`.
pub fn count_linear_form_gauss(
    q: &GaussInt,
    big_q: &GaussInt,
    a: f64,
    r: f64,
) -> Result<u64, ZkError> {
    if q.is_zero() || big_q.is_zero() {
        return Err(ZkError::domain("q and Q must be nonzero"));
    }
    let (qr, qi) = q.to_i64_pair().ok_or_else(|| ZkError::Range("q too large".into()))?;
    let (br, bi) = big_q
        .to_i64_pair()
        .ok_or_else(|| ZkError::Range("Q too large".into()))?;
    let rx = r * big_q.abs_f64();
    let ry = r * q.abs_f64();
    let disk = |rad: f64| {
        let m = rad.ceil() as i64;
        let mut pts = Vec::new();
        for u in -m..=m {
            for v in -m..=m {
                if (((u * u + v * v) as f64).sqrt()) < rad {
                    pts.push((u, v));
                }
            }
        }
        pts
    };
    let xs = disk(rx);
    let ys = disk(ry);
    let a2 = a * a;
    let mut count = 0u64;
    for &(xr, xi) in &xs {
        let qx = (qr * xr - qi * xi, qr * xi + qi * xr);
        for &(yr, yi) in &ys {
            let dr = qx.0 - (br * yr - bi * yi);
            let di = qx.1 - (br * yi + bi * yr);
            let n = dr * dr + di * di;
            if n > 0 && (n as f64) <= a2 {
                count += 1;
            }
        }
    }
    Ok(count)
}
