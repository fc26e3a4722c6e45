//! Parser for Gaussian rationals written as `a/b+c/d i`.
//!
//! Whitespace is ignored. Terms are signed rationals (integer, `p/q` or a
//! decimal literal), optionally followed by `i`; a bare `i` means one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::ZkError;
use crate::grat::GaussRat;

pub fn parse_rational(s: &str) -> Result<BigRational, ZkError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(ZkError::parse("empty rational"));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(&t)),
    };
    let v = match body.split_once('/') {
        Some((n, d)) => {
            let n = parse_decimal(n)?;
            let d = parse_decimal(d)?;
            if d.is_zero() {
                return Err(ZkError::parse(format!("zero denominator in {s:?}")));
            }
            n / d
        }
        None => parse_decimal(body)?,
    };
    Ok(if neg { -v } else { v })
}

fn parse_decimal(s: &str) -> Result<BigRational, ZkError> {
    let bad = || ZkError::parse(format!("malformed number {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || int.len() + frac.len() == 0 {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let d = BigInt::from(10u32).pow(frac.len() as u32);
    Ok(BigRational::new(n, d))
}

pub fn parse_gauss_rat(s: &str) -> Result<GaussRat, ZkError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(ZkError::parse("empty Gaussian rational"));
    }
    let mut re = BigRational::zero();
    let mut im = BigRational::zero();
    // split into signed terms, keeping the sign with each term
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in t.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('/') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-BigRational::one(), b.to_string()),
            None => (BigRational::one(), term.trim_start_matches('+').to_string()),
        };
        if let Some(coef) = body.strip_suffix('i') {
            let c = if coef.is_empty() {
                BigRational::one()
            } else {
                parse_rational(coef.trim_end_matches('*'))?
            };
            im += sign * c;
        } else {
            re += sign * parse_rational(&body)?;
        }
    }
    Ok(GaussRat::from_parts(&re, &im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        let r = |s| parse_rational(s).unwrap();
        assert_eq!(r("3/6"), BigRational::new(1.into(), 2.into()));
        assert_eq!(r("-0.25"), BigRational::new((-1).into(), 4.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn gaussian_terms() {
        let g = |s| parse_gauss_rat(s).unwrap();
        assert_eq!(g("i"), GaussRat::i());
        assert_eq!(g("-i"), -GaussRat::i());
        assert_eq!(g("2-3i"), GaussRat::from_i64(2, -3));
        assert_eq!(g("1/2 + 1/2 i").to_string(), "1/2+1/2 i");
        assert!(parse_gauss_rat("1+").is_err());
    }
}
