use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Decimal rendering of an exact rational with `digits` significant digits,
/// rounding half to even. Positional notation for moderate exponents,
/// otherwise `d.ddd…e±X`.
pub fn to_sig_digits(x: &BigRational, digits: usize) -> String {
    assert!(digits > 0);
    if x.is_zero() {
        return format!("0.{}", "0".repeat(digits - 1));
    }
    let neg = x.is_negative();
    let a = x.abs();
    let ten = BigInt::from(10);
    // e = floor(log10 |x|), found by exact comparison against powers of ten
    let mut e = (crate::grat::rat_to_f64(&a).log10().floor()) as i64;
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(ten.pow(k as u32))
        } else {
            BigRational::new(BigInt::from(1), ten.pow((-k) as u32))
        }
    };
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let scaled = &a * pow10(shift);
    let mut m = round_half_even(&scaled);
    if m == ten.pow(digits as u32) {
        m /= 10;
        e += 1;
    }
    let s = m.to_string();
    let body = if (-7..digits as i64).contains(&e) {
        if e >= 0 {
            let (int, frac) = s.split_at(e as usize + 1);
            if frac.is_empty() {
                int.to_string()
            } else {
                format!("{int}.{frac}")
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), s)
        }
    } else {
        let (lead, rest) = s.split_at(1);
        format!("{lead}.{rest}e{e}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn round_half_even(x: &BigRational) -> BigInt {
    let (q, r) = x.numer().div_mod_floor(x.denom());
    let twice: BigInt = r * 2;
    match twice.cmp(x.denom()) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn renders() {
        assert_eq!(to_sig_digits(&r(13, 20), 5), "0.65000");
        assert_eq!(to_sig_digits(&r(7, 1), 3), "7.00");
        assert_eq!(to_sig_digits(&r(-2, 3), 4), "-0.6667");
        assert_eq!(to_sig_digits(&r(1, 3000), 3), "0.000333");
        assert_eq!(to_sig_digits(&r(999_999, 1000), 3), "1.00e3");
        assert_eq!(to_sig_digits(&r(1, 1_000_000_000), 2), "1.0e-9");
        assert_eq!(to_sig_digits(&r(0, 1), 3), "0.00");
    }
}
