use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ZkError;

/// An element `re + im·i` of the Gaussian integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        GaussInt::new(0, 0)
    }

    pub fn one() -> Self {
        GaussInt::new(1, 0)
    }

    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    /// `i^k` for any integer `k`.
    pub fn unit(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussInt::new(1, 0),
            1 => GaussInt::new(0, 1),
            2 => GaussInt::new(-1, 0),
            _ => GaussInt::new(0, -1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        GaussInt::new(self.re.clone(), -&self.im)
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        GaussInt::new(-&self.im, self.re.clone())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        GaussInt::new(&self.re * k, &self.im * k)
    }

    pub fn is_canonical(&self) -> bool {
        self.is_zero() || (self.re.is_positive() && !self.im.is_negative())
    }

    /// Returns `(c, k)` with `self = i^k · c` and `c` the canonical associate
    /// (`Re c > 0`, `Im c ≥ 0`); zero maps to `(0, 0)`.
    pub fn canonical_with_unit(&self) -> (GaussInt, i64) {
        if self.is_zero() {
            return (GaussInt::zero(), 0);
        }
        let mut c = self.clone();
        for k in 0..4 {
            if c.is_canonical() {
                return (c, k);
            }
            // multiply by -i, so self = i^(k+1) * c'
            c = GaussInt::new(c.im.clone(), -&c.re);
        }
        unreachable!("one associate is always canonical")
    }

    pub fn canonical(&self) -> GaussInt {
        self.canonical_with_unit().0
    }

    /// Quotient rounded to the nearest Gaussian integer, each component
    /// rounded with ties toward −∞.
    pub fn div_round(&self, d: &GaussInt) -> Result<GaussInt, ZkError> {
        if d.is_zero() {
            return Err(ZkError::domain("division by zero"));
        }
        let n = d.norm();
        let num = self * &d.conj();
        Ok(GaussInt::new(
            round_ties_down(&num.re, &n),
            round_ties_down(&num.im, &n),
        ))
    }

    /// Euclidean remainder paired with `div_round`; always `N(r) ≤ N(d)/2`.
    pub fn rem_round(&self, d: &GaussInt) -> Result<GaussInt, ZkError> {
        let q = self.div_round(d)?;
        Ok(self - &(&q * d))
    }

    /// Exact quotient when `d` divides `self`.
    pub fn div_exact(&self, d: &GaussInt) -> Option<GaussInt> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm();
        let num = self * &d.conj();
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        if rr.is_zero() && ri.is_zero() {
            Some(GaussInt::new(qr, qi))
        } else {
            None
        }
    }

    pub fn divides(&self, other: &GaussInt) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }

    pub fn pow(&self, e: u32) -> GaussInt {
        let mut acc = GaussInt::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn abs_f64(&self) -> f64 {
        let (a, b) = self.to_f64();
        a.hypot(b)
    }

    /// Small-integer view, when both parts fit in `i64`.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.re.to_i64()?, self.im.to_i64()?))
    }
}

/// `round(x / n)` for `n > 0` with exact halves rounded down.
fn round_ties_down(x: &BigInt, n: &BigInt) -> BigInt {
    // ceil((2x - n) / 2n)
    let two_n: BigInt = n * 2;
    let t: BigInt = x * 2 - n;
    -((-t).div_floor(&two_n))
}

/// Canonical greatest common divisor. Errors when both inputs are zero.
pub fn gi_gcd(a: &GaussInt, b: &GaussInt) -> Result<GaussInt, ZkError> {
    if a.is_zero() && b.is_zero() {
        return Err(ZkError::domain("gcd(0, 0) is undefined"));
    }
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let r = x.rem_round(&y)?;
        x = y;
        y = r;
    }
    Ok(x.canonical())
}

/// Canonical least common multiple; `lcm(0, x) = 0`.
pub fn gi_lcm(a: &GaussInt, b: &GaussInt) -> GaussInt {
    if a.is_zero() || b.is_zero() {
        return GaussInt::zero();
    }
    let g = gi_gcd(a, b).expect("nonzero inputs");
    (&a.div_exact(&g).expect("gcd divides") * b).canonical()
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a GaussInt> for &'a GaussInt {
            type Output = GaussInt;
            fn $m(self, rhs: &'a GaussInt) -> GaussInt {
                let f: fn(&GaussInt, &GaussInt) -> GaussInt = $body;
                f(self, rhs)
            }
        }
        impl $tr<GaussInt> for GaussInt {
            type Output = GaussInt;
            fn $m(self, rhs: GaussInt) -> GaussInt {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussInt> for GaussInt {
            type Output = GaussInt;
            fn $m(self, rhs: &'a GaussInt) -> GaussInt {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussInt::new(&a.re + &b.re, &a.im + &b.im));
forward_binop!(Sub, sub, |a, b| GaussInt::new(&a.re - &b.re, &a.im - &b.im));
forward_binop!(Mul, mul, |a, b| GaussInt::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-self.re, -self.im)
    }
}

impl Neg for &GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-&self.re, -&self.im)
    }
}

impl From<i64> for GaussInt {
    fn from(v: i64) -> Self {
        GaussInt::new(v, 0)
    }
}

impl From<(i64, i64)> for GaussInt {
    fn from(v: (i64, i64)) -> Self {
        GaussInt::new(v.0, v.1)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for GaussInt {
    type Err = ZkError;
    fn from_str(s: &str) -> Result<Self, ZkError> {
        let g = crate::parse::parse_gauss_rat(s)?;
        if g.den.is_one_int() {
            Ok(g.num)
        } else {
            Err(ZkError::parse(format!("{s:?} is not a Gaussian integer")))
        }
    }
}

impl GaussInt {
    pub(crate) fn is_one_int(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

impl Serialize for GaussInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
