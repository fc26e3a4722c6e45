use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ZkError;
use crate::gauss::{gi_gcd, GaussInt};

/// An element of ℚ(i), kept as `num/den` with `gcd(num, den)` a unit and
/// `den` a canonical associate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub(crate) num: GaussInt,
    pub(crate) den: GaussInt,
}

impl GaussRat {
    pub fn new(num: GaussInt, den: GaussInt) -> Result<Self, ZkError> {
        if den.is_zero() {
            return Err(ZkError::domain("zero denominator"));
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: GaussInt, den: GaussInt) -> Self {
        if num.is_zero() {
            return GaussRat::zero();
        }
        // Clear the denominator to a rational integer first; integer gcds are cheap.
        let mut n = &num * &den.conj();
        let mut d = den.norm();
        let g = n.re.gcd(&n.im).gcd(&d);
        if !g.is_one() {
            n = GaussInt::new(&n.re / &g, &n.im / &g);
            d /= &g;
        }
        if d.is_one() {
            return GaussRat {
                num: n,
                den: GaussInt::one(),
            };
        }
        let dg = GaussInt::new(d, 0);
        let common = gi_gcd(&n, &dg).expect("denominator is nonzero");
        let n = n.div_exact(&common).expect("gcd divides numerator");
        let dd = dg.div_exact(&common).expect("gcd divides denominator");
        let (dc, k) = dd.canonical_with_unit();
        GaussRat {
            num: &n * &GaussInt::unit(-k),
            den: dc,
        }
    }

    pub fn zero() -> Self {
        GaussRat {
            num: GaussInt::zero(),
            den: GaussInt::one(),
        }
    }

    pub fn one() -> Self {
        GaussRat::from_int(GaussInt::one())
    }

    pub fn i() -> Self {
        GaussRat::from_int(GaussInt::i())
    }

    pub fn from_int(g: GaussInt) -> Self {
        GaussRat {
            num: g,
            den: GaussInt::one(),
        }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        GaussRat::from_int(GaussInt::new(re, im))
    }

    /// `(a/b) + (c/d)·i` from two rationals.
    pub fn from_parts(re: &BigRational, im: &BigRational) -> Self {
        let den = re.denom() * im.denom();
        let num = GaussInt::new(
            re.numer() * im.denom(),
            im.numer() * re.denom(),
        );
        Self::normalize(num, GaussInt::new(den, 0))
    }

    pub fn from_real(re: &BigRational) -> Self {
        Self::from_parts(re, &BigRational::zero())
    }

    pub fn num(&self) -> &GaussInt {
        &self.num
    }

    pub fn den(&self) -> &GaussInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one_int()
    }

    pub fn as_int(&self) -> Option<&GaussInt> {
        self.is_integral().then_some(&self.num)
    }

    /// `(Re, Im)` as rationals.
    pub fn parts(&self) -> (BigRational, BigRational) {
        let n = &self.num * &self.den.conj();
        let d = self.den.norm();
        (
            BigRational::new(n.re, d.clone()),
            BigRational::new(n.im, d),
        )
    }

    pub fn re(&self) -> BigRational {
        self.parts().0
    }

    pub fn im(&self) -> BigRational {
        self.parts().1
    }

    /// Squared modulus `|x|²`.
    pub fn norm(&self) -> BigRational {
        BigRational::new(self.num.norm(), self.den.norm())
    }

    pub fn conj(&self) -> Self {
        Self::normalize(self.num.conj(), self.den.conj())
    }

    pub fn inv(&self) -> Result<Self, ZkError> {
        if self.is_zero() {
            return Err(ZkError::domain("inverse of zero"));
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &GaussRat) -> Result<Self, ZkError> {
        if rhs.is_zero() {
            return Err(ZkError::domain("division by zero"));
        }
        Ok(Self::normalize(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn scale_int(&self, k: &GaussInt) -> Self {
        Self::normalize(&self.num * k, self.den.clone())
    }

    pub fn mul_rat(&self, k: &BigRational) -> Self {
        Self::normalize(
            self.num.scale(k.numer()),
            self.den.scale(k.denom()),
        )
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let (a, b) = self.parts();
        (rat_to_f64(&a), rat_to_f64(&b))
    }

    pub fn abs_f64(&self) -> f64 {
        let (a, b) = self.to_f64();
        a.hypot(b)
    }
}

/// Lossy conversion that survives numerators and denominators beyond `f64` range.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = nb - db - 60;
    let scaled = if shift > 0 {
        r.numer() / (r.denom() << (shift as usize))
    } else {
        (r.numer() << ((-shift) as usize)) / r.denom()
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
}

/// Compare `|a|` and `|b|` for Gaussian rationals exactly.
pub fn cmp_abs(a: &GaussRat, b: &GaussRat) -> Ordering {
    a.norm().cmp(&b.norm())
}

/// Round a rational to the nearest integer, exact halves to even.
pub fn round_half_even(x: &BigRational) -> BigInt {
    let fl = x.floor().to_integer();
    let frac = x - BigRational::from_integer(fl.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    match frac.cmp(&half) {
        Ordering::Less => fl,
        Ordering::Greater => fl + 1,
        Ordering::Equal => {
            if fl.is_even() {
                fl
            } else {
                fl + 1
            }
        }
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        if self.den == rhs.den {
            return GaussRat::normalize(&self.num + &rhs.num, self.den.clone());
        }
        GaussRat::normalize(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        self + &(-rhs)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: GaussRat) -> GaussRat {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: &'a GaussRat) -> GaussRat {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

impl From<GaussInt> for GaussRat {
    fn from(g: GaussInt) -> Self {
        GaussRat::from_int(g)
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    /// Renders as `a/b+c/d i`, omitting zero parts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.parts();
        match (re.is_zero(), im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rat(&re)),
            (true, false) => write!(f, "{} i", fmt_rat(&im)),
            (false, false) => {
                if im.is_negative() {
                    write!(f, "{}-{} i", fmt_rat(&re), fmt_rat(&-im))
                } else {
                    write!(f, "{}+{} i", fmt_rat(&re), fmt_rat(&im))
                }
            }
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for GaussRat {
    type Err = ZkError;
    fn from_str(s: &str) -> Result<Self, ZkError> {
        crate::parse::parse_gauss_rat(s)
    }
}

impl Serialize for GaussRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
