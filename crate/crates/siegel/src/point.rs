use std::fmt;

use carnot::Radical;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use zkernel::{GaussInt, GaussRat};

use crate::error::SiegelError;

/// A point `(u, v)` of Siegⁿ with Gaussian-rational coordinates on the
/// constraint `2·Re(v) = |u|²`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SiegelPoint {
    u: Vec<GaussRat>,
    v: GaussRat,
}

pub(crate) fn sq_norm(u: &[GaussRat]) -> BigRational {
    u.iter().map(|z| z.norm()).fold(BigRational::zero(), |a, b| a + b)
}

/// `⟨ū, u'⟩ = Σ conj(uⱼ)·u'ⱼ`.
fn hermitian(u: &[GaussRat], w: &[GaussRat]) -> GaussRat {
    u.iter()
        .zip(w)
        .map(|(a, b)| &a.conj() * b)
        .fold(GaussRat::zero(), |a, b| a + b)
}

impl SiegelPoint {
    pub fn new(u: Vec<GaussRat>, v: GaussRat) -> Result<Self, SiegelError> {
        if u.is_empty() {
            return Err(SiegelError::domain("Siegel points need n ≥ 1"));
        }
        let p = SiegelPoint { u, v };
        if p.v.re() * BigRational::from_integer(2.into()) != sq_norm(&p.u) {
            return Err(SiegelError::Constraint(p.to_string()));
        }
        Ok(p)
    }

    pub(crate) fn new_unchecked(u: Vec<GaussRat>, v: GaussRat) -> Self {
        debug_assert!(v.re() * BigRational::from_integer(2.into()) == sq_norm(&u));
        SiegelPoint { u, v }
    }

    pub fn from_ints(u: Vec<GaussInt>, v: GaussInt) -> Result<Self, SiegelError> {
        Self::new(u.into_iter().map(GaussRat::from).collect(), v.into())
    }

    /// The identity of Siegⁿ.
    pub fn origin(n: usize) -> Self {
        SiegelPoint {
            u: vec![GaussRat::zero(); n],
            v: GaussRat::zero(),
        }
    }

    /// Parses comma-separated Gaussian rationals `u₁, …, uₙ, v`.
    pub fn parse(s: &str) -> Result<Self, SiegelError> {
        let parts = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(zkernel::parse_gauss_rat)
            .collect::<Result<Vec<_>, _>>()?;
        if parts.len() < 2 {
            return Err(SiegelError::domain(format!("expected at least two coordinates in {s:?}")));
        }
        let mut u = parts;
        let v = u.pop().expect("nonempty");
        Self::new(u, v)
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn u(&self) -> &[GaussRat] {
        &self.u
    }

    pub fn v(&self) -> &GaussRat {
        &self.v
    }

    pub fn is_origin(&self) -> bool {
        self.v.is_zero()
    }

    /// Whether the point lies in Siegⁿ(ℤ).
    pub fn is_integral(&self) -> bool {
        self.v.is_integral() && self.u.iter().all(GaussRat::is_integral)
    }

    pub fn to_f64(&self) -> (Vec<(f64, f64)>, (f64, f64)) {
        (self.u.iter().map(GaussRat::to_f64).collect(), self.v.to_f64())
    }

    fn check_n(&self, other: &SiegelPoint) -> Result<(), SiegelError> {
        if self.n() != other.n() {
            return Err(SiegelError::Dimension {
                expected: self.n(),
                got: other.n(),
            });
        }
        Ok(())
    }

    /// `(u, v) * (u', v') = (u + u', v + v' + ⟨ū, u'⟩)`.
    pub fn mul(&self, h: &SiegelPoint) -> Result<SiegelPoint, SiegelError> {
        self.check_n(h)?;
        let u = self.u.iter().zip(&h.u).map(|(a, b)| a + b).collect();
        let v = &(&self.v + &h.v) + &hermitian(&self.u, &h.u);
        let out = SiegelPoint { u, v };
        // closure of the constraint is what pins down the law; keep it asserted
        if out.v.re() * BigRational::from_integer(2.into()) != sq_norm(&out.u) {
            return Err(SiegelError::Constraint(format!("product left the constraint: {out}")));
        }
        Ok(out)
    }

    /// `(u, v)⁻¹ = (−u, v̄)`.
    pub fn inv(&self) -> SiegelPoint {
        SiegelPoint {
            u: self.u.iter().map(|z| -z).collect(),
            v: self.v.conj(),
        }
    }

    /// Gauge norm `|v|^(1/2)`, kept exactly as `(|v|²)^(1/4)`.
    pub fn norm(&self) -> Radical {
        Radical::new(self.v.norm(), 4)
    }

    /// `d(g, h) = ‖g⁻¹ * h‖`.
    pub fn dist(&self, h: &SiegelPoint) -> Result<Radical, SiegelError> {
        Ok(self.inv().mul(h)?.norm())
    }

    /// Korányi inversion `(u, v) ↦ (−u/v, 1/v)`.
    pub fn koranyi_invert(&self) -> Result<SiegelPoint, SiegelError> {
        if self.v.is_zero() {
            return Err(SiegelError::domain("Korányi inversion is undefined at the origin"));
        }
        let w = self.v.inv()?;
        Ok(SiegelPoint::new_unchecked(
            self.u.iter().map(|z| -(z * &w)).collect(),
            w,
        ))
    }

    /// Dilation `δ_r(u, v) = (r·u, r²·v)`.
    pub fn dilate(&self, r: &BigRational) -> Result<SiegelPoint, SiegelError> {
        if !r.is_positive() {
            return Err(SiegelError::domain("dilation factor must be positive"));
        }
        let r2 = r * r;
        Ok(SiegelPoint::new_unchecked(
            self.u.iter().map(|z| z.mul_rat(r)).collect(),
            self.v.mul_rat(&r2),
        ))
    }
}

pub fn s_mul(g: &SiegelPoint, h: &SiegelPoint) -> Result<SiegelPoint, SiegelError> {
    g.mul(h)
}

pub fn s_norm(h: &SiegelPoint) -> Radical {
    h.norm()
}

pub fn s_dist(g: &SiegelPoint, h: &SiegelPoint) -> Result<Radical, SiegelError> {
    g.dist(h)
}

pub fn koranyi_invert(h: &SiegelPoint) -> Result<SiegelPoint, SiegelError> {
    h.koranyi_invert()
}

impl fmt::Display for SiegelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for z in &self.u {
            write!(f, "{z}, ")?;
        }
        write!(f, "{})", self.v)
    }
}

impl fmt::Debug for SiegelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for SiegelPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut v: Vec<String> = self.u.iter().map(|z| z.to_string()).collect();
        v.push(self.v.to_string());
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SiegelPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(d)?;
        SiegelPoint::parse(&parts.join(",")).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> SiegelPoint {
        SiegelPoint::parse(s).unwrap()
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn products() {
        assert_eq!(pt("0, 0").mul(&pt("0, i")).unwrap(), pt("0, i"));
        assert_eq!(pt("1+i, 1").mul(&pt("-1-i, 1")).unwrap(), pt("0, 0"));
        assert!(SiegelPoint::parse("1/3+2/5 i, 1/5").is_err());
        let u = GaussRat::from_i64(1, 2).mul_rat(&BigRational::new(1.into(), 3.into()));
        let v = GaussRat::from_parts(&(u.norm() / int(2)), &int(3));
        let g = SiegelPoint::new(vec![u], v).unwrap();
        assert_eq!(g.mul(&g.inv()).unwrap(), SiegelPoint::origin(1));
        assert_eq!(g.inv().mul(&g).unwrap(), SiegelPoint::origin(1));
    }

    #[test]
    fn norms_and_distances() {
        assert_eq!(pt("0, i").norm(), Radical::from_rational(int(1)));
        assert_eq!(pt("1+i, 1").norm(), Radical::from_rational(int(1)));
        let d = pt("0, i").dist(&pt("0, -i")).unwrap();
        assert_eq!(d, Radical::new(int(2), 2));
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(pt("0, i").koranyi_invert().unwrap(), pt("0, -i"));
        assert_eq!(pt("1+i, 1").koranyi_invert().unwrap(), pt("-1-i, 1"));
        assert_eq!(pt("1/3+1/3 i, 1/9").koranyi_invert().unwrap(), pt("-3-3i, 9"));
        assert!(pt("0, 0").koranyi_invert().is_err());
    }

    #[test]
    fn json_is_a_string_array() {
        let p = pt("1/3+1/3 i, 1/9");
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["1/3+1/3 i","1/9"]"#);
        assert_eq!(serde_json::from_str::<SiegelPoint>(&s).unwrap(), p);
    }
}
