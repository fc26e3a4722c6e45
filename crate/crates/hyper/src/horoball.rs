use std::fmt;

use carnot::Radical;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use siegel::{RationalSiegelPoint, SiegelPoint};
use zkernel::GaussRat;

use crate::error::HyperError;

/// Horoheight `s = (Re v − |u|²/2)^(1/2)` of an interior point `(u, v)`.
pub fn horoheight(u: &[GaussRat], v: &GaussRat) -> Result<Radical, HyperError> {
    let half = BigRational::new(1.into(), 2.into());
    let u2 = u.iter().map(GaussRat::norm).fold(BigRational::zero(), |a, b| a + b);
    let s2 = v.re() - u2 * half;
    if !s2.is_positive() {
        return Err(HyperError::Domain(format!("({u:?}, {v}) is not an interior point")));
    }
    Ok(Radical::new(s2, 2))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HoroBase {
    Infinity,
    Point(SiegelPoint),
}

/// A horoball, kept with the square of its height so that every operation
/// stays in exact rational arithmetic. At `∞` it is `{s ≥ height}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Horoball {
    pub base: HoroBase,
    height_sq: BigRational,
}

impl Horoball {
    pub fn new(base: HoroBase, height_sq: BigRational) -> Result<Self, HyperError> {
        if !height_sq.is_positive() {
            return Err(HyperError::Domain("horoball height must be positive".into()));
        }
        Ok(Horoball { base, height_sq })
    }

    pub fn at_infinity(height: &BigRational) -> Result<Self, HyperError> {
        Self::new(HoroBase::Infinity, height * height)
    }

    pub fn at(base: SiegelPoint, height: &BigRational) -> Result<Self, HyperError> {
        Self::new(HoroBase::Point(base), height * height)
    }

    pub fn height(&self) -> Radical {
        Radical::new(self.height_sq.clone(), 2)
    }

    pub fn height_sq(&self) -> &BigRational {
        &self.height_sq
    }
}

impl fmt::Display for Horoball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            HoroBase::Infinity => write!(f, "(∞, √{})", self.height_sq),
            HoroBase::Point(p) => write!(f, "({p}, √{})", self.height_sq),
        }
    }
}

impl Serialize for Horoball {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Horoball", 2)?;
        st.serialize_field("base", &self.base)?;
        st.serialize_field("height", &self.height())?;
        st.end()
    }
}

/// Image under the Korányi inversion: `∞ ↔ 0` with the height inverted,
/// and a finite base `(u, v) ≠ 0` goes to `ι(u, v)` with height `s/|v|`.
pub fn invert_horoball(b: &Horoball) -> Result<Horoball, HyperError> {
    let inv = BigRational::one() / &b.height_sq;
    match &b.base {
        HoroBase::Infinity => Horoball::new(HoroBase::Point(SiegelPoint::origin(1)), inv),
        HoroBase::Point(p) if p.is_origin() => Horoball::new(HoroBase::Infinity, inv),
        HoroBase::Point(p) => {
            let h2 = &b.height_sq / p.v().norm();
            Horoball::new(HoroBase::Point(p.koranyi_invert()?), h2)
        }
    }
}

/// Left translation by `g`, an isometry fixing `∞` and all horoheights.
pub fn translate_horoball(g: &SiegelPoint, b: &Horoball) -> Result<Horoball, HyperError> {
    let base = match &b.base {
        HoroBase::Infinity => HoroBase::Infinity,
        HoroBase::Point(p) => HoroBase::Point(g.mul(p)?),
    };
    Horoball::new(base, b.height_sq.clone())
}

/// The horoheight of the Γ-invariant family at a rational point, by the
/// closed form `s₀/|q|` and by the continued fraction chain.
#[derive(Debug, Clone, Serialize)]
pub struct RationalHoroheight {
    pub height: Radical,
    /// `|v₀⋯v_{n−1}|`, as a square.
    #[serde(serialize_with = "ser_rat")]
    pub chain_product_sq: BigRational,
    pub chain_length: usize,
}

fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// The family member based at `0` has height `s₀`. Writing
/// `h = γ₀ * ι(γ₁ * ⋯ ι(γₙ))`, the ball at `0` is carried back to `h` by
/// alternating translations and inversions; each inversion at a remainder
/// `hᵢ` multiplies the height by `|vᵢ|`. The result must equal `s₀/|q|`.
pub fn rational_horoheight(h: &RationalSiegelPoint, s0: &BigRational) -> Result<RationalHoroheight, HyperError> {
    if h.n() != 1 {
        return Err(HyperError::Domain(format!("continued fractions need n = 1, got {}", h.n())));
    }
    if !s0.is_positive() {
        return Err(HyperError::Domain("s₀ must be positive".into()));
    }
    let point = h.point();
    let e = heiscf::expand(&point, usize::MAX)?;
    if !e.terminated {
        return Err(HyperError::Chain(format!("expansion of {point} did not terminate")));
    }
    // start from the ball at hₙ = 0 and walk back to h
    let mut ball = Horoball::at(SiegelPoint::origin(1), s0)?;
    for (i, digit) in e.digits.iter().enumerate().rev() {
        // hᵢ₊₁ = γᵢ₊₁⁻¹ * ι(hᵢ), so ι(hᵢ) = γᵢ₊₁ * hᵢ₊₁ and hᵢ = ι(γᵢ₊₁ * hᵢ₊₁)
        ball = translate_horoball(digit, &ball)?;
        if matches!(&ball.base, HoroBase::Point(p) if p.is_origin()) {
            return Err(HyperError::Chain(format!("inversion at the origin at step {i}")));
        }
        ball = invert_horoball(&ball)?;
        if ball.base != HoroBase::Point(e.remainders[i].clone()) {
            return Err(HyperError::Chain(format!("chain left the remainders at step {i}")));
        }
    }
    ball = translate_horoball(&e.gamma0, &ball)?;
    if ball.base != HoroBase::Point(point.clone()) {
        return Err(HyperError::Chain(format!("chain ended at {} instead of {point}", ball)));
    }
    let n = e.digits.len();
    let prod = e.remainders[..n]
        .iter()
        .fold(BigRational::one(), |acc, r| acc * r.v().norm());
    let closed = s0 * s0 / BigRational::from_integer(h.norm_q().clone());
    if ball.height_sq != closed || &prod * s0 * s0 != closed {
        return Err(HyperError::Chain(format!(
            "chain height² {} disagrees with s₀²/N(q) = {closed}",
            ball.height_sq
        )));
    }
    Ok(RationalHoroheight {
        height: Radical::new(closed, 2),
        chain_product_sq: prod,
        chain_length: n,
    })
}
