use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::SchmidtError;

pub(crate) mod rat_str {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        zkernel::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// The set the game is played on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    /// Sieg¹ with Haar measure normalised so that unit balls have measure
    /// 1; the first ball is centred in the image of the Carnot unit box.
    #[default]
    UnitBox,
}

/// Parameters of an `(α, β)` game together with the strategy constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameConfig {
    #[serde(with = "rat_str")]
    pub alpha: BigRational,
    #[serde(with = "rat_str")]
    pub beta: BigRational,
    #[serde(with = "rat_str")]
    pub epsilon: BigRational,
    #[serde(with = "rat_str")]
    pub r1: BigRational,
    /// Ahlfors regularity constant.
    #[serde(rename = "L", with = "rat_str")]
    pub l: BigRational,
    /// Ahlfors regularity exponent.
    pub delta: u32,
    #[serde(default)]
    pub space: Space,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Default for GameConfig {
    /// `α = 1/16`, `β = 1/4`, `r₁ = 1/200`, `ε = α·r₁/100`, `L = 1`, `δ = 4`.
    fn default() -> Self {
        let alpha = rat(1, 16);
        let r1 = rat(1, 200);
        GameConfig {
            epsilon: &alpha * &r1 / BigRational::from_integer(100.into()),
            alpha,
            beta: rat(1, 4),
            r1,
            l: BigRational::one(),
            delta: 4,
            space: Space::UnitBox,
        }
    }
}

impl GameConfig {
    /// `R = (αβ)⁻¹`.
    pub fn big_r(&self) -> BigRational {
        (&self.alpha * &self.beta).recip()
    }

    /// `R^k`.
    pub fn r_pow(&self, k: u32) -> BigRational {
        num_traits::pow(self.big_r(), k as usize)
    }

    /// Radius of Black's `i`-th ball, `r₁·R^(1−i)`.
    pub fn black_radius(&self, i: u32) -> BigRational {
        &self.r1 / self.r_pow(i.saturating_sub(1))
    }

    /// Every violated admissibility condition, named by its inequality.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        let one = BigRational::one();
        let open_unit = |x: &BigRational| x.is_positive() && x < &one;
        if !open_unit(&self.alpha) {
            out.push(format!("0 < α < 1 fails for α = {}", self.alpha));
        }
        if !open_unit(&self.beta) {
            out.push(format!("0 < β < 1 fails for β = {}", self.beta));
        }
        if !self.epsilon.is_positive() {
            out.push(format!("ε > 0 fails for ε = {}", self.epsilon));
        }
        if !self.r1.is_positive() {
            out.push(format!("r₁ > 0 fails for r₁ = {}", self.r1));
        }
        if self.l < one {
            out.push(format!("L ≥ 1 fails for L = {}", self.l));
        }
        if self.delta == 0 {
            out.push("δ > 0 fails".into());
        }
        if self.alpha.is_positive() {
            let twelve_alpha = &self.alpha * BigRational::from_integer(12.into());
            let lhs = num_traits::pow(self.l.clone(), 4) * num_traits::pow(twelve_alpha, self.delta as usize);
            if lhs >= one {
                out.push(format!("1 > L⁴·(12α)^δ fails: L⁴·(12α)^δ = {lhs}"));
            }
        }
        let two = BigRational::from_integer(2.into());
        let lhs = &two * &self.r1 + &two * &self.epsilon;
        let ab = &self.alpha * &self.beta;
        if lhs >= ab {
            out.push(format!("2·r₁ + 2·ε < α·β fails: {lhs} ≥ {ab}"));
        }
        out
    }

    pub fn validate(&self) -> Result<(), SchmidtError> {
        let d = self.diagnostics();
        if d.is_empty() {
            Ok(())
        } else {
            Err(SchmidtError::Config(d.join("; ")))
        }
    }

    /// `⌈L⁻²·(6·ratio)^(−δ)⌉`, the number of disjoint sub-balls of relative
    /// radius `ratio` that every ball must contain.
    pub fn packing_bound(&self, ratio: &BigRational) -> u64 {
        let six = BigRational::from_integer(6.into());
        let denom = num_traits::pow(self.l.clone(), 2) * num_traits::pow(six * ratio, self.delta as usize);
        if denom.is_zero() {
            return u64::MAX;
        }
        let v = denom.recip().ceil().to_integer();
        u64::try_from(v).unwrap_or(u64::MAX)
    }
}
