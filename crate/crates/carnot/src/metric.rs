use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::CarnotError;
use crate::point::CarnotPoint;
use crate::spec::CarnotSpec;

/// The non-negative real `radicand^(1/root)`, kept exactly. Homogeneous
/// norms are roots of rationals, so this carries every distance in the
/// crate without rounding.
#[derive(Clone)]
pub struct Radical {
    pub radicand: BigRational,
    pub root: u32,
}

impl Radical {
    pub fn new(radicand: BigRational, root: u32) -> Self {
        assert!(root > 0 && !radicand.is_negative());
        Radical { radicand, root }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Radical::new(r.abs(), 1)
    }

    pub fn zero() -> Self {
        Radical::new(BigRational::zero(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.radicand.is_zero()
    }

    /// Same value with root `k·root`.
    pub fn with_root(&self, root: u32) -> Radical {
        assert_eq!(root % self.root, 0);
        Radical::new(
            num_traits::pow(self.radicand.clone(), (root / self.root) as usize),
            root,
        )
    }

    /// The value raised to the power `p`, exact when `root | p`.
    pub fn pow_rational(&self, p: u32) -> Option<BigRational> {
        (p % self.root == 0).then(|| num_traits::pow(self.radicand.clone(), (p / self.root) as usize))
    }

    /// Multiply by a non-negative rational.
    pub fn scale(&self, r: &BigRational) -> Radical {
        Radical::new(
            &self.radicand * num_traits::pow(r.abs(), self.root as usize),
            self.root,
        )
    }

    pub fn to_f64(&self) -> f64 {
        let v = zkernel::rat_to_f64(&self.radicand);
        if v > 0.0 {
            return v.powf(1.0 / self.root as f64);
        }
        if self.radicand.is_zero() {
            return 0.0;
        }
        // radicand below f64 range: go through logarithms of numerator and denominator
        let ln = big_ln(self.radicand.numer()) - big_ln(self.radicand.denom());
        (ln / self.root as f64).exp()
    }

    pub fn max(self, other: Radical) -> Radical {
        if self >= other {
            self
        } else {
            other
        }
    }
}

fn big_ln(n: &num_bigint::BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return zkernel::rat_to_f64(&BigRational::from_integer(n.clone())).ln();
    }
    let shift = bits - 60;
    let top = zkernel::rat_to_f64(&BigRational::from_integer(n >> shift as usize));
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

impl PartialEq for Radical {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Radical {}

impl PartialOrd for Radical {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Radical {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.root == other.root {
            return self.radicand.cmp(&other.radicand);
        }
        let l = self.root.lcm(&other.root);
        self.with_root(l).radicand.cmp(&other.with_root(l).radicand)
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root == 1 {
            write!(f, "{}", self.radicand)
        } else {
            write!(f, "({})^(1/{})", self.radicand, self.root)
        }
    }
}

impl fmt::Debug for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} ≈ {}", self.to_f64())
    }
}

impl Serialize for Radical {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Radical", 4)?;
        st.serialize_field("radicand", &self.radicand.to_string())?;
        st.serialize_field("root", &self.root)?;
        st.serialize_field("approx", &self.to_f64())?;
        st.serialize_field("provenance", "exact")?;
        st.end()
    }
}

impl CarnotSpec {
    /// `‖g‖∞ = maxᵢ |λᵢ·xᵢ|^(1/i)`, exact, with root `lcm(1..s)`.
    pub fn norm_inf(&self, g: &CarnotPoint) -> Result<Radical, CarnotError> {
        if g.coords.len() != self.dim() {
            return Err(CarnotError::Dimension {
                expected: self.dim(),
                got: g.coords.len(),
            });
        }
        let l = (1..=self.steps() as u32).fold(1u32, |a, b| a.lcm(&b));
        let mut best = BigRational::zero();
        for (c, &layer) in g.coords.iter().zip(self.layer_of()) {
            let v = (c * &self.weights()[layer - 1]).abs();
            let v = num_traits::pow(v, (l / layer as u32) as usize);
            if v > best {
                best = v;
            }
        }
        Ok(Radical::new(best, l))
    }

    /// `d∞(g, h) = ‖g⁻¹ * h‖∞`.
    pub fn dist_inf(&self, g: &CarnotPoint, h: &CarnotPoint) -> Result<Radical, CarnotError> {
        self.norm_inf(&self.mul(&self.inv(g)?, h)?)
    }

    /// Gauge norm `((|x|² + |y|²)² + t²)^(1/4)` on Heisᶰ.
    pub fn gauge_norm(&self, g: &CarnotPoint) -> Result<Radical, CarnotError> {
        let n = self.heis_n().ok_or(CarnotError::NotHeisenberg)?;
        if g.coords.len() != 2 * n + 1 {
            return Err(CarnotError::Dimension {
                expected: 2 * n + 1,
                got: g.coords.len(),
            });
        }
        let h: BigRational = g.coords[..2 * n]
            .iter()
            .map(|c| c * c)
            .fold(BigRational::zero(), |a, b| a + b);
        let t = &g.coords[2 * n];
        Ok(Radical::new(&h * &h + t * t, 4))
    }

    pub fn dist_gauge(&self, g: &CarnotPoint, h: &CarnotPoint) -> Result<Radical, CarnotError> {
        self.gauge_norm(&self.mul(&self.inv(g)?, h)?)
    }
}

pub fn c_norm_inf(spec: &CarnotSpec, g: &CarnotPoint) -> Result<Radical, CarnotError> {
    spec.norm_inf(g)
}

pub fn c_dist_inf(spec: &CarnotSpec, g: &CarnotPoint, h: &CarnotPoint) -> Result<Radical, CarnotError> {
    spec.dist_inf(g, h)
}

pub fn heis_gauge_norm(spec: &CarnotSpec, g: &CarnotPoint) -> Result<Radical, CarnotError> {
    spec.gauge_norm(g)
}
