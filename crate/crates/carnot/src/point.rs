use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CarnotError;
use crate::spec::CarnotSpec;

/// A point with exact rational coordinates, laid out layer by layer.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CarnotPoint {
    pub coords: Vec<BigRational>,
}

impl CarnotPoint {
    pub fn new(spec: &CarnotSpec, coords: Vec<BigRational>) -> Result<Self, CarnotError> {
        if coords.len() != spec.dim() {
            return Err(CarnotError::Dimension {
                expected: spec.dim(),
                got: coords.len(),
            });
        }
        Ok(CarnotPoint { coords })
    }

    pub(crate) fn new_unchecked(coords: Vec<BigRational>) -> Self {
        CarnotPoint { coords }
    }

    pub fn from_i64(spec: &CarnotSpec, coords: &[i64]) -> Result<Self, CarnotError> {
        Self::new(
            spec,
            coords.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        )
    }

    /// Parses comma-separated rationals such as `"1/3, 0, -2"`.
    pub fn parse(spec: &CarnotSpec, s: &str) -> Result<Self, CarnotError> {
        let coords = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(zkernel::parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(spec, coords)
    }

    pub fn identity(spec: &CarnotSpec) -> Self {
        CarnotPoint {
            coords: vec![BigRational::zero(); spec.dim()],
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Integer coordinates, if every coordinate is integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.is_integral()
            .then(|| self.coords.iter().map(|c| c.to_integer()).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(zkernel::rat_to_f64).collect()
    }
}

impl CarnotSpec {
    fn check(&self, g: &CarnotPoint) -> Result<(), CarnotError> {
        if g.coords.len() != self.dim() {
            return Err(CarnotError::Dimension {
                expected: self.dim(),
                got: g.coords.len(),
            });
        }
        Ok(())
    }

    /// Exact group product `g * h`.
    pub fn mul(&self, g: &CarnotPoint, h: &CarnotPoint) -> Result<CarnotPoint, CarnotError> {
        self.check(g)?;
        self.check(h)?;
        let n1 = self.layer_dims()[0];
        let coords = (0..self.dim())
            .map(|j| {
                let s = &g.coords[j] + &h.coords[j];
                if j < n1 {
                    s
                } else {
                    s + self.law_value(j, &g.coords, &h.coords)
                }
            })
            .collect();
        Ok(CarnotPoint { coords })
    }

    /// Inverse, solved layer by layer from `g * h = 0`.
    pub fn inv(&self, g: &CarnotPoint) -> Result<CarnotPoint, CarnotError> {
        self.check(g)?;
        let n1 = self.layer_dims()[0];
        let mut h = vec![BigRational::zero(); self.dim()];
        // lower layers of h are final before any coordinate that depends on them
        for j in 0..self.dim() {
            h[j] = if j < n1 {
                -&g.coords[j]
            } else {
                -&g.coords[j] - self.law_value(j, &g.coords, &h)
            };
        }
        Ok(CarnotPoint { coords: h })
    }

    /// `δ_r`: layer `i` scaled by `r^i`.
    pub fn dilate(&self, r: &BigRational, g: &CarnotPoint) -> Result<CarnotPoint, CarnotError> {
        self.check(g)?;
        if !r.is_positive() {
            return Err(CarnotError::Domain("dilation factor must be positive".into()));
        }
        let coords = g
            .coords
            .iter()
            .zip(self.layer_of())
            .map(|(c, &l)| c * num_traits::pow(r.clone(), l))
            .collect();
        Ok(CarnotPoint { coords })
    }
}

pub fn c_mul(spec: &CarnotSpec, g: &CarnotPoint, h: &CarnotPoint) -> Result<CarnotPoint, CarnotError> {
    spec.mul(g, h)
}

pub fn c_inv(spec: &CarnotSpec, g: &CarnotPoint) -> Result<CarnotPoint, CarnotError> {
    spec.inv(g)
}

pub fn c_dilate(spec: &CarnotSpec, r: &BigRational, g: &CarnotPoint) -> Result<CarnotPoint, CarnotError> {
    spec.dilate(r, g)
}

impl fmt::Display for CarnotPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for CarnotPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for CarnotPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CarnotPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let coords = v
            .iter()
            .map(|s| zkernel::parse_rational(s))
            .collect::<Result<_, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(CarnotPoint { coords })
    }
}
