use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::CarnotError;
use crate::point::CarnotPoint;

/// One term `coeff · ∏ zⱼ^eⱼ` of a group-law polynomial. The exponent vector
/// runs over the coordinates of the left factor followed by those of the
/// right factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: i64,
    pub exponents: Vec<u32>,
}

impl Monomial {
    fn eval(&self, g: &[BigRational], h: &[BigRational]) -> BigRational {
        let mut acc = BigRational::from_integer(BigInt::from(self.coeff));
        for (z, &e) in g.iter().chain(h.iter()).zip(&self.exponents) {
            if e > 0 {
                if z.is_zero() {
                    return BigRational::zero();
                }
                acc *= num_traits::pow(z.clone(), e as usize);
            }
        }
        acc
    }
}

/// JSON form of a group specification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub layer_dims: Vec<usize>,
    /// Rational strings such as `"1"` or `"1/2"`, one per layer.
    pub weights: Vec<String>,
    /// One polynomial per coordinate of layers 2, 3, … in order.
    pub law_polynomials: Vec<Vec<Monomial>>,
}

/// A stratified group presented in exponential-type coordinates: layer `i`
/// of `g*h` is `gᵢ + hᵢ + pᵢ(lower layers of g and h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CarnotSpec {
    pub name: String,
    layer_dims: Vec<usize>,
    weights: Vec<BigRational>,
    law: Vec<Vec<Monomial>>,
    layer_of: Vec<usize>,
}

const AXIOM_TRIALS: usize = 64;

impl CarnotSpec {
    /// Builds and validates a spec, including randomized exact checks of the
    /// group axioms.
    pub fn new(
        name: impl Into<String>,
        layer_dims: Vec<usize>,
        weights: Vec<BigRational>,
        law: Vec<Vec<Monomial>>,
    ) -> Result<Self, CarnotError> {
        let spec = Self::structural(name.into(), layer_dims, weights, law)?;
        spec.check_axioms(AXIOM_TRIALS)?;
        Ok(spec)
    }

    fn structural(
        name: String,
        layer_dims: Vec<usize>,
        weights: Vec<BigRational>,
        law: Vec<Vec<Monomial>>,
    ) -> Result<Self, CarnotError> {
        let bad = |m: String| Err(CarnotError::InvalidSpec(m));
        if layer_dims.is_empty() || layer_dims.contains(&0) {
            return bad("layer dimensions must be positive".into());
        }
        if weights.len() != layer_dims.len() {
            return bad(format!(
                "{} weights given for {} layers",
                weights.len(),
                layer_dims.len()
            ));
        }
        if !weights[0].is_one() {
            return bad("the first weight must be 1".into());
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return bad("weights must be positive".into());
        }
        let layer_of: Vec<usize> = layer_dims
            .iter()
            .enumerate()
            .flat_map(|(i, &d)| std::iter::repeat(i + 1).take(d))
            .collect();
        let n = layer_of.len();
        if law.len() != n - layer_dims[0] {
            return bad(format!(
                "expected {} law polynomials, got {}",
                n - layer_dims[0],
                law.len()
            ));
        }
        for (k, poly) in law.iter().enumerate() {
            let coord = layer_dims[0] + k;
            let layer = layer_of[coord];
            for m in poly {
                if m.exponents.len() != 2 * n {
                    return bad(format!(
                        "monomial in polynomial {k} has {} exponents, expected {}",
                        m.exponents.len(),
                        2 * n
                    ));
                }
                let mut degree = 0;
                for (j, &e) in m.exponents.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let lj = layer_of[j % n];
                    if lj >= layer {
                        return bad(format!(
                            "polynomial for coordinate {coord} (layer {layer}) uses coordinate {} of layer {lj}",
                            j % n
                        ));
                    }
                    degree += e as usize * lj;
                }
                if degree != layer {
                    return bad(format!(
                        "monomial of weighted degree {degree} in layer {layer}; dilations would not be automorphisms"
                    ));
                }
            }
        }
        Ok(CarnotSpec {
            name,
            layer_dims,
            weights,
            law,
            layer_of,
        })
    }

    pub fn from_config(cfg: &SpecConfig) -> Result<Self, CarnotError> {
        let weights = cfg
            .weights
            .iter()
            .map(|w| zkernel::parse_rational(w))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(
            cfg.name.clone().unwrap_or_else(|| "custom".into()),
            cfg.layer_dims.clone(),
            weights,
            cfg.law_polynomials.clone(),
        )
    }

    pub fn from_json(text: &str) -> Result<Self, CarnotError> {
        let cfg: SpecConfig = serde_json::from_str(text)
            .map_err(|e| CarnotError::InvalidSpec(format!("malformed JSON: {e}")))?;
        Self::from_config(&cfg)
    }

    pub fn to_config(&self) -> SpecConfig {
        SpecConfig {
            name: Some(self.name.clone()),
            layer_dims: self.layer_dims.clone(),
            weights: self.weights.iter().map(|w| w.to_string()).collect(),
            law_polynomials: self.law.clone(),
        }
    }

    /// Heisᶰ with coordinates `(x₁…xₙ, y₁…yₙ, t)`, the law
    /// `t'' = t + t' + 2(x·y' − x'·y)` and vertical weight `λ₂`.
    pub fn heisenberg_weighted(n: usize, lambda2: BigRational) -> Self {
        let dim = 2 * n + 1;
        let mut poly = Vec::new();
        for j in 0..n {
            let mut e = vec![0; 2 * dim];
            e[j] = 1; // x_j of g
            e[dim + n + j] = 1; // y'_j of h
            poly.push(Monomial { coeff: 2, exponents: e });
            let mut e = vec![0; 2 * dim];
            e[dim + j] = 1; // x'_j of h
            e[n + j] = 1; // y_j of g
            poly.push(Monomial { coeff: -2, exponents: e });
        }
        let name = format!("heis{n}");
        Self::structural(
            name,
            vec![2 * n, 1],
            vec![BigRational::one(), lambda2],
            vec![poly],
        )
        .expect("built-in Heisenberg spec is well formed")
    }

    /// Heisᶰ with the default vertical weight `1/(2n)`.
    pub fn heisenberg(n: usize) -> Self {
        Self::heisenberg_weighted(n, BigRational::new(BigInt::one(), BigInt::from(2 * n)))
    }

    /// The Engel group in scaled exponential coordinates `(a, b, c, d)`:
    /// `c'' = c + c' + (ab' − a'b)` and
    /// `d'' = d + d' + 3(ac' − a'c) + (a − a')(ab' − a'b)`.
    /// Inverses are negation, so the infinity norm is symmetric.
    pub fn engel() -> Self {
        let m = |coeff, e: [u32; 8]| Monomial {
            coeff,
            exponents: e.to_vec(),
        };
        let law = vec![
            vec![m(1, [1, 0, 0, 0, 0, 1, 0, 0]), m(-1, [0, 1, 0, 0, 1, 0, 0, 0])],
            vec![
                m(3, [1, 0, 0, 0, 0, 0, 1, 0]),
                m(-3, [0, 0, 1, 0, 1, 0, 0, 0]),
                m(1, [2, 0, 0, 0, 0, 1, 0, 0]),
                m(-1, [1, 1, 0, 0, 1, 0, 0, 0]),
                m(-1, [1, 0, 0, 0, 1, 1, 0, 0]),
                m(1, [0, 1, 0, 0, 2, 0, 0, 0]),
            ],
        ];
        let w = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        Self::structural("engel".into(), vec![2, 1, 1], vec![w(1, 1), w(1, 2), w(1, 3)], law)
            .expect("built-in Engel spec is well formed")
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "heis1" => Some(Self::heisenberg(1)),
            "heis2" => Some(Self::heisenberg(2)),
            "engel" => Some(Self::engel()),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.layer_of.len()
    }

    pub fn steps(&self) -> usize {
        self.layer_dims.len()
    }

    pub fn layer_dims(&self) -> &[usize] {
        &self.layer_dims
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    /// Layer (1-based) of each coordinate.
    pub fn layer_of(&self) -> &[usize] {
        &self.layer_of
    }

    /// `Q = Σ i·nᵢ`.
    pub fn homogeneous_dim(&self) -> usize {
        self.layer_dims
            .iter()
            .enumerate()
            .map(|(i, d)| (i + 1) * d)
            .sum()
    }

    /// `B_Λ = 2ⁿ ∏ λᵢ^(−nᵢ)`, the volume of the unit ball of the weighted
    /// infinity norm.
    pub fn b_lambda(&self) -> BigRational {
        let mut acc = BigRational::from_integer(BigInt::one() << self.dim());
        for (w, &d) in self.weights.iter().zip(&self.layer_dims) {
            acc /= num_traits::pow(w.clone(), d);
        }
        acc
    }

    /// `n` when this is Heisᶰ with the standard law (any vertical weight).
    pub fn heis_n(&self) -> Option<usize> {
        if self.layer_dims.len() != 2 || self.layer_dims[1] != 1 || self.layer_dims[0] % 2 != 0 {
            return None;
        }
        let n = self.layer_dims[0] / 2;
        let reference = Self::heisenberg_weighted(n, self.weights[1].clone());
        (reference.law == self.law).then_some(n)
    }

    pub(crate) fn law_value(&self, coord: usize, g: &[BigRational], h: &[BigRational]) -> BigRational {
        let k = coord - self.layer_dims[0];
        self.law[k]
            .iter()
            .map(|m| m.eval(g, h))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Randomized exact check of associativity, identity and two-sided
    /// inverses; the error names a witness.
    pub fn check_axioms(&self, trials: usize) -> Result<(), CarnotError> {
        let mut rng = zkernel::rng::keyed_rng(0x5eed, "carnot-axioms", 0);
        let e = CarnotPoint::identity(self);
        for _ in 0..trials {
            let g = random_small_point(self, &mut rng);
            let h = random_small_point(self, &mut rng);
            let k = random_small_point(self, &mut rng);
            let lhs = self.mul(&self.mul(&g, &h)?, &k)?;
            let rhs = self.mul(&g, &self.mul(&h, &k)?)?;
            if lhs != rhs {
                return Err(CarnotError::InvalidSpec(format!(
                    "law is not associative: witness g={g}, h={h}, k={k}"
                )));
            }
            if self.mul(&e, &g)? != g || self.mul(&g, &e)? != g {
                return Err(CarnotError::InvalidSpec(format!(
                    "zero is not a two-sided identity: witness g={g}"
                )));
            }
            let gi = self.inv(&g)?;
            if self.mul(&gi, &g)? != e {
                return Err(CarnotError::InvalidSpec(format!(
                    "layerwise inverse is not a left inverse: witness g={g}"
                )));
            }
        }
        Ok(())
    }
}

/// Random point with small rational coordinates, used by axiom checks.
pub fn random_small_point<R: Rng>(spec: &CarnotSpec, rng: &mut R) -> CarnotPoint {
    let coords = (0..spec.dim())
        .map(|_| {
            BigRational::new(
                BigInt::from(rng.gen_range(-20i64..=20)),
                BigInt::from(rng.gen_range(1i64..=6)),
            )
        })
        .collect();
    CarnotPoint::new_unchecked(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_of_builtins() {
        let h1 = CarnotSpec::heisenberg(1);
        assert_eq!(h1.dim(), 3);
        assert_eq!(h1.homogeneous_dim(), 4);
        assert_eq!(h1.b_lambda(), BigRational::from_integer(16.into()));
        assert_eq!(h1.heis_n(), Some(1));
        let h2 = CarnotSpec::heisenberg(2);
        assert_eq!(h2.homogeneous_dim(), 6);
        assert_eq!(h2.heis_n(), Some(2));
        let e = CarnotSpec::engel();
        assert_eq!(e.homogeneous_dim(), 7);
        assert_eq!(e.heis_n(), None);
        for s in [h1, h2, e] {
            s.check_axioms(200).unwrap();
        }
    }

    #[test]
    fn config_roundtrip() {
        let s = CarnotSpec::engel();
        let json = serde_json::to_string(&s.to_config()).unwrap();
        assert_eq!(CarnotSpec::from_json(&json).unwrap(), s);
    }

    #[test]
    fn rejects_non_associative_law() {
        // t'' = t + t' + x'² is not a cocycle, unlike any bilinear term
        let mut cfg = CarnotSpec::heisenberg(1).to_config();
        cfg.law_polynomials[0] = vec![Monomial {
            coeff: 1,
            exponents: vec![0, 0, 0, 2, 0, 0],
        }];
        let err = CarnotSpec::from_config(&cfg).unwrap_err();
        assert!(err.to_string().contains("witness"), "{err}");
    }

    #[test]
    fn rejects_inhomogeneous_law() {
        let mut cfg = CarnotSpec::heisenberg(1).to_config();
        cfg.law_polynomials[0].push(Monomial {
            coeff: 1,
            exponents: vec![1, 0, 0, 0, 0, 0],
        });
        assert!(matches!(
            CarnotSpec::from_config(&cfg),
            Err(CarnotError::InvalidSpec(_))
        ));
    }
}
