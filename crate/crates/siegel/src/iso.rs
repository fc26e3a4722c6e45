use carnot::{CarnotPoint, CarnotSpec};
use num_rational::BigRational;
use zkernel::GaussRat;

use crate::error::SiegelError;
use crate::point::SiegelPoint;

/// The isometry `f(x, y, t) = ((x + iy)(1 + i), |x|² + |y|² + i·t)` from
/// the Carnot model of Heisᶰ onto Siegⁿ.
pub fn to_siegel(spec: &CarnotSpec, g: &CarnotPoint) -> Result<SiegelPoint, SiegelError> {
    let n = spec.heis_n().ok_or(carnot::CarnotError::NotHeisenberg)?;
    if g.coords.len() != 2 * n + 1 {
        return Err(SiegelError::Dimension {
            expected: 2 * n + 1,
            got: g.coords.len(),
        });
    }
    let (x, y, t) = (&g.coords[..n], &g.coords[n..2 * n], &g.coords[2 * n]);
    let u: Vec<GaussRat> = x
        .iter()
        .zip(y)
        .map(|(a, b)| GaussRat::from_parts(&(a - b), &(a + b)))
        .collect();
    let h: BigRational = x.iter().chain(y).map(|c| c * c).sum();
    Ok(SiegelPoint::new_unchecked(u, GaussRat::from_parts(&h, t)))
}

/// Inverse of [`to_siegel`]; the result lives in Heisᶰ with `n = h.n()`.
pub fn to_carnot(h: &SiegelPoint) -> CarnotPoint {
    let two = BigRational::from_integer(2.into());
    let mut xs = Vec::with_capacity(h.n());
    let mut ys = Vec::with_capacity(h.n());
    for z in h.u() {
        let (a, b) = z.parts();
        xs.push((&a + &b) / &two);
        ys.push((&b - &a) / &two);
    }
    xs.extend(ys);
    xs.push(h.v().im());
    CarnotPoint { coords: xs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let spec = CarnotSpec::heisenberg(1);
        let f = |s: &str| to_siegel(&spec, &CarnotPoint::parse(&spec, s).unwrap()).unwrap();
        assert_eq!(f("0,0,0"), SiegelPoint::origin(1));
        assert_eq!(f("1,0,0"), SiegelPoint::parse("1+i, 1").unwrap());
        assert_eq!(f("0,0,1"), SiegelPoint::parse("0, i").unwrap());
        let g = CarnotPoint::parse(&spec, "1/3, -2/7, 5/11").unwrap();
        assert_eq!(to_carnot(&to_siegel(&spec, &g).unwrap()), g);
    }
}
