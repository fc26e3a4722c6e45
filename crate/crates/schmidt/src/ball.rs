use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use siegel::SiegelPoint;
use zkernel::GaussInt;

use crate::config::rat_str;
use crate::error::SchmidtError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Black,
    White,
}

/// A closed gauge ball of Sieg¹ chosen in round `round_index`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GameBall {
    pub center: SiegelPoint,
    #[serde(with = "rat_str")]
    pub radius: BigRational,
    pub round_index: u32,
    pub role: Role,
}

impl GameBall {
    /// Sufficient test for `other ⊆ self`: `d(c, c') + ρ' ≤ ρ`, exact.
    pub fn contains_ball(&self, other: &GameBall) -> Result<bool, SchmidtError> {
        let slack = &self.radius - &other.radius;
        if slack.is_negative() {
            return Ok(false);
        }
        let d4 = self.center.dist(&other.center)?.pow_rational(4).expect("gauge distances have rational fourth powers");
        Ok(d4 <= num_traits::pow(slack, 4))
    }
}

/// Spacing factor: grid cells are `2·ratio·ρ·(1 + 1/1024)` apart, strictly
/// more than twice the sub-ball radius.
fn spacing(radius: &BigRational, ratio: &BigRational) -> BigRational {
    BigRational::from_integer(2.into()) * ratio * radius * BigRational::new(1025.into(), 1024.into())
}

/// Lattice points `g` of Sieg¹(ℤ) with `‖g‖⁴ = |p|² ≤ bound`, ordered by
/// norm and then coordinates.
fn lattice_points(bound: &BigRational) -> Vec<SiegelPoint> {
    let m = bound.to_f64().unwrap_or(0.0).sqrt().sqrt().floor() as i64 + 1;
    let mut pts: Vec<(i64, i64, i64, i64)> = Vec::new();
    for x in -2 * m..=2 * m {
        for y in -2 * m..=2 * m {
            // r ∈ (1+i)ℤ[i] and Re p = |r|²/2
            if (x - y) % 2 != 0 || x * x + y * y > 2 * m {
                continue;
            }
            let re = (x * x + y * y) / 2;
            for im in -m..=m {
                let n = re * re + im * im;
                if BigRational::from_integer(n.into()) <= *bound {
                    pts.push((n, x, y, im));
                }
            }
        }
    }
    pts.sort();
    pts.into_iter()
        .map(|(_, x, y, im)| {
            let re = (x * x + y * y) / 2;
            SiegelPoint::from_ints(vec![GaussInt::new(x, y)], GaussInt::new(re, im)).expect("lattice point")
        })
        .collect()
}

/// The lattice displacements that [`packing_subballs`] places, lazily
/// turned into centres by callers that stop at the first usable one.
pub fn packing_grid(ratio: &BigRational) -> Result<Vec<SiegelPoint>, SchmidtError> {
    if !ratio.is_positive() || ratio > &BigRational::one() {
        return Err(SchmidtError::Config(format!("sub-ball ratio {ratio} is not in (0, 1]")));
    }
    // s·‖g‖ + ratio·ρ ≤ ρ with s = 2·ratio·ρ·(1025/1024)
    let q = (BigRational::one() - ratio) / (BigRational::from_integer(2.into()) * ratio * BigRational::new(1025.into(), 1024.into()));
    Ok(lattice_points(&num_traits::pow(q, 4)))
}

/// Centre of the sub-ball of `ball` displaced by the grid point `g`.
pub fn subball(ball: &GameBall, ratio: &BigRational, g: &SiegelPoint, role: Role, round_index: u32) -> Result<GameBall, SchmidtError> {
    let center = ball.center.mul(&g.dilate(&spacing(&ball.radius, ratio))?)?;
    Ok(GameBall {
        center,
        radius: ratio * &ball.radius,
        round_index,
        role,
    })
}

/// Pairwise disjoint balls of radius `ratio·ρ` inside `ball`, centred at
/// `c * δ_s(g)` for lattice points `g`. Distinct lattice points are at
/// gauge distance at least 1, so centres are more than `2·ratio·ρ` apart;
/// containment follows from `s·‖g‖ + ratio·ρ ≤ ρ`. A ratio of 1 returns
/// the ball itself.
pub fn packing_subballs(ball: &GameBall, ratio: &BigRational) -> Result<Vec<GameBall>, SchmidtError> {
    packing_grid(ratio)?
        .iter()
        .map(|g| subball(ball, ratio, g, ball.role, ball.round_index))
        .collect()
}

/// Uniform point of the Carnot unit box `[0, 1)³` with `bits`-bit dyadic
/// coordinates, carried to Sieg¹.
pub fn box_point<R: rand::RngCore>(rng: &mut R, bits: u32) -> SiegelPoint {
    let coords: Vec<BigRational> = (0..3).map(|_| zkernel::rng::uniform_dyadic(rng, bits)).collect();
    let spec = carnot::CarnotSpec::heisenberg(1);
    let g = carnot::CarnotPoint::new(&spec, coords).expect("three coordinates");
    siegel::to_siegel(&spec, &g).expect("Heis¹ point")
}

pub(crate) fn big(n: &BigRational) -> BigInt {
    n.ceil().to_integer()
}
