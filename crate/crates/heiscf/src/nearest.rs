use carnot::Radical;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use siegel::SiegelPoint;
use zkernel::GaussInt;

use crate::error::CfError;

/// An element of Sieg¹(ℤ) used as a continued fraction digit.
pub type Digit = SiegelPoint;

pub(crate) fn require_n1(h: &SiegelPoint) -> Result<(), CfError> {
    if h.n() != 1 {
        return Err(CfError::Dimension(h.n()));
    }
    Ok(())
}

/// `d(h, γ)⁴` for `γ = (r, p)`: the product `γ⁻¹ * h` has vertical part
/// `v + p̄ − r̄·u`, whose real part is `|u − r|²/2` by the constraints.
fn dist4(u: (&BigRational, &BigRational), vi: &BigRational, x: &BigInt, y: &BigInt, ip: &BigInt) -> BigRational {
    let (ur, ui) = u;
    let (x, y, ip) = (BigRational::from_integer(x.clone()), BigRational::from_integer(y.clone()), BigRational::from_integer(ip.clone()));
    let dr = (ur - &x) * (ur - &x) + (ui - &y) * (ui - &y);
    let im = vi - &ip - (&x * ui - &y * ur);
    &dr * &dr / BigRational::from_integer(4.into()) + &im * &im
}

/// The lattice point of Sieg¹(ℤ) nearest to `h` with its distance. Ties
/// go to the lexicographically smallest `(Re r, Im r, Re p, Im p)`.
///
/// Lattice points have `r ∈ (1+i)ℤ[i]`, whose covering radius is 1, so the
/// best point is within `d⁴ ≤ 1/2`; that forces `|u − r| < 2` and the `r`
/// window below is exhaustive. For each `r` the distance is a convex
/// quadratic in `Im p`, minimized at one of the two integers around its
/// real optimum.
pub fn nearest_sieg_int(h: &SiegelPoint) -> Result<(Digit, Radical), CfError> {
    require_n1(h)?;
    let (ur, ui) = h.u()[0].parts();
    let vi = h.v().im();
    let two = BigRational::from_integer(2.into());
    let x0 = (&ur - &two).ceil().to_integer();
    let y0 = (&ui - &two).ceil().to_integer();
    let mut best: Option<(BigRational, [BigInt; 4])> = None;
    for dx in 0u32..5 {
        for dy in 0u32..5 {
            let x = &x0 + dx;
            let y = &y0 + dy;
            if !((&x - &y) % 2u32).is_zero() {
                continue;
            }
            let re_p: BigInt = (&x * &x + &y * &y) / 2u32;
            let opt = &vi - (BigRational::from_integer(x.clone()) * &ui - BigRational::from_integer(y.clone()) * &ur);
            let (fl, ce) = (opt.floor().to_integer(), opt.ceil().to_integer());
            let cands = if fl == ce { vec![fl] } else { vec![fl, ce] };
            for ip in cands {
                let d4 = dist4((&ur, &ui), &vi, &x, &y, &ip);
                let key = [x.clone(), y.clone(), re_p.clone(), ip];
                let better = match &best {
                    None => true,
                    Some((bd, bk)) => d4 < *bd || (d4 == *bd && key < *bk),
                };
                if better {
                    best = Some((d4, key));
                }
            }
        }
    }
    let (d4, [x, y, re_p, ip]) = best.expect("the window always contains lattice points");
    let digit = SiegelPoint::from_ints(vec![GaussInt::new(x, y)], GaussInt::new(re_p, ip))?;
    Ok((digit, Radical::new(d4, 4)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> SiegelPoint {
        SiegelPoint::parse(s).unwrap()
    }

    #[test]
    fn examples() {
        let (g, d) = nearest_sieg_int(&pt("0, -3i")).unwrap();
        assert_eq!(g, pt("0, -3i"));
        assert!(d.is_zero());
        let (g, d) = nearest_sieg_int(&pt("1+i, 1+1/10 i")).unwrap();
        assert_eq!(g, pt("1+i, 1"));
        assert_eq!(d, Radical::new(BigRational::new(1.into(), 100.into()), 4));
        let (g, _) = nearest_sieg_int(&pt("0, 1/3 i")).unwrap();
        assert_eq!(g, pt("0, 0"));
    }

    #[test]
    fn ties_break_lexicographically() {
        // (0, i/2) is equidistant from (0, 0) and (0, i)
        let (g, _) = nearest_sieg_int(&pt("0, 1/2 i")).unwrap();
        assert_eq!(g, pt("0, 0"));
        let (g, _) = nearest_sieg_int(&pt("0, -1/2 i")).unwrap();
        assert_eq!(g, pt("0, -i"));
    }
}
