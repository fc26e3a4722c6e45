use carnot::Radical;
use num_rational::BigRational;
use serde::Serialize;
use siegel::{siegel_height, RationalSiegelPoint, SiegelError, SiegelPoint};
use zkernel::gi_gcd;

use crate::error::CfError;
use crate::nearest::{nearest_sieg_int, require_n1, Digit};

/// One application of the Gauss map `T(h) = [ι(h)]⁻¹ * ι(h)`, returning
/// the digit `[ι(h)]` and the remainder; `None` at the fixed point `0`.
pub fn gauss_step(h: &SiegelPoint) -> Result<Option<(Digit, SiegelPoint)>, CfError> {
    require_n1(h)?;
    if h.is_origin() {
        return Ok(None);
    }
    let ih = h.koranyi_invert()?;
    let (digit, _) = nearest_sieg_int(&ih)?;
    let rem = digit.inv().mul(&ih)?;
    Ok(Some((digit, rem)))
}

/// Why an expansion stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CfStatus {
    /// A remainder reached the origin.
    Terminated,
    /// `max_digits` digits were produced.
    Truncated,
    /// Digit `index` changed when the surrogate precision doubled.
    Unstable { index: usize },
}

/// A (possibly truncated) Heisenberg continued fraction
/// `h = γ₀ * ι(γ₁ * ι(γ₂ * ⋯))`.
#[derive(Debug, Clone, Serialize)]
pub struct CfExpansion {
    pub gamma0: Digit,
    pub digits: Vec<Digit>,
    /// `h₀ = γ₀⁻¹ * h` and `hᵢ₊₁ = T(hᵢ)`; one more entry than `digits`.
    pub remainders: Vec<SiegelPoint>,
    /// Convergent `n` is the evaluation of `γ₀, …, γₙ` in lowest terms.
    pub convergents: Vec<RationalSiegelPoint>,
    pub terminated: bool,
    pub status: CfStatus,
    pub digit_bound: Radical,
    /// Surrogate precision (bits) at which each digit was confirmed; empty
    /// for exact inputs.
    pub precision_log: Vec<u32>,
}

/// Expands `h` until termination or `max_digits` digits.
pub fn expand(h: &SiegelPoint, max_digits: usize) -> Result<CfExpansion, CfError> {
    let (gamma0, digits, remainders) = raw_expand(h, max_digits)?;
    finish(gamma0, digits, remainders, Vec::new(), None)
}

fn raw_expand(h: &SiegelPoint, max_digits: usize) -> Result<(Digit, Vec<Digit>, Vec<SiegelPoint>), CfError> {
    require_n1(h)?;
    let (gamma0, _) = nearest_sieg_int(h)?;
    let mut rem = gamma0.inv().mul(h)?;
    let mut digits = Vec::new();
    let mut remainders = vec![rem.clone()];
    while digits.len() < max_digits {
        match gauss_step(&rem)? {
            None => break,
            Some((d, next)) => {
                digits.push(d);
                remainders.push(next.clone());
                rem = next;
            }
        }
    }
    Ok((gamma0, digits, remainders))
}

fn finish(
    gamma0: Digit,
    digits: Vec<Digit>,
    remainders: Vec<SiegelPoint>,
    precision_log: Vec<u32>,
    unstable: Option<usize>,
) -> Result<CfExpansion, CfError> {
    let terminated = unstable.is_none() && remainders.last().is_some_and(SiegelPoint::is_origin);
    let status = match unstable {
        Some(index) => CfStatus::Unstable { index },
        None if terminated => CfStatus::Terminated,
        None => CfStatus::Truncated,
    };
    let convergents = prefix_convergents(&gamma0, &digits)?;
    let mut exp = CfExpansion {
        gamma0,
        digits,
        remainders,
        convergents,
        terminated,
        status,
        digit_bound: Radical::zero(),
        precision_log,
    };
    exp.digit_bound = digit_bound(&exp);
    Ok(exp)
}

/// `γ₀ * ι(γ₁ * ι(⋯ ι(γₙ)))` in exact arithmetic.
pub fn evaluate(gamma0: &Digit, digits: &[Digit]) -> Result<SiegelPoint, CfError> {
    let mut acc: Option<SiegelPoint> = None;
    for (k, d) in digits.iter().enumerate().rev() {
        acc = Some(match acc {
            None => d.clone(),
            Some(x) => d.mul(&invert_suffix(&x, k + 2)?)?,
        });
    }
    match acc {
        None => Ok(gamma0.clone()),
        Some(x) => Ok(gamma0.mul(&invert_suffix(&x, 1)?)?),
    }
}

/// `ι` of the suffix evaluation starting at digit `γ_k` (1-based).
fn invert_suffix(x: &SiegelPoint, k: usize) -> Result<SiegelPoint, CfError> {
    x.koranyi_invert().map_err(|e| match e {
        SiegelError::Domain(_) => CfError::Domain(format!("digit suffix starting at index {k} evaluates to the origin")),
        e => e.into(),
    })
}

fn prefix_convergents(gamma0: &Digit, digits: &[Digit]) -> Result<Vec<RationalSiegelPoint>, CfError> {
    (0..=digits.len())
        .map(|n| {
            let c = siegel_height(&evaluate(gamma0, &digits[..n])?);
            check_lowest_terms(&c)?;
            Ok(c)
        })
        .collect()
}

fn check_lowest_terms(c: &RationalSiegelPoint) -> Result<(), CfError> {
    let mut g = c.q().clone();
    for x in c.p_vec() {
        g = gi_gcd(&g, x).map_err(SiegelError::from)?;
    }
    if !g.is_unit() {
        return Err(CfError::Domain(format!("convergent {c:?} is not in lowest terms")));
    }
    Ok(())
}

/// The convergents `(r_n, p_n, q_n)`, `n = 0, …, len(digits)`.
pub fn convergents(exp: &CfExpansion) -> &[RationalSiegelPoint] {
    &exp.convergents
}

/// Largest gauge norm among the digits `γ₁, γ₂, …`.
pub fn digit_bound(exp: &CfExpansion) -> Radical {
    exp.digits
        .iter()
        .map(SiegelPoint::norm)
        .fold(Radical::zero(), Radical::max)
}

/// `|q_n|·d(h, c_n)` for the `n`th convergent, exactly.
pub fn quality(h: &SiegelPoint, exp: &CfExpansion, n: usize) -> Result<Radical, CfError> {
    let c = exp
        .convergents
        .get(n)
        .ok_or_else(|| CfError::Domain(format!("expansion has no convergent {n}")))?;
    let d4 = c.dist4_from(h)?;
    let nq = BigRational::from_integer(c.norm_q() * c.norm_q());
    Ok(Radical::new(d4 * nq, 4))
}

/// Expansion of a point known only through exact surrogates: `surrogate(k)`
/// must return a rational point within `2⁻ᵏ` of the target. Digits are
/// kept while they agree at `k` and `2k`; precision doubles from
/// `start_bits` up to `max_bits`, after which the first disagreeing digit
/// is reported as unstable.
pub fn expand_surrogate<F>(surrogate: F, max_digits: usize, start_bits: u32, max_bits: u32) -> Result<CfExpansion, CfError>
where
    F: Fn(u32) -> Result<SiegelPoint, CfError>,
{
    let mut k = start_bits.max(1);
    let mut log: Vec<u32> = Vec::new();
    loop {
        let lo = raw_expand(&surrogate(k)?, max_digits)?;
        let hi = raw_expand(&surrogate(k.saturating_mul(2))?, max_digits)?;
        let agree_gamma0 = lo.0 == hi.0;
        let agree = if agree_gamma0 {
            lo.1.iter().zip(&hi.1).take_while(|(a, b)| a == b).count()
        } else {
            0
        };
        // the surrogates coincide to the end: nothing more to confirm
        let identical = agree_gamma0 && lo.1 == hi.1 && lo.2.last() == hi.2.last();
        while log.len() < agree {
            log.push(k);
        }
        if identical || agree >= max_digits {
            let (g0, mut digits, mut rems) = hi;
            digits.truncate(agree.min(max_digits));
            rems.truncate(digits.len() + 1);
            log.truncate(digits.len());
            return finish(g0, digits, rems, log, None);
        }
        if k.saturating_mul(2) > max_bits {
            if !agree_gamma0 {
                return Err(CfError::Domain(format!("integer part unstable at {} bits", k * 2)));
            }
            let (g0, mut digits, mut rems) = hi;
            digits.truncate(agree);
            rems.truncate(agree + 1);
            log.truncate(agree);
            return finish(g0, digits, rems, log, Some(agree));
        }
        k *= 2;
    }
}

/// Bits needed for `n` digits to be meaningful: the height grows by at
/// least a constant factor per digit.
pub fn suggested_bits(n: usize) -> u32 {
    (8 * n as u32).max(64)
}
