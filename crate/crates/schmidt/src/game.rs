use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use siegel::{near_rationals, RationalSiegelPoint, Radius, SiegelPoint};
use zkernel::rng::keyed_rng;

use crate::ball::{big, box_point, packing_grid, packing_subballs, subball, GameBall, Role};
use crate::config::GameConfig;
use crate::error::SchmidtError;

/// Binary digits of the initial centre's Carnot coordinates.
pub const INITIAL_BITS: u32 = 32;

/// Bounds `[⌈R^(2(i−1))⌉, ⌈R^(2i)⌉)` on `N(q)` for the annulus
/// `R^(i−1) ≤ |q| < R^i`.
fn annulus(cfg: &GameConfig, i: u32) -> (BigInt, BigInt) {
    (big(&cfg.r_pow(2 * (i - 1))), big(&cfg.r_pow(2 * i)))
}

/// Rationals in the annulus of round `i` with `d(c, ·) ≤ ε/|q| + ρ`.
fn window(cfg: &GameConfig, center: &SiegelPoint, rho: &BigRational, i: u32) -> Result<Vec<RationalSiegelPoint>, SchmidtError> {
    let (lo, hi) = annulus(cfg, i);
    let radius = Radius::affine(cfg.epsilon.clone(), rho.clone())?;
    Ok(near_rationals(center, &radius, &lo, &hi)?.into_iter().map(|h| h.point).collect())
}

/// White's reply and the rational it steers away from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WhiteMove {
    pub ball: GameBall,
    pub candidate: Option<RationalSiegelPoint>,
}

/// White's strategy on Black's ball `Bᵢ`: find the rationals with
/// `R^(i−1) ≤ |q| < R^i` within `ε/|q| + rᵢ` of the centre (at most one
/// may exist), then take the first packing sub-ball of radius `α·rᵢ`
/// whose centre is farther than `ε/|q| + α·rᵢ` from it.
pub fn white_move(cfg: &GameConfig, black: &GameBall) -> Result<WhiteMove, SchmidtError> {
    let i = black.round_index;
    if i == 0 {
        return Err(SchmidtError::Rule("rounds are numbered from 1".into()));
    }
    let mut found = window(cfg, &black.center, &black.radius, i)?;
    if found.len() > 1 {
        return Err(SchmidtError::Uniqueness { round: i, candidates: found });
    }
    let candidate = found.pop();
    let grid = packing_grid(&cfg.alpha)?;
    let need = cfg.packing_bound(&cfg.alpha);
    if (grid.len() as u64) < need {
        return Err(SchmidtError::Infeasible(format!("{} sub-balls at ratio α, {need} required", grid.len())));
    }
    let keep_out = Radius::affine(cfg.epsilon.clone(), &cfg.alpha * &black.radius)?;
    for g in &grid {
        let ball = subball(black, &cfg.alpha, g, Role::White, i)?;
        let clear = match &candidate {
            None => true,
            Some(x) => !keep_out.contains(x.norm_q(), &x.dist4_from(&ball.center)?),
        };
        if clear {
            return Ok(WhiteMove { ball, candidate });
        }
    }
    Err(SchmidtError::Infeasible(format!("round {i}: every sub-ball meets the candidate's neighbourhood")))
}

/// Black's side of the game.
pub trait BlackPlayer {
    /// A ball of radius `β·ρ` inside White's ball, for round `white.round_index + 1`.
    fn choose(&mut self, cfg: &GameConfig, white: &GameBall) -> Result<GameBall, SchmidtError>;
}

/// Uniformly random packing sub-ball.
pub struct RandomBlack {
    pub rng: ChaCha8Rng,
}

impl BlackPlayer for RandomBlack {
    fn choose(&mut self, cfg: &GameConfig, white: &GameBall) -> Result<GameBall, SchmidtError> {
        let subs = packing_subballs(white, &cfg.beta)?;
        let mut b = subs[self.rng.gen_range(0..subs.len())].clone();
        b.role = Role::Black;
        b.round_index = white.round_index + 1;
        Ok(b)
    }
}

/// Heads for the lowest rational near White's ball whose height lies
/// below the next annulus bound, trying to trap White.
pub struct AdversarialBlack;

impl BlackPlayer for AdversarialBlack {
    fn choose(&mut self, cfg: &GameConfig, white: &GameBall) -> Result<GameBall, SchmidtError> {
        let next = white.round_index + 1;
        let radius = Radius::affine(BigRational::from_integer(0.into()), white.radius.clone())?;
        let target = near_rationals(&white.center, &radius, &BigInt::from(1), &annulus(cfg, next).1)?.into_iter().next();
        let subs = packing_subballs(white, &cfg.beta)?;
        let pick = match target {
            None => subs[0].clone(),
            Some(t) => {
                let mut best: Option<(BigRational, GameBall)> = None;
                for s in subs {
                    let d4 = t.point.dist4_from(&s.center)?;
                    if best.as_ref().map_or(true, |(b, _)| &d4 < b) {
                        best = Some((d4, s));
                    }
                }
                best.expect("at least one sub-ball").1
            }
        };
        Ok(GameBall {
            role: Role::Black,
            round_index: next,
            ..pick
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlackStrategy {
    Random,
    Adversarial,
}

impl BlackStrategy {
    pub fn player(self, seed: u64, game: u64) -> Box<dyn BlackPlayer> {
        match self {
            BlackStrategy::Random => Box::new(RandomBlack {
                rng: keyed_rng(seed, "schmidt.black", game),
            }),
            BlackStrategy::Adversarial => Box::new(AdversarialBlack),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GameRound {
    pub black_ball: GameBall,
    pub candidate: Option<RationalSiegelPoint>,
    pub white_ball: GameBall,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Transcript {
    pub initial: GameBall,
    pub rounds: Vec<GameRound>,
    /// Centre of the last ball, the approximation to the limit point.
    pub limit_center: SiegelPoint,
}

impl Transcript {
    /// `B₁, W₁, B₂, W₂, …` in order.
    pub fn balls(&self) -> Vec<GameBall> {
        if self.rounds.is_empty() {
            return vec![self.initial.clone()];
        }
        self.rounds
            .iter()
            .flat_map(|r| [r.black_ball.clone(), r.white_ball.clone()])
            .collect()
    }

    pub fn candidates(&self) -> usize {
        self.rounds.iter().filter(|r| r.candidate.is_some()).count()
    }
}

/// Black's first ball for game `game`: radius `r₁`, centre uniform in the
/// Carnot unit box.
pub fn initial_ball(cfg: &GameConfig, seed: u64, game: u64) -> GameBall {
    let mut rng = keyed_rng(seed, "schmidt.initial", game);
    GameBall {
        center: box_point(&mut rng, INITIAL_BITS),
        radius: cfg.r1.clone(),
        round_index: 1,
        role: Role::Black,
    }
}

fn check_black(cfg: &GameConfig, white: &GameBall, black: &GameBall) -> Result<(), SchmidtError> {
    let i = white.round_index + 1;
    if black.radius != cfg.black_radius(i) || black.round_index != i {
        return Err(SchmidtError::Rule(format!("Black's ball {i} has radius {} and index {}", black.radius, black.round_index)));
    }
    if !white.contains_ball(black)? {
        return Err(SchmidtError::Rule(format!("Black's ball {i} is not inside White's ball")));
    }
    Ok(())
}

/// Alternates Black and White for `rounds` rounds from `initial`.
pub fn play_from(cfg: &GameConfig, black: &mut dyn BlackPlayer, initial: GameBall, rounds: u32) -> Result<Transcript, SchmidtError> {
    cfg.validate()?;
    if initial.radius != cfg.r1 || initial.round_index != 1 {
        return Err(SchmidtError::Rule("the first ball must have radius r₁ and index 1".into()));
    }
    let mut out = Vec::with_capacity(rounds as usize);
    let mut current = initial.clone();
    for k in 1..=rounds {
        let w = white_move(cfg, &current)?;
        out.push(GameRound {
            black_ball: current.clone(),
            candidate: w.candidate,
            white_ball: w.ball.clone(),
        });
        if k < rounds {
            let next = black.choose(cfg, &w.ball)?;
            check_black(cfg, &w.ball, &next)?;
            current = next;
        }
    }
    let limit_center = out.last().map_or(initial.center.clone(), |r| r.white_ball.center.clone());
    Ok(Transcript {
        initial,
        rounds: out,
        limit_center,
    })
}

/// Game number `game` under `seed` against the given Black strategy.
pub fn play(cfg: &GameConfig, strategy: BlackStrategy, rounds: u32, seed: u64, game: u64) -> Result<Transcript, SchmidtError> {
    let mut black = strategy.player(seed, game);
    play_from(cfg, black.as_mut(), initial_ball(cfg, seed, game), rounds)
}

/// Outcome of replaying a ball sequence against the rules and White's
/// guarantee.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Checks a sequence `B₁, W₁, B₂, …`: indices and radii, nesting, and for
/// every White ball `Wᵢ` that each rational with `R^(i−1) ≤ |q| < R^i`
/// satisfies `d(c(Wᵢ), p/q) > ε/|q| + ρ(Wᵢ)`, hence `d(Wᵢ, p/q) > ε/|q|`.
/// Smaller heights are covered by nesting, as `Wᵢ ⊆ Wⱼ` for `j < i`.
pub fn verify_report(cfg: &GameConfig, seq: &[GameBall]) -> Verification {
    let mut failures = Vec::new();
    for (k, b) in seq.iter().enumerate() {
        let i = (k / 2) as u32 + 1;
        let (role, radius) = if k % 2 == 0 {
            (Role::Black, cfg.black_radius(i))
        } else {
            (Role::White, &cfg.alpha * cfg.black_radius(i))
        };
        if b.role != role || b.round_index != i || b.radius != radius {
            failures.push(format!("ball {k}: expected {role:?} ball of round {i} with radius {radius}"));
            continue;
        }
        if k > 0 {
            match seq[k - 1].contains_ball(b) {
                Ok(true) => {}
                Ok(false) => failures.push(format!("ball {k} is not nested in ball {}", k - 1)),
                Err(e) => failures.push(format!("ball {k}: {e}")),
            }
        }
        if role == Role::White {
            match window(cfg, &b.center, &b.radius, i) {
                Ok(v) if v.is_empty() => {}
                Ok(v) => failures.push(format!("round {i}: White's ball is within ε/|q| of {:?}", v[0])),
                Err(e) => failures.push(format!("round {i}: {e}")),
            }
        }
    }
    Verification {
        ok: failures.is_empty(),
        failures,
    }
}

pub fn verify_strategy(seq: &[GameBall], cfg: &GameConfig) -> bool {
    verify_report(cfg, seq).ok
}
