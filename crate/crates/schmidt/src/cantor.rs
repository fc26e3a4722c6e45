use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::ball::{packing_subballs, GameBall, Role};
use crate::config::GameConfig;
use crate::error::SchmidtError;
use crate::game::white_move;

/// A Black ball, White's reply to it, and Black's continuations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CantorNode {
    pub ball: GameBall,
    pub white: Option<GameBall>,
    pub children: Vec<CantorNode>,
}

impl CantorNode {
    fn leaves(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(CantorNode::leaves).sum()
        }
    }

    fn chains(&self, prefix: &mut Vec<GameBall>, out: &mut Vec<Vec<GameBall>>) {
        prefix.push(self.ball.clone());
        match &self.white {
            Some(w) if !self.children.is_empty() => {
                prefix.push(w.clone());
                for c in &self.children {
                    c.chains(prefix, out);
                }
                prefix.pop();
            }
            _ => out.push(prefix.clone()),
        }
        prefix.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CantorTree {
    pub branching: usize,
    pub depth: u32,
    pub root: CantorNode,
    pub leaf_count: usize,
    /// `−log n / log(αβ)`.
    pub dimension_estimate: f64,
}

impl CantorTree {
    /// The ball sequence `B₁, W₁, B₂, …` from the root to every leaf.
    pub fn leaf_chains(&self) -> Vec<Vec<GameBall>> {
        let mut out = Vec::new();
        self.root.chains(&mut Vec::new(), &mut out);
        out
    }
}

fn grow(cfg: &GameConfig, ball: GameBall, n: usize, levels: u32) -> Result<CantorNode, SchmidtError> {
    if levels == 0 {
        return Ok(CantorNode {
            ball,
            white: None,
            children: Vec::new(),
        });
    }
    let w = white_move(cfg, &ball)?.ball;
    let subs = packing_subballs(&w, &cfg.beta)?;
    if subs.len() < n {
        return Err(SchmidtError::Infeasible(format!("{} sub-balls at ratio β, branching {n} requested", subs.len())));
    }
    let children = subs
        .into_iter()
        .take(n)
        .map(|s| GameBall {
            role: Role::Black,
            round_index: w.round_index + 1,
            ..s
        })
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|b| grow(cfg, b, n, levels - 1))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CantorNode {
        ball,
        white: Some(w),
        children,
    })
}

/// Every Black continuation among the first `n` packing sub-balls, with
/// White following the strategy on each branch, to `depth` rounds.
pub fn cantor_build(cfg: &GameConfig, root: GameBall, n: usize, depth: u32) -> Result<CantorTree, SchmidtError> {
    cfg.validate()?;
    if n == 0 {
        return Err(SchmidtError::Infeasible("branching must be positive".into()));
    }
    let root = grow(cfg, root, n, depth)?;
    Ok(CantorTree {
        branching: n,
        depth,
        leaf_count: root.leaves(),
        root,
        dimension_estimate: cantor_dimension(n, &(&cfg.alpha * &cfg.beta)),
    })
}

/// Dimension `−log n / log ratio` of the Cantor set with `n` children of
/// relative radius `ratio` per level.
pub fn cantor_dimension(n: usize, ratio: &BigRational) -> f64 {
    -(n as f64).ln() / zkernel::rat_to_f64(ratio).ln()
}
