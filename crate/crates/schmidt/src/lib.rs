//! Schmidt games on Sieg¹: admissible configurations, packing of balls,
//! White's strategy avoiding rational points, its verification, and
//! Cantor sets grown from the strategy.

mod ball;
mod cantor;
mod config;
mod error;
mod game;
mod regularity;

pub use ball::{box_point, packing_grid, packing_subballs, subball, GameBall, Role};
pub use cantor::{cantor_build, cantor_dimension, CantorNode, CantorTree};
pub use config::{GameConfig, Space};
pub use error::SchmidtError;
pub use game::{
    initial_ball, play, play_from, verify_report, verify_strategy, white_move, AdversarialBlack, BlackPlayer, BlackStrategy,
    GameRound, RandomBlack, Transcript, Verification, WhiteMove, INITIAL_BITS,
};
pub use regularity::{measure_regularity, RegularityEstimate, UNIT_BALL_VOLUME};
