//! Exact equilibrium analysis for a two-player traffic enforcement game.
//!
//! The police choose whether to enforce (`E`/`DE`) and the drivers whether
//! to speed (`S`/`DS`). The crate covers the one-shot game, sequential
//! versions as perfect-information trees, and infinitely repeated play
//! through strategy automata. All arithmetic is over arbitrary-precision
//! rationals.

pub mod catalog;
pub mod dynamics;
pub mod error;
pub mod extensive_form;
pub mod game_core;
mod linalg;
pub mod rational;
pub mod repeated;
pub mod synthesis;

pub use error::{Error, Result};
pub use rational::Rational;
