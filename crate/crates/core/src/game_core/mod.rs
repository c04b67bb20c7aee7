//! Two-player normal-form games: payoff tables, mixed strategies, expected
//! utilities and equilibrium enumeration.

mod equilibrium;
mod stage;

pub use equilibrium::{action_values, best_responses, expected_utility, mixed_nash_2x2, pure_nash};
pub(crate) use equilibrium::expected_from_distributions;
pub use stage::{ActionProfile, MixedStrategy, Player, StageGame};
