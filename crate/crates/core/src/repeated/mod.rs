//! Infinitely repeated play described by finite automata.

mod automaton;
mod values;
mod verify;

pub use automaton::{Automaton, AutomatonState, Signal, TopUp};
pub use values::{cycle_value, one_shot_payoff, repeated_payoff, solve_state_values, Discount, StateValues};
pub use verify::{verify, Classification, Verdict, Witness};
