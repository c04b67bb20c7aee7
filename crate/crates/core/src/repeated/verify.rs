use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::automaton::Automaton;
use super::values::{Discount, Model, StateValues};
use crate::error::Result;
use crate::game_core::{Player, StageGame};
use crate::rational::{format_decimal, Rational, RationalPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Classification {
    #[serde(rename = "SPE")]
    Spe,
    #[serde(rename = "NE_not_SPE")]
    NeNotSpe,
    #[serde(rename = "Not_NE")]
    NotNe,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Spe => "SPE",
            Classification::NeNotSpe => "NE_not_SPE",
            Classification::NotNe => "Not_NE",
        })
    }
}

/// A profitable one-shot deviation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub player: Player,
    pub player_name: String,
    pub state: String,
    pub action: String,
    /// Deviation payoff minus the state's compliant value.
    pub gain: Rational,
    /// Whether `state` is visited when everyone complies.
    pub on_path: bool,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}→{}", self.player_name, self.state, self.action)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub classification: Classification,
    pub witnesses: Vec<Witness>,
    /// Improvement each player's best response achieves over compliance at
    /// the initial state.
    pub best_response_gain: [Rational; 2],
    pub values: StateValues,
}

impl Verdict {
    pub fn witnesses_for(&self, player: Player) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(move |w| w.player == player)
    }

    pub fn is_nash(&self) -> bool {
        self.classification != Classification::NotNe
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.classification)?;
        for w in &self.witnesses {
            write!(f, "; witness {w}")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct WitnessWire<'a> {
    player: &'a str,
    state: &'a str,
    action: &'a str,
    gain: RationalPair,
    gain_decimal: String,
    on_path: bool,
}

#[derive(Serialize)]
struct VerdictWire<'a> {
    classification: Classification,
    summary: String,
    witnesses: Vec<WitnessWire<'a>>,
    best_response_gain: [RationalPair; 2],
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        VerdictWire {
            classification: self.classification,
            summary: self.to_string(),
            witnesses: self
                .witnesses
                .iter()
                .map(|w| WitnessWire {
                    player: &w.player_name,
                    state: &w.state,
                    action: &w.action,
                    gain: RationalPair(w.gain.clone()),
                    gain_decimal: format_decimal(&w.gain),
                    on_path: w.on_path,
                })
                .collect(),
            best_response_gain: self.best_response_gain.clone().map(RationalPair),
        }
        .serialize(serializer)
    }
}

/// Optimal values against the opponent's automaton play, by policy iteration
/// over {comply} ∪ pure actions at every state.
fn best_response_values(model: &Model<'_>, player: Player, compliant: &[Rational]) -> Vec<Rational> {
    let n = model.len();
    let actions = model.game.actions(player).len();
    let delta = model.delta.value();
    let options: Vec<Vec<(Rational, usize)>> = (0..n)
        .map(|s| {
            let mut opts = vec![(model.compliant_reward(s, player), model.compliant_next(s))];
            for k in 0..actions {
                opts.push((model.action_reward(s, player, k), model.action_next(s, player, k)));
            }
            opts
        })
        .collect();
    let mut choice = vec![0usize; n];
    let mut values = compliant.to_vec();
    loop {
        let mut changed = false;
        for s in 0..n {
            let q = |(r, t): &(Rational, usize)| model.delta.complement() * r + delta * &values[*t];
            let current = q(&options[s][choice[s]]);
            let (best_k, best_q) = options[s]
                .iter()
                .enumerate()
                .map(|(k, o)| (k, q(o)))
                .fold((choice[s], current.clone()), |acc, (k, v)| if v > acc.1 { (k, v) } else { acc });
            if best_q > current {
                choice[s] = best_k;
                changed = true;
            }
        }
        if !changed {
            return values;
        }
        let reward: Vec<Rational> = (0..n).map(|s| options[s][choice[s]].0.clone()).collect();
        let next: Vec<usize> = (0..n).map(|s| options[s][choice[s]].1).collect();
        values = model.plan_values(&reward, &next);
    }
}

/// Classifies an automaton profile on `game` at discount `delta`.
///
/// Every state is checked for profitable pure one-shot deviations by both
/// players; any such deviation rules out subgame perfection. Nash is decided
/// separately by each player's optimal deviation plan from the initial state.
pub fn verify(automaton: &Automaton, game: &StageGame, delta: &Discount) -> Result<Verdict> {
    let model = Model::new(automaton, game, delta)?;
    let values = model.values();
    let on_path = automaton.reachable_from_initial(true);
    let d = delta.value();
    let mut witnesses = Vec::new();
    for (s, state) in automaton.states().iter().enumerate() {
        for player in Player::BOTH {
            let v = values.at(player, s);
            for (k, action) in game.actions(player).iter().enumerate() {
                let deviation = delta.complement() * model.action_reward(s, player, k)
                    + d * values.at(player, model.action_next(s, player, k));
                let gain = deviation - v;
                if gain.is_positive() {
                    witnesses.push(Witness {
                        player,
                        player_name: game.player_name(player).to_string(),
                        state: state.id.clone(),
                        action: action.clone(),
                        gain,
                        on_path: on_path[s],
                    });
                }
            }
        }
    }
    let init = automaton.initial();
    let best_response_gain = Player::BOTH.map(|player| {
        let best = best_response_values(&model, player, values.of(player));
        let gain = &best[init] - values.at(player, init);
        debug_assert!(!gain.is_negative());
        gain
    });
    let classification = if best_response_gain.iter().any(|g| !g.is_zero()) {
        Classification::NotNe
    } else if witnesses.is_empty() {
        Classification::Spe
    } else {
        Classification::NeNotSpe
    };
    Ok(Verdict {
        classification,
        witnesses,
        best_response_gain,
        values,
    })
}
