use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use indexmap::IndexMap;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game_core::{ActionProfile, MixedStrategy, Player, StageGame};
use crate::rational::{format_exact, RationalPair, Rational};

/// What the automaton observes at the end of a period.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signal {
    Compliant,
    Deviated { player: Player, action: String },
}

impl Signal {
    pub fn deviated(player: Player, action: impl Into<String>) -> Self {
        Signal::Deviated {
            player,
            action: action.into(),
        }
    }

    /// Wire key: `compliant` or `deviated:PLAYER:ACTION`.
    pub fn key(&self, players: &[String; 2]) -> String {
        match self {
            Signal::Compliant => "compliant".to_string(),
            Signal::Deviated { player, action } => {
                format!("deviated:{}:{action}", players[player.index()])
            }
        }
    }

    pub fn parse_key(key: &str, players: &[String; 2]) -> Result<Self> {
        if key == "compliant" {
            return Ok(Signal::Compliant);
        }
        let bad = || Error::InvalidAutomaton(format!("cannot parse signal `{key}`"));
        let rest = key.strip_prefix("deviated:").ok_or_else(bad)?;
        let (name, action) = rest.split_once(':').ok_or_else(bad)?;
        let player = Player::BOTH
            .into_iter()
            .find(|p| players[p.index()] == name)
            .ok_or_else(|| Error::InvalidAutomaton(format!("signal `{key}` names unknown player `{name}`")))?;
        Ok(Signal::deviated(player, action))
    }
}

/// Extra stage payoff paid to `player` whenever they play `action` in the
/// state carrying the top-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopUp {
    pub player: Player,
    pub action: String,
    pub amount: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomatonState {
    pub id: String,
    /// Prescribed mixture for the first and second player.
    pub prescription: [MixedStrategy; 2],
    pub top_ups: Vec<TopUp>,
}

impl AutomatonState {
    pub fn new(id: impl Into<String>, first: MixedStrategy, second: MixedStrategy) -> Self {
        AutomatonState {
            id: id.into(),
            prescription: [first.with_owner(Player::First), second.with_owner(Player::Second)],
            top_ups: Vec::new(),
        }
    }

    pub fn pure(id: impl Into<String>, first: &str, second: &str) -> Self {
        AutomatonState::new(
            id,
            MixedStrategy::pure(Player::First, first),
            MixedStrategy::pure(Player::Second, second),
        )
    }

    pub fn with_top_up(mut self, top_up: TopUp) -> Self {
        self.top_ups.push(top_up);
        self
    }
}

/// A repeated-game strategy profile as a finite automaton: states with their
/// prescribed play, an initial state, and transitions on [`Signal`]s.
///
/// A player is judged compliant when the degenerate mixture of the action
/// they played lies within `tolerance` (per action, absolute difference) of
/// their prescription. With the default tolerance of zero, any pure action
/// under a genuinely mixed prescription counts as a deviation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AutomatonWire", into = "AutomatonWire")]
pub struct Automaton {
    players: [String; 2],
    states: Vec<AutomatonState>,
    initial: usize,
    transitions: Vec<BTreeMap<Signal, usize>>,
    tolerance: Rational,
}

impl Automaton {
    pub fn new<'a>(
        players: [String; 2],
        states: Vec<AutomatonState>,
        initial: &str,
        transitions: impl IntoIterator<Item = (&'a str, Signal, &'a str)>,
        tolerance: Rational,
    ) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidAutomaton("automaton has no states".into()));
        }
        if tolerance.is_negative() {
            return Err(Error::InvalidAutomaton("tolerance must be non-negative".into()));
        }
        for (k, s) in states.iter().enumerate() {
            if states[..k].iter().any(|o| o.id == s.id) {
                return Err(Error::InvalidAutomaton(format!("state `{}` declared twice", s.id)));
            }
        }
        let index = |id: &str| {
            states
                .iter()
                .position(|s| s.id == id)
                .ok_or_else(|| Error::InvalidAutomaton(format!("unknown state `{id}`")))
        };
        let initial = index(initial)?;
        let mut table = vec![BTreeMap::new(); states.len()];
        for (from, signal, to) in transitions {
            let (f, t) = (index(from)?, index(to)?);
            if table[f].insert(signal.clone(), t).is_some() {
                return Err(Error::InvalidAutomaton(format!(
                    "state `{from}` has two transitions on `{}`",
                    signal.key(&players)
                )));
            }
        }
        for (s, row) in states.iter().zip(&table) {
            if !row.contains_key(&Signal::Compliant) {
                return Err(Error::InvalidAutomaton(format!(
                    "state `{}` has no compliant transition",
                    s.id
                )));
            }
        }
        let automaton = Automaton {
            players,
            states,
            initial,
            transitions: table,
            tolerance,
        };
        let reachable = automaton.reachable_from_initial(false);
        if let Some(k) = reachable.iter().position(|r| !r) {
            return Err(Error::InvalidAutomaton(format!(
                "state `{}` is unreachable from the initial state",
                automaton.states[k].id
            )));
        }
        Ok(automaton)
    }

    pub fn players(&self) -> &[String; 2] {
        &self.players
    }

    pub fn states(&self) -> &[AutomatonState] {
        &self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn tolerance(&self) -> &Rational {
        &self.tolerance
    }

    pub fn state_index(&self, id: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s.id == id)
            .ok_or_else(|| Error::InvalidAutomaton(format!("unknown state `{id}`")))
    }

    pub fn transitions(&self, state: usize) -> &BTreeMap<Signal, usize> {
        &self.transitions[state]
    }

    pub fn next_state(&self, state: usize, signal: &Signal) -> Result<usize> {
        self.transitions[state].get(signal).copied().ok_or_else(|| {
            Error::InvalidAutomaton(format!(
                "state `{}` has no transition on `{}`",
                self.states[state].id,
                signal.key(&self.players)
            ))
        })
    }

    /// Reachability from the initial state, over every declared signal or
    /// (with `compliant_only`) along the compliant path alone.
    pub fn reachable_from_initial(&self, compliant_only: bool) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(s) = queue.pop_front() {
            for (signal, &t) in &self.transitions[s] {
                if compliant_only && *signal != Signal::Compliant {
                    continue;
                }
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// Signal produced when `player` plays the pure `action` in `state`.
    pub fn classify(&self, game: &StageGame, state: usize, player: Player, action: &str) -> Signal {
        let prescribed = &self.states[state].prescription[player.index()];
        let within = game.actions(player).iter().all(|label| {
            let declared = if label == action { Rational::one() } else { Rational::zero() };
            (declared - prescribed.prob(label)).abs() <= self.tolerance
        });
        if within {
            Signal::Compliant
        } else {
            Signal::deviated(player, action)
        }
    }

    /// Signal for a pure profile. Simultaneous deviations have no signal.
    pub fn profile_signal(&self, game: &StageGame, state: usize, profile: &ActionProfile) -> Result<Signal> {
        let first = self.classify(game, state, Player::First, &profile.first);
        let second = self.classify(game, state, Player::Second, &profile.second);
        match (first, second) {
            (Signal::Compliant, s) | (s, Signal::Compliant) => Ok(s),
            _ => Err(Error::InvalidAutomaton(format!(
                "profile {profile} deviates for both players in `{}`; no transition is defined",
                self.states[state].id
            ))),
        }
    }

    /// Checks the automaton against the stage game it will be played on:
    /// matching players, valid prescriptions and top-ups, and a transition
    /// for every unilateral pure deviation.
    pub fn check_against(&self, game: &StageGame) -> Result<()> {
        if game.player_names() != &self.players {
            return Err(Error::InvalidAutomaton(format!(
                "automaton players {:?} do not match game players {:?}",
                self.players,
                game.player_names()
            )));
        }
        for (k, state) in self.states.iter().enumerate() {
            for strategy in &state.prescription {
                game.validate_strategy(strategy).map_err(|e| {
                    Error::InvalidAutomaton(format!("state `{}`: {e}", state.id))
                })?;
            }
            for top_up in &state.top_ups {
                game.action_index(top_up.player, &top_up.action).map_err(|e| {
                    Error::InvalidAutomaton(format!("top-up in `{}`: {e}", state.id))
                })?;
            }
            for player in Player::BOTH {
                for action in game.actions(player) {
                    let signal = self.classify(game, k, player, action);
                    self.next_state(k, &signal)?;
                }
            }
        }
        Ok(())
    }

    /// Same automaton with every state's top-ups cleared, then `f` applied
    /// to produce new ones.
    pub fn with_top_ups(&self, f: impl Fn(usize, &AutomatonState) -> Vec<TopUp>) -> Automaton {
        let mut out = self.clone();
        for (k, state) in out.states.iter_mut().enumerate() {
            state.top_ups = f(k, &self.states[k]);
        }
        out
    }
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, state) in self.states.iter().enumerate() {
            let marker = if k == self.initial { "*" } else { " " };
            writeln!(
                f,
                "{marker} {}: {} {}, {} {}",
                state.id,
                self.players[0],
                state.prescription[0],
                self.players[1],
                state.prescription[1]
            )?;
            for top_up in &state.top_ups {
                writeln!(
                    f,
                    "    top-up {} +{} when playing {}",
                    self.players[top_up.player.index()],
                    format_exact(&top_up.amount),
                    top_up.action
                )?;
            }
            for (signal, &t) in &self.transitions[k] {
                writeln!(f, "    {} -> {}", signal.key(&self.players), self.states[t].id)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TopUpWire {
    player: String,
    action: String,
    amount: RationalPair,
}

#[derive(Serialize, Deserialize)]
struct StateWire {
    id: String,
    play: [IndexMap<String, RationalPair>; 2],
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    top_up: Vec<TopUpWire>,
}

#[derive(Serialize, Deserialize)]
struct AutomatonWire {
    players: [String; 2],
    initial: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tolerance: Option<RationalPair>,
    states: Vec<StateWire>,
    transitions: BTreeMap<String, BTreeMap<String, String>>,
}

impl TryFrom<AutomatonWire> for Automaton {
    type Error = Error;

    fn try_from(wire: AutomatonWire) -> Result<Self> {
        let players = wire.players;
        let seat = |name: &str| {
            Player::BOTH
                .into_iter()
                .find(|p| players[p.index()] == name)
                .ok_or_else(|| Error::InvalidAutomaton(format!("unknown player `{name}`")))
        };
        let mut states = Vec::new();
        for s in wire.states {
            let [first, second] = s.play;
            let mix = |owner, m: IndexMap<String, RationalPair>| {
                MixedStrategy::new(owner, m.into_iter().map(|(a, p)| (a, p.0)))
                    .map_err(|e| Error::InvalidAutomaton(format!("state `{}`: {e}", s.id)))
            };
            let mut state = AutomatonState::new(s.id.clone(), mix(Player::First, first)?, mix(Player::Second, second)?);
            for t in s.top_up {
                state.top_ups.push(TopUp {
                    player: seat(&t.player)?,
                    action: t.action,
                    amount: t.amount.0,
                });
            }
            states.push(state);
        }
        let mut edges = Vec::new();
        for (from, row) in &wire.transitions {
            for (key, to) in row {
                edges.push((from.as_str(), Signal::parse_key(key, &players)?, to.as_str()));
            }
        }
        Automaton::new(
            players.clone(),
            states,
            &wire.initial,
            edges,
            wire.tolerance.map(|t| t.0).unwrap_or_else(Rational::zero),
        )
    }
}

impl From<Automaton> for AutomatonWire {
    fn from(a: Automaton) -> Self {
        let states = a
            .states
            .iter()
            .map(|s| StateWire {
                id: s.id.clone(),
                play: s.prescription.clone().map(|m| {
                    m.entries()
                        .iter()
                        .map(|(l, p)| (l.clone(), RationalPair(p.clone())))
                        .collect()
                }),
                top_up: s
                    .top_ups
                    .iter()
                    .map(|t| TopUpWire {
                        player: a.players[t.player.index()].clone(),
                        action: t.action.clone(),
                        amount: RationalPair(t.amount.clone()),
                    })
                    .collect(),
            })
            .collect();
        let transitions = a
            .transitions
            .iter()
            .enumerate()
            .map(|(k, row)| {
                (
                    a.states[k].id.clone(),
                    row.iter()
                        .map(|(sig, &t)| (sig.key(&a.players), a.states[t].id.clone()))
                        .collect(),
                )
            })
            .collect();
        AutomatonWire {
            initial: a.states[a.initial].id.clone(),
            tolerance: (!a.tolerance.is_zero()).then(|| RationalPair(a.tolerance.clone())),
            players: a.players,
            states,
            transitions,
        }
    }
}
