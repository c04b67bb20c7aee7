use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_exact, RationalPair, Rational};

/// One of the two seats in a game. Display names live on the game itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    First,
    Second,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::First, Player::Second];

    pub fn index(self) -> usize {
        match self {
            Player::First => 0,
            Player::Second => 1,
        }
    }

    pub fn other(self) -> Player {
        match self {
            Player::First => Player::Second,
            Player::Second => Player::First,
        }
    }
}

/// A probability distribution over one player's action labels.
///
/// Labels not listed carry probability zero. Entries keep their insertion
/// order so reports print actions the way they were declared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedStrategy {
    owner: Player,
    probs: Vec<(String, Rational)>,
}

impl MixedStrategy {
    pub fn new<S: Into<String>>(
        owner: Player,
        probs: impl IntoIterator<Item = (S, Rational)>,
    ) -> Result<Self> {
        let mut entries: Vec<(String, Rational)> = Vec::new();
        for (label, p) in probs {
            let label = label.into();
            if p.is_negative() || p > Rational::one() {
                return Err(Error::InvalidStrategy(format!(
                    "probability {} for `{label}` is outside [0, 1]",
                    format_exact(&p)
                )));
            }
            if entries.iter().any(|(l, _)| *l == label) {
                return Err(Error::InvalidStrategy(format!("action `{label}` listed twice")));
            }
            entries.push((label, p));
        }
        let total: Rational = entries.iter().map(|(_, p)| p).sum();
        if !total.is_one() {
            return Err(Error::InvalidStrategy(format!(
                "probabilities sum to {}, not 1",
                format_exact(&total)
            )));
        }
        Ok(MixedStrategy { owner, probs: entries })
    }

    pub fn pure(owner: Player, action: impl Into<String>) -> Self {
        MixedStrategy {
            owner,
            probs: vec![(action.into(), Rational::one())],
        }
    }

    /// Two-action mixture putting `p` on `first` and `1 - p` on `second`.
    pub fn binary(
        owner: Player,
        first: impl Into<String>,
        second: impl Into<String>,
        p: Rational,
    ) -> Result<Self> {
        let q = Rational::one() - &p;
        MixedStrategy::new(owner, [(first.into(), p), (second.into(), q)])
    }

    pub fn owner(&self) -> Player {
        self.owner
    }

    pub fn entries(&self) -> &[(String, Rational)] {
        &self.probs
    }

    pub fn prob(&self, action: &str) -> Rational {
        self.probs
            .iter()
            .find(|(l, _)| l == action)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.probs
            .iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(l, _)| l.as_str())
    }

    /// The single action played with certainty, if the mixture is degenerate.
    pub fn pure_action(&self) -> Option<&str> {
        self.probs
            .iter()
            .find(|(_, p)| p.is_one())
            .map(|(l, _)| l.as_str())
    }

    pub fn with_owner(mut self, owner: Player) -> Self {
        self.owner = owner;
        self
    }
}

impl fmt::Display for MixedStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .probs
            .iter()
            .map(|(l, p)| format!("{l} {}", format_exact(p)))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A pure action for each player, first player's action first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ActionProfile {
    pub first: String,
    pub second: String,
}

impl ActionProfile {
    pub fn new(first: impl Into<String>, second: impl Into<String>) -> Self {
        ActionProfile {
            first: first.into(),
            second: second.into(),
        }
    }

    pub fn action(&self, player: Player) -> &str {
        match player {
            Player::First => &self.first,
            Player::Second => &self.second,
        }
    }
}

impl fmt::Display for ActionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

/// A two-player finite normal-form game with exact payoffs.
///
/// `payoffs[i][j]` holds `(u_first, u_second)` for the first player's action
/// `i` against the second player's action `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "StageGameWire", into = "StageGameWire")]
pub struct StageGame {
    players: [String; 2],
    actions: [Vec<String>; 2],
    payoffs: Vec<Vec<[Rational; 2]>>,
}

impl StageGame {
    pub fn new(
        players: [String; 2],
        actions: [Vec<String>; 2],
        payoffs: Vec<Vec<[Rational; 2]>>,
    ) -> Result<Self> {
        if players[0] == players[1] {
            return Err(Error::InvalidGame("player names must differ".into()));
        }
        for (seat, labels) in actions.iter().enumerate() {
            if labels.is_empty() {
                return Err(Error::InvalidGame(format!("{} has no actions", players[seat])));
            }
            for (k, label) in labels.iter().enumerate() {
                if labels[..k].contains(label) {
                    return Err(Error::InvalidGame(format!(
                        "{} lists action `{label}` twice",
                        players[seat]
                    )));
                }
            }
        }
        if payoffs.len() != actions[0].len() {
            return Err(Error::InvalidGame(format!(
                "payoff matrix has {} rows, expected {}",
                payoffs.len(),
                actions[0].len()
            )));
        }
        for (i, row) in payoffs.iter().enumerate() {
            if row.len() != actions[1].len() {
                return Err(Error::InvalidGame(format!(
                    "payoff row {i} has {} cells, expected {}",
                    row.len(),
                    actions[1].len()
                )));
            }
        }
        Ok(StageGame {
            players,
            actions,
            payoffs,
        })
    }

    /// Convenience constructor from integer payoffs.
    pub fn from_integers(
        players: [&str; 2],
        actions: [&[&str]; 2],
        payoffs: &[&[(i64, i64)]],
    ) -> Result<Self> {
        let payoffs = payoffs
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(a, b)| [crate::rational::int(a), crate::rational::int(b)])
                    .collect()
            })
            .collect();
        StageGame::new(
            players.map(String::from),
            actions.map(|labels| labels.iter().map(|s| s.to_string()).collect()),
            payoffs,
        )
    }

    pub fn player_name(&self, player: Player) -> &str {
        &self.players[player.index()]
    }

    pub fn player_names(&self) -> &[String; 2] {
        &self.players
    }

    pub fn player_by_name(&self, name: &str) -> Option<Player> {
        Player::BOTH
            .into_iter()
            .find(|p| self.players[p.index()] == name)
    }

    pub fn actions(&self, player: Player) -> &[String] {
        &self.actions[player.index()]
    }

    pub fn action_index(&self, player: Player, label: &str) -> Result<usize> {
        self.actions[player.index()]
            .iter()
            .position(|a| a == label)
            .ok_or_else(|| {
                Error::InvalidStrategy(format!(
                    "`{label}` is not an action of {}",
                    self.player_name(player)
                ))
            })
    }

    /// Payoff to `player` at the cell `(first_action, second_action)`, by index.
    pub fn payoff_at(&self, player: Player, first: usize, second: usize) -> &Rational {
        &self.payoffs[first][second][player.index()]
    }

    pub fn payoff(&self, player: Player, profile: &ActionProfile) -> Result<Rational> {
        let i = self.action_index(Player::First, &profile.first)?;
        let j = self.action_index(Player::Second, &profile.second)?;
        Ok(self.payoff_at(player, i, j).clone())
    }

    pub fn cell(&self, profile: &ActionProfile) -> Result<[Rational; 2]> {
        let i = self.action_index(Player::First, &profile.first)?;
        let j = self.action_index(Player::Second, &profile.second)?;
        Ok(self.payoffs[i][j].clone())
    }

    pub fn is_two_by_two(&self) -> bool {
        self.actions[0].len() == 2 && self.actions[1].len() == 2
    }

    /// Dense probability vector for `strategy` in the owner's action order.
    pub fn distribution(&self, strategy: &MixedStrategy) -> Result<Vec<Rational>> {
        let owner = strategy.owner();
        let mut dist = vec![Rational::zero(); self.actions(owner).len()];
        for (label, p) in strategy.entries() {
            let k = self.action_index(owner, label)?;
            dist[k] = p.clone();
        }
        Ok(dist)
    }

    /// Checks that `strategy` only mentions actions of its owner.
    pub fn validate_strategy(&self, strategy: &MixedStrategy) -> Result<()> {
        self.distribution(strategy).map(|_| ())
    }

    /// Applies `f` to every payoff of `player`, leaving the other player untouched.
    pub fn map_payoffs(&self, player: Player, f: impl Fn(&Rational) -> Rational) -> StageGame {
        let mut out = self.clone();
        for row in &mut out.payoffs {
            for cell in row {
                cell[player.index()] = f(&cell[player.index()]);
            }
        }
        out
    }

    pub fn all_profiles(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let cols = self.actions[1].len();
        (0..self.actions[0].len()).flat_map(move |i| (0..cols).map(move |j| (i, j)))
    }

    pub fn profile_labels(&self, first: usize, second: usize) -> ActionProfile {
        ActionProfile::new(self.actions[0][first].clone(), self.actions[1][second].clone())
    }
}

#[derive(Serialize, Deserialize)]
struct StageGameWire {
    players: [String; 2],
    actions: [Vec<String>; 2],
    payoffs: Vec<Vec<[RationalPair; 2]>>,
}

impl TryFrom<StageGameWire> for StageGame {
    type Error = Error;

    fn try_from(wire: StageGameWire) -> Result<Self> {
        let payoffs = wire
            .payoffs
            .into_iter()
            .map(|row| row.into_iter().map(|cell| cell.map(Rational::from)).collect())
            .collect();
        StageGame::new(wire.players, wire.actions, payoffs)
    }
}

impl From<StageGame> for StageGameWire {
    fn from(game: StageGame) -> Self {
        StageGameWire {
            players: game.players,
            actions: game.actions,
            payoffs: game
                .payoffs
                .into_iter()
                .map(|row| row.into_iter().map(|cell| cell.map(RationalPair)).collect())
                .collect(),
        }
    }
}
