//! Generators and an independent deviation oracle shared by the
//! integration tests. The oracle computes values by walking the compliant
//! path to its cycle and summing geometric series, and enumerates
//! finite deviation plans directly; it does not use the library's solver.

#![allow(dead_code, clippy::needless_range_loop)]

use enforcement::game_core::{MixedStrategy, Player, StageGame};
use enforcement::rational::{int, pow, rat, Rational};
use enforcement::repeated::{Automaton, AutomatonState, Discount, Signal};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_rational(rng: &mut ChaCha8Rng, magnitude: i64) -> Rational {
    let den = rng.gen_range(1..=4);
    rat(rng.gen_range(-magnitude * den..=magnitude * den), den)
}

pub fn random_positive(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(1..=40), rng.gen_range(1..=12))
}

pub fn random_game(rng: &mut ChaCha8Rng) -> StageGame {
    let payoffs = (0..2)
        .map(|_| (0..2).map(|_| [random_rational(rng, 6), random_rational(rng, 6)]).collect())
        .collect();
    StageGame::new(
        ["A".to_string(), "B".to_string()],
        [vec!["a0".into(), "a1".into()], vec!["b0".into(), "b1".into()]],
        payoffs,
    )
    .unwrap()
}

fn random_mix(rng: &mut ChaCha8Rng, owner: Player, labels: [&str; 2]) -> MixedStrategy {
    match rng.gen_range(0..4) {
        0 => MixedStrategy::binary(owner, labels[0], labels[1], rat(rng.gen_range(1..=3), 4)).unwrap(),
        k => MixedStrategy::pure(owner, labels[k % 2]),
    }
}

/// Automaton with 1 to 3 states over [`random_game`]'s labels, with a
/// transition for every unilateral deviation signal.
pub fn random_automaton(rng: &mut ChaCha8Rng) -> Automaton {
    loop {
        let n = rng.gen_range(1..=3);
        let ids: Vec<String> = (0..n).map(|k| format!("w{k}")).collect();
        let states: Vec<AutomatonState> = ids
            .iter()
            .map(|id| {
                AutomatonState::new(
                    id.clone(),
                    random_mix(rng, Player::First, ["a0", "a1"]),
                    random_mix(rng, Player::Second, ["b0", "b1"]),
                )
            })
            .collect();
        let mut edges = Vec::new();
        for (k, state) in states.iter().enumerate() {
            edges.push((k, Signal::Compliant, rng.gen_range(0..n)));
            for (player, labels) in [(Player::First, ["a0", "a1"]), (Player::Second, ["b0", "b1"])] {
                for label in labels {
                    if state.prescription[player.index()].pure_action() != Some(label) {
                        edges.push((k, Signal::deviated(player, label), rng.gen_range(0..n)));
                    }
                }
            }
        }
        let named = edges
            .iter()
            .map(|(f, s, t)| (ids[*f].as_str(), s.clone(), ids[*t].as_str()));
        if let Ok(a) = Automaton::new(
            ["A".to_string(), "B".to_string()],
            states.clone(),
            "w0",
            named,
            Rational::zero(),
        ) {
            return a;
        }
    }
}

/// A deviator's per-period choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Choice {
    Comply,
    Play(usize),
}

pub struct Oracle<'a> {
    pub automaton: &'a Automaton,
    pub game: &'a StageGame,
    pub delta: Rational,
    values: [Vec<Rational>; 2],
}

fn probs(game: &StageGame, m: &MixedStrategy) -> Vec<Rational> {
    game.actions(m.owner()).iter().map(|l| m.prob(l)).collect()
}

impl<'a> Oracle<'a> {
    pub fn new(automaton: &'a Automaton, game: &'a StageGame, delta: &Discount) -> Self {
        let mut oracle = Oracle {
            automaton,
            game,
            delta: delta.value().clone(),
            values: [Vec::new(), Vec::new()],
        };
        oracle.values = Player::BOTH.map(|p| (0..automaton.states().len()).map(|s| oracle.path_value(p, s)).collect());
        oracle
    }

    pub fn value(&self, player: Player, state: usize) -> &Rational {
        &self.values[player.index()][state]
    }

    fn compliant_next(&self, s: usize) -> usize {
        self.automaton.transitions(s)[&Signal::Compliant]
    }

    fn stage(&self, s: usize, player: Player, choice: Choice) -> Rational {
        let st = &self.automaton.states()[s];
        let own = match choice {
            Choice::Comply => probs(self.game, &st.prescription[player.index()]),
            Choice::Play(k) => (0..2).map(|j| if j == k { Rational::one() } else { Rational::zero() }).collect(),
        };
        let opp = probs(self.game, &st.prescription[player.other().index()]);
        let (p, q) = match player {
            Player::First => (own, opp),
            Player::Second => (opp, own),
        };
        let mut total = Rational::zero();
        for i in 0..2 {
            for j in 0..2 {
                total += &p[i] * &q[j] * self.game.payoff_at(player, i, j);
            }
        }
        for (k, w) in p_or_q(player, &p, &q).iter().enumerate() {
            for t in &st.top_ups {
                if t.player == player && t.action == self.game.actions(player)[k] {
                    total += w * &t.amount;
                }
            }
        }
        total
    }

    fn next(&self, s: usize, player: Player, choice: Choice) -> usize {
        match choice {
            Choice::Comply => self.compliant_next(s),
            Choice::Play(k) => {
                let label = &self.game.actions(player)[k];
                let prescribed = &self.automaton.states()[s].prescription[player.index()];
                if prescribed.pure_action() == Some(label.as_str()) {
                    self.compliant_next(s)
                } else {
                    self.automaton.transitions(s)[&Signal::deviated(player, label.clone())]
                }
            }
        }
    }

    /// Value of complying forever from `s`: walk to the first repeated
    /// state and close the cycle with a geometric sum.
    fn path_value(&self, player: Player, s: usize) -> Rational {
        let mut order = vec![s];
        let mut cur = self.compliant_next(s);
        while !order.contains(&cur) {
            order.push(cur);
            cur = self.compliant_next(cur);
        }
        let start = order.iter().position(|&x| x == cur).unwrap();
        let discounted = |states: &[usize]| {
            let mut total = Rational::zero();
            for (t, &x) in states.iter().enumerate() {
                total += pow(&self.delta, t as u32) * self.stage(x, player, Choice::Comply);
            }
            total
        };
        let one = Rational::one();
        let cycle = &order[start..];
        let cycle_sum = discounted(cycle) / (&one - pow(&self.delta, cycle.len() as u32));
        let prefix = discounted(&order[..start]);
        (&one - &self.delta) * (prefix + pow(&self.delta, start as u32) * cycle_sum)
    }

    /// Best payoff over all plans of at most `depth` periods from `s`,
    /// followed by compliance.
    pub fn best_plan(&self, player: Player, s: usize, depth: usize) -> Rational {
        let stay = self.value(player, s).clone();
        if depth == 0 {
            return stay;
        }
        let one = Rational::one();
        let mut best = stay;
        let mut choices = vec![Choice::Comply];
        choices.extend((0..2).map(Choice::Play));
        for c in choices {
            let t = self.next(s, player, c);
            let v = (&one - &self.delta) * self.stage(s, player, c) + &self.delta * self.best_plan(player, t, depth - 1);
            if v > best {
                best = v;
            }
        }
        best
    }

    /// Profitable single-period deviations, as (player, state, action).
    pub fn one_shot_witnesses(&self) -> Vec<(Player, String, String)> {
        let one = Rational::one();
        let mut out = Vec::new();
        for (s, st) in self.automaton.states().iter().enumerate() {
            for player in Player::BOTH {
                for k in 0..2 {
                    let c = Choice::Play(k);
                    let v = (&one - &self.delta) * self.stage(s, player, c)
                        + &self.delta * self.value(player, self.next(s, player, c));
                    if v > *self.value(player, s) {
                        out.push((player, st.id.clone(), self.game.actions(player)[k].clone()));
                    }
                }
            }
        }
        out
    }

    /// Whether some plan of at most `depth` periods beats compliance from
    /// any state.
    pub fn any_profitable_plan(&self, depth: usize) -> bool {
        (0..self.automaton.states().len()).any(|s| {
            Player::BOTH
                .into_iter()
                .any(|p| self.best_plan(p, s, depth) > *self.value(p, s))
        })
    }
}

fn p_or_q<'v>(player: Player, p: &'v [Rational], q: &'v [Rational]) -> &'v [Rational] {
    match player {
        Player::First => p,
        Player::Second => q,
    }
}

pub fn discount(num: i64, den: i64) -> Discount {
    Discount::new(rat(num, den)).unwrap()
}

pub fn delta_grid() -> Vec<Rational> {
    let mut grid: Vec<Rational> = (0..10).map(|k| rat(k, 10)).collect();
    grid.push(rat(99, 100));
    grid
}

pub fn one_minus_pow10(k: u32) -> Rational {
    Rational::one() - Rational::one() / int(10i64.pow(k))
}
