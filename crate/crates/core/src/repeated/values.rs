use std::fmt;

use num_traits::{One, Signed, Zero};

use super::automaton::{Automaton, Signal};
use crate::error::{Error, Result};
use crate::game_core::{expected_from_distributions, ActionProfile, Player, StageGame};
use crate::linalg;
use crate::rational::{format_exact, Rational};

/// A discount factor in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Discount(Rational);

impl Discount {
    pub fn new(delta: Rational) -> Result<Self> {
        if delta.is_negative() || delta >= Rational::one() {
            return Err(Error::InvalidDiscount(format!(
                "{} is outside [0, 1)",
                format_exact(&delta)
            )));
        }
        Ok(Discount(delta))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// `1 − δ`.
    pub fn complement(&self) -> Rational {
        Rational::one() - &self.0
    }
}

impl fmt::Display for Discount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_exact(&self.0))
    }
}

/// Normalized discounted payoff of the first `horizon` periods of `stream`,
/// repeating the stream cyclically when it is shorter than the horizon.
pub fn repeated_payoff(
    stream: &[ActionProfile],
    game: &StageGame,
    delta: &Discount,
    player: Player,
    horizon: usize,
) -> Result<Rational> {
    if stream.is_empty() {
        return Err(Error::InvalidStrategy("profile stream is empty".into()));
    }
    let stage: Vec<Rational> = stream
        .iter()
        .map(|p| game.payoff(player, p))
        .collect::<Result<_>>()?;
    let mut total = Rational::zero();
    let mut weight = Rational::one();
    for t in 0..horizon {
        total += &weight * &stage[t % stage.len()];
        weight *= delta.value();
    }
    Ok(delta.complement() * total)
}

/// Exact normalized value of repeating `cycle` forever.
pub fn cycle_value(cycle: &[ActionProfile], game: &StageGame, delta: &Discount, player: Player) -> Result<Rational> {
    let k = cycle.len();
    let one_pass = repeated_payoff(cycle, game, delta, player, k)?;
    let dk = crate::rational::pow(delta.value(), k as u32);
    Ok(one_pass / (Rational::one() - dk))
}

/// Per-player value of every automaton state under compliant play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateValues {
    ids: Vec<String>,
    values: [Vec<Rational>; 2],
}

impl StateValues {
    pub fn get(&self, player: Player, state: &str) -> Option<&Rational> {
        let k = self.ids.iter().position(|s| s == state)?;
        Some(&self.values[player.index()][k])
    }

    pub fn at(&self, player: Player, state: usize) -> &Rational {
        &self.values[player.index()][state]
    }

    pub fn state_ids(&self) -> &[String] {
        &self.ids
    }

    pub fn of(&self, player: Player) -> &[Rational] {
        &self.values[player.index()]
    }
}

/// Precomputed stage data for one automaton on one game.
pub(crate) struct Model<'a> {
    pub automaton: &'a Automaton,
    pub game: &'a StageGame,
    pub delta: Discount,
    /// Dense prescriptions per state and seat.
    dists: Vec<[Vec<Rational>; 2]>,
}

impl<'a> Model<'a> {
    pub fn new(automaton: &'a Automaton, game: &'a StageGame, delta: &Discount) -> Result<Self> {
        automaton.check_against(game)?;
        let dists = automaton
            .states()
            .iter()
            .map(|s| {
                Ok([
                    game.distribution(&s.prescription[0])?,
                    game.distribution(&s.prescription[1])?,
                ])
            })
            .collect::<Result<_>>()?;
        Ok(Model {
            automaton,
            game,
            delta: delta.clone(),
            dists,
        })
    }

    pub fn len(&self) -> usize {
        self.dists.len()
    }

    fn top_up(&self, state: usize, player: Player, action: &str) -> Rational {
        self.automaton.states()[state]
            .top_ups
            .iter()
            .filter(|t| t.player == player && t.action == action)
            .map(|t| t.amount.clone())
            .sum()
    }

    /// Expected stage payoff (top-ups included) when both follow the prescription.
    pub fn compliant_reward(&self, state: usize, player: Player) -> Rational {
        let [p, q] = &self.dists[state];
        let mut total = expected_from_distributions(self.game, player, p, q);
        for (k, w) in self.dists[state][player.index()].iter().enumerate() {
            if !w.is_zero() {
                total += w * self.top_up(state, player, &self.game.actions(player)[k]);
            }
        }
        total
    }

    /// Expected stage payoff to `player` playing the pure action with index
    /// `action` against the opponent's prescription.
    pub fn action_reward(&self, state: usize, player: Player, action: usize) -> Rational {
        let own = self.game.actions(player).len();
        let mut pure = vec![Rational::zero(); own];
        pure[action] = Rational::one();
        let opp = &self.dists[state][player.other().index()];
        let stage = match player {
            Player::First => expected_from_distributions(self.game, player, &pure, opp),
            Player::Second => expected_from_distributions(self.game, player, opp, &pure),
        };
        stage + self.top_up(state, player, &self.game.actions(player)[action])
    }

    pub fn action_next(&self, state: usize, player: Player, action: usize) -> usize {
        let label = &self.game.actions(player)[action];
        let signal = self.automaton.classify(self.game, state, player, label);
        self.automaton
            .next_state(state, &signal)
            .expect("checked against the game on construction")
    }

    pub fn compliant_next(&self, state: usize) -> usize {
        self.automaton
            .next_state(state, &Signal::Compliant)
            .expect("validated on construction")
    }

    /// Solves `W = (1 − δ) r + δ W[next]` for a stationary plan.
    pub fn plan_values(&self, reward: &[Rational], next: &[usize]) -> Vec<Rational> {
        let n = reward.len();
        let delta = self.delta.value();
        let mut a = vec![vec![Rational::zero(); n]; n];
        for s in 0..n {
            a[s][s] += Rational::one();
            a[s][next[s]] -= delta;
        }
        let b = reward.iter().map(|r| self.delta.complement() * r).collect();
        linalg::solve(a, b).expect("I - δP is invertible for δ < 1")
    }

    pub fn values(&self) -> StateValues {
        let next: Vec<usize> = (0..self.len()).map(|s| self.compliant_next(s)).collect();
        let values = Player::BOTH.map(|player| {
            let reward: Vec<Rational> = (0..self.len()).map(|s| self.compliant_reward(s, player)).collect();
            self.plan_values(&reward, &next)
        });
        StateValues {
            ids: self.automaton.states().iter().map(|s| s.id.clone()).collect(),
            values,
        }
    }
}

/// Discounted value of every state for both players when everyone complies.
pub fn solve_state_values(automaton: &Automaton, game: &StageGame, delta: &Discount) -> Result<StateValues> {
    Ok(Model::new(automaton, game, delta)?.values())
}

/// `(1 − δ) u_i(a) + δ V_i(τ(ω, a))` for a pure profile `a` played in `state`.
/// Top-ups attached to `state` are part of the stage payoff.
pub fn one_shot_payoff(
    automaton: &Automaton,
    state: &str,
    profile: &ActionProfile,
    game: &StageGame,
    delta: &Discount,
    player: Player,
) -> Result<Rational> {
    let model = Model::new(automaton, game, delta)?;
    let values = model.values();
    let s = automaton.state_index(state)?;
    let signal = automaton.profile_signal(game, s, profile)?;
    let next = automaton.next_state(s, &signal)?;
    let own = profile.action(player);
    let mut stage = game.payoff(player, profile)?;
    stage += model.top_up(s, player, own);
    Ok(delta.complement() * stage + delta.value() * values.at(player, next))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::{int, rat};
    use crate::synthesis::{build_punishment_automaton, ShortPeriodParams};

    fn d(n: i64, den: i64) -> Discount {
        Discount::new(rat(n, den)).unwrap()
    }

    #[test]
    fn discount_bounds() {
        assert!(Discount::new(int(1)).is_err());
        assert!(Discount::new(rat(-1, 10)).is_err());
        assert!(Discount::new(int(0)).is_ok());
    }

    #[test]
    fn constant_stream_values() {
        let g = catalog::elvik_stage();
        let rest = [ActionProfile::new("DE", "DS")];
        assert_eq!(cycle_value(&rest, &g, &d(9, 10), Player::First).unwrap(), int(0));
        assert_eq!(cycle_value(&rest, &g, &d(9, 10), Player::Second).unwrap(), int(-50));
    }

    #[test]
    fn myopic_discount_is_first_stage_payoff() {
        let g = catalog::elvik_stage();
        let stream = [ActionProfile::new("E", "S"), ActionProfile::new("DE", "DS")];
        assert_eq!(repeated_payoff(&stream, &g, &d(0, 1), Player::Second, 5).unwrap(), int(-300));
    }

    #[test]
    fn alternating_stream_with_equal_payoffs() {
        let g = catalog::elvik_stage();
        let stream = [ActionProfile::new("E", "DS"), ActionProfile::new("DE", "DS")];
        assert_eq!(cycle_value(&stream, &g, &d(1, 2), Player::Second).unwrap(), int(-50));
    }

    #[test]
    fn automaton_i_driver_values() {
        let g = catalog::elvik_stage();
        for delta in [d(0, 1), d(1, 2), d(99, 100)] {
            let v = solve_state_values(&catalog::automaton_i(), &g, &delta).unwrap();
            assert_eq!(v.get(Player::Second, "ω_(DE,DS)"), Some(&int(-50)));
            assert_eq!(v.get(Player::Second, "ω_(E,DS)"), Some(&int(-50)));
        }
    }

    #[test]
    fn absorbing_punishment_state() {
        let g = catalog::elvik_stage();
        let id = "ω_(E,DS)";
        let a = Automaton::new(
            g.player_names().clone(),
            vec![super::super::AutomatonState::pure(id, "E", "DS")],
            id,
            [
                (id, Signal::Compliant, id),
                (id, Signal::deviated(Player::First, "DE"), id),
                (id, Signal::deviated(Player::Second, "S"), id),
            ],
            int(0),
        )
        .unwrap();
        let v = solve_state_values(&a, &g, &d(3, 4)).unwrap();
        assert_eq!(v.get(Player::First, id), Some(&int(-10000)));
        assert_eq!(v.get(Player::Second, id), Some(&int(-50)));
    }

    #[test]
    fn first_punishment_state_driver_value() {
        let params = ShortPeriodParams::new(12, 2, rat(9, 10), rat(1, 5), int(20000), int(10000)).unwrap();
        let a = build_punishment_automaton(&params, &int(0)).unwrap();
        let g = params.game().unwrap();
        let v = solve_state_values(&a, &g, &d(9, 10)).unwrap();
        let expected = rat(1, 12) * (rat(81, 5) - int(50));
        assert_eq!(v.get(Player::Second, "ω_(E,DS)_1"), Some(&expected));
    }

    #[test]
    fn automaton_i_deviation_payoff() {
        let g = catalog::elvik_stage();
        let delta = d(9, 10);
        let got = one_shot_payoff(
            &catalog::automaton_i(),
            "ω_(DE,DS)",
            &ActionProfile::new("DE", "S"),
            &g,
            &delta,
            Player::Second,
        )
        .unwrap();
        assert_eq!(got, rat(1, 10) * int(50) + rat(9, 10) * int(-50));
    }

    #[test]
    fn myopic_one_shot_is_stage_payoff() {
        let g = catalog::elvik_stage();
        let got = one_shot_payoff(
            &catalog::automaton_i(),
            "ω_(E,DS)",
            &ActionProfile::new("DE", "DS"),
            &g,
            &d(0, 1),
            Player::First,
        )
        .unwrap();
        assert_eq!(got, int(0));
    }

    #[test]
    fn punishment_deviation_for_drivers_at_mixed_state() {
        // N = 1 reading of the short-period chain, with δ = 9/10, b = 2/5.
        let g = catalog::elvik_stage();
        let a = crate::synthesis::punishment_path_automaton(2, &rat(2, 5), &rat(1, 3), &int(0)).unwrap();
        let got = one_shot_payoff(&a, "ω_ms", &ActionProfile::new("DE", "S"), &g, &d(9, 10), Player::Second).unwrap();
        let expected = int(100) * rat(729, 1000) * rat(2, 5) - int(90) + int(50);
        assert_eq!(got, expected);
        assert_eq!(got, rat(-271, 25));
    }
}
