use num_traits::{One, Signed, Zero};

use super::stage::{ActionProfile, MixedStrategy, Player, StageGame};
use crate::error::{Error, Result};
use crate::rational::Rational;

fn order_by_owner<'a>(
    s1: &'a MixedStrategy,
    s2: &'a MixedStrategy,
) -> Result<(&'a MixedStrategy, &'a MixedStrategy)> {
    match (s1.owner(), s2.owner()) {
        (Player::First, Player::Second) => Ok((s1, s2)),
        (Player::Second, Player::First) => Ok((s2, s1)),
        _ => Err(Error::InvalidStrategy(
            "strategies must belong to different players".into(),
        )),
    }
}

/// Expected payoff of `player` when both players mix independently.
///
/// The two strategies may be passed in either order; they are matched to
/// seats by their owners.
pub fn expected_utility(
    game: &StageGame,
    player: Player,
    s1: &MixedStrategy,
    s2: &MixedStrategy,
) -> Result<Rational> {
    let (first, second) = order_by_owner(s1, s2)?;
    let p = game.distribution(first)?;
    let q = game.distribution(second)?;
    Ok(expected_from_distributions(game, player, &p, &q))
}

pub(crate) fn expected_from_distributions(
    game: &StageGame,
    player: Player,
    p: &[Rational],
    q: &[Rational],
) -> Rational {
    let mut total = Rational::zero();
    for (i, pi) in p.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, qj) in q.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            total += pi * qj * game.payoff_at(player, i, j);
        }
    }
    total
}

/// Payoff of each pure action of `player` against the opponent's mixture,
/// in the player's action order.
pub fn action_values(
    game: &StageGame,
    player: Player,
    opponent: &MixedStrategy,
) -> Result<Vec<Rational>> {
    if opponent.owner() == player {
        return Err(Error::InvalidStrategy(
            "opponent strategy is owned by the responding player".into(),
        ));
    }
    let q = game.distribution(opponent)?;
    let n = game.actions(player).len();
    Ok((0..n)
        .map(|k| {
            let mut unit = vec![Rational::zero(); n];
            unit[k] = Rational::one();
            match player {
                Player::First => expected_from_distributions(game, player, &unit, &q),
                Player::Second => expected_from_distributions(game, player, &q, &unit),
            }
        })
        .collect())
}

/// The full argmax set of pure replies. Ties keep every maximizer.
pub fn best_responses(
    game: &StageGame,
    player: Player,
    opponent: &MixedStrategy,
) -> Result<Vec<String>> {
    let values = action_values(game, player, opponent)?;
    let best = values.iter().max().cloned().expect("games have at least one action");
    Ok(game
        .actions(player)
        .iter()
        .zip(&values)
        .filter(|(_, v)| **v == best)
        .map(|(a, _)| a.clone())
        .collect())
}

/// Every pure profile in which each action is a best reply to the other.
pub fn pure_nash(game: &StageGame) -> Vec<ActionProfile> {
    let rows = game.actions(Player::First).len();
    let cols = game.actions(Player::Second).len();
    game.all_profiles()
        .filter(|&(i, j)| {
            let u1 = game.payoff_at(Player::First, i, j);
            let u2 = game.payoff_at(Player::Second, i, j);
            (0..rows).all(|k| game.payoff_at(Player::First, k, j) <= u1)
                && (0..cols).all(|k| game.payoff_at(Player::Second, i, k) <= u2)
        })
        .map(|(i, j)| game.profile_labels(i, j))
        .collect()
}

/// Root of `x ↦ b + x·(a − b)` inside the open unit interval.
fn interior_root(a: &Rational, b: &Rational) -> Option<Rational> {
    if a == b {
        return None;
    }
    let x = b / (b - a);
    (x.is_positive() && x < Rational::one()).then_some(x)
}

/// All equilibria of a 2×2 game with exact probabilities.
///
/// Each player's mixture is described by the probability of its first
/// action. At an equilibrium that probability is 0, 1, or the root of the
/// opponent's indifference line, so checking the finite candidate grid
/// recovers every isolated equilibrium and the extreme points of any
/// continuum (which arise only in degenerate games).
pub fn mixed_nash_2x2(game: &StageGame) -> Result<Vec<(MixedStrategy, MixedStrategy)>> {
    if !game.is_two_by_two() {
        return Err(Error::UnsupportedShape(format!(
            "mixed equilibrium enumeration needs a 2x2 game, got {}x{}",
            game.actions(Player::First).len(),
            game.actions(Player::Second).len()
        )));
    }
    let u = |player, i, j| game.payoff_at(player, i, j).clone();
    // Second player's advantage of column 0 over column 1 when the first plays row i.
    let d0 = u(Player::Second, 0, 0) - u(Player::Second, 0, 1);
    let d1 = u(Player::Second, 1, 0) - u(Player::Second, 1, 1);
    // First player's advantage of row 0 over row 1 when the second plays column j.
    let e0 = u(Player::First, 0, 0) - u(Player::First, 1, 0);
    let e1 = u(Player::First, 0, 1) - u(Player::First, 1, 1);

    let mut p_candidates = vec![Rational::zero(), Rational::one()];
    p_candidates.extend(interior_root(&d0, &d1));
    let mut q_candidates = vec![Rational::zero(), Rational::one()];
    q_candidates.extend(interior_root(&e0, &e1));

    let affine = |p: &Rational, at_one: &Rational, at_zero: &Rational| {
        at_zero + p * (at_one - at_zero)
    };
    let consistent = |x: &Rational, advantage: Rational| -> bool {
        if advantage.is_positive() {
            x.is_one()
        } else if advantage.is_negative() {
            x.is_zero()
        } else {
            true
        }
    };

    let first_labels = game.actions(Player::First);
    let second_labels = game.actions(Player::Second);
    let mut found = Vec::new();
    for p in &p_candidates {
        for q in &q_candidates {
            let first_ok = consistent(p, affine(q, &e0, &e1));
            let second_ok = consistent(q, affine(p, &d0, &d1));
            if first_ok && second_ok {
                found.push((
                    MixedStrategy::binary(
                        Player::First,
                        first_labels[0].clone(),
                        first_labels[1].clone(),
                        p.clone(),
                    )?,
                    MixedStrategy::binary(
                        Player::Second,
                        second_labels[0].clone(),
                        second_labels[1].clone(),
                        q.clone(),
                    )?,
                ));
            }
        }
    }
    Ok(found)
}
