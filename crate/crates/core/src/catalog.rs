//! Ready-made games, trees and automata for the enforcement model.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::extensive_form::{Edge, GameTree, Node, NodeId};
use crate::game_core::{MixedStrategy, Player, StageGame};
use crate::rational::{int, parse_rational, rat, Rational};
use crate::repeated::{Automaton, AutomatonState, Signal};
use crate::synthesis::punishment_path_automaton;

pub const POLICE: &str = "Police";
pub const DRIVERS: &str = "Drivers";

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 4] = [
    "elvik-stage",
    "elvik-tree-police-first",
    "elvik-tree-drivers-first",
    "short-period(N,alpha,beta)",
];

fn names(first: &str, second: &str) -> [String; 2] {
    [first.to_string(), second.to_string()]
}

/// The one-year enforcement game. Police pick E/DE, drivers S/DS.
pub fn elvik_stage() -> StageGame {
    StageGame::from_integers(
        [POLICE, DRIVERS],
        [&["E", "DE"], &["S", "DS"]],
        &[&[(-10000, -300), (-10000, -50)], &[(-20000, 50), (0, -50)]],
    )
    .expect("builtin game is well formed")
}

/// Short-period variant: `N` periods per year, police costs `alpha` for
/// non-enforcement under speeding and `beta` for enforcing. Driver payoffs
/// are scaled by `1/N`.
pub fn short_period_game(periods: u32, alpha: &Rational, beta: &Rational) -> Result<StageGame> {
    if periods == 0 {
        return Err(Error::InvalidParams("N must be positive".into()));
    }
    if !alpha.is_positive() || !beta.is_positive() {
        return Err(Error::InvalidParams("alpha and beta must be positive".into()));
    }
    let n = int(periods.into());
    let d = |v: i64| int(v) / &n;
    StageGame::new(
        names(POLICE, DRIVERS),
        [vec!["E".into(), "DE".into()], vec!["S".into(), "DS".into()]],
        vec![
            vec![[-beta.clone(), d(-300)], [-beta.clone(), d(-50)]],
            vec![[-alpha.clone(), d(50)], [Rational::zero(), d(-50)]],
        ],
    )
}

fn decision(player: Player, edges: &[(&str, &str)]) -> Node {
    Node::Decision {
        player,
        edges: edges
            .iter()
            .map(|&(action, child)| Edge {
                action: action.to_string(),
                child: NodeId::from(child),
            })
            .collect(),
    }
}

fn leaf(first: i64, second: i64) -> Node {
    Node::Leaf {
        payoffs: [int(first), int(second)],
    }
}

fn build_tree(players: [String; 2], nodes: Vec<(&str, Node)>) -> GameTree {
    let nodes: BTreeMap<NodeId, Node> = nodes.into_iter().map(|(id, n)| (NodeId::from(id), n)).collect();
    GameTree::new(players, NodeId::from("root"), nodes).expect("builtin tree is well formed")
}

/// Police move first and drivers observe the choice.
pub fn elvik_tree_police_first() -> GameTree {
    build_tree(
        names(POLICE, DRIVERS),
        vec![
            ("root", decision(Player::First, &[("Don't Enforce", "L"), ("Enforce", "R")])),
            ("L", decision(Player::Second, &[("Speed", "L.S"), ("Don't Speed", "L.DS")])),
            ("R", decision(Player::Second, &[("Speed", "R.S"), ("Don't Speed", "R.DS")])),
            ("L.S", leaf(-20000, 50)),
            ("L.DS", leaf(0, -50)),
            ("R.S", leaf(-10000, -300)),
            ("R.DS", leaf(-10000, -50)),
        ],
    )
}

/// Drivers move first and the police observe the choice.
pub fn elvik_tree_drivers_first() -> GameTree {
    build_tree(
        names(DRIVERS, POLICE),
        vec![
            ("root", decision(Player::First, &[("Don't Speed", "L"), ("Speed", "R")])),
            ("L", decision(Player::Second, &[("Enforce", "L.E"), ("Don't Enforce", "L.DE")])),
            ("R", decision(Player::Second, &[("Enforce", "R.E"), ("Don't Enforce", "R.DE")])),
            ("L.E", leaf(-50, -10000)),
            ("L.DE", leaf(-50, 0)),
            ("R.E", leaf(-300, -10000)),
            ("R.DE", leaf(50, -20000)),
        ],
    )
}

/// Grim-style attempt to sustain `(DE,DS)`: any departure sends play to one
/// period of `(E,DS)`, which repeats until it is observed.
pub fn automaton_i() -> Automaton {
    let rest = "ω_(DE,DS)";
    let punish = "ω_(E,DS)";
    let mut edges = vec![(rest, Signal::Compliant, rest), (punish, Signal::Compliant, rest)];
    for (player, action) in [(Player::First, "E"), (Player::Second, "S")] {
        edges.push((rest, Signal::deviated(player, action), punish));
    }
    for (player, action) in [(Player::First, "DE"), (Player::Second, "S")] {
        edges.push((punish, Signal::deviated(player, action), punish));
    }
    Automaton::new(
        names(POLICE, DRIVERS),
        vec![AutomatonState::pure(rest, "DE", "DS"), AutomatonState::pure(punish, "E", "DS")],
        rest,
        edges,
        Rational::zero(),
    )
    .expect("builtin automaton is well formed")
}

/// Two-state shape with a mixed initial state and a single punishment
/// period, triggered when drivers speed more than `1/2 + tolerance`.
pub fn automaton_ii(speeding: Rational, tolerance: &Rational) -> Result<Automaton> {
    punishment_path_automaton(1, &speeding, &rat(1, 2), tolerance)
}

/// Repeats the stage game's mixed equilibrium of the one-year game forever.
pub fn stage_nash_repetition() -> Automaton {
    let id = "ω_NE";
    let state = AutomatonState::new(
        id,
        MixedStrategy::binary(Player::First, "E", "DE", rat(2, 7)).expect("valid mixture"),
        MixedStrategy::binary(Player::Second, "S", "DS", rat(1, 2)).expect("valid mixture"),
    );
    let mut edges = vec![(id, Signal::Compliant, id)];
    for (player, actions) in [(Player::First, ["E", "DE"]), (Player::Second, ["S", "DS"])] {
        for action in actions {
            edges.push((id, Signal::deviated(player, action), id));
        }
    }
    Automaton::new(names(POLICE, DRIVERS), vec![state], id, edges, Rational::zero())
        .expect("builtin automaton is well formed")
}

/// A builtin game or tree.
#[derive(Debug, Clone)]
pub enum Builtin {
    Stage(StageGame),
    Tree(GameTree),
}

/// Looks up a builtin by name. `short-period(N,alpha,beta)` takes an
/// integer `N` and rationals in `p/q` form.
pub fn builtin(name: &str) -> Result<Builtin> {
    match name {
        "elvik-stage" => return Ok(Builtin::Stage(elvik_stage())),
        "elvik-tree-police-first" => return Ok(Builtin::Tree(elvik_tree_police_first())),
        "elvik-tree-drivers-first" => return Ok(Builtin::Tree(elvik_tree_drivers_first())),
        _ => {}
    }
    if let Some(args) = name.strip_prefix("short-period(").and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        if let [n, alpha, beta] = parts[..] {
            let periods: u32 = n
                .parse()
                .map_err(|_| Error::Builtin(format!("`{n}` is not a period count")))?;
            let alpha = parse_rational(alpha).map_err(|e| Error::Builtin(e.to_string()))?;
            let beta = parse_rational(beta).map_err(|e| Error::Builtin(e.to_string()))?;
            return short_period_game(periods, &alpha, &beta).map(Builtin::Stage);
        }
        return Err(Error::Builtin(format!(
            "`{name}` needs three arguments: short-period(N,alpha,beta)"
        )));
    }
    Err(Error::Builtin(format!(
        "unknown builtin `{name}`; available: {}",
        BUILTIN_NAMES.join(", ")
    )))
}

pub const AUTOMATON_NAMES: [&str; 3] = ["automaton-i", "automaton-ii(b,epsilon)", "stage-nash-repetition"];

/// Looks up a builtin automaton. `automaton-ii(b,epsilon)` takes rationals
/// in `p/q` form.
pub fn builtin_automaton(name: &str) -> Result<Automaton> {
    match name {
        "automaton-i" => return Ok(automaton_i()),
        "stage-nash-repetition" => return Ok(stage_nash_repetition()),
        _ => {}
    }
    if let Some(args) = name.strip_prefix("automaton-ii(").and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        if let [b, eps] = parts[..] {
            let b = parse_rational(b).map_err(|e| Error::Builtin(e.to_string()))?;
            let eps = parse_rational(eps).map_err(|e| Error::Builtin(e.to_string()))?;
            return automaton_ii(b, &eps);
        }
        return Err(Error::Builtin(format!(
            "`{name}` needs two arguments: automaton-ii(b,epsilon)"
        )));
    }
    Err(Error::Builtin(format!(
        "unknown builtin automaton `{name}`; available: {}",
        AUTOMATON_NAMES.join(", ")
    )))
}
