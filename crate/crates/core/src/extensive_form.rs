//! Finite perfect-information game trees: backward induction, Nash and
//! subgame-perfection checks, and the indifference threshold an earlier
//! mover faces when a later node mixes.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game_core::{MixedStrategy, Player, StageGame};
use crate::rational::{format_exact, RationalPair, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Self {
        NodeId(id.into())
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub action: String,
    pub child: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Decision { player: Player, edges: Vec<Edge> },
    Leaf { payoffs: [Rational; 2] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeWire", into = "TreeWire")]
pub struct GameTree {
    players: [String; 2],
    root: NodeId,
    nodes: BTreeMap<NodeId, Node>,
    preorder: Vec<NodeId>,
    parent: HashMap<NodeId, NodeId>,
}

impl GameTree {
    pub fn new(players: [String; 2], root: NodeId, nodes: BTreeMap<NodeId, Node>) -> Result<Self> {
        if players[0] == players[1] {
            return Err(Error::InvalidTree("player names must differ".into()));
        }
        if !nodes.contains_key(&root) {
            return Err(Error::InvalidTree(format!("root `{root}` is not in the node table")));
        }
        let mut parent: HashMap<NodeId, NodeId> = HashMap::new();
        for (id, node) in &nodes {
            if let Node::Decision { edges, .. } = node {
                if edges.is_empty() {
                    return Err(Error::InvalidTree(format!("decision node `{id}` has no edges")));
                }
                for (k, edge) in edges.iter().enumerate() {
                    if edges[..k].iter().any(|e| e.action == edge.action) {
                        return Err(Error::InvalidTree(format!(
                            "node `{id}` has two edges labelled `{}`",
                            edge.action
                        )));
                    }
                    if !nodes.contains_key(&edge.child) {
                        return Err(Error::InvalidTree(format!(
                            "edge `{}` of `{id}` points to unknown node `{}`",
                            edge.action, edge.child
                        )));
                    }
                    if edge.child == root {
                        return Err(Error::InvalidTree(format!("edge of `{id}` points back to the root")));
                    }
                    if parent.insert(edge.child.clone(), id.clone()).is_some() {
                        return Err(Error::InvalidTree(format!(
                            "node `{}` has more than one parent",
                            edge.child
                        )));
                    }
                }
            }
        }
        let mut preorder = Vec::with_capacity(nodes.len());
        let mut stack = vec![root.clone()];
        while let Some(id) = stack.pop() {
            if let Node::Decision { edges, .. } = &nodes[&id] {
                stack.extend(edges.iter().rev().map(|e| e.child.clone()));
            }
            preorder.push(id);
            if preorder.len() > nodes.len() {
                return Err(Error::InvalidTree("tree contains a cycle".into()));
            }
        }
        if preorder.len() != nodes.len() {
            let unreachable = nodes.keys().find(|id| !preorder.contains(id)).unwrap();
            return Err(Error::InvalidTree(format!("node `{unreachable}` is unreachable from the root")));
        }
        Ok(GameTree {
            players,
            root,
            nodes,
            preorder,
            parent,
        })
    }

    pub fn players(&self) -> &[String; 2] {
        &self.players
    }

    pub fn player_name(&self, player: Player) -> &str {
        &self.players[player.index()]
    }

    pub fn player_by_name(&self, name: &str) -> Option<Player> {
        Player::BOTH.into_iter().find(|p| self.players[p.index()] == name)
    }

    pub fn root(&self) -> &NodeId {
        &self.root
    }

    pub fn node(&self, id: &NodeId) -> Result<&Node> {
        self.nodes
            .get(id)
            .ok_or_else(|| Error::InvalidTree(format!("unknown node `{id}`")))
    }

    pub fn nodes(&self) -> &BTreeMap<NodeId, Node> {
        &self.nodes
    }

    /// Node ids in depth-first order, children visited in edge order.
    pub fn preorder(&self) -> &[NodeId] {
        &self.preorder
    }

    pub fn decision_nodes(&self) -> impl Iterator<Item = (&NodeId, Player, &[Edge])> {
        self.preorder.iter().filter_map(|id| match &self.nodes[id] {
            Node::Decision { player, edges } => Some((id, *player, edges.as_slice())),
            Node::Leaf { .. } => None,
        })
    }

    pub fn parent(&self, id: &NodeId) -> Option<&NodeId> {
        self.parent.get(id)
    }

    fn edges(&self, id: &NodeId) -> Result<(Player, &[Edge])> {
        match self.node(id)? {
            Node::Decision { player, edges } => Ok((*player, edges)),
            Node::Leaf { .. } => Err(Error::InvalidTree(format!("`{id}` is a leaf"))),
        }
    }

    /// Follows the edge labelled `action` out of `id`.
    pub fn child(&self, id: &NodeId, action: &str) -> Result<&NodeId> {
        let (_, edges) = self.edges(id)?;
        edges
            .iter()
            .find(|e| e.action == action)
            .map(|e| &e.child)
            .ok_or_else(|| Error::InvalidTree(format!("node `{id}` has no edge `{action}`")))
    }

    fn is_descendant(&self, node: &NodeId, ancestor: &NodeId) -> bool {
        let mut cur = Some(node);
        while let Some(id) = cur {
            if id == ancestor {
                return true;
            }
            cur = self.parent.get(id);
        }
        false
    }

    /// Indented text rendering, one edge per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_node(&self.root, 0, None, &mut out);
        out
    }

    fn render_node(&self, id: &NodeId, depth: usize, via: Option<&str>, out: &mut String) {
        let indent = "  ".repeat(depth);
        let prefix = via.map(|a| format!("{a} -> ")).unwrap_or_default();
        match &self.nodes[id] {
            Node::Decision { player, edges } => {
                let _ = writeln!(out, "{indent}{prefix}[{id}] {}", self.player_name(*player));
                for e in edges {
                    self.render_node(&e.child, depth + 1, Some(&e.action), out);
                }
            }
            Node::Leaf { payoffs } => {
                let _ = writeln!(
                    out,
                    "{indent}{prefix}({}, {})",
                    format_exact(&payoffs[0]),
                    format_exact(&payoffs[1])
                );
            }
        }
    }
}

/// One action per decision node, including nodes off the path of play.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PureStrategyProfile {
    pub choices: BTreeMap<NodeId, String>,
}

impl PureStrategyProfile {
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        PureStrategyProfile {
            choices: pairs
                .into_iter()
                .map(|(n, a)| (NodeId::new(n), a.to_string()))
                .collect(),
        }
    }

    pub fn action(&self, node: &NodeId) -> Option<&str> {
        self.choices.get(node).map(String::as_str)
    }
}

/// A behaviour (mixed) strategy at a single decision node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BehaviorAssignment {
    pub node: NodeId,
    pub mix: MixedStrategy,
}

/// A pure profile optionally overridden by a mixture at one node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequentialProfile {
    pub pure: PureStrategyProfile,
    pub behavior: Option<BehaviorAssignment>,
}

impl From<PureStrategyProfile> for SequentialProfile {
    fn from(pure: PureStrategyProfile) -> Self {
        SequentialProfile { pure, behavior: None }
    }
}

impl SequentialProfile {
    pub fn with_mixing(pure: PureStrategyProfile, node: impl Into<NodeId>, mix: MixedStrategy) -> Self {
        SequentialProfile {
            pure,
            behavior: Some(BehaviorAssignment {
                node: node.into(),
                mix,
            }),
        }
    }
}

/// Edge probabilities at every decision node, in edge order.
struct LocalPlay(HashMap<NodeId, Vec<Rational>>);

impl LocalPlay {
    fn from_profile(tree: &GameTree, profile: &SequentialProfile) -> Result<Self> {
        let mut play = HashMap::new();
        for (id, _, edges) in tree.decision_nodes() {
            let behavior = profile.behavior.as_ref().filter(|b| &b.node == id);
            let dist = match behavior {
                Some(b) => {
                    for (label, _) in b.mix.entries() {
                        if !edges.iter().any(|e| &e.action == label) {
                            return Err(Error::InvalidStrategy(format!(
                                "mixture at `{id}` mentions unknown action `{label}`"
                            )));
                        }
                    }
                    edges.iter().map(|e| b.mix.prob(&e.action)).collect()
                }
                None => {
                    let chosen = profile.pure.action(id).ok_or_else(|| {
                        Error::InvalidStrategy(format!("profile assigns no action at `{id}`"))
                    })?;
                    if !edges.iter().any(|e| e.action == chosen) {
                        return Err(Error::InvalidStrategy(format!(
                            "`{chosen}` is not an action at `{id}`"
                        )));
                    }
                    edges
                        .iter()
                        .map(|e| if e.action == chosen { Rational::one() } else { Rational::zero() })
                        .collect()
                }
            };
            play.insert(id.clone(), dist);
        }
        if let Some(b) = &profile.behavior {
            if !play.contains_key(&b.node) {
                return Err(Error::InvalidStrategy(format!(
                    "behaviour node `{}` is not a decision node",
                    b.node
                )));
            }
        }
        Ok(LocalPlay(play))
    }

    fn dist(&self, id: &NodeId) -> &[Rational] {
        &self.0[id]
    }
}

/// Expected payoffs of the subtree at `at` when everyone follows `play`.
fn evaluate(tree: &GameTree, play: &LocalPlay, at: &NodeId) -> [Rational; 2] {
    match &tree.nodes[at] {
        Node::Leaf { payoffs } => payoffs.clone(),
        Node::Decision { edges, .. } => {
            let mut acc = [Rational::zero(), Rational::zero()];
            for (e, p) in edges.iter().zip(play.dist(at)) {
                if p.is_zero() {
                    continue;
                }
                let v = evaluate(tree, play, &e.child);
                acc[0] += p * &v[0];
                acc[1] += p * &v[1];
            }
            acc
        }
    }
}

/// Best payoff `player` can reach in the subtree at `at` by re-choosing at
/// every one of their own nodes while the opponent keeps `play`.
fn best_reply_value(
    tree: &GameTree,
    play: &LocalPlay,
    player: Player,
    at: &NodeId,
    memo: &mut HashMap<NodeId, Rational>,
) -> Rational {
    if let Some(v) = memo.get(at) {
        return v.clone();
    }
    let value = match &tree.nodes[at] {
        Node::Leaf { payoffs } => payoffs[player.index()].clone(),
        Node::Decision { player: mover, edges } if *mover == player => edges
            .iter()
            .map(|e| best_reply_value(tree, play, player, &e.child, memo))
            .max()
            .expect("decision nodes have edges"),
        Node::Decision { edges, .. } => {
            let mut acc = Rational::zero();
            for (e, p) in edges.iter().zip(play.dist(at)) {
                if !p.is_zero() {
                    acc += p * best_reply_value(tree, play, player, &e.child, memo);
                }
            }
            acc
        }
    };
    memo.insert(at.clone(), value.clone());
    value
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathStep {
    pub node: NodeId,
    pub player: Player,
    pub action: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Induction {
    pub profile: PureStrategyProfile,
    pub path: Vec<PathStep>,
    pub payoffs: [Rational; 2],
    /// Decision nodes where more than one action is optimal, with every
    /// optimal action. The canonical profile picks the lexicographically
    /// smallest label.
    pub ties: BTreeMap<NodeId, Vec<String>>,
}

pub fn backward_induction(tree: &GameTree) -> Result<Induction> {
    let mut values: HashMap<&NodeId, [Rational; 2]> = HashMap::new();
    let mut profile = PureStrategyProfile::default();
    let mut ties = BTreeMap::new();
    for id in tree.preorder.iter().rev() {
        let value = match &tree.nodes[id] {
            Node::Leaf { payoffs } => payoffs.clone(),
            Node::Decision { player, edges } => {
                let mover = player.index();
                let best = edges
                    .iter()
                    .map(|e| &values[&e.child][mover])
                    .max()
                    .expect("decision nodes have edges")
                    .clone();
                let mut maximizers: Vec<&Edge> =
                    edges.iter().filter(|e| values[&e.child][mover] == best).collect();
                maximizers.sort_by(|a, b| a.action.cmp(&b.action));
                let pick = maximizers[0];
                if maximizers.len() > 1 {
                    ties.insert(id.clone(), maximizers.iter().map(|e| e.action.clone()).collect());
                }
                profile.choices.insert(id.clone(), pick.action.clone());
                values[&pick.child].clone()
            }
        };
        values.insert(id, value);
    }

    let mut path = Vec::new();
    let mut cur = &tree.root;
    while let Node::Decision { player, .. } = &tree.nodes[cur] {
        let action = profile.choices[cur].clone();
        let next = tree.child(cur, &action)?;
        path.push(PathStep {
            node: cur.clone(),
            player: *player,
            action,
        });
        cur = next;
    }
    Ok(Induction {
        payoffs: values[&tree.root].clone(),
        profile,
        path,
        ties,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeviationWitness {
    pub player: Player,
    pub node: NodeId,
    pub action: String,
    /// How much the deviator gains in the (sub)game where the check failed.
    #[serde(with = "crate::rational::pair")]
    pub gain: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequentialCheck {
    pub is_nash: bool,
    pub is_spe: bool,
    pub nash_witness: Option<DeviationWitness>,
    /// First subgame root, in depth-first order, whose restriction is not a
    /// Nash equilibrium.
    pub spe_witness: Option<DeviationWitness>,
}

/// Unilateral-deviation check for the subgame rooted at `subroot`.
fn nash_in_subgame(
    tree: &GameTree,
    play: &LocalPlay,
    subroot: &NodeId,
) -> Option<DeviationWitness> {
    for player in Player::BOTH {
        let mut memo = HashMap::new();
        let current = evaluate(tree, play, subroot)[player.index()].clone();
        let best = best_reply_value(tree, play, player, subroot, &mut memo);
        if best <= current {
            continue;
        }
        // Walk the reachable part of the subgame to the first node where
        // the deviator's prescribed play is not optimal.
        let mut stack = vec![subroot.clone()];
        while let Some(id) = stack.pop() {
            let Node::Decision { player: mover, edges } = &tree.nodes[&id] else {
                continue;
            };
            let dist = play.dist(&id);
            if *mover == player {
                let child_values: Vec<Rational> = edges
                    .iter()
                    .map(|e| best_reply_value(tree, play, player, &e.child, &mut memo))
                    .collect();
                let top = child_values.iter().max().unwrap().clone();
                let best_edge = edges
                    .iter()
                    .zip(&child_values)
                    .find(|(_, v)| **v == top)
                    .map(|(e, _)| e)
                    .unwrap();
                let suboptimal = dist
                    .iter()
                    .zip(&child_values)
                    .any(|(p, v)| !p.is_zero() && *v < top);
                if suboptimal {
                    return Some(DeviationWitness {
                        player,
                        node: id.clone(),
                        action: best_edge.action.clone(),
                        gain: best - current,
                    });
                }
            }
            for (e, p) in edges.iter().zip(dist).rev() {
                if !p.is_zero() {
                    stack.push(e.child.clone());
                }
            }
        }
        unreachable!("a profitable deviation implies a suboptimal reachable choice");
    }
    None
}

/// Nash check over each player's full pure strategy space, then a Nash
/// check in every subgame for subgame perfection.
pub fn check_nash_sequential(
    tree: &GameTree,
    profile: &SequentialProfile,
) -> Result<SequentialCheck> {
    let play = LocalPlay::from_profile(tree, profile)?;
    let nash_witness = nash_in_subgame(tree, &play, &tree.root);
    let spe_witness = if nash_witness.is_some() {
        nash_witness.clone()
    } else {
        tree.decision_nodes()
            .find_map(|(id, _, _)| nash_in_subgame(tree, &play, id))
    };
    Ok(SequentialCheck {
        is_nash: nash_witness.is_none(),
        is_spe: spe_witness.is_none(),
        nash_witness,
        spe_witness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Comparison {
    Above,
    Below,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OffPathThreshold {
    /// The earlier mover is indifferent exactly when the first action of the
    /// mixing node is played with `probability`, and keeps its
    /// backward-induction action `kept_action` strictly on the
    /// `keeps_when` side of it.
    Pivot {
        probability: Rational,
        probability_of: String,
        pivot_node: NodeId,
        kept_action: String,
        keeps_when: Comparison,
    },
    AlwaysIndifferent,
    /// No probability in `[0, 1]` changes the earlier mover's choice.
    NoSwitch { preferred: String },
}

pub fn off_path_threshold(
    tree: &GameTree,
    mixing_node: &NodeId,
    earlier_mover: Player,
) -> Result<OffPathThreshold> {
    let (_, mix_edges) = tree.edges(mixing_node)?;
    if mix_edges.len() != 2 {
        return Err(Error::UnsupportedShape(format!(
            "mixing node `{mixing_node}` has {} actions, expected 2",
            mix_edges.len()
        )));
    }
    let mut pivot = tree.parent(mixing_node);
    while let Some(id) = pivot {
        if tree.edges(id)?.0 == earlier_mover {
            break;
        }
        pivot = tree.parent(id);
    }
    let pivot = pivot.ok_or_else(|| {
        Error::UnsupportedShape(format!(
            "{} does not move above `{mixing_node}`",
            tree.player_name(earlier_mover)
        ))
    })?;
    let (_, pivot_edges) = tree.edges(pivot)?;
    if pivot_edges.len() != 2 {
        return Err(Error::UnsupportedShape(format!(
            "pivot node `{pivot}` has {} actions, expected 2",
            pivot_edges.len()
        )));
    }

    let induction = backward_induction(tree)?;
    let toward = pivot_edges
        .iter()
        .find(|e| tree.is_descendant(mixing_node, &e.child))
        .expect("mixing node lies below its pivot");
    let other = pivot_edges.iter().find(|e| e.action != toward.action).unwrap();

    let base = SequentialProfile::from(induction.profile.clone());
    let forced = |edge: &Edge| -> Result<Rational> {
        let mut profile = base.clone();
        profile.pure.choices.insert(mixing_node.clone(), edge.action.clone());
        let play = LocalPlay::from_profile(tree, &profile)?;
        Ok(evaluate(tree, &play, &toward.child)[earlier_mover.index()].clone())
    };
    let at_one = forced(&mix_edges[0])?;
    let at_zero = forced(&mix_edges[1])?;
    let play = LocalPlay::from_profile(tree, &base)?;
    let outside = evaluate(tree, &play, &other.child)[earlier_mover.index()].clone();

    if at_one == at_zero {
        return Ok(if at_zero == outside {
            OffPathThreshold::AlwaysIndifferent
        } else if at_zero > outside {
            OffPathThreshold::NoSwitch { preferred: toward.action.clone() }
        } else {
            OffPathThreshold::NoSwitch { preferred: other.action.clone() }
        });
    }
    let p = (&outside - &at_zero) / (&at_one - &at_zero);
    if p.is_negative() || p > Rational::one() {
        // Sign of U_toward − U_outside is constant on [0, 1]; sample at 1/2.
        let half = Rational::new(1.into(), 2.into());
        let mid = &at_zero + &half * (&at_one - &at_zero);
        let preferred = if mid > outside { toward } else { other };
        return Ok(OffPathThreshold::NoSwitch { preferred: preferred.action.clone() });
    }
    // The toward-branch is preferred where U(p) > outside.
    let toward_above = at_one > at_zero;
    let kept_action = induction.profile.choices[pivot].clone();
    let keeps_toward = kept_action == toward.action;
    let keeps_when = match (toward_above, keeps_toward) {
        (true, true) | (false, false) => Comparison::Above,
        _ => Comparison::Below,
    };
    Ok(OffPathThreshold::Pivot {
        probability: p,
        probability_of: mix_edges[0].action.clone(),
        pivot_node: pivot.clone(),
        kept_action,
        keeps_when,
    })
}

/// Normal form induced by a tree: a pure strategy picks one action at each
/// of the player's decision nodes. Strategy labels join those actions with
/// `/` in depth-first node order.
pub fn induced_normal_form(tree: &GameTree) -> Result<StageGame> {
    const LIMIT: usize = 4096;
    let mut strategies: [Vec<Vec<(NodeId, String)>>; 2] = [vec![vec![]], vec![vec![]]];
    for (id, player, edges) in tree.decision_nodes() {
        let slot = &mut strategies[player.index()];
        let mut next = Vec::with_capacity(slot.len() * edges.len());
        for partial in slot.iter() {
            for e in edges {
                let mut s = partial.clone();
                s.push((id.clone(), e.action.clone()));
                next.push(s);
            }
        }
        if next.len() > LIMIT {
            return Err(Error::UnsupportedShape(format!(
                "{} has more than {LIMIT} pure strategies",
                tree.player_name(player)
            )));
        }
        *slot = next;
    }
    let label = |s: &Vec<(NodeId, String)>| {
        if s.is_empty() {
            "-".to_string()
        } else {
            s.iter().map(|(_, a)| a.as_str()).collect::<Vec<_>>().join("/")
        }
    };
    let mut payoffs = Vec::new();
    for s1 in &strategies[0] {
        let mut row = Vec::new();
        for s2 in &strategies[1] {
            let profile = PureStrategyProfile {
                choices: s1.iter().chain(s2).cloned().collect(),
            };
            let play = LocalPlay::from_profile(tree, &profile.into())?;
            row.push(evaluate(tree, &play, &tree.root));
        }
        payoffs.push(row);
    }
    StageGame::new(
        tree.players.clone(),
        [
            strategies[0].iter().map(label).collect(),
            strategies[1].iter().map(label).collect(),
        ],
        payoffs,
    )
}

#[derive(Serialize, Deserialize)]
struct EdgeWire {
    action: String,
    child: NodeId,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NodeWire {
    Decision { player: String, edges: Vec<EdgeWire> },
    Leaf { payoffs: [RationalPair; 2] },
}

#[derive(Serialize, Deserialize)]
struct TreeWire {
    players: [String; 2],
    root: NodeId,
    nodes: BTreeMap<NodeId, NodeWire>,
}

impl TryFrom<TreeWire> for GameTree {
    type Error = Error;

    fn try_from(wire: TreeWire) -> Result<Self> {
        let seat = |name: &str| {
            Player::BOTH
                .into_iter()
                .find(|p| wire.players[p.index()] == name)
                .ok_or_else(|| Error::InvalidTree(format!("unknown player `{name}`")))
        };
        let mut nodes = BTreeMap::new();
        for (id, node) in &wire.nodes {
            let node = match node {
                NodeWire::Decision { player, edges } => Node::Decision {
                    player: seat(player)?,
                    edges: edges
                        .iter()
                        .map(|e| Edge {
                            action: e.action.clone(),
                            child: e.child.clone(),
                        })
                        .collect(),
                },
                NodeWire::Leaf { payoffs } => Node::Leaf {
                    payoffs: payoffs.clone().map(Rational::from),
                },
            };
            nodes.insert(id.clone(), node);
        }
        GameTree::new(wire.players, wire.root, nodes)
    }
}

impl From<GameTree> for TreeWire {
    fn from(tree: GameTree) -> Self {
        let nodes = tree
            .nodes
            .iter()
            .map(|(id, node)| {
                let wire = match node {
                    Node::Decision { player, edges } => NodeWire::Decision {
                        player: tree.players[player.index()].clone(),
                        edges: edges
                            .iter()
                            .map(|e| EdgeWire {
                                action: e.action.clone(),
                                child: e.child.clone(),
                            })
                            .collect(),
                    },
                    Node::Leaf { payoffs } => NodeWire::Leaf {
                        payoffs: payoffs.clone().map(RationalPair),
                    },
                };
                (id.clone(), wire)
            })
            .collect();
        TreeWire {
            players: tree.players,
            root: tree.root,
            nodes,
        }
    }
}
