//! One function per subcommand. Each returns the rendered report; `main`
//! decides where it goes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use enforcement::dynamics::{self, TRAJECTORY_COLUMNS};
use enforcement::extensive_form::{backward_induction, off_path_threshold, Comparison, Node, NodeId, OffPathThreshold};
use enforcement::game_core::{expected_utility, mixed_nash_2x2, pure_nash, MixedStrategy, Player, StageGame};
use enforcement::rational::{format_both, format_decimal, format_exact, int, RationalPair};
use enforcement::repeated::{verify as classify, Automaton, Discount, StateValues, Verdict};
use enforcement::synthesis::{
    build_punishment_automaton, build_subsidized_automaton, driver_threshold, min_punishment_length,
    police_feasible, subsidy_lower_bound, sweep_point, threshold_report, PunishmentLength, ShortPeriodParams,
    SubsidyReport, SweepRow, SWEEP_COLUMNS,
};
use enforcement::Rational;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::input::{load_automaton, load_game, load_spec, load_tree};
use crate::{CliError, Expect, Format, Outcome, ShortPeriodArgs};

/// `{"exact": [p, q], "decimal": "..."}`.
fn num(value: &Rational) -> Value {
    json!({ "exact": RationalPair(value.clone()), "decimal": format_decimal(value) })
}

fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("report values serialize")
}

fn no_csv(command: &str, format: Format) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::Input(format!("--format csv is not available for `{command}`")));
    }
    Ok(())
}

fn csv_document<I>(header: &[&str], rows: I) -> Result<String, CliError>
where
    I: IntoIterator,
    I::Item: IntoIterator,
    <I::Item as IntoIterator>::Item: AsRef<[u8]>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn short_period(args: &ShortPeriodArgs) -> Result<ShortPeriodParams, CliError> {
    Ok(ShortPeriodParams::new(
        args.periods,
        args.punishment,
        args.delta.clone(),
        args.speeding.clone(),
        args.alpha.clone(),
        args.beta.clone(),
    )?)
}

fn mix_probs(game: &StageGame, m: &MixedStrategy) -> Vec<Rational> {
    game.actions(m.owner()).iter().map(|l| m.prob(l)).collect()
}

/// Both mixtures, players ordered by name, e.g.
/// `drivers (1/2,1/2), police (2/7,5/7)`.
fn describe_mixed(game: &StageGame, eq: &(MixedStrategy, MixedStrategy)) -> String {
    let mut parts: Vec<(String, String)> = [&eq.0, &eq.1]
        .into_iter()
        .map(|m| {
            let probs: Vec<String> = mix_probs(game, m).iter().map(format_exact).collect();
            (game.player_name(m.owner()).to_lowercase(), probs.join(","))
        })
        .collect();
    parts.sort();
    parts
        .iter()
        .map(|(name, probs)| format!("{name} ({probs})"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn analyze_stage(source: &str, format: Format) -> Result<Outcome, CliError> {
    no_csv("analyze-stage", format)?;
    let game = load_game(source)?;
    let pure = pure_nash(&game);
    let mixed = if game.is_two_by_two() {
        mixed_nash_2x2(&game)?
    } else {
        Vec::new()
    };
    let pure_text = if pure.is_empty() {
        "none".to_string()
    } else {
        pure.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    };
    let mixed_text = if mixed.is_empty() {
        "none".to_string()
    } else {
        mixed.iter().map(|eq| describe_mixed(&game, eq)).collect::<Vec<_>>().join(" and ")
    };
    let summary = format!("pure NE: {pure_text}; mixed NE: {mixed_text}");
    let names = game.player_names();

    if format == Format::Json {
        let pure_json: Vec<Value> = pure
            .iter()
            .map(|p| {
                let cell = game.cell(p).expect("equilibrium profile is in the game");
                json!({
                    "profile": { names[0].as_str(): p.first, names[1].as_str(): p.second },
                    "payoffs": { names[0].as_str(): num(&cell[0]), names[1].as_str(): num(&cell[1]) },
                })
            })
            .collect();
        let mut mixed_json = Vec::new();
        for (p, q) in &mixed {
            let mut strategies = Map::new();
            let mut payoffs = Map::new();
            for (m, player) in [(p, Player::First), (q, Player::Second)] {
                let probs: Map<String, Value> = game
                    .actions(player)
                    .iter()
                    .map(|l| (l.clone(), num(&m.prob(l))))
                    .collect();
                strategies.insert(names[player.index()].clone(), Value::Object(probs));
                payoffs.insert(names[player.index()].clone(), num(&expected_utility(&game, player, p, q)?));
            }
            mixed_json.push(json!({ "strategies": strategies, "payoffs": payoffs }));
        }
        let doc = json!({ "summary": summary, "pure_nash": pure_json, "mixed_nash": mixed_json });
        return Ok(Outcome::ok(pretty(&doc)));
    }

    let mut out = summary;
    for p in &pure {
        let cell = game.cell(p)?;
        write!(out, "\n  {p}: {} {}, {} {}", names[0], format_both(&cell[0]), names[1], format_both(&cell[1])).unwrap();
    }
    for (p, q) in &mixed {
        for (m, player) in [(p, Player::First), (q, Player::Second)] {
            let probs: Vec<String> = game
                .actions(player)
                .iter()
                .map(|l| format!("{l} {}", format_both(&m.prob(l))))
                .collect();
            let u = expected_utility(&game, player, p, q)?;
            write!(out, "\n  {}: {}; expected payoff {}", names[player.index()], probs.join(", "), format_both(&u)).unwrap();
        }
    }
    Ok(Outcome::ok(out))
}

pub fn induct(source: &str, pivot: Option<&str>, format: Format) -> Result<Outcome, CliError> {
    no_csv("induct", format)?;
    let tree = load_tree(source)?;
    let ind = backward_induction(&tree)?;
    let names = tree.players();

    let threshold = match pivot {
        None => None,
        Some(id) => {
            let node = NodeId::new(id);
            tree.node(&node)
                .map_err(|e| CliError::Input(format!("--pivot `{id}`: {e}")))?;
            let parent = tree
                .parent(&node)
                .ok_or_else(|| CliError::Input(format!("--pivot `{id}`: the root has no earlier mover")))?;
            let earlier = match tree.node(parent)? {
                Node::Decision { player, .. } => *player,
                Node::Leaf { .. } => unreachable!("a parent is a decision node"),
            };
            let t = off_path_threshold(&tree, &node, earlier)
                .map_err(|e| CliError::Input(format!("--pivot `{id}`: {e}")))?;
            Some((node, earlier, t))
        }
    };

    let profile: Vec<(String, String)> = tree
        .decision_nodes()
        .filter_map(|(id, _, _)| ind.profile.action(id).map(|a| (id.to_string(), a.to_string())))
        .collect();

    if format == Format::Json {
        let pivot_json = threshold.as_ref().map(|(node, earlier, t)| {
            let base = json!({ "mixing_node": node, "earlier_mover": names[earlier.index()] });
            let mut obj = base.as_object().cloned().unwrap_or_default();
            match t {
                OffPathThreshold::Pivot {
                    probability,
                    probability_of,
                    pivot_node,
                    kept_action,
                    keeps_when,
                } => {
                    obj.insert("kind".into(), json!("pivot"));
                    obj.insert("probability".into(), num(probability));
                    obj.insert("probability_of".into(), json!(probability_of));
                    obj.insert("pivot_node".into(), json!(pivot_node));
                    obj.insert("kept_action".into(), json!(kept_action));
                    obj.insert("keeps_when".into(), json!(keeps_when));
                }
                OffPathThreshold::AlwaysIndifferent => {
                    obj.insert("kind".into(), json!("always_indifferent"));
                }
                OffPathThreshold::NoSwitch { preferred } => {
                    obj.insert("kind".into(), json!("no_switch"));
                    obj.insert("preferred".into(), json!(preferred));
                }
            }
            Value::Object(obj)
        });
        let doc = json!({
            "path": ind.path,
            "payoffs": { names[0].as_str(): num(&ind.payoffs[0]), names[1].as_str(): num(&ind.payoffs[1]) },
            "profile": profile.iter().map(|(k, v)| (k.clone(), json!(v))).collect::<Map<String, Value>>(),
            "ties": ind.ties,
            "pivot": pivot_json,
        });
        return Ok(Outcome::ok(pretty(&doc)));
    }

    let mut out = tree.render();
    if !out.ends_with('\n') {
        out.push('\n');
    }
    let path: Vec<String> = ind
        .path
        .iter()
        .map(|s| format!("{} {} at {}", names[s.player.index()], s.action, s.node))
        .collect();
    writeln!(out, "backward induction path: {}", path.join(" → ")).unwrap();
    writeln!(
        out,
        "payoffs: {} {}, {} {}",
        names[0],
        format_both(&ind.payoffs[0]),
        names[1],
        format_both(&ind.payoffs[1])
    )
    .unwrap();
    let profile_text: Vec<String> = profile.iter().map(|(n, a)| format!("{n}={a}")).collect();
    writeln!(out, "profile: {}", profile_text.join(", ")).unwrap();
    if ind.ties.is_empty() {
        write!(out, "ties: none").unwrap();
    } else {
        let ties: Vec<String> = ind.ties.iter().map(|(n, a)| format!("{n}: {}", a.join(" | "))).collect();
        write!(out, "ties: {}", ties.join("; ")).unwrap();
    }
    if let Some((node, earlier, t)) = threshold {
        let who = &names[earlier.index()];
        let line = match t {
            OffPathThreshold::Pivot {
                probability,
                probability_of,
                pivot_node,
                kept_action,
                keeps_when,
            } => {
                let side = match keeps_when {
                    Comparison::Above => "above",
                    Comparison::Below => "below",
                };
                format!(
                    "mixing at {node}: {who} keeps {kept_action} at {pivot_node} while P({probability_of}) is {side} {}",
                    format_both(&probability)
                )
            }
            OffPathThreshold::AlwaysIndifferent => {
                format!("mixing at {node}: {who} is indifferent at every probability")
            }
            OffPathThreshold::NoSwitch { preferred } => {
                format!("mixing at {node}: {who} prefers {preferred} at every probability")
            }
        };
        write!(out, "\n{line}").unwrap();
    }
    Ok(Outcome::ok(out))
}

fn values_json(values: &StateValues, players: &[String; 2]) -> Value {
    let mut obj = Map::new();
    for (s, id) in values.state_ids().iter().enumerate() {
        let per: Map<String, Value> = Player::BOTH
            .into_iter()
            .map(|p| (players[p.index()].clone(), num(values.at(p, s))))
            .collect();
        obj.insert(id.clone(), Value::Object(per));
    }
    Value::Object(obj)
}

fn verdict_json(verdict: &Verdict, players: &[String; 2]) -> Value {
    let mut v = serde_json::to_value(verdict).expect("verdicts serialize");
    if let Value::Object(obj) = &mut v {
        obj.insert("values".into(), values_json(&verdict.values, players));
    }
    v
}

fn verdict_text(verdict: &Verdict, players: &[String; 2]) -> String {
    let mut out = verdict.to_string();
    for w in &verdict.witnesses {
        let place = if w.on_path { "on path" } else { "off path" };
        write!(out, "\n  {w}: gain {} ({place})", format_both(&w.gain)).unwrap();
    }
    write!(
        out,
        "\n  best-response gain: {} {}, {} {}",
        players[0],
        format_both(&verdict.best_response_gain[0]),
        players[1],
        format_both(&verdict.best_response_gain[1])
    )
    .unwrap();
    out.push_str("\n  state values:");
    for (s, id) in verdict.values.state_ids().iter().enumerate() {
        write!(
            out,
            "\n    {id}: {} {}, {} {}",
            players[0],
            format_both(verdict.values.at(Player::First, s)),
            players[1],
            format_both(verdict.values.at(Player::Second, s))
        )
        .unwrap();
    }
    out
}

pub fn verify(
    game: &str,
    automaton: &str,
    delta: &Rational,
    expect: Option<Expect>,
    format: Format,
) -> Result<Outcome, CliError> {
    no_csv("verify", format)?;
    let game = load_game(game)?;
    let automaton = load_automaton(automaton)?;
    let delta = Discount::new(delta.clone()).map_err(|e| CliError::Input(format!("--delta: {e}")))?;
    let verdict = classify(&automaton, &game, &delta)?;
    let players = game.player_names();
    let report = match format {
        Format::Json => pretty(&verdict_json(&verdict, players)),
        _ => verdict_text(&verdict, players),
    };
    Ok(Outcome::expecting(report, expect, verdict.classification))
}

fn subsidy_text(report: &SubsidyReport) -> String {
    let mut out = String::new();
    for c in &report.constraints {
        writeln!(out, "  m = {}: top-up ≥ {}", c.m, format_both(&c.bound)).unwrap();
    }
    writeln!(out, "binding constraint: m = {}", report.binding_m).unwrap();
    writeln!(out, "per-period subsidy: {}", format_both(&report.per_period)).unwrap();
    writeln!(out, "gamma (brute force): {}", format_both(&report.gamma_bruteforce)).unwrap();
    write!(
        out,
        "gamma (closed form): {}{}",
        format_both(&report.gamma_closed_form),
        if report.discrepancy { " [differs from brute force]" } else { "" }
    )
    .unwrap();
    out
}

fn subsidy_json(report: &SubsidyReport) -> Value {
    json!({
        "constraints": report.constraints.iter()
            .map(|c| json!({ "m": c.m, "bound": num(&c.bound) }))
            .collect::<Vec<_>>(),
        "binding_m": report.binding_m,
        "per_period": num(&report.per_period),
        "gamma_bruteforce": num(&report.gamma_bruteforce),
        "gamma_closed_form": num(&report.gamma_closed_form),
        "discrepancy": report.discrepancy,
    })
}

pub fn synthesize(
    args: &ShortPeriodArgs,
    tolerance: &Rational,
    subsidize: bool,
    automaton_out: Option<&Path>,
    expect: Option<Expect>,
    format: Format,
) -> Result<Outcome, CliError> {
    no_csv("synthesize", format)?;
    let params = short_period(args)?;
    let driver = driver_threshold(params.punishment(), params.delta().value())?;
    let police = police_feasible(&params);
    let b = params.speeding();
    let bounds = format!(
        "driver lower bound {}, police upper bound {}",
        format_both(&driver),
        format_both(&police.bound)
    );
    if driver >= police.bound {
        return Err(CliError::Infeasible(format!("no admissible speeding probability: {bounds}")));
    }
    if *b <= driver || !police.feasible {
        return Err(CliError::Infeasible(format!(
            "b = {} lies outside the admissible interval: {bounds}",
            format_both(b)
        )));
    }
    let (automaton, subsidy): (Automaton, Option<SubsidyReport>) = if subsidize {
        let (a, r) = build_subsidized_automaton(&params, tolerance)?;
        (a, Some(r))
    } else {
        (build_punishment_automaton(&params, tolerance)?, None)
    };
    let game = params.game()?;
    let verdict = classify(&automaton, &game, params.delta())?;
    if let Some(path) = automaton_out {
        let text = serde_json::to_string_pretty(&automaton).expect("automata serialize");
        fs::write(path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let players = game.player_names();
    let report = match format {
        Format::Json => pretty(&json!({
            "driver_lower_bound": num(&driver),
            "police_upper_bound": num(&police.bound),
            "speeding": num(b),
            "subsidy": subsidy.as_ref().map(subsidy_json),
            "automaton": automaton,
            "verdict": verdict_json(&verdict, players),
        })),
        _ => {
            let mut out = format!(
                "driver lower bound: {}\npolice upper bound: {}\nb = {} is admissible\n",
                format_both(&driver),
                format_both(&police.bound),
                format_both(b)
            );
            if let Some(r) = &subsidy {
                out.push_str("subsidy constraints:\n");
                out.push_str(&subsidy_text(r));
                out.push('\n');
            }
            out.push_str(&automaton.to_string());
            if !out.ends_with('\n') {
                out.push('\n');
            }
            write!(out, "verdict: {}", verdict_text(&verdict, players)).unwrap();
            out
        }
    };
    Ok(Outcome::expecting(report, expect, verdict.classification))
}

pub fn thresholds(
    n: u32,
    delta: &Rational,
    costs: Option<(&Rational, &Rational)>,
    speeding: Option<&Rational>,
    target: Option<&Rational>,
    format: Format,
) -> Result<Outcome, CliError> {
    let report = threshold_report(n, delta, costs)?;
    let shortest = target.map(|t| min_punishment_length(t, delta)).transpose()?;

    match format {
        Format::Csv => {
            let row = match (costs, speeding) {
                (Some((alpha, beta)), Some(b)) => sweep_point(n, delta, b, alpha, beta)?.csv_fields(),
                _ => {
                    let opt = |v: Option<&Rational>| v.map(format_exact).unwrap_or_default();
                    vec![
                        n.to_string(),
                        delta.numer().to_string(),
                        delta.denom().to_string(),
                        format_exact(&report.driver_lower_bound),
                        opt(report.police_upper_bound.as_ref()),
                        report
                            .police_upper_bound
                            .as_ref()
                            .map(|_| report.feasible_interval.is_some().to_string())
                            .unwrap_or_default(),
                        String::new(),
                        String::new(),
                        opt(speeding),
                        opt(costs.map(|c| c.0)),
                        opt(costs.map(|c| c.1)),
                    ]
                }
            };
            Ok(Outcome::ok(csv_document(&SWEEP_COLUMNS, [row])?))
        }
        Format::Json => {
            let doc = json!({
                "n": n,
                "delta": num(delta),
                "driver_lower_bound": num(&report.driver_lower_bound),
                "exponent_n_bound": num(&report.exponent_n_bound),
                "limit_at_delta_1": num(&report.limit_at_delta_1),
                "police_upper_bound": report.police_upper_bound.as_ref().map(num),
                "feasible_interval": report.feasible_interval.as_ref().map(|(lo, hi)| json!([num(lo), num(hi)])),
                "reference_checks": report.reference_checks.iter().map(|c| json!({
                    "label": c.label,
                    "reference": num(&c.reference),
                    "computed": num(&c.computed),
                    "consistent": c.consistent,
                })).collect::<Vec<_>>(),
                "shortest_punishment": shortest,
            });
            Ok(Outcome::ok(pretty(&doc)))
        }
        Format::Text => {
            let mut out = format!(
                "driver bound (n = {n}, δ = {}): {}\n",
                format_exact(delta),
                format_both(&report.driver_lower_bound)
            );
            writeln!(out, "exponent-n variant: {}", format_both(&report.exponent_n_bound)).unwrap();
            write!(out, "limit as δ → 1: {}", format_both(&report.limit_at_delta_1)).unwrap();
            for c in &report.reference_checks {
                let verdict = if c.consistent { "consistent" } else { "inconsistent" };
                write!(
                    out,
                    "\nreference {} for the {}: {verdict} with {}",
                    format_decimal(&c.reference),
                    c.label,
                    format_both(&c.computed)
                )
                .unwrap();
            }
            if let Some(p) = &report.police_upper_bound {
                write!(out, "\npolice bound β/α: {}", format_both(p)).unwrap();
                match &report.feasible_interval {
                    Some((lo, hi)) => write!(out, "\nfeasible interval: ({}, {})", format_exact(lo), format_exact(hi)),
                    None => write!(out, "\nfeasible interval: empty"),
                }
                .unwrap();
            }
            if let (Some(t), Some(s)) = (target, &shortest) {
                match s {
                    PunishmentLength::Length(k) => {
                        write!(out, "\nshortest punishment with bound below {}: n = {k}", format_both(t))
                    }
                    PunishmentLength::Infeasible => {
                        write!(out, "\nno punishment length brings the bound below {}", format_both(t))
                    }
                }
                .unwrap();
            }
            Ok(Outcome::ok(out))
        }
    }
}

pub fn subsidy(args: &ShortPeriodArgs, format: Format) -> Result<Outcome, CliError> {
    no_csv("subsidy", format)?;
    let params = short_period(args)?;
    let report = subsidy_lower_bound(&params)?;
    let game = params.game()?;
    let before = classify(&build_punishment_automaton(&params, &int(0))?, &game, params.delta())?;
    let (subsidized, _) = build_subsidized_automaton(&params, &int(0))?;
    let after = classify(&subsidized, &game, params.delta())?;
    let out = match format {
        Format::Json => pretty(&json!({
            "subsidy": subsidy_json(&report),
            "verdict_without": verdict_json(&before, game.player_names()),
            "verdict_with": verdict_json(&after, game.player_names()),
        })),
        _ => format!(
            "subsidy constraints:\n{}\nwithout subsidy: {before}\nwith subsidy: {after}",
            subsidy_text(&report)
        ),
    };
    Ok(Outcome::ok(out))
}

pub fn simulate(spec: &Path, format: Format) -> Result<Outcome, CliError> {
    let spec = load_spec(spec)?;
    let traj = dynamics::simulate(&spec)?;
    let out = match format {
        Format::Csv => csv_document(&TRAJECTORY_COLUMNS, traj.csv_rows())?,
        Format::Json => pretty(&json!({
            "records": traj.records.iter().map(|r| json!({
                "t": r.t,
                "action": r.action,
                "b": num(&r.b),
                "clamped": r.clamped,
            })).collect::<Vec<_>>(),
            "cycle": traj.cycle,
        })),
        Format::Text => {
            let mut out = format!(
                "down step: {}; up step: {}; switch down ≤ {}, switch up > {}\n",
                spec.down_step,
                spec.up_step,
                format_exact(&spec.switch_down),
                format_exact(&spec.switch_up)
            );
            for r in &traj.records {
                let mark = if r.clamped { " (clamped)" } else { "" };
                writeln!(out, "t = {:>3}  {:<2}  b = {}{mark}", r.t, r.action.to_string(), format_both(&r.b)).unwrap();
            }
            match traj.cycle {
                Some(c) => write!(out, "cycle: period {} from t = {}", c.period, c.offset),
                None => write!(out, "cycle: none within {} steps", spec.horizon),
            }
            .unwrap();
            out
        }
    };
    Ok(Outcome::ok(out))
}

/// Cost values for a sweep: an explicit list, or `a0 + a1·b`.
pub enum CostGrid {
    Values(Vec<Rational>),
    Affine(Rational, Rational),
}

impl CostGrid {
    fn at(&self, b: &Rational) -> Vec<Rational> {
        match self {
            CostGrid::Values(v) => v.clone(),
            CostGrid::Affine(a0, a1) => vec![a0 + a1 * b],
        }
    }
}

pub struct SweepGrid {
    pub n: Vec<u32>,
    pub delta: Vec<Rational>,
    pub speeding: Vec<Rational>,
    pub alpha: CostGrid,
    pub beta: CostGrid,
}

impl SweepGrid {
    /// Grid points with `n` outermost and `β` innermost.
    fn points(&self) -> Vec<(u32, &Rational, &Rational, Rational, Rational)> {
        let mut out = Vec::new();
        for &n in &self.n {
            for d in &self.delta {
                for b in &self.speeding {
                    for a in self.alpha.at(b) {
                        for c in self.beta.at(b) {
                            out.push((n, d, b, a.clone(), c));
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn sweep(grid: &SweepGrid, format: Format) -> Result<Outcome, CliError> {
    let rows: Vec<SweepRow> = grid
        .points()
        .par_iter()
        .map(|(n, d, b, a, c)| {
            sweep_point(*n, d, b, a, c).map_err(|e| {
                CliError::Input(format!(
                    "grid point n = {n}, δ = {}, b = {}, α = {}, β = {}: {e}",
                    format_exact(d),
                    format_exact(b),
                    format_exact(a),
                    format_exact(c)
                ))
            })
        })
        .collect::<Result<_, _>>()?;
    let out = match format {
        Format::Csv => csv_document(&SWEEP_COLUMNS, rows.iter().map(SweepRow::csv_fields))?,
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize"),
        Format::Text => rows
            .iter()
            .map(|r| {
                let gamma = r
                    .gamma_bruteforce
                    .as_ref()
                    .map(|g| format!(", gamma {}", format_both(g)))
                    .unwrap_or_default();
                format!(
                    "n = {}, δ = {}, b = {}, α = {}, β = {}: driver {}, police {}, {}{gamma}",
                    r.n,
                    format_exact(&r.delta),
                    format_exact(&r.speeding),
                    format_exact(&r.alpha),
                    format_exact(&r.beta),
                    format_both(&r.driver_bound),
                    format_both(&r.police_bound),
                    if r.feasible { "feasible" } else { "infeasible" }
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok(Outcome::ok(out))
}
