//! Thresholds, punishment-path automata and enforcement subsidies for the
//! short-period enforcement game.
//!
//! Drivers mix at the initial state `ω_ms` while the police do not enforce.
//! Detected speeding starts `n` periods of `(E,DS)`. The drivers are deterred
//! when `b > (1 − δ)/(1 − δ^{n+1})`; the police stay passive at `ω_ms` when
//! `b < β/α`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::catalog::{short_period_game, DRIVERS, POLICE};
use crate::error::{Error, Result};
use crate::game_core::{MixedStrategy, Player, StageGame};
use crate::rational::{format_exact, in_unit_interval, int, pow, rat, Rational, RationalPair};
use crate::repeated::{Automaton, AutomatonState, Discount, Signal, TopUp};

pub const MIXED_STATE: &str = "ω_ms";

pub fn punishment_state(k: u32) -> String {
    format!("ω_(E,DS)_{k}")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortPeriodParams {
    periods: u32,
    punishment: u32,
    delta: Discount,
    speeding: Rational,
    alpha: Rational,
    beta: Rational,
}

impl ShortPeriodParams {
    /// `periods` per year (`N ≥ 2`), `punishment` length `1 ≤ n < N`, discount
    /// `δ_N`, speeding probability `b`, and the police costs `α(b)`, `β(b)`.
    pub fn new(
        periods: u32,
        punishment: u32,
        delta: Rational,
        speeding: Rational,
        alpha: Rational,
        beta: Rational,
    ) -> Result<Self> {
        if periods < 2 {
            return Err(Error::InvalidParams(format!("N = {periods} must be at least 2")));
        }
        if punishment == 0 || punishment >= periods {
            return Err(Error::InvalidParams(format!(
                "punishment length n = {punishment} must satisfy 1 ≤ n < N = {periods}"
            )));
        }
        let delta = Discount::new(delta).map_err(|e| Error::InvalidParams(e.to_string()))?;
        if !in_unit_interval(&speeding) {
            return Err(Error::InvalidParams(format!(
                "speeding probability {} is outside [0, 1]",
                format_exact(&speeding)
            )));
        }
        if !alpha.is_positive() || !beta.is_positive() {
            return Err(Error::InvalidParams("alpha and beta must be positive".into()));
        }
        Ok(ShortPeriodParams {
            periods,
            punishment,
            delta,
            speeding,
            alpha,
            beta,
        })
    }

    pub fn periods(&self) -> u32 {
        self.periods
    }

    pub fn punishment(&self) -> u32 {
        self.punishment
    }

    pub fn delta(&self) -> &Discount {
        &self.delta
    }

    pub fn speeding(&self) -> &Rational {
        &self.speeding
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// The stage game these parameters describe.
    pub fn game(&self) -> Result<StageGame> {
        short_period_game(self.periods, &self.alpha, &self.beta)
    }
}

fn checked_delta(delta: &Rational) -> Result<&Rational> {
    if delta.is_negative() || *delta >= Rational::one() {
        return Err(Error::InvalidDiscount(format!("{} is outside [0, 1)", format_exact(delta))));
    }
    Ok(delta)
}

/// Smallest speeding probability at which `n` punishment periods deter the
/// drivers: `(1 − δ)/(1 − δ^{n+1})`.
pub fn driver_threshold(n: u32, delta: &Rational) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidParams("punishment length must be at least 1".into()));
    }
    let delta = checked_delta(delta)?;
    Ok((Rational::one() - delta) / (Rational::one() - pow(delta, n + 1)))
}

/// `(1 − δ)/(1 − δ^n)`, the same bound with the exponent lowered by one.
/// Equals 1 for `n = 1`.
pub fn exponent_n_threshold(n: u32, delta: &Rational) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidParams("punishment length must be at least 1".into()));
    }
    let delta = checked_delta(delta)?;
    if delta.is_zero() {
        return Ok(Rational::one());
    }
    Ok((Rational::one() - delta) / (Rational::one() - pow(delta, n)))
}

/// Limit of [`driver_threshold`] as `δ → 1`.
pub fn threshold_limit(n: u32) -> Rational {
    rat(1, i64::from(n) + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PunishmentLength {
    Length(u32),
    Infeasible,
}

/// Shortest punishment path whose driver threshold lies strictly below
/// `target`. Infeasible once `target ≤ 1 − δ`, the bound's floor.
pub fn min_punishment_length(target: &Rational, delta: &Rational) -> Result<PunishmentLength> {
    let delta = checked_delta(delta)?;
    if !target.is_positive() || *target >= Rational::one() {
        return Err(Error::InvalidParams(format!(
            "target {} must lie in (0, 1)",
            format_exact(target)
        )));
    }
    let floor = Rational::one() - delta;
    if *target <= floor {
        return Ok(PunishmentLength::Infeasible);
    }
    let mut power = delta * delta;
    let mut n = 1u32;
    loop {
        if &floor / (Rational::one() - &power) < *target {
            return Ok(PunishmentLength::Length(n));
        }
        power *= delta;
        n += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoliceFeasibility {
    pub feasible: bool,
    /// `β/α`.
    pub bound: Rational,
    /// `β/α − b`.
    pub margin: Rational,
}

/// The police prefer not enforcing at `ω_ms` iff `b < β/α`.
pub fn police_feasible(params: &ShortPeriodParams) -> PoliceFeasibility {
    police_bound_check(&params.speeding, &params.alpha, &params.beta)
}

fn police_bound_check(b: &Rational, alpha: &Rational, beta: &Rational) -> PoliceFeasibility {
    let bound = beta / alpha;
    let margin = &bound - b;
    PoliceFeasibility {
        feasible: margin.is_positive(),
        bound,
        margin,
    }
}

/// A published decimal that a closed-form value is compared against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceCheck {
    pub label: String,
    pub reference: Rational,
    pub computed: Rational,
    pub consistent: bool,
}

/// Two-decimal reference values for the `δ → 1` limit.
fn reference_limit(n: u32) -> Option<Rational> {
    match n {
        2 => Some(rat(33, 100)),
        3 => Some(rat(20, 100)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdReport {
    pub n: u32,
    pub delta: Rational,
    pub driver_lower_bound: Rational,
    pub police_upper_bound: Option<Rational>,
    pub feasible_interval: Option<(Rational, Rational)>,
    pub limit_at_delta_1: Rational,
    /// Same bound with exponent `n` instead of `n + 1`.
    pub exponent_n_bound: Rational,
    pub reference_checks: Vec<ReferenceCheck>,
}

/// Driver and (when costs are given) police bounds for `n` periods of
/// punishment at discount `delta`. `costs` is `(α, β)`.
pub fn threshold_report(n: u32, delta: &Rational, costs: Option<(&Rational, &Rational)>) -> Result<ThresholdReport> {
    let driver = driver_threshold(n, delta)?;
    let police = match costs {
        Some((alpha, beta)) => {
            if !alpha.is_positive() || !beta.is_positive() {
                return Err(Error::InvalidParams("alpha and beta must be positive".into()));
            }
            Some(beta / alpha)
        }
        None => None,
    };
    let feasible_interval = police
        .as_ref()
        .filter(|p| driver < **p)
        .map(|p| (driver.clone(), p.clone()));
    let limit = threshold_limit(n);
    let reference_checks = reference_limit(n)
        .map(|reference| {
            let consistent = (&limit - &reference).abs() < rat(1, 200);
            ReferenceCheck {
                label: format!("limit for n = {n} as δ → 1"),
                reference,
                computed: limit.clone(),
                consistent,
            }
        })
        .into_iter()
        .collect();
    Ok(ThresholdReport {
        n,
        delta: delta.clone(),
        exponent_n_bound: exponent_n_threshold(n, delta)?,
        driver_lower_bound: driver,
        police_upper_bound: police,
        feasible_interval,
        limit_at_delta_1: limit,
        reference_checks,
    })
}

/// Automaton with a mixed state `ω_ms` (police DE, drivers `S ↦ b`) and an
/// `n`-state `(E,DS)` punishment chain.
///
/// At `ω_ms`, drivers detected playing pure S start the chain; other
/// deviations at `ω_ms` stay there. Fails when `trigger + ε ≥ 1`, since pure
/// S would then never exceed the trigger. In a
/// punishment state compliance advances the chain (the last state returns
/// to `ω_ms`) and any deviation repeats the state.
pub fn punishment_path_automaton(
    n: u32,
    speeding: &Rational,
    trigger: &Rational,
    tolerance: &Rational,
) -> Result<Automaton> {
    if n == 0 {
        return Err(Error::InvalidParams("punishment length must be at least 1".into()));
    }
    if !in_unit_interval(speeding) {
        return Err(Error::InvalidParams(format!(
            "speeding probability {} is outside [0, 1]",
            format_exact(speeding)
        )));
    }
    let drivers = MixedStrategy::binary(Player::Second, "S", "DS", speeding.clone())?;
    let mut states = vec![AutomatonState::new(
        MIXED_STATE,
        MixedStrategy::pure(Player::First, "DE"),
        drivers,
    )];
    let ids: Vec<String> = (1..=n).map(punishment_state).collect();
    for id in &ids {
        states.push(AutomatonState::pure(id.clone(), "E", "DS"));
    }
    if Rational::one() <= trigger + tolerance {
        return Err(Error::InvalidParams(format!(
            "trigger {} plus tolerance {} is never exceeded; the punishment path would be unreachable",
            format_exact(trigger),
            format_exact(tolerance)
        )));
    }
    let ms = MIXED_STATE;
    let mut edges = vec![
        (ms, Signal::Compliant, ms),
        (ms, Signal::deviated(Player::Second, "S"), ids[0].as_str()),
        (ms, Signal::deviated(Player::Second, "DS"), ms),
        (ms, Signal::deviated(Player::First, "E"), ms),
    ];
    for (k, id) in ids.iter().enumerate() {
        let next = ids.get(k + 1).map(String::as_str).unwrap_or(ms);
        edges.push((id.as_str(), Signal::Compliant, next));
        edges.push((id.as_str(), Signal::deviated(Player::First, "DE"), id.as_str()));
        edges.push((id.as_str(), Signal::deviated(Player::Second, "S"), id.as_str()));
    }
    Automaton::new(
        [POLICE.to_string(), DRIVERS.to_string()],
        states,
        ms,
        edges,
        tolerance.clone(),
    )
}

/// The punishment-path automaton for `params`, triggered at the driver
/// threshold for its `n` and `δ`.
pub fn build_punishment_automaton(params: &ShortPeriodParams, tolerance: &Rational) -> Result<Automaton> {
    if tolerance.is_negative() {
        return Err(Error::InvalidParams("tolerance must be non-negative".into()));
    }
    let trigger = driver_threshold(params.punishment, params.delta.value())?;
    punishment_path_automaton(params.punishment, &params.speeding, &trigger, tolerance)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsidyConstraint {
    /// Punishment state index, 1-based.
    pub m: u32,
    /// Minimum per-period top-up making the police value at state `m` non-negative.
    pub bound: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsidyReport {
    pub per_period: Rational,
    pub binding_m: u32,
    pub constraints: Vec<SubsidyConstraint>,
    /// `n · x*`.
    pub gamma_bruteforce: Rational,
    /// `(1/n)(1 − δ^n/(1 − δ^n)) β`.
    pub gamma_closed_form: Rational,
    pub discrepancy: bool,
}

fn subsidy_terms(n: u32, delta: &Rational, damage: &Rational, beta: &Rational) -> Result<SubsidyReport> {
    if !delta.is_positive() {
        return Err(Error::InvalidParams("subsidy needs δ > 0".into()));
    }
    checked_delta(delta)?;
    let one = Rational::one();
    let v_ms = -damage.clone();
    let mut constraints = Vec::new();
    for m in 1..=n {
        let k = n - m + 1;
        // (1 − δ)(−β + x)(1 + δ + … + δ^{k−1}) + δ^k V_ms ≥ 0
        let mut geometric = Rational::zero();
        for j in 0..k {
            geometric += pow(delta, j);
        }
        let weight = (&one - delta) * geometric;
        let bound = beta - pow(delta, k) * &v_ms / weight;
        constraints.push(SubsidyConstraint { m, bound });
    }
    let binding = constraints
        .iter()
        .fold(&constraints[0], |best, c| if c.bound > best.bound { c } else { best });
    let per_period = binding.bound.clone();
    let binding_m = binding.m;
    let dn = pow(delta, n);
    let n_r = int(n.into());
    let gamma_closed_form = (&one - &dn / (&one - &dn)) * beta / &n_r;
    let gamma_bruteforce = &per_period * &n_r;
    Ok(SubsidyReport {
        discrepancy: gamma_bruteforce != gamma_closed_form,
        per_period,
        binding_m,
        constraints,
        gamma_bruteforce,
        gamma_closed_form,
    })
}

/// Smallest per-period payment to the police for enforcing on the
/// punishment path that removes every incentive to stop punishing, found by
/// checking each remaining-horizon constraint directly.
pub fn subsidy_lower_bound(params: &ShortPeriodParams) -> Result<SubsidyReport> {
    subsidy_terms(
        params.punishment,
        params.delta.value(),
        &(&params.alpha * &params.speeding),
        &params.beta,
    )
}

/// [`build_punishment_automaton`] with the per-period subsidy paid to the
/// police for enforcing in every punishment state.
pub fn build_subsidized_automaton(
    params: &ShortPeriodParams,
    tolerance: &Rational,
) -> Result<(Automaton, SubsidyReport)> {
    let report = subsidy_lower_bound(params)?;
    let base = build_punishment_automaton(params, tolerance)?;
    let amount = report.per_period.clone();
    let automaton = base.with_top_ups(|k, _| {
        if k == base.initial() {
            Vec::new()
        } else {
            vec![TopUp {
                player: Player::First,
                action: "E".into(),
                amount: amount.clone(),
            }]
        }
    });
    Ok((automaton, report))
}

/// One grid point of a threshold sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub n: u32,
    pub delta: Rational,
    pub driver_bound: Rational,
    pub police_bound: Rational,
    pub feasible: bool,
    pub gamma_bruteforce: Option<Rational>,
    pub gamma_closed_form: Option<Rational>,
    pub speeding: Rational,
    pub alpha: Rational,
    pub beta: Rational,
}

pub const SWEEP_COLUMNS: [&str; 11] = [
    "n",
    "delta_num",
    "delta_den",
    "driver_bound",
    "police_bound",
    "feasible",
    "gamma_bruteforce",
    "gamma_closed_form",
    "b",
    "alpha",
    "beta",
];

impl SweepRow {
    /// CSV fields in [`SWEEP_COLUMNS`] order, rationals as `p/q`.
    pub fn csv_fields(&self) -> Vec<String> {
        let opt = |v: &Option<Rational>| v.as_ref().map(format_exact).unwrap_or_default();
        vec![
            self.n.to_string(),
            self.delta.numer().to_string(),
            self.delta.denom().to_string(),
            format_exact(&self.driver_bound),
            format_exact(&self.police_bound),
            self.feasible.to_string(),
            opt(&self.gamma_bruteforce),
            opt(&self.gamma_closed_form),
            format_exact(&self.speeding),
            format_exact(&self.alpha),
            format_exact(&self.beta),
        ]
    }
}

#[derive(Serialize)]
struct SweepRowWire {
    n: u32,
    delta: RationalPair,
    driver_bound: RationalPair,
    police_bound: RationalPair,
    feasible: bool,
    gamma_bruteforce: Option<RationalPair>,
    gamma_closed_form: Option<RationalPair>,
    b: RationalPair,
    alpha: RationalPair,
    beta: RationalPair,
}

impl Serialize for SweepRow {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SweepRowWire {
            n: self.n,
            delta: RationalPair(self.delta.clone()),
            driver_bound: RationalPair(self.driver_bound.clone()),
            police_bound: RationalPair(self.police_bound.clone()),
            feasible: self.feasible,
            gamma_bruteforce: self.gamma_bruteforce.clone().map(RationalPair),
            gamma_closed_form: self.gamma_closed_form.clone().map(RationalPair),
            b: RationalPair(self.speeding.clone()),
            alpha: RationalPair(self.alpha.clone()),
            beta: RationalPair(self.beta.clone()),
        }
        .serialize(serializer)
    }
}

/// Bounds and subsidies at one `(n, δ)` for fixed `b`, `α`, `β`. The subsidy
/// columns are empty at `δ = 0`.
pub fn sweep_point(n: u32, delta: &Rational, b: &Rational, alpha: &Rational, beta: &Rational) -> Result<SweepRow> {
    let report = threshold_report(n, delta, Some((alpha, beta)))?;
    let subsidy = if delta.is_zero() {
        None
    } else {
        Some(subsidy_terms(n, delta, &(alpha * b), beta)?)
    };
    Ok(SweepRow {
        n,
        delta: delta.clone(),
        driver_bound: report.driver_lower_bound,
        police_bound: report.police_upper_bound.expect("costs supplied"),
        feasible: report.feasible_interval.is_some(),
        gamma_bruteforce: subsidy.as_ref().map(|s| s.gamma_bruteforce.clone()),
        gamma_closed_form: subsidy.map(|s| s.gamma_closed_form),
        speeding: b.clone(),
        alpha: alpha.clone(),
        beta: beta.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repeated::{verify, Classification};
    use crate::rational::to_f64;

    fn params(n: u32, delta: Rational, b: Rational, alpha: Rational, beta: Rational) -> ShortPeriodParams {
        ShortPeriodParams::new(n + 10, n, delta, b, alpha, beta).unwrap()
    }

    #[test]
    fn param_validation() {
        let ok = |n, nn| ShortPeriodParams::new(n, nn, rat(1, 2), rat(1, 4), int(2), int(1));
        assert!(ok(12, 2).is_ok());
        assert!(matches!(ok(1, 0), Err(Error::InvalidParams(_))));
        assert!(matches!(ok(3, 3), Err(Error::InvalidParams(_))));
        assert!(ShortPeriodParams::new(12, 2, int(1), rat(1, 4), int(2), int(1)).is_err());
        assert!(ShortPeriodParams::new(12, 2, rat(1, 2), rat(5, 4), int(2), int(1)).is_err());
        assert!(ShortPeriodParams::new(12, 2, rat(1, 2), rat(1, 4), int(0), int(1)).is_err());
    }

    #[test]
    fn one_period_threshold() {
        for delta in [rat(0, 1), rat(1, 3), rat(9, 10)] {
            let expected = Rational::one() / (Rational::one() + &delta);
            assert_eq!(driver_threshold(1, &delta).unwrap(), expected);
        }
    }

    #[test]
    fn myopic_threshold_is_one() {
        for n in 1..6 {
            assert_eq!(driver_threshold(n, &int(0)).unwrap(), int(1));
        }
        assert!(matches!(driver_threshold(2, &int(1)), Err(Error::InvalidDiscount(_))));
    }

    #[test]
    fn two_period_threshold_near_one() {
        let delta = rat(99, 100);
        let t = driver_threshold(2, &delta).unwrap();
        assert_eq!(t, rat(1, 100) / (Rational::one() - pow(&delta, 3)));
        assert!((to_f64(&t) - 0.3367).abs() < 5e-5);
    }

    #[test]
    fn limits() {
        assert_eq!(threshold_limit(1), rat(1, 2));
        assert_eq!(threshold_limit(2), rat(1, 3));
        assert_eq!(threshold_limit(3), rat(1, 4));
        let near = Rational::one() - rat(1, 1_000_000);
        let t = driver_threshold(3, &near).unwrap();
        assert!((to_f64(&t) - 0.25).abs() < 1e-5);
    }

    #[test]
    fn reference_flags() {
        let r2 = threshold_report(2, &rat(99, 100), None).unwrap();
        assert!(r2.reference_checks[0].consistent);
        let r3 = threshold_report(3, &rat(99, 100), None).unwrap();
        assert!(!r3.reference_checks[0].consistent);
        assert!(threshold_report(4, &rat(1, 2), None).unwrap().reference_checks.is_empty());
    }

    #[test]
    fn exponent_variant() {
        assert_eq!(exponent_n_threshold(1, &rat(1, 2)).unwrap(), int(1));
        assert_eq!(exponent_n_threshold(2, &rat(1, 2)).unwrap(), rat(2, 3));
    }

    #[test]
    fn min_length_examples() {
        assert_eq!(min_punishment_length(&rat(2, 5), &rat(19, 20)).unwrap(), PunishmentLength::Length(2));
        assert_eq!(min_punishment_length(&rat(3, 5), &rat(3, 4)).unwrap(), PunishmentLength::Length(1));
        assert_eq!(min_punishment_length(&rat(1, 100), &rat(1, 2)).unwrap(), PunishmentLength::Infeasible);
        assert_eq!(min_punishment_length(&rat(1, 2), &rat(1, 2)).unwrap(), PunishmentLength::Infeasible);
    }

    #[test]
    fn min_length_is_minimal() {
        for (num, den) in [(1, 3), (9, 20), (7, 10)] {
            let target = rat(num, den);
            for delta in [rat(3, 4), rat(9, 10), rat(19, 20)] {
                if let PunishmentLength::Length(n) = min_punishment_length(&target, &delta).unwrap() {
                    assert!(driver_threshold(n, &delta).unwrap() < target);
                    if n > 1 {
                        assert!(driver_threshold(n - 1, &delta).unwrap() >= target);
                    }
                }
            }
        }
    }

    #[test]
    fn police_examples() {
        let p = police_feasible(&params(2, rat(1, 2), rat(1, 3), int(20000), int(10000)));
        assert!(p.feasible);
        assert_eq!(p.bound, rat(1, 2));
        assert_eq!(p.margin, rat(1, 6));
        let edge = police_feasible(&params(2, rat(1, 2), rat(1, 2), int(20000), int(10000)));
        assert!(!edge.feasible);
        assert!(edge.margin.is_zero());
        let ratio_one = police_feasible(&params(2, rat(1, 2), rat(9, 10), int(7), int(7)));
        assert!(ratio_one.feasible);
        assert_eq!(ratio_one.margin, rat(1, 10));
    }

    #[test]
    fn thresholds_decrease_in_n_and_delta() {
        let deltas: Vec<Rational> = (1..20).map(|k| rat(k, 20)).collect();
        for n in 1..8 {
            for w in deltas.windows(2) {
                assert!(driver_threshold(n, &w[1]).unwrap() < driver_threshold(n, &w[0]).unwrap());
            }
            for delta in &deltas {
                assert!(driver_threshold(n + 1, delta).unwrap() < driver_threshold(n, delta).unwrap());
            }
        }
    }

    #[test]
    fn thresholds_approach_limit() {
        for n in 1..5 {
            let mut last = None;
            for k in 1..8u32 {
                let delta = Rational::one() - Rational::one() / int(10i64.pow(k));
                let gap = (driver_threshold(n, &delta).unwrap() - threshold_limit(n)).abs();
                if let Some(prev) = last {
                    assert!(gap < prev);
                }
                last = Some(gap);
            }
        }
    }

    #[test]
    fn automaton_shapes() {
        let two = punishment_path_automaton(1, &rat(3, 5), &rat(1, 2), &int(0)).unwrap();
        assert_eq!(two.states().len(), 2);
        let four = build_punishment_automaton(&params(3, rat(9, 10), rat(2, 5), int(4), int(1)), &int(0)).unwrap();
        assert_eq!(four.states().len(), 4);
        let mut s = four.state_index(&punishment_state(1)).unwrap();
        for _ in 0..3 {
            s = four.next_state(s, &Signal::Compliant).unwrap();
        }
        assert_eq!(four.states()[s].id, MIXED_STATE);
        assert!(punishment_path_automaton(0, &rat(1, 2), &rat(1, 2), &int(0)).is_err());
        assert!(punishment_path_automaton(2, &rat(1, 2), &rat(9, 10), &rat(1, 10)).is_err());
    }

    #[test]
    fn subsidy_single_constraint() {
        let (delta, b, alpha, beta) = (rat(3, 4), rat(1, 5), int(200), int(100));
        let r = subsidy_lower_bound(&params(1, delta.clone(), b.clone(), alpha.clone(), beta.clone())).unwrap();
        let expected = &beta + &delta * &alpha * &b / (Rational::one() - &delta);
        assert_eq!(r.per_period, expected);
        let check = (Rational::one() - &delta) * (-beta + &r.per_period) + &delta * -(alpha * b);
        assert!(check.is_zero());
    }

    #[test]
    fn subsidy_without_speeding_covers_cost() {
        let r = subsidy_lower_bound(&params(3, rat(4, 5), int(0), int(300), int(100))).unwrap();
        assert!(r.constraints.iter().all(|c| c.bound == int(100)));
        assert_eq!(r.per_period, int(100));
    }

    #[test]
    fn subsidy_binding_constraint_is_shortest_horizon() {
        // α·b = 50 with β = 100.
        let r = subsidy_lower_bound(&params(2, rat(9, 10), rat(1, 2), int(100), int(100))).unwrap();
        let m1 = &r.constraints[0].bound;
        let m2 = &r.constraints[1].bound;
        assert!((to_f64(m1) - 313.157_894_7).abs() < 1e-6);
        assert_eq!(*m2, int(550));
        assert_eq!(r.binding_m, 2);
        assert_eq!(r.gamma_bruteforce, int(1100));
        assert!(r.discrepancy);
    }

    #[test]
    fn subsidy_requires_positive_delta() {
        assert!(subsidy_lower_bound(&params(2, int(0), rat(1, 2), int(100), int(100))).is_err());
    }

    fn driver_witness_at_ms(p: &ShortPeriodParams) -> bool {
        let a = build_punishment_automaton(p, &int(0)).unwrap();
        let v = verify(&a, &p.game().unwrap(), p.delta()).unwrap();
        let found = v.witnesses_for(Player::Second).any(|w| w.state == MIXED_STATE);
        found
    }

    #[test]
    fn verifier_agrees_with_driver_threshold() {
        for n in 1..4 {
            for delta in [rat(1, 2), rat(9, 10), rat(19, 20)] {
                let t = driver_threshold(n, &delta).unwrap();
                let above = (&t + Rational::one()) / int(2);
                let below = &t / int(2);
                assert!(!driver_witness_at_ms(&params(n, delta.clone(), above, int(4), int(1))));
                assert!(driver_witness_at_ms(&params(n, delta.clone(), below, int(4), int(1))));
            }
        }
    }

    #[test]
    fn consistent_costs_give_nash_but_not_spe() {
        // Driver threshold for n = 2 at δ = 99/100 is about 0.3367; the
        // police bound with α = 2β is 1/2.
        let p = ShortPeriodParams::new(12, 2, rat(99, 100), rat(17, 50), int(200), int(100)).unwrap();
        let a = build_punishment_automaton(&p, &int(0)).unwrap();
        let v = verify(&a, &p.game().unwrap(), p.delta()).unwrap();
        assert_eq!(v.classification, Classification::NeNotSpe, "{v}");
        assert!(v.witnesses.iter().all(|w| w.player == Player::First && w.state != MIXED_STATE));
        let (subsidized, _) = build_subsidized_automaton(&p, &int(0)).unwrap();
        let v = verify(&subsidized, &p.game().unwrap(), p.delta()).unwrap();
        assert_eq!(v.classification, Classification::Spe, "{v}");
    }

    #[test]
    fn sweep_row_fields() {
        let row = sweep_point(1, &rat(1, 2), &rat(1, 3), &int(20000), &int(10000)).unwrap();
        assert_eq!(row.driver_bound, rat(2, 3));
        assert_eq!(row.police_bound, rat(1, 2));
        assert!(!row.feasible);
        let fields = row.csv_fields();
        assert_eq!(fields.len(), SWEEP_COLUMNS.len());
        assert_eq!(&fields[..6], ["1", "1", "2", "2/3", "1/2", "false"]);
        let myopic = sweep_point(2, &int(0), &rat(1, 3), &int(2), &int(1)).unwrap();
        assert!(myopic.gamma_bruteforce.is_none());
    }
}
