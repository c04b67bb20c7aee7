//! Deterministic drift of the speeding frequency under a threshold-switching
//! police.
//!
//! Each period the police look at the current frequency `b` and choose E or
//! DE, then the drivers adapt: `b` follows `down_step` after E and `up_step`
//! after DE. Results that leave `[0, 1]` are clamped and flagged.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_exact, in_unit_interval, pair, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepRule {
    Identity,
    /// `b + shift`.
    Affine {
        #[serde(with = "pair")]
        shift: Rational,
    },
    /// `b · factor`.
    Scale {
        #[serde(with = "pair")]
        factor: Rational,
    },
    /// `1 − (1 − b) · factor`.
    ScaleGap {
        #[serde(with = "pair")]
        factor: Rational,
    },
}

impl StepRule {
    pub fn apply(&self, b: &Rational) -> Rational {
        match self {
            StepRule::Identity => b.clone(),
            StepRule::Affine { shift } => b + shift,
            StepRule::Scale { factor } => b * factor,
            StepRule::ScaleGap { factor } => Rational::one() - (Rational::one() - b) * factor,
        }
    }

    /// True when the rule never raises `b` on `[0, 1]`.
    pub fn is_non_increasing(&self) -> bool {
        let one = Rational::one();
        match self {
            StepRule::Identity => true,
            StepRule::Affine { shift } => !shift.is_positive(),
            StepRule::Scale { factor } => !factor.is_negative() && *factor <= one,
            StepRule::ScaleGap { factor } => *factor >= one,
        }
    }

    /// True when the rule never lowers `b` on `[0, 1]`.
    pub fn is_non_decreasing(&self) -> bool {
        let one = Rational::one();
        match self {
            StepRule::Identity => true,
            StepRule::Affine { shift } => !shift.is_negative(),
            StepRule::Scale { factor } => *factor >= one,
            StepRule::ScaleGap { factor } => !factor.is_negative() && *factor <= one,
        }
    }
}

impl fmt::Display for StepRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepRule::Identity => write!(f, "b"),
            StepRule::Affine { shift } if shift.is_negative() => write!(f, "b - {}", format_exact(&-shift.clone())),
            StepRule::Affine { shift } => write!(f, "b + {}", format_exact(shift)),
            StepRule::Scale { factor } => write!(f, "b * {}", format_exact(factor)),
            StepRule::ScaleGap { factor } => write!(f, "1 - (1 - b) * {}", format_exact(factor)),
        }
    }
}

fn half() -> Rational {
    rat(1, 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdaptationSpec {
    #[serde(with = "pair")]
    pub b0: Rational,
    pub down_step: StepRule,
    pub up_step: StepRule,
    /// Enforcing police stop once `b ≤ switch_down`.
    #[serde(with = "pair", default = "half")]
    pub switch_down: Rational,
    /// Passive police start enforcing once `b > switch_up`.
    #[serde(with = "pair", default = "half")]
    pub switch_up: Rational,
    pub horizon: usize,
}

impl AdaptationSpec {
    /// Spec with both switch thresholds at 1/2.
    pub fn new(b0: Rational, down_step: StepRule, up_step: StepRule, horizon: usize) -> Self {
        AdaptationSpec {
            b0,
            down_step,
            up_step,
            switch_down: half(),
            switch_up: half(),
            horizon,
        }
    }

    pub fn with_switches(mut self, switch_down: Rational, switch_up: Rational) -> Self {
        self.switch_down = switch_down;
        self.switch_up = switch_up;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !in_unit_interval(&self.b0) {
            return Err(Error::InvalidSpec(format!("b0 = {} is outside [0, 1]", format_exact(&self.b0))));
        }
        if !self.down_step.is_non_increasing() {
            return Err(Error::InvalidSpec(format!("down_step `{}` can raise b", self.down_step)));
        }
        if !self.up_step.is_non_decreasing() {
            return Err(Error::InvalidSpec(format!("up_step `{}` can lower b", self.up_step)));
        }
        if self.switch_down > self.switch_up {
            return Err(Error::InvalidSpec("switch_down exceeds switch_up".into()));
        }
        if self.horizon == 0 {
            return Err(Error::InvalidSpec("horizon must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PoliceAction {
    E,
    DE,
}

impl fmt::Display for PoliceAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PoliceAction::E => "E",
            PoliceAction::DE => "DE",
        })
    }
}

/// Police choice given last period's action (`None` in the first period).
/// Between the two thresholds the police keep their previous action and
/// start out enforcing.
pub fn police_choice(previous: Option<PoliceAction>, b: &Rational, spec: &AdaptationSpec) -> PoliceAction {
    if *b > spec.switch_up {
        return PoliceAction::E;
    }
    if *b <= spec.switch_down {
        return PoliceAction::DE;
    }
    previous.unwrap_or(PoliceAction::E)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub t: usize,
    pub action: PoliceAction,
    /// Frequency observed by the police at the start of period `t`.
    pub b: Rational,
    /// Set when this period's `b` had to be clamped into `[0, 1]`.
    pub clamped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub offset: usize,
    pub period: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub records: Vec<Record>,
    pub cycle: Option<Cycle>,
}

pub const TRAJECTORY_COLUMNS: [&str; 4] = ["t", "action", "b_num", "b_den"];

impl Trajectory {
    pub fn csv_rows(&self) -> impl Iterator<Item = [String; 4]> + '_ {
        self.records.iter().map(|r| {
            [
                r.t.to_string(),
                r.action.to_string(),
                r.b.numer().to_string(),
                r.b.denom().to_string(),
            ]
        })
    }

    pub fn any_clamped(&self) -> bool {
        self.records.iter().any(|r| r.clamped)
    }
}

fn clamp_unit(b: Rational) -> (Rational, bool) {
    if b.is_negative() {
        (Rational::zero(), true)
    } else if b > Rational::one() {
        (Rational::one(), true)
    } else {
        (b, false)
    }
}

pub fn simulate(spec: &AdaptationSpec) -> Result<Trajectory> {
    spec.validate()?;
    let mut records = Vec::with_capacity(spec.horizon);
    let mut b = spec.b0.clone();
    let mut clamped = false;
    let mut previous = None;
    for t in 0..spec.horizon {
        let action = police_choice(previous, &b, spec);
        let rule = match action {
            PoliceAction::E => &spec.down_step,
            PoliceAction::DE => &spec.up_step,
        };
        let next = rule.apply(&b);
        records.push(Record { t, action, b, clamped });
        (b, clamped) = clamp_unit(next);
        previous = Some(action);
    }
    let mut trajectory = Trajectory { records, cycle: None };
    trajectory.cycle = detect_cycle(&trajectory);
    Ok(trajectory)
}

/// First exact recurrence of a `(police action, b)` state.
pub fn detect_cycle(trajectory: &Trajectory) -> Option<Cycle> {
    let mut seen: HashMap<(PoliceAction, &Rational), usize> = HashMap::new();
    for r in &trajectory.records {
        if let Some(&first) = seen.get(&(r.action, &r.b)) {
            return Some(Cycle {
                offset: first,
                period: r.t - first,
            });
        }
        seen.insert((r.action, &r.b), r.t);
    }
    None
}
