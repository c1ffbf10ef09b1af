//! Agent cost and the two objectives.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::instance::Instance;
use crate::model::outcome::{AgentId, Lottery, Outcome, Selection};
use crate::model::space::Point;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    /// Sum of agent costs.
    Social,
    /// Largest agent cost.
    Maximum,
}

impl Objective {
    pub fn as_str(self) -> &'static str {
        match self {
            Objective::Social => "sc",
            Objective::Maximum => "mc",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sc" | "social" => Ok(Objective::Social),
            "mc" | "max" | "maximum" => Ok(Objective::Maximum),
            other => Err(Error::Parameter(format!("unknown objective {other:?}"))),
        }
    }
}

/// Distance from `location` to the closest selected facility.
pub(crate) fn cost_at(instance: &Instance, selection: &Selection, location: &Point) -> Scalar {
    selection
        .facilities()
        .iter()
        .map(|c| instance.distance(location, &instance.candidates()[c.index()]))
        .min()
        .expect("selection is validated non-empty")
}

pub fn agent_cost(instance: &Instance, selection: &Selection, agent: AgentId) -> Result<Scalar> {
    let location = instance.agent(agent)?;
    selection.validate(instance.candidate_count())?;
    Ok(cost_at(instance, selection, location))
}

pub fn social_cost(instance: &Instance, selection: &Selection) -> Result<Scalar> {
    selection.validate(instance.candidate_count())?;
    Ok(instance
        .agents()
        .iter()
        .map(|x| cost_at(instance, selection, x))
        .sum())
}

pub fn max_cost(instance: &Instance, selection: &Selection) -> Result<Scalar> {
    selection.validate(instance.candidate_count())?;
    Ok(instance
        .agents()
        .iter()
        .map(|x| cost_at(instance, selection, x))
        .max()
        .expect("instances have at least one agent"))
}

pub fn cost(instance: &Instance, selection: &Selection, objective: Objective) -> Result<Scalar> {
    match objective {
        Objective::Social => social_cost(instance, selection),
        Objective::Maximum => max_cost(instance, selection),
    }
}

/// Probability-weighted objective over the lottery's support.
pub fn expected_cost(instance: &Instance, lottery: &Lottery, objective: Objective) -> Result<Scalar> {
    lottery
        .support()
        .iter()
        .try_fold(Scalar::zero(), |acc, (selection, p)| {
            Ok(acc + p * cost(instance, selection, objective)?)
        })
}

/// Objective of any outcome; expected value for randomized ones.
pub fn outcome_cost(instance: &Instance, outcome: &Outcome, objective: Objective) -> Result<Scalar> {
    match outcome {
        Outcome::Deterministic(s) => cost(instance, s, objective),
        Outcome::Randomized(l) => expected_cost(instance, l, objective),
    }
}

/// Expected cost of a true `location` under `outcome`.
pub fn expected_cost_at(instance: &Instance, outcome: &Outcome, location: &Point) -> Result<Scalar> {
    instance.space().validate(location)?;
    outcome.validate(instance.candidate_count())?;
    Ok(match outcome {
        Outcome::Deterministic(s) => cost_at(instance, s, location),
        Outcome::Randomized(l) => l
            .support()
            .iter()
            .map(|(s, p)| p * cost_at(instance, s, location))
            .sum(),
    })
}

pub fn expected_agent_cost(instance: &Instance, outcome: &Outcome, agent: AgentId) -> Result<Scalar> {
    expected_cost_at(instance, outcome, instance.agent(agent)?)
}
