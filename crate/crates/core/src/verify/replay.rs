//! Runs the lower-bound argument against a concrete mechanism.
//!
//! For the instance pair (I, I′) the report gives the mechanism's
//! maximum-cost ratio on both. It then checks the manipulation the argument
//! relies on: agent 2 at `1 + ε` reporting 3 instead. A strict gain is an
//! SP violation.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::instances::{ConstructionName, PaperConstruction};
use crate::mechanisms::Mechanism;
use crate::model::{expected_agent_cost, outcome_cost, AgentId, CandidateId, Instance, Objective, Outcome};
use crate::scalar::{int, Scalar};
use crate::solver::{optimal, Ratio};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LowerBound {
    SingleDeterministic,
    SingleRandomized,
    TwoDeterministic,
    TwoRandomized,
}

impl LowerBound {
    pub const ALL: [LowerBound; 4] = [
        LowerBound::SingleDeterministic,
        LowerBound::SingleRandomized,
        LowerBound::TwoDeterministic,
        LowerBound::TwoRandomized,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LowerBound::SingleDeterministic => "single-deterministic",
            LowerBound::SingleRandomized => "single-randomized",
            LowerBound::TwoDeterministic => "two-deterministic",
            LowerBound::TwoRandomized => "two-randomized",
        }
    }

    /// Ratio no strategy-proof mechanism of this class can beat.
    pub fn bound(self) -> Scalar {
        match self {
            LowerBound::SingleDeterministic | LowerBound::TwoDeterministic => int(3),
            LowerBound::SingleRandomized | LowerBound::TwoRandomized => int(2),
        }
    }

    pub fn is_two_facility(self) -> bool {
        matches!(self, LowerBound::TwoDeterministic | LowerBound::TwoRandomized)
    }

    fn pair(self) -> (ConstructionName, ConstructionName) {
        if self.is_two_facility() {
            (ConstructionName::TwoLowerBound, ConstructionName::TwoLowerBoundDeviated)
        } else {
            (ConstructionName::SingleLowerBound, ConstructionName::SingleLowerBoundDeviated)
        }
    }
}

impl fmt::Display for LowerBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LowerBound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownConstruction(s.to_string()))
    }
}

/// The mechanism on one instance of the pair, under maximum cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub instance: Instance,
    pub outcome: Outcome,
    pub cost: Scalar,
    pub optimum: Scalar,
    pub ratio: Ratio,
}

impl Evaluation {
    fn new(instance: Instance, mechanism: &Mechanism) -> Result<Self> {
        mechanism.check_applicable(&instance)?;
        let outcome = mechanism.apply(&instance)?;
        let cost = outcome_cost(&instance, &outcome, Objective::Maximum)?;
        let optimum = optimal(&instance, Objective::Maximum)?.value;
        Ok(Self {
            ratio: Ratio::of(&cost, &optimum),
            instance,
            outcome,
            cost,
            optimum,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayReport {
    pub construction: LowerBound,
    pub mechanism: String,
    pub epsilon: Scalar,
    pub far_point: Option<Scalar>,
    pub bound: Scalar,
    pub truthful: Evaluation,
    pub deviated: Evaluation,
    /// Ratio on I′ strictly below the bound.
    pub beats_bound: bool,
    /// Probability that candidate 0 is selected on I.
    pub zero_probability: Scalar,
    /// Agent 2's cost at `1 + ε` when reporting truthfully on I.
    pub truthful_cost: Scalar,
    /// Agent 2's cost at `1 + ε` after reporting 3, i.e. under the outcome on I′.
    pub misreport_cost: Scalar,
    /// `truthful_cost - misreport_cost`; positive means a profitable lie.
    pub margin: Scalar,
    pub sp_violation: bool,
    /// Probability that the far candidate is left out on (I, I′); the
    /// argument needs it to be zero only in the limit of a far point at
    /// infinity.
    pub far_point_miss: Option<(Scalar, Scalar)>,
}

pub fn replay_lower_bound(
    construction: LowerBound,
    mechanism: &Mechanism,
    epsilon: &Scalar,
    far_point: Option<&Scalar>,
) -> Result<ReplayReport> {
    let (truthful_name, deviated_name) = construction.pair();
    let build = |name| {
        let mut c = PaperConstruction::new(name, epsilon.clone());
        if let Some(l) = far_point {
            c = c.with_far_point(l.clone());
        }
        c.build().map(|i| (i, c.far_point))
    };
    let (truthful_instance, far) = build(truthful_name)?;
    let (deviated_instance, _) = build(deviated_name)?;
    let truthful = Evaluation::new(truthful_instance, mechanism)?;
    let deviated = Evaluation::new(deviated_instance, mechanism)?;

    let agent = AgentId::new(2).expect("nonzero");
    let zero = CandidateId::new(1).expect("nonzero");
    let truthful_cost = expected_agent_cost(&truthful.instance, &truthful.outcome, agent)?;
    let misreport_cost = expected_agent_cost(&truthful.instance, &deviated.outcome, agent)?;
    let margin = &truthful_cost - &misreport_cost;
    let bound = construction.bound();

    let far_point_miss = construction.is_two_facility().then(|| {
        let far_candidate = CandidateId::new(3).expect("nonzero");
        (
            Scalar::one() - truthful.outcome.probability_of(far_candidate),
            Scalar::one() - deviated.outcome.probability_of(far_candidate),
        )
    });

    Ok(ReplayReport {
        construction,
        mechanism: mechanism.to_string(),
        epsilon: epsilon.clone(),
        far_point: construction.is_two_facility().then_some(far),
        beats_bound: deviated.ratio.finite().is_some_and(|r| r < &bound),
        zero_probability: truthful.outcome.probability_of(zero),
        sp_violation: margin > Scalar::zero(),
        bound,
        truthful,
        deviated,
        truthful_cost,
        misreport_cost,
        margin,
        far_point_miss,
    })
}
