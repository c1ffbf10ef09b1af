//! JSON shapes written to stdout. Every number carries its exact rational
//! form next to a decimal approximation.

use facloc::scalar::{decimal_string, exact_string};
use facloc::solver::Ratio;
use facloc::verify::{DeviationWitness, ReplayReport};
use facloc::{Instance, Outcome, Point, Scalar, Selection};
use serde::Serialize;

pub const DECIMAL_PLACES: u32 = 12;

#[derive(Debug, Clone, Serialize)]
pub struct Value {
    pub exact: String,
    pub decimal: String,
}

impl From<&Scalar> for Value {
    fn from(v: &Scalar) -> Self {
        Self {
            exact: exact_string(v),
            decimal: decimal_string(v, DECIMAL_PLACES),
        }
    }
}

impl From<&Ratio> for Value {
    fn from(r: &Ratio) -> Self {
        match r {
            Ratio::Finite(v) => v.into(),
            Ratio::Unbounded => Self {
                exact: "inf".into(),
                decimal: "inf".into(),
            },
        }
    }
}

pub fn location(point: &Point) -> String {
    point.to_string()
}

#[derive(Debug, Clone, Serialize)]
pub struct SelectionJson {
    pub candidates: Vec<usize>,
    pub locations: Vec<String>,
}

impl SelectionJson {
    pub fn new(instance: &Instance, selection: &Selection) -> Self {
        Self {
            candidates: selection.facilities().iter().map(|c| c.get()).collect(),
            locations: selection
                .facilities()
                .iter()
                .map(|c| location(&instance.candidates()[c.index()]))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Weighted {
    #[serde(flatten)]
    pub selection: SelectionJson,
    pub probability: Value,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OutcomeJson {
    Deterministic {
        #[serde(flatten)]
        selection: SelectionJson,
    },
    Randomized {
        support: Vec<Weighted>,
    },
}

impl OutcomeJson {
    pub fn new(instance: &Instance, outcome: &Outcome) -> Self {
        match outcome {
            Outcome::Deterministic(s) => OutcomeJson::Deterministic {
                selection: SelectionJson::new(instance, s),
            },
            Outcome::Randomized(l) => OutcomeJson::Randomized {
                support: l
                    .support()
                    .iter()
                    .map(|(s, p)| Weighted {
                        selection: SelectionJson::new(instance, s),
                        probability: p.into(),
                    })
                    .collect(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveJson {
    pub objective: String,
    pub optimal_value: Value,
    pub optimal_outcomes: Vec<SelectionJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunJson {
    pub mechanism: String,
    pub outcome: OutcomeJson,
    pub cost_sc: Value,
    pub cost_mc: Value,
    pub optimal_sc: Value,
    pub optimal_mc: Value,
    pub ratio_sc: Value,
    pub ratio_mc: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Searched {
    pub mechanism: String,
    pub max_coalition: usize,
    pub grid: usize,
    pub reports_per_agent: usize,
    pub evaluations: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MemberJson {
    pub agent: usize,
    pub truthful: Value,
    pub deviated: Value,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum VerifyJson {
    Witness {
        coalition: Vec<usize>,
        misreports: Vec<String>,
        outcome_before: OutcomeJson,
        outcome_after: OutcomeJson,
        costs: Vec<MemberJson>,
        searched: Searched,
    },
    None {
        searched: Searched,
    },
}

impl VerifyJson {
    pub fn new(instance: &Instance, witness: Option<&DeviationWitness>, searched: Searched) -> Self {
        match witness {
            None => VerifyJson::None { searched },
            Some(w) => VerifyJson::Witness {
                coalition: w.coalition.iter().map(|a| a.get()).collect(),
                misreports: w.misreports.iter().map(location).collect(),
                outcome_before: OutcomeJson::new(instance, &w.before),
                outcome_after: OutcomeJson::new(instance, &w.after),
                costs: w
                    .costs
                    .iter()
                    .map(|m| MemberJson {
                        agent: m.agent.get(),
                        truthful: (&m.truthful).into(),
                        deviated: (&m.deviated).into(),
                    })
                    .collect(),
                searched,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub mechanism: String,
    pub objective: String,
    pub family: String,
    pub count: u64,
    pub max_ratio: Option<Value>,
    pub argmax: Option<u64>,
    pub histogram: Vec<Bucket>,
    pub unbounded: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Bucket {
    pub from: String,
    pub to: Option<String>,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvaluationJson {
    pub agents: Vec<String>,
    pub candidates: Vec<String>,
    pub outcome: OutcomeJson,
    pub cost_mc: Value,
    pub optimal_mc: Value,
    pub ratio_mc: Value,
}

impl From<&facloc::verify::Evaluation> for EvaluationJson {
    fn from(e: &facloc::verify::Evaluation) -> Self {
        Self {
            agents: e.instance.agents().iter().map(location).collect(),
            candidates: e.instance.candidates().iter().map(location).collect(),
            outcome: OutcomeJson::new(&e.instance, &e.outcome),
            cost_mc: (&e.cost).into(),
            optimal_mc: (&e.optimum).into(),
            ratio_mc: (&e.ratio).into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReplayJson {
    pub construction: String,
    pub mechanism: String,
    pub epsilon: Value,
    pub far_point: Option<Value>,
    pub bound: Value,
    pub truthful: EvaluationJson,
    pub deviated: EvaluationJson,
    pub beats_bound: bool,
    pub zero_probability: Value,
    pub truthful_cost: Value,
    pub misreport_cost: Value,
    pub margin: Value,
    pub sp_violation: bool,
    pub far_point_miss: Option<[Value; 2]>,
}

impl From<&ReplayReport> for ReplayJson {
    fn from(r: &ReplayReport) -> Self {
        Self {
            construction: r.construction.to_string(),
            mechanism: r.mechanism.clone(),
            epsilon: (&r.epsilon).into(),
            far_point: r.far_point.as_ref().map(Value::from),
            bound: (&r.bound).into(),
            truthful: (&r.truthful).into(),
            deviated: (&r.deviated).into(),
            beats_bound: r.beats_bound,
            zero_probability: (&r.zero_probability).into(),
            truthful_cost: (&r.truthful_cost).into(),
            misreport_cost: (&r.misreport_cost).into(),
            margin: (&r.margin).into(),
            sp_violation: r.sp_violation,
            far_point_miss: r.far_point_miss.as_ref().map(|(a, b)| [a.into(), b.into()]),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}
