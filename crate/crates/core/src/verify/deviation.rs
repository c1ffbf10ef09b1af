//! Exhaustive search for profitable misreports by single agents and coalitions.

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mechanisms::Mechanism;
use crate::model::{AgentId, Instance, Outcome, Point, Selection};
use crate::scalar::Scalar;
use crate::solver::DEFAULT_GUARD;
use crate::verify::misreport::MisreportSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberCost {
    pub agent: AgentId,
    /// Cost at the true location when everyone reports truthfully.
    pub truthful: Scalar,
    /// Cost at the true location after the coalition misreports.
    pub deviated: Scalar,
}

/// A coalition, its joint misreport, and proof that every member gains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviationWitness {
    pub coalition: Vec<AgentId>,
    pub misreports: Vec<Point>,
    pub before: Outcome,
    pub after: Outcome,
    pub costs: Vec<MemberCost>,
}

/// Distances from every true agent location to every candidate, so the
/// search never recomputes them.
struct CostTable(Vec<Vec<Scalar>>);

impl CostTable {
    fn new(instance: &Instance) -> Self {
        let rows = instance
            .agents()
            .iter()
            .map(|x| instance.candidates().iter().map(|c| instance.distance(x, c)).collect())
            .collect();
        CostTable(rows)
    }

    fn selection_cost(&self, agent: usize, selection: &Selection) -> &Scalar {
        selection
            .facilities()
            .iter()
            .map(|c| &self.0[agent][c.index()])
            .min()
            .expect("selections are non-empty")
    }

    /// Expected cost of agent `agent` (zero-based) at its true location.
    fn cost(&self, agent: usize, outcome: &Outcome) -> Scalar {
        match outcome {
            Outcome::Deterministic(s) => self.selection_cost(agent, s).clone(),
            Outcome::Randomized(l) => l
                .support()
                .iter()
                .map(|(s, p)| p * self.selection_cost(agent, s))
                .sum(),
        }
    }
}

/// Number of mechanism evaluations a group search performs.
pub fn group_search_size(agents: usize, reports: usize, max_coalition: usize) -> u128 {
    (1..=max_coalition.min(agents))
        .map(|size| {
            let coalitions = (0..size).fold(1u128, |acc, i| acc * (agents - i) as u128 / (i + 1) as u128);
            coalitions.saturating_mul((reports as u128).saturating_pow(size as u32))
        })
        .fold(0u128, u128::saturating_add)
}

/// Tries every agent and every admissible report, agents ascending then
/// reports ascending, and returns the first strict improvement. Randomized
/// mechanisms are compared in expectation.
pub fn find_unilateral_deviation(
    instance: &Instance,
    mechanism: &Mechanism,
    misreports: &MisreportSet,
) -> Result<Option<DeviationWitness>> {
    let before = mechanism.apply(instance)?;
    before.validate(instance.candidate_count())?;
    let table = CostTable::new(instance);
    let mut reports = instance.agents().to_vec();
    for agent in instance.agent_ids() {
        let truth = instance.agent(agent)?;
        let truthful = table.cost(agent.index(), &before);
        if truthful.is_zero() {
            continue;
        }
        for report in misreports.for_agent(agent) {
            if report == truth {
                continue;
            }
            reports[agent.index()] = report.clone();
            let after = mechanism.apply_to_reports(instance, &reports)?;
            reports[agent.index()] = truth.clone();
            let deviated = table.cost(agent.index(), &after);
            if deviated < truthful {
                return Ok(Some(DeviationWitness {
                    coalition: vec![agent],
                    misreports: vec![report.clone()],
                    before,
                    after,
                    costs: vec![MemberCost {
                        agent,
                        truthful,
                        deviated,
                    }],
                }));
            }
        }
    }
    Ok(None)
}

pub fn find_group_deviation(
    instance: &Instance,
    mechanism: &Mechanism,
    misreports: &MisreportSet,
    max_coalition: usize,
) -> Result<Option<DeviationWitness>> {
    find_group_deviation_with_guard(instance, mechanism, misreports, max_coalition, DEFAULT_GUARD)
}

/// Searches coalitions by size, then lexicographically, and joint reports
/// lexicographically; returns the first profile where every member strictly
/// gains at its true location.
pub fn find_group_deviation_with_guard(
    instance: &Instance,
    mechanism: &Mechanism,
    misreports: &MisreportSet,
    max_coalition: usize,
    guard: u64,
) -> Result<Option<DeviationWitness>> {
    let n = instance.agent_count();
    if max_coalition == 0 || max_coalition > n {
        return Err(Error::Parameter(format!(
            "coalition size must lie in 1..={n}, got {max_coalition}"
        )));
    }
    let required = group_search_size(n, misreports.len(), max_coalition);
    if required > u128::from(guard) {
        return Err(Error::GuardExceeded { required, guard });
    }
    let before = mechanism.apply(instance)?;
    before.validate(instance.candidate_count())?;
    let table = CostTable::new(instance);
    let truthful: Vec<Scalar> = (0..n).map(|i| table.cost(i, &before)).collect();

    for size in 1..=max_coalition {
        let coalitions: Vec<Vec<usize>> = (0..n)
            .combinations(size)
            .filter(|members| members.iter().all(|&i| !truthful[i].is_zero()))
            .collect();
        let found = coalitions
            .par_iter()
            .map(|members| search_coalition(instance, mechanism, misreports, &before, &table, &truthful, members))
            .find_map_first(Result::transpose);
        if let Some(witness) = found.transpose()? {
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

fn search_coalition(
    instance: &Instance,
    mechanism: &Mechanism,
    misreports: &MisreportSet,
    before: &Outcome,
    table: &CostTable,
    truthful: &[Scalar],
    members: &[usize],
) -> Result<Option<DeviationWitness>> {
    let ids: Vec<AgentId> = members.iter().map(|&i| AgentId::from_index(i)).collect();
    let report_sets: Vec<&[Point]> = ids.iter().map(|&a| misreports.for_agent(a)).collect();
    let mut reports = instance.agents().to_vec();
    for joint in report_sets.iter().map(|s| s.iter()).multi_cartesian_product() {
        if members.iter().zip(&joint).all(|(&i, r)| instance.agents()[i] == **r) {
            continue;
        }
        for (&i, r) in members.iter().zip(&joint) {
            reports[i] = (*r).clone();
        }
        let after = mechanism.apply_to_reports(instance, &reports)?;
        let mut costs = Vec::with_capacity(members.len());
        for (&i, &agent) in members.iter().zip(&ids) {
            let deviated = table.cost(i, &after);
            if deviated >= truthful[i] {
                break;
            }
            costs.push(MemberCost {
                agent,
                truthful: truthful[i].clone(),
                deviated,
            });
        }
        if costs.len() == members.len() {
            return Ok(Some(DeviationWitness {
                coalition: ids,
                misreports: joint.into_iter().cloned().collect(),
                before: before.clone(),
                after,
                costs,
            }));
        }
    }
    Ok(None)
}
