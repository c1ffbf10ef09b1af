use rayon::prelude::*;

use crate::error::Result;
use crate::instances::RandomFamily;
use crate::mechanisms::Mechanism;
use crate::model::{outcome_cost, Instance, Objective};
use crate::scalar::{frac, int, Scalar};
use crate::solver::{optimal_with_guard, Ratio, DEFAULT_GUARD};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub index: u64,
    pub agents: usize,
    pub candidates: usize,
    pub facilities: usize,
    pub mechanism_cost: Scalar,
    pub optimal_cost: Scalar,
    pub ratio: Ratio,
}

/// Ratio counts per bucket `[edges[i], edges[i + 1])`; the last bucket is
/// open-ended and unbounded ratios are counted apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub edges: Vec<Scalar>,
    pub counts: Vec<u64>,
    pub unbounded: u64,
}

impl Histogram {
    pub fn new() -> Self {
        let edges = vec![int(1), frac(5, 4), frac(3, 2), int(2), frac(5, 2), int(3), int(5), int(7)];
        let counts = vec![0; edges.len()];
        Self {
            edges,
            counts,
            unbounded: 0,
        }
    }

    pub fn add(&mut self, ratio: &Ratio) {
        match ratio {
            Ratio::Unbounded => self.unbounded += 1,
            Ratio::Finite(r) => {
                let bucket = self.edges.iter().rposition(|e| e <= r).unwrap_or(0);
                self.counts[bucket] += 1;
            }
        }
    }
}

impl Default for Histogram {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub mechanism: String,
    pub objective: Objective,
    pub family: String,
    pub count: u64,
    /// `None` for an empty sweep.
    pub max_ratio: Option<Ratio>,
    /// First index attaining the maximum.
    pub argmax: Option<u64>,
    pub argmax_instance: Option<Instance>,
    pub histogram: Histogram,
    pub rows: Vec<SweepRow>,
}

impl RatioReport {
    pub fn within(&self, bound: &Scalar) -> bool {
        self.max_ratio.as_ref().is_none_or(|r| r.at_most(bound))
    }
}

pub fn sweep(family: &RandomFamily, mechanism: &Mechanism, objective: Objective, count: u64) -> Result<RatioReport> {
    sweep_with_guard(family, mechanism, objective, count, DEFAULT_GUARD)
}

/// Ratio of `mechanism` on instances `0..count` of `family`. Instances are
/// evaluated in parallel and aggregated in index order.
pub fn sweep_with_guard(
    family: &RandomFamily,
    mechanism: &Mechanism,
    objective: Objective,
    count: u64,
    guard: u64,
) -> Result<RatioReport> {
    let rows = (0..count)
        .into_par_iter()
        .map(|index| {
            let instance = family.instance(index)?;
            let outcome = mechanism.apply(&instance)?;
            let mechanism_cost = outcome_cost(&instance, &outcome, objective)?;
            let optimal_cost = optimal_with_guard(&instance, objective, guard)?.value;
            Ok(SweepRow {
                index,
                agents: instance.agent_count(),
                candidates: instance.candidate_count(),
                facilities: instance.facilities(),
                ratio: Ratio::of(&mechanism_cost, &optimal_cost),
                mechanism_cost,
                optimal_cost,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut histogram = Histogram::new();
    let mut best: Option<&SweepRow> = None;
    for row in &rows {
        histogram.add(&row.ratio);
        if best.is_none_or(|b| row.ratio > b.ratio) {
            best = Some(row);
        }
    }
    Ok(RatioReport {
        mechanism: mechanism.to_string(),
        objective,
        family: family.to_string(),
        count,
        max_ratio: best.map(|r| r.ratio.clone()),
        argmax: best.map(|r| r.index),
        argmax_instance: best.map(|r| family.instance(r.index)).transpose()?,
        histogram,
        rows,
    })
}
