//! Exact optimum by exhaustive enumeration of candidate multisets.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mechanisms::Mechanism;
use crate::model::{outcome_cost, cost, CandidateId, Instance, Objective, Selection};
use crate::scalar::{exact_string, Scalar};

/// Default bound on enumeration work.
pub const DEFAULT_GUARD: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptResult {
    /// First optimum in enumeration order.
    pub best: Selection,
    pub value: Scalar,
    /// Every optimal selection, sorted canonical form.
    pub all: Vec<Selection>,
}

pub fn optimal(instance: &Instance, objective: Objective) -> Result<OptResult> {
    optimal_with_guard(instance, objective, DEFAULT_GUARD)
}

/// Fails with [`Error::GuardExceeded`] when `m^k > guard`.
pub fn optimal_with_guard(instance: &Instance, objective: Objective, guard: u64) -> Result<OptResult> {
    let m = instance.candidate_count();
    let k = instance.facilities();
    let required = (m as u128).pow(k as u32);
    if required > u128::from(guard) {
        return Err(Error::GuardExceeded { required, guard });
    }
    let mut value: Option<Scalar> = None;
    let mut all = Vec::new();
    for ids in (0..m).combinations_with_replacement(k) {
        let selection = Selection::new(ids.into_iter().map(CandidateId::from_index).collect());
        let c = cost(instance, &selection, objective)?;
        match value.as_ref().map(|v| c.cmp(v)) {
            Some(Ordering::Greater) => {}
            Some(Ordering::Equal) => all.push(selection),
            _ => {
                value = Some(c);
                all = vec![selection];
            }
        }
    }
    Ok(OptResult {
        best: all[0].clone(),
        value: value.expect("at least one candidate"),
        all,
    })
}

/// A mechanism-to-optimum cost ratio; `Unbounded` when the optimum is zero
/// but the mechanism pays something.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ratio {
    Finite(Scalar),
    Unbounded,
}

impl Ratio {
    pub fn of(cost: &Scalar, optimum: &Scalar) -> Self {
        if optimum.is_zero() {
            if cost.is_zero() {
                Ratio::Finite(Scalar::one())
            } else {
                Ratio::Unbounded
            }
        } else {
            Ratio::Finite(cost / optimum)
        }
    }

    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            Ratio::Finite(r) => Some(r),
            Ratio::Unbounded => None,
        }
    }

    pub fn exact_string(&self) -> String {
        match self {
            Ratio::Finite(r) => exact_string(r),
            Ratio::Unbounded => "inf".to_string(),
        }
    }

    pub fn at_most(&self, bound: &Scalar) -> bool {
        self.finite().is_some_and(|r| r <= bound)
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Ratio::Finite(a), Ratio::Finite(b)) => a.cmp(b),
            (Ratio::Finite(_), Ratio::Unbounded) => Ordering::Less,
            (Ratio::Unbounded, Ratio::Finite(_)) => Ordering::Greater,
            (Ratio::Unbounded, Ratio::Unbounded) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.exact_string())
    }
}

/// Mechanism cost (expected cost for randomized mechanisms) over the optimum.
pub fn ratio(instance: &Instance, mechanism: &Mechanism, objective: Objective) -> Result<Ratio> {
    let outcome = mechanism.apply(instance)?;
    let optimum = optimal(instance, objective)?;
    Ok(Ratio::of(&outcome_cost(instance, &outcome, objective)?, &optimum.value))
}
