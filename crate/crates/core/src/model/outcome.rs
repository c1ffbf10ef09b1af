use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

macro_rules! one_based_id {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(usize);

        impl $name {
            /// From a one-based number; `None` for zero.
            pub fn new(one_based: usize) -> Option<Self> {
                (one_based > 0).then_some(Self(one_based))
            }

            pub fn from_index(zero_based: usize) -> Self {
                Self(zero_based + 1)
            }

            pub fn get(self) -> usize {
                self.0
            }

            pub fn index(self) -> usize {
                self.0 - 1
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

one_based_id!(
    /// One-based agent number, `1..=n`.
    AgentId
);
one_based_id!(
    /// One-based candidate number, `1..=m`.
    CandidateId
);

/// A deterministic facility location profile: `k` candidates, duplicates allowed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Selection(Vec<CandidateId>);

impl Selection {
    pub fn new(facilities: Vec<CandidateId>) -> Self {
        Self(facilities)
    }

    pub fn single(candidate: CandidateId) -> Self {
        Self(vec![candidate])
    }

    pub fn facilities(&self) -> &[CandidateId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, candidate: CandidateId) -> bool {
        self.0.contains(&candidate)
    }

    /// Sorted copy; cost only depends on the multiset.
    pub fn canonical(&self) -> Self {
        let mut ids = self.0.clone();
        ids.sort_unstable();
        Self(ids)
    }

    pub fn with(&self, candidate: CandidateId) -> Self {
        let mut ids = self.0.clone();
        ids.push(candidate);
        Self(ids)
    }

    pub(crate) fn validate(&self, candidates: usize) -> Result<()> {
        if self.0.is_empty() {
            return Err(Error::InvalidOutcome("no facility selected".into()));
        }
        match self.0.iter().find(|c| c.get() > candidates) {
            Some(c) => Err(Error::InvalidCandidate {
                candidate: c.get(),
                candidates,
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", ids.join(", "))
    }
}

/// A finite distribution over selections.
///
/// Kept canonical: selections sorted, duplicates merged, zero-probability
/// entries dropped, so equal distributions compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lottery(Vec<(Selection, Scalar)>);

impl Lottery {
    pub fn new(entries: Vec<(Selection, Scalar)>) -> Result<Self> {
        if entries.iter().any(|(_, p)| p.is_negative()) {
            return Err(Error::InvalidOutcome("negative probability".into()));
        }
        let total: Scalar = entries.iter().map(|(_, p)| p).sum();
        if !total.is_one() {
            return Err(Error::InvalidOutcome(format!("probabilities sum to {total}, not 1")));
        }
        let mut merged: Vec<(Selection, Scalar)> = Vec::with_capacity(entries.len());
        let mut sorted: Vec<_> = entries
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(s, p)| (s.canonical(), p))
            .collect();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        for (selection, p) in sorted {
            match merged.last_mut() {
                Some((last, acc)) if *last == selection => *acc += p,
                _ => merged.push((selection, p)),
            }
        }
        Ok(Self(merged))
    }

    pub fn point_mass(selection: Selection) -> Self {
        Self(vec![(selection.canonical(), Scalar::one())])
    }

    pub fn support(&self) -> &[(Selection, Scalar)] {
        &self.0
    }

    /// Probability that `candidate` is among the selected facilities.
    pub fn probability_of(&self, candidate: CandidateId) -> Scalar {
        self.0
            .iter()
            .filter(|(s, _)| s.contains(candidate))
            .map(|(_, p)| p.clone())
            .sum()
    }
}

/// What a mechanism returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Deterministic(Selection),
    Randomized(Lottery),
}

impl Outcome {
    /// Deterministic outcomes become point masses.
    pub fn to_lottery(&self) -> Lottery {
        match self {
            Outcome::Deterministic(s) => Lottery::point_mass(s.clone()),
            Outcome::Randomized(l) => l.clone(),
        }
    }

    pub fn as_selection(&self) -> Option<&Selection> {
        match self {
            Outcome::Deterministic(s) => Some(s),
            Outcome::Randomized(_) => None,
        }
    }

    pub fn probability_of(&self, candidate: CandidateId) -> Scalar {
        match self {
            Outcome::Deterministic(s) if s.contains(candidate) => Scalar::one(),
            Outcome::Deterministic(_) => Scalar::zero(),
            Outcome::Randomized(l) => l.probability_of(candidate),
        }
    }

    pub(crate) fn validate(&self, candidates: usize) -> Result<()> {
        match self {
            Outcome::Deterministic(s) => s.validate(candidates),
            Outcome::Randomized(l) => l.0.iter().try_for_each(|(s, _)| s.validate(candidates)),
        }
    }
}

impl From<Selection> for Outcome {
    fn from(selection: Selection) -> Self {
        Outcome::Deterministic(selection)
    }
}

impl From<Lottery> for Outcome {
    fn from(lottery: Lottery) -> Self {
        Outcome::Randomized(lottery)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn c(i: usize) -> CandidateId {
        CandidateId::new(i).unwrap()
    }

    #[test]
    fn ids_are_one_based() {
        assert!(AgentId::new(0).is_none());
        assert_eq!(AgentId::from_index(0).get(), 1);
        assert_eq!(CandidateId::new(3).unwrap().index(), 2);
    }

    #[test]
    fn lottery_merges_and_canonicalises() {
        let lottery = Lottery::new(vec![
            (Selection::single(c(2)), frac(1, 3)),
            (Selection::single(c(1)), frac(1, 3)),
            (Selection::single(c(2)), frac(1, 3)),
            (Selection::single(c(3)), frac(0, 1)),
        ])
        .unwrap();
        assert_eq!(
            lottery.support(),
            &[(Selection::single(c(1)), frac(1, 3)), (Selection::single(c(2)), frac(2, 3))]
        );
        assert_eq!(lottery.probability_of(c(2)), frac(2, 3));
    }

    #[test]
    fn lottery_rejects_bad_mass() {
        assert!(Lottery::new(vec![(Selection::single(c(1)), frac(1, 2))]).is_err());
        assert!(Lottery::new(vec![
            (Selection::single(c(1)), frac(3, 2)),
            (Selection::single(c(2)), frac(-1, 2)),
        ])
        .is_err());
    }

    #[test]
    fn selection_validation() {
        assert!(Selection::new(vec![]).validate(2).is_err());
        assert_eq!(
            Selection::new(vec![c(1), c(3)]).validate(2),
            Err(Error::InvalidCandidate { candidate: 3, candidates: 2 })
        );
        assert!(Selection::new(vec![c(2), c(2)]).validate(2).is_ok());
    }
}
