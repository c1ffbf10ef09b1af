//! Named constructions: the lower-bound instance pairs, the weighted
//! percentile voting counterexample and the tight two-extremes example.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::Instance;
use crate::scalar::{frac, int, Scalar};

/// Far-point location used when none is given.
pub fn default_far_point() -> Scalar {
    int(1000)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionName {
    SingleLowerBound,
    SingleLowerBoundDeviated,
    TwoLowerBound,
    TwoLowerBoundDeviated,
    WpvRemark,
    ExampleOne,
    MedianContext,
}

impl ConstructionName {
    pub const ALL: [ConstructionName; 7] = [
        ConstructionName::SingleLowerBound,
        ConstructionName::SingleLowerBoundDeviated,
        ConstructionName::TwoLowerBound,
        ConstructionName::TwoLowerBoundDeviated,
        ConstructionName::WpvRemark,
        ConstructionName::ExampleOne,
        ConstructionName::MedianContext,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionName::SingleLowerBound => "single-lb-I",
            ConstructionName::SingleLowerBoundDeviated => "single-lb-I'",
            ConstructionName::TwoLowerBound => "two-lb-I",
            ConstructionName::TwoLowerBoundDeviated => "two-lb-I'",
            ConstructionName::WpvRemark => "wpv-remark",
            ConstructionName::ExampleOne => "example-1",
            ConstructionName::MedianContext => "median-context",
        }
    }
}

impl fmt::Display for ConstructionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstructionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.replace(['′', '’'], "'");
        Self::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(&normalized))
            .ok_or_else(|| Error::UnknownConstruction(s.to_string()))
    }
}

/// A named construction with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperConstruction {
    pub name: ConstructionName,
    pub epsilon: Scalar,
    /// Far point, two-facility constructions only.
    pub far_point: Scalar,
    /// Agent count, `example-1` and `median-context` only.
    pub agents: usize,
}

impl PaperConstruction {
    pub fn new(name: ConstructionName, epsilon: Scalar) -> Self {
        let agents = match name {
            ConstructionName::MedianContext => 5,
            _ => 4,
        };
        Self {
            name,
            epsilon,
            far_point: default_far_point(),
            agents,
        }
    }

    pub fn with_far_point(mut self, far_point: Scalar) -> Self {
        self.far_point = far_point;
        self
    }

    pub fn with_agents(mut self, agents: usize) -> Self {
        self.agents = agents;
        self
    }

    pub fn build(&self) -> Result<Instance> {
        build_paper_instance(self)
    }
}

fn check(condition: bool, message: impl FnOnce() -> String) -> Result<()> {
    if condition {
        Ok(())
    } else {
        Err(Error::Parameter(message()))
    }
}

pub fn build_paper_instance(c: &PaperConstruction) -> Result<Instance> {
    let eps = &c.epsilon;
    check(eps > &Scalar::zero() && eps < &Scalar::one(), || {
        format!("epsilon must lie in (0, 1), got {eps}")
    })?;
    let one = Scalar::one();
    match c.name {
        ConstructionName::SingleLowerBound | ConstructionName::SingleLowerBoundDeviated => {
            let second = if c.name == ConstructionName::SingleLowerBound {
                &one + eps
            } else {
                int(3)
            };
            Instance::line(vec![&one - eps, second], vec![int(0), int(2)], 1)
        }
        ConstructionName::TwoLowerBound | ConstructionName::TwoLowerBoundDeviated => {
            let far = &c.far_point;
            check(far > &int(10), || format!("far point must exceed 10, got {far}"))?;
            let second = if c.name == ConstructionName::TwoLowerBound {
                &one + eps
            } else {
                int(3)
            };
            Instance::line(
                vec![&one - eps, second, far.clone()],
                vec![int(0), int(2), far.clone()],
                2,
            )
        }
        ConstructionName::WpvRemark => {
            Instance::line(vec![int(1), int(3)], vec![eps.clone(), int(2), int(4) - eps], 1)
        }
        ConstructionName::ExampleOne => {
            let n = c.agents;
            check(n >= 3, || format!("example-1 needs at least 3 agents, got {n}"))?;
            check(eps < &frac(1, 3), || format!("example-1 needs epsilon < 1/3, got {eps}"))?;
            let mut agents = vec![int(1)];
            agents.extend(std::iter::repeat_n(frac(4, 3), n - 2));
            agents.push(int(2));
            Instance::line(agents, vec![frac(2, 3) + eps, frac(4, 3), int(2)], 2)
        }
        ConstructionName::MedianContext => {
            let n = c.agents;
            check(n % 2 == 1, || format!("median-context needs an odd agent count, got {n}"))?;
            // agents at 0..n-1; the median agent sits at (n-1)/2 and its nearest
            // candidate is the middle one, the extremes are pulled inward by eps
            let agents = (0..n as i64).map(int).collect();
            let last = int(n as i64 - 1);
            let middle = frac(n as i64 - 1, 2) + eps;
            Instance::line(agents, vec![eps.clone(), middle, last - eps], 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(name: ConstructionName, eps: Scalar) -> Instance {
        PaperConstruction::new(name, eps).build().unwrap()
    }

    fn line(values: &[Scalar]) -> Vec<crate::model::Point> {
        values.iter().cloned().map(crate::model::Point::Line).collect()
    }

    #[test]
    fn single_facility_pair() {
        let i = build(ConstructionName::SingleLowerBound, frac(1, 10));
        assert_eq!(i.agents(), line(&[frac(9, 10), frac(11, 10)]));
        assert_eq!(i.candidates(), line(&[int(0), int(2)]));
        assert_eq!(i.facilities(), 1);

        let deviated = build(ConstructionName::SingleLowerBoundDeviated, frac(1, 10));
        assert_eq!(deviated.agents(), line(&[frac(9, 10), int(3)]));
        assert_eq!(deviated.candidates(), line(&[int(0), int(2)]));
    }

    #[test]
    fn two_facility_pair_has_far_point() {
        let i = PaperConstruction::new(ConstructionName::TwoLowerBoundDeviated, frac(1, 10))
            .with_far_point(int(500))
            .build()
            .unwrap();
        assert_eq!(i.agents(), line(&[frac(9, 10), int(3), int(500)]));
        assert_eq!(i.candidates(), line(&[int(0), int(2), int(500)]));
        assert_eq!(i.facilities(), 2);
        let bad = PaperConstruction::new(ConstructionName::TwoLowerBound, frac(1, 10)).with_far_point(int(10));
        assert!(bad.build().is_err());
    }

    #[test]
    fn example_one() {
        let i = build(ConstructionName::ExampleOne, frac(1, 100));
        assert_eq!(i.agents(), line(&[int(1), frac(4, 3), frac(4, 3), int(2)]));
        assert_eq!(i.candidates(), line(&[frac(2, 3) + frac(1, 100), frac(4, 3), int(2)]));
        assert_eq!(i.facilities(), 2);
        let small = PaperConstruction::new(ConstructionName::ExampleOne, frac(1, 100)).with_agents(2);
        assert!(small.build().is_err());
        assert!(PaperConstruction::new(ConstructionName::ExampleOne, frac(1, 3)).build().is_err());
    }

    #[test]
    fn wpv_remark_and_median_context() {
        let i = build(ConstructionName::WpvRemark, frac(1, 100));
        assert_eq!(i.agents(), line(&[int(1), int(3)]));
        assert_eq!(i.candidates(), line(&[frac(1, 100), int(2), frac(399, 100)]));

        let m = build(ConstructionName::MedianContext, frac(1, 10));
        assert_eq!(m.agent_count(), 5);
        assert_eq!(m.candidates(), line(&[frac(1, 10), frac(21, 10), frac(39, 10)]));
        let even = PaperConstruction::new(ConstructionName::MedianContext, frac(1, 10)).with_agents(4);
        assert!(even.build().is_err());
    }

    #[test]
    fn epsilon_range_enforced() {
        for eps in [int(0), int(1), frac(-1, 2)] {
            assert!(PaperConstruction::new(ConstructionName::SingleLowerBound, eps).build().is_err());
        }
    }

    #[test]
    fn names_round_trip() {
        for name in ConstructionName::ALL {
            assert_eq!(name.as_str().parse::<ConstructionName>().unwrap(), name);
        }
        assert_eq!(
            "single-lb-I′".parse::<ConstructionName>().unwrap(),
            ConstructionName::SingleLowerBoundDeviated
        );
        assert!("nope".parse::<ConstructionName>().is_err());
    }
}
