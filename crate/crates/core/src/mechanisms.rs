//! The mechanisms: leftmost-closest, dictatorship, two-extremes, median,
//! random dictatorship, weighted percentile voting, and the closest-to-mean
//! rule kept as a known manipulable control.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::model::{AgentId, CandidateId, Instance, Lottery, Outcome, Point, Selection};
use crate::scalar::{cmp_distance_from, exact_string, parse_scalar, Scalar};

/// How equidistant candidates are resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    /// Smaller coordinate, then smaller index.
    Left,
    /// Larger coordinate, then smaller index.
    Right,
    /// Smaller index.
    Index,
}

/// The candidate nearest `target` under `tie`.
pub fn closest_candidate(instance: &Instance, target: &Point, tie: TieBreak) -> CandidateId {
    match target {
        Point::Line(x) => closest_to_coordinate(instance, x, tie),
        Point::Node(_) => {
            let candidates = instance.candidates();
            pick_closest(candidates, tie, |y, b| {
                instance.distance(target, y).cmp(&instance.distance(target, b))
            })
        }
    }
}

fn closest_to_coordinate(instance: &Instance, x: &Scalar, tie: TieBreak) -> CandidateId {
    pick_closest(instance.candidates(), tie, |y, b| match (y, b) {
        (Point::Line(y), Point::Line(b)) => cmp_distance_from(x, y, b),
        _ => unreachable!("line instances hold line candidates"),
    })
}

fn pick_closest(
    candidates: &[Point],
    tie: TieBreak,
    order: impl Fn(&Point, &Point) -> Ordering,
) -> CandidateId {
    let mut best = 0;
    for (j, candidate) in candidates.iter().enumerate().skip(1) {
        let better = match order(candidate, &candidates[best]) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => match (tie, candidate, &candidates[best]) {
                (TieBreak::Left, Point::Line(y), Point::Line(b)) => y < b,
                (TieBreak::Right, Point::Line(y), Point::Line(b)) => y > b,
                _ => false,
            },
        };
        if better {
            best = j;
        }
    }
    CandidateId::from_index(best)
}

fn require_line<'a>(instance: &Instance, reports: &'a [Point], mechanism: &str) -> Result<Vec<&'a Scalar>> {
    if !instance.space().is_line() {
        return Err(Error::RequiresLine {
            mechanism: mechanism.to_string(),
        });
    }
    Ok(reports.iter().filter_map(Point::coordinate).collect())
}

fn require_facilities(instance: &Instance, mechanism: &str, expected: usize) -> Result<()> {
    if instance.facilities() == expected {
        Ok(())
    } else {
        Err(Error::FacilityCount {
            mechanism: mechanism.to_string(),
            expected,
            actual: instance.facilities(),
        })
    }
}

fn sorted(mut xs: Vec<&Scalar>) -> Vec<&Scalar> {
    xs.sort();
    xs
}

/// Candidate closest to the leftmost agent; ties to the smaller coordinate.
pub fn leftmost_closest(instance: &Instance) -> Result<Selection> {
    leftmost_closest_on(instance, instance.agents())
}

fn leftmost_closest_on(instance: &Instance, reports: &[Point]) -> Result<Selection> {
    let xs = require_line(instance, reports, "leftmost")?;
    require_facilities(instance, "leftmost", 1)?;
    let leftmost = xs.into_iter().min().expect("n >= 1");
    Ok(Selection::single(closest_to_coordinate(instance, leftmost, TieBreak::Left)))
}

/// Candidate closest to a fixed agent, in any metric; ties to the smaller index.
pub fn dictatorship(instance: &Instance, dictator: AgentId) -> Result<Selection> {
    dictatorship_on(instance, instance.agents(), dictator)
}

fn dictatorship_on(instance: &Instance, reports: &[Point], dictator: AgentId) -> Result<Selection> {
    require_facilities(instance, "dictator", 1)?;
    let location = reports.get(dictator.index()).ok_or(Error::InvalidAgent {
        agent: dictator.get(),
        agents: reports.len(),
    })?;
    Ok(Selection::single(closest_candidate(instance, location, TieBreak::Index)))
}

/// Left facility nearest the leftmost agent with ties to the right; right
/// facility nearest the rightmost agent with ties to the left.
pub fn two_extremes(instance: &Instance) -> Result<Selection> {
    two_extremes_on(instance, instance.agents())
}

fn two_extremes_on(instance: &Instance, reports: &[Point]) -> Result<Selection> {
    let xs = require_line(instance, reports, "two-extremes")?;
    require_facilities(instance, "two-extremes", 2)?;
    let leftmost = xs.iter().min().expect("n >= 1");
    let rightmost = xs.iter().max().expect("n >= 1");
    Ok(Selection::new(vec![
        closest_to_coordinate(instance, leftmost, TieBreak::Right),
        closest_to_coordinate(instance, rightmost, TieBreak::Left),
    ]))
}

/// Candidate nearest the left median agent (sorted rank `ceil(n/2)`).
pub fn median(instance: &Instance) -> Result<Selection> {
    median_on(instance, instance.agents())
}

fn median_on(instance: &Instance, reports: &[Point]) -> Result<Selection> {
    let xs = sorted(require_line(instance, reports, "median")?);
    require_facilities(instance, "median", 1)?;
    let rank = xs.len().div_ceil(2);
    Ok(Selection::single(closest_to_coordinate(instance, xs[rank - 1], TieBreak::Left)))
}

/// Each agent votes for its closest candidate (ties to the smaller index);
/// candidates are drawn with probability proportional to votes.
pub fn random_dictatorship(instance: &Instance) -> Result<Lottery> {
    random_dictatorship_on(instance, instance.agents())
}

fn random_dictatorship_on(instance: &Instance, reports: &[Point]) -> Result<Lottery> {
    require_facilities(instance, "rd", 1)?;
    let share = Scalar::new(BigInt::one(), BigInt::from(reports.len()));
    let entries = reports
        .iter()
        .map(|x| {
            let vote = closest_candidate(instance, x, TieBreak::Index);
            (Selection::single(vote), share.clone())
        })
        .collect();
    Lottery::new(entries)
}

/// Checks a weighted percentile voting vector against `agents`.
pub fn validate_weights(weights: &[Scalar], agents: usize) -> Result<()> {
    if weights.len() != agents {
        return Err(Error::MalformedWeights(format!(
            "{} weights for {agents} agents",
            weights.len()
        )));
    }
    if weights.iter().any(Signed::is_negative) {
        return Err(Error::MalformedWeights("negative weight".into()));
    }
    let total: Scalar = weights.iter().sum();
    if !total.is_one() {
        return Err(Error::MalformedWeights(format!("weights sum to {total}, not 1")));
    }
    Ok(())
}

/// `weights[i]` goes to the closest candidate (ties to the smaller
/// coordinate) of the agent with sorted rank `i + 1`.
pub fn wpv(instance: &Instance, weights: &[Scalar]) -> Result<Lottery> {
    wpv_on(instance, instance.agents(), weights)
}

fn wpv_on(instance: &Instance, reports: &[Point], weights: &[Scalar]) -> Result<Lottery> {
    let xs = sorted(require_line(instance, reports, "wpv")?);
    require_facilities(instance, "wpv", 1)?;
    validate_weights(weights, xs.len())?;
    let entries = xs
        .into_iter()
        .zip(weights)
        .map(|(x, w)| {
            let pick = closest_to_coordinate(instance, x, TieBreak::Left);
            (Selection::single(pick), w.clone())
        })
        .collect();
    Lottery::new(entries)
}

/// Candidate nearest the mean reported coordinate, ties to the left. Not
/// strategy-proof.
pub fn closest_to_mean(instance: &Instance) -> Result<Selection> {
    closest_to_mean_on(instance, instance.agents())
}

fn closest_to_mean_on(instance: &Instance, reports: &[Point]) -> Result<Selection> {
    let xs = require_line(instance, reports, "mean")?;
    require_facilities(instance, "mean", 1)?;
    let n = Scalar::from_integer(BigInt::from(xs.len()));
    let mean = xs.into_iter().sum::<Scalar>() / n;
    Ok(Selection::single(closest_to_coordinate(instance, &mean, TieBreak::Left)))
}

/// A mechanism and its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mechanism {
    LeftmostClosest,
    Dictatorship(AgentId),
    TwoExtremes,
    Median,
    RandomDictatorship,
    Wpv(Vec<Scalar>),
    ClosestToMean,
}

impl Mechanism {
    pub fn apply(&self, instance: &Instance) -> Result<Outcome> {
        self.apply_to_reports(instance, instance.agents())
    }

    /// Runs the mechanism on `reports` in place of the instance's agent
    /// profile; the space, candidates and facility count are kept.
    pub fn apply_to_reports(&self, instance: &Instance, reports: &[Point]) -> Result<Outcome> {
        if reports.len() != instance.agent_count() {
            return Err(Error::InvalidInstance(format!(
                "{} reports for {} agents",
                reports.len(),
                instance.agent_count()
            )));
        }
        for p in reports {
            instance.space().validate(p)?;
        }
        Ok(match self {
            Mechanism::LeftmostClosest => leftmost_closest_on(instance, reports)?.into(),
            Mechanism::Dictatorship(k) => dictatorship_on(instance, reports, *k)?.into(),
            Mechanism::TwoExtremes => two_extremes_on(instance, reports)?.into(),
            Mechanism::Median => median_on(instance, reports)?.into(),
            Mechanism::RandomDictatorship => random_dictatorship_on(instance, reports)?.into(),
            Mechanism::Wpv(weights) => wpv_on(instance, reports, weights)?.into(),
            Mechanism::ClosestToMean => closest_to_mean_on(instance, reports)?.into(),
        })
    }

    pub fn is_randomized(&self) -> bool {
        matches!(self, Mechanism::RandomDictatorship | Mechanism::Wpv(_))
    }

    /// Number of facilities the mechanism places.
    pub fn facilities(&self) -> usize {
        match self {
            Mechanism::TwoExtremes => 2,
            _ => 1,
        }
    }

    pub fn requires_line(&self) -> bool {
        !matches!(self, Mechanism::Dictatorship(_) | Mechanism::RandomDictatorship)
    }

    /// Whether the outcome can depend on agent identities.
    pub fn is_anonymous(&self) -> bool {
        !matches!(self, Mechanism::Dictatorship(_))
    }

    /// Space and facility-count compatibility with `instance`.
    pub fn check_applicable(&self, instance: &Instance) -> Result<()> {
        if self.requires_line() && !instance.space().is_line() {
            return Err(Error::RequiresLine {
                mechanism: self.to_string(),
            });
        }
        require_facilities(instance, &self.to_string(), self.facilities())
    }
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mechanism::LeftmostClosest => f.write_str("leftmost"),
            Mechanism::Dictatorship(k) => write!(f, "dictator:{k}"),
            Mechanism::TwoExtremes => f.write_str("two-extremes"),
            Mechanism::Median => f.write_str("median"),
            Mechanism::RandomDictatorship => f.write_str("rd"),
            Mechanism::Wpv(weights) => {
                let ws: Vec<String> = weights.iter().map(exact_string).collect();
                write!(f, "wpv:{}", ws.join(","))
            }
            Mechanism::ClosestToMean => f.write_str("mean"),
        }
    }
}

impl FromStr for Mechanism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownMechanism(s.to_string());
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        match (head, arg) {
            ("leftmost", None) => Ok(Mechanism::LeftmostClosest),
            ("two-extremes", None) => Ok(Mechanism::TwoExtremes),
            ("median", None) => Ok(Mechanism::Median),
            ("rd", None) => Ok(Mechanism::RandomDictatorship),
            ("mean", None) => Ok(Mechanism::ClosestToMean),
            ("dictator", Some(k)) => k
                .trim()
                .parse::<usize>()
                .ok()
                .and_then(AgentId::new)
                .map(Mechanism::Dictatorship)
                .ok_or_else(unknown),
            ("wpv", Some(ws)) => {
                let weights = ws
                    .split(',')
                    .map(parse_scalar)
                    .collect::<Result<Vec<_>>>()
                    .map_err(|_| unknown())?;
                if weights.iter().any(Signed::is_negative) {
                    return Err(Error::MalformedWeights("negative weight".into()));
                }
                Ok(Mechanism::Wpv(weights))
            }
            _ => Err(unknown()),
        }
    }
}
