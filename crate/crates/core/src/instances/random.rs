//! Seeded random instance families.
//!
//! Instance `index` of a family is drawn from a ChaCha stream keyed by
//! `(seed, index)`, so any single instance can be regenerated on its own.

use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, Instance};
use crate::scalar::{int, Scalar};

/// Line coordinates are multiples of `1 / LINE_GRID`.
pub const LINE_GRID: i64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// Coordinates uniform on the grid over `[lo, hi]`.
    LineUniform { lo: i64, hi: i64 },
    /// Integer edge weights uniform in `[min_weight, max_weight]`, then closed
    /// under shortest paths.
    MetricClosure { min_weight: u64, max_weight: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomFamily {
    pub kind: FamilyKind,
    pub agents: usize,
    pub candidates: usize,
    pub facilities: usize,
    pub seed: u64,
}

impl RandomFamily {
    /// Line family over `[0, 10]`.
    pub fn line(agents: usize, candidates: usize, facilities: usize, seed: u64) -> Self {
        Self {
            kind: FamilyKind::LineUniform { lo: 0, hi: 10 },
            agents,
            candidates,
            facilities,
            seed,
        }
    }

    /// Metric-closure family with edge weights in `[1, 10]`.
    pub fn metric(agents: usize, candidates: usize, facilities: usize, seed: u64) -> Self {
        Self {
            kind: FamilyKind::MetricClosure {
                min_weight: 1,
                max_weight: 10,
            },
            agents,
            candidates,
            facilities,
            seed,
        }
    }

    pub fn with_kind(mut self, kind: FamilyKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn instance(&self, index: u64) -> Result<Instance> {
        match self.kind {
            FamilyKind::LineUniform { .. } => random_line_instance(self, index),
            FamilyKind::MetricClosure { .. } => random_metric_instance(self, index),
        }
    }

    fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

impl fmt::Display for RandomFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::LineUniform { lo, hi } => write!(f, "line[{lo},{hi}]")?,
            FamilyKind::MetricClosure {
                min_weight,
                max_weight,
            } => write!(f, "metric[{min_weight},{max_weight}]")?,
        }
        write!(
            f,
            " n={} m={} k={} seed={}",
            self.agents, self.candidates, self.facilities, self.seed
        )
    }
}

pub fn random_line_instance(family: &RandomFamily, index: u64) -> Result<Instance> {
    let FamilyKind::LineUniform { lo, hi } = family.kind else {
        return Err(Error::Parameter("not a line family".into()));
    };
    if lo > hi {
        return Err(Error::Parameter(format!("empty coordinate range [{lo}, {hi}]")));
    }
    let (lo_units, hi_units) = (lo * LINE_GRID, hi * LINE_GRID);
    let mut rng = family.rng(index);
    let mut draw = |count: usize| -> Vec<Scalar> {
        (0..count)
            .map(|_| {
                let units = rng.random_range(lo_units..=hi_units);
                Scalar::new(BigInt::from(units), BigInt::from(LINE_GRID))
            })
            .collect()
    };
    let agents = draw(family.agents);
    let candidates = draw(family.candidates);
    Instance::line(agents, candidates, family.facilities)
}

/// Agents occupy points `0..n`, candidates `n..n+m`.
#[allow(clippy::needless_range_loop)] // symmetric (i, j) / (j, i) access
pub fn random_metric_instance(family: &RandomFamily, index: u64) -> Result<Instance> {
    let FamilyKind::MetricClosure {
        min_weight,
        max_weight,
    } = family.kind
    else {
        return Err(Error::Parameter("not a metric family".into()));
    };
    if min_weight > max_weight {
        return Err(Error::Parameter(format!(
            "empty weight range [{min_weight}, {max_weight}]"
        )));
    }
    let size = family.agents + family.candidates;
    let mut rng = family.rng(index);
    let mut raw = vec![vec![int(0); size]; size];
    for i in 0..size {
        for j in i + 1..size {
            let w = Scalar::from_integer(BigInt::from(rng.random_range(min_weight..=max_weight)));
            raw[i][j] = w.clone();
            raw[j][i] = w;
        }
    }
    let matrix = DistanceMatrix::new(metric_closure(&raw))?;
    Instance::metric(
        matrix,
        (0..family.agents).collect(),
        (family.agents..size).collect(),
        family.facilities,
    )
}

/// All-pairs shortest paths over a symmetric nonnegative weight matrix.
pub fn metric_closure(raw: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let size = raw.len();
    let mut d = raw.to_vec();
    for relay in 0..size {
        for i in 0..size {
            for j in 0..size {
                let via = &d[i][relay] + &d[relay][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instance() {
        let family = RandomFamily::line(3, 2, 1, 7);
        assert_eq!(family.instance(0).unwrap(), family.instance(0).unwrap());
        assert_ne!(family.instance(0).unwrap(), family.instance(1).unwrap());
        let metric = RandomFamily::metric(3, 2, 1, 7);
        assert_eq!(metric.instance(5).unwrap(), metric.instance(5).unwrap());
    }

    #[test]
    fn single_agent_family() {
        let inst = RandomFamily::line(1, 3, 1, 1).instance(0).unwrap();
        assert_eq!(inst.agent_count(), 1);
        assert_eq!(inst.candidate_count(), 3);
    }

    #[test]
    fn coordinates_stay_on_grid_and_in_range() {
        let family = RandomFamily::line(6, 6, 2, 3).with_kind(FamilyKind::LineUniform { lo: -2, hi: 2 });
        for index in 0..20 {
            let inst = family.instance(index).unwrap();
            for p in inst.agents().iter().chain(inst.candidates()) {
                let x = p.coordinate().unwrap();
                assert!(*x >= int(-2) && *x <= int(2));
                assert!((LINE_GRID % x.denom()) == BigInt::from(0));
            }
        }
    }

    #[test]
    fn wrong_kind_is_rejected() {
        assert!(random_metric_instance(&RandomFamily::line(2, 2, 1, 0), 0).is_err());
        assert!(random_line_instance(&RandomFamily::metric(2, 2, 1, 0), 0).is_err());
    }

    #[test]
    fn two_point_closure_is_identity() {
        let raw = vec![vec![int(0), int(4)], vec![int(4), int(0)]];
        assert_eq!(metric_closure(&raw), raw);
    }
}
