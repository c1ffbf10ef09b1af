use num_bigint::BigInt;
use num_traits::One;

use crate::error::Result;
use crate::model::{AgentId, Instance, Point};
use crate::scalar::Scalar;

/// Grid size used when none is given.
pub const DEFAULT_GRID: usize = 41;

/// Finite set of false reports searched for each agent.
///
/// On the line: every candidate and agent location plus `grid` evenly spaced
/// points over `[min - span, max + span]`, where `span = max - min` of all true
/// locations (at least 1). In a finite metric: every point. Sorted ascending,
/// without duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisreportSet {
    points: Vec<Point>,
    grid: usize,
}

impl MisreportSet {
    pub fn new(instance: &Instance, grid: usize) -> Self {
        let mut points = match instance.space().points() {
            Some(all) => all,
            None => {
                let mut points: Vec<Point> = instance
                    .agents()
                    .iter()
                    .chain(instance.candidates())
                    .cloned()
                    .collect();
                points.extend(line_grid(instance, grid).into_iter().map(Point::Line));
                points
            }
        };
        points.sort();
        points.dedup();
        Self { points, grid }
    }

    /// An explicit set; the agents' true locations are always added.
    pub fn from_points(instance: &Instance, extra: Vec<Point>) -> Result<Self> {
        for p in &extra {
            instance.space().validate(p)?;
        }
        let mut points: Vec<Point> = instance.agents().iter().cloned().chain(extra).collect();
        points.sort();
        points.dedup();
        Ok(Self { points, grid: 0 })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Reports searched for `agent`; currently the same set for everyone.
    pub fn for_agent(&self, _agent: AgentId) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn grid(&self) -> usize {
        self.grid
    }
}

fn line_grid(instance: &Instance, grid: usize) -> Vec<Scalar> {
    let coords: Vec<&Scalar> = instance
        .agents()
        .iter()
        .chain(instance.candidates())
        .filter_map(Point::coordinate)
        .collect();
    let (Some(min), Some(max)) = (coords.iter().min(), coords.iter().max()) else {
        return Vec::new();
    };
    let span = std::cmp::max(*max - *min, Scalar::one());
    let lo = *min - &span;
    let hi = *max + &span;
    match grid {
        0 => Vec::new(),
        1 => vec![(lo + hi) / Scalar::from_integer(BigInt::from(2))],
        g => {
            let step = (&hi - &lo) / Scalar::from_integer(BigInt::from(g - 1));
            (0..g)
                .map(|j| &lo + &step * Scalar::from_integer(BigInt::from(j)))
                .collect()
        }
    }
}
