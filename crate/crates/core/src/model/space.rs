use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{exact_string, Scalar};

/// A location in a [`Space`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    /// A coordinate on the real line.
    Line(Scalar),
    /// A zero-based point index of a finite metric.
    Node(usize),
}

impl Point {
    pub fn coordinate(&self) -> Option<&Scalar> {
        match self {
            Point::Line(x) => Some(x),
            Point::Node(_) => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Line(x) => f.write_str(&exact_string(x)),
            Point::Node(i) => write!(f, "#{}", i + 1),
        }
    }
}

/// Symmetric distance matrix satisfying the metric axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    size: usize,
    entries: Vec<Scalar>,
}

impl DistanceMatrix {
    /// Validates zero diagonal, symmetry, nonnegativity and the triangle inequality.
    #[allow(clippy::needless_range_loop)] // symmetric (i, j) / (j, i) access
    pub fn new(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::InvalidMetric("empty matrix".into()));
        }
        if let Some(row) = rows.iter().position(|r| r.len() != size) {
            return Err(Error::InvalidMetric(format!(
                "row {} has {} entries, expected {size}",
                row + 1,
                rows[row].len()
            )));
        }
        for i in 0..size {
            if !rows[i][i].is_zero() {
                return Err(Error::InvalidMetric(format!("d({0},{0}) is not zero", i + 1)));
            }
            for j in 0..size {
                if rows[i][j].is_negative() {
                    return Err(Error::InvalidMetric(format!("d({},{}) is negative", i + 1, j + 1)));
                }
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidMetric(format!(
                        "d({},{}) differs from d({},{})",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        for relay in 0..size {
            for i in 0..size {
                for j in 0..size {
                    if rows[i][j] > &rows[i][relay] + &rows[relay][j] {
                        return Err(Error::InvalidMetric(format!(
                            "triangle inequality fails for d({},{}) via {}",
                            i + 1,
                            j + 1,
                            relay + 1
                        )));
                    }
                }
            }
        }
        Ok(Self {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.size).map(<[Scalar]>::to_vec).collect()
    }
}

/// The metric space agents and candidates live in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Space {
    Line,
    FiniteMetric(Arc<DistanceMatrix>),
}

impl Space {
    pub fn finite(matrix: DistanceMatrix) -> Self {
        Space::FiniteMetric(Arc::new(matrix))
    }

    pub fn is_line(&self) -> bool {
        matches!(self, Space::Line)
    }

    /// Checks that `point` belongs to this space.
    pub fn validate(&self, point: &Point) -> Result<()> {
        match (self, point) {
            (Space::Line, Point::Line(_)) => Ok(()),
            (Space::FiniteMetric(matrix), Point::Node(i)) => {
                if *i < matrix.size() {
                    Ok(())
                } else {
                    Err(Error::PointOutOfRange {
                        point: i + 1,
                        size: matrix.size(),
                    })
                }
            }
            _ => Err(Error::PointKindMismatch),
        }
    }

    pub fn distance(&self, a: &Point, b: &Point) -> Result<Scalar> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.distance_unchecked(a, b))
    }

    /// Distance between two points already validated against this space.
    pub(crate) fn distance_unchecked(&self, a: &Point, b: &Point) -> Scalar {
        match (self, a, b) {
            (Space::Line, Point::Line(x), Point::Line(y)) => (x - y).abs(),
            (Space::FiniteMetric(matrix), Point::Node(i), Point::Node(j)) => {
                matrix.get(*i, *j).clone()
            }
            _ => unreachable!("points are validated on construction"),
        }
    }

    /// Every point of a finite metric; `None` on the line.
    pub fn points(&self) -> Option<Vec<Point>> {
        match self {
            Space::Line => None,
            Space::FiniteMetric(matrix) => Some((0..matrix.size()).map(Point::Node).collect()),
        }
    }
}
