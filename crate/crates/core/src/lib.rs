//! Facility location games with candidate locations.
//!
//! Agents report locations on a line or in a finite metric; a mechanism picks
//! one or two facilities among a fixed set of candidate locations, and every
//! agent pays its distance to the closest facility. This crate provides the
//! strategy-proof mechanisms, an exact optimum by enumeration, generators for
//! the standard worst-case constructions and random families, and a
//! falsification engine that searches for manipulations and measures
//! approximation ratios. All arithmetic is exact.

pub mod error;
pub mod instances;
pub mod mechanisms;
pub mod model;
pub mod scalar;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use mechanisms::Mechanism;
pub use model::{AgentId, CandidateId, Instance, Lottery, Objective, Outcome, Point, Selection, Space};
pub use scalar::Scalar;
