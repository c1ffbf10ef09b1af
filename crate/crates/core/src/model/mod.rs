//! Spaces, instances, outcomes and the cost objectives.

pub mod cost;
pub mod instance;
pub mod outcome;
pub mod space;

pub use cost::{
    agent_cost, cost, expected_agent_cost, expected_cost, expected_cost_at, max_cost, outcome_cost,
    social_cost, Objective,
};
pub use instance::{Instance, MAX_FACILITIES};
pub use outcome::{AgentId, CandidateId, Lottery, Outcome, Selection};
pub use space::{DistanceMatrix, Point, Space};
