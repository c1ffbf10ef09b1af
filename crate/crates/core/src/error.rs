use thiserror::Error;

/// Errors raised while building instances, applying mechanisms or searching.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse number {0:?}")]
    ParseNumber(String),
    #[error("invalid distance matrix: {0}")]
    InvalidMetric(String),
    #[error("point {point} is out of range for a space with {size} points")]
    PointOutOfRange { point: usize, size: usize },
    #[error("point kind does not match the space")]
    PointKindMismatch,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("agent {agent} does not exist (n = {agents})")]
    InvalidAgent { agent: usize, agents: usize },
    #[error("candidate {candidate} does not exist (m = {candidates})")]
    InvalidCandidate { candidate: usize, candidates: usize },
    #[error("invalid outcome: {0}")]
    InvalidOutcome(String),
    #[error("mechanism {mechanism} requires a line space")]
    RequiresLine { mechanism: String },
    #[error("mechanism {mechanism} selects {expected} facilities but the instance asks for {actual}")]
    FacilityCount {
        mechanism: String,
        expected: usize,
        actual: usize,
    },
    #[error("malformed weights: {0}")]
    MalformedWeights(String),
    #[error("unknown mechanism {0:?}")]
    UnknownMechanism(String),
    #[error("unknown construction {0:?}")]
    UnknownConstruction(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("enumeration needs {required} evaluations, guard is {guard}")]
    GuardExceeded { required: u128, guard: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
