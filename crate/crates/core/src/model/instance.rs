use crate::error::{Error, Result};
use crate::model::outcome::{AgentId, CandidateId};
use crate::model::space::{DistanceMatrix, Point, Space};
use crate::scalar::Scalar;

/// Largest supported facility count.
pub const MAX_FACILITIES: usize = 2;

/// Agents, candidate locations and the number of facilities to build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    space: Space,
    agents: Vec<Point>,
    candidates: Vec<Point>,
    facilities: usize,
}

impl Instance {
    pub fn new(space: Space, agents: Vec<Point>, candidates: Vec<Point>, facilities: usize) -> Result<Self> {
        if agents.is_empty() {
            return Err(Error::InvalidInstance("at least one agent is required".into()));
        }
        if candidates.is_empty() {
            return Err(Error::InvalidInstance("at least one candidate is required".into()));
        }
        if !(1..=MAX_FACILITIES).contains(&facilities) {
            return Err(Error::InvalidInstance(format!(
                "facility count must be 1 or 2, got {facilities}"
            )));
        }
        for p in agents.iter().chain(&candidates) {
            space.validate(p)?;
        }
        Ok(Self {
            space,
            agents,
            candidates,
            facilities,
        })
    }

    pub fn line(agents: Vec<Scalar>, candidates: Vec<Scalar>, facilities: usize) -> Result<Self> {
        Self::new(
            Space::Line,
            agents.into_iter().map(Point::Line).collect(),
            candidates.into_iter().map(Point::Line).collect(),
            facilities,
        )
    }

    /// Agents and candidates are zero-based point indices of `matrix`.
    pub fn metric(
        matrix: DistanceMatrix,
        agents: Vec<usize>,
        candidates: Vec<usize>,
        facilities: usize,
    ) -> Result<Self> {
        Self::new(
            Space::finite(matrix),
            agents.into_iter().map(Point::Node).collect(),
            candidates.into_iter().map(Point::Node).collect(),
            facilities,
        )
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn agents(&self) -> &[Point] {
        &self.agents
    }

    pub fn candidates(&self) -> &[Point] {
        &self.candidates
    }

    pub fn agent_count(&self) -> usize {
        self.agents.len()
    }

    pub fn candidate_count(&self) -> usize {
        self.candidates.len()
    }

    pub fn facilities(&self) -> usize {
        self.facilities
    }

    pub fn agent(&self, id: AgentId) -> Result<&Point> {
        self.agents.get(id.index()).ok_or(Error::InvalidAgent {
            agent: id.get(),
            agents: self.agents.len(),
        })
    }

    pub fn candidate(&self, id: CandidateId) -> Result<&Point> {
        self.candidates.get(id.index()).ok_or(Error::InvalidCandidate {
            candidate: id.get(),
            candidates: self.candidates.len(),
        })
    }

    pub fn agent_ids(&self) -> impl Iterator<Item = AgentId> {
        (0..self.agents.len()).map(AgentId::from_index)
    }

    pub fn candidate_ids(&self) -> impl Iterator<Item = CandidateId> {
        (0..self.candidates.len()).map(CandidateId::from_index)
    }

    /// Line coordinates of the agents; `None` for a finite metric.
    pub fn agent_coordinates(&self) -> Option<Vec<&Scalar>> {
        self.agents.iter().map(Point::coordinate).collect()
    }

    pub(crate) fn distance(&self, a: &Point, b: &Point) -> Scalar {
        self.space.distance_unchecked(a, b)
    }

    /// The same instance with a different reported agent profile.
    pub fn with_agents(&self, agents: Vec<Point>) -> Result<Self> {
        Self::new(self.space.clone(), agents, self.candidates.clone(), self.facilities)
    }

    /// The same instance with some agents' reports replaced.
    pub fn with_reports(&self, reports: &[(AgentId, Point)]) -> Result<Self> {
        let mut agents = self.agents.clone();
        for (id, point) in reports {
            self.agent(*id)?;
            agents[id.index()] = point.clone();
        }
        self.with_agents(agents)
    }
}
