use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::mechanisms::Mechanism;
use crate::model::{AgentId, Instance, Outcome};

/// Exhaustive search up to this many agents; seeded sampling above.
pub const EXHAUSTIVE_PERMUTATION_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnonymityViolation {
    /// Position `j` of the permuted profile holds agent `permutation[j]`'s report.
    pub permutation: Vec<AgentId>,
    pub original: Outcome,
    pub permuted: Outcome,
}

/// Compares the outcome on every permutation of the agents (n ≤ 6) or on
/// `trials` seeded random permutations, exactly.
pub fn check_anonymity(
    instance: &Instance,
    mechanism: &Mechanism,
    trials: usize,
    seed: u64,
) -> Result<Option<AnonymityViolation>> {
    let n = instance.agent_count();
    let original = mechanism.apply(instance)?;
    let identity: Vec<usize> = (0..n).collect();
    let permutations: Box<dyn Iterator<Item = Vec<usize>>> = if n <= EXHAUSTIVE_PERMUTATION_LIMIT {
        Box::new((0..n).permutations(n))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order = identity.clone();
        Box::new(std::iter::repeat_with(move || {
            order.shuffle(&mut rng);
            order.clone()
        })
        .take(trials))
    };
    for permutation in permutations {
        if permutation == identity {
            continue;
        }
        let reports: Vec<_> = permutation.iter().map(|&i| instance.agents()[i].clone()).collect();
        let permuted = mechanism.apply_to_reports(instance, &reports)?;
        if permuted != original {
            return Ok(Some(AnonymityViolation {
                permutation: permutation.into_iter().map(AgentId::from_index).collect(),
                original,
                permuted,
            }));
        }
    }
    Ok(None)
}
