//! James' abacus: beta-numbers on `p` runners, p-cores, p-weights and the
//! Nakayama block labels `(core, weight)`.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Bead positions (first-column beta-numbers) on an abacus with `runners`
/// runners. Positions are kept strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbacusState {
    beads: Vec<usize>,
    runners: usize,
}

impl AbacusState {
    pub fn new(mut beads: Vec<usize>, runners: usize) -> Result<Self> {
        if runners == 0 {
            return Err(Error::Invalid("an abacus needs at least one runner".into()));
        }
        beads.sort_unstable();
        if beads.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("repeated bead position in {beads:?}")));
        }
        Ok(AbacusState { beads, runners })
    }

    /// Bead positions in increasing order.
    pub fn beads(&self) -> &[usize] {
        &self.beads
    }

    pub fn runners(&self) -> usize {
        self.runners
    }

    /// Number of beads sitting on each runner.
    pub fn runner_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.runners];
        for &b in &self.beads {
            counts[b % self.runners] += 1;
        }
        counts
    }

    /// Slides every bead as far up its runner as it will go.
    pub fn push_up(&self) -> AbacusState {
        let mut beads: Vec<usize> = self
            .runner_counts()
            .into_iter()
            .enumerate()
            .flat_map(|(r, k)| (0..k).map(move |row| r + row * self.runners))
            .collect();
        beads.sort_unstable();
        AbacusState {
            beads,
            runners: self.runners,
        }
    }
}

pub fn to_abacus(lambda: &Partition, p: usize, bead_count: usize) -> Result<AbacusState> {
    if bead_count < lambda.len() {
        return Err(Error::BeadCountTooSmall {
            beads: bead_count,
            parts: lambda.len(),
        });
    }
    let beads = (0..bead_count)
        .map(|i| lambda.part(i) + bead_count - 1 - i)
        .collect();
    AbacusState::new(beads, p)
}

pub fn from_abacus(state: &AbacusState) -> Partition {
    // Beads are increasing, so the i-th smallest bead contributes a part of
    // size (position - i).
    Partition::from_unsorted(
        state
            .beads
            .iter()
            .enumerate()
            .map(|(i, &b)| b - i)
            .collect(),
    )
}

/// Number of parts rounded up to a multiple of `p` (at least `p`).
pub fn default_bead_count(lambda: &Partition, p: usize) -> usize {
    lambda.len().div_ceil(p).max(1) * p
}

pub fn p_core(lambda: &Partition, p: usize) -> Partition {
    let state = to_abacus(lambda, p, default_bead_count(lambda, p))
        .expect("default bead count covers every part");
    from_abacus(&state.push_up())
}

pub fn p_weight(lambda: &Partition, p: usize) -> usize {
    (lambda.size() - p_core(lambda, p).size()) / p
}

pub fn is_p_core(lambda: &Partition, p: usize) -> bool {
    p_core(lambda, p) == *lambda
}

/// A Nakayama block label. Equality and hashing use `(core, prime)`; the
/// weight is determined by those and the degree.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockLabel {
    pub core: Partition,
    pub weight: usize,
    #[serde(rename = "p")]
    pub prime: usize,
}

impl PartialEq for BlockLabel {
    fn eq(&self, other: &Self) -> bool {
        self.core == other.core && self.prime == other.prime
    }
}

impl Eq for BlockLabel {}

impl Hash for BlockLabel {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.core.hash(state);
        self.prime.hash(state);
    }
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "core={} w={} p={}", self.core, self.weight, self.prime)
    }
}

pub fn block_label(lambda: &Partition, p: usize) -> BlockLabel {
    let core = p_core(lambda, p);
    let weight = (lambda.size() - core.size()) / p;
    BlockLabel {
        core,
        weight,
        prime: p,
    }
}
