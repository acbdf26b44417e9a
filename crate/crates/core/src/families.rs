//! Standard graph families used by campaigns and the `gen` command.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::rank::MAX_RANK_VERTICES;

/// Highest edge multiplicity produced by [`GraphFamily::Random`].
pub const MAX_RANDOM_MULTIPLICITY: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphFamily {
    /// Cycle C_n, genus 1.
    Cycle,
    /// Complete graph K_n.
    Complete,
    /// Two vertices joined by `size` parallel edges, genus `size - 1`.
    Banana,
    /// Path on `size` vertices, genus 0.
    Path,
    /// Seeded random connected multigraph on `size` vertices.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphFamilySpec {
    pub family: GraphFamily,
    pub size: usize,
    pub seed: u64,
}

impl GraphFamilySpec {
    pub fn new(family: GraphFamily, size: usize) -> Self {
        GraphFamilySpec { family, size, seed: 0 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Short name such as `C4`, `K4`, `B3`, `P4`, `R5s42`.
    pub fn label(&self) -> String {
        match self.family {
            GraphFamily::Cycle => format!("C{}", self.size),
            GraphFamily::Complete => format!("K{}", self.size),
            GraphFamily::Banana => format!("B{}", self.size),
            GraphFamily::Path => format!("P{}", self.size),
            GraphFamily::Random => format!("R{}s{}", self.size, self.seed),
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphFamily::Cycle => "cycle",
            GraphFamily::Complete => "complete",
            GraphFamily::Banana => "banana",
            GraphFamily::Path => "path",
            GraphFamily::Random => "random",
        })
    }
}

impl FromStr for GraphFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cycle" => GraphFamily::Cycle,
            "complete" => GraphFamily::Complete,
            "banana" => GraphFamily::Banana,
            "path" => GraphFamily::Path,
            "random" => GraphFamily::Random,
            other => return Err(Error::InvalidInput(format!("unknown graph family {other:?}"))),
        })
    }
}

pub fn generate_family(spec: &GraphFamilySpec) -> Result<Multigraph> {
    let n = spec.size;
    let out_of_range = |lo: usize, hi: usize| {
        Error::InvalidInput(format!(
            "{} size {n} outside the supported range {lo}..={hi}",
            spec.family
        ))
    };
    match spec.family {
        GraphFamily::Cycle => {
            if !(3..=MAX_RANK_VERTICES).contains(&n) {
                return Err(out_of_range(3, MAX_RANK_VERTICES));
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Multigraph::from_edges(n, &edges)
        }
        GraphFamily::Complete => {
            if !(1..=MAX_RANK_VERTICES).contains(&n) {
                return Err(out_of_range(1, MAX_RANK_VERTICES));
            }
            let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            Multigraph::from_edges(n, &edges)
        }
        GraphFamily::Banana => {
            if !(1..=MAX_RANK_VERTICES).contains(&n) {
                return Err(out_of_range(1, MAX_RANK_VERTICES));
            }
            Multigraph::from_edges(2, &vec![(0, 1); n])
        }
        GraphFamily::Path => {
            if !(1..=MAX_RANK_VERTICES).contains(&n) {
                return Err(out_of_range(1, MAX_RANK_VERTICES));
            }
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Multigraph::from_edges(n, &edges)
        }
        GraphFamily::Random => {
            if !(1..=MAX_RANK_VERTICES).contains(&n) {
                return Err(out_of_range(1, MAX_RANK_VERTICES));
            }
            random_connected(n, spec.seed)
        }
    }
}

/// Each pair gets multiplicity 0 with probability 1/2, otherwise uniform in
/// `1..=3`; redrawn until connected.
fn random_connected(n: usize, seed: u64) -> Result<Multigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut rows = vec![vec![0u32; n]; n];
        for u in 0..n {
            for v in u + 1..n {
                let m = if rng.gen_bool(0.5) {
                    0
                } else {
                    rng.gen_range(1..=MAX_RANDOM_MULTIPLICITY)
                };
                rows[u][v] = m;
                rows[v][u] = m;
            }
        }
        match Multigraph::from_adjacency(rows) {
            Ok(g) => return Ok(g),
            Err(Error::InvalidInput(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}
