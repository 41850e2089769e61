//! Scattered dense communities: cliques joined in a ring by simple paths.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphBuilder, Vertex};
use crate::{Error, Result};

/// Clique-ring description. Vertex `i` of the generated graph has raw label
/// `i`: cliques come first in the listed order, then the internal vertices
/// of each connecting path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntheticSpec {
    pub clique_sizes: Vec<usize>,
    /// Internal vertices on each connecting path.
    pub path_internal: usize,
    pub rng_seed: u64,
}

impl SyntheticSpec {
    /// Four cliques (500, 450, 350, 250) joined by 9-vertex paths: 1586
    /// vertices and 318015 edges. Clique sizes were solved from those two
    /// totals and the 500-vertex largest clique.
    pub fn four_communities(rng_seed: u64) -> Self {
        Self {
            clique_sizes: alloc::vec![500, 450, 350, 250],
            path_internal: 9,
            rng_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.clique_sizes.len() < 3 {
            return Err(Error::Spec("a ring needs at least 3 cliques"));
        }
        if self.clique_sizes.iter().any(|&s| s < 2) {
            return Err(Error::Spec("every clique needs at least 2 vertices"));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.clique_sizes.iter().sum::<usize>() + self.clique_sizes.len() * self.path_internal
    }

    pub fn edge_count(&self) -> usize {
        self.clique_sizes
            .iter()
            .map(|s| s * (s - 1) / 2)
            .sum::<usize>()
            + self.clique_sizes.len() * (self.path_internal + 1)
    }

    fn clique_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.clique_sizes.len() + 1);
        offsets.push(0);
        for s in &self.clique_sizes {
            offsets.push(offsets.last().unwrap() + s);
        }
        offsets
    }

    /// Clique index containing `v`, or `None` for path vertices.
    pub fn community(&self, v: Vertex) -> Option<usize> {
        let offsets = self.clique_offsets();
        let v = v as usize;
        (0..self.clique_sizes.len()).find(|&c| offsets[c] <= v && v < offsets[c + 1])
    }

    /// For each ring edge `c -> c+1`, the exit port in clique `c` and the
    /// entry port in clique `c+1`. Within a clique the two ports differ.
    pub fn ports(&self) -> Vec<(Vertex, Vertex)> {
        let offsets = self.clique_offsets();
        let c = self.clique_sizes.len();
        let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed);
        // (entry, exit) per clique.
        let picks: Vec<(usize, usize)> = self
            .clique_sizes
            .iter()
            .map(|&s| {
                let pair = rand::seq::index::sample(&mut rng, s, 2);
                (pair.index(0), pair.index(1))
            })
            .collect();
        (0..c)
            .map(|i| {
                let j = (i + 1) % c;
                (
                    (offsets[i] + picks[i].1) as Vertex,
                    (offsets[j] + picks[j].0) as Vertex,
                )
            })
            .collect()
    }
}

pub fn generate_scattered_cliques(spec: &SyntheticSpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.vertex_count();
    let mut b = GraphBuilder::new();
    for v in 0..n as u64 {
        b.add_vertex(v);
    }
    let mut start = 0u64;
    for &s in &spec.clique_sizes {
        let s = s as u64;
        for a in start..start + s {
            for c in a + 1..start + s {
                b.add_edge(a, c);
            }
        }
        start += s;
    }
    let mut next = start;
    for (exit, entry) in spec.ports() {
        let mut prev = exit as u64;
        for _ in 0..spec.path_internal {
            b.add_edge(prev, next);
            prev = next;
            next += 1;
        }
        b.add_edge(prev, entry as u64);
    }
    Ok(b.build())
}
