//! Greedy maximal d-packings.
//!
//! A d-packing is a vertex set whose members are pairwise more than `d` hops
//! apart. The greedy below visits vertices by decreasing degree in the
//! original graph (ties: lower index first), keeps every vertex not yet
//! deleted, and deletes the radius-`d` ball around each kept vertex.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Bfs, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packing {
    pub d: u32,
    /// Members in selection order.
    pub members: Vec<Vertex>,
    /// Set when fewer members exist than were requested.
    pub truncated: bool,
}

/// Vertices sorted by degree descending, ties by lower index.
pub(crate) fn degree_order(g: &Graph) -> Vec<Vertex> {
    let degrees = g.degrees();
    let max = g.max_degree();
    // Counting sort keeps equal degrees in index order.
    let mut counts = vec![0usize; max + 2];
    for &d in &degrees {
        counts[max - d + 1] += 1;
    }
    for i in 1..counts.len() {
        counts[i] += counts[i - 1];
    }
    let mut order = vec![0; g.n()];
    for (v, &d) in degrees.iter().enumerate() {
        let slot = &mut counts[max - d];
        order[*slot] = v as Vertex;
        *slot += 1;
    }
    order
}

fn greedy(g: &Graph, d: u32, limit: usize) -> Vec<Vertex> {
    let mut deleted = vec![false; g.n()];
    let mut bfs = Bfs::new(g.n());
    let mut members = Vec::new();
    for v in degree_order(g) {
        if members.len() == limit {
            break;
        }
        if deleted[v as usize] {
            continue;
        }
        members.push(v);
        for &w in bfs.run(g, &[v], d) {
            deleted[w as usize] = true;
        }
    }
    members
}

pub fn maximal_d_packing(g: &Graph, d: u32) -> Packing {
    Packing {
        d,
        members: greedy(g, d, usize::MAX),
        truncated: false,
    }
}

/// The first `min(k, |maximal packing|)` members of [`maximal_d_packing`].
pub fn k_d_packing(g: &Graph, k: usize, d: u32) -> Packing {
    let members = greedy(g, d, k);
    Packing {
        d,
        truncated: members.len() < k,
        members,
    }
}
