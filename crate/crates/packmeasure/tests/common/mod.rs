//! Reference implementations used as oracles. None of them share code with
//! the library's BFS or cascade paths.
#![allow(dead_code, clippy::needless_range_loop)]

use packmeasure::core::{Graph, GraphBuilder};
use proptest::prelude::*;

pub const INF: u32 = u32::MAX;

/// Graph on vertices 0..n (labels equal indices) with the given edges.
pub fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    let mut b = GraphBuilder::new();
    for v in 0..n as u64 {
        b.add_vertex(v);
    }
    for &(a, c) in edges {
        b.add_edge(a as u64, c as u64);
    }
    b.build()
}

/// Random graphs with up to `max_n` vertices, possibly disconnected.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=2 * n).prop_map(move |edges| build(n, &edges))
    })
}

/// All-pairs hop distances by Floyd-Warshall over the adjacency matrix.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut d = vec![vec![INF; n]; n];
    for v in 0..n {
        d[v][v] = 0;
        for &w in g.neighbors(v as u32) {
            d[v][w as usize] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Diminishing influence summed vertex by vertex from a distance matrix.
pub fn influence_oracle(dist: &[Vec<u32>], v: usize) -> f64 {
    dist[v]
        .iter()
        .enumerate()
        .filter(|&(w, &d)| w != v && d != INF)
        .map(|(_, &d)| 0.5f64.powi(d as i32))
        .sum()
}

/// Exact expected Independent Cascade spread: enumerate every kept/deleted
/// pattern of the edges and count vertices connected to a seed through
/// kept edges.
pub fn live_edge_expectation(g: &Graph, seeds: &[u32], p: f64) -> f64 {
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (u as usize, v as usize)).collect();
    let m = edges.len();
    assert!(m <= 20, "enumeration is exponential in m");
    let mut total = 0.0;
    for mask in 0u32..(1 << m) {
        let kept = mask.count_ones() as i32;
        let weight = p.powi(kept) * (1.0 - p).powi(m as i32 - kept);
        if weight == 0.0 {
            continue;
        }
        let mut parent: Vec<usize> = (0..g.n()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        let roots: Vec<usize> = seeds
            .iter()
            .map(|&s| find(&mut parent, s as usize))
            .collect();
        let reached = (0..g.n())
            .filter(|&v| {
                let r = find(&mut parent, v);
                roots.contains(&r)
            })
            .count();
        total += weight * reached as f64;
    }
    total
}
