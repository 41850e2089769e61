//! Immutable undirected simple graphs in compressed adjacency form, and the
//! breadth-first distance primitives every other module is built on.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Internal vertex index, assigned densely from 0 in first-appearance order.
pub type Vertex = u32;

/// Distance marker for vertices outside the source's component.
pub const UNREACHABLE: u32 = u32::MAX;

/// Undirected simple graph with sorted adjacency lists and a raw-label map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
    labels: Vec<u64>,
    index: BTreeMap<u64, Vertex>,
}

/// Accumulates labeled edges and freezes them into a [`Graph`].
///
/// Duplicate edges in either direction collapse to one undirected edge and
/// self-loops are dropped, but a vertex seen only in a self-loop still gets
/// an index.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<u64>,
    index: BTreeMap<u64, Vertex>,
    arcs: Vec<(Vertex, Vertex)>,
    self_loops: usize,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, label: u64) -> Vertex {
        let next = self.labels.len() as Vertex;
        *self.index.entry(label).or_insert_with(|| {
            self.labels.push(label);
            next
        })
    }

    /// Registers a vertex without adding edges.
    pub fn add_vertex(&mut self, label: u64) -> Vertex {
        self.intern(label)
    }

    pub fn add_edge(&mut self, a: u64, b: u64) {
        let u = self.intern(a);
        let v = self.intern(b);
        if u == v {
            self.self_loops += 1;
        } else {
            self.arcs.push((u, v));
        }
    }

    /// Number of self-loop lines seen so far (duplicates included).
    pub fn self_loops(&self) -> usize {
        self.self_loops
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn build(self) -> Graph {
        let n = self.labels.len();
        let mut degree = vec![0usize; n];
        for &(u, v) in &self.arcs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0; offsets[n]];
        for &(u, v) in &self.arcs {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        drop(self.arcs);

        // Sort and dedup each list, compacting in place.
        let mut write = 0;
        let mut compact = Vec::with_capacity(n + 1);
        compact.push(0);
        for v in 0..n {
            let list = &mut targets[offsets[v]..offsets[v + 1]];
            list.sort_unstable();
            let mut last = None;
            for i in offsets[v]..offsets[v + 1] {
                let t = targets[i];
                if last != Some(t) {
                    targets[write] = t;
                    write += 1;
                    last = Some(t);
                }
            }
            compact.push(write);
        }
        targets.truncate(write);
        targets.shrink_to_fit();

        Graph {
            offsets: compact,
            targets,
            labels: self.labels,
            index: self.index,
        }
    }
}

impl Graph {
    /// Builds a graph from raw-labeled edges. Fails if no edge survives
    /// self-loop removal.
    pub fn from_edges<I: IntoIterator<Item = (u64, u64)>>(edges: I) -> Result<Self> {
        let mut builder = GraphBuilder::new();
        for (a, b) in edges {
            builder.add_edge(a, b);
        }
        let g = builder.build();
        if g.m() == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(g)
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Undirected edge count.
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v as usize,
                n: self.n(),
            })
        }
    }

    /// Sorted neighbor list. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.degree_unchecked(v))
    }

    #[inline]
    pub(crate) fn degree_unchecked(&self, v: Vertex) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.offsets
            .windows(2)
            .map(|w| w[1] - w[0])
            .max()
            .unwrap_or(0)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n() as Vertex
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn label(&self, v: Vertex) -> u64 {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn index_of(&self, label: u64) -> Option<Vertex> {
        self.index.get(&label).copied()
    }

    /// Edges in raw labels, each as `(min, max)`, sorted. Isomorphic inputs
    /// that differ only in line order or arc direction give equal output.
    pub fn canonical_edges(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = self
            .edges()
            .map(|(u, v)| {
                let (a, b) = (self.label(u), self.label(v));
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn bfs_distances(&self, source: Vertex) -> Result<DistanceField> {
        self.check_vertex(source)?;
        let mut bfs = Bfs::new(self.n());
        bfs.run(self, &[source], UNREACHABLE);
        Ok(DistanceField {
            source,
            dist: bfs.into_distances(),
        })
    }

    /// Distance from every vertex to its nearest source.
    pub fn multi_source_distances(&self, sources: &[Vertex]) -> Result<Vec<u32>> {
        for &s in sources {
            self.check_vertex(s)?;
        }
        let mut bfs = Bfs::new(self.n());
        bfs.run(self, sources, UNREACHABLE);
        Ok(bfs.into_distances())
    }

    /// `[|N_1(v)|, |N_2(v)|, ...]` up to the eccentricity of `v` in its
    /// component.
    pub fn shell_sizes(&self, v: Vertex) -> Result<Vec<usize>> {
        self.check_vertex(v)?;
        let mut bfs = Bfs::new(self.n());
        let mut shells = Vec::new();
        bfs.shells(self, v, &mut shells);
        Ok(shells)
    }
}

/// Hop distances from one source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceField {
    pub source: Vertex,
    dist: Vec<u32>,
}

impl DistanceField {
    pub fn get(&self, v: Vertex) -> Option<u32> {
        match self.dist[v as usize] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    /// Raw distances with [`UNREACHABLE`] for vertices in other components.
    pub fn as_slice(&self) -> &[u32] {
        &self.dist
    }

    pub fn eccentricity(&self) -> u32 {
        self.dist
            .iter()
            .copied()
            .filter(|&d| d != UNREACHABLE)
            .max()
            .unwrap_or(0)
    }

    pub fn reachable(&self) -> usize {
        self.dist.iter().filter(|&&d| d != UNREACHABLE).count()
    }
}

/// Reusable BFS state. Repeated runs only reset what the previous run
/// touched, so a single instance can serve thousands of searches.
#[derive(Clone, Debug)]
pub struct Bfs {
    dist: Vec<u32>,
    queue: Vec<Vertex>,
}

impl Bfs {
    pub fn new(n: usize) -> Self {
        Self {
            dist: vec![UNREACHABLE; n],
            queue: Vec::with_capacity(n),
        }
    }

    /// Level-order search from `sources`, not expanding past `max_depth`.
    /// Returns the visited vertices in non-decreasing distance order.
    pub fn run(&mut self, g: &Graph, sources: &[Vertex], max_depth: u32) -> &[Vertex] {
        for &v in &self.queue {
            self.dist[v as usize] = UNREACHABLE;
        }
        self.queue.clear();
        for &s in sources {
            if self.dist[s as usize] == UNREACHABLE {
                self.dist[s as usize] = 0;
                self.queue.push(s);
            }
        }
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            let du = self.dist[u as usize];
            if du >= max_depth {
                continue;
            }
            for &w in g.neighbors(u) {
                let slot = &mut self.dist[w as usize];
                if *slot == UNREACHABLE {
                    *slot = du + 1;
                    self.queue.push(w);
                }
            }
        }
        &self.queue
    }

    /// Shell sizes of `v` into `out` (cleared first).
    pub fn shells(&mut self, g: &Graph, v: Vertex, out: &mut Vec<usize>) {
        out.clear();
        self.run(g, &[v], UNREACHABLE);
        for &w in &self.queue[1..] {
            let d = self.dist[w as usize] as usize;
            if out.len() < d {
                out.push(0);
            }
            out[d - 1] += 1;
        }
    }

    pub fn dist(&self, v: Vertex) -> u32 {
        self.dist[v as usize]
    }

    pub fn visited(&self) -> &[Vertex] {
        &self.queue
    }

    pub fn into_distances(self) -> Vec<u32> {
        self.dist
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn dedups_and_drops_loops() {
        let g = from_pairs(&[(1, 2), (2, 1), (2, 2), (1, 3)]);
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert_eq!(g.labels(), &[1, 2, 3]);
        assert_eq!(g.neighbors(0), &[1, 2]);
    }

    #[test]
    fn loop_only_vertex_is_kept_isolated() {
        let mut b = GraphBuilder::new();
        b.add_edge(7, 7);
        b.add_edge(1, 2);
        assert_eq!(b.self_loops(), 1);
        let g = b.build();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 1);
        assert_eq!(g.degree(0).unwrap(), 0);
    }

    #[test]
    fn empty_edge_set_is_rejected() {
        assert_eq!(Graph::from_edges([(3, 3)]), Err(Error::EmptyGraph));
        assert_eq!(Graph::from_edges([]), Err(Error::EmptyGraph));
    }

    #[test]
    fn degrees() {
        assert_eq!(star(4).degree(0).unwrap(), 4);
        assert_eq!(path(3).degree(1).unwrap(), 2);
        let mut b = GraphBuilder::new();
        b.add_vertex(9);
        b.add_edge(1, 2);
        assert_eq!(b.build().degree(0).unwrap(), 0);
        assert_eq!(
            path(3).degree(3),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn bfs_on_path_and_components() {
        let g = path(3);
        assert_eq!(g.bfs_distances(0).unwrap().as_slice(), &[0, 1, 2]);

        let g = from_pairs(&[(0, 1), (2, 3)]);
        let d = g.bfs_distances(0).unwrap();
        assert_eq!(d.get(1), Some(1));
        assert_eq!(d.get(2), None);
        assert_eq!(d.get(3), None);
        assert_eq!(d.reachable(), 2);
        assert!(g.bfs_distances(4).is_err());
    }

    #[test]
    fn bfs_on_five_cycle() {
        let g = cycle(5);
        for s in 0..5 {
            let mut d = g.bfs_distances(s).unwrap().as_slice().to_vec();
            d.sort_unstable();
            assert_eq!(d, [0, 1, 1, 2, 2]);
        }
    }

    #[test]
    fn shells() {
        assert_eq!(star(4).shell_sizes(0).unwrap(), [4]);
        assert_eq!(star(4).shell_sizes(1).unwrap(), [1, 3]);
        assert_eq!(path(5).shell_sizes(0).unwrap(), [1, 1, 1, 1]);
        assert!(path(5).shell_sizes(5).is_err());
    }

    #[test]
    fn truncated_bfs_respects_depth() {
        let g = path(6);
        let mut bfs = Bfs::new(g.n());
        assert_eq!(bfs.run(&g, &[0], 2), &[0, 1, 2]);
        // Reuse resets previous state.
        assert_eq!(bfs.run(&g, &[5], 1), &[5, 4]);
        assert_eq!(bfs.dist(0), UNREACHABLE);
    }

    #[test]
    fn canonical_edges_ignore_direction_and_order() {
        let a = from_pairs(&[(5, 1), (1, 9), (9, 5)]);
        let b = from_pairs(&[(9, 1), (5, 9), (1, 5), (1, 9)]);
        assert_eq!(a.canonical_edges(), [(1, 5), (1, 9), (5, 9)]);
        assert_eq!(a.canonical_edges(), b.canonical_edges());
    }
}
