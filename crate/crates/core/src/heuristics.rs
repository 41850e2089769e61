//! Seed-set heuristics: random baseline, maximum degree, diminishing
//! influence, and the pack-and-measure combiners.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Bfs, Graph, Vertex};
use crate::packing::{degree_order, k_d_packing};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeedMethod {
    Random,
    Mdh,
    Dih,
    MdhPack,
    DihPack,
}

impl SeedMethod {
    pub const ALL: [SeedMethod; 5] = [
        SeedMethod::Random,
        SeedMethod::Mdh,
        SeedMethod::Dih,
        SeedMethod::MdhPack,
        SeedMethod::DihPack,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            SeedMethod::Random => "random",
            SeedMethod::Mdh => "mdh",
            SeedMethod::Dih => "dih",
            SeedMethod::MdhPack => "mdh-pack",
            SeedMethod::DihPack => "dih-pack",
        }
    }

    pub fn measure(self) -> Option<Measure> {
        match self {
            SeedMethod::Random => None,
            SeedMethod::Mdh | SeedMethod::MdhPack => Some(Measure::Degree),
            SeedMethod::Dih | SeedMethod::DihPack => Some(Measure::DiminishingInfluence),
        }
    }

    pub fn is_pack(self) -> bool {
        matches!(self, SeedMethod::MdhPack | SeedMethod::DihPack)
    }
}

impl fmt::Display for SeedMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownMethod;

impl fmt::Display for UnknownMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of random, mdh, dih, mdh-pack, dih-pack")
    }
}

impl core::error::Error for UnknownMethod {}

impl FromStr for SeedMethod {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        SeedMethod::ALL
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or(UnknownMethod)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    Degree,
    DiminishingInfluence,
}

impl Measure {
    pub fn pack_method(self) -> SeedMethod {
        match self {
            Measure::Degree => SeedMethod::MdhPack,
            Measure::DiminishingInfluence => SeedMethod::DihPack,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeedSet {
    pub method: SeedMethod,
    pub k: usize,
    /// Packing distance, for pack variants only.
    pub d: Option<u32>,
    pub members: Vec<Vertex>,
    /// The packing had fewer than `k` members.
    pub truncated: bool,
    /// Index at which measure-only padding began; members from here on
    /// carry no distance guarantee.
    pub degraded_from: Option<usize>,
    /// Packing members were swapped for the best vertex in their closed
    /// neighborhood.
    pub refined: bool,
}

impl SeedSet {
    pub fn degraded(&self) -> bool {
        self.degraded_from.is_some()
    }

    /// Members covered by the pairwise distance guarantee.
    pub fn scattered(&self) -> &[Vertex] {
        &self.members[..self.degraded_from.unwrap_or(self.members.len())]
    }

    fn plain(method: SeedMethod, k: usize, members: Vec<Vertex>) -> Self {
        SeedSet {
            method,
            k,
            d: None,
            members,
            truncated: false,
            degraded_from: None,
            refined: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InfluenceScore {
    pub vertex: Vertex,
    pub value: f64,
}

/// Reusable buffers for diminishing-influence scoring.
#[derive(Clone, Debug)]
pub struct InfluenceKernel {
    bfs: Bfs,
    shells: Vec<usize>,
}

impl InfluenceKernel {
    pub fn new(g: &Graph) -> Self {
        Self {
            bfs: Bfs::new(g.n()),
            shells: Vec::new(),
        }
    }

    /// `sum_i |N_i(v)| / 2^i` over every non-empty shell of `v`.
    /// Panics if `v` is out of range.
    pub fn score(&mut self, g: &Graph, v: Vertex) -> f64 {
        self.bfs.shells(g, v, &mut self.shells);
        let mut weight = 1.0;
        let mut total = 0.0;
        for &count in &self.shells {
            weight *= 0.5;
            total += count as f64 * weight;
        }
        total
    }
}

pub fn diminishing_influence(g: &Graph, v: Vertex) -> Result<InfluenceScore> {
    g.check_vertex(v)?;
    Ok(InfluenceScore {
        vertex: v,
        value: InfluenceKernel::new(g).score(g, v),
    })
}

/// Scores for every vertex, in index order. One BFS per vertex; see the
/// `packmeasure` crate for the parallel driver.
pub fn diminishing_influence_all(g: &Graph) -> Vec<InfluenceScore> {
    let mut kernel = InfluenceKernel::new(g);
    g.vertices()
        .map(|v| InfluenceScore {
            vertex: v,
            value: kernel.score(g, v),
        })
        .collect()
}

/// Per-vertex measure values, computed on demand.
pub struct MeasureScores<'g> {
    graph: &'g Graph,
    measure: Measure,
    values: Vec<f64>,
    known: Vec<bool>,
    kernel: Option<InfluenceKernel>,
}

impl<'g> MeasureScores<'g> {
    pub fn new(graph: &'g Graph, measure: Measure) -> Self {
        match measure {
            Measure::Degree => {
                let values = graph.degrees().into_iter().map(|d| d as f64).collect();
                Self::with_values(graph, measure, values)
            }
            Measure::DiminishingInfluence => Self {
                graph,
                measure,
                values: vec![0.0; graph.n()],
                known: vec![false; graph.n()],
                kernel: None,
            },
        }
    }

    /// Uses precomputed values, e.g. from a parallel scorer.
    pub fn with_values(graph: &'g Graph, measure: Measure, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), graph.n(), "one value per vertex");
        Self {
            graph,
            measure,
            known: vec![true; values.len()],
            values,
            kernel: None,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn get(&mut self, v: Vertex) -> f64 {
        let i = v as usize;
        if !self.known[i] {
            let g = self.graph;
            let kernel = self.kernel.get_or_insert_with(|| InfluenceKernel::new(g));
            self.values[i] = kernel.score(g, v);
            self.known[i] = true;
        }
        self.values[i]
    }

    /// All vertices by value descending, ties by lower index.
    pub fn ranking(&mut self) -> Vec<Vertex> {
        if self.measure == Measure::Degree {
            return degree_order(self.graph);
        }
        for v in self.graph.vertices() {
            self.get(v);
        }
        let mut order: Vec<Vertex> = self.graph.vertices().collect();
        let values = &self.values;
        order.sort_by(|&a, &b| by_value_desc(values, a, b));
        order
    }
}

fn by_value_desc(values: &[f64], a: Vertex, b: Vertex) -> Ordering {
    values[b as usize]
        .total_cmp(&values[a as usize])
        .then(a.cmp(&b))
}

fn check_k(g: &Graph, k: usize) -> Result<()> {
    if k == 0 || k > g.n() {
        Err(Error::SeedCount { k, n: g.n() })
    } else {
        Ok(())
    }
}

/// The `k` highest-degree vertices, ties by lower index.
pub fn mdh_seeds(g: &Graph, k: usize) -> Result<SeedSet> {
    check_k(g, k)?;
    let mut order = degree_order(g);
    order.truncate(k);
    Ok(SeedSet::plain(SeedMethod::Mdh, k, order))
}

/// The `k` highest-scoring vertices under `scores`.
pub fn top_k_seeds(scores: &mut MeasureScores<'_>, k: usize) -> Result<SeedSet> {
    check_k(scores.graph(), k)?;
    let method = match scores.measure() {
        Measure::Degree => SeedMethod::Mdh,
        Measure::DiminishingInfluence => SeedMethod::Dih,
    };
    let mut order = scores.ranking();
    order.truncate(k);
    Ok(SeedSet::plain(method, k, order))
}

/// The `k` vertices of highest diminishing influence.
pub fn dih_seeds(g: &Graph, k: usize) -> Result<SeedSet> {
    top_k_seeds(&mut MeasureScores::new(g, Measure::DiminishingInfluence), k)
}

/// `k` distinct vertices drawn uniformly without replacement from a
/// ChaCha8 stream seeded with `rng_seed`.
pub fn random_seeds(g: &Graph, k: usize, rng_seed: u64) -> Result<SeedSet> {
    check_k(g, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let members = rand::seq::index::sample(&mut rng, g.n(), k)
        .into_iter()
        .map(|v| v as Vertex)
        .collect();
    Ok(SeedSet::plain(SeedMethod::Random, k, members))
}

/// Pack and measure with refinement inside closed neighborhoods.
pub fn pack_and_measure_seeds(g: &Graph, k: usize, d: u32, measure: Measure) -> Result<SeedSet> {
    pack_and_measure_with(&mut MeasureScores::new(g, measure), k, d, true)
}

/// Seeds from a `k`-limited d-packing.
///
/// With `refine`, each packing member `u` is replaced by the vertex of
/// highest measure in `{u} ∪ N(u)`, keeping `u` on ties and otherwise
/// preferring the lower index. Duplicates are dropped in order. Missing
/// seeds are filled first with the best-ranked vertices more than `d` hops
/// from every current seed, then by rank alone, which sets `degraded_from`.
pub fn pack_and_measure_with(
    scores: &mut MeasureScores<'_>,
    k: usize,
    d: u32,
    refine: bool,
) -> Result<SeedSet> {
    let g = scores.graph();
    check_k(g, k)?;
    let packing = k_d_packing(g, k, d);

    let mut chosen = vec![false; g.n()];
    let mut members = Vec::with_capacity(k);
    for &u in &packing.members {
        let mut pick = u;
        if refine {
            let mut best = scores.get(u);
            for &w in g.neighbors(u) {
                let value = scores.get(w);
                if value > best {
                    best = value;
                    pick = w;
                }
            }
        }
        if !chosen[pick as usize] {
            chosen[pick as usize] = true;
            members.push(pick);
        }
    }

    let mut degraded_from = None;
    if members.len() < k {
        let ranking = scores.ranking();
        let mut near = vec![false; g.n()];
        let mut bfs = Bfs::new(g.n());
        for &w in bfs.run(g, &members, d) {
            near[w as usize] = true;
        }
        for &v in &ranking {
            if members.len() == k {
                break;
            }
            if !near[v as usize] {
                chosen[v as usize] = true;
                members.push(v);
                for &w in bfs.run(g, &[v], d) {
                    near[w as usize] = true;
                }
            }
        }
        if members.len() < k {
            degraded_from = Some(members.len());
            for &v in &ranking {
                if members.len() == k {
                    break;
                }
                if !chosen[v as usize] {
                    chosen[v as usize] = true;
                    members.push(v);
                }
            }
        }
    }

    Ok(SeedSet {
        method: scores.measure().pack_method(),
        k,
        d: Some(d),
        members,
        truncated: packing.truncated,
        degraded_from,
        refined: refine,
    })
}
