//! Seed selection for influence maximization by "pack and measure".
//!
//! A seed set is chosen in two stages: a greedy maximal d-packing scatters
//! candidates across the graph, then each candidate is swapped for the
//! strongest vertex (by degree or by diminishing influence) in its closed
//! neighborhood. Seed sets are evaluated under the Independent Cascade model
//! by Monte-Carlo spread and by speed of propagation.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, parallel
//! drivers and the command-line harness live in the `packmeasure` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;

pub mod diffusion;
pub mod graph;
pub mod heuristics;
pub mod packing;
pub mod synthgen;

pub use diffusion::{
    check_spread_request, coverage_steps, estimate_spread, firehouse_coverage, firehouse_decide,
    ic_simulate, stream_seed, CoverageSteps, DiffusionOutcome, IcSimulator, SpreadAccumulator,
    SpreadEstimate,
};
pub use error::Error;
pub use graph::{Bfs, DistanceField, Graph, GraphBuilder, Vertex, UNREACHABLE};
pub use heuristics::{
    dih_seeds, diminishing_influence, diminishing_influence_all, mdh_seeds, pack_and_measure_seeds,
    pack_and_measure_with, random_seeds, top_k_seeds, InfluenceKernel, InfluenceScore, Measure,
    MeasureScores, SeedMethod, SeedSet, UnknownMethod,
};
pub use packing::{k_d_packing, maximal_d_packing, Packing};
pub use synthgen::{generate_scattered_cliques, SyntheticSpec};

pub type Result<T> = core::result::Result<T, Error>;
