//! Multi-threaded drivers over the core kernels. Results do not depend on
//! the worker count: influence scores are gathered in vertex order and
//! Monte-Carlo sums are exact integers merged per fixed-size block.

use packmeasure_core::{
    check_spread_request, stream_seed, Graph, IcSimulator, InfluenceKernel, SpreadAccumulator,
    SpreadEstimate, Vertex,
};
use rayon::prelude::*;

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "PACKMEASURE_THREADS";

const BLOCK: u64 = 64;

/// Worker count from [`THREADS_ENV`], if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
}

/// A pool with `threads` workers, or rayon's default size.
pub fn build_pool(threads: Option<usize>) -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    builder.build().expect("thread pool")
}

/// Diminishing influence of every vertex, in index order.
pub fn influence_scores(g: &Graph) -> Vec<f64> {
    (0..g.n() as Vertex)
        .into_par_iter()
        .map_init(|| InfluenceKernel::new(g), |kernel, v| kernel.score(g, v))
        .collect()
}

/// Parallel counterpart of [`packmeasure_core::estimate_spread`]; returns
/// the identical estimate.
pub fn estimate_spread(
    g: &Graph,
    seeds: &[Vertex],
    p: f64,
    iterations: u64,
    master_seed: u64,
) -> packmeasure_core::Result<SpreadEstimate> {
    check_spread_request(g, seeds, p, iterations)?;
    let blocks = iterations.div_ceil(BLOCK);
    let acc = (0..blocks)
        .into_par_iter()
        .map_init(
            || IcSimulator::new(g),
            |sim, b| {
                let mut acc = SpreadAccumulator::default();
                for i in b * BLOCK..((b + 1) * BLOCK).min(iterations) {
                    let (activated, rounds) =
                        sim.run_stream(g, seeds, p, stream_seed(master_seed, i));
                    acc.add(activated, rounds);
                }
                acc
            },
        )
        .reduce(SpreadAccumulator::default, SpreadAccumulator::merge);
    Ok(acc.finish(master_seed))
}
