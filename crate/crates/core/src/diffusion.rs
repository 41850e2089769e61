//! Independent Cascade simulation, Monte-Carlo spread estimation and
//! speed-of-propagation metrics.
//!
//! Cascades are level-synchronous: seeds form round 0, and a vertex
//! activated in round `r` gets exactly one coin flip per still-inactive
//! neighbor in round `r + 1`. With `p = 1` this is a multi-source BFS, so
//! the number of rounds equals [`coverage_steps`].

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex, UNREACHABLE};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffusionOutcome {
    pub activated: usize,
    /// Rounds that activated at least one vertex.
    pub rounds: u32,
    pub activated_set: Option<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpreadEstimate {
    pub mean_activated: f64,
    pub mean_rounds: f64,
    pub iterations: u64,
    pub master_seed: u64,
    /// `mean_activated` rounded half-up.
    pub rounded_activated: u64,
    /// Unbiased sample variance of the activated count.
    pub activated_variance: f64,
}

impl SpreadEstimate {
    pub fn standard_error(&self) -> f64 {
        libm::sqrt(self.activated_variance / self.iterations as f64)
    }
}

/// Integer sums over cascades. Merging is exact, so any partition of the
/// iterations across workers yields the same estimate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpreadAccumulator {
    pub iterations: u64,
    pub activated_sum: u64,
    pub activated_sq_sum: u128,
    pub rounds_sum: u64,
}

impl SpreadAccumulator {
    pub fn add(&mut self, activated: usize, rounds: u32) {
        self.iterations += 1;
        self.activated_sum += activated as u64;
        self.activated_sq_sum += (activated as u128) * (activated as u128);
        self.rounds_sum += rounds as u64;
    }

    pub fn merge(mut self, other: Self) -> Self {
        self.iterations += other.iterations;
        self.activated_sum += other.activated_sum;
        self.activated_sq_sum += other.activated_sq_sum;
        self.rounds_sum += other.rounds_sum;
        self
    }

    pub fn finish(&self, master_seed: u64) -> SpreadEstimate {
        let iters = self.iterations.max(1) as f64;
        let mean = self.activated_sum as f64 / iters;
        let variance = if self.iterations > 1 {
            let sq = self.activated_sq_sum as f64;
            ((sq - self.activated_sum as f64 * mean) / (iters - 1.0)).max(0.0)
        } else {
            0.0
        };
        SpreadEstimate {
            mean_activated: mean,
            mean_rounds: self.rounds_sum as f64 / iters,
            iterations: self.iterations,
            master_seed,
            rounded_activated: (mean + 0.5) as u64,
            activated_variance: variance,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator seed for one Monte-Carlo iteration.
pub fn stream_seed(master_seed: u64, iteration: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(iteration))
}

pub(crate) fn check_seeds(g: &Graph, seeds: &[Vertex]) -> Result<()> {
    if seeds.is_empty() {
        return Err(Error::EmptySeedSet);
    }
    seeds.iter().try_for_each(|&s| g.check_vertex(s))
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Probability)
    }
}

/// Reusable cascade state. Activation marks are epoch-stamped so a run
/// costs only what the cascade touches.
#[derive(Clone, Debug)]
pub struct IcSimulator {
    stamp: Vec<u32>,
    epoch: u32,
    frontier: Vec<Vertex>,
    next: Vec<Vertex>,
}

impl IcSimulator {
    pub fn new(g: &Graph) -> Self {
        Self {
            stamp: vec![0; g.n()],
            epoch: 0,
            frontier: Vec::new(),
            next: Vec::new(),
        }
    }

    fn bump_epoch(&mut self) {
        if self.epoch == u32::MAX {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 0;
        }
        self.epoch += 1;
    }

    /// One cascade; returns `(activated, rounds)`. Inputs are not
    /// validated.
    pub fn run<R: Rng + ?Sized>(
        &mut self,
        g: &Graph,
        seeds: &[Vertex],
        p: f64,
        rng: &mut R,
    ) -> (usize, u32) {
        self.bump_epoch();
        let epoch = self.epoch;
        self.frontier.clear();
        for &s in seeds {
            if self.stamp[s as usize] != epoch {
                self.stamp[s as usize] = epoch;
                self.frontier.push(s);
            }
        }
        let mut activated = self.frontier.len();
        let mut rounds = 0;
        // Gaps between kept edges are geometric, so one draw per kept edge
        // replaces one draw per edge. Outcomes on edges into already active
        // vertices are ignored, which leaves the distribution unchanged.
        if p <= 0.0 {
            return (activated, 0);
        }
        let ln_q = libm::log(1.0 - p);
        while !self.frontier.is_empty() {
            self.next.clear();
            for &u in &self.frontier {
                let nbrs = g.neighbors(u);
                let mut i = 0usize;
                loop {
                    if p < 1.0 {
                        let u01: f64 = rng.random();
                        // 1 - u01 lies in (0, 1]; `as` saturates huge gaps.
                        i = i.saturating_add((libm::log(1.0 - u01) / ln_q) as usize);
                    }
                    let Some(&v) = nbrs.get(i) else { break };
                    if self.stamp[v as usize] != epoch {
                        self.stamp[v as usize] = epoch;
                        self.next.push(v);
                    }
                    i += 1;
                }
            }
            if self.next.is_empty() {
                break;
            }
            rounds += 1;
            activated += self.next.len();
            core::mem::swap(&mut self.frontier, &mut self.next);
        }
        (activated, rounds)
    }

    /// One cascade driven by a ChaCha8 stream seeded with `stream_seed`.
    pub fn run_stream(
        &mut self,
        g: &Graph,
        seeds: &[Vertex],
        p: f64,
        stream_seed: u64,
    ) -> (usize, u32) {
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed);
        self.run(g, seeds, p, &mut rng)
    }

    /// Active flags from the most recent run.
    pub fn active_set(&self) -> Vec<bool> {
        self.stamp.iter().map(|&s| s == self.epoch).collect()
    }
}

pub fn ic_simulate(
    g: &Graph,
    seeds: &[Vertex],
    p: f64,
    stream_seed: u64,
) -> Result<DiffusionOutcome> {
    check_seeds(g, seeds)?;
    check_probability(p)?;
    let mut sim = IcSimulator::new(g);
    let (activated, rounds) = sim.run_stream(g, seeds, p, stream_seed);
    Ok(DiffusionOutcome {
        activated,
        rounds,
        activated_set: Some(sim.active_set()),
    })
}

/// Validates the inputs shared by every spread estimator.
pub fn check_spread_request(g: &Graph, seeds: &[Vertex], p: f64, iterations: u64) -> Result<()> {
    check_seeds(g, seeds)?;
    check_probability(p)?;
    if iterations == 0 {
        return Err(Error::Iterations);
    }
    Ok(())
}

/// Monte-Carlo mean over `iterations` cascades; iteration `i` uses
/// [`stream_seed`]`(master_seed, i)`.
pub fn estimate_spread(
    g: &Graph,
    seeds: &[Vertex],
    p: f64,
    iterations: u64,
    master_seed: u64,
) -> Result<SpreadEstimate> {
    check_spread_request(g, seeds, p, iterations)?;
    let mut sim = IcSimulator::new(g);
    let mut acc = SpreadAccumulator::default();
    for i in 0..iterations {
        let (activated, rounds) = sim.run_stream(g, seeds, p, stream_seed(master_seed, i));
        acc.add(activated, rounds);
    }
    Ok(acc.finish(master_seed))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverageSteps {
    /// Largest distance from a reachable vertex to its nearest seed.
    pub steps: u32,
    /// Vertices in components without a seed.
    pub unreachable: usize,
}

pub fn coverage_steps(g: &Graph, seeds: &[Vertex]) -> Result<CoverageSteps> {
    check_seeds(g, seeds)?;
    let dist = g.multi_source_distances(seeds)?;
    let mut steps = 0;
    let mut unreachable = 0;
    for d in dist {
        if d == UNREACHABLE {
            unreachable += 1;
        } else {
            steps = steps.max(d);
        }
    }
    Ok(CoverageSteps { steps, unreachable })
}

/// Fraction of all vertices within `d` hops of some seed.
pub fn firehouse_coverage(g: &Graph, seeds: &[Vertex], d: u32) -> Result<f64> {
    check_seeds(g, seeds)?;
    let dist = g.multi_source_distances(seeds)?;
    let covered = dist.iter().filter(|&&x| x <= d).count();
    Ok(covered as f64 / g.n() as f64)
}

pub fn firehouse_decide(g: &Graph, seeds: &[Vertex], d: u32, t: f64) -> Result<bool> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::Threshold);
    }
    Ok(firehouse_coverage(g, seeds, d)? >= t)
}
