//! Seed selection by method tag, sharing one parallel influence pass per
//! graph across requests.

use std::sync::OnceLock;

use packmeasure_core::{
    k_d_packing, mdh_seeds, pack_and_measure_with, random_seeds, top_k_seeds, Graph, Measure,
    MeasureScores, SeedMethod, SeedSet,
};

use crate::error::{Error, Result};
use crate::parallel::influence_scores;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeedRequest {
    pub method: SeedMethod,
    pub k: usize,
    /// Packing distance; required for pack methods, ignored otherwise.
    pub d: Option<u32>,
    /// Swap packing members for the best vertex in their closed
    /// neighborhood.
    pub refine: bool,
    /// Only used by the random method.
    pub rng_seed: u64,
}

impl SeedRequest {
    pub fn new(method: SeedMethod, k: usize) -> Self {
        Self {
            method,
            k,
            d: None,
            refine: true,
            rng_seed: 0,
        }
    }

    pub fn with_d(mut self, d: u32) -> Self {
        self.d = Some(d);
        self
    }
}

pub struct SeedSelector<'g> {
    graph: &'g Graph,
    influence: OnceLock<Vec<f64>>,
}

impl<'g> SeedSelector<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self {
            graph,
            influence: OnceLock::new(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    /// All diminishing-influence scores, computed once.
    pub fn influence(&self) -> &[f64] {
        self.influence.get_or_init(|| influence_scores(self.graph))
    }

    pub fn select(&self, req: &SeedRequest) -> Result<SeedSet> {
        let g = self.graph;
        match req.method {
            SeedMethod::Random => Ok(random_seeds(g, req.k, req.rng_seed)?),
            SeedMethod::Mdh => Ok(mdh_seeds(g, req.k)?),
            SeedMethod::Dih => {
                let mut scores = self.scores(Measure::DiminishingInfluence, true);
                Ok(top_k_seeds(&mut scores, req.k)?)
            }
            SeedMethod::MdhPack | SeedMethod::DihPack => {
                let d = req.d.ok_or_else(|| {
                    Error::Config(format!("method {} needs a packing distance d", req.method))
                })?;
                let measure = req.method.measure().expect("pack methods carry a measure");
                // Padding a short packing ranks every vertex.
                let full = k_d_packing(g, req.k, d).truncated;
                let mut scores = self.scores(measure, full);
                Ok(pack_and_measure_with(&mut scores, req.k, d, req.refine)?)
            }
        }
    }

    /// Influence scores come from the shared parallel pass when it has run
    /// or `full` is requested; otherwise they are computed lazily.
    fn scores(&self, measure: Measure, full: bool) -> MeasureScores<'g> {
        match measure {
            Measure::Degree => MeasureScores::new(self.graph, measure),
            Measure::DiminishingInfluence => {
                if full || self.influence.get().is_some() {
                    MeasureScores::with_values(self.graph, measure, self.influence().to_vec())
                } else {
                    MeasureScores::new(self.graph, measure)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use packmeasure_core::{dih_seeds, pack_and_measure_seeds};

    fn graph() -> Graph {
        Graph::from_edges([
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (2, 7),
            (7, 8),
        ])
        .unwrap()
    }

    #[test]
    fn matches_core_functions() {
        let g = graph();
        let sel = SeedSelector::new(&g);
        assert_eq!(
            sel.select(&SeedRequest::new(SeedMethod::Dih, 3)).unwrap(),
            dih_seeds(&g, 3).unwrap()
        );
        // Now with cached scores.
        let req = SeedRequest::new(SeedMethod::DihPack, 3).with_d(2);
        assert_eq!(
            sel.select(&req).unwrap(),
            pack_and_measure_seeds(&g, 3, 2, Measure::DiminishingInfluence).unwrap()
        );
        let fresh = SeedSelector::new(&g);
        assert_eq!(fresh.select(&req).unwrap(), sel.select(&req).unwrap());
    }

    #[test]
    fn pack_methods_need_d() {
        let g = graph();
        let sel = SeedSelector::new(&g);
        assert!(matches!(
            sel.select(&SeedRequest::new(SeedMethod::MdhPack, 2)),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn unrefined_keeps_packing() {
        let g = graph();
        let sel = SeedSelector::new(&g);
        let mut req = SeedRequest::new(SeedMethod::MdhPack, 2).with_d(2);
        req.refine = false;
        let s = sel.select(&req).unwrap();
        assert!(!s.refined);
        assert_eq!(s.members, packmeasure_core::k_d_packing(&g, 2, 2).members);
    }
}
