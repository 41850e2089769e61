//! JSON shapes for packings, seed sets and diffusion results. Vertices are
//! always written as raw labels from the input file.

use packmeasure_core::{
    CoverageSteps, DiffusionOutcome, Graph, Packing, SeedSet, SpreadEstimate, Vertex,
};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingJson {
    pub d: u32,
    pub members: Vec<u64>,
}

impl PackingJson {
    pub fn new(g: &Graph, packing: &Packing) -> Self {
        Self {
            d: packing.d,
            members: packing.members.iter().map(|&v| g.label(v)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSetJson {
    pub method: String,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub flags: Vec<String>,
}

impl SeedSetJson {
    pub fn new(g: &Graph, seeds: &SeedSet) -> Self {
        let mut flags = Vec::new();
        if seeds.truncated {
            flags.push("truncated".to_string());
        }
        if seeds.degraded() {
            flags.push("degraded".to_string());
        }
        if seeds.method.is_pack() && !seeds.refined {
            flags.push("unrefined".to_string());
        }
        Self {
            method: seeds.method.tag().to_string(),
            k: seeds.k,
            d: seeds.d,
            seeds: seeds.members.iter().map(|&v| g.label(v)).collect(),
            flags,
        }
    }

    /// Seeds as internal indices of `g`.
    pub fn vertices(&self, g: &Graph) -> Result<Vec<Vertex>> {
        labels_to_vertices(g, &self.seeds)
    }
}

pub fn labels_to_vertices(g: &Graph, labels: &[u64]) -> Result<Vec<Vertex>> {
    labels
        .iter()
        .map(|&l| g.index_of(l).ok_or(Error::UnknownLabel(l)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpreadEstimateJson {
    pub mean_activated: f64,
    pub rounded_activated: u64,
    pub mean_rounds: f64,
    pub standard_error: f64,
    pub iterations: u64,
    pub master_seed: u64,
}

impl From<&SpreadEstimate> for SpreadEstimateJson {
    fn from(e: &SpreadEstimate) -> Self {
        Self {
            mean_activated: e.mean_activated,
            rounded_activated: e.rounded_activated,
            mean_rounds: e.mean_rounds,
            standard_error: e.standard_error(),
            iterations: e.iterations,
            master_seed: e.master_seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffusionOutcomeJson {
    pub activated: usize,
    pub rounds: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub activated_labels: Option<Vec<u64>>,
}

impl DiffusionOutcomeJson {
    pub fn new(g: &Graph, outcome: &DiffusionOutcome) -> Self {
        Self {
            activated: outcome.activated,
            rounds: outcome.rounds,
            activated_labels: outcome.activated_set.as_ref().map(|set| {
                g.vertices()
                    .filter(|&v| set[v as usize])
                    .map(|v| g.label(v))
                    .collect()
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageJson {
    pub steps: u32,
    pub unreachable: usize,
}

impl From<CoverageSteps> for CoverageJson {
    fn from(c: CoverageSteps) -> Self {
        Self {
            steps: c.steps,
            unreachable: c.unreachable,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use packmeasure_core::{ic_simulate, maximal_d_packing, pack_and_measure_seeds, Measure};

    fn labeled_path() -> Graph {
        Graph::from_edges([(10, 20), (20, 30), (30, 40), (40, 50)]).unwrap()
    }

    #[test]
    fn seed_set_shape() {
        let g = labeled_path();
        let s = pack_and_measure_seeds(&g, 2, 2, Measure::Degree).unwrap();
        let json = serde_json::to_value(SeedSetJson::new(&g, &s)).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"method": "mdh-pack", "k": 2, "d": 2, "seeds": [20, 40], "flags": []})
        );
        let back: SeedSetJson = serde_json::from_value(json).unwrap();
        assert_eq!(back.vertices(&g).unwrap(), s.members);
    }

    #[test]
    fn plain_seed_sets_omit_d() {
        let g = labeled_path();
        let s = packmeasure_core::mdh_seeds(&g, 1).unwrap();
        let text = serde_json::to_string(&SeedSetJson::new(&g, &s)).unwrap();
        assert_eq!(text, r#"{"method":"mdh","k":1,"seeds":[20],"flags":[]}"#);
    }

    #[test]
    fn flags_are_reported() {
        let g = Graph::from_edges([(1, 2), (2, 3), (1, 3)]).unwrap();
        let s = pack_and_measure_seeds(&g, 2, 1, Measure::Degree).unwrap();
        assert_eq!(SeedSetJson::new(&g, &s).flags, ["truncated", "degraded"]);
    }

    #[test]
    fn unknown_labels_are_rejected() {
        let g = labeled_path();
        assert!(matches!(
            labels_to_vertices(&g, &[10, 11]),
            Err(Error::UnknownLabel(11))
        ));
    }

    #[test]
    fn packing_and_outcome_use_labels() {
        let g = labeled_path();
        let p = PackingJson::new(&g, &maximal_d_packing(&g, 2));
        assert_eq!(
            p,
            PackingJson {
                d: 2,
                members: vec![20, 50]
            }
        );
        let out = ic_simulate(&g, &[0], 1.0, 0).unwrap();
        let json = DiffusionOutcomeJson::new(&g, &out);
        assert_eq!(json.activated_labels.unwrap(), [10, 20, 30, 40, 50]);
    }
}
