//! Experiment sweeps: one report row per (method, k) cell with the
//! Monte-Carlo spread, mean cascade rounds and deterministic coverage
//! steps of the selected seed set.
//!
//! A config is JSON:
//!
//! ```json
//! {
//!   "dataset": "data/ca-GrQc.txt",
//!   "methods": [{"method": "mdh"}, {"method": "mdh-pack", "d": 2}],
//!   "k_values": [10, 20, 30, 40, 50],
//!   "p": 0.01,
//!   "iterations": 1000,
//!   "master_seed": 1,
//!   "outputs": {"csv": "grqc.csv", "json": "grqc.json", "timing": "grqc.timing.csv"}
//! }
//! ```
//!
//! `dataset` may also be `{"synthetic": {"preset": "four-cliques"}}` or
//! `{"synthetic": {"cliques": [...], "path_internal": L, "rng_seed": s}}`.
//! Relative paths resolve against the config file's directory.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use packmeasure_core::{
    coverage_steps, generate_scattered_cliques, Graph, SeedMethod, SyntheticSpec,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::read_edge_list;
use crate::parallel;
use crate::select::{SeedRequest, SeedSelector};

pub const FOUR_CLIQUES: &str = "four-cliques";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dataset: Dataset,
    pub methods: Vec<MethodConfig>,
    pub k_values: Vec<usize>,
    pub p: f64,
    pub iterations: u64,
    pub master_seed: u64,
    #[serde(default)]
    pub outputs: Outputs,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Dataset {
    Path(PathBuf),
    Synthetic { synthetic: SyntheticConfig },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticConfig {
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub cliques: Option<Vec<usize>>,
    #[serde(default)]
    pub path_internal: Option<usize>,
    #[serde(default)]
    pub rng_seed: u64,
}

impl SyntheticConfig {
    pub fn to_spec(&self) -> Result<SyntheticSpec> {
        let mut spec = match self.preset.as_deref() {
            Some(FOUR_CLIQUES) => SyntheticSpec::four_communities(self.rng_seed),
            Some(other) => {
                return Err(Error::Config(format!("unknown synthetic preset {other:?}")))
            }
            None => SyntheticSpec {
                clique_sizes: self.cliques.clone().ok_or_else(|| {
                    Error::Config("synthetic dataset needs a preset or cliques".into())
                })?,
                path_internal: 0,
                rng_seed: self.rng_seed,
            },
        };
        if self.preset.is_some() {
            if let Some(sizes) = &self.cliques {
                spec.clique_sizes = sizes.clone();
            }
        }
        if let Some(l) = self.path_internal {
            spec.path_internal = l;
        }
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MethodConfig {
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(default = "refine_default")]
    pub refine: bool,
}

fn refine_default() -> bool {
    true
}

impl MethodConfig {
    pub fn parse(&self) -> Result<SeedMethod> {
        self.method
            .parse()
            .map_err(|e| Error::Config(format!("unknown method {:?}: {e}", self.method)))
    }

    /// Row label: the method tag, with `-unrefined` for raw packings.
    pub fn label(&self) -> String {
        if self.refine {
            self.method.clone()
        } else {
            format!("{}-unrefined", self.method)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default)]
    pub csv: Option<PathBuf>,
    #[serde(default)]
    pub json: Option<PathBuf>,
    #[serde(default)]
    pub timing: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("invalid config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    /// Reads a config and resolves relative paths against its directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut config = Self::from_json(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        config.resolve_paths(base);
        Ok(config)
    }

    pub fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        if let Dataset::Path(p) = &mut self.dataset {
            fix(p);
        }
        for p in [
            &mut self.outputs.csv,
            &mut self.outputs.json,
            &mut self.outputs.timing,
        ]
        .into_iter()
        .flatten()
        {
            fix(p);
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Config(msg.to_string()));
        if self.methods.is_empty() {
            return bad("methods must not be empty");
        }
        if self.k_values.is_empty() {
            return bad("k_values must not be empty");
        }
        if self.k_values.contains(&0) || self.k_values.windows(2).any(|w| w[0] >= w[1]) {
            return bad("k_values must be positive and strictly ascending");
        }
        if self.iterations == 0 {
            return bad("iterations must be at least 1");
        }
        if !(0.0..=1.0).contains(&self.p) {
            return bad("p must lie in [0, 1]");
        }
        for m in &self.methods {
            if m.parse()?.is_pack() && m.d.is_none() {
                return Err(Error::Config(format!("method {} needs d", m.method)));
            }
        }
        Ok(())
    }

    pub fn load_graph(&self) -> Result<Graph> {
        match &self.dataset {
            Dataset::Path(p) => Ok(read_edge_list(p)?.graph),
            Dataset::Synthetic { synthetic } => {
                Ok(generate_scattered_cliques(&synthetic.to_spec()?)?)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub method: String,
    pub k: usize,
    pub d: Option<u32>,
    pub p: f64,
    pub rounded_activated: u64,
    pub mean_rounds: f64,
    pub coverage_steps: u32,
    pub mean_activated: f64,
    pub standard_error: f64,
    pub unreachable: usize,
    pub seeds: Vec<u64>,
    pub flags: Vec<String>,
    #[serde(skip)]
    pub wall_time_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub vertices: usize,
    pub edges: usize,
    pub p: f64,
    pub iterations: u64,
    pub master_seed: u64,
    pub rows: Vec<ReportRow>,
}

/// Runs every (method, k) cell on an already loaded graph. Rows come back
/// ordered by method (config order) then k.
pub fn run_on_graph(config: &ExperimentConfig, g: &Graph) -> Result<Vec<ReportRow>> {
    config.validate()?;
    for &k in &config.k_values {
        if k > g.n() {
            return Err(Error::Config(format!(
                "k = {k} exceeds vertex count {}",
                g.n()
            )));
        }
    }
    let selector = SeedSelector::new(g);
    let cells: Vec<(&MethodConfig, usize)> = config
        .methods
        .iter()
        .flat_map(|m| config.k_values.iter().map(move |&k| (m, k)))
        .collect();
    cells
        .par_iter()
        .map(|&(m, k)| run_cell(config, &selector, m, k))
        .collect()
}

fn run_cell(
    config: &ExperimentConfig,
    selector: &SeedSelector<'_>,
    m: &MethodConfig,
    k: usize,
) -> Result<ReportRow> {
    let g = selector.graph();
    let start = Instant::now();
    let method = m.parse()?;
    let request = SeedRequest {
        method,
        k,
        d: m.d,
        refine: m.refine,
        rng_seed: config.master_seed,
    };
    let seeds = selector.select(&request)?;
    let estimate = parallel::estimate_spread(
        g,
        &seeds.members,
        config.p,
        config.iterations,
        config.master_seed,
    )?;
    let steps = coverage_steps(g, &seeds.members)?;
    let json = crate::formats::SeedSetJson::new(g, &seeds);
    Ok(ReportRow {
        method: m.label(),
        k,
        d: seeds.d,
        p: config.p,
        rounded_activated: estimate.rounded_activated,
        mean_rounds: estimate.mean_rounds,
        coverage_steps: steps.steps,
        mean_activated: estimate.mean_activated,
        standard_error: estimate.standard_error(),
        unreachable: steps.unreachable,
        seeds: json.seeds,
        flags: json.flags,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Report> {
    let g = config.load_graph()?;
    let rows = run_on_graph(config, &g)?;
    Ok(Report {
        vertices: g.n(),
        edges: g.m(),
        p: config.p,
        iterations: config.iterations,
        master_seed: config.master_seed,
        rows,
    })
}

pub const CSV_HEADER: [&str; 7] = [
    "method",
    "k",
    "d",
    "p",
    "rounded_activated",
    "mean_rounds",
    "coverage_steps",
];

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.method.clone(),
            r.k.to_string(),
            r.d.map(|d| d.to_string()).unwrap_or_default(),
            r.p.to_string(),
            r.rounded_activated.to_string(),
            format!("{:.3}", r.mean_rounds),
            r.coverage_steps.to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_timing<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["method", "k", "wall_time_ms"])?;
    for r in rows {
        w.write_record([
            r.method.clone(),
            r.k.to_string(),
            format!("{:.1}", r.wall_time_ms),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_json<W: Write>(report: &Report, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)?;
    Ok(())
}

/// Writes whichever outputs the config names.
pub fn write_outputs(config: &ExperimentConfig, report: &Report) -> Result<()> {
    fn create(path: &Path) -> Result<BufWriter<File>> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
        Ok(BufWriter::new(
            File::create(path).map_err(|e| Error::io(path, e))?,
        ))
    }
    if let Some(p) = &config.outputs.csv {
        write_csv(&report.rows, create(p)?)?;
    }
    if let Some(p) = &config.outputs.json {
        write_json(report, create(p)?)?;
    }
    if let Some(p) = &config.outputs.timing {
        write_timing(&report.rows, create(p)?)?;
    }
    Ok(())
}
