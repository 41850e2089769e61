//! SNAP-style edge lists: `#` comment lines and one whitespace-separated
//! pair of integer labels per data line.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use packmeasure_core::{Graph, GraphBuilder};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ParseOptions {
    /// Lines starting with this character are skipped.
    pub comment: char,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self { comment: '#' }
    }
}

/// A parsed edge list plus what normalization removed.
#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// Data lines read.
    pub arcs: usize,
    /// Distinct vertices that carried a self-loop (dropped from the graph).
    pub self_loop_vertices: usize,
}

impl LoadedGraph {
    /// Edge count with each looped vertex counted once more, the way SNAP
    /// summaries count them.
    pub fn edges_with_loops(&self) -> usize {
        self.graph.m() + self.self_loop_vertices
    }
}

pub fn load_edge_list<R: BufRead>(reader: R, options: &ParseOptions) -> Result<LoadedGraph> {
    let mut builder = GraphBuilder::new();
    let mut loops = BTreeSet::new();
    let mut arcs = 0;
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        let body = line.trim();
        if body.is_empty() || body.starts_with(options.comment) {
            continue;
        }
        let mut tokens = body.split_ascii_whitespace();
        let mut label = || -> Result<u64> {
            let token = tokens.next().ok_or_else(|| Error::Parse {
                line: lineno,
                message: "expected two vertex labels".into(),
            })?;
            token.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid vertex label {token:?}"),
            })
        };
        let (a, b) = (label()?, label()?);
        if tokens.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                message: "expected exactly two vertex labels".into(),
            });
        }
        if a == b {
            loops.insert(a);
        }
        builder.add_edge(a, b);
        arcs += 1;
    }
    let graph = builder.build();
    if graph.m() == 0 {
        return Err(packmeasure_core::Error::EmptyGraph.into());
    }
    Ok(LoadedGraph {
        graph,
        arcs,
        self_loop_vertices: loops.len(),
    })
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<LoadedGraph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    load_edge_list(BufReader::new(file), &ParseOptions::default())
}

/// Canonical snapshot: a header, then one `a b` line per edge with `a < b`,
/// sorted by raw label.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "# Undirected graph")?;
    writeln!(out, "# Nodes: {} Edges: {}", g.n(), g.m())?;
    for (a, b) in g.canonical_edges() {
        writeln!(out, "{a}\t{b}")?;
    }
    out.flush()
}
