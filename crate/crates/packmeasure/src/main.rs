use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use packmeasure::bench::{self, ExperimentConfig, SyntheticConfig};
use packmeasure::core::{
    coverage_steps, firehouse_coverage, firehouse_decide, generate_scattered_cliques, ic_simulate,
    k_d_packing, maximal_d_packing, Graph, SeedMethod, Vertex,
};
use packmeasure::formats::{
    CoverageJson, DiffusionOutcomeJson, PackingJson, SeedSetJson, SpreadEstimateJson,
};
use packmeasure::io::{read_edge_list, write_edge_list};
use packmeasure::parallel::{self, threads_from_env};
use packmeasure::select::{SeedRequest, SeedSelector};
use packmeasure::Error;

const EXIT_RUNTIME: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Influence maximization by d-packing plus centrality, evaluated under the
/// Independent Cascade model.
#[derive(Parser)]
#[command(name = "packmeasure", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex, edge and degree summary of an edge list.
    Stats { graph: PathBuf },
    /// Select a seed set and print it as JSON.
    Seeds {
        #[command(flatten)]
        seeds: SeedArgs,
        graph: PathBuf,
    },
    /// Greedy maximal (or k-limited) d-packing as JSON.
    Pack {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: Option<usize>,
        graph: PathBuf,
    },
    /// Monte-Carlo spread estimate of a seed set.
    Simulate {
        #[command(flatten)]
        source: SeedSource,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1000)]
        iterations: u64,
        #[arg(long, default_value_t = 0)]
        master_seed: u64,
        /// Run a single cascade with this stream seed and print its outcome.
        #[arg(long, conflicts_with = "iterations")]
        once: Option<u64>,
        graph: PathBuf,
    },
    /// Rounds needed to reach every reachable vertex with p = 1.
    Steps {
        #[command(flatten)]
        source: SeedSource,
        /// Also report the fraction of vertices within this distance.
        #[arg(long)]
        within: Option<u32>,
        /// With --within, decide whether coverage reaches this fraction.
        #[arg(long, requires = "within")]
        threshold: Option<f64>,
        graph: PathBuf,
    },
    /// Write a clique-ring graph as an edge list.
    Generate {
        /// Comma-separated clique sizes.
        #[arg(long, value_delimiter = ',', required_unless_present = "preset")]
        cliques: Option<Vec<usize>>,
        #[arg(long)]
        path_internal: Option<usize>,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        /// Named instance: `four-cliques` (1586 vertices, 318015 edges).
        #[arg(long)]
        preset: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run an experiment sweep from a JSON config; writes CSV and JSON.
    Bench {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Args)]
struct SeedArgs {
    #[arg(long)]
    method: SeedMethod,
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    tuning: Tuning,
}

#[derive(Args)]
struct Tuning {
    /// Packing distance for mdh-pack and dih-pack.
    #[arg(long)]
    d: Option<u32>,
    /// Use packing members as seeds without neighborhood refinement.
    #[arg(long)]
    no_refine: bool,
    /// Seed for the random method.
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
}

/// Seeds either selected on the fly or read from a `seeds` JSON file.
#[derive(Args)]
#[group(id = "source", required = true, multiple = false, args = ["method", "seeds"])]
struct SeedSource {
    #[arg(long, requires = "k")]
    method: Option<SeedMethod>,
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    tuning: Tuning,
    /// Seed-set JSON as printed by `seeds`.
    #[arg(long)]
    seeds: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(n) = threads_from_env() {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if closed_stdout(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e
                .downcast_ref::<Error>()
                .is_some_and(|e| matches!(e, Error::Config(_)));
            ExitCode::from(if usage { EXIT_USAGE } else { EXIT_RUNTIME })
        }
    }
}

/// Output piped into `head` and the like is not an error.
fn closed_stdout(e: &anyhow::Error) -> bool {
    let kind = e.chain().find_map(|c| {
        if let Some(e) = c.downcast_ref::<io::Error>() {
            return Some(e.kind());
        }
        if let Some(e) = c.downcast_ref::<serde_json::Error>() {
            return e.io_error_kind();
        }
        match c.downcast_ref::<Error>() {
            Some(Error::Write(e)) => Some(e.kind()),
            Some(Error::Csv(e)) => match e.kind() {
                csv::ErrorKind::Io(e) => Some(e.kind()),
                _ => None,
            },
            _ => None,
        }
    });
    kind == Some(io::ErrorKind::BrokenPipe)
}

fn load(path: &Path) -> anyhow::Result<Graph> {
    Ok(read_edge_list(path)?.graph)
}

fn print_json<T: serde::Serialize>(value: &T) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn request(method: SeedMethod, k: usize, t: &Tuning) -> SeedRequest {
    SeedRequest {
        method,
        k,
        d: t.d,
        refine: !t.no_refine,
        rng_seed: t.rng_seed,
    }
}

fn seeds_from(g: &Graph, source: &SeedSource) -> anyhow::Result<Vec<Vertex>> {
    if let Some(path) = &source.seeds {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let json: SeedSetJson =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        return Ok(json.vertices(g)?);
    }
    let (Some(method), Some(k)) = (source.method, source.k) else {
        unreachable!("clap requires --method with --k, or --seeds");
    };
    Ok(SeedSelector::new(g)
        .select(&request(method, k, &source.tuning))?
        .members)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Stats { graph } => stats(&graph),
        Command::Seeds { seeds, graph } => {
            let g = load(&graph)?;
            let set =
                SeedSelector::new(&g).select(&request(seeds.method, seeds.k, &seeds.tuning))?;
            print_json(&SeedSetJson::new(&g, &set))
        }
        Command::Pack { d, k, graph } => {
            let g = load(&graph)?;
            let packing = match k {
                Some(k) => k_d_packing(&g, k, d),
                None => maximal_d_packing(&g, d),
            };
            print_json(&PackingJson::new(&g, &packing))
        }
        Command::Simulate {
            source,
            p,
            iterations,
            master_seed,
            once,
            graph,
        } => {
            let g = load(&graph)?;
            let seeds = seeds_from(&g, &source)?;
            match once {
                Some(stream) => {
                    let outcome = ic_simulate(&g, &seeds, p, stream)?;
                    print_json(&DiffusionOutcomeJson::new(&g, &outcome))
                }
                None => {
                    let est = parallel::estimate_spread(&g, &seeds, p, iterations, master_seed)?;
                    print_json(&SpreadEstimateJson::from(&est))
                }
            }
        }
        Command::Steps {
            source,
            within,
            threshold,
            graph,
        } => {
            let g = load(&graph)?;
            let seeds = seeds_from(&g, &source)?;
            let steps = CoverageJson::from(coverage_steps(&g, &seeds)?);
            match within {
                None => print_json(&steps),
                Some(d) => {
                    let coverage = firehouse_coverage(&g, &seeds, d)?;
                    let decision = threshold
                        .map(|t| firehouse_decide(&g, &seeds, d, t))
                        .transpose()?;
                    print_json(&serde_json::json!({
                        "steps": steps.steps,
                        "unreachable": steps.unreachable,
                        "within": d,
                        "coverage": coverage,
                        "threshold": threshold,
                        "covered": decision,
                    }))
                }
            }
        }
        Command::Generate {
            cliques,
            path_internal,
            rng_seed,
            preset,
            output,
        } => {
            let spec = SyntheticConfig {
                preset,
                cliques,
                path_internal,
                rng_seed,
            }
            .to_spec()?;
            let g = generate_scattered_cliques(&spec).map_err(Error::from)?;
            match output {
                Some(path) => {
                    let file = File::create(&path)
                        .with_context(|| format!("creating {}", path.display()))?;
                    write_edge_list(&g, BufWriter::new(file))?;
                    eprintln!(
                        "wrote {} vertices, {} edges to {}",
                        g.n(),
                        g.m(),
                        path.display()
                    );
                }
                None => write_edge_list(&g, io::stdout().lock())?,
            }
            Ok(())
        }
        Command::Bench { config } => bench_cmd(&config),
    }
}

fn stats(path: &Path) -> anyhow::Result<()> {
    let loaded = read_edge_list(path)?;
    let g = &loaded.graph;
    let mut degrees = g.degrees();
    degrees.sort_unstable();
    let mean = 2.0 * g.m() as f64 / g.n() as f64;
    let isolated = degrees.iter().take_while(|&&d| d == 0).count();

    let mut seen = vec![false; g.n()];
    let mut components = 0;
    let mut largest = 0;
    for v in g.vertices() {
        if seen[v as usize] {
            continue;
        }
        components += 1;
        let field = g.bfs_distances(v)?;
        let mut size = 0;
        for w in g.vertices() {
            if field.get(w).is_some() {
                seen[w as usize] = true;
                size += 1;
            }
        }
        largest = largest.max(size);
    }

    println!("vertices          {}", g.n());
    println!("edges             {}", g.m());
    println!("self_loops        {}", loaded.self_loop_vertices);
    println!("edges_with_loops  {}", loaded.edges_with_loops());
    println!("lines             {}", loaded.arcs);
    println!("components        {components}");
    println!("largest_component {largest}");
    println!("isolated          {isolated}");
    println!(
        "degree            min {} median {} mean {:.3} max {}",
        degrees[0],
        degrees[degrees.len() / 2],
        mean,
        degrees[degrees.len() - 1]
    );
    Ok(())
}

fn bench_cmd(path: &Path) -> anyhow::Result<()> {
    let mut config = ExperimentConfig::load(path)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("bench");
    let dir = path.parent().unwrap_or(Path::new("."));
    let outputs = &mut config.outputs;
    if outputs.csv.is_none() && outputs.json.is_none() {
        outputs.csv = Some(dir.join(format!("{stem}.csv")));
        outputs.json = Some(dir.join(format!("{stem}.json")));
        outputs
            .timing
            .get_or_insert_with(|| dir.join(format!("{stem}.timing.csv")));
    }
    let report = bench::run_experiment(&config)?;
    bench::write_outputs(&config, &report)?;
    bench::write_csv(&report.rows, io::stdout().lock())?;
    for p in [
        &config.outputs.csv,
        &config.outputs.json,
        &config.outputs.timing,
    ]
    .into_iter()
    .flatten()
    {
        eprintln!("wrote {}", p.display());
    }
    Ok(())
}
