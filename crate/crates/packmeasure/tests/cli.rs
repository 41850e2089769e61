use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use packmeasure::formats::{CoverageJson, SeedSetJson, SpreadEstimateJson};
use packmeasure::parallel::THREADS_ENV;

fn packmeasure(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_packmeasure"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn packmeasure")
}

fn with_threads(args: &[&str], dir: &Path, threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_packmeasure"))
        .args(args)
        .current_dir(dir)
        .env(THREADS_ENV, threads)
        .output()
        .expect("spawn packmeasure")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Labels 10..=16 on a path, a triangle hanging off 12, and a self-loop.
fn write_sample(dir: &Path) {
    fs::write(
        dir.join("g.txt"),
        "# sample\n10\t11\n11\t12\n12\t13\n13\t14\n14\t15\n15\t16\n12\t17\n17\t18\n18\t12\n14\t14\n\n",
    )
    .unwrap();
}

#[test]
fn stats_reports_counts() {
    let dir = tempfile::tempdir().unwrap();
    write_sample(dir.path());
    let text = stdout(&packmeasure(&["stats", "g.txt"], dir.path()));
    let field = |name: &str| -> String {
        text.lines()
            .find_map(|l| l.strip_prefix(name).map(|r| r.trim().to_string()))
            .unwrap()
    };
    assert_eq!(field("vertices "), "9");
    assert_eq!(field("edges "), "9");
    assert_eq!(field("self_loops "), "1");
    assert_eq!(field("edges_with_loops "), "10");
    assert_eq!(field("components "), "1");
}

#[test]
fn seeds_then_simulate_and_steps() {
    let dir = tempfile::tempdir().unwrap();
    write_sample(dir.path());
    let seeds = stdout(&packmeasure(
        &[
            "seeds", "--method", "mdh-pack", "--k", "2", "--d", "2", "g.txt",
        ],
        dir.path(),
    ));
    let set: SeedSetJson = serde_json::from_str(&seeds).unwrap();
    assert_eq!(set.method, "mdh-pack");
    assert_eq!(set.d, Some(2));
    assert_eq!(set.seeds.len(), 2);
    assert_eq!(set.seeds[0], 12);
    fs::write(dir.path().join("s.json"), &seeds).unwrap();

    let est: SpreadEstimateJson = serde_json::from_str(&stdout(&packmeasure(
        &[
            "simulate",
            "--seeds",
            "s.json",
            "--p",
            "1",
            "--iterations",
            "10",
            "g.txt",
        ],
        dir.path(),
    )))
    .unwrap();
    assert_eq!(est.rounded_activated, 9);

    let steps: CoverageJson = serde_json::from_str(&stdout(&packmeasure(
        &["steps", "--seeds", "s.json", "g.txt"],
        dir.path(),
    )))
    .unwrap();
    assert_eq!(steps.unreachable, 0);
    assert_eq!(steps.steps as f64, est.mean_rounds);
}

#[test]
fn generate_writes_requested_ring() {
    let dir = tempfile::tempdir().unwrap();
    stdout(&packmeasure(
        &[
            "generate",
            "--cliques",
            "5,4,3",
            "--path-internal",
            "2",
            "-o",
            "ring.txt",
        ],
        dir.path(),
    ));
    let text = stdout(&packmeasure(&["stats", "ring.txt"], dir.path()));
    assert!(text.contains("vertices          18"), "{text}");
    assert!(text.contains("edges             28"), "{text}");
}

#[test]
fn usage_and_runtime_errors_have_distinct_codes() {
    let dir = tempfile::tempdir().unwrap();
    write_sample(dir.path());
    let bad_method = packmeasure(
        &["seeds", "--method", "nope", "--k", "1", "g.txt"],
        dir.path(),
    );
    assert_eq!(bad_method.status.code(), Some(2));
    let no_subcommand = packmeasure(&[], dir.path());
    assert_eq!(no_subcommand.status.code(), Some(2));

    let missing_config = packmeasure(&["bench", "--config", "missing.json"], dir.path());
    assert_eq!(missing_config.status.code(), Some(2));
    let err = String::from_utf8_lossy(&missing_config.stderr);
    assert!(err.contains("config error"), "{err}");

    let missing_graph = packmeasure(&["stats", "absent.txt"], dir.path());
    assert_eq!(missing_graph.status.code(), Some(1));
    fs::write(dir.path().join("bad.txt"), "1 2\n3\n").unwrap();
    let malformed = packmeasure(&["stats", "bad.txt"], dir.path());
    assert_eq!(malformed.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&malformed.stderr).contains("line 2"));
}

#[test]
fn bench_output_is_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{
        "dataset": {"synthetic": {"cliques": [30, 20, 12, 8], "path_internal": 3, "rng_seed": 7}},
        "methods": [{"method": "mdh"}, {"method": "dih"}, {"method": "mdh-pack", "d": 4},
                    {"method": "dih-pack", "d": 4, "refine": false}, {"method": "random"}],
        "k_values": [1, 3, 5],
        "p": 0.1,
        "iterations": 500,
        "master_seed": 42,
        "outputs": {"csv": "out/run.csv", "json": "out/run.json"}
    }"#;
    fs::write(dir.path().join("bench.json"), config).unwrap();
    let mut runs = Vec::new();
    for threads in ["1", "4"] {
        let table = stdout(&with_threads(
            &["bench", "--config", "bench.json"],
            dir.path(),
            threads,
        ));
        let csv = fs::read(dir.path().join("out/run.csv")).unwrap();
        let json = fs::read(dir.path().join("out/run.json")).unwrap();
        assert_eq!(table.as_bytes(), csv.as_slice());
        runs.push((csv, json));
    }
    assert_eq!(runs[0], runs[1]);
    let csv = String::from_utf8(runs[0].0.clone()).unwrap();
    assert_eq!(csv.lines().count(), 1 + 5 * 3);
    assert!(csv.starts_with("method,k,d,p,rounded_activated,mean_rounds,coverage_steps\n"));
    assert!(csv.contains("dih-pack-unrefined,"));
}
