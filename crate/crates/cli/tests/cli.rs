use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const P3: &str = "c path on three vertices\np 3 2\ne 1 2 1\ne 2 3 1\n";
const P3_TD: &str = "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n";

fn tdcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tdcut")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn p3(dir: &TempDir) -> (String, String) {
    (write(dir, "p3.gr", P3), write(dir, "p3.td", P3_TD))
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

#[test]
fn max_cut_on_path_picks_the_middle_vertex() {
    let dir = TempDir::new().unwrap();
    let (g, td) = p3(&dir);
    let out = tdcut(&["solve", "--problem", "max-cut", "--graph", &g, "--td", &td, "--undirected", "--witness"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["value"], "2");
    assert_eq!(r["witness"], serde_json::json!([2]));
    assert_eq!(r["count"], 1);
    assert_eq!(r["width"], 1);
    assert_eq!(r["width_source"], "given");
    for key in ["problem", "n", "m", "nodes", "stats"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn sparsest_cut_on_path() {
    let dir = TempDir::new().unwrap();
    let (g, td) = p3(&dir);
    let out = tdcut(&["solve", "--problem", "sparsest-cut", "--graph", &g, "--td", &td, "--undirected"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["value"], "1/2");
    assert!(r.get("witness").is_none());
}

#[test]
fn missing_edge_bag_fails_validation() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p3.gr", P3);
    let td = write(&dir, "bad.td", "s td 2 2 3\nb 1 1 2\nb 2 3\n1 2\n");
    let out = tdcut(&["validate", "--graph", &g, "--td", &td, "--undirected"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("EdgeNotCovered"));

    let out = tdcut(&["solve", "--problem", "max-cut", "--graph", &g, "--td", &td]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("EdgeNotCovered"));
}

#[test]
fn valid_decomposition_passes() {
    let dir = TempDir::new().unwrap();
    let (g, td) = p3(&dir);
    let out = tdcut(&["validate", "--graph", &g, "--td", &td, "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok"));
}

#[test]
fn infeasible_balance_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let (g, _) = p3(&dir);
    let out = tdcut(&["solve", "--problem", "balanced-min-cut", "--beta", "1/2", "--graph", &g, "--undirected"]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["value"], "infeasible");
    assert_eq!(r["count"], Value::Null);
    assert_eq!(r["width_source"], "heuristic");
}

#[test]
fn beta_is_required_exactly_for_balanced_min_cut() {
    let dir = TempDir::new().unwrap();
    let (g, _) = p3(&dir);
    assert_eq!(tdcut(&["solve", "--problem", "balanced-min-cut", "--graph", &g]).status.code(), Some(1));
    assert_eq!(tdcut(&["solve", "--problem", "max-cut", "--beta", "1/3", "--graph", &g]).status.code(), Some(1));
    assert_eq!(
        tdcut(&["solve", "--problem", "balanced-min-cut", "--beta", "2/3", "--graph", &g]).status.code(),
        Some(1)
    );
}

#[test]
fn parse_errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "bad.gr", "p 3 1\ne 1 4 1\n");
    let out = tdcut(&["solve", "--problem", "max-cut", "--graph", &g]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn generated_instances_round_trip_through_solve() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.gr");
    let td = dir.path().join("g.td");
    for (seed, directed) in [(1, false), (2, true), (3, false)] {
        let mut args = vec![
            "gen".to_string(),
            "--seed".into(),
            seed.to_string(),
            "--n".into(),
            "12".into(),
            "--width".into(),
            "3".into(),
            "--min-weight".into(),
            "-4".into(),
            "--graph-out".into(),
            g.to_str().unwrap().into(),
            "--td-out".into(),
            td.to_str().unwrap().into(),
        ];
        if directed {
            args.push("--directed".into());
        }
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(tdcut(&args).status.code(), Some(0));
        let mode = if directed { "--directed" } else { "--undirected" };
        for problem in ["max-cut", "max-bisection", "min-bisection"] {
            let out = tdcut(&[
                "solve", "--problem", problem, "--graph", path(&g), "--td", path(&td), mode, "--witness", "--oracle-check",
            ]);
            assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
            let r = json(&out);
            assert_eq!(r["oracle"]["agrees"], true);
            assert!(r["width"].as_u64().unwrap() <= 3);
        }
    }
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn root_override_keeps_the_optimum() {
    let dir = TempDir::new().unwrap();
    let (g, td) = p3(&dir);
    for root in ["1", "2"] {
        let out = tdcut(&["solve", "--problem", "min-bisection", "--graph", &g, "--td", &td, "--root", root, "--undirected"]);
        assert_eq!(json(&out)["value"], "1");
    }
    let out = tdcut(&["solve", "--problem", "max-cut", "--graph", &g, "--td", &td, "--root", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn nicify_labels_every_node() {
    let dir = TempDir::new().unwrap();
    let (g, td) = p3(&dir);
    let out = tdcut(&["nicify", "--graph", &g, "--td", &td]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let bags = text.lines().filter(|l| l.starts_with("b ")).count();
    let kinds = text
        .lines()
        .filter(|l| ["c leaf", "c join", "c introduce", "c forget"].iter().any(|k| l.starts_with(k)))
        .count();
    assert_eq!(bags, kinds);
    let header = text.lines().find(|l| l.starts_with("s td")).unwrap();
    assert_eq!(header, format!("s td {bags} 2 3"));
}

#[test]
fn bench_rows_respect_the_pair_bound() {
    let out = tdcut(&["bench", "--sizes", "30,60", "--widths", "2,4", "--seeds", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,t,seed,nodes,join_pair_sum,elapsed_ms"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 8);
    for row in rows {
        let n: u128 = row[0].parse().unwrap();
        let pairs: u128 = row[4].parse().unwrap();
        assert!(pairs <= n * n);
    }
}

#[test]
fn oracle_lists_all_optimal_sets() {
    let dir = TempDir::new().unwrap();
    let (g, _) = p3(&dir);
    let out = tdcut(&["oracle", "--problem", "max-cut", "--graph", &g, "--undirected"]);
    let r = json(&out);
    assert_eq!(r["value"], "2");
    assert_eq!(r["witnesses"], serde_json::json!([[2], [1, 3]]));
}
