// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! End-to-end runs of the `ffrand` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ffrand_lab::experiments::ExperimentResult;
use ffrand_lab::formats::{
    edge_list_text, read_forest, to_json_line, ColorReport, ForestFile, RunManifest,
};
use tempfile::TempDir;

fn ffrand(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffrand"))
        .args(args)
        .output()
        .expect("spawn ffrand")
}

fn ok(args: &[&str]) -> String {
    let out = ffrand(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    ffrand(args).status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let out = dir.path().join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path_str(&out)]);
    ok(&full);
    out
}

fn p4(dir: &TempDir) -> PathBuf {
    gen(dir, "p4.json", &["--family", "path", "--n", "4"])
}

#[test]
fn gen_path_writes_forest_and_manifest() {
    let dir = TempDir::new().unwrap();
    let p = p4(&dir);
    assert_eq!(
        std::fs::read_to_string(&p).unwrap(),
        "{\"n\":4,\"edges\":[[0,1],[1,2],[2,3]],\"root\":null}\n"
    );
    let manifest: RunManifest = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("p4.json.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest.subcommand, "gen");
    assert_eq!(manifest.parameters["n"], 4);
    assert_eq!(manifest.outputs, vec![p]);
}

#[test]
fn gen_lower_bound_trees() {
    let dir = TempDir::new().unwrap();
    let t3 = gen(
        &dir,
        "t3.json",
        &["--family", "lowerbound", "--k", "3", "--gamma", "0.5"],
    );
    let file = read_forest(&t3).unwrap();
    assert_eq!(file.n, 17_689);
    assert_eq!(file.root, Some(0));
    assert_eq!(file.levels.as_ref().unwrap().len(), 17_689);
    let small = gen(
        &dir,
        "small.json",
        &["--family", "lowerbound", "--k", "3", "--r", "2"],
    );
    let small = read_forest(&small).unwrap();
    assert_eq!(small.n, 9);
    assert_eq!(small.edges.len(), 8);
}

#[test]
fn exact_prints_fraction() {
    let dir = TempDir::new().unwrap();
    let p = p4(&dir);
    assert_eq!(ok(&["exact", "--forest", path_str(&p)]), "9/4\n");
}

#[test]
fn color_with_explicit_order() {
    let dir = TempDir::new().unwrap();
    let p = p4(&dir);
    let text = ok(&["color", "--forest", path_str(&p), "--order", "[3,0,2,1]"]);
    let report: ColorReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.coloring.colors, vec![1, 3, 2, 1]);
    assert_eq!(report.coloring.max_color, 3);
    assert_eq!(report.directed_witness.unwrap().path, vec![3, 2, 1]);
    let bi = report.bidirected_witness.unwrap();
    assert_eq!(bi.path.len(), 4);
    assert!(report.verified);
}

#[test]
fn color_single_vertex() {
    let dir = TempDir::new().unwrap();
    let one = gen(&dir, "one.json", &["--family", "path", "--n", "1"]);
    let report: ColorReport =
        serde_json::from_str(&ok(&["color", "--forest", path_str(&one), "--seed", "3"])).unwrap();
    assert_eq!(report.coloring.max_color, 1);
    assert!(report.bidirected_witness.is_none());
}

#[test]
fn color_from_order_and_position_files() {
    let dir = TempDir::new().unwrap();
    let p = p4(&dir);
    let order = dir.path().join("order.json");
    std::fs::write(&order, "[3,0,2,1]").unwrap();
    let positions = dir.path().join("pos.json");
    std::fs::write(&positions, "[0.25,0.75,0.5,0.0]").unwrap();
    let a = ok(&[
        "color",
        "--forest",
        path_str(&p),
        "--order-file",
        path_str(&order),
    ]);
    let b = ok(&[
        "color",
        "--forest",
        path_str(&p),
        "--positions-file",
        path_str(&positions),
    ]);
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let p = p4(&dir);
    let p = path_str(&p);
    assert_eq!(code(&["color", "--forest", p, "--order", "[0,1,2]"]), 2);
    assert_eq!(code(&["color", "--forest", p, "--order", "[0,0,1,2]"]), 2);
    assert_eq!(code(&["exact", "--forest", "/nonexistent/forest.json"]), 2);
    assert_eq!(code(&["gen", "--family", "warp"]), 2);
    assert_eq!(code(&["gen", "--family", "path"]), 2);
    assert_eq!(code(&["bounds"]), 2);
    assert_eq!(
        code(&[
            "gen",
            "--family",
            "lowerbound",
            "--k",
            "6",
            "--gamma",
            "0.5"
        ]),
        3
    );
    assert_eq!(
        code(&[
            "gen",
            "--family",
            "path",
            "--n",
            "100",
            "--vertex-cap",
            "10"
        ]),
        3
    );
    let big = gen(&dir, "p11.json", &["--family", "path", "--n", "11"]);
    assert_eq!(code(&["exact", "--forest", path_str(&big)]), 3);
}

#[test]
fn estimate_on_level_three_tree() {
    let dir = TempDir::new().unwrap();
    let t3 = gen(
        &dir,
        "t3.json",
        &["--family", "lowerbound", "--k", "3", "--gamma", "0.5"],
    );
    let text = ok(&[
        "estimate",
        "--forest",
        path_str(&t3),
        "--trials",
        "10000",
        "--seed",
        "42",
        "--check",
        "never",
    ]);
    let result: ExperimentResult = serde_json::from_str(&text).unwrap();
    assert!((2.5..=3.0).contains(&result.mean), "mean {}", result.mean);
    assert!(result.tail_probability(3).estimate >= 0.5);
}

#[test]
fn bounds_rows() {
    let text = ok(&["bounds", "--n", "1000000"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,alpha,k_star,upper_rff,tail,lower_g"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "1000000");
    let alpha: f64 = row[1].parse().unwrap();
    assert!((alpha - 2.9756).abs() < 1e-3);
    assert_eq!(row[2], "21");

    let grid = ok(&["bounds", "--n-grid", "1e4:1e12:log"]);
    assert_eq!(grid.lines().count(), 10);
    assert_eq!(
        ok(&["bounds", "--n", "3"]).lines().nth(1),
        Some("3,,,1.0,,")
    );
}

#[test]
fn worstcase_on_p4() {
    let dir = TempDir::new().unwrap();
    let p = p4(&dir);
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["worstcase", "--forest", path_str(&p)])).unwrap();
    assert_eq!(v["max_colors"], 3);
    assert_eq!(v["exhaustive"], true);
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let dir = TempDir::new().unwrap();
    let tree = gen(
        &dir,
        "prufer.json",
        &["--family", "prufer", "--n", "300", "--seed", "9"],
    );
    let tree = path_str(&tree);
    for format in ["json", "csv"] {
        let one = ok(&[
            "estimate",
            "--forest",
            tree,
            "--trials",
            "3000",
            "--seed",
            "5",
            "--threads",
            "1",
            "--format",
            format,
        ]);
        let three = ok(&[
            "estimate",
            "--forest",
            tree,
            "--trials",
            "3000",
            "--seed",
            "5",
            "--threads",
            "3",
            "--format",
            format,
        ]);
        assert_eq!(one, three);
    }
    let root = |threads: &str| {
        ok(&[
            "rootcolor",
            "--k",
            "3",
            "--r",
            "6",
            "--trials",
            "2000",
            "--seed",
            "11",
            "--threads",
            threads,
        ])
    };
    assert_eq!(root("1"), root("4"));
}

#[test]
fn manifest_command_line_reproduces_output() {
    let dir = TempDir::new().unwrap();
    let p = p4(&dir);
    let out = dir.path().join("est.json");
    let hist = dir.path().join("hist.csv");
    let run = ffrand(&[
        "estimate",
        "--forest",
        path_str(&p),
        "--trials",
        "500",
        "--out",
        path_str(&out),
        "--hist-out",
        path_str(&hist),
    ]);
    assert!(run.status.success());
    assert!(String::from_utf8_lossy(&run.stderr).contains("seed: "));
    let first = std::fs::read(&out).unwrap();
    let manifest: RunManifest = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("est.json.manifest.json")).unwrap(),
    )
    .unwrap();
    let seed = manifest.base_seed.expect("sampled seed recorded");
    assert!(manifest
        .command_line
        .ends_with(&["--seed".into(), seed.to_string()]));
    assert_eq!(manifest.outputs, vec![out.clone(), hist.clone()]);
    let hist_first = std::fs::read(&hist).unwrap();
    let args: Vec<&str> = manifest.command_line.iter().map(String::as_str).collect();
    let rerun = ffrand(&args);
    assert!(rerun.status.success());
    assert!(!String::from_utf8_lossy(&rerun.stderr).contains("seed: "));
    assert_eq!(std::fs::read(&out).unwrap(), first);
    assert_eq!(std::fs::read(&hist).unwrap(), hist_first);
    assert!(std::str::from_utf8(&hist_first)
        .unwrap()
        .starts_with("color,count\n"));
}

#[test]
fn formats_are_fixed_points() {
    let dir = TempDir::new().unwrap();
    let json = gen(
        &dir,
        "t.json",
        &["--family", "prufer", "--n", "40", "--seed", "1"],
    );
    let text = std::fs::read_to_string(&json).unwrap();
    let file = read_forest(&json).unwrap();
    assert_eq!(to_json_line(&file), text);

    let edges = gen(
        &dir,
        "t.txt",
        &[
            "--family", "prufer", "--n", "40", "--seed", "1", "--format", "edges",
        ],
    );
    let edge_text = std::fs::read_to_string(&edges).unwrap();
    let from_edges = read_forest(&edges).unwrap();
    assert_eq!(edge_list_text(&from_edges.to_forest().unwrap()), edge_text);
    assert_eq!(from_edges, file);

    let lb = gen(
        &dir,
        "lb.json",
        &["--family", "lowerbound", "--k", "3", "--r", "3"],
    );
    let lb_text = std::fs::read_to_string(&lb).unwrap();
    let lb_file: ForestFile = read_forest(&lb).unwrap();
    assert_eq!(to_json_line(&lb_file), lb_text);

    let report_text = ok(&["color", "--forest", path_str(&json), "--seed", "2"]);
    let report: ColorReport = serde_json::from_str(&report_text).unwrap();
    assert_eq!(to_json_line(&report), report_text);

    let est_text = ok(&[
        "estimate",
        "--forest",
        path_str(&json),
        "--trials",
        "200",
        "--seed",
        "2",
    ]);
    let est: ExperimentResult = serde_json::from_str(&est_text).unwrap();
    assert_eq!(to_json_line(&est), est_text);

    let manifest_text = std::fs::read_to_string(dir.path().join("t.json.manifest.json")).unwrap();
    let manifest: RunManifest = serde_json::from_str(&manifest_text).unwrap();
    assert_eq!(
        serde_json::to_string_pretty(&manifest).unwrap() + "\n",
        manifest_text
    );
}
