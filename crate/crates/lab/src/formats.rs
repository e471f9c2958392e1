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

//! On-disk formats.
//!
//! * Forest JSON: `{"n": 4, "edges": [[0,1],[1,2]], "root": null}` with edges
//!   sorted lexicographically; lower-bound trees add `"levels": [..]`.
//! * Edge list text: first line `n`, then one `u v` pair per line.
//! * Orders and positions: JSON arrays of vertex indices / reals.
//! * Colorings `{"colors": [..], "max_color": m}` and witnesses
//!   `{"path": [..], "peak": t}`.
//! * Experiment summaries as JSON or CSV.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use ffrand_core::first_fit::{BidirectedPathWitness, Coloring, DirectedPathWitness};
use ffrand_core::forest::{Forest, ForestError, Vertex};
use ffrand_core::lower_bound::RootedLbTree;
use ffrand_core::ordering::{OrderError, Permutation, PositionAssignment};
use serde::{Deserialize, Serialize};

use crate::experiments::ExperimentResult;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{path}: line {line}: {message}")]
    EdgeList {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("levels array has {found} entries for {expected} vertices")]
    Levels { expected: usize, found: usize },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Serialized forest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestFile {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
    pub root: Option<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<u8>>,
}

impl ForestFile {
    pub fn from_forest(forest: &Forest) -> Self {
        ForestFile {
            n: forest.n(),
            edges: forest.edges().map(|(u, v)| [u, v]).collect(),
            root: forest.root(),
            levels: None,
        }
    }

    pub fn from_lb_tree(tree: &RootedLbTree) -> Self {
        ForestFile {
            levels: Some(tree.levels.clone()),
            ..Self::from_forest(&tree.forest)
        }
    }

    pub fn to_forest(&self) -> Result<Forest, FormatError> {
        let edges: Vec<_> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        if let Some(levels) = &self.levels {
            if levels.len() != self.n {
                return Err(FormatError::Levels {
                    expected: self.n,
                    found: levels.len(),
                });
            }
        }
        Ok(Forest::new(self.n, &edges)?.with_root(self.root)?)
    }
}

fn read_text(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_owned(),
        source,
    })
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|source| FormatError::Json {
        path: path.to_owned(),
        source,
    })
}

/// Writes `contents` to `path`, or to standard output when `path` is `None`.
pub fn write_output(path: Option<&Path>, contents: &str) -> Result<(), FormatError> {
    match path {
        Some(p) => fs::write(p, contents).map_err(|source| FormatError::Io {
            path: p.to_owned(),
            source,
        }),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(contents.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| FormatError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

/// Compact JSON followed by a newline.
pub fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable value");
    s.push('\n');
    s
}

/// Reads a forest from JSON or from an edge list; the format is detected
/// from the first non-blank character.
pub fn read_forest(path: &Path) -> Result<ForestFile, FormatError> {
    let text = read_text(path)?;
    if text.trim_start().starts_with('{') {
        let file: ForestFile = parse_json(path, &text)?;
        file.to_forest()?;
        Ok(file)
    } else {
        let forest = parse_edge_list(path, &text)?;
        Ok(ForestFile::from_forest(&forest))
    }
}

pub fn parse_edge_list(path: &Path, text: &str) -> Result<Forest, FormatError> {
    let err = |line: usize, message: String| FormatError::EdgeList {
        path: path.to_owned(),
        line,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing vertex count".into()))?;
    let n: usize = header
        .parse()
        .map_err(|e| err(first, format!("bad vertex count {header:?}: {e}")))?;
    let mut edges = Vec::new();
    for (line, text) in lines {
        let fields: Vec<_> = text.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(err(line, format!("expected `u v`, got {text:?}")));
        };
        let parse = |s: &str| {
            s.parse::<Vertex>()
                .map_err(|e| err(line, format!("bad vertex {s:?}: {e}")))
        };
        edges.push((parse(u)?, parse(v)?));
    }
    Ok(Forest::new(n, &edges)?)
}

pub fn edge_list_text(forest: &Forest) -> String {
    let mut s = format!("{}\n", forest.n());
    for (u, v) in forest.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn read_order(path: &Path) -> Result<Permutation, FormatError> {
    let text = read_text(path)?;
    parse_order(path, &text)
}

pub fn parse_order(path: &Path, text: &str) -> Result<Permutation, FormatError> {
    let order: Vec<Vertex> = parse_json(path, text)?;
    Ok(Permutation::new(order)?)
}

pub fn read_positions(path: &Path) -> Result<PositionAssignment, FormatError> {
    let text = read_text(path)?;
    let positions: Vec<f64> = parse_json(path, &text)?;
    Ok(PositionAssignment::new(positions)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub colors: Vec<u32>,
    pub max_color: u32,
}

impl From<&Coloring> for ColoringFile {
    fn from(c: &Coloring) -> Self {
        ColoringFile {
            colors: c.colors.clone(),
            max_color: c.max_color,
        }
    }
}

impl From<ColoringFile> for Coloring {
    fn from(c: ColoringFile) -> Self {
        Coloring {
            colors: c.colors,
            max_color: c.max_color,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub path: Vec<Vertex>,
    pub peak: usize,
}

impl From<&BidirectedPathWitness> for WitnessFile {
    fn from(w: &BidirectedPathWitness) -> Self {
        WitnessFile {
            path: w.path.clone(),
            peak: w.peak,
        }
    }
}

impl From<&DirectedPathWitness> for WitnessFile {
    /// A directed path peaks at its last vertex.
    fn from(w: &DirectedPathWitness) -> Self {
        WitnessFile {
            path: w.path.clone(),
            peak: w.path.len().saturating_sub(1),
        }
    }
}

/// Output of the `color` subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorReport {
    pub order: Vec<Vertex>,
    pub coloring: ColoringFile,
    /// Directed witness ending at the smallest max-color vertex.
    pub directed_witness: Option<WitnessFile>,
    /// Present when at least two colors were used.
    pub bidirected_witness: Option<WitnessFile>,
    pub verified: bool,
}

#[derive(Debug, Serialize)]
struct SummaryRow {
    trials: u64,
    mean: f64,
    stderr: f64,
    ci_lo: f64,
    ci_hi: f64,
}

fn csv_string<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Result<String, FormatError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    let bytes = writer.into_inner().map_err(|e| FormatError::Io {
        path: PathBuf::from("<csv>"),
        source: e.into_error(),
    })?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// `trials,mean,stderr,ci_lo,ci_hi` with one data row.
pub fn summary_csv(result: &ExperimentResult) -> Result<String, FormatError> {
    csv_string([SummaryRow {
        trials: result.trials,
        mean: result.mean,
        stderr: result.std_error,
        ci_lo: result.ci95.0,
        ci_hi: result.ci95.1,
    }])
}

/// `color,count`, one row per observed color.
pub fn histogram_csv<'a>(
    histogram: impl IntoIterator<Item = (&'a u32, &'a u64)>,
) -> Result<String, FormatError> {
    #[derive(Serialize)]
    struct Row {
        color: u32,
        count: u64,
    }
    let rows: Vec<_> = histogram
        .into_iter()
        .map(|(&color, &count)| Row { color, count })
        .collect();
    if rows.is_empty() {
        return Ok("color,count\n".to_owned());
    }
    csv_string(rows)
}

/// Provenance written next to every output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    /// Arguments that reproduce the outputs, with the seed made explicit.
    pub command_line: Vec<String>,
    pub parameters: serde_json::Value,
    pub base_seed: Option<u64>,
    pub version: String,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub wall_time_s: f64,
}

/// `<output>.manifest.json`.
pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output
        .file_name()
        .map(|s| s.to_os_string())
        .unwrap_or_default();
    name.push(".manifest.json");
    output.with_file_name(name)
}

pub fn write_manifest(output: &Path, manifest: &RunManifest) -> Result<(), FormatError> {
    let text = serde_json::to_string_pretty(manifest).expect("serializable manifest") + "\n";
    write_output(Some(&manifest_path(output)), &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forest_json_shape() {
        let f = Forest::new(4, &[(2, 3), (0, 1), (1, 2)]).unwrap();
        let json = to_json_line(&ForestFile::from_forest(&f));
        assert_eq!(
            json,
            "{\"n\":4,\"edges\":[[0,1],[1,2],[2,3]],\"root\":null}\n"
        );
    }

    #[test]
    fn edge_list_parse_and_errors() {
        let p = Path::new("x.txt");
        let f = parse_edge_list(p, "4\n0 1\n\n1 2\n2 3\n").unwrap();
        assert_eq!(f.edge_count(), 3);
        assert_eq!(edge_list_text(&f), "4\n0 1\n1 2\n2 3\n");
        let commented = parse_edge_list(p, "# path\n4\n0 1 # first\n1 2\n2 3\n").unwrap();
        assert_eq!(commented, f);
        assert!(matches!(
            parse_edge_list(p, "3\n0 1 2\n"),
            Err(FormatError::EdgeList { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list(p, "3\n0 1\n1 2\n2 0\n"),
            Err(FormatError::Forest(ForestError::Cycle(2, 0)))
        ));
    }

    #[test]
    fn levels_length_is_checked() {
        let file = ForestFile {
            n: 2,
            edges: vec![[0, 1]],
            root: Some(0),
            levels: Some(vec![2]),
        };
        assert!(matches!(file.to_forest(), Err(FormatError::Levels { .. })));
    }

    #[test]
    fn csv_headers() {
        let h = std::collections::BTreeMap::from([(2u32, 18u64), (3, 6)]);
        assert_eq!(histogram_csv(&h).unwrap(), "color,count\n2,18\n3,6\n");
    }

    #[test]
    fn manifest_name() {
        assert_eq!(
            manifest_path(Path::new("/tmp/out/p4.json")),
            PathBuf::from("/tmp/out/p4.json.manifest.json")
        );
    }
}
