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

//! The `ffrand` command line.
//!
//! Machine-readable results go to `--out` (or standard output); a short
//! human-readable summary goes to standard error. Every file written with
//! `--out` gets a `<out>.manifest.json` next to it.
//!
//! Exit codes: 0 ok, 2 usage or I/O error, 3 resource cap exceeded, 4 internal
//! verification failure.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ffrand_core::bounds::{bound_report, BoundReport};
use ffrand_core::first_fit::{
    bidirected_path_witness, directed_path_witness, first_fit_color, Ranks,
};
use ffrand_core::forest::{generate, FamilySpec, Forest};
use ffrand_core::lower_bound::{
    build_lb_tree, calibrated_params, derive_params, LowerBoundError, LowerBoundParams,
    DEFAULT_VERTEX_CAP,
};
use ffrand_core::ordering::{order_from_positions, uniform_permutation, Permutation};
use serde::Serialize;

use crate::experiments::{
    check_run, estimate_expected_colors, exact_color_histogram, root_color_experiment,
    worst_case_colors, CheckMode, ExperimentError, LevelSelection, RootColorOptions,
    DEFAULT_ENUMERATION_CAP,
};
use crate::formats::{
    edge_list_text, histogram_csv, parse_order, read_forest, read_order, read_positions,
    summary_csv, to_json_line, write_manifest, write_output, ColorReport, ColoringFile, ForestFile,
    FormatError, RunManifest, WitnessFile,
};

#[derive(Debug, Parser)]
#[command(
    name = "ffrand",
    version,
    about = "First-Fit coloring of forests under random orders"
)]
pub struct Cli {
    /// Base seed for all randomness; sampled and printed when omitted.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for Monte Carlo runs (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file (default: standard output).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    /// Plain-text edge list (forests only).
    Edges,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a forest file.
    Gen(GenArgs),
    /// Color a forest once and extract witnesses.
    Color(ColorArgs),
    /// Monte Carlo estimate of the expected number of colors.
    Estimate(EstimateArgs),
    /// Exact expected number of colors by enumerating all orders.
    Exact(ExactArgs),
    /// Root-color experiment on the lower-bound trees.
    Rootcolor(RootColorArgs),
    /// Worst-case number of colors over all orders.
    Worstcase(WorstCaseArgs),
    /// Table of the closed-form bounds.
    Bounds(BoundsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Path,
    Star,
    Prufer,
    Lowerbound,
}

#[derive(Debug, Args, Serialize)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Vertex count for path, star and prufer.
    #[arg(long)]
    pub n: Option<usize>,
    /// Level of the lower-bound tree.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Branching factor; overrides the value derived from gamma.
    #[arg(long)]
    pub r: Option<u64>,
    /// Use gamma = 1 / ln k.
    #[arg(long)]
    pub calibrated: bool,
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    pub vertex_cap: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct ColorArgs {
    #[arg(long)]
    pub forest: PathBuf,
    /// Explicit order as a JSON array, e.g. `[3,0,2,1]`.
    #[arg(long, conflicts_with_all = ["order_file", "positions_file"])]
    pub order: Option<String>,
    #[arg(long, conflicts_with = "positions_file")]
    pub order_file: Option<PathBuf>,
    /// JSON array of positions in [0, 1).
    #[arg(long)]
    pub positions_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Auto,
    Always,
    Never,
}

impl From<Check> for CheckMode {
    fn from(c: Check) -> Self {
        match c {
            Check::Auto => CheckMode::Auto,
            Check::Always => CheckMode::Always,
            Check::Never => CheckMode::Never,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct EstimateArgs {
    #[arg(long)]
    pub forest: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, value_enum, default_value_t = Check::Auto)]
    pub check: Check,
    /// Also write the `color,count` histogram here.
    #[arg(long)]
    pub hist_out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ExactArgs {
    #[arg(long)]
    pub forest: PathBuf,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct RootColorArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub r: Option<u64>,
    #[arg(long)]
    pub calibrated: bool,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, value_enum, default_value_t = Levels::All)]
    pub levels: Levels,
    #[arg(long, value_enum, default_value_t = Check::Auto)]
    pub check: Check,
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    pub vertex_cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Levels {
    All,
    Top,
}

#[derive(Debug, Args, Serialize)]
pub struct WorstCaseArgs {
    #[arg(long)]
    pub forest: PathBuf,
    /// Search-node budget; required above 10 vertices.
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundsArgs {
    /// Evaluate at these n (repeatable).
    #[arg(long)]
    pub n: Vec<u64>,
    /// `START:END:log[:PER_DECADE]`, e.g. `1e4:1e12:log`.
    #[arg(long)]
    pub n_grid: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<LowerBoundError> for CliError {
    fn from(e: LowerBoundError) -> Self {
        match e {
            LowerBoundError::Overflow { .. } | LowerBoundError::ExceedsCap { .. } => {
                CliError::Cap(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            ExperimentError::CheckFailed { .. } => CliError::Verification(e.to_string()),
            ExperimentError::LowerBound(inner) => inner.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match cli.threads {
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| execute(&cli, &args)),
            Err(e) => Err(CliError::Usage(e.to_string())),
        },
        None => execute(&cli, &args),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

struct Session<'a> {
    cli: &'a Cli,
    args: &'a [OsString],
    start: Instant,
    sampled_seed: Option<u64>,
}

impl<'a> Session<'a> {
    fn seed(&mut self) -> u64 {
        if let Some(s) = self.cli.seed.or(self.sampled_seed) {
            return s;
        }
        let s = rand::random::<u64>();
        eprintln!("seed: {s}");
        self.sampled_seed = Some(s);
        s
    }

    /// Writes `contents` to `--out` (plus manifest) or standard output.
    fn emit<P: Serialize>(
        &self,
        subcommand: &str,
        parameters: &P,
        inputs: &[&Path],
        extra_outputs: &[&Path],
        contents: &str,
    ) -> Result<(), CliError> {
        let out = self.cli.out.as_deref();
        write_output(out, contents)?;
        let Some(out) = out else {
            return Ok(());
        };
        let mut command_line: Vec<String> = self
            .args
            .iter()
            .skip(1)
            .map(|a| a.to_string_lossy().into_owned())
            .collect();
        if let Some(s) = self.sampled_seed {
            command_line.extend(["--seed".to_owned(), s.to_string()]);
        }
        let manifest = RunManifest {
            subcommand: subcommand.to_owned(),
            command_line,
            parameters: serde_json::to_value(parameters).expect("serializable parameters"),
            base_seed: self.cli.seed.or(self.sampled_seed),
            version: env!("CARGO_PKG_VERSION").to_owned(),
            inputs: inputs.iter().map(|p| p.to_path_buf()).collect(),
            outputs: std::iter::once(out)
                .chain(extra_outputs.iter().copied())
                .map(Path::to_path_buf)
                .collect(),
            wall_time_s: self.start.elapsed().as_secs_f64(),
        };
        write_manifest(out, &manifest)?;
        Ok(())
    }
}

fn execute(cli: &Cli, args: &[OsString]) -> Result<(), CliError> {
    let mut session = Session {
        cli,
        args,
        start: Instant::now(),
        sampled_seed: None,
    };
    match &cli.command {
        Command::Gen(a) => cmd_gen(&mut session, a),
        Command::Color(a) => cmd_color(&mut session, a),
        Command::Estimate(a) => cmd_estimate(&mut session, a),
        Command::Exact(a) => cmd_exact(&session, a),
        Command::Rootcolor(a) => cmd_rootcolor(&mut session, a),
        Command::Worstcase(a) => cmd_worstcase(&session, a),
        Command::Bounds(a) => cmd_bounds(&session, a),
    }
}

fn require<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {family}")))
}

fn lower_bound_params(
    k: u32,
    gamma: Option<f64>,
    r: Option<u64>,
    calibrated: bool,
) -> Result<LowerBoundParams, CliError> {
    if calibrated {
        let mut p = calibrated_params(k)?;
        if let Some(r) = r {
            p.r = r;
            p.r_overridden = true;
        }
        return Ok(p);
    }
    match (gamma, r) {
        (Some(g), r) => Ok(derive_params(k, g, r)?),
        // Without gamma only the shape matters; any gamma in (0, 1) works.
        (None, Some(r)) => Ok(derive_params(k, 0.5, Some(r))?),
        (None, None) => Err(CliError::Usage(
            "lower-bound trees need --gamma, --r or --calibrated".into(),
        )),
    }
}

fn cmd_gen(session: &mut Session, a: &GenArgs) -> Result<(), CliError> {
    let format = session.cli.format.unwrap_or(Format::Json);
    if format == Format::Csv {
        return Err(CliError::Usage("gen writes json or edges".into()));
    }
    let (file, summary) = match a.family {
        Family::Lowerbound => {
            let k = require(a.k, "k", "lowerbound")?;
            let params = lower_bound_params(k, a.gamma, a.r, a.calibrated)?;
            let tree = build_lb_tree(k, params.r, a.vertex_cap)?;
            let summary = format!("T(k={k}, r={}) with {} vertices", params.r, tree.n());
            (ForestFile::from_lb_tree(&tree), summary)
        }
        family => {
            let n = require(a.n, "n", "this family")?;
            let (spec, seed) = match family {
                Family::Path => (FamilySpec::Path { n }, None),
                Family::Star => (FamilySpec::Star { n }, None),
                _ => (FamilySpec::Prufer { n }, Some(session.seed())),
            };
            if n as u64 > a.vertex_cap {
                return Err(CliError::Cap(format!(
                    "{n} vertices exceed the cap of {}",
                    a.vertex_cap
                )));
            }
            let forest = generate(&spec, seed.unwrap_or(0)).map_err(FormatError::from)?;
            (
                ForestFile::from_forest(&forest),
                format!("{family:?} forest with {n} vertices"),
            )
        }
    };
    let contents = match format {
        Format::Edges => edge_list_text(&file.to_forest()?),
        _ => to_json_line(&file),
    };
    eprintln!("{summary}");
    session.emit("gen", a, &[], &[], &contents)
}

fn load_forest(path: &Path) -> Result<Forest, CliError> {
    Ok(read_forest(path)?.to_forest()?)
}

fn cmd_color(session: &mut Session, a: &ColorArgs) -> Result<(), CliError> {
    let forest = load_forest(&a.forest)?;
    let mut inputs = vec![a.forest.as_path()];
    let order: Permutation = if let Some(text) = &a.order {
        parse_order(Path::new("--order"), text)?
    } else if let Some(path) = &a.order_file {
        inputs.push(path);
        read_order(path)?
    } else if let Some(path) = &a.positions_file {
        inputs.push(path);
        let positions = read_positions(path)?;
        order_from_positions(&positions)
    } else {
        uniform_permutation(forest.n(), session.seed())
    };
    let coloring = first_fit_color(&forest, &order).map_err(|e| CliError::Usage(e.to_string()))?;
    let ranks = Ranks::from(&order);
    check_run(&forest, &ranks, &coloring).map_err(|e| CliError::Verification(e.to_string()))?;
    let directed = match coloring.max_color_vertex() {
        Some(v) => Some(
            directed_path_witness(&forest, &ranks, &coloring, v)
                .map_err(|e| CliError::Verification(e.to_string()))?,
        ),
        None => None,
    };
    let bidirected = if coloring.max_color >= 2 {
        Some(
            bidirected_path_witness(&forest, &ranks, &coloring)
                .map_err(|e| CliError::Verification(e.to_string()))?,
        )
    } else {
        None
    };
    let report = ColorReport {
        order: order.as_slice().to_vec(),
        coloring: ColoringFile::from(&coloring),
        directed_witness: directed.as_ref().map(WitnessFile::from),
        bidirected_witness: bidirected.as_ref().map(WitnessFile::from),
        verified: true,
    };
    eprintln!(
        "First-Fit used {} colors on {} vertices",
        coloring.max_color,
        forest.n()
    );
    session.emit("color", a, &inputs, &[], &to_json_line(&report))
}

fn cmd_estimate(session: &mut Session, a: &EstimateArgs) -> Result<(), CliError> {
    let forest = load_forest(&a.forest)?;
    let seed = session.seed();
    let result = estimate_expected_colors(&forest, a.trials, seed, a.check.into())?;
    let contents = match session.cli.format.unwrap_or(Format::Json) {
        Format::Json => to_json_line(&result),
        Format::Csv => summary_csv(&result)?,
        Format::Edges => return Err(CliError::Usage("estimate writes json or csv".into())),
    };
    if let Some(path) = &a.hist_out {
        write_output(Some(path), &histogram_csv(&result.color_histogram)?)?;
    }
    eprintln!(
        "mean {:.6} +/- {:.6} over {} trials ({} checked) in {:.2}s",
        result.mean, result.std_error, result.trials, result.checked_trials, result.wall_time
    );
    let extra: Vec<&Path> = a.hist_out.iter().map(PathBuf::as_path).collect();
    session.emit("estimate", a, &[&a.forest], &extra, &contents)
}

#[derive(Serialize)]
struct ExactReport {
    n: usize,
    expected: String,
    expected_f64: f64,
    orders: u64,
    color_histogram: std::collections::BTreeMap<u32, u64>,
}

fn cmd_exact(session: &Session, a: &ExactArgs) -> Result<(), CliError> {
    let forest = load_forest(&a.forest)?;
    let histogram = exact_color_histogram(&forest, a.cap)?;
    let orders: u64 = histogram.values().sum();
    let total: u64 = histogram.iter().map(|(&c, &k)| c as u64 * k).sum();
    let expected = num_rational::Ratio::new(total, orders);
    let report = ExactReport {
        n: forest.n(),
        expected: expected.to_string(),
        expected_f64: total as f64 / orders as f64,
        orders,
        color_histogram: histogram,
    };
    if session.cli.format == Some(Format::Json) || session.cli.out.is_some() {
        session.emit("exact", a, &[&a.forest], &[], &to_json_line(&report))?;
        if session.cli.out.is_some() {
            println!("{expected}");
        }
        Ok(())
    } else {
        println!("{expected}");
        Ok(())
    }
}

#[derive(Serialize)]
struct LevelRow {
    level: u32,
    n: u64,
    trials: u64,
    p_b: f64,
    p_b_lo: f64,
    p_b_hi: f64,
    epsilon: f64,
    root_above_level: u64,
}

fn cmd_rootcolor(session: &mut Session, a: &RootColorArgs) -> Result<(), CliError> {
    let params = lower_bound_params(a.k, a.gamma, a.r, a.calibrated)?;
    let options = RootColorOptions {
        vertex_cap: a.vertex_cap,
        check: a.check.into(),
        levels: match a.levels {
            Levels::All => LevelSelection::All,
            Levels::Top => LevelSelection::Top,
        },
    };
    let seed = session.seed();
    let report = root_color_experiment(&params, a.trials, seed, &options)?;
    let contents = match session.cli.format.unwrap_or(Format::Json) {
        Format::Json => to_json_line(&report),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for l in &report.levels {
                w.serialize(LevelRow {
                    level: l.level,
                    n: l.n,
                    trials: report.trials,
                    p_b: l.p_b.estimate,
                    p_b_lo: l.p_b.wilson95.0,
                    p_b_hi: l.p_b.wilson95.1,
                    epsilon: l.epsilon,
                    root_above_level: l.root_above_level,
                })
                .map_err(FormatError::from)?;
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
        }
        Format::Edges => return Err(CliError::Usage("rootcolor writes json or csv".into())),
    };
    eprintln!(
        "k={} r={} n={}: P(chi_FF = k) = {:.4} (Wilson 95% [{:.4}, {:.4}]), P(B_k) = {:.4}",
        report.k,
        report.r,
        report.levels.last().map_or(0, |l| l.n),
        report.p_chi_eq_k.estimate,
        report.p_chi_eq_k.wilson95.0,
        report.p_chi_eq_k.wilson95.1,
        report.p_b_k.estimate
    );
    session.emit("rootcolor", a, &[], &[], &contents)
}

#[derive(Serialize)]
struct WorstCaseReport {
    max_colors: u32,
    order: Vec<u32>,
    exhaustive: bool,
    nodes: u64,
}

fn cmd_worstcase(session: &Session, a: &WorstCaseArgs) -> Result<(), CliError> {
    let forest = load_forest(&a.forest)?;
    let w = worst_case_colors(&forest, a.budget)?;
    eprintln!(
        "worst case {} colors ({})",
        w.max_colors,
        if w.exhaustive {
            "optimal"
        } else {
            "lower bound, budget exhausted"
        }
    );
    let report = WorstCaseReport {
        max_colors: w.max_colors,
        order: w.order.into_inner(),
        exhaustive: w.exhaustive,
        nodes: w.nodes,
    };
    session.emit("worstcase", a, &[&a.forest], &[], &to_json_line(&report))
}

/// Parses `START:END:log[:PER_DECADE]`.
pub fn parse_grid(spec: &str) -> Result<Vec<u64>, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "bad grid {spec:?}, expected START:END:log[:PER_DECADE]"
        ))
    };
    let parts: Vec<_> = spec.split(':').collect();
    let (start, end, per_decade) = match parts[..] {
        [s, e, "log"] => (s, e, 1u32),
        [s, e, "log", p] => (s, e, p.parse().map_err(|_| bad())?),
        _ => return Err(bad()),
    };
    let parse = |s: &str| -> Result<f64, CliError> {
        let x: f64 = s.parse().map_err(|_| bad())?;
        if x >= 1.0 && x.is_finite() && x <= u64::MAX as f64 {
            Ok(x)
        } else {
            Err(bad())
        }
    };
    let (start, end) = (parse(start)?, parse(end)?);
    if per_decade == 0 || start > end {
        return Err(bad());
    }
    let (lo, hi) = (start.log10(), end.log10());
    let steps = ((hi - lo) * per_decade as f64 + 1e-9).floor() as u64;
    let mut grid: Vec<u64> = (0..=steps)
        .map(|j| 10f64.powf(lo + j as f64 / per_decade as f64).round() as u64)
        .collect();
    grid.dedup();
    Ok(grid)
}

#[derive(Serialize)]
struct BoundRow {
    n: u64,
    alpha: Option<f64>,
    k_star: Option<u64>,
    upper_rff: Option<f64>,
    tail: Option<f64>,
    lower_g: Option<f64>,
}

impl From<BoundReport> for BoundRow {
    fn from(r: BoundReport) -> Self {
        BoundRow {
            n: r.n,
            alpha: r.alpha,
            k_star: r.k_star,
            upper_rff: r.upper_rff,
            tail: r.tail,
            lower_g: r.lower_g,
        }
    }
}

fn cmd_bounds(session: &Session, a: &BoundsArgs) -> Result<(), CliError> {
    let mut grid = a.n.clone();
    if let Some(spec) = &a.n_grid {
        grid.extend(parse_grid(spec)?);
    }
    if grid.is_empty() {
        return Err(CliError::Usage("give --n or --n-grid".into()));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    // Header is written explicitly so an all-empty first row still names columns.
    w.write_record(["n", "alpha", "k_star", "upper_rff", "tail", "lower_g"])
        .map_err(FormatError::from)?;
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(w.into_inner().expect("in-memory writer"));
    for n in grid {
        writer
            .serialize(BoundRow::from(bound_report(n)))
            .map_err(FormatError::from)?;
    }
    let contents =
        String::from_utf8(writer.into_inner().expect("in-memory writer")).expect("utf-8");
    session.emit("bounds", a, &[], &[], &contents)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(
            parse_grid("1e4:1e6:log").unwrap(),
            vec![10_000, 100_000, 1_000_000]
        );
        assert_eq!(parse_grid("1e4:1e12:log").unwrap().len(), 9);
        assert_eq!(parse_grid("100:1000:log:2").unwrap(), vec![100, 316, 1000]);
        assert!(parse_grid("1e6:1e4:log").is_err());
        assert!(parse_grid("1e4:1e6").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
