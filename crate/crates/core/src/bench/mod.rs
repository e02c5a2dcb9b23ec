//! Multi-trial experiments.
//!
//! An [`ExperimentConfig`] expands into cells `(size, algorithm, trial)`.
//! Each cell builds its own instance and oracle, so cells run in parallel
//! and the merged output is sorted by key and does not depend on scheduling.
//! Wall time is kept out of the CSV so reruns produce identical files.

mod fit;

pub use fit::{fit_power_law, percentile, PowerLawFit, MIN_FIT_POINTS};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{complete, grid, path, random_tree, star, triangulated_grid, Graph};
use crate::oracle::{random_values, row_major, staircase_path, valley, ValueFunction};
use crate::search::{run_algorithm, Algorithm, RunOptions};
use crate::{Error, Result};

/// Multiplier of `sqrt(n)` in the raw query tripwire for `sep-det` on grids.
pub const GRID_QUERY_FACTOR: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFamily {
    Grid,
    TriangulatedGrid,
    Path,
    Star,
    Tree,
    Complete,
}

impl GraphFamily {
    pub const ALL: [GraphFamily; 6] = [
        GraphFamily::Grid,
        GraphFamily::TriangulatedGrid,
        GraphFamily::Path,
        GraphFamily::Star,
        GraphFamily::Tree,
        GraphFamily::Complete,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GraphFamily::Grid => "grid",
            GraphFamily::TriangulatedGrid => "triangulated-grid",
            GraphFamily::Path => "path",
            GraphFamily::Star => "star",
            GraphFamily::Tree => "tree",
            GraphFamily::Complete => "complete",
        }
    }

    /// Square families take a side length, the others a vertex count.
    pub fn size_is_side(self) -> bool {
        matches!(self, GraphFamily::Grid | GraphFamily::TriangulatedGrid)
    }

    pub fn build(self, size: usize, seed: u64) -> Result<Graph> {
        match self {
            GraphFamily::Grid => grid(size, size),
            GraphFamily::TriangulatedGrid => triangulated_grid(size, size, seed),
            GraphFamily::Path => path(size),
            GraphFamily::Star => star(size),
            GraphFamily::Tree => random_tree(size, seed),
            GraphFamily::Complete => complete(size),
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GraphFamily::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown graph family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionFamily {
    Random,
    RowMajor,
    /// Manhattan distance to the middle cell.
    Valley,
    Staircase,
}

impl FunctionFamily {
    pub const ALL: [FunctionFamily; 4] = [
        FunctionFamily::Random,
        FunctionFamily::RowMajor,
        FunctionFamily::Valley,
        FunctionFamily::Staircase,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FunctionFamily::Random => "random",
            FunctionFamily::RowMajor => "row-major",
            FunctionFamily::Valley => "valley",
            FunctionFamily::Staircase => "staircase",
        }
    }

    pub fn build(self, g: &Graph, seed: u64) -> Result<ValueFunction> {
        match self {
            FunctionFamily::Random => Ok(random_values(g, seed)),
            FunctionFamily::RowMajor => row_major(g),
            FunctionFamily::Valley => {
                let layout = g
                    .grid_layout()
                    .ok_or_else(|| Error::invalid("valley values need a grid graph"))?;
                valley(g, (layout.rows() / 2, layout.cols() / 2))
            }
            FunctionFamily::Staircase => Ok(staircase_path(g, seed)),
        }
    }
}

impl fmt::Display for FunctionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FunctionFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FunctionFamily::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown value family {s:?}")))
    }
}

fn default_trials() -> usize {
    1
}

/// Experiment description, usually read from a JSON file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub family: GraphFamily,
    /// Side lengths for grid families, vertex counts otherwise.
    pub sizes: Vec<usize>,
    pub function: FunctionFamily,
    pub algorithms: Vec<Algorithm>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub inject_errors: bool,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: ExperimentConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        ExperimentConfig::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return Err(Error::invalid("sizes must be a non-empty list of positive integers"));
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if self.algorithms.is_empty() {
            return Err(Error::invalid("no algorithms selected"));
        }
        Ok(())
    }

    /// FNV-1a over the fields that determine results (the output path is
    /// left out).
    pub fn hash(&self) -> u64 {
        let mut key = self.clone();
        key.output = None;
        let text = serde_json::to_string(&key).expect("config serializes");
        text.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
        })
    }

    /// Cells in output order.
    pub fn cells(&self) -> Vec<CellKey> {
        let sizes: BTreeSet<usize> = self.sizes.iter().copied().collect();
        let algorithms: BTreeSet<Algorithm> = self.algorithms.iter().copied().collect();
        let mut cells = Vec::new();
        for &size in &sizes {
            for &algorithm in &algorithms {
                for trial in 0..self.trials {
                    cells.push(CellKey {
                        size,
                        algorithm,
                        trial,
                    });
                }
            }
        }
        cells
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellKey {
    pub size: usize,
    pub algorithm: Algorithm,
    pub trial: usize,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of the instance shared by every algorithm at `(size, trial)`.
pub fn instance_seed(base: u64, size: usize, trial: usize) -> u64 {
    splitmix(splitmix(splitmix(base) ^ size as u64) ^ trial as u64)
}

fn run_seed(instance: u64, algorithm: Algorithm) -> u64 {
    splitmix(instance ^ (algorithm as u64 + 1))
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub config_hash: String,
    pub family: GraphFamily,
    pub size: usize,
    pub n: usize,
    pub d: usize,
    pub g: u32,
    pub algorithm: Algorithm,
    pub trial: usize,
    pub seed: u64,
    pub vertex: usize,
    pub raw_queries: u64,
    pub modeled_cost: u64,
    pub depth: usize,
    pub steps: usize,
    pub success: bool,
    pub escaped: bool,
}

impl CellResult {
    pub fn key(&self) -> CellKey {
        CellKey {
            size: self.size,
            algorithm: self.algorithm,
            trial: self.trial,
        }
    }
}

/// Runs one cell; returns the row and its wall time in seconds.
pub fn run_cell(config: &ExperimentConfig, key: CellKey) -> Result<(CellResult, f64)> {
    let started = Instant::now();
    let instance = instance_seed(config.seed, key.size, key.trial);
    let g = config.family.build(key.size, instance)?;
    let f = config.function.build(&g, instance)?;
    let seed = run_seed(instance, key.algorithm);
    let options = RunOptions {
        seed,
        inject_errors: config.inject_errors,
        ..RunOptions::default()
    };
    let result = run_algorithm(&g, &f, key.algorithm, &options)?;
    let row = CellResult {
        config_hash: format!("{:016x}", config.hash()),
        family: config.family,
        size: key.size,
        n: g.order(),
        d: g.max_degree(),
        g: g.genus_bound(),
        algorithm: key.algorithm,
        trial: key.trial,
        seed,
        vertex: result.vertex,
        raw_queries: result.trace.totals.raw_queries,
        modeled_cost: result.trace.totals.modeled_cost,
        depth: result.trace.totals.depth,
        steps: result.trace.totals.steps,
        success: result.verified,
        escaped: result.trace.iterations.iter().any(|r| r.escaped),
    };
    Ok((row, started.elapsed().as_secs_f64()))
}

pub fn write_csv<W: Write>(rows: &[CellResult], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row).map_err(csv_error)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_csv(path: &Path) -> Result<Vec<CellResult>> {
    let mut reader = csv::Reader::from_path(path).map_err(csv_error)?;
    reader
        .deserialize()
        .enumerate()
        .map(|(i, row)| row.map_err(|e| Error::parse(i + 2, e.to_string())))
        .collect()
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::invalid(format!("csv: {other:?}")),
    }
}

/// Per `(size, algorithm)` statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupSummary {
    pub size: usize,
    pub algorithm: Algorithm,
    pub n: usize,
    pub d: usize,
    pub trials: usize,
    pub success_rate: f64,
    pub raw_queries_mean: f64,
    pub raw_queries_p95: f64,
    pub modeled_cost_mean: f64,
    pub modeled_cost_p95: f64,
    pub depth_mean: f64,
    /// `sqrt(n d)`, the randomized steepest descent reference.
    pub rsd_reference: f64,
    /// `n^(1/3) d^(1/6)`, the quantum steepest descent reference.
    pub qsd_reference: f64,
    /// Mean wall time of the cells run in this invocation; absent when
    /// every cell was resumed from disk.
    pub wall_seconds_mean: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingFit {
    pub algorithm: Algorithm,
    /// `raw_queries` or `modeled_cost`.
    pub metric: &'static str,
    pub exponent: f64,
    pub intercept: f64,
    pub residual: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub size: usize,
    pub trial: usize,
    pub raw_queries: u64,
    pub limit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub config_hash: String,
    pub cells: usize,
    pub resumed: usize,
    pub groups: Vec<GroupSummary>,
    pub fits: Vec<ScalingFit>,
    /// `sep-det` grid rows above `d + 60 sqrt(n)`.
    pub grid_query_violations: Vec<Violation>,
    pub wall_seconds: f64,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub rows: Vec<CellResult>,
    pub summary: Summary,
}

/// Runs every cell not already present in `previous` on `jobs` threads.
pub fn run_experiment(
    config: &ExperimentConfig,
    jobs: usize,
    previous: &[CellResult],
) -> Result<ExperimentOutcome> {
    config.validate()?;
    let started = Instant::now();
    let hash = format!("{:016x}", config.hash());
    let mut done: BTreeMap<CellKey, CellResult> = previous
        .iter()
        .filter(|r| r.config_hash == hash)
        .map(|r| (r.key(), r.clone()))
        .collect();
    let wanted = config.cells();
    done.retain(|k, _| wanted.contains(k));
    let resumed = done.len();
    let todo: Vec<CellKey> = wanted.into_iter().filter(|k| !done.contains_key(k)).collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    let fresh: Vec<(CellResult, f64)> =
        pool.install(|| todo.par_iter().map(|&k| run_cell(config, k)).collect::<Result<_>>())?;

    let mut wall: BTreeMap<(usize, Algorithm), Vec<f64>> = BTreeMap::new();
    for (row, secs) in fresh {
        wall.entry((row.size, row.algorithm)).or_default().push(secs);
        done.insert(row.key(), row);
    }
    let rows: Vec<CellResult> = done.into_values().collect();
    let summary = summarize(config, &rows, resumed, &wall, started.elapsed().as_secs_f64());
    Ok(ExperimentOutcome { rows, summary })
}

/// Like [`run_experiment`], resuming from and writing to `config.output`.
pub fn run_experiment_to_file(config: &ExperimentConfig, jobs: usize) -> Result<ExperimentOutcome> {
    let output = config
        .output
        .as_ref()
        .ok_or_else(|| Error::invalid("config has no output path"))?;
    let previous = if output.exists() { read_csv(output)? } else { Vec::new() };
    let outcome = run_experiment(config, jobs, &previous)?;
    write_csv(&outcome.rows, BufWriter::new(File::create(output)?))?;
    let summary_path = summary_path(output);
    let text = serde_json::to_string_pretty(&outcome.summary)?;
    std::fs::write(summary_path, text + "\n")?;
    Ok(outcome)
}

/// `results.csv` -> `results.summary.json`
pub fn summary_path(output: &Path) -> PathBuf {
    output.with_extension("summary.json")
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn summarize(
    config: &ExperimentConfig,
    rows: &[CellResult],
    resumed: usize,
    wall: &BTreeMap<(usize, Algorithm), Vec<f64>>,
    wall_seconds: f64,
) -> Summary {
    let mut grouped: BTreeMap<(usize, Algorithm), Vec<&CellResult>> = BTreeMap::new();
    for row in rows {
        grouped.entry((row.size, row.algorithm)).or_default().push(row);
    }
    let groups: Vec<GroupSummary> = grouped
        .iter()
        .map(|(&(size, algorithm), rows)| {
            let raw: Vec<f64> = rows.iter().map(|r| r.raw_queries as f64).collect();
            let modeled: Vec<f64> = rows.iter().map(|r| r.modeled_cost as f64).collect();
            let depth: Vec<f64> = rows.iter().map(|r| r.depth as f64).collect();
            let (n, d) = (rows[0].n, rows[0].d);
            GroupSummary {
                size,
                algorithm,
                n,
                d,
                trials: rows.len(),
                success_rate: rows.iter().filter(|r| r.success).count() as f64 / rows.len() as f64,
                raw_queries_mean: mean(&raw),
                raw_queries_p95: percentile(&raw, 0.95),
                modeled_cost_mean: mean(&modeled),
                modeled_cost_p95: percentile(&modeled, 0.95),
                depth_mean: mean(&depth),
                rsd_reference: ((n * d) as f64).sqrt(),
                qsd_reference: (n as f64).cbrt() * (d as f64).powf(1.0 / 6.0),
                wall_seconds_mean: wall.get(&(size, algorithm)).map(|w| mean(w)),
            }
        })
        .collect();

    let mut fits = Vec::new();
    let algorithms: BTreeSet<Algorithm> = groups.iter().map(|g| g.algorithm).collect();
    for algorithm in algorithms {
        let points: Vec<&GroupSummary> = groups.iter().filter(|g| g.algorithm == algorithm).collect();
        let xs: Vec<f64> = points.iter().map(|g| g.n as f64).collect();
        let metrics: [(&'static str, Vec<f64>); 2] = [
            ("raw_queries", points.iter().map(|g| g.raw_queries_mean).collect()),
            ("modeled_cost", points.iter().map(|g| g.modeled_cost_mean).collect()),
        ];
        for (metric, ys) in metrics {
            if let Ok(fit) = fit_power_law(&xs, &ys) {
                fits.push(ScalingFit {
                    algorithm,
                    metric,
                    exponent: fit.exponent,
                    intercept: fit.intercept,
                    residual: fit.residual,
                    points: fit.points,
                });
            }
        }
    }

    let grid_query_violations = if config.family == GraphFamily::Grid {
        rows.iter()
            .filter(|r| r.algorithm == Algorithm::SepDet)
            .filter_map(|r| {
                let limit = grid_query_limit(r.n, r.d);
                (r.raw_queries as f64 > limit).then_some(Violation {
                    size: r.size,
                    trial: r.trial,
                    raw_queries: r.raw_queries,
                    limit,
                })
            })
            .collect()
    } else {
        Vec::new()
    };

    Summary {
        config_hash: format!("{:016x}", config.hash()),
        cells: rows.len(),
        resumed,
        groups,
        fits,
        grid_query_violations,
        wall_seconds,
    }
}

/// `d + 60 sqrt(n)`.
pub fn grid_query_limit(n: usize, d: usize) -> f64 {
    d as f64 + GRID_QUERY_FACTOR * (n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> ExperimentConfig {
        ExperimentConfig::from_json(
            r#"{"family": "grid", "sizes": [4, 6, 8, 10], "function": "random",
                "algorithms": ["sep-det", "sd"], "trials": 3, "seed": 11}"#,
        )
        .unwrap()
    }

    #[test]
    fn config_parsing() {
        let c = config();
        assert_eq!(c.family, GraphFamily::Grid);
        assert_eq!(c.algorithms, vec![Algorithm::SepDet, Algorithm::SteepestDescent]);
        assert!(ExperimentConfig::from_json(r#"{"family": "grid", "sizes": [0], "function": "random", "algorithms": ["sd"]}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"family": "grid", "sizes": [3], "function": "random", "algorithms": ["qsd"]}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"family": "hypercube", "sizes": [3], "function": "random", "algorithms": ["sd"]}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"family": "grid", "sizes": [3], "function": "random", "algorithms": ["sd"], "trials": 0}"#).is_err());
    }

    #[test]
    fn hash_ignores_output_only() {
        let a = config();
        let mut b = a.clone();
        b.output = Some("x.csv".into());
        assert_eq!(a.hash(), b.hash());
        b.seed += 1;
        assert_ne!(a.hash(), b.hash());
    }

    #[test]
    fn results_do_not_depend_on_threads() {
        let c = config();
        let one = run_experiment(&c, 1, &[]).unwrap();
        let four = run_experiment(&c, 4, &[]).unwrap();
        assert_eq!(one.rows, four.rows);
        assert_eq!(one.rows.len(), 4 * 2 * 3);
        assert!(one.rows.iter().all(|r| r.success));
        let keys: Vec<_> = one.rows.iter().map(CellResult::key).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn resume_skips_finished_cells() {
        let c = config();
        let full = run_experiment(&c, 2, &[]).unwrap();
        let partial = &full.rows[..7];
        let resumed = run_experiment(&c, 2, partial).unwrap();
        assert_eq!(resumed.summary.resumed, 7);
        assert_eq!(resumed.rows, full.rows);
        // rows from another configuration are ignored
        let mut other = c.clone();
        other.seed = 99;
        let fresh = run_experiment(&other, 2, &full.rows).unwrap();
        assert_eq!(fresh.summary.resumed, 0);
    }

    #[test]
    fn csv_roundtrip_and_summary() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = config();
        c.output = Some(dir.path().join("out.csv"));
        let first = run_experiment_to_file(&c, 2).unwrap();
        let bytes = std::fs::read(c.output.as_ref().unwrap()).unwrap();
        assert_eq!(read_csv(c.output.as_ref().unwrap()).unwrap(), first.rows);
        let second = run_experiment_to_file(&c, 3).unwrap();
        assert_eq!(second.summary.resumed, first.rows.len());
        assert_eq!(std::fs::read(c.output.as_ref().unwrap()).unwrap(), bytes);
        let summary: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(summary_path(c.output.as_ref().unwrap())).unwrap(),
        )
        .unwrap();
        assert_eq!(summary["fits"].as_array().unwrap().len(), 4);
        assert!(summary["grid_query_violations"].as_array().unwrap().is_empty());
        let header = String::from_utf8(bytes).unwrap().lines().next().unwrap().to_string();
        assert!(header.starts_with("config_hash,family,size,n,d,g,algorithm,trial"));
    }

    #[test]
    fn family_sizes() {
        assert_eq!(GraphFamily::Grid.build(5, 0).unwrap().order(), 25);
        assert_eq!(GraphFamily::Tree.build(5, 0).unwrap().order(), 5);
        assert!(GraphFamily::Grid.build(0, 0).is_err());
        assert!(FunctionFamily::Valley.build(&path(4).unwrap(), 0).is_err());
    }
}
