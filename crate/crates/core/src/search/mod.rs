//! Local search algorithms.
//!
//! All algorithms take a [`CountingOracle`] and leave their query counts in
//! its ledgers. Results are re-checked with a fresh oracle afterwards, so
//! verification never shows up in the reported costs.
//!
//! Randomness comes from one seed per run. ChaCha stream 0 drives sampling
//! and stream 1 drives error injection.

mod descent;
mod minfind;
mod separator;

pub use descent::{randomized_steepest_descent, rsd_sample_size, steepest_descent, RsdMode};
pub use minfind::{argmin_det, argmin_quantum_sim, quantum_cost, repetitions, EXHAUSTIVE_LIMIT};
pub use separator::separator_local_search;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexId};
use crate::oracle::{verify_local_min, CountingOracle, ValueFunction};
use crate::separators::{AutoProvider, SeparatorProvider, Strategy};
use crate::{Error, Result};

pub(crate) const SAMPLING_STREAM: u64 = 0;
pub(crate) const INJECTION_STREAM: u64 = 1;

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// How the divide-and-conquer search finds minima of vertex sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum MinFinderSpec {
    /// Exhaustive search, charging one unit per element.
    Deterministic,
    /// Simulated quantum minimum finding with error probabilities from
    /// [`EpsilonSchedule`].
    QuantumCost { inject_errors: bool, seed: u64 },
}

/// Per-iteration error probabilities: `1/12` for the first iteration and
/// `1 / (12 log_{3/2} n)` for every later one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpsilonSchedule {
    pub eps1: f64,
    pub eps_rest: f64,
}

impl EpsilonSchedule {
    pub fn for_order(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!("epsilon schedule needs n >= 2, got {n}")));
        }
        Ok(EpsilonSchedule {
            eps1: 1.0 / 12.0,
            eps_rest: 1.0 / (12.0 * log_three_halves(n as f64)),
        })
    }

    /// Error probability for 1-based iteration `i`.
    pub fn at(&self, i: usize) -> f64 {
        if i <= 1 {
            self.eps1
        } else {
            self.eps_rest
        }
    }
}

pub fn log_three_halves(x: f64) -> f64 {
    x.ln() / 1.5f64.ln()
}

/// `ceil(log_{3/2} n)`, the depth allowed for a divide-and-conquer run.
pub fn depth_bound(n: usize) -> usize {
    if n <= 1 {
        return 0;
    }
    // smallest j with 1.5^j >= n, computed without rounding trouble
    let mut j = 0;
    let mut reach = 1.0f64;
    while reach < n as f64 {
        reach *= 1.5;
        j += 1;
    }
    j
}

/// One iteration of the separator search. Vertex ids are ids of the input
/// graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationRecord {
    pub iteration: usize,
    /// `|V^(i-1)|`, the order of the subgraph being separated.
    pub subgraph_order: usize,
    pub subgraph_max_degree: usize,
    pub strategy: Strategy,
    pub separator: Vec<VertexId>,
    pub separator_size: usize,
    /// Vertices added by the high-degree augmentation.
    pub high_degree: usize,
    pub m: VertexId,
    pub z: Option<VertexId>,
    pub v: VertexId,
    /// `|V^(i)|`; `None` on the final iteration.
    pub next_order: Option<usize>,
    /// Maximum degree of the subgraph with the separator removed.
    pub residual_max_degree: usize,
    /// Error probability used by the min-finder, absent for exhaustive search.
    pub epsilon: Option<f64>,
    pub cost_separator: u64,
    pub cost_neighbors: u64,
    pub cost_select: u64,
    /// Modeled cost charged during the iteration.
    pub cost: u64,
    /// Distinct new vertices queried during the iteration.
    pub raw_queries: u64,
    /// The chosen vertex sat in the separator without being its minimum.
    pub escaped: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub raw_queries: u64,
    pub modeled_cost: u64,
    /// Iterations of the separator search.
    pub depth: usize,
    /// Descent moves.
    pub steps: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RunTrace {
    pub iterations: Vec<IterationRecord>,
    pub totals: Totals,
}

impl RunTrace {
    /// JSON lines: one `"kind": "iteration"` record each, then `"kind": "totals"`.
    pub fn write_json_lines<W: Write>(&self, mut out: W) -> Result<()> {
        for record in &self.iterations {
            let mut value = serde_json::to_value(record)?;
            value["kind"] = "iteration".into();
            writeln!(out, "{value}")?;
        }
        let mut value = serde_json::to_value(self.totals)?;
        value["kind"] = "totals".into();
        writeln!(out, "{value}")?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub vertex: VertexId,
    /// Outcome of an independent local-minimum check.
    pub verified: bool,
    pub trace: RunTrace,
}

impl SearchResult {
    pub(crate) fn finish(
        g: &Graph,
        oracle: &CountingOracle<'_>,
        vertex: VertexId,
        mut trace: RunTrace,
    ) -> Result<Self> {
        trace.totals.raw_queries = oracle.raw_queries();
        trace.totals.modeled_cost = oracle.modeled_cost();
        let verified = verify_local_min(g, oracle.function(), vertex)?;
        Ok(SearchResult {
            vertex,
            verified,
            trace,
        })
    }
}

/// Algorithm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "sd")]
    SteepestDescent,
    #[serde(rename = "rsd")]
    Rsd,
    #[serde(rename = "rsd-converge")]
    RsdConverge,
    #[serde(rename = "sep-det")]
    SepDet,
    #[serde(rename = "sep-quantum")]
    SepQuantum,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::SteepestDescent,
        Algorithm::Rsd,
        Algorithm::RsdConverge,
        Algorithm::SepDet,
        Algorithm::SepQuantum,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::SteepestDescent => "sd",
            Algorithm::Rsd => "rsd",
            Algorithm::RsdConverge => "rsd-converge",
            Algorithm::SepDet => "sep-det",
            Algorithm::SepQuantum => "sep-quantum",
        }
    }

    /// Whether every run must end in a local minimum.
    pub fn always_verified(self) -> bool {
        matches!(
            self,
            Algorithm::SteepestDescent | Algorithm::RsdConverge | Algorithm::SepDet
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown algorithm {s:?}")))
    }
}

/// Knobs for [`run_algorithm`].
#[derive(Clone, Copy)]
pub struct RunOptions<'p> {
    pub seed: u64,
    pub inject_errors: bool,
    /// Start vertex for `sd`; vertex 0 when absent.
    pub start: Option<VertexId>,
    pub provider: &'p dyn SeparatorProvider,
}

impl Default for RunOptions<'_> {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            inject_errors: false,
            start: None,
            provider: &AutoProvider,
        }
    }
}

/// Runs `algorithm` on `(g, f)` with a fresh oracle.
pub fn run_algorithm(
    g: &Graph,
    f: &ValueFunction,
    algorithm: Algorithm,
    options: &RunOptions<'_>,
) -> Result<SearchResult> {
    f.check_domain(g)?;
    let mut oracle = CountingOracle::new(f);
    match algorithm {
        Algorithm::SteepestDescent => {
            steepest_descent(g, &mut oracle, options.start.unwrap_or(0), None)
        }
        Algorithm::Rsd => {
            randomized_steepest_descent(g, &mut oracle, options.seed, RsdMode::Capped)
        }
        Algorithm::RsdConverge => {
            randomized_steepest_descent(g, &mut oracle, options.seed, RsdMode::RunToConvergence)
        }
        Algorithm::SepDet => separator_local_search(
            g,
            &mut oracle,
            options.provider,
            MinFinderSpec::Deterministic,
        ),
        Algorithm::SepQuantum => separator_local_search(
            g,
            &mut oracle,
            options.provider,
            MinFinderSpec::QuantumCost {
                inject_errors: options.inject_errors,
                seed: options.seed,
            },
        ),
    }
}
