use rand::Rng;

use super::{argmin_det, stream_rng, RunTrace, SearchResult, SAMPLING_STREAM};
use crate::graph::{Graph, VertexId};
use crate::oracle::CountingOracle;
use crate::{Error, Result};

/// Walks to the smallest neighbor while it beats the current vertex. With a
/// cap the walk stops after `cap` moves even if it could continue.
pub fn steepest_descent(
    g: &Graph,
    oracle: &mut CountingOracle<'_>,
    start: VertexId,
    cap: Option<usize>,
) -> Result<SearchResult> {
    let (vertex, steps) = descend(g, oracle, start, cap)?;
    let mut trace = RunTrace::default();
    trace.totals.steps = steps;
    SearchResult::finish(g, oracle, vertex, trace)
}

fn descend(
    g: &Graph,
    oracle: &mut CountingOracle<'_>,
    start: VertexId,
    cap: Option<usize>,
) -> Result<(VertexId, usize)> {
    g.check_vertex(start)?;
    let mut current = start;
    let mut key = oracle.query(current)?;
    let mut steps = 0;
    while cap.is_none_or(|c| steps < c) {
        let Some(best) = argmin_det(oracle, g.neighbors(current))? else {
            break;
        };
        let best_key = oracle.query(best)?;
        if best_key >= key {
            break;
        }
        current = best;
        key = best_key;
        steps += 1;
    }
    Ok((current, steps))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsdMode {
    /// At most `s` descent moves; the result may not be a local minimum.
    Capped,
    RunToConvergence,
}

/// `ceil(sqrt(n d))`, with `d` taken as at least 1.
pub fn rsd_sample_size(n: usize, max_degree: usize) -> usize {
    let x = (n * max_degree.max(1)) as u64;
    let r = x.isqrt();
    (if r * r == x { r } else { r + 1 }) as usize
}

/// Samples `s = ceil(sqrt(n d))` vertices uniformly with replacement, then
/// descends from the best sample.
pub fn randomized_steepest_descent(
    g: &Graph,
    oracle: &mut CountingOracle<'_>,
    seed: u64,
    mode: RsdMode,
) -> Result<SearchResult> {
    let n = g.order();
    if n == 0 {
        return Err(Error::invalid("graph is empty"));
    }
    let s = rsd_sample_size(n, g.max_degree());
    let mut rng = stream_rng(seed, SAMPLING_STREAM);
    let sample: Vec<VertexId> = (0..s).map(|_| rng.gen_range(0..n)).collect();
    let start = argmin_det(oracle, &sample)?.expect("sample is non-empty");
    let cap = match mode {
        RsdMode::Capped => Some(s),
        RsdMode::RunToConvergence => None,
    };
    let (vertex, steps) = descend(g, oracle, start, cap)?;
    let mut trace = RunTrace::default();
    trace.totals.steps = steps;
    SearchResult::finish(g, oracle, vertex, trace)
}
