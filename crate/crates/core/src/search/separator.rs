use rand_chacha::ChaCha8Rng;

use super::{
    argmin_det, argmin_quantum_sim, stream_rng, EpsilonSchedule, IterationRecord, MinFinderSpec,
    RunTrace, SearchResult, INJECTION_STREAM,
};
use crate::graph::{Graph, VertexId};
use crate::oracle::CountingOracle;
use crate::separators::{residual_max_degree, strongify, trivial_separator, SeparatorProvider};
use crate::{Error, Result};

/// The min-finder used in one iteration.
struct Finder<'r> {
    eps: Option<f64>,
    inject: bool,
    rng: &'r mut ChaCha8Rng,
}

impl Finder<'_> {
    fn argmin(&mut self, oracle: &mut CountingOracle<'_>, s: &[VertexId]) -> Result<Option<VertexId>> {
        match self.eps {
            None => argmin_det(oracle, s),
            Some(eps) => argmin_quantum_sim(oracle, s, eps, self.inject, self.rng),
        }
    }
}

/// Divide-and-conquer local search over separators.
///
/// Each iteration separates the current subgraph (every vertex when it has
/// at most two, otherwise the provider's set plus all vertices of degree
/// above `sqrt(n_i)`), finds the separator minimum `m` and its best
/// neighbor `z`, and keeps the best of the running candidate, `m` and `z`.
/// The search stops when that is `m`, and otherwise continues in the
/// component holding the candidate.
pub fn separator_local_search(
    g: &Graph,
    oracle: &mut CountingOracle<'_>,
    provider: &dyn SeparatorProvider,
    spec: MinFinderSpec,
) -> Result<SearchResult> {
    let n = g.order();
    if n == 0 {
        return Err(Error::invalid("graph is empty"));
    }
    if !g.is_connected() {
        return Err(Error::invalid(
            "separator search needs a connected graph; run it per component",
        ));
    }
    if oracle.domain_size() != n {
        return Err(Error::invalid("oracle domain does not match the graph"));
    }
    let (schedule, inject, seed) = match spec {
        MinFinderSpec::Deterministic => (None, false, 0),
        MinFinderSpec::QuantumCost {
            inject_errors,
            seed,
        } => {
            // a single vertex never reaches the quantum branch
            let schedule = if n >= 2 { Some(EpsilonSchedule::for_order(n)?) } else { None };
            (schedule, inject_errors, seed)
        }
    };
    let mut rng = stream_rng(seed, INJECTION_STREAM);

    let mut trace = RunTrace::default();
    let mut current: Vec<VertexId> = (0..n).collect();
    let mut candidate: VertexId = 0;
    loop {
        let iteration = trace.iterations.len() + 1;
        let view = g.induced_subgraph(&current)?;
        let local = view.graph();
        let (strategy, c_local, high_degree) = if local.order() <= 2 {
            let sep = trivial_separator(local)?;
            (sep.strategy, sep.vertices, 0)
        } else {
            let strong = strongify(local, provider.separate(local)?)?;
            (
                strong.separator.strategy,
                strong.separator.vertices,
                strong.high_degree.len(),
            )
        };
        let separator: Vec<VertexId> = c_local.iter().map(|&v| view.to_parent(v)).collect();

        let eps = schedule.map(|s| s.at(iteration));
        let mut finder = Finder {
            eps,
            inject,
            rng: &mut rng,
        };
        let cost_before = oracle.modeled_cost();
        let raw_before = oracle.raw_queries();

        let m = finder
            .argmin(oracle, &separator)?
            .ok_or_else(|| Error::invalid(format!("{} returned an empty separator", provider.name())))?;
        let cost_separator = oracle.modeled_cost() - cost_before;

        let neighbors = view.neighbors_of(m)?;
        let z = finder.argmin(oracle, &neighbors)?;
        let cost_neighbors = oracle.modeled_cost() - cost_before - cost_separator;

        let mut contenders = vec![candidate, m];
        contenders.extend(z);
        contenders.sort_unstable();
        contenders.dedup();
        let v = argmin_det(oracle, &contenders)?.expect("contenders are non-empty");
        let cost_select = contenders.len() as u64;

        let mut record = IterationRecord {
            iteration,
            subgraph_order: current.len(),
            subgraph_max_degree: local.max_degree(),
            strategy,
            separator_size: separator.len(),
            separator,
            high_degree,
            m,
            z,
            v,
            next_order: None,
            residual_max_degree: residual_max_degree(local, &c_local),
            epsilon: eps,
            cost_separator,
            cost_neighbors,
            cost_select,
            cost: oracle.modeled_cost() - cost_before,
            raw_queries: oracle.raw_queries() - raw_before,
            escaped: false,
        };

        if v == m {
            trace.iterations.push(record);
            break;
        }
        let local_v = view.to_local(v).expect("candidate lies in the current subgraph");
        let mut removed = vec![false; local.order()];
        for &c in &c_local {
            removed[c] = true;
        }
        if removed[local_v] {
            // only reachable through a faulty min-finder answer
            record.escaped = true;
            trace.iterations.push(record);
            candidate = v;
            break;
        }
        let next = local
            .components_avoiding(&removed)
            .into_iter()
            .find(|part| part.binary_search(&local_v).is_ok())
            .expect("every remaining vertex has a component");
        current = next.into_iter().map(|w| view.to_parent(w)).collect();
        record.next_order = Some(current.len());
        trace.iterations.push(record);
        candidate = v;
    }
    trace.totals.depth = trace.iterations.len();
    let vertex = trace.iterations.last().map(|r| r.v).unwrap_or(candidate);
    SearchResult::finish(g, oracle, vertex, trace)
}
