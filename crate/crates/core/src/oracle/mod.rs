//! Query access to the value function.
//!
//! Every comparison in the crate goes through [`OrderKey`], the pair
//! `(f(v), v)` ordered lexicographically, so values are effectively distinct.

mod functions;
mod io;

pub use functions::{random_values, row_major, staircase_order, staircase_path, valley};
pub use io::{parse_values, read_values, write_values};

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexId};
use crate::{Error, Result};

/// `(f(v), v)`; the derived order compares value first, then vertex id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrderKey {
    pub value: u64,
    pub vertex: VertexId,
}

impl OrderKey {
    pub fn new(value: u64, vertex: VertexId) -> Self {
        OrderKey { value, vertex }
    }
}

/// Total map from vertices `0..n` to non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueFunction {
    values: Vec<u64>,
}

impl ValueFunction {
    pub fn new(values: Vec<u64>) -> Self {
        ValueFunction { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, v: VertexId) -> Option<u64> {
        self.values.get(v).copied()
    }

    pub fn key(&self, v: VertexId) -> Option<OrderKey> {
        self.value(v).map(|value| OrderKey::new(value, v))
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Errors unless the function is defined on exactly the vertices of `g`.
    pub fn check_domain(&self, g: &Graph) -> Result<()> {
        if self.len() == g.order() {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "value function covers {} vertices but the graph has {}",
                self.len(),
                g.order()
            )))
        }
    }
}

/// Memoizing query counter around a [`ValueFunction`].
///
/// `raw_queries` counts distinct vertices queried. `modeled_cost` is the
/// charged cost under the min-finder cost model and is only written by the
/// min-finders in [`crate::search`].
#[derive(Debug, Clone)]
pub struct CountingOracle<'f> {
    function: &'f ValueFunction,
    answered: Vec<bool>,
    raw_queries: u64,
    modeled_cost: u64,
}

impl<'f> CountingOracle<'f> {
    pub fn new(function: &'f ValueFunction) -> Self {
        CountingOracle {
            function,
            answered: vec![false; function.len()],
            raw_queries: 0,
            modeled_cost: 0,
        }
    }

    /// A fresh oracle over the same function with empty ledgers, used for
    /// post-hoc verification so it never pollutes the algorithm's counts.
    pub fn verifier(&self) -> CountingOracle<'f> {
        CountingOracle::new(self.function)
    }

    pub fn function(&self) -> &'f ValueFunction {
        self.function
    }

    pub fn domain_size(&self) -> usize {
        self.function.len()
    }

    pub fn query(&mut self, v: VertexId) -> Result<OrderKey> {
        let key = self.function.key(v).ok_or(Error::VertexOutOfRange {
            vertex: v,
            order: self.function.len(),
        })?;
        if !self.answered[v] {
            self.answered[v] = true;
            self.raw_queries += 1;
        }
        Ok(key)
    }

    /// Reads a key without touching either ledger. Used by simulated
    /// subroutines whose cost is charged separately.
    pub(crate) fn peek(&self, v: VertexId) -> Result<OrderKey> {
        self.function.key(v).ok_or(Error::VertexOutOfRange {
            vertex: v,
            order: self.function.len(),
        })
    }

    pub fn was_queried(&self, v: VertexId) -> bool {
        self.answered.get(v).copied().unwrap_or(false)
    }

    pub fn raw_queries(&self) -> u64 {
        self.raw_queries
    }

    pub fn modeled_cost(&self) -> u64 {
        self.modeled_cost
    }

    pub(crate) fn charge(&mut self, cost: u64) {
        self.modeled_cost += cost;
    }
}

/// Keys of a vertex and all of its neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalMinCertificate {
    pub vertex: VertexId,
    pub key: OrderKey,
    pub neighbors: Vec<OrderKey>,
}

impl LocalMinCertificate {
    pub fn is_local_min(&self) -> bool {
        self.neighbors.iter().all(|k| self.key <= *k)
    }

    /// `{vertex, value, neighbors: [{id, value}]}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertex": self.vertex,
            "value": self.key.value,
            "neighbors": self
                .neighbors
                .iter()
                .map(|k| serde_json::json!({ "id": k.vertex, "value": k.value }))
                .collect::<Vec<_>>(),
        })
    }
}

/// Queries `v` and all its neighbors; true iff `v`'s key is no larger than
/// any neighbor's.
pub fn is_local_min(
    g: &Graph,
    oracle: &mut CountingOracle<'_>,
    v: VertexId,
) -> Result<(bool, LocalMinCertificate)> {
    let neighbors = g.checked_neighbors(v)?;
    let key = oracle.query(v)?;
    let neighbors = neighbors
        .iter()
        .map(|&w| oracle.query(w))
        .collect::<Result<Vec<_>>>()?;
    let certificate = LocalMinCertificate {
        vertex: v,
        key,
        neighbors,
    };
    Ok((certificate.is_local_min(), certificate))
}

/// Checks `v` with a fresh oracle so the caller's ledgers stay untouched.
pub fn verify_local_min(g: &Graph, f: &ValueFunction, v: VertexId) -> Result<bool> {
    f.check_domain(g)?;
    let mut oracle = CountingOracle::new(f);
    is_local_min(g, &mut oracle, v).map(|(ok, _)| ok)
}

/// Vertex of globally minimal key; always a local minimum.
pub fn brute_force_local_min(g: &Graph, f: &ValueFunction) -> Result<VertexId> {
    f.check_domain(g)?;
    (0..g.order())
        .filter_map(|v| f.key(v))
        .min()
        .map(|k| k.vertex)
        .ok_or_else(|| Error::invalid("graph is empty"))
}
