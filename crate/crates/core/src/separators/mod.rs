//! Vertex separators.
//!
//! A separator of an `n`-vertex graph is a vertex set whose removal leaves
//! no connected component with more than `floor(2n/3)` vertices. Every
//! provider here returns a [`Separator`] carrying its own certificate (the
//! component sizes after removal) and the size bound it was measured
//! against.

mod bfs;
mod bounds;
mod centroid;
mod grid;
mod levels;
mod planar;
mod strong;

pub use bfs::bfs_fallback_separator;
pub use bounds::{ght_size_bound, high_degree_bound, strong_size_bound};
pub use centroid::tree_centroid_separator;
pub use grid::grid_separator;
pub use planar::planar_separator;
pub use strong::{high_degree_vertices, residual_max_degree, strongify, StrongSeparator};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexId};
use crate::{Error, Result};

/// Which construction produced a separator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Grid,
    Centroid,
    Planar,
    BfsFallback,
    Trivial,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::Grid,
        Strategy::Centroid,
        Strategy::Planar,
        Strategy::BfsFallback,
        Strategy::Trivial,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Grid => "grid",
            Strategy::Centroid => "centroid",
            Strategy::Planar => "planar",
            Strategy::BfsFallback => "bfs-fallback",
            Strategy::Trivial => "trivial",
        }
    }

    /// Whether the construction provably stays within the general size
    /// bound on the inputs it accepts.
    pub fn guarantees_bound(self) -> bool {
        matches!(self, Strategy::Grid | Strategy::Centroid | Strategy::Trivial)
    }

    /// Whether this strategy's precondition holds for `g`.
    pub fn applies_to(self, g: &Graph) -> bool {
        match self {
            Strategy::Trivial => g.order() <= 2,
            Strategy::Grid => g.grid_layout().is_some(),
            Strategy::Centroid => g.is_tree(),
            Strategy::Planar => g.has_embedding() && g.genus_bound() == 0,
            Strategy::BfsFallback => g.is_connected(),
        }
    }

    pub fn separate(self, g: &Graph) -> Result<Separator> {
        match self {
            Strategy::Grid => grid_separator(g),
            Strategy::Centroid => tree_centroid_separator(g),
            Strategy::Planar => planar_separator(g),
            Strategy::BfsFallback => bfs_fallback_separator(g),
            Strategy::Trivial => trivial_separator(g),
        }
    }

    /// Automatic choice: trivial for tiny graphs, then grid, tree, planar
    /// embedding, and finally the BFS fallback.
    pub fn select(g: &Graph) -> Strategy {
        if g.order() <= 2 {
            Strategy::Trivial
        } else if g.grid_layout().is_some() {
            Strategy::Grid
        } else if g.is_tree() {
            Strategy::Centroid
        } else if g.has_embedding() && g.genus_bound() == 0 {
            Strategy::Planar
        } else {
            Strategy::BfsFallback
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown separator strategy {s:?}")))
    }
}

/// A vertex separator with its certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Separator {
    pub strategy: Strategy,
    /// Separator vertices, ascending.
    pub vertices: Vec<VertexId>,
    /// Sizes of the components left after removal, descending.
    pub component_sizes: Vec<usize>,
    /// General size bound evaluated at this graph's order and genus bound.
    pub size_bound: f64,
    pub met_bound: bool,
    pub guaranteed: bool,
}

impl Separator {
    /// Computes the certificate for `vertices` on `g`.
    pub fn certify(g: &Graph, strategy: Strategy, mut vertices: Vec<VertexId>) -> Separator {
        vertices.sort_unstable();
        vertices.dedup();
        let component_sizes = residual_component_sizes(g, &vertices);
        let size_bound = ght_size_bound(g.order().max(1), g.genus_bound());
        Separator {
            strategy,
            met_bound: vertices.len() as f64 <= size_bound,
            vertices,
            component_sizes,
            size_bound,
            guaranteed: strategy.guarantees_bound(),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn largest_component(&self) -> usize {
        self.component_sizes.first().copied().unwrap_or(0)
    }

    /// Re-derives the certificate and checks the balance condition.
    pub fn verify(&self, g: &Graph) -> bool {
        residual_component_sizes(g, &self.vertices) == self.component_sizes
            && validate_separator(g, &self.vertices)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("separator serializes")
    }
}

/// Largest component size allowed for an `n`-vertex graph.
pub fn component_limit(n: usize) -> usize {
    2 * n / 3
}

fn residual_component_sizes(g: &Graph, vertices: &[VertexId]) -> Vec<usize> {
    let mut removed = vec![false; g.order()];
    for &v in vertices {
        if v < removed.len() {
            removed[v] = true;
        }
    }
    let mut sizes: Vec<usize> = g
        .components_avoiding(&removed)
        .iter()
        .map(Vec::len)
        .collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// True iff no component of `g - c` has more than `floor(2n/3)` vertices.
/// Vertices outside the graph make the set invalid.
pub fn validate_separator(g: &Graph, c: &[VertexId]) -> bool {
    if c.iter().any(|&v| v >= g.order()) {
        return false;
    }
    residual_component_sizes(g, c)
        .first()
        .is_none_or(|&largest| largest <= component_limit(g.order()))
}

/// Every vertex of a graph with at most two vertices.
pub fn trivial_separator(g: &Graph) -> Result<Separator> {
    if g.order() > 2 {
        return Err(Error::invalid(format!(
            "trivial separator needs at most 2 vertices, got {}",
            g.order()
        )));
    }
    Ok(Separator::certify(g, Strategy::Trivial, (0..g.order()).collect()))
}

/// Source of separators for the divide-and-conquer search.
pub trait SeparatorProvider: Send + Sync {
    fn name(&self) -> &str;

    fn applies_to(&self, g: &Graph) -> bool;

    /// Must return a set passing [`validate_separator`] on `g`.
    fn separate(&self, g: &Graph) -> Result<Separator>;
}

impl SeparatorProvider for Strategy {
    fn name(&self) -> &str {
        self.as_str()
    }

    fn applies_to(&self, g: &Graph) -> bool {
        Strategy::applies_to(*self, g)
    }

    fn separate(&self, g: &Graph) -> Result<Separator> {
        Strategy::separate(*self, g)
    }
}

/// Picks a strategy per graph with [`Strategy::select`].
#[derive(Debug, Clone, Copy, Default)]
pub struct AutoProvider;

impl SeparatorProvider for AutoProvider {
    fn name(&self) -> &str {
        "auto"
    }

    fn applies_to(&self, _g: &Graph) -> bool {
        true
    }

    fn separate(&self, g: &Graph) -> Result<Separator> {
        Strategy::select(g).separate(g)
    }
}

/// Applies `separate_connected` to the component holding more than
/// `2n/3` vertices, if any; otherwise the empty set already separates.
pub(crate) fn separate_heavy_component(
    g: &Graph,
    separate_connected: impl Fn(&Graph) -> Vec<VertexId>,
) -> Result<Vec<VertexId>> {
    let limit = component_limit(g.order());
    let components = g.connected_components();
    let Some(heavy) = components.into_iter().find(|c| c.len() > limit) else {
        return Ok(Vec::new());
    };
    if heavy.len() == g.order() {
        return Ok(separate_connected(g));
    }
    let view = g.induced_subgraph(&heavy)?;
    Ok(separate_connected(view.graph())
        .into_iter()
        .map(|v| view.to_parent(v))
        .collect())
}
