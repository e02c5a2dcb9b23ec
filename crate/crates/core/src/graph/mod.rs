//! Undirected simple graphs with optional planar embedding and grid layout.

mod generators;
mod io;
mod view;

pub use generators::{complete, grid, path, random_tree, star, triangulated_grid};
pub use io::{parse_graph, read_graph, write_graph};
pub use view::SubgraphView;

use std::collections::VecDeque;

use crate::{Error, Result};

/// Dense vertex index in `0..n`.
pub type VertexId = usize;

/// Row/column coordinates of every vertex of a grid-embedded graph.
///
/// Edges of a graph carrying a layout only join vertices whose coordinates
/// differ by at most one in each axis, so any full row or column is a cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridLayout {
    rows: usize,
    cols: usize,
    coords: Vec<(usize, usize)>,
}

impl GridLayout {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn coords(&self, v: VertexId) -> (usize, usize) {
        self.coords[v]
    }

    /// True when every cell of the `rows x cols` rectangle is present.
    pub fn is_full(&self) -> bool {
        self.coords.len() == self.rows * self.cols
    }

    pub(crate) fn restrict(&self, vertices: &[VertexId]) -> GridLayout {
        GridLayout {
            rows: self.rows,
            cols: self.cols,
            coords: vertices.iter().map(|&v| self.coords[v]).collect(),
        }
    }
}

/// Immutable undirected simple graph.
///
/// Adjacency lists are sorted ascending. The genus bound is declared by the
/// caller and never computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<VertexId>>,
    edge_count: usize,
    genus_bound: u32,
    rotation: Option<Vec<Vec<VertexId>>>,
    layout: Option<GridLayout>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicate
    /// edges and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I, genus_bound: u32) -> Result<Graph>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut degree_sum = 0;
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("duplicate edge {{{v}, {}}}", w[0])));
            }
            degree_sum += list.len();
        }
        Ok(Graph {
            adjacency,
            edge_count: degree_sum / 2,
            genus_bound,
            rotation: None,
            layout: None,
        })
    }

    /// Attaches a rotation system: for each vertex, a cyclic order of its
    /// neighbors. Each rotation must be a permutation of the adjacency list.
    pub fn with_rotation(mut self, rotation: Vec<Vec<VertexId>>) -> Result<Graph> {
        if rotation.len() != self.order() {
            return Err(Error::invalid(format!(
                "rotation system has {} entries for {} vertices",
                rotation.len(),
                self.order()
            )));
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != self.adjacency[v] {
                return Err(Error::invalid(format!(
                    "rotation of vertex {v} is not a permutation of its neighbors"
                )));
            }
        }
        self.rotation = Some(rotation);
        Ok(self)
    }

    /// Labels the graph as embedded in a `rows x cols` grid, vertex `v` at
    /// `(v / cols, v % cols)`. Every edge must join grid-adjacent cells
    /// (diagonals allowed).
    pub fn with_grid_layout(mut self, rows: usize, cols: usize) -> Result<Graph> {
        if rows * cols != self.order() {
            return Err(Error::invalid(format!(
                "grid {rows}x{cols} does not match {} vertices",
                self.order()
            )));
        }
        let coords: Vec<_> = (0..self.order()).map(|v| (v / cols, v % cols)).collect();
        for (u, v) in self.edges() {
            let (a, b) = (coords[u], coords[v]);
            if a.0.abs_diff(b.0) > 1 || a.1.abs_diff(b.1) > 1 {
                return Err(Error::invalid(format!(
                    "edge {{{u}, {v}}} joins non-adjacent grid cells"
                )));
            }
        }
        self.layout = Some(GridLayout { rows, cols, coords });
        Ok(self)
    }

    pub(crate) fn from_parts(
        adjacency: Vec<Vec<VertexId>>,
        genus_bound: u32,
        rotation: Option<Vec<Vec<VertexId>>>,
        layout: Option<GridLayout>,
    ) -> Graph {
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            adjacency,
            edge_count,
            genus_bound,
            rotation,
            layout,
        }
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn genus_bound(&self) -> u32 {
        self.genus_bound
    }

    /// Neighbors of `v` in ascending order. Panics if `v` is out of range.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn checked_neighbors(&self, v: VertexId) -> Result<&[VertexId]> {
        self.check_vertex(v)?;
        Ok(&self.adjacency[v])
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    /// Maximum degree; zero for empty or edgeless graphs.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.order() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn rotation(&self, v: VertexId) -> Option<&[VertexId]> {
        self.rotation.as_ref().map(|r| r[v].as_slice())
    }

    pub fn has_embedding(&self) -> bool {
        self.rotation.is_some()
    }

    pub fn grid_layout(&self) -> Option<&GridLayout> {
        self.layout.as_ref()
    }

    /// Edge-count gate for the declared genus: `|E| <= 3n - 6 + 2g`.
    ///
    /// Only defined for `n >= 3`.
    pub fn check_edge_bound(&self) -> Result<bool> {
        let n = self.order();
        if n < 3 {
            return Err(Error::invalid(format!(
                "edge bound is stated for n >= 3, got n = {n}"
            )));
        }
        let bound = 3 * n as u64 - 6 + 2 * u64::from(self.genus_bound);
        Ok(self.edge_count as u64 <= bound)
    }

    /// Re-checks simplicity, symmetry and the rotation system over all edges.
    pub fn validate(&self) -> Result<()> {
        for (v, list) in self.adjacency.iter().enumerate() {
            for pair in list.windows(2) {
                if pair[0] >= pair[1] {
                    return Err(Error::invalid(format!(
                        "adjacency of {v} is not strictly increasing"
                    )));
                }
            }
            for &w in list {
                if w == v {
                    return Err(Error::invalid(format!("self-loop at vertex {v}")));
                }
                if !self.has_edge(w, v) {
                    return Err(Error::invalid(format!("edge {v}->{w} has no reverse")));
                }
            }
        }
        if let Some(rotation) = &self.rotation {
            for (v, rot) in rotation.iter().enumerate() {
                let mut sorted = rot.clone();
                sorted.sort_unstable();
                if sorted != self.adjacency[v] {
                    return Err(Error::invalid(format!(
                        "rotation of vertex {v} is not a permutation of its neighbors"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        self.components_avoiding(&vec![false; self.order()])
    }

    /// Components of the graph after deleting every vertex flagged in
    /// `removed`.
    pub fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<VertexId>> {
        let n = self.order();
        let mut seen = removed.to_vec();
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut part = Vec::new();
            while let Some(u) = queue.pop_front() {
                part.push(u);
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            part.sort_unstable();
            components.push(part);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.edge_count + 1 == self.order() && self.is_connected()
    }

    /// BFS distances from `root`; unreachable vertices get `None`.
    pub fn bfs_levels(&self, root: VertexId) -> Vec<Option<usize>> {
        let mut level = vec![None; self.order()];
        level[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let next = level[u].map(|l| l + 1);
            for &w in &self.adjacency[u] {
                if level[w].is_none() {
                    level[w] = next;
                    queue.push_back(w);
                }
            }
        }
        level
    }

    /// View of the subgraph induced by `vertices` (deduplicated).
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> Result<SubgraphView<'_>> {
        SubgraphView::new(self, vertices)
    }
}
