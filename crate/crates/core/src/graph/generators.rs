//! Instance generators for the test and benchmark corpus.
//!
//! All planar families come with a rotation system and genus bound 0;
//! `grid` additionally carries its grid layout.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, VertexId};
use crate::{Error, Result};

fn require_positive(name: &str, value: usize) -> Result<()> {
    if value == 0 {
        Err(Error::invalid(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

/// Rotation system of a straight-line drawing: neighbors sorted by angle.
fn rotation_from_points(g: &Graph, points: &[(f64, f64)]) -> Vec<Vec<VertexId>> {
    (0..g.order())
        .map(|v| {
            let (x, y) = points[v];
            let mut rot = g.neighbors(v).to_vec();
            rot.sort_by(|&a, &b| {
                let ta = (points[a].1 - y).atan2(points[a].0 - x);
                let tb = (points[b].1 - y).atan2(points[b].0 - x);
                ta.total_cmp(&tb)
            });
            rot
        })
        .collect()
}

fn grid_points(rows: usize, cols: usize) -> Vec<(f64, f64)> {
    (0..rows * cols)
        .map(|v| ((v % cols) as f64, -((v / cols) as f64)))
        .collect()
}

fn grid_edges(rows: usize, cols: usize) -> Vec<(VertexId, VertexId)> {
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    edges
}

/// `rows x cols` grid, vertex `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    require_positive("rows", rows)?;
    require_positive("cols", cols)?;
    let g = Graph::from_edges(rows * cols, grid_edges(rows, cols), 0)?;
    let rotation = rotation_from_points(&g, &grid_points(rows, cols));
    g.with_rotation(rotation)?.with_grid_layout(rows, cols)
}

/// Grid with one diagonal per cell, the direction of each drawn from `seed`.
pub fn triangulated_grid(rows: usize, cols: usize, seed: u64) -> Result<Graph> {
    require_positive("rows", rows)?;
    require_positive("cols", cols)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = grid_edges(rows, cols);
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols.saturating_sub(1) {
            let v = r * cols + c;
            if rng.gen::<bool>() {
                edges.push((v, v + cols + 1));
            } else {
                edges.push((v + 1, v + cols));
            }
        }
    }
    let g = Graph::from_edges(rows * cols, edges, 0)?;
    let rotation = rotation_from_points(&g, &grid_points(rows, cols));
    g.with_rotation(rotation)
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Result<Graph> {
    require_positive("n", n)?;
    let g = Graph::from_edges(n, (1..n).map(|v| (v - 1, v)), 0)?;
    let rotation = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    g.with_rotation(rotation)
}

/// Star on `n` vertices: hub 0 joined to leaves `1..n`.
pub fn star(n: usize) -> Result<Graph> {
    require_positive("n", n)?;
    let g = Graph::from_edges(n, (1..n).map(|v| (0, v)), 0)?;
    let rotation = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    g.with_rotation(rotation)
}

/// Random recursive tree: vertex `v > 0` attaches to a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    require_positive("n", n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let g = Graph::from_edges(n, edges, 0)?;
    // every rotation system of a tree is planar
    let rotation = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    g.with_rotation(rotation)
}

/// Complete graph labeled with its orientable genus `ceil((n-3)(n-4)/12)`.
pub fn complete(n: usize) -> Result<Graph> {
    require_positive("n", n)?;
    let genus = if n >= 4 {
        ((n - 3) * (n - 4)).div_ceil(12) as u32
    } else {
        0
    };
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges, genus)
}
