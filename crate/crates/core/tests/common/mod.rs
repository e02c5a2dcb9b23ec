//! Shared instance corpus and reference checks for the integration tests.

#![allow(dead_code)]

use sepsearch::graph::{complete, grid, path, random_tree, star, triangulated_grid, Graph};
use sepsearch::oracle::{random_values, row_major, staircase_path, valley, ValueFunction};

pub struct Instance {
    pub name: String,
    pub graph: Graph,
    pub values: ValueFunction,
}

/// Graphs of the test corpus: grids, triangulated grids, random trees,
/// paths and stars.
pub fn corpus_graphs() -> Vec<(String, Graph)> {
    let mut graphs = Vec::new();
    for side in [4, 5, 8, 12, 16, 24, 32, 48, 64] {
        graphs.push((format!("grid{side}x{side}"), grid(side, side).unwrap()));
    }
    for (r, c) in [(3, 17), (10, 40), (33, 7), (1, 50)] {
        graphs.push((format!("grid{r}x{c}"), grid(r, c).unwrap()));
    }
    for (side, seed) in [(4, 1), (8, 2), (16, 3), (24, 4), (32, 5), (40, 6)] {
        graphs.push((
            format!("trigrid{side}s{seed}"),
            triangulated_grid(side, side, seed).unwrap(),
        ));
    }
    for (n, seed) in [(10, 1), (50, 2), (100, 3), (500, 4), (1000, 5), (2000, 6), (4096, 7), (4096, 8)] {
        graphs.push((format!("tree{n}s{seed}"), random_tree(n, seed).unwrap()));
    }
    for n in [1, 2, 3, 5, 10, 100, 1000] {
        graphs.push((format!("path{n}"), path(n).unwrap()));
    }
    for n in [1, 2, 5, 20, 100, 1000] {
        graphs.push((format!("star{n}"), star(n).unwrap()));
    }
    graphs
}

/// Non-planar extras for the separator suite.
pub fn dense_graphs() -> Vec<(String, Graph)> {
    [4, 5, 6, 9, 16]
        .into_iter()
        .map(|n| (format!("K{n}"), complete(n).unwrap()))
        .collect()
}

/// Every corpus graph paired with several value functions: random values,
/// the staircase, and on full grids also row-major and valley values.
pub fn corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    for (name, g) in corpus_graphs() {
        let mut functions: Vec<(String, ValueFunction)> = Vec::new();
        for seed in 0..3 {
            functions.push((format!("random{seed}"), random_values(&g, seed)));
        }
        functions.push(("staircase".into(), staircase_path(&g, 11)));
        if let Ok(f) = row_major(&g) {
            functions.push(("row-major".into(), f));
        }
        if let Some(layout) = g.grid_layout() {
            if let Ok(f) = valley(&g, (layout.rows() / 2, layout.cols() / 2)) {
                functions.push(("valley".into(), f));
            }
        }
        // small value range: many ties broken by vertex id
        let ties = ValueFunction::new(random_values(&g, 99).values().iter().map(|v| v % 3).collect());
        functions.push(("ties".into(), ties));
        for (fname, values) in functions {
            out.push(Instance {
                name: format!("{name}/{fname}"),
                graph: g.clone(),
                values,
            });
        }
    }
    out
}

/// Neighbor lists rebuilt from the edge list, independent of the graph's
/// own adjacency queries.
pub fn adjacency_from_edges(g: &Graph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.order()];
    for (u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// Local minima by direct comparison of `(value, id)` pairs.
pub fn reference_local_minima(g: &Graph, f: &ValueFunction) -> Vec<usize> {
    let adj = adjacency_from_edges(g);
    let key = |v: usize| (f.values()[v], v);
    (0..g.order())
        .filter(|&v| adj[v].iter().all(|&w| key(v) <= key(w)))
        .collect()
}

/// Local minima from a dense adjacency matrix.
pub fn matrix_local_minima(g: &Graph, f: &ValueFunction) -> Vec<usize> {
    let n = g.order();
    let mut matrix = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        matrix[u][v] = true;
        matrix[v][u] = true;
    }
    let values = f.values();
    (0..n)
        .filter(|&v| {
            (0..n).all(|w| {
                !matrix[v][w] || values[v] < values[w] || (values[v] == values[w] && v < w)
            })
        })
        .collect()
}

pub fn is_reference_local_min(g: &Graph, f: &ValueFunction, v: usize) -> bool {
    let key = |x: usize| (f.values()[x], x);
    adjacency_from_edges(g)[v].iter().all(|&w| key(v) <= key(w))
}
