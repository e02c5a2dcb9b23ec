use std::collections::BTreeSet;

use proptest::prelude::*;
use sepsearch::graph::{grid, random_tree, triangulated_grid, Graph};
use sepsearch::separators::{
    bfs_fallback_separator, ght_size_bound, grid_separator, planar_separator, residual_max_degree,
    strongify, tree_centroid_separator, validate_separator,
};

/// Reference balance check: flood fill over the edge list.
fn largest_left(g: &Graph, removed: &[usize]) -> usize {
    let n = g.order();
    let gone: BTreeSet<usize> = removed.iter().copied().collect();
    let mut adj = vec![Vec::new(); n];
    for (u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut largest = 0;
    for s in 0..n {
        if seen[s] || gone.contains(&s) {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &w in &adj[u] {
                if !seen[w] && !gone.contains(&w) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        largest = largest.max(size);
    }
    largest
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn planar_on_triangulations(rows in 2usize..30, cols in 2usize..30, seed in 0u64..1000) {
        let g = triangulated_grid(rows, cols, seed).unwrap();
        let sep = planar_separator(&g).unwrap();
        prop_assert!(largest_left(&g, &sep.vertices) <= 2 * g.order() / 3);
        prop_assert!(sep.verify(&g));
        prop_assert!(sep.len() as f64 <= ght_size_bound(g.order(), 0));
    }

    #[test]
    fn tree_providers(n in 1usize..3000, seed in 0u64..1000) {
        let g = random_tree(n, seed).unwrap();
        for sep in [tree_centroid_separator(&g).unwrap(), planar_separator(&g).unwrap()] {
            prop_assert!(largest_left(&g, &sep.vertices) <= 2 * n / 3);
            if n >= 3 {
                prop_assert!(sep.len() as f64 <= ght_size_bound(n, 0));
            }
        }
        let centroid = tree_centroid_separator(&g).unwrap();
        prop_assert_eq!(centroid.len(), 1);
        prop_assert!(largest_left(&g, &centroid.vertices) <= n / 2);
    }

    #[test]
    fn grid_provider_on_rectangles(rows in 1usize..60, cols in 1usize..60) {
        let g = grid(rows, cols).unwrap();
        let sep = grid_separator(&g).unwrap();
        prop_assert!(largest_left(&g, &sep.vertices) <= 2 * g.order() / 3);
        if g.order() >= 3 {
            prop_assert!(sep.len() as f64 <= ght_size_bound(g.order(), 0));
        }
    }

    #[test]
    fn strongify_bounds_residual_degree(
        n in 3usize..200,
        pairs in proptest::collection::vec((0usize..200, 0usize..200), 0..800),
    ) {
        // connect a path first so the fallback sees one component
        let mut edges: BTreeSet<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
        for (u, v) in pairs {
            let (u, v) = (u % n, v % n);
            if u != v {
                edges.insert((u.min(v), u.max(v)));
            }
        }
        let m = edges.len();
        let genus = (m / 2) as u32;
        let g = Graph::from_edges(n, edges, genus).unwrap();
        let base = bfs_fallback_separator(&g).unwrap();
        prop_assert!(validate_separator(&g, &base.vertices));
        let strong = strongify(&g, base).unwrap();
        let d = residual_max_degree(&g, &strong.separator.vertices);
        prop_assert!(d * d <= n);
        prop_assert!(largest_left(&g, &strong.separator.vertices) <= 2 * n / 3);
    }
}
