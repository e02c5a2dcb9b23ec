use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ValueFunction;
use crate::graph::{Graph, GridLayout, VertexId};
use crate::{Error, Result};

/// Uniform values in `0..4n`; ties are possible and resolved by the key order.
pub fn random_values(g: &Graph, seed: u64) -> ValueFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let upper = (g.order() as u64).max(1) * 4;
    ValueFunction::new((0..g.order()).map(|_| rng.gen_range(0..upper)).collect())
}

fn full_grid(g: &Graph) -> Result<&GridLayout> {
    match g.grid_layout() {
        Some(layout) if layout.is_full() && layout.rows() * layout.cols() == g.order() => Ok(layout),
        _ => Err(Error::invalid("value family requires a full grid graph")),
    }
}

/// `f(v) = v` on a grid, i.e. the row-major cell index.
pub fn row_major(g: &Graph) -> Result<ValueFunction> {
    full_grid(g)?;
    Ok(ValueFunction::new((0..g.order() as u64).collect()))
}

/// Manhattan distance to `center = (row, col)`; its only local minimum is
/// the center.
pub fn valley(g: &Graph, center: (usize, usize)) -> Result<ValueFunction> {
    let layout = full_grid(g)?;
    if center.0 >= layout.rows() || center.1 >= layout.cols() {
        return Err(Error::invalid(format!(
            "center {center:?} outside {}x{} grid",
            layout.rows(),
            layout.cols()
        )));
    }
    let values = (0..g.order())
        .map(|v| {
            let (r, c) = layout.coords(v);
            (r.abs_diff(center.0) + c.abs_diff(center.1)) as u64
        })
        .collect();
    Ok(ValueFunction::new(values))
}

/// A long descending walk: the deepest root-to-leaf path of a DFS tree
/// rooted at a far vertex. The first element is the top of the staircase.
pub fn staircase_order(g: &Graph, seed: u64) -> Vec<VertexId> {
    let n = g.order();
    if n == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probe = rng.gen_range(0..n);
    let levels = g.bfs_levels(probe);
    let top = (0..n)
        .filter_map(|v| levels[v].map(|l| (l, std::cmp::Reverse(v))))
        .max()
        .map(|(_, std::cmp::Reverse(v))| v)
        .unwrap_or(probe);

    // iterative DFS, neighbors in ascending order
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    depth[top] = 0;
    let mut stack = vec![(top, 0usize)];
    while let Some((u, next)) = stack.pop() {
        let nbrs = g.neighbors(u);
        if next < nbrs.len() {
            stack.push((u, next + 1));
            let w = nbrs[next];
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                stack.push((w, 0));
            }
        }
    }
    let deepest = (0..n)
        .filter(|&v| depth[v] != usize::MAX)
        .max_by(|&a, &b| depth[a].cmp(&depth[b]).then(b.cmp(&a)))
        .unwrap_or(top);
    let mut order = vec![deepest];
    let mut v = deepest;
    while v != top {
        v = parent[v];
        order.push(v);
    }
    order.reverse();
    order
}

/// Values decreasing by one along [`staircase_order`]; off-staircase vertices
/// sit above the whole staircase, growing with their distance from it.
pub fn staircase_path(g: &Graph, seed: u64) -> ValueFunction {
    let n = g.order();
    let order = staircase_order(g, seed);
    let len = order.len() as u64;
    let mut values = vec![u64::MAX; n];
    let mut queue = VecDeque::new();
    for (j, &v) in order.iter().enumerate() {
        values[v] = len - 1 - j as u64;
    }
    let mut dist = vec![usize::MAX; n];
    for &v in &order {
        dist[v] = 0;
        queue.push_back(v);
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    for v in 0..n {
        if values[v] == u64::MAX {
            let d = if dist[v] == usize::MAX { n } else { dist[v] };
            values[v] = len + d as u64;
        }
    }
    ValueFunction::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{grid, path, random_tree};
    use crate::oracle::verify_local_min;

    fn local_minima(g: &Graph, f: &ValueFunction) -> Vec<VertexId> {
        (0..g.order())
            .filter(|&v| verify_local_min(g, f, v).unwrap())
            .collect()
    }

    #[test]
    fn valley_has_unique_minimum_at_center() {
        let g = grid(4, 4).unwrap();
        let f = valley(&g, (2, 2)).unwrap();
        assert_eq!(local_minima(&g, &f), vec![2 * 4 + 2]);
        assert!(valley(&g, (4, 0)).is_err());
    }

    #[test]
    fn row_major_unique_minimum() {
        let g = grid(5, 3).unwrap();
        let f = row_major(&g).unwrap();
        assert_eq!(local_minima(&g, &f), vec![0]);
        assert!(row_major(&path(4).unwrap()).is_err());
    }

    #[test]
    fn random_values_reproducible() {
        let g = grid(6, 6).unwrap();
        assert_eq!(random_values(&g, 3), random_values(&g, 3));
        assert_ne!(random_values(&g, 3), random_values(&g, 4));
    }

    #[test]
    fn staircase_on_path_spans_it() {
        let g = path(100).unwrap();
        let order = staircase_order(&g, 9);
        assert_eq!(order.len(), 100);
        let f = staircase_path(&g, 9);
        assert_eq!(local_minima(&g, &f), vec![*order.last().unwrap()]);
        assert_eq!(f.value(order[0]), Some(99));
    }

    #[test]
    fn staircase_is_a_walk() {
        let g = random_tree(300, 2).unwrap();
        let order = staircase_order(&g, 5);
        for pair in order.windows(2) {
            assert!(g.has_edge(pair[0], pair[1]));
        }
        let f = staircase_path(&g, 5);
        let top_value = f.value(order[0]).unwrap();
        for v in 0..g.order() {
            if !order.contains(&v) {
                assert!(f.value(v).unwrap() > top_value);
            }
        }
    }
}
