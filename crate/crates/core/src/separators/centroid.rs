use super::{Separator, Strategy};
use crate::graph::Graph;
use crate::{Error, Result};

/// Single centroid vertex of a tree: every remaining component has at most
/// `n/2` vertices. The lowest-id centroid is returned.
pub fn tree_centroid_separator(g: &Graph) -> Result<Separator> {
    if !g.is_tree() {
        return Err(Error::invalid("centroid separator needs a tree"));
    }
    let n = g.order();
    // DFS order from 0, then subtree sizes bottom-up
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &w in g.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    let mut heaviest_child = vec![0usize; n];
    for &u in order.iter().rev().filter(|&&u| u != 0) {
        let p = parent[u];
        size[p] += size[u];
        heaviest_child[p] = heaviest_child[p].max(size[u]);
    }
    let centroid = (0..n)
        .find(|&v| heaviest_child[v].max(n - size[v]) <= n / 2)
        .expect("every tree has a centroid");
    Ok(Separator::certify(g, Strategy::Centroid, vec![centroid]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{grid, path, random_tree, star};
    use crate::separators::validate_separator;

    #[test]
    fn path_and_star() {
        assert_eq!(tree_centroid_separator(&path(9).unwrap()).unwrap().vertices, vec![4]);
        assert_eq!(tree_centroid_separator(&star(10).unwrap()).unwrap().vertices, vec![0]);
    }

    #[test]
    fn random_trees_split_in_half() {
        for seed in 0..20 {
            let g = random_tree(50, seed).unwrap();
            let sep = tree_centroid_separator(&g).unwrap();
            assert_eq!(sep.len(), 1);
            assert!(validate_separator(&g, &sep.vertices));
            assert!(sep.largest_component() <= 25);
        }
    }

    #[test]
    fn rejects_non_trees() {
        assert!(tree_centroid_separator(&grid(2, 2).unwrap()).is_err());
    }
}
