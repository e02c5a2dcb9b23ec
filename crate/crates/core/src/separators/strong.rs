use serde::Serialize;

use super::{validate_separator, Separator};
use crate::graph::{Graph, VertexId};
use crate::{Error, Result};

/// A separator `C = C' ∪ B` where `B` holds every vertex of degree above
/// `sqrt(n)`; the graph left after removing `C` has maximum degree at most
/// `sqrt(n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrongSeparator {
    pub base: Separator,
    pub high_degree: Vec<VertexId>,
    pub separator: Separator,
}

/// Vertices with `deg(v) > sqrt(n)`, compared exactly as `deg^2 > n`.
pub fn high_degree_vertices(g: &Graph) -> Vec<VertexId> {
    let n = g.order();
    (0..n).filter(|&v| g.degree(v) * g.degree(v) > n).collect()
}

pub fn strongify(g: &Graph, base: Separator) -> Result<StrongSeparator> {
    if !validate_separator(g, &base.vertices) {
        return Err(Error::invalid(format!(
            "base separator from {} is not a separator",
            base.strategy
        )));
    }
    let high_degree = high_degree_vertices(g);
    let mut union = base.vertices.clone();
    union.extend_from_slice(&high_degree);
    let separator = Separator::certify(g, base.strategy, union);
    Ok(StrongSeparator {
        base,
        high_degree,
        separator,
    })
}

/// Maximum degree of `g - removed`.
pub fn residual_max_degree(g: &Graph, removed: &[VertexId]) -> usize {
    let mut gone = vec![false; g.order()];
    for &v in removed {
        gone[v] = true;
    }
    (0..g.order())
        .filter(|&v| !gone[v])
        .map(|v| g.neighbors(v).iter().filter(|&&w| !gone[w]).count())
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{grid, path, star, triangulated_grid};
    use crate::separators::{grid_separator, planar_separator, tree_centroid_separator};

    #[test]
    fn high_degree_examples() {
        assert_eq!(high_degree_vertices(&star(10).unwrap()), vec![0]);
        assert!(high_degree_vertices(&grid(4, 4).unwrap()).is_empty());
        assert!(high_degree_vertices(&path(5).unwrap()).is_empty());
    }

    #[test]
    fn grid_column_is_already_strong() {
        let g = grid(4, 4).unwrap();
        let base = grid_separator(&g).unwrap();
        let strong = strongify(&g, base.clone()).unwrap();
        assert!(strong.high_degree.is_empty());
        assert_eq!(strong.separator.vertices, base.vertices);
    }

    #[test]
    fn star_hub_union_is_idempotent() {
        let g = star(10).unwrap();
        let base = tree_centroid_separator(&g).unwrap();
        let strong = strongify(&g, base).unwrap();
        assert_eq!(strong.separator.vertices, vec![0]);
    }

    #[test]
    fn triangulated_grid_residual_degree() {
        let g = triangulated_grid(8, 8, 4).unwrap();
        let strong = strongify(&g, planar_separator(&g).unwrap()).unwrap();
        assert!(residual_max_degree(&g, &strong.separator.vertices) <= 8);
        assert!(validate_separator(&g, &strong.separator.vertices));
    }

    #[test]
    fn rejects_invalid_base() {
        let g = path(9).unwrap();
        let bogus = Separator::certify(&g, crate::separators::Strategy::Grid, vec![1]);
        assert!(strongify(&g, bogus).is_err());
    }
}
