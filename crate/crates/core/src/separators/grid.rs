use super::{Separator, Strategy};
use crate::graph::Graph;
use crate::{Error, Result};

/// Removes the median line across the longer extent of a grid-embedded
/// graph.
///
/// On a full `a x b` grid this is the middle row or column of the longer
/// dimension, of size `min(a, b)`. On any vertex subset of a grid the two
/// sides of the median line hold at most `n/2` vertices each, and no edge
/// jumps over a full line, so the result is always a separator.
pub fn grid_separator(g: &Graph) -> Result<Separator> {
    let layout = g
        .grid_layout()
        .ok_or_else(|| Error::invalid("grid separator needs a grid-embedded graph"))?;
    let n = g.order();
    if n == 0 {
        return Ok(Separator::certify(g, Strategy::Grid, Vec::new()));
    }
    let coords: Vec<(usize, usize)> = (0..n).map(|v| layout.coords(v)).collect();
    let extent = |pick: fn(&(usize, usize)) -> usize| {
        let lo = coords.iter().map(pick).min().unwrap_or(0);
        let hi = coords.iter().map(pick).max().unwrap_or(0);
        hi - lo + 1
    };
    let row_of: fn(&(usize, usize)) -> usize = |c| c.0;
    let col_of: fn(&(usize, usize)) -> usize = |c| c.1;
    // ties cut a column
    let axis = if extent(row_of) > extent(col_of) { row_of } else { col_of };
    let mut keys: Vec<usize> = coords.iter().map(axis).collect();
    keys.sort_unstable();
    let line = keys[n / 2];
    let vertices = (0..n).filter(|&v| axis(&coords[v]) == line).collect();
    Ok(Separator::certify(g, Strategy::Grid, vertices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{grid, path};
    use crate::separators::{ght_size_bound, validate_separator};

    #[test]
    fn four_by_four_cuts_a_column() {
        let g = grid(4, 4).unwrap();
        let sep = grid_separator(&g).unwrap();
        assert_eq!(sep.vertices, vec![2, 6, 10, 14]);
        assert_eq!(sep.component_sizes, vec![8, 4]);
    }

    #[test]
    fn thin_grid_cuts_middle_vertex() {
        let g = grid(1, 9).unwrap();
        let sep = grid_separator(&g).unwrap();
        assert_eq!(sep.vertices, vec![4]);
    }

    #[test]
    fn two_by_two() {
        let g = grid(2, 2).unwrap();
        let sep = grid_separator(&g).unwrap();
        assert_eq!(sep.len(), 2);
        assert!(sep.largest_component() <= 2);
        assert!(validate_separator(&g, &sep.vertices));
    }

    #[test]
    fn rectangles_within_bound() {
        for (a, b) in [(3, 3), (5, 11), (16, 16), (7, 40), (64, 64)] {
            let g = grid(a, b).unwrap();
            let sep = grid_separator(&g).unwrap();
            assert!(validate_separator(&g, &sep.vertices));
            assert_eq!(sep.len(), a.min(b));
            assert!((sep.len() as f64) <= ght_size_bound(a * b, 0));
        }
    }

    #[test]
    fn subsets_of_grids_stay_valid() {
        let g = grid(9, 9).unwrap();
        let subset: Vec<_> = (0..81).filter(|v| v % 7 != 3 && v / 9 != 4).collect();
        let view = g.induced_subgraph(&subset).unwrap();
        let sep = grid_separator(view.graph()).unwrap();
        assert!(validate_separator(view.graph(), &sep.vertices));
    }

    #[test]
    fn requires_layout() {
        assert!(grid_separator(&path(5).unwrap()).is_err());
    }
}
