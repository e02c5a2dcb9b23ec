use super::levels::{best_level_cut, pseudo_peripheral, Layering};
use super::{component_limit, separate_heavy_component, Separator, Strategy};
use crate::graph::{Graph, VertexId};
use crate::Result;

/// Separator for arbitrary graphs with no size guarantee.
///
/// Takes the cheaper of a balanced BFS level cut (from a pseudo-peripheral
/// root) and a greedy cut that keeps removing the highest-degree vertex of
/// the largest remaining component.
pub fn bfs_fallback_separator(g: &Graph) -> Result<Separator> {
    let vertices = separate_heavy_component(g, separate_connected)?;
    Ok(Separator::certify(g, Strategy::BfsFallback, vertices))
}

fn separate_connected(g: &Graph) -> Vec<VertexId> {
    let n = g.order();
    let limit = component_limit(n);
    let layering = Layering::new(g, pseudo_peripheral(g));
    let cut = best_level_cut(&layering.sizes(), limit)
        .expect("the median level always separates a connected graph");
    let level_cut = layering.cut_vertices(cut.upper, cut.lower);

    match greedy_degree_cut(g, limit, level_cut.len()) {
        Some(greedy) if greedy.len() < level_cut.len() => greedy,
        _ => level_cut,
    }
}

/// Gives up once the set reaches `budget` vertices.
fn greedy_degree_cut(g: &Graph, limit: usize, budget: usize) -> Option<Vec<VertexId>> {
    let n = g.order();
    let mut removed = vec![false; n];
    let mut chosen = Vec::new();
    loop {
        let components = g.components_avoiding(&removed);
        let largest = components.iter().max_by_key(|c| c.len());
        let Some(largest) = largest.filter(|c| c.len() > limit) else {
            return Some(chosen);
        };
        if chosen.len() + 1 >= budget {
            return None;
        }
        let pick = largest
            .iter()
            .copied()
            .max_by_key(|&v| {
                let deg = g.neighbors(v).iter().filter(|&&w| !removed[w]).count();
                (deg, std::cmp::Reverse(v))
            })
            .expect("component is non-empty");
        removed[pick] = true;
        chosen.push(pick);
    }
}
