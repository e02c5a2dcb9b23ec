//! Separator for embedded planar graphs.
//!
//! Two phases, in the manner of Lipton and Tarjan:
//!
//! 1. BFS layering from vertex 0 and the cheapest balanced pair of levels.
//!    This is accepted when it already fits `2 sqrt(2n) + 1`.
//! 2. Otherwise two cheap levels `l0 < l1 < l2` around the median level `l1`
//!    are removed and the middle band is split by a fundamental cycle. The
//!    levels above the band are contracted into one vertex (its rotation is
//!    the Euler tour around their BFS tree), every face gets a virtual hub
//!    vertex so that the map becomes a triangulation, and the dual of the
//!    non-tree edges is a spanning tree of the triangles. Cutting a dual tree
//!    edge splits the triangles into the two sides of that edge's
//!    fundamental cycle, which gives the side weights in one pass.
//!
//! Virtual hubs never enter the separator: a cycle through a hub crosses
//! its face without meeting any edge. Every candidate is re-validated on the
//! input graph, and the smallest valid set is returned; the result records
//! whether it met the bound.

use std::collections::{HashMap, VecDeque};

use super::levels::{best_level_cut, Layering};
use super::{component_limit, ght_size_bound, separate_heavy_component, Separator, Strategy};
use crate::graph::{Graph, VertexId};
use crate::{Error, Result};

/// Fundamental-cycle candidates re-validated before giving up on phase 2.
const MAX_CYCLE_CHECKS: usize = 64;

pub fn planar_separator(g: &Graph) -> Result<Separator> {
    if !g.has_embedding() {
        return Err(Error::invalid("planar separator needs a rotation system"));
    }
    if g.genus_bound() != 0 {
        return Err(Error::invalid(format!(
            "planar separator needs genus bound 0, got {}",
            g.genus_bound()
        )));
    }
    let vertices = separate_heavy_component(g, separate_connected)?;
    let mut sep = Separator::certify(g, Strategy::Planar, vertices);
    let bound = ght_size_bound(g.order().max(1), 0);
    sep.size_bound = bound;
    sep.met_bound = sep.len() as f64 <= bound;
    Ok(sep)
}

fn separate_connected(g: &Graph) -> Vec<VertexId> {
    let n = g.order();
    let limit = component_limit(n);
    let bound = ght_size_bound(n, 0);
    let layering = Layering::new(g, 0);
    let sizes = layering.sizes();
    let cut = best_level_cut(&sizes, limit).expect("the median level always separates");
    let level_cut = layering.cut_vertices(cut.upper, cut.lower);
    if level_cut.len() as f64 <= bound {
        return level_cut;
    }

    let (l0, l2) = band_levels(&sizes, n);
    let band: usize = (l0.map_or(0, |l| l + 1)..l2.min(sizes.len()))
        .map(|l| sizes[l])
        .sum();
    if band <= limit {
        // already covered by the level search
        return level_cut;
    }
    match cycle_cut(g, &layering, l0, l2, limit) {
        Some(cycle) if cycle.len() < level_cut.len() => cycle,
        _ => level_cut,
    }
}

/// Levels `l0 <= l1 < l2` with `|L(l0)| + 2(l1 - l0) <= 2 sqrt(k)` and
/// `|L(l2)| + 2(l2 - l1 - 1) <= 2 sqrt(n - k)`, where `l1` is the median
/// level and `k` counts levels `0..=l1`. `None` for `l0` is the empty level
/// above the root. When no level meets its inequality the one with the
/// smallest violation is taken.
fn band_levels(sizes: &[usize], n: usize) -> (Option<usize>, usize) {
    let depth = sizes.len();
    let mut acc = 0;
    let mut l1 = depth - 1;
    for (l, &s) in sizes.iter().enumerate() {
        acc += s;
        if 2 * acc > n {
            l1 = l;
            break;
        }
    }
    let k: usize = sizes[..=l1].iter().sum();
    let size_at = |l: isize| {
        if l < 0 || l as usize >= depth {
            0.0
        } else {
            sizes[l as usize] as f64
        }
    };

    let up_budget = 2.0 * (k as f64).sqrt();
    let upper = (-1..=l1 as isize)
        .rev()
        .map(|l| (l, size_at(l) + 2.0 * (l1 as isize - l) as f64 - up_budget))
        .find(|&(_, slack)| slack <= 0.0)
        .map(|(l, _)| l)
        .unwrap_or_else(|| {
            (-1..=l1 as isize)
                .min_by(|&a, &b| {
                    let fa = size_at(a) + 2.0 * (l1 as isize - a) as f64;
                    let fb = size_at(b) + 2.0 * (l1 as isize - b) as f64;
                    fa.total_cmp(&fb)
                })
                .unwrap_or(-1)
        });

    let down_budget = 2.0 * ((n - k) as f64).sqrt();
    let lower = (l1 + 1..=depth)
        .map(|l| (l, size_at(l as isize) + 2.0 * (l - l1 - 1) as f64 - down_budget))
        .find(|&(_, slack)| slack <= 0.0)
        .map(|(l, _)| l)
        .unwrap_or_else(|| {
            (l1 + 1..=depth)
                .min_by(|&a, &b| {
                    let fa = size_at(a as isize) + 2.0 * (a - l1 - 1) as f64;
                    let fb = size_at(b as isize) + 2.0 * (b - l1 - 1) as f64;
                    fa.total_cmp(&fb)
                })
                .unwrap_or(depth)
        });

    ((upper >= 0).then_some(upper as usize), lower)
}

const NONE: usize = usize::MAX;

/// Combinatorial map of the band with the upper levels contracted.
struct BandMap {
    /// Band vertices in original ids; map vertex `h < band.len()` is `band[h]`.
    band: Vec<VertexId>,
    /// Contracted super vertex, if levels above the band exist.
    hub: Option<usize>,
    /// Root of the spanning tree in map ids.
    root: usize,
    tail: Vec<usize>,
    head: Vec<usize>,
    twin: Vec<usize>,
    /// Darts around each map vertex in rotation order.
    rotation: Vec<Vec<usize>>,
    /// Index of each dart in its tail's rotation.
    position: Vec<usize>,
}

impl BandMap {
    fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    fn next_in_face(&self, d: usize) -> usize {
        let t = self.twin[d];
        let around = &self.rotation[self.tail[t]];
        around[(self.position[t] + 1) % around.len()]
    }
}

fn build_band_map(
    g: &Graph,
    layering: &Layering,
    l0: Option<usize>,
    l2: usize,
) -> Option<BandMap> {
    let n = g.order();
    let in_upper = |v: VertexId| l0.is_some_and(|l| layering.level_of[v] <= l);
    let mut map_id = vec![NONE; n];
    let mut band = Vec::new();
    for (v, id) in map_id.iter_mut().enumerate() {
        if layering.level_of[v] < l2 && !in_upper(v) {
            *id = band.len();
            band.push(v);
        }
    }
    let hub = l0.map(|_| band.len());
    if let Some(h) = hub {
        for (v, id) in map_id.iter_mut().enumerate() {
            if in_upper(v) {
                *id = h;
            }
        }
    }
    let vertex_count = band.len() + usize::from(hub.is_some());
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
    let mut tail = Vec::new();
    let mut head = Vec::new();
    let mut ends: Vec<(VertexId, VertexId)> = Vec::new();

    let mut add_dart = |u: VertexId, w: VertexId, rotation: &mut Vec<Vec<usize>>| {
        let d = tail.len();
        tail.push(map_id[u]);
        head.push(map_id[w]);
        ends.push((u, w));
        rotation[map_id[u]].push(d);
    };

    for &v in &band {
        for &w in g.rotation(v)? {
            if map_id[w] != NONE {
                add_dart(v, w, &mut rotation);
            }
        }
    }

    if hub.is_some() {
        // Euler tour around the BFS tree of the upper levels.
        let root = layering.root;
        let rot = |u: VertexId| g.rotation(u).unwrap_or_default();
        let mut stack: Vec<(VertexId, usize, usize)> = vec![(root, 0, rot(root).len())];
        while let Some(frame) = stack.last_mut() {
            if frame.2 == 0 {
                stack.pop();
                continue;
            }
            let u = frame.0;
            let around = rot(u);
            let w = around[frame.1 % around.len()];
            frame.1 += 1;
            frame.2 -= 1;
            if map_id[w] != NONE && !in_upper(w) {
                add_dart(u, w, &mut rotation);
            } else if in_upper(w) && layering.parent[w] == Some(u) {
                let back = rot(w).iter().position(|&x| x == u)?;
                stack.push((w, back + 1, rot(w).len() - 1));
            }
        }
    }

    let index: HashMap<(VertexId, VertexId), usize> =
        ends.iter().enumerate().map(|(d, &e)| (e, d)).collect();
    let twin = ends
        .iter()
        .map(|&(u, w)| index.get(&(w, u)).copied())
        .collect::<Option<Vec<_>>>()?;
    let mut position = vec![0; tail.len()];
    for around in &rotation {
        for (i, &d) in around.iter().enumerate() {
            position[d] = i;
        }
    }
    let root = hub.unwrap_or(map_id[layering.root]);
    Some(BandMap {
        band,
        hub,
        root,
        tail,
        head,
        twin,
        rotation,
        position,
    })
}

/// Edge of the star triangulation: a map edge, or the spoke from a face's
/// hub to the tail of one of its darts.
#[derive(Clone, Copy)]
enum TriEdge {
    Map(usize),
    Spoke(usize),
}

fn cycle_cut(
    g: &Graph,
    layering: &Layering,
    l0: Option<usize>,
    l2: usize,
    limit: usize,
) -> Option<Vec<VertexId>> {
    let map = build_band_map(g, layering, l0, l2)?;
    let darts = map.tail.len();
    if darts == 0 {
        return None;
    }

    // faces
    let mut face_of = vec![NONE; darts];
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for start in 0..darts {
        if face_of[start] != NONE {
            continue;
        }
        let f = faces.len();
        let mut boundary = Vec::new();
        let mut d = start;
        while face_of[d] == NONE {
            face_of[d] = f;
            boundary.push(d);
            d = map.next_in_face(d);
        }
        if d != start {
            return None;
        }
        faces.push(boundary);
    }
    let vertices = map.vertex_count();
    let edges = darts / 2;
    if vertices + faces.len() != edges + 2 {
        // rotation system is not planar
        return None;
    }
    let mut prev_in_face = vec![0; darts];
    for boundary in &faces {
        for (i, &d) in boundary.iter().enumerate() {
            prev_in_face[d] = boundary[(i + boundary.len() - 1) % boundary.len()];
        }
    }

    // spanning tree: BFS over map vertices, then one spoke per face hub
    let mut depth = vec![NONE; vertices];
    let mut parent = vec![NONE; vertices];
    let mut tree_map_edge = vec![false; darts];
    depth[map.root] = 0;
    let mut queue = VecDeque::from([map.root]);
    while let Some(u) = queue.pop_front() {
        for &d in &map.rotation[u] {
            let w = map.head[d];
            if depth[w] == NONE {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                tree_map_edge[d.min(map.twin[d])] = true;
                queue.push_back(w);
            }
        }
    }
    if depth.contains(&NONE) {
        return None;
    }
    let face_anchor: Vec<usize> = faces
        .iter()
        .map(|b| *b.iter().min_by_key(|&&d| (depth[map.tail[d]], d)).expect("faces are non-empty"))
        .collect();

    // dual tree over triangles; triangle `d` lies on dart `d`'s face side
    let mut dual: Vec<Vec<(usize, TriEdge)>> = vec![Vec::new(); darts];
    let mut dual_edges = 0;
    for d in 0..darts {
        let t = map.twin[d];
        if d < t && !tree_map_edge[d] {
            dual[d].push((t, TriEdge::Map(d)));
            dual[t].push((d, TriEdge::Map(d)));
            dual_edges += 1;
        }
        if face_anchor[face_of[d]] != d {
            let p = prev_in_face[d];
            dual[d].push((p, TriEdge::Spoke(d)));
            dual[p].push((d, TriEdge::Spoke(d)));
            dual_edges += 1;
        }
    }
    if dual_edges + 1 != darts {
        return None;
    }
    let mut tri_parent: Vec<Option<(usize, TriEdge)>> = vec![None; darts];
    let mut seen = vec![false; darts];
    let mut order = Vec::with_capacity(darts);
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(t) = queue.pop_front() {
        order.push(t);
        for &(s, e) in &dual[t] {
            if !seen[s] {
                seen[s] = true;
                tri_parent[s] = Some((t, e));
                queue.push_back(s);
            }
        }
    }
    if order.len() != darts {
        return None;
    }

    // each band vertex weighs on the triangle of its first dart
    let mut weight = vec![0usize; darts];
    for h in 0..map.band.len() {
        if let Some(&d) = map.rotation[h].first() {
            weight[d] += 1;
        }
    }
    let total: usize = weight.iter().sum();
    for &t in order.iter().rev() {
        if let Some((p, _)) = tri_parent[t] {
            weight[p] += weight[t];
        }
    }

    let tree_path = |mut a: usize, mut b: usize| {
        let mut out = Vec::new();
        while depth[a] > depth[b] {
            out.push(a);
            a = parent[a];
        }
        while depth[b] > depth[a] {
            out.push(b);
            b = parent[b];
        }
        while a != b {
            out.push(a);
            out.push(b);
            a = parent[a];
            b = parent[b];
        }
        out.push(a);
        out
    };
    let cycle_len = |a: usize, b: usize| {
        let (mut a, mut b) = (a, b);
        let mut len = 1;
        while a != b {
            if depth[a] >= depth[b] {
                a = parent[a];
            } else {
                b = parent[b];
            }
            len += 1;
        }
        len
    };
    let ends = |e: TriEdge| match e {
        TriEdge::Map(d) => (map.tail[d], map.head[d]),
        TriEdge::Spoke(d) => (map.tail[face_anchor[face_of[d]]], map.tail[d]),
    };

    // (estimated excess over the limit, cycle length, triangle)
    let mut candidates: Vec<(usize, usize, usize)> = (0..darts)
        .filter_map(|t| {
            let (_, e) = tri_parent[t]?;
            let inside = weight[t];
            let heavier = inside.max(total - inside);
            let (a, b) = ends(e);
            Some((heavier.saturating_sub(limit), cycle_len(a, b), t))
        })
        .collect();
    candidates.sort_unstable();

    let mut base = layering.cut_vertices(l0, Some(l2));
    base.sort_unstable();
    let mut removed = vec![false; g.order()];
    for &(_, _, t) in candidates.iter().take(MAX_CYCLE_CHECKS) {
        let (_, e) = tri_parent[t].expect("candidate has a parent");
        let (a, b) = ends(e);
        let mut set = base.clone();
        set.extend(
            tree_path(a, b)
                .into_iter()
                .filter(|&h| Some(h) != map.hub)
                .map(|h| map.band[h]),
        );
        removed.iter_mut().for_each(|r| *r = false);
        for &v in &set {
            removed[v] = true;
        }
        let ok = g
            .components_avoiding(&removed)
            .iter()
            .all(|c| c.len() <= limit);
        if ok {
            set.sort_unstable();
            set.dedup();
            return Some(set);
        }
    }
    None
}
