//! BFS layering and the cheapest pair-of-levels cut.

use std::collections::VecDeque;

use crate::graph::{Graph, VertexId};

pub(crate) struct Layering {
    pub root: VertexId,
    pub levels: Vec<Vec<VertexId>>,
    pub level_of: Vec<usize>,
    pub parent: Vec<Option<VertexId>>,
}

impl Layering {
    /// BFS from `root`; `g` must be connected.
    pub fn new(g: &Graph, root: VertexId) -> Layering {
        let n = g.order();
        let mut level_of = vec![usize::MAX; n];
        let mut parent = vec![None; n];
        let mut levels: Vec<Vec<VertexId>> = Vec::new();
        level_of[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let l = level_of[u];
            if levels.len() <= l {
                levels.push(Vec::new());
            }
            levels[l].push(u);
            for &w in g.neighbors(u) {
                if level_of[w] == usize::MAX {
                    level_of[w] = l + 1;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        Layering {
            root,
            levels,
            level_of,
            parent,
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Vertices of levels `upper` and `lower`; `None` means no level.
    pub fn cut_vertices(&self, upper: Option<usize>, lower: Option<usize>) -> Vec<VertexId> {
        let mut out = Vec::new();
        for l in [upper, lower].into_iter().flatten() {
            if let Some(level) = self.levels.get(l) {
                out.extend_from_slice(level);
            }
        }
        out
    }
}

/// A cut removing levels `upper` and `lower` (either may be absent).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct LevelCut {
    pub upper: Option<usize>,
    pub lower: Option<usize>,
    pub cost: usize,
}

/// Cheapest pair of levels `a < b` such that the vertices above `a`, between
/// `a` and `b`, and below `b` each number at most `limit`.
///
/// Level `-1` and level `L` (one past the last) are empty. Runs in `O(L)`
/// with a sliding-window minimum over the admissible lower levels.
pub(crate) fn best_level_cut(sizes: &[usize], limit: usize) -> Option<LevelCut> {
    let depth = sizes.len();
    let n: usize = sizes.iter().sum();
    // prefix[x + 1] = vertices in levels 0..=x, for x in -1..depth
    let mut prefix = vec![0usize; depth + 1];
    for (l, &s) in sizes.iter().enumerate() {
        prefix[l + 1] = prefix[l] + s;
    }
    let before = |x: isize| prefix[(x + 1).max(0) as usize]; // levels 0..=x
    let size_at = |b: usize| sizes.get(b).copied().unwrap_or(0);

    let lowest_b = (0..=depth).find(|&b| n - before(b as isize) <= limit)?;
    let mut window: VecDeque<usize> = VecDeque::new();
    let mut next_b = 0usize;
    let mut best: Option<LevelCut> = None;

    for a in -1..depth as isize {
        if before(a - 1) > limit {
            break;
        }
        let lo = (a + 1).max(lowest_b as isize) as usize;
        while next_b <= depth && before(next_b as isize - 1) <= limit + before(a) {
            while window.back().is_some_and(|&b| size_at(b) >= size_at(next_b)) {
                window.pop_back();
            }
            window.push_back(next_b);
            next_b += 1;
        }
        while window.front().is_some_and(|&b| b < lo) {
            window.pop_front();
        }
        if let Some(&b) = window.front() {
            let upper = (a >= 0).then_some(a as usize);
            let cost = upper.map_or(0, size_at) + size_at(b);
            if best.is_none_or(|c| cost < c.cost) {
                best = Some(LevelCut {
                    upper,
                    lower: (b < depth).then_some(b),
                    cost,
                });
            }
        }
    }
    best
}

/// Double-sweep BFS: the farthest vertex from the farthest vertex of 0.
pub(crate) fn pseudo_peripheral(g: &Graph) -> VertexId {
    let far = |from: VertexId| {
        let levels = g.bfs_levels(from);
        (0..g.order())
            .filter_map(|v| levels[v].map(|l| (l, std::cmp::Reverse(v))))
            .max()
            .map_or(from, |(_, std::cmp::Reverse(v))| v)
    };
    far(far(0))
}
