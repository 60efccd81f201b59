//! Brute-force reconfiguration graph of all list colorings.
//!
//! States are stored as mixed-radix codes over the list indices (vertex 0 is
//! the most significant digit), enumerated in increasing order so neighbors
//! are found by binary search.

use std::collections::VecDeque;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::recolor::{Color, Coloring, ListAssignment};

/// Above this many states the diameter is estimated from sampled sources.
pub const EXACT_DIAMETER_LIMIT: usize = 20_000;
const SAMPLED_SOURCES: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("more than {cap} colorings")]
    TooMany { cap: usize },
    #[error("list product does not fit in 64 bits")]
    Overflow,
    #[error("lists cover {found} vertices, graph has {expected}")]
    Length { expected: usize, found: usize },
    #[error("vertex {0} has an empty list")]
    EmptyList(VertexId),
    #[error("coloring is not a state of this space")]
    UnknownColoring,
}

#[derive(Debug, Clone)]
pub struct StateSpace<'a> {
    g: &'a Graph,
    lists: &'a ListAssignment,
    weights: Vec<u64>,
    codes: Vec<u64>,
}

impl<'a> StateSpace<'a> {
    /// Enumerates every proper list coloring, failing past `cap` states.
    pub fn enumerate(
        g: &'a Graph,
        lists: &'a ListAssignment,
        cap: usize,
    ) -> Result<Self, OracleError> {
        let n = g.vertex_count();
        if lists.len() != n {
            return Err(OracleError::Length {
                expected: n,
                found: lists.len(),
            });
        }
        if let Some(v) = (0..n).find(|&v| lists.list(v).is_empty()) {
            return Err(OracleError::EmptyList(v));
        }
        let mut weights = vec![1u64; n];
        for v in (0..n.saturating_sub(1)).rev() {
            weights[v] = weights[v + 1]
                .checked_mul(lists.list(v + 1).len() as u64)
                .ok_or(OracleError::Overflow)?;
        }
        if n > 0 {
            weights[0]
                .checked_mul(lists.list(0).len() as u64)
                .ok_or(OracleError::Overflow)?;
        }
        let mut space = StateSpace {
            g,
            lists,
            weights,
            codes: Vec::new(),
        };
        let mut colors = vec![0; n];
        if !space.fill(0, 0, &mut colors, cap) {
            return Err(OracleError::TooMany { cap });
        }
        Ok(space)
    }

    fn fill(&mut self, v: VertexId, code: u64, colors: &mut [Color], cap: usize) -> bool {
        if v == colors.len() {
            if self.codes.len() == cap {
                return false;
            }
            self.codes.push(code);
            return true;
        }
        for (i, &c) in self.lists.list(v).iter().enumerate() {
            if self.g.neighbors(v).iter().any(|&u| u < v && colors[u] == c) {
                continue;
            }
            colors[v] = c;
            if !self.fill(v + 1, code + i as u64 * self.weights[v], colors, cap) {
                return false;
            }
        }
        true
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    fn digit(&self, code: u64, v: VertexId) -> usize {
        ((code / self.weights[v]) % self.lists.list(v).len() as u64) as usize
    }

    pub fn coloring(&self, id: usize) -> Coloring {
        let code = self.codes[id];
        (0..self.g.vertex_count())
            .map(|v| self.lists.list(v)[self.digit(code, v)])
            .collect()
    }

    pub fn id_of(&self, coloring: &[Color]) -> Option<usize> {
        if coloring.len() != self.g.vertex_count() {
            return None;
        }
        let mut code = 0;
        for (v, c) in coloring.iter().enumerate() {
            let i = self.lists.list(v).iter().position(|x| x == c)?;
            code += i as u64 * self.weights[v];
        }
        self.codes.binary_search(&code).ok()
    }

    /// States one recoloring away from state `id`.
    pub fn neighbors(&self, id: usize) -> Vec<usize> {
        let code = self.codes[id];
        let mut out = Vec::new();
        for v in 0..self.g.vertex_count() {
            let list = self.lists.list(v);
            let here = self.digit(code, v);
            let base = code - here as u64 * self.weights[v];
            for (i, &c) in list.iter().enumerate() {
                if i == here
                    || self
                        .g
                        .neighbors(v)
                        .iter()
                        .any(|&u| list_color(self, code, u) == c)
                {
                    continue;
                }
                let next = base + i as u64 * self.weights[v];
                out.push(
                    self.codes
                        .binary_search(&next)
                        .expect("proper colorings are enumerated"),
                );
            }
        }
        out
    }

    /// Distances from `source`; `u32::MAX` marks unreachable states.
    pub fn bfs(&self, source: usize, adj: Option<&[Vec<u32>]>) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.len()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let owned;
            let next: &[u32] = match adj {
                Some(a) => &a[x],
                None => {
                    owned = self
                        .neighbors(x)
                        .into_iter()
                        .map(|y| y as u32)
                        .collect::<Vec<_>>();
                    &owned
                }
            };
            for &y in next {
                let y = y as usize;
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }
    /// Length of a shortest walk between two states, searching from both
    /// ends one layer at a time; `None` if they lie in different components.
    pub fn distance_between(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return Some(0);
        }
        let mut dist = [vec![u32::MAX; self.len()], vec![u32::MAX; self.len()]];
        dist[0][a] = 0;
        dist[1][b] = 0;
        let mut frontier = [vec![a], vec![b]];
        while !frontier[0].is_empty() && !frontier[1].is_empty() {
            let side = usize::from(frontier[1].len() < frontier[0].len());
            let mut best = None;
            let mut next = Vec::new();
            for &x in &frontier[side] {
                for y in self.neighbors(x) {
                    if dist[1 - side][y] != u32::MAX {
                        let total = (dist[side][x] + 1 + dist[1 - side][y]) as usize;
                        best = Some(best.map_or(total, |b: usize| b.min(total)));
                    }
                    if dist[side][y] == u32::MAX {
                        dist[side][y] = dist[side][x] + 1;
                        next.push(y);
                    }
                }
            }
            if best.is_some() {
                return best;
            }
            frontier[side] = next;
        }
        None
    }
}

fn list_color(space: &StateSpace<'_>, code: u64, u: VertexId) -> Color {
    space.lists.list(u)[space.digit(code, u)]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconfigStats {
    pub colorings: usize,
    /// Sizes of the connected components, largest first.
    pub component_sizes: Vec<usize>,
    /// States with no neighbor, that is, frozen colorings.
    pub isolated: usize,
    /// Largest distance between two states of the same component.
    pub component_diameter: usize,
    /// False when the diameter is a lower bound from sampled sources.
    pub exact: bool,
}

impl ReconfigStats {
    pub fn components(&self) -> usize {
        self.component_sizes.len()
    }

    pub fn connected(&self) -> bool {
        self.components() <= 1
    }

    /// Diameter of the whole graph; `None` stands for infinity.
    pub fn diameter(&self) -> Option<usize> {
        self.connected().then_some(self.component_diameter)
    }
}

/// Counts, connectivity and diameter of the reconfiguration graph.
pub fn reconfiguration_stats(
    g: &Graph,
    lists: &ListAssignment,
    cap: usize,
) -> Result<ReconfigStats, OracleError> {
    let space = StateSpace::enumerate(g, lists, cap)?;
    let n = space.len();
    let exact = n <= EXACT_DIAMETER_LIMIT;
    let adj: Option<Vec<Vec<u32>>> = exact.then(|| {
        (0..n)
            .into_par_iter()
            .map(|x| space.neighbors(x).into_iter().map(|y| y as u32).collect())
            .collect()
    });
    let isolated = match &adj {
        Some(a) => a.iter().filter(|l| l.is_empty()).count(),
        None => (0..n)
            .into_par_iter()
            .filter(|&x| space.neighbors(x).is_empty())
            .count(),
    };

    let mut seen = vec![false; n];
    let mut component_sizes = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut size = 0;
        while let Some(x) = queue.pop_front() {
            size += 1;
            let next: Vec<usize> = match &adj {
                Some(a) => a[x].iter().map(|&y| y as usize).collect(),
                None => space.neighbors(x),
            };
            for y in next {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        component_sizes.push(size);
    }
    component_sizes.sort_unstable_by(|a, b| b.cmp(a));

    let sources: Vec<usize> = if exact {
        (0..n).collect()
    } else {
        let step = (n / SAMPLED_SOURCES).max(1);
        (0..n).step_by(step).take(SAMPLED_SOURCES).collect()
    };
    let component_diameter = sources
        .par_iter()
        .map(|&s| {
            space
                .bfs(s, adj.as_deref())
                .into_iter()
                .filter(|&d| d != u32::MAX)
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0) as usize;
    Ok(ReconfigStats {
        colorings: n,
        component_sizes,
        isolated,
        component_diameter,
        exact,
    })
}

/// Length of a shortest recoloring sequence, or `None` if there is none.
pub fn distance(
    g: &Graph,
    lists: &ListAssignment,
    alpha: &[Color],
    beta: &[Color],
    cap: usize,
) -> Result<Option<usize>, OracleError> {
    let space = StateSpace::enumerate(g, lists, cap)?;
    let a = space.id_of(alpha).ok_or(OracleError::UnknownColoring)?;
    let b = space.id_of(beta).ok_or(OracleError::UnknownColoring)?;
    Ok(space.distance_between(a, b))
}

/// No vertex can change color within the palette `1..=k`.
pub fn is_frozen(g: &Graph, coloring: &[Color], k: usize) -> bool {
    (0..g.vertex_count()).all(|v| {
        (1..=k as Color)
            .all(|c| c == coloring[v] || g.neighbors(v).iter().any(|&u| coloring[u] == c))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_p3_three_colors() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let l = ListAssignment::uniform(3, 1..=3);
        let s = reconfiguration_stats(&g, &l, 1000).unwrap();
        assert_eq!(s.colorings, 12);
        assert!(s.connected());
        assert!(s.exact);
        assert_eq!(
            distance(&g, &l, &[1, 2, 1], &[2, 1, 2], 1000).unwrap(),
            Some(4)
        );
    }

    #[test]
    fn edge_three_colors() {
        let g = Graph::from_edges(2, [(0, 1)]);
        let l = ListAssignment::uniform(2, 1..=3);
        let s = reconfiguration_stats(&g, &l, 1000).unwrap();
        assert_eq!((s.colorings, s.diameter()), (6, Some(3)));
        assert_eq!(distance(&g, &l, &[1, 2], &[2, 1], 1000).unwrap(), Some(3));
        assert_eq!(distance(&g, &l, &[1, 2], &[1, 2], 1000).unwrap(), Some(0));
        assert!(is_frozen(&g, &[1, 2], 2));
    }

    #[test]
    fn k3_three_colors_is_frozen() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        let l = ListAssignment::uniform(3, 1..=3);
        let s = reconfiguration_stats(&g, &l, 1000).unwrap();
        assert_eq!(
            (
                s.colorings,
                s.components(),
                s.isolated,
                s.component_diameter
            ),
            (6, 6, 6, 0)
        );
        assert_eq!(s.diameter(), None);
        assert!(is_frozen(&g, &[1, 2, 3], 3));
        assert_eq!(
            distance(&g, &l, &[1, 2, 3], &[2, 1, 3], 1000).unwrap(),
            None
        );
    }

    #[test]
    fn two_sided_search_matches_bfs() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]);
        let l = ListAssignment::uniform(5, 1..=4);
        let space = StateSpace::enumerate(&g, &l, 10_000).unwrap();
        for a in (0..space.len()).step_by(7) {
            let d = space.bfs(a, None);
            for (b, &db) in d.iter().enumerate() {
                let want = (db != u32::MAX).then_some(db as usize);
                assert_eq!(space.distance_between(a, b), want);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::empty(4);
        let l = ListAssignment::uniform(4, 1..=3);
        assert_eq!(
            StateSpace::enumerate(&g, &l, 80).unwrap_err(),
            OracleError::TooMany { cap: 80 }
        );
        assert_eq!(StateSpace::enumerate(&g, &l, 81).unwrap().len(), 81);
    }
}
