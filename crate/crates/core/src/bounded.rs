//! Recoloring graphs of bounded independence number.
//!
//! For a `k`-colorable graph with independence number at most `p`, any two
//! colorings from a palette of `floor(p k / 2) + 1` colors are joined by a
//! sequence recoloring each vertex at most four times: align both colorings
//! with a fixed optimal coloring one class at a time (one recoloring each),
//! then rename classes (two recolorings each).

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::recolor::{rename_classes, validate, Color, Coloring, ColoringError, ListAssignment};
use crate::recolor::{RecolorSequence, RenameError, Step};

/// Largest graph the exact solvers accept by default.
pub const DEFAULT_CAP: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundedError {
    #[error("graph has {n} vertices; exact solvers are capped at {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("independence number {actual} exceeds p = {p}")]
    IndependenceTooLarge { actual: usize, p: usize },
    #[error("chromatic number {actual} exceeds k = {k}")]
    NotColorable { actual: usize, k: usize },
    #[error("palette of {ell} colors is below floor(p k / 2) + 1 = {needed}")]
    PaletteTooSmall { ell: usize, needed: usize },
    #[error("{which} coloring is invalid: {source}")]
    BadColoring {
        which: &'static str,
        source: ColoringError,
    },
    #[error("no color class with at most one vertex among the remaining vertices")]
    NoSmallClass,
    #[error("family parameters need p >= 2 and k >= 2, got p = {p}, k = {k}")]
    BadFamily { p: usize, k: usize },
    #[error(transparent)]
    Rename(#[from] RenameError),
}

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect()
}

/// Exact independence number by branch and bound.
pub fn independence_number(g: &Graph, cap: usize) -> Result<usize, BoundedError> {
    let n = g.vertex_count();
    if n > cap.min(64) {
        return Err(BoundedError::TooLarge {
            n,
            cap: cap.min(64),
        });
    }
    fn go(adj: &[u64], cand: u64, size: u32, best: &mut u32) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() <= *best {
            return;
        }
        // A vertex with no candidate neighbor can always be taken.
        let mut bits = cand;
        let mut pick = None;
        let mut pick_deg = 0;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let d = (adj[v] & cand).count_ones();
            if d == 0 {
                go(adj, cand & !(1 << v), size + 1, best);
                return;
            }
            if pick.is_none() || d > pick_deg {
                pick = Some(v);
                pick_deg = d;
            }
        }
        let v = pick.expect("cand is nonempty");
        go(adj, cand & !(1 << v) & !adj[v], size + 1, best);
        go(adj, cand & !(1 << v), size, best);
    }
    let adj = masks(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    go(&adj, all, 0, &mut best);
    Ok(best as usize)
}

/// An optimal coloring with colors `1..=chi`, found by trying `k = 1, 2, ...`
/// with saturation-ordered backtracking.
pub fn chromatic_coloring(g: &Graph, cap: usize) -> Result<Coloring, BoundedError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(BoundedError::TooLarge { n, cap });
    }
    fn go(g: &Graph, k: Color, colors: &mut [Color], left: usize) -> bool {
        if left == 0 {
            return true;
        }
        // Most constrained uncolored vertex.
        let v = (0..colors.len())
            .filter(|&v| colors[v] == 0)
            .max_by_key(|&v| {
                let seen: BTreeSet<Color> = g
                    .neighbors(v)
                    .iter()
                    .map(|&u| colors[u])
                    .filter(|&c| c > 0)
                    .collect();
                (seen.len(), g.degree(v), std::cmp::Reverse(v))
            })
            .expect("an uncolored vertex remains");
        // Colors above the current maximum are interchangeable; try only one.
        let top = colors.iter().copied().max().unwrap_or(0);
        for c in 1..=k.min(top + 1) {
            if g.neighbors(v).iter().all(|&u| colors[u] != c) {
                colors[v] = c;
                if go(g, k, colors, left - 1) {
                    return true;
                }
                colors[v] = 0;
            }
        }
        false
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    for k in 1..=n as Color {
        let mut colors = vec![0; n];
        if go(g, k, &mut colors, n) {
            return Ok(colors);
        }
    }
    unreachable!("n colors always suffice")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundedParams {
    /// Bound on the independence number.
    pub p: usize,
    /// Bound on the chromatic number.
    pub k: usize,
    /// Palette `1..=ell`.
    pub ell: usize,
}

impl BoundedParams {
    pub fn palette_floor(p: usize, k: usize) -> usize {
        p * k / 2 + 1
    }
}

/// Chooses the color to align next among `palette`: an unused color if there
/// is one, otherwise one used by a single active vertex.
fn small_class(
    active: &[bool],
    cur: &[Color],
    palette: &BTreeSet<Color>,
) -> Option<(Color, Option<VertexId>)> {
    let holders = |c: Color| (0..cur.len()).filter(move |&v| active[v] && cur[v] == c);
    if let Some(&c) = palette.iter().find(|&&c| holders(c).next().is_none()) {
        return Some((c, None));
    }
    palette.iter().find_map(|&c| {
        let mut h = holders(c);
        let first = h.next()?;
        h.next().is_none().then_some((c, Some(first)))
    })
}

/// Recolors one class of `target` (restricted to `active`) onto the color
/// chosen by [`small_class`]. Returns the aligned color and the class.
fn align_step(
    g: &Graph,
    cur: &mut [Color],
    target: &[Color],
    active: &[bool],
    palette: &BTreeSet<Color>,
    seq: &mut RecolorSequence,
) -> Result<(Color, Vec<VertexId>), BoundedError> {
    let (i, holder) = small_class(active, cur, palette).ok_or(BoundedError::NoSmallClass)?;
    let j = match holder {
        Some(v) => target[v],
        // Peel the class with the largest color, as in a top-down induction.
        None => (0..cur.len())
            .filter(|&v| active[v])
            .map(|v| target[v])
            .max()
            .ok_or(BoundedError::NoSmallClass)?,
    };
    let class: Vec<VertexId> = (0..cur.len())
        .filter(|&v| active[v] && target[v] == j)
        .collect();
    for &v in &class {
        if cur[v] != i {
            debug_assert!(g.neighbors(v).iter().all(|&u| cur[u] != i));
            seq.push(Step {
                vertex: v,
                from: cur[v],
                to: i,
            });
            cur[v] = i;
        }
    }
    Ok((i, class))
}

/// Gives one class of `c_target` a color of its own: picks a color of `c1`
/// used at most once, and moves the `c_target` class containing that vertex
/// (or the last class, if the color is unused) onto it.
pub fn align_class(
    g: &Graph,
    c1: &[Color],
    c_target: &[Color],
    ell: usize,
) -> Result<(Coloring, RecolorSequence), BoundedError> {
    let palette = ListAssignment::uniform(g.vertex_count(), 1..=ell as Color);
    validate(g, &palette, c1).map_err(|source| BoundedError::BadColoring {
        which: "start",
        source,
    })?;
    let mut cur = c1.to_vec();
    let mut seq = RecolorSequence::new(c1.iter().copied().map(Some).collect());
    let active = vec![true; g.vertex_count()];
    let colors: BTreeSet<Color> = (1..=ell as Color).collect();
    align_step(g, &mut cur, c_target, &active, &colors, &mut seq)?;
    Ok((cur, seq))
}

/// Aligns every class of `target` in turn. The result has exactly the color
/// classes of `target`, and every vertex is recolored at most once.
fn align_all(
    g: &Graph,
    c: &[Color],
    target: &[Color],
    ell: usize,
) -> Result<(Coloring, RecolorSequence), BoundedError> {
    let n = g.vertex_count();
    let mut cur = c.to_vec();
    let mut seq = RecolorSequence::new(c.iter().copied().map(Some).collect());
    let mut active = vec![true; n];
    let mut palette: BTreeSet<Color> = (1..=ell as Color).collect();
    while active.iter().any(|&a| a) {
        let (i, class) = align_step(g, &mut cur, target, &active, &palette, &mut seq)?;
        palette.remove(&i);
        for v in class {
            active[v] = false;
        }
    }
    Ok((cur, seq))
}

/// Checks all preconditions and reports the first violated one.
pub fn check_params(
    g: &Graph,
    params: BoundedParams,
    c1: &[Color],
    c2: &[Color],
    cap: usize,
) -> Result<Coloring, BoundedError> {
    let BoundedParams { p, k, ell } = params;
    let needed = BoundedParams::palette_floor(p, k);
    if ell < needed {
        return Err(BoundedError::PaletteTooSmall { ell, needed });
    }
    let palette = ListAssignment::uniform(g.vertex_count(), 1..=ell as Color);
    validate(g, &palette, c1).map_err(|source| BoundedError::BadColoring {
        which: "start",
        source,
    })?;
    validate(g, &palette, c2).map_err(|source| BoundedError::BadColoring {
        which: "target",
        source,
    })?;
    let alpha = independence_number(g, cap)?;
    if alpha > p {
        return Err(BoundedError::IndependenceTooLarge { actual: alpha, p });
    }
    let gamma = chromatic_coloring(g, cap)?;
    let chi = gamma.iter().copied().max().unwrap_or(0) as usize;
    if chi > k {
        return Err(BoundedError::NotColorable { actual: chi, k });
    }
    Ok(gamma)
}

/// Recolors `c1` into `c2`, recoloring each vertex at most four times.
pub fn recolor_bounded(
    g: &Graph,
    params: BoundedParams,
    c1: &[Color],
    c2: &[Color],
    cap: usize,
) -> Result<RecolorSequence, BoundedError> {
    let gamma = check_params(g, params, c1, c2, cap)?;
    let (star1, s1) = align_all(g, c1, &gamma, params.ell)?;
    let (star2, s2) = align_all(g, c2, &gamma, params.ell)?;
    let bridge = rename_classes(g, params.ell, &star1, &star2)?;
    Ok(s1.concat(&bridge).concat(&s2.reversed()))
}

/// A graph and coloring with no single-vertex recoloring available: every
/// closed neighborhood sees all `floor(p k / 2)` colors. The graph is
/// `k`-colorable with independence number at most `p`.
pub fn frozen_family(p: usize, k: usize) -> Result<(Graph, Coloring), BoundedError> {
    if p < 2 || k < 2 {
        return Err(BoundedError::BadFamily { p, k });
    }
    let (pairs, triple) = if k.is_multiple_of(2) {
        (k / 2, false)
    } else {
        ((k - 3) / 2, true)
    };
    let mut parts: Vec<Vec<(u8, Color)>> = vec![two_layout(p); pairs];
    if triple {
        parts.push(three_layout(p));
    }
    // Shift colors so that different parts use disjoint colors.
    let mut coloring = Vec::new();
    let mut sides = Vec::new();
    let mut part_of = Vec::new();
    let mut offset = 0;
    for (idx, layout) in parts.iter().enumerate() {
        for &(side, color) in layout {
            coloring.push(color + offset);
            sides.push(side);
            part_of.push(idx);
        }
        offset += layout.iter().map(|&(_, c)| c).max().unwrap_or(0);
    }
    let n = coloring.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let joined = part_of[u] != part_of[v];
            let inside =
                part_of[u] == part_of[v] && sides[u] != sides[v] && coloring[u] != coloring[v];
            if joined || inside {
                edges.push((u, v));
            }
        }
    }
    Ok((Graph::from_edges(n, edges), coloring))
}

/// Two sides colored `1..=p` each; opposite vertices of different colors are joined.
fn two_layout(p: usize) -> Vec<(u8, Color)> {
    (0..2u8)
        .flat_map(|s| (1..=p as Color).map(move |c| (s, c)))
        .collect()
}

/// Three sides: `1..=p`; odd colors up to `p` plus the extra colors; even
/// colors up to `p` plus the extra colors, where the extra colors are
/// `p + 1 ..= floor(3p / 2)` and fill the second and third sides up to `p`.
fn three_layout(p: usize) -> Vec<(u8, Color)> {
    let p32 = (3 * p / 2) as Color;
    let extra: Vec<Color> = (p as Color + 1..=p32).collect();
    let mut out: Vec<(u8, Color)> = (1..=p as Color).map(|c| (0, c)).collect();
    let odd: Vec<Color> = (1..=p as Color).filter(|c| c % 2 == 1).collect();
    let even: Vec<Color> = (1..=p as Color).filter(|c| c % 2 == 0).collect();
    for (side, base) in [(1u8, odd), (2u8, even)] {
        let fill = p.saturating_sub(base.len()).min(extra.len());
        out.extend(
            base.into_iter()
                .chain(extra[..fill].iter().copied())
                .map(|c| (side, c)),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn exact_solvers_on_small_graphs() {
        assert_eq!(independence_number(&cycle(5), 30), Ok(2));
        assert_eq!(independence_number(&cycle(6), 30), Ok(3));
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(independence_number(&k4, 30), Ok(1));
        let gamma = chromatic_coloring(&cycle(5), 30).unwrap();
        assert_eq!(gamma.iter().max(), Some(&3));
        assert!(chromatic_coloring(&cycle(40), 30).is_err());
    }

    #[test]
    fn family_sizes() {
        for p in 2..=5 {
            let (g2, c2) = frozen_family(p, 2).unwrap();
            assert_eq!(g2.vertex_count(), 2 * p);
            assert_eq!(c2.iter().copied().max(), Some(p as Color));
            let (g3, c3) = frozen_family(p, 3).unwrap();
            assert_eq!(
                g3.vertex_count(),
                if p % 2 == 0 { 3 * p } else { 3 * p - 1 }
            );
            assert_eq!(c3.iter().copied().max(), Some((3 * p / 2) as Color));
        }
    }

    #[test]
    fn family_is_frozen_and_sparse() {
        for p in 2..=5 {
            for k in 2..=5 {
                let (g, c) = frozen_family(p, k).unwrap();
                assert!(crate::oracle::is_frozen(&g, &c, p * k / 2), "p={p} k={k}");
                assert!(independence_number(&g, 30).unwrap() <= p, "p={p} k={k}");
                let chi = chromatic_coloring(&g, 30)
                    .unwrap()
                    .into_iter()
                    .max()
                    .unwrap() as usize;
                assert!(chi <= k, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn k3_aligns_in_one_step() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        let (c, seq) = align_class(&g, &[1, 2, 3], &[1, 2, 3], 4).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(c, vec![1, 2, 4]);
    }

    #[test]
    fn c5_recolors_within_four() {
        let g = cycle(5);
        let params = BoundedParams { p: 2, k: 3, ell: 4 };
        let seq = recolor_bounded(&g, params, &[1, 2, 1, 2, 3], &[2, 3, 4, 1, 4], 30).unwrap();
        let palette = ListAssignment::uniform(5, 1..=4);
        seq.validate(&g, &palette).unwrap();
        assert_eq!(seq.end(), vec![Some(2), Some(3), Some(4), Some(1), Some(4)]);
        assert!(seq.max_count() <= 4);
    }

    #[test]
    fn rejects_small_palette() {
        let g = cycle(5);
        let params = BoundedParams { p: 2, k: 3, ell: 3 };
        let err = recolor_bounded(&g, params, &[1, 2, 1, 2, 3], &[1, 2, 1, 2, 3], 30).unwrap_err();
        assert_eq!(err, BoundedError::PaletteTooSmall { ell: 3, needed: 4 });
    }
}
