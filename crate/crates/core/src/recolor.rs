//! List colorings, recoloring sequences, and the two primitive ways of
//! building sequences: extending a sequence to one more vertex, and renaming
//! the color classes of a coloring.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Graph, VertexId};

pub type Color = u32;
pub type Coloring = Vec<Color>;
/// Coloring of a vertex subset; `None` marks vertices outside it.
pub type PartialColoring = Vec<Option<Color>>;

/// Allowed colors per vertex, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    pub fn new(mut lists: Vec<Vec<Color>>) -> Self {
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        ListAssignment { lists }
    }

    /// Every vertex gets the same list.
    pub fn uniform(n: usize, colors: impl IntoIterator<Item = Color>) -> Self {
        let list: Vec<Color> = colors.into_iter().collect();
        Self::new(vec![list; n])
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: VertexId) -> &[Color] {
        &self.lists[v]
    }

    pub fn allows(&self, v: VertexId, c: Color) -> bool {
        self.lists[v].binary_search(&c).is_ok()
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    /// Smallest list size over the given vertices.
    pub fn min_size(&self, vertices: impl IntoIterator<Item = VertexId>) -> usize {
        vertices
            .into_iter()
            .map(|v| self.lists[v].len())
            .min()
            .unwrap_or(usize::MAX)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring has {found} entries, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("vertex {vertex} has color {color}, which is not in its list")]
    NotInList { vertex: VertexId, color: Color },
    #[error("adjacent vertices {u} and {v} both have color {color}")]
    Conflict {
        u: VertexId,
        v: VertexId,
        color: Color,
    },
}

/// Checks that `coloring` is a proper coloring respecting `lists`.
pub fn validate(
    g: &Graph,
    lists: &ListAssignment,
    coloring: &[Color],
) -> Result<(), ColoringError> {
    let partial: PartialColoring = coloring.iter().copied().map(Some).collect();
    validate_partial(g, lists, &partial)
}

/// Like [`validate`], for the colored vertices only.
pub fn validate_partial(
    g: &Graph,
    lists: &ListAssignment,
    coloring: &[Option<Color>],
) -> Result<(), ColoringError> {
    let n = g.vertex_count();
    if coloring.len() != n {
        return Err(ColoringError::Length {
            expected: n,
            found: coloring.len(),
        });
    }
    if lists.len() != n {
        return Err(ColoringError::Length {
            expected: n,
            found: lists.len(),
        });
    }
    for (v, c) in coloring.iter().enumerate() {
        let Some(c) = *c else { continue };
        if !lists.allows(v, c) {
            return Err(ColoringError::NotInList {
                vertex: v,
                color: c,
            });
        }
        for &u in g.neighbors(v) {
            if u > v && coloring[u] == Some(c) {
                return Err(ColoringError::Conflict {
                    u: v,
                    v: u,
                    color: c,
                });
            }
        }
    }
    Ok(())
}

/// One recoloring step: `vertex` changes from color `from` to color `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    pub vertex: VertexId,
    pub from: Color,
    pub to: Color,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("start coloring is invalid: {0}")]
    Start(ColoringError),
    #[error("step {index} recolors vertex {vertex}, which is outside the sequence's vertex set")]
    Absent { index: usize, vertex: VertexId },
    #[error("step {index} expects vertex {vertex} to have color {expected}, but it has {actual}")]
    WrongFrom {
        index: usize,
        vertex: VertexId,
        expected: Color,
        actual: Color,
    },
    #[error("step {index} does not change the color of vertex {vertex}")]
    NoChange { index: usize, vertex: VertexId },
    #[error("step {index} gives vertex {vertex} color {color}, which is not in its list")]
    NotInList {
        index: usize,
        vertex: VertexId,
        color: Color,
    },
    #[error(
        "step {index} gives vertex {vertex} color {color}, already used by neighbor {neighbor}"
    )]
    Conflict {
        index: usize,
        vertex: VertexId,
        neighbor: VertexId,
        color: Color,
    },
    #[error("sequence starts at the wrong coloring (first mismatch at vertex {0})")]
    WrongStart(VertexId),
    #[error("sequence ends at the wrong coloring (first mismatch at vertex {0})")]
    WrongEnd(VertexId),
}

/// A walk in the recoloring graph: a start coloring on a vertex subset and the
/// single-vertex steps applied to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecolorSequence {
    start: PartialColoring,
    steps: Vec<Step>,
}

impl RecolorSequence {
    /// Sequence of length zero starting (and ending) at `start`.
    pub fn new(start: PartialColoring) -> Self {
        RecolorSequence {
            start,
            steps: Vec::new(),
        }
    }

    /// Sequence on the empty vertex subset of an `n`-vertex graph.
    pub fn empty(n: usize) -> Self {
        Self::new(vec![None; n])
    }

    pub fn from_steps(start: PartialColoring, steps: Vec<Step>) -> Self {
        RecolorSequence { start, steps }
    }

    pub fn start(&self) -> &[Option<Color>] {
        &self.start
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.start.get(v).is_some_and(Option::is_some)
    }

    /// Coloring reached after the last step.
    pub fn end(&self) -> PartialColoring {
        let mut cur = self.start.clone();
        for s in &self.steps {
            cur[s.vertex] = Some(s.to);
        }
        cur
    }

    /// Number of times each vertex is recolored.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.start.len()];
        for s in &self.steps {
            counts[s.vertex] += 1;
        }
        counts
    }

    pub fn max_count(&self) -> usize {
        self.counts().into_iter().max().unwrap_or(0)
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    /// Replays the sequence, checking that every intermediate coloring is
    /// proper and respects `lists`.
    pub fn validate(&self, g: &Graph, lists: &ListAssignment) -> Result<(), SequenceError> {
        validate_partial(g, lists, &self.start).map_err(SequenceError::Start)?;
        let mut cur = self.start.clone();
        for (index, s) in self.steps.iter().enumerate() {
            let v = s.vertex;
            let Some(actual) = cur.get(v).copied().flatten() else {
                return Err(SequenceError::Absent { index, vertex: v });
            };
            if actual != s.from {
                return Err(SequenceError::WrongFrom {
                    index,
                    vertex: v,
                    expected: s.from,
                    actual,
                });
            }
            if s.from == s.to {
                return Err(SequenceError::NoChange { index, vertex: v });
            }
            if !lists.allows(v, s.to) {
                return Err(SequenceError::NotInList {
                    index,
                    vertex: v,
                    color: s.to,
                });
            }
            if let Some(&u) = g.neighbors(v).iter().find(|&&u| cur[u] == Some(s.to)) {
                return Err(SequenceError::Conflict {
                    index,
                    vertex: v,
                    neighbor: u,
                    color: s.to,
                });
            }
            cur[v] = Some(s.to);
        }
        Ok(())
    }

    /// [`validate`](Self::validate) plus a check of both endpoints.
    pub fn validate_between(
        &self,
        g: &Graph,
        lists: &ListAssignment,
        from: &[Option<Color>],
        to: &[Option<Color>],
    ) -> Result<(), SequenceError> {
        self.validate(g, lists)?;
        if let Some(v) = (0..from.len()).find(|&v| self.start.get(v) != Some(&from[v])) {
            return Err(SequenceError::WrongStart(v));
        }
        let end = self.end();
        if let Some(v) = (0..to.len()).find(|&v| end.get(v) != Some(&to[v])) {
            return Err(SequenceError::WrongEnd(v));
        }
        Ok(())
    }

    /// Deletes the steps of vertices outside `keep`.
    pub fn restrict(&self, keep: &[bool]) -> RecolorSequence {
        let start = self
            .start
            .iter()
            .enumerate()
            .map(|(v, c)| if keep[v] { *c } else { None })
            .collect();
        let steps = self
            .steps
            .iter()
            .copied()
            .filter(|s| keep[s.vertex])
            .collect();
        RecolorSequence { start, steps }
    }

    /// The same walk traversed backwards.
    pub fn reversed(&self) -> RecolorSequence {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| Step {
                vertex: s.vertex,
                from: s.to,
                to: s.from,
            })
            .collect();
        RecolorSequence {
            start: self.end(),
            steps,
        }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn concat(mut self, other: &RecolorSequence) -> RecolorSequence {
        assert_eq!(self.end(), other.start, "sequences do not meet");
        self.steps.extend_from_slice(&other.steps);
        self
    }
}

/// Bound on how often a vertex with `degree` neighbors and a list of
/// `list_size` colors is recolored when its neighbors make `t` steps in total.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionBudget {
    pub t: u64,
    pub list_size: usize,
    pub degree: usize,
}

impl ExtensionBudget {
    /// `ceil(t / (list_size - degree - 1)) + 1`, or `None` when the list has
    /// fewer than `degree + 2` colors.
    pub fn bound(&self) -> Option<u64> {
        let slack = self
            .list_size
            .checked_sub(self.degree + 1)
            .filter(|&s| s > 0)? as u64;
        Some(self.t.div_ceil(slack) + 1)
    }
}

/// Per-vertex bounds along a path re-added one vertex at a time, where each
/// path vertex sees its predecessor plus two neighbors recolored at most
/// `budget` times each.
pub fn chain_recurrence(c1: u64, len: usize, budget: u64, list_size: usize) -> Vec<u64> {
    let slack = list_size as u64 - 4;
    let mut out = vec![c1];
    for _ in 1..len {
        let prev = *out.last().expect("nonempty");
        out.push((2 * budget + prev).div_ceil(slack) + 1);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("vertex {0} is already colored by the base sequence")]
    AlreadyPresent(VertexId),
    #[error("vertex {vertex} has {size} colors but {needed} are needed")]
    ListTooSmall {
        vertex: VertexId,
        size: usize,
        needed: usize,
    },
    #[error("color {color} is not in the list of vertex {vertex}")]
    NotInList { vertex: VertexId, color: Color },
    #[error("color {color} of vertex {vertex} clashes with neighbor {neighbor} at the {end} of the base sequence")]
    EndpointConflict {
        vertex: VertexId,
        neighbor: VertexId,
        color: Color,
        end: &'static str,
    },
}

/// Extends `sigma` (a sequence on a subgraph not containing `v`) to the
/// subgraph plus `v`, taking `v` from `alpha_v` to `beta_v`.
///
/// Whenever a neighbor is about to take the current color of `v`, `v` first
/// moves to a free color whose next clash lies furthest ahead (smallest color
/// on ties). With `d` neighbors present and `t` neighbor steps, `v` is
/// recolored at most `ceil(t / (|L(v)| - d - 1)) + 1` times, and deleting the
/// steps of `v` gives back `sigma` exactly.
pub fn extend_vertex(
    g: &Graph,
    lists: &ListAssignment,
    v: VertexId,
    sigma: &RecolorSequence,
    alpha_v: Color,
    beta_v: Color,
) -> Result<RecolorSequence, ExtendError> {
    if sigma.contains(v) {
        return Err(ExtendError::AlreadyPresent(v));
    }
    let nbrs: Vec<VertexId> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&u| sigma.contains(u))
        .collect();
    let list = lists.list(v);
    if list.len() < nbrs.len() + 2 {
        return Err(ExtendError::ListTooSmall {
            vertex: v,
            size: list.len(),
            needed: nbrs.len() + 2,
        });
    }
    for c in [alpha_v, beta_v] {
        if !lists.allows(v, c) {
            return Err(ExtendError::NotInList {
                vertex: v,
                color: c,
            });
        }
    }
    let end = sigma.end();
    for (coloring, color, which) in [(sigma.start(), alpha_v, "start"), (&end[..], beta_v, "end")] {
        if let Some(&u) = nbrs.iter().find(|&&u| coloring[u] == Some(color)) {
            return Err(ExtendError::EndpointConflict {
                vertex: v,
                neighbor: u,
                color,
                end: which,
            });
        }
    }

    let mut is_nbr = vec![false; g.vertex_count()];
    for &u in &nbrs {
        is_nbr[u] = true;
    }
    // Positions (in the neighbor-step stream) at which each color is taken.
    let mut arrivals: BTreeMap<Color, Vec<usize>> = BTreeMap::new();
    let mut k = 0;
    for s in sigma.steps() {
        if is_nbr[s.vertex] {
            arrivals.entry(s.to).or_default().push(k);
            k += 1;
        }
    }
    let next_arrival = |c: Color, after: usize| -> usize {
        arrivals
            .get(&c)
            .and_then(|ps| ps.get(ps.partition_point(|&p| p <= after)).copied())
            .unwrap_or(usize::MAX)
    };

    let mut nbr_color: BTreeMap<Color, usize> = BTreeMap::new();
    for &u in &nbrs {
        *nbr_color
            .entry(sigma.start()[u].expect("neighbor is present"))
            .or_default() += 1;
    }
    let mut start = sigma.start().to_vec();
    start[v] = Some(alpha_v);
    let mut out = RecolorSequence::new(start);
    let mut cur = alpha_v;
    let mut k = 0;
    for s in sigma.steps() {
        if is_nbr[s.vertex] {
            if s.to == cur {
                let best = list
                    .iter()
                    .copied()
                    .filter(|&c| c != cur && !nbr_color.contains_key(&c))
                    .max_by_key(|&c| (next_arrival(c, k), std::cmp::Reverse(c)))
                    .expect("list has a free color");
                out.push(Step {
                    vertex: v,
                    from: cur,
                    to: best,
                });
                cur = best;
            }
            let count = nbr_color
                .get_mut(&s.from)
                .expect("neighbor color is tracked");
            *count -= 1;
            if *count == 0 {
                nbr_color.remove(&s.from);
            }
            *nbr_color.entry(s.to).or_default() += 1;
            k += 1;
        }
        out.push(*s);
    }
    if cur != beta_v {
        out.push(Step {
            vertex: v,
            from: cur,
            to: beta_v,
        });
    }
    Ok(out)
}

/// Re-adds vertices in `order`, one at a time, starting from `sigma`.
pub fn extend_along(
    g: &Graph,
    lists: &ListAssignment,
    order: &[VertexId],
    sigma: RecolorSequence,
    alpha: &[Color],
    beta: &[Color],
) -> Result<RecolorSequence, ExtendError> {
    order.iter().try_fold(sigma, |seq, &v| {
        extend_vertex(g, lists, v, &seq, alpha[v], beta[v])
    })
}

/// Re-adds the vertices of a path `v2, v3, ...` in order. Vertex `i` sees at
/// most the previous path vertex plus already present neighbors, so its
/// recoloring count follows [`chain_recurrence`].
pub fn chain_extend(
    g: &Graph,
    lists: &ListAssignment,
    path: &[VertexId],
    sigma: RecolorSequence,
    alpha: &[Color],
    beta: &[Color],
) -> Result<RecolorSequence, ExtendError> {
    extend_along(g, lists, path, sigma, alpha, beta)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenameError {
    #[error("colorings have {0} and {1} entries")]
    Length(usize, usize),
    #[error("the two colorings do not induce the same color classes (vertices {0} and {1})")]
    PartitionMismatch(VertexId, VertexId),
    #[error("color {0} is outside the palette 1..={1}")]
    OutOfPalette(Color, usize),
    #[error("coloring is not proper: {0}")]
    NotProper(ColoringError),
    #[error("{classes} classes leave no spare color in a palette of {palette}")]
    NoSpareColor { classes: usize, palette: usize },
}

/// Walks from `c_from` to `c_to`, two colorings with the same color classes,
/// using colors `1..=k_prime`. Each class moves as a block to its target color
/// once that color is free; a cycle of classes is broken by parking one class
/// on an unused color. No vertex is recolored more than twice.
pub fn rename_classes(
    g: &Graph,
    k_prime: usize,
    c_from: &[Color],
    c_to: &[Color],
) -> Result<RecolorSequence, RenameError> {
    let n = g.vertex_count();
    if c_from.len() != n || c_to.len() != n {
        return Err(RenameError::Length(c_from.len(), c_to.len()));
    }
    for c in c_from.iter().chain(c_to) {
        if *c == 0 || *c as usize > k_prime {
            return Err(RenameError::OutOfPalette(*c, k_prime));
        }
    }
    for c in [c_from, c_to] {
        if let Some((u, v)) = g.edges().find(|&(u, v)| c[u] == c[v]) {
            return Err(RenameError::NotProper(ColoringError::Conflict {
                u,
                v,
                color: c[u],
            }));
        }
    }

    // Class of each from-color (indexed by that color) and its target color.
    let mut target: Vec<Option<Color>> = vec![None; k_prime + 1];
    let mut members: Vec<Vec<VertexId>> = vec![Vec::new(); k_prime + 1];
    for v in 0..n {
        let (f, t) = (c_from[v] as usize, c_to[v]);
        match target[f] {
            Some(x) if x != t => return Err(RenameError::PartitionMismatch(members[f][0], v)),
            _ => target[f] = Some(t),
        }
        members[f].push(v);
    }
    let order: Vec<usize> = (1..=k_prime).filter(|&c| target[c].is_some()).collect();
    let mut source_of: Vec<Option<usize>> = vec![None; k_prime + 1];
    for &f in &order {
        let t = target[f].expect("class is present") as usize;
        if let Some(other) = source_of[t] {
            return Err(RenameError::PartitionMismatch(
                members[other][0],
                members[f][0],
            ));
        }
        source_of[t] = Some(f);
    }
    let classes = order.len();
    if classes >= k_prime && order.iter().any(|&f| target[f] != Some(f as Color)) {
        return Err(RenameError::NoSpareColor {
            classes,
            palette: k_prime,
        });
    }

    // Current color of each class, and which class holds each color.
    let mut current: Vec<Color> = (0..=k_prime as Color).collect();
    let mut holder: Vec<bool> = vec![false; k_prime + 1];
    for &f in &order {
        holder[f] = true;
    }
    let mut seq = RecolorSequence::new(c_from.iter().copied().map(Some).collect());
    loop {
        let mut pending = order
            .iter()
            .copied()
            .filter(|&f| target[f] != Some(current[f]));
        let Some(first) = pending.next() else { break };
        let ready = std::iter::once(first)
            .chain(pending)
            .find(|&f| !holder[target[f].expect("class is present") as usize]);
        let (class, to) = match ready {
            Some(f) => (f, target[f].expect("class is present")),
            None => {
                let spare =
                    (1..=k_prime)
                        .find(|&c| !holder[c])
                        .ok_or(RenameError::NoSpareColor {
                            classes,
                            palette: k_prime,
                        })?;
                (first, spare as Color)
            }
        };
        let from = current[class];
        for &v in &members[class] {
            seq.push(Step {
                vertex: v,
                from,
                to,
            });
        }
        holder[from as usize] = false;
        holder[to as usize] = true;
        current[class] = to;
    }
    Ok(seq)
}
