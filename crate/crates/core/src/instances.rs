//! Deterministic test instances: named families and seeded random plane graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bounded::frozen_family;
use crate::config::Strategy;
use crate::graph::{Graph, VertexId};
use crate::plane::{PlaneGraph, PlaneGraphError};
use crate::recolor::{Color, Coloring, ListAssignment};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("no instance found after {0} attempts")]
    GaveUp(usize),
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error(transparent)]
    Plane(#[from] PlaneGraphError),
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A named family or a seeded random generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Grid {
        rows: usize,
        cols: usize,
    },
    Cube,
    Octahedron,
    Icosahedron,
    /// Icosahedron with every triangle split into `f * f`.
    Geodesic(usize),
    /// Diamonds glued tip to tip.
    DiamondChain(usize),
    /// A path joined to one extra vertex.
    Fan(usize),
    /// A convex polygon with zigzag diagonals.
    Polygon(usize),
    /// The planar member of the frozen family with two color classes.
    FrozenEmbed(usize),
    RandomPlanar(usize),
    RandomTriangulation(usize),
    /// Random member of a strategy's class meeting its minimum degree.
    Hypothesis(Strategy),
    /// Random member of a strategy's class on about `n` vertices.
    InClass(Strategy, usize),
}

impl Family {
    pub fn generate(self, seed: u64) -> Result<PlaneGraph, InstanceError> {
        let mut r = rng(seed);
        match self {
            Family::Grid { rows, cols } => grid(rows, cols),
            Family::Cube => cube(),
            Family::Octahedron => octahedron(),
            Family::Icosahedron => icosahedron(),
            Family::Geodesic(f) => geodesic(f),
            Family::DiamondChain(len) => diamond_chain(len),
            Family::Fan(len) => fan(len),
            Family::Polygon(n) => polygon(n),
            Family::FrozenEmbed(p) => frozen_embed(p),
            Family::RandomPlanar(n) => random_planar(&mut r, n),
            Family::RandomTriangulation(n) => Ok(Triangulation::random(&mut r, n)?.to_plane()?),
            Family::Hypothesis(s) => hypothesis_instance(&mut r, s),
            Family::InClass(s, n) => class_instance(&mut r, s, n),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Grid { rows, cols } => write!(f, "grid:{rows}x{cols}"),
            Family::Cube => write!(f, "cube"),
            Family::Octahedron => write!(f, "octahedron"),
            Family::Icosahedron => write!(f, "icosahedron"),
            Family::Geodesic(k) => write!(f, "geodesic:{k}"),
            Family::DiamondChain(n) => write!(f, "diamonds:{n}"),
            Family::Fan(n) => write!(f, "fan:{n}"),
            Family::Polygon(n) => write!(f, "polygon:{n}"),
            Family::FrozenEmbed(p) => write!(f, "frozen:{p}"),
            Family::RandomPlanar(n) => write!(f, "random:{n}"),
            Family::RandomTriangulation(n) => write!(f, "triangulation:{n}"),
            Family::Hypothesis(s) => write!(f, "hypothesis-{s}"),
            Family::InClass(s, n) => write!(f, "class-{s}:{n}"),
        }
    }
}

impl FromStr for Family {
    type Err = InstanceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || InstanceError::UnknownFamily(s.to_string());
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let num = |a: Option<&str>| a.and_then(|x| x.parse::<usize>().ok()).ok_or_else(unknown);
        Ok(match name {
            "grid" => {
                let (r, c) = arg.and_then(|a| a.split_once('x')).ok_or_else(unknown)?;
                Family::Grid {
                    rows: num(Some(r))?,
                    cols: num(Some(c))?,
                }
            }
            "cube" => Family::Cube,
            "octahedron" => Family::Octahedron,
            "icosahedron" => Family::Icosahedron,
            "geodesic" => Family::Geodesic(num(arg)?),
            "diamonds" => Family::DiamondChain(num(arg)?),
            "fan" => Family::Fan(num(arg)?),
            "polygon" => Family::Polygon(num(arg)?),
            "frozen" => Family::FrozenEmbed(num(arg)?),
            "random" => Family::RandomPlanar(num(arg)?),
            "triangulation" => Family::RandomTriangulation(num(arg)?),
            _ => {
                if let Some(st) = name.strip_prefix("hypothesis-") {
                    Family::Hypothesis(st.parse().map_err(|_| unknown())?)
                } else if let Some(st) = name.strip_prefix("class-") {
                    Family::InClass(st.parse().map_err(|_| unknown())?, num(arg)?)
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}

pub fn grid(rows: usize, cols: usize) -> Result<PlaneGraph, InstanceError> {
    if rows == 0 || cols == 0 {
        return Err(InstanceError::Infeasible(
            "grid needs at least one row and column".into(),
        ));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let points: Vec<(f64, f64)> = (0..rows * cols)
        .map(|v| ((v % cols) as f64, (v / cols) as f64))
        .collect();
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Ok(PlaneGraph::from_coordinates(&points, &edges)?)
}

/// Cube with vertex `v` at the corner whose coordinates are the bits of `v`.
pub fn cube() -> Result<PlaneGraph, InstanceError> {
    let points: Vec<(f64, f64)> = (0..8).map(cube_point).collect();
    let edges: Vec<(usize, usize)> = (0..8usize)
        .flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect();
    Ok(PlaneGraph::from_coordinates(&points, &edges)?)
}

/// The bit-1 face is drawn inside the bit-0 face.
fn cube_point(v: usize) -> (f64, f64) {
    let (x, y) = ((v & 1) as f64, ((v >> 1) & 1) as f64);
    if v & 4 == 0 {
        (4.0 * x, 4.0 * y)
    } else {
        (1.0 + 2.0 * x, 1.0 + 2.0 * y)
    }
}

pub fn octahedron() -> Result<PlaneGraph, InstanceError> {
    let ring = |i: usize| 1 + i % 4;
    let mut t = Vec::new();
    for i in 0..4 {
        t.push([0, ring(i), ring(i + 1)]);
        t.push([5, ring(i + 1), ring(i)]);
    }
    Ok(PlaneGraph::from_triangles(6, &t)?)
}

fn icosahedron_triangles() -> Vec<[usize; 3]> {
    let up = |i: usize| 1 + i % 5;
    let low = |i: usize| 6 + i % 5;
    let mut t = Vec::new();
    for i in 0..5 {
        t.push([0, up(i), up(i + 1)]);
        t.push([up(i), low(i), up(i + 1)]);
        t.push([up(i + 1), low(i), low(i + 1)]);
        t.push([11, low(i + 1), low(i)]);
    }
    t
}

pub fn icosahedron() -> Result<PlaneGraph, InstanceError> {
    Ok(PlaneGraph::from_triangles(12, &icosahedron_triangles())?)
}

/// Splits each triangle into `f * f` triangles, sharing the new points on
/// common edges.
fn subdivide(n: usize, tris: &[[usize; 3]], f: usize) -> (usize, Vec<[usize; 3]>) {
    let mut on_edge: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    let mut next = n;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let mut out = Vec::new();
    for &[a, b, c] in tris {
        // Point a + i/f (b - a) + j/f (c - a).
        let mut id = BTreeMap::new();
        for i in 0..=f {
            for j in 0..=f - i {
                let edge = match (i, j) {
                    (0, 0) => Some((a, a, 0)),
                    (_, 0) => Some((a, b, i)),
                    (0, _) => Some((a, c, j)),
                    _ if i + j == f => Some((b, c, j)),
                    _ => None,
                };
                let v = match edge {
                    Some((x, _, 0)) => x,
                    Some((x, y, t)) if t == f => {
                        let _ = x;
                        y
                    }
                    Some((x, y, t)) => {
                        let key = if x < y { (x, y, t) } else { (y, x, f - t) };
                        *on_edge.entry(key).or_insert_with(&mut fresh)
                    }
                    None => fresh(),
                };
                id.insert((i, j), v);
            }
        }
        for i in 0..f {
            for j in 0..f - i {
                out.push([id[&(i, j)], id[&(i + 1, j)], id[&(i, j + 1)]]);
                if i + j + 1 < f {
                    out.push([id[&(i + 1, j)], id[&(i + 1, j + 1)], id[&(i, j + 1)]]);
                }
            }
        }
    }
    (next, out)
}

/// Icosahedron with every triangle split into `f * f`.
pub fn geodesic(f: usize) -> Result<PlaneGraph, InstanceError> {
    Ok(geodesic_triangulation(f)?.to_plane()?)
}

pub fn geodesic_triangulation(f: usize) -> Result<Triangulation, InstanceError> {
    if f == 0 {
        return Err(InstanceError::Infeasible(
            "frequency must be positive".into(),
        ));
    }
    let (n, t) = subdivide(12, &icosahedron_triangles(), f);
    Ok(Triangulation::from_triangles(n, t))
}

pub fn diamond_chain(len: usize) -> Result<PlaneGraph, InstanceError> {
    if len == 0 {
        return Err(InstanceError::Infeasible(
            "chain needs at least one diamond".into(),
        ));
    }
    // Tips 0..=len, then the two middle vertices of each diamond.
    let mut points: Vec<(f64, f64)> = (0..=len).map(|i| (3.0 * i as f64, 0.0)).collect();
    let mut edges = Vec::new();
    for i in 0..len {
        let (a, b) = (points.len(), points.len() + 1);
        points.push((3.0 * i as f64 + 1.5, 1.0));
        points.push((3.0 * i as f64 + 1.5, -1.0));
        edges.extend([(i, a), (i, b), (a, b), (a, i + 1), (b, i + 1)]);
    }
    Ok(PlaneGraph::from_coordinates(&points, &edges)?)
}

pub fn fan(len: usize) -> Result<PlaneGraph, InstanceError> {
    if len < 2 {
        return Err(InstanceError::Infeasible(
            "fan needs a path of at least two vertices".into(),
        ));
    }
    let mut points = vec![(0.0, -1.0)];
    points.extend((0..len).map(|i| (i as f64 - len as f64 / 2.0, 1.0)));
    let mut edges: Vec<(usize, usize)> = (1..=len).map(|i| (0, i)).collect();
    edges.extend((1..len).map(|i| (i, i + 1)));
    Ok(PlaneGraph::from_coordinates(&points, &edges)?)
}

pub fn polygon(n: usize) -> Result<PlaneGraph, InstanceError> {
    if n < 3 {
        return Err(InstanceError::Infeasible(
            "polygon needs at least three corners".into(),
        ));
    }
    let points: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    // Zigzag: 1-(n-1), (n-1)-2, 2-(n-2), ...
    let (mut lo, mut hi, mut from_lo) = (1, n - 1, true);
    while hi > lo + 1 {
        if from_lo {
            edges.push((lo, hi));
            lo += 1;
        } else {
            edges.push((hi, lo));
            hi -= 1;
        }
        from_lo = !from_lo;
    }
    Ok(PlaneGraph::from_coordinates(&points, &edges)?)
}

/// Plane embedding of the frozen-family graph for `k = 2`, which is planar
/// for `p = 3` (a 6-cycle) and `p = 4` (the cube).
pub fn frozen_embed(p: usize) -> Result<PlaneGraph, InstanceError> {
    let (g, _) = frozen_family(p, 2).map_err(|e| InstanceError::Infeasible(e.to_string()))?;
    let points: Vec<(f64, f64)> = match p {
        3 => {
            // Cycle a1 b2 a3 b1 a2 b3 with a_i = i - 1 and b_i = i + 2.
            let cycle = [0, 4, 2, 3, 1, 5];
            let mut pts = vec![(0.0, 0.0); 6];
            for (i, &v) in cycle.iter().enumerate() {
                let t = std::f64::consts::TAU * i as f64 / 6.0;
                pts[v] = (t.cos(), t.sin());
            }
            pts
        }
        4 => {
            // a_i sits on an even-weight cube corner, b_i on its antipode.
            let even = [0b000, 0b011, 0b101, 0b110];
            let mut pts: Vec<(f64, f64)> = even.iter().map(|&c| cube_point(c)).collect();
            pts.extend(even.iter().map(|&c| cube_point(c ^ 0b111)));
            pts
        }
        _ => {
            return Err(InstanceError::Infeasible(format!(
                "frozen-family graph with p = {p}, k = 2 has no embedding here"
            )))
        }
    };
    let edges: Vec<_> = g.edges().collect();
    Ok(PlaneGraph::from_coordinates(&points, &edges)?)
}

/// A triangulated sphere held as consistently oriented triangles.
#[derive(Debug, Clone)]
pub struct Triangulation {
    n: usize,
    tris: Vec<[usize; 3]>,
    adj: Vec<BTreeSet<usize>>,
}

impl Triangulation {
    pub fn tetrahedron() -> Self {
        Self::from_triangles(4, vec![[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]])
    }

    pub fn from_triangles(n: usize, tris: Vec<[usize; 3]>) -> Self {
        let mut adj = vec![BTreeSet::new(); n];
        for &[a, b, c] in &tris {
            for (x, y) in [(a, b), (b, c), (c, a)] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        Triangulation { n, tris, adj }
    }

    /// Stacks vertices into random triangles, then applies `2n` random flips.
    pub fn random(r: &mut impl Rng, n: usize) -> Result<Self, InstanceError> {
        if n < 4 {
            return Err(InstanceError::Infeasible(
                "a triangulation needs at least 4 vertices".into(),
            ));
        }
        let mut t = Self::tetrahedron();
        while t.n < n {
            let i = r.gen_range(0..t.tris.len());
            t.stack(i);
        }
        for _ in 0..2 * n {
            let [a, b, _] = t.tris[r.gen_range(0..t.tris.len())];
            t.flip(a, b);
        }
        Ok(t)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Inserts a new vertex inside triangle `i`.
    pub fn stack(&mut self, i: usize) -> VertexId {
        let [a, b, c] = self.tris[i];
        let x = self.n;
        self.n += 1;
        self.adj.push(BTreeSet::from([a, b, c]));
        for v in [a, b, c] {
            self.adj[v].insert(x);
        }
        self.tris[i] = [a, b, x];
        self.tris.push([b, c, x]);
        self.tris.push([c, a, x]);
        x
    }

    fn with_dart(&self, a: usize, b: usize) -> Option<usize> {
        self.tris
            .iter()
            .position(|&[x, y, z]| (x, y) == (a, b) || (y, z) == (a, b) || (z, x) == (a, b))
    }

    fn apex(&self, i: usize, a: usize, b: usize) -> usize {
        self.tris[i]
            .into_iter()
            .find(|&x| x != a && x != b)
            .expect("triangle has a third corner")
    }

    /// Replaces edge `ab` by the other diagonal of its two triangles. Refuses
    /// when that would create a repeated edge or a vertex of degree 2.
    pub fn flip(&mut self, a: usize, b: usize) -> bool {
        let (Some(i), Some(j)) = (self.with_dart(a, b), self.with_dart(b, a)) else {
            return false;
        };
        let (c, d) = (self.apex(i, a, b), self.apex(j, a, b));
        if c == d || self.adj[c].contains(&d) || self.degree(a) <= 3 || self.degree(b) <= 3 {
            return false;
        }
        self.tris[i] = [a, d, c];
        self.tris[j] = [d, b, c];
        self.adj[a].remove(&b);
        self.adj[b].remove(&a);
        self.adj[c].insert(d);
        self.adj[d].insert(c);
        true
    }

    fn deficit(&self, target: usize) -> usize {
        (0..self.n)
            .map(|v| target.saturating_sub(self.degree(v)))
            .sum()
    }

    /// Flips edges to lift the minimum degree to `target`.
    pub fn raise_min_degree(&mut self, r: &mut impl Rng, target: usize, rounds: usize) -> bool {
        for _ in 0..rounds {
            let low: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) < target).collect();
            let Some(&c) = low.choose(r) else {
                return true;
            };
            let before = self.deficit(target);
            let around: Vec<[usize; 3]> = self
                .tris
                .iter()
                .copied()
                .filter(|t| t.contains(&c))
                .collect();
            let &t = around.choose(r).expect("every vertex lies on a triangle");
            let k = t.iter().position(|&x| x == c).expect("c is a corner");
            let (x, y) = (t[(k + 1) % 3], t[(k + 2) % 3]);
            let Some(j) = self.with_dart(y, x) else {
                continue;
            };
            let d = self.apex(j, x, y);
            // Mostly undo flips that make things worse, to escape local minima.
            if self.flip(x, y) && self.deficit(target) > before && r.gen_bool(0.9) {
                self.flip(c, d);
            }
        }
        self.min_degree() >= target
    }

    /// Triangles across the three edges of each triangle.
    fn triangle_neighbors(&self) -> Vec<[usize; 3]> {
        let mut at: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (i, &[a, b, c]) in self.tris.iter().enumerate() {
            for d in [(a, b), (b, c), (c, a)] {
                at.insert(d, i);
            }
        }
        self.tris
            .iter()
            .map(|&[a, b, c]| [at[&(b, a)], at[&(c, b)], at[&(a, c)]])
            .collect()
    }

    /// Searches for edges whose deletion leaves every vertex with degree at
    /// least `delta` and every remaining 3-face next to a 4-face. Each deleted
    /// edge merges two triangles, and no triangle is merged twice.
    pub fn merge_matching(
        &self,
        r: &mut impl Rng,
        delta: usize,
        steps: usize,
    ) -> Option<Vec<(usize, usize)>> {
        let nb = self.triangle_neighbors();
        let m = self.tris.len();
        let mut mate: Vec<Option<usize>> = vec![None; m];
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let shared = |i: usize, j: usize| -> (usize, usize) {
            let s: Vec<usize> = self.tris[i]
                .into_iter()
                .filter(|x| self.tris[j].contains(x))
                .collect();
            (s[0], s[1])
        };
        let bad = |mate: &[Option<usize>], i: usize| {
            mate[i].is_none() && nb[i].iter().all(|&j| mate[j].is_none())
        };
        for _ in 0..steps {
            let open: Vec<usize> = (0..m).filter(|&i| bad(&mate, i)).collect();
            let Some(&t) = open.choose(r) else {
                let mut cut: Vec<(usize, usize)> = (0..m)
                    .filter_map(|i| mate[i].filter(|&j| i < j).map(|j| shared(i, j)))
                    .collect();
                cut.sort_unstable();
                return Some(cut);
            };
            let mut moves = Vec::new();
            for j in std::iter::once(t).chain(nb[t]) {
                for &k in &nb[j] {
                    let (u, v) = shared(j, k);
                    if mate[j].is_none() && mate[k].is_none() && deg[u] > delta && deg[v] > delta {
                        moves.push((j, k));
                    }
                }
            }
            match moves.choose(r) {
                Some(&(j, k)) => {
                    let (u, v) = shared(j, k);
                    mate[j] = Some(k);
                    mate[k] = Some(j);
                    deg[u] -= 1;
                    deg[v] -= 1;
                }
                None => {
                    // Undo a merge near t to make room.
                    let mut near: Vec<usize> = std::iter::once(t)
                        .chain(nb[t])
                        .flat_map(|j| std::iter::once(j).chain(nb[j]))
                        .filter(|&j| mate[j].is_some())
                        .collect();
                    if near.is_empty() {
                        near = (0..m).filter(|&j| mate[j].is_some()).collect();
                    }
                    let &j = near.choose(r)?;
                    let k = mate[j].expect("j is merged");
                    let (u, v) = shared(j, k);
                    mate[j] = None;
                    mate[k] = None;
                    deg[u] += 1;
                    deg[v] += 1;
                }
            }
        }
        None
    }

    pub fn to_plane(&self) -> Result<PlaneGraph, PlaneGraphError> {
        PlaneGraph::from_triangles(self.n, &self.tris)
    }
}

/// Random triangulation with minimum degree at least `delta`.
pub fn triangulation_with_min_degree(
    r: &mut impl Rng,
    n: usize,
    delta: usize,
) -> Result<Triangulation, InstanceError> {
    if delta >= 6 || (delta == 5 && (n < 12 || n == 13)) || (delta == 4 && n < 6) {
        return Err(InstanceError::Infeasible(format!(
            "no triangulation on {n} vertices has minimum degree {delta}"
        )));
    }
    for _ in 0..200 {
        let mut t = Triangulation::random(r, n)?;
        if t.raise_min_degree(r, delta, 400 * n) {
            return Ok(t);
        }
    }
    Err(InstanceError::GaveUp(200))
}

/// Random connected plane graph: a random triangulation with a random share
/// of its non-bridge edges removed.
pub fn random_planar(r: &mut impl Rng, n: usize) -> Result<PlaneGraph, InstanceError> {
    if n < 4 {
        return Ok(match n {
            1 => PlaneGraph::build(vec![vec![]])?,
            2 => PlaneGraph::build(vec![vec![1], vec![0]])?,
            3 => PlaneGraph::build(vec![vec![1, 2], vec![2, 0], vec![0, 1]])?,
            _ => return Err(InstanceError::Infeasible("empty graph".into())),
        });
    }
    let mut g = Triangulation::random(r, n)?.to_plane()?;
    let share: f64 = r.gen_range(0.0..0.6);
    let mut edges: Vec<_> = g.edges().collect();
    edges.shuffle(r);
    for (u, v) in edges
        .into_iter()
        .take((share * (3 * n - 6) as f64) as usize)
    {
        if let Ok(h) = g.delete_edge(u, v) {
            g = h;
        }
    }
    Ok(g)
}

/// Medial graph: one vertex per edge, joined when the edges are consecutive
/// around a face. It is 4-regular.
pub fn medial(g: &PlaneGraph) -> Result<PlaneGraph, PlaneGraphError> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let id: BTreeMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let eid = |a: usize, b: usize| id[&(a.min(b), a.max(b))];
    let around = |v: usize, u: usize, step: isize| {
        let rot = g.rotation(v);
        let k = rot.iter().position(|&w| w == u).expect("u is a neighbor") as isize;
        rot[(k + step).rem_euclid(rot.len() as isize) as usize]
    };
    let rot = edges
        .iter()
        .map(|&(u, v)| {
            vec![
                eid(u, around(u, v, -1)),
                eid(v, around(v, u, 1)),
                eid(v, around(v, u, -1)),
                eid(u, around(u, v, 1)),
            ]
        })
        .collect();
    PlaneGraph::build(rot)
}

/// Dual graph: one vertex per face, joined across each edge. Fails when two
/// faces share more than one edge.
pub fn dual(g: &PlaneGraph) -> Result<PlaneGraph, PlaneGraphError> {
    let rot = g
        .faces()
        .iter()
        .map(|f| {
            f.darts()
                .map(|(u, v)| g.face_of_dart(v, u).expect("edge is present"))
                .collect()
        })
        .collect();
    PlaneGraph::build(rot)
}

/// Deletes edges on offending 3-faces (or 4-cycles, for `No4`) until the
/// graph lies in the strategy's class.
pub fn delete_toward_class(r: &mut impl Rng, g: &PlaneGraph, strategy: Strategy) -> PlaneGraph {
    let mut g = g.clone();
    for _ in 0..10 * g.edge_count() {
        if strategy.in_class(&g) {
            break;
        }
        let candidates: Vec<(usize, usize)> = match strategy {
            Strategy::No4 => four_cycle_edges(&g),
            _ => offending_edges(&g, strategy),
        };
        let Some(&(u, v)) = candidates.choose(r) else {
            break;
        };
        if let Ok(h) = g.delete_edge(u, v) {
            g = h;
        }
    }
    g
}

fn offending_edges(g: &PlaneGraph, strategy: Strategy) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (f, face) in g.faces().iter().enumerate() {
        let adjacent = g.adjacent_faces(f);
        let threes = adjacent.iter().filter(|&&h| g.face(h).len() == 3).count();
        let bad = match strategy {
            Strategy::G1 => face.len() == 3 && threes > 2,
            Strategy::G2 => face.len() == 3 && threes > 1,
            Strategy::Gcal => {
                (face.len() == 3 && adjacent.iter().any(|&h| g.face(h).len() < 5))
                    || (face.len() == 5 && threes > 3)
            }
            Strategy::No4 => false,
        };
        if bad {
            out.extend(face.darts().map(|(u, v)| (u.min(v), u.max(v))));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn four_cycle_edges(g: &PlaneGraph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in g.vertices() {
        for b in g.vertices().filter(|&b| b > a) {
            let common: Vec<usize> = g
                .rotation(a)
                .iter()
                .copied()
                .filter(|&x| g.has_edge(x, b))
                .collect();
            if common.len() >= 2 {
                out.extend([
                    (a, common[0]),
                    (a, common[1]),
                    (b, common[0]),
                    (b, common[1]),
                ]);
            }
        }
    }
    out.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect()
}

/// Plane graph with minimum degree 5 in which every 3-face meets at most two
/// others: the frequency-3 geodesic sphere with a random matching of its
/// triangle pairs merged into 4-faces. Such graphs need at least 32 vertices,
/// and the frequency-2 sphere admits no such matching.
fn sparse_geodesic(r: &mut impl Rng) -> Result<PlaneGraph, InstanceError> {
    let t = geodesic_triangulation(3)?;
    for _ in 0..50 {
        if let Some(cut) = t.merge_matching(r, 5, 200 * t.vertex_count()) {
            let mut g = t.to_plane()?;
            for (u, v) in cut {
                g = g.delete_edge(u, v)?;
            }
            return Ok(g);
        }
    }
    Err(InstanceError::GaveUp(50))
}

/// Random member of the strategy's class with its minimum degree.
pub fn hypothesis_instance(
    r: &mut impl Rng,
    strategy: Strategy,
) -> Result<PlaneGraph, InstanceError> {
    for _ in 0..100 {
        let g = match strategy {
            Strategy::G1 => sparse_geodesic(r)?,
            Strategy::G2 => {
                let n = r.gen_range(6..=20);
                medial(&triangulation_with_min_degree(r, n, 4)?.to_plane()?)?
            }
            Strategy::No4 => {
                let n = *[12, 14, 15, 16, 17, 18, 19, 20]
                    .choose(r)
                    .expect("nonempty");
                medial(&triangulation_with_min_degree(r, n, 5)?.to_plane()?)?
            }
            Strategy::Gcal => {
                let n = r.gen_range(6..=20);
                let mut t = triangulation_with_min_degree(r, n, 4)?;
                stack_sparsely(r, &mut t);
                dual(&t.to_plane()?)?
            }
        };
        let floor = strategy.degree_floor() + 1;
        if strategy.in_class(&g) && g.min_degree() >= floor {
            return Ok(g);
        }
    }
    Err(InstanceError::GaveUp(100))
}

/// Stacks degree-3 vertices into triangles whose corners have degree at
/// least 4 and are not yet next to a stacked vertex. In the dual, the new
/// vertices become 3-faces surrounded by 5⁺-faces.
fn stack_sparsely(r: &mut impl Rng, t: &mut Triangulation) {
    let original = t.vertex_count();
    let mut touched = vec![false; original];
    let mut order: Vec<usize> = (0..t.tris.len()).collect();
    order.shuffle(r);
    let share = r.gen_range(0.0..1.0);
    for i in order {
        let tri = t.tris[i];
        if tri
            .iter()
            .any(|&v| v >= original || touched[v] || t.degree(v) < 4)
            || !r.gen_bool(share)
        {
            continue;
        }
        for v in tri {
            touched[v] = true;
        }
        t.stack(i);
    }
}

/// Random member of the strategy's class on roughly `n` vertices, from a
/// mix of generators.
pub fn class_instance(
    r: &mut impl Rng,
    strategy: Strategy,
    n: usize,
) -> Result<PlaneGraph, InstanceError> {
    if n < 4 {
        return Err(InstanceError::Infeasible(
            "class instances need at least 4 vertices".into(),
        ));
    }
    for _ in 0..100 {
        let start = if r.gen_bool(0.5) {
            random_planar(r, n)?
        } else {
            Triangulation::random(r, n)?.to_plane()?
        };
        let g = delete_toward_class(r, &start, strategy);
        if strategy.in_class(&g) {
            return Ok(g);
        }
    }
    Err(InstanceError::GaveUp(100))
}

/// Uniformly random lists of `size` colors drawn from `1..=universe`.
pub fn random_lists(r: &mut impl Rng, n: usize, size: usize, universe: usize) -> ListAssignment {
    let pool: Vec<Color> = (1..=universe as Color).collect();
    ListAssignment::new(
        (0..n)
            .map(|_| pool.choose_multiple(r, size).copied().collect())
            .collect(),
    )
}

/// Random proper list coloring: colors vertices in reverse degeneracy order,
/// picking uniformly among free colors. Succeeds whenever lists exceed the
/// degeneracy; otherwise retries a few times.
pub fn random_coloring(r: &mut impl Rng, g: &Graph, lists: &ListAssignment) -> Option<Coloring> {
    let (_, peel) = g.degeneracy_order();
    for _ in 0..20 {
        let mut c: Vec<Color> = vec![0; g.vertex_count()];
        let ok = peel.iter().rev().all(|&v| {
            let free: Vec<Color> = lists
                .list(v)
                .iter()
                .copied()
                .filter(|&x| g.neighbors(v).iter().all(|&u| c[u] != x))
                .collect();
            free.choose(r).map(|&x| c[v] = x).is_some()
        });
        if ok {
            return Some(c);
        }
    }
    None
}

/// Same as [`random_coloring`] on a plane graph, leaving deleted ids at the
/// first color of their list.
pub fn random_plane_coloring(
    r: &mut impl Rng,
    g: &PlaneGraph,
    lists: &ListAssignment,
) -> Option<Coloring> {
    let graph = g.to_graph();
    let mut c = random_coloring(r, &graph, lists)?;
    for (v, x) in c.iter_mut().enumerate() {
        if !g.contains(v) {
            *x = lists.list(v).first().copied().unwrap_or(1);
        }
    }
    Some(c)
}
