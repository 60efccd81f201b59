//! Charges and discharging audits.
//!
//! Charges are integers in units of 1/6. Under the balanced assignment a
//! vertex of degree `d` gets `6(d - 4)` and a face of length `l` gets
//! `6(l - 4)`; by Euler's formula the total is always `-48` (that is, `-8`).
//! Each strategy with a discharging argument moves charge by fixed local
//! rules; a graph in the strategy's class that avoids every reducible
//! configuration would end with no negative element, which is impossible.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::config::{facial_path_to_three, find_within, pair_from_paths, three_side_conflicts};
use crate::config::{Configuration, FacialPath, Strategy};
use crate::plane::{FaceId, PlaneGraph, VertexId};

/// One sixth of a unit of charge.
pub const SIXTH: i64 = 1;
const THIRD: i64 = 2;
const HALF: i64 = 3;
const TWO_THIRDS: i64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Vertex(VertexId),
    Face(FaceId),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "vertex {v}"),
            Element::Face(x) => write!(f, "face {x}"),
        }
    }
}

/// Charge of every vertex (indexed by id; deleted ids hold 0) and face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    pub vertex: Vec<i64>,
    pub face: Vec<i64>,
}

impl ChargeLedger {
    pub fn total(&self) -> i64 {
        self.vertex.iter().sum::<i64>() + self.face.iter().sum::<i64>()
    }

    pub fn get(&self, e: Element) -> i64 {
        match e {
            Element::Vertex(v) => self.vertex[v],
            Element::Face(f) => self.face[f],
        }
    }

    fn add(&mut self, e: Element, amount: i64) {
        match e {
            Element::Vertex(v) => self.vertex[v] += amount,
            Element::Face(f) => self.face[f] += amount,
        }
    }

    /// Live elements with negative charge, vertices first.
    pub fn negative(&self, g: &PlaneGraph) -> Vec<(Element, i64)> {
        let vs = g.vertices().map(Element::Vertex);
        let fs = (0..g.face_count()).map(Element::Face);
        vs.chain(fs)
            .map(|e| (e, self.get(e)))
            .filter(|&(_, c)| c < 0)
            .collect()
    }
}

pub fn balanced_charges(g: &PlaneGraph) -> ChargeLedger {
    let mut vertex = vec![0; g.capacity()];
    for v in g.vertices() {
        vertex[v] = 6 * (g.degree(v) as i64 - 4);
    }
    let face = g.faces().iter().map(|f| 6 * (f.len() as i64 - 4)).collect();
    ChargeLedger { vertex, face }
}

/// Triangle corners and special diamonds at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DiamondStats {
    /// Number of corners of the vertex on 3-faces.
    pub triangles: usize,
    /// Number of edges at the vertex that are the middle edge of a special diamond.
    pub special: usize,
}

impl DiamondStats {
    pub fn weight(&self) -> usize {
        self.triangles + self.special
    }
}

/// The two 3-faces on either side of `vu`, as their apexes, when they form a
/// diamond (distinct faces, distinct apexes).
fn diamond_apexes(g: &PlaneGraph, v: VertexId, u: VertexId) -> Option<(VertexId, VertexId)> {
    let (f1, f2) = g.faces_of_edge(v, u)?;
    let apex = |f: FaceId| {
        let face = g.face(f);
        (face.len() == 3)
            .then(|| face.walk().iter().copied().find(|&x| x != v && x != u))
            .flatten()
    };
    let (a, b) = (apex(f1)?, apex(f2)?);
    (f1 != f2 && a != b).then_some((a, b))
}

/// Length of the face across edge `va` from the 3-face `{v, u, a}`.
fn across(g: &PlaneGraph, v: VertexId, a: VertexId, u: VertexId) -> usize {
    let (f1, f2) = g.faces_of_edge(v, a).expect("edge exists");
    let tri = |f: FaceId| g.face(f).len() == 3 && g.face(f).walk().contains(&u);
    let other = if tri(f1) { f2 } else { f1 };
    g.face(other).len()
}

/// Which of the two side edges at `v` of the diamond with middle edge `vu`
/// lie on a 4⁺-face. A diamond is special at `v` when at least one does.
fn special_sides(g: &PlaneGraph, v: VertexId, u: VertexId) -> Option<(bool, bool)> {
    let (a, b) = diamond_apexes(g, v, u)?;
    Some((across(g, v, a, u) >= 4, across(g, v, b, u) >= 4))
}

fn is_special(g: &PlaneGraph, v: VertexId, u: VertexId) -> bool {
    special_sides(g, v, u).is_some_and(|(x, y)| x || y)
}

pub fn diamond_stats(g: &PlaneGraph) -> Vec<DiamondStats> {
    let mut out = vec![DiamondStats::default(); g.capacity()];
    for v in g.vertices() {
        out[v].triangles = g.corner_faces(v).filter(|&f| g.face(f).len() == 3).count();
        out[v].special = g
            .rotation(v)
            .iter()
            .filter(|&&u| is_special(g, v, u))
            .count();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub from: Element,
    pub to: Element,
    /// In sixths.
    pub amount: i64,
    pub rule: &'static str,
    /// For routed charge: the source vertex followed by the path to the sink.
    pub route: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DischargeReport {
    pub strategy: Strategy,
    /// The graph meets the minimum degree and class the rules assume.
    pub hypothesis: bool,
    pub initial: ChargeLedger,
    pub after: ChargeLedger,
    pub transfers: Vec<Transfer>,
    pub negative: Vec<(Element, i64)>,
    /// Configurations met while applying the rules.
    pub conflicts: Vec<Configuration>,
    /// Rule applications worth a second look, such as an edge that qualifies
    /// for a diamond transfer on both sides.
    pub flags: Vec<String>,
}

/// Minimum degree each discharging plan assumes.
pub fn plan_min_degree(strategy: Strategy) -> Option<usize> {
    match strategy {
        Strategy::G1 => Some(5),
        Strategy::G2 => Some(4),
        Strategy::Gcal => Some(3),
        Strategy::No4 => None,
    }
}

/// Applies the discharging rules of `strategy` to the balanced charges.
/// Returns `None` for strategies without a discharging argument.
pub fn run_discharge(g: &PlaneGraph, strategy: Strategy) -> Option<DischargeReport> {
    let min_degree = plan_min_degree(strategy)?;
    let initial = balanced_charges(g);
    let mut run = Run {
        g,
        transfers: Vec::new(),
        conflicts: Vec::new(),
        flags: Vec::new(),
    };
    match strategy {
        Strategy::G1 => run.diamonds(),
        Strategy::G2 => run.triangles(),
        Strategy::Gcal => run.routes(),
        Strategy::No4 => unreachable!("no plan"),
    }
    let mut after = initial.clone();
    for t in &run.transfers {
        after.add(t.from, -t.amount);
        after.add(t.to, t.amount);
    }
    let negative = after.negative(g);
    Some(DischargeReport {
        strategy,
        hypothesis: g.min_degree() >= min_degree && strategy.in_class(g),
        initial,
        after,
        transfers: run.transfers,
        negative,
        conflicts: run.conflicts,
        flags: run.flags,
    })
}

struct Run<'a> {
    g: &'a PlaneGraph,
    transfers: Vec<Transfer>,
    conflicts: Vec<Configuration>,
    flags: Vec<String>,
}

impl Run<'_> {
    fn send(&mut self, from: Element, to: Element, amount: i64, rule: &'static str) {
        self.transfers.push(Transfer {
            from,
            to,
            amount,
            rule,
            route: Vec::new(),
        });
    }

    fn triangle_faces(&self) -> Vec<FaceId> {
        (0..self.g.face_count())
            .filter(|&f| self.g.face(f).len() == 3)
            .collect()
    }

    /// Minimum degree 5: vertices pay their triangles, and 6⁺-vertices
    /// refund 5-neighbors across special diamonds.
    fn diamonds(&mut self) {
        let g = self.g;
        for f in self.triangle_faces() {
            for &x in g.face(f).walk() {
                self.send(Element::Vertex(x), Element::Face(f), THIRD, "R1");
            }
        }
        for v in g.vertices() {
            let (amount, rule) = match g.degree(v) {
                6 => (SIXTH, "R2"),
                d if d >= 7 => (THIRD, "R3"),
                _ => continue,
            };
            for &u in g.rotation(v) {
                if g.degree(u) != 5 {
                    continue;
                }
                let Some((a, b)) = special_sides(g, v, u) else {
                    continue;
                };
                if a || b {
                    self.send(Element::Vertex(v), Element::Vertex(u), amount, rule);
                }
                if a && b {
                    self.flags
                        .push(format!("edge {v}-{u} is special on both sides; sent once"));
                }
            }
        }
    }

    /// Minimum degree 4: 5⁺-vertices pay their triangles according to the
    /// degrees of the other two corners.
    fn triangles(&mut self) {
        let g = self.g;
        for f in self.triangle_faces() {
            let walk = g.face(f).walk().to_vec();
            for (i, &x) in walk.iter().enumerate() {
                let others = [walk[(i + 1) % 3], walk[(i + 2) % 3]].map(|y| g.degree(y));
                let (lo, hi) = (others[0].min(others[1]), others[0].max(others[1]));
                let amount = match (g.degree(x), lo, hi) {
                    (5, _, _) => THIRD,
                    (d, 4, 5) if d >= 6 => TWO_THIRDS,
                    (d, 4, h) if d >= 6 && h >= 6 => HALF,
                    (d, l, _) if d >= 6 && l >= 5 => THIRD,
                    _ => continue,
                };
                let rule = if g.degree(x) == 5 { "R1" } else { "R2" };
                self.send(Element::Vertex(x), Element::Face(f), amount, rule);
            }
        }
    }

    /// Minimum degree 3: 5⁺-vertices send a third through each edge towards
    /// 3-vertices, and long faces pay adjacent triangles and 3-vertices.
    fn routes(&mut self) {
        let g = self.g;
        for v in g.vertices().filter(|&v| g.degree(v) >= 5) {
            for &u in g.rotation(v) {
                match g.degree(u) {
                    3 => self.send(Element::Vertex(v), Element::Vertex(u), THIRD, "R1a"),
                    4 => {
                        let path = match facial_path_to_three(g, v, u, 3) {
                            FacialPath::NotFound => continue,
                            FacialPath::Unique(p) => p,
                            FacialPath::Conflict(p1, p2) => {
                                let pair = pair_from_paths(p1.clone(), p2);
                                if !self.conflicts.contains(&pair) {
                                    self.conflicts.push(pair);
                                }
                                p1
                            }
                        };
                        let sink = *path.last().expect("path ends at a 3-vertex");
                        let mut route = vec![v];
                        route.extend(path);
                        self.transfers.push(Transfer {
                            from: Element::Vertex(v),
                            to: Element::Vertex(sink),
                            amount: THIRD,
                            rule: "R1c",
                            route,
                        });
                    }
                    _ => {}
                }
            }
        }
        for f in 0..g.face_count() {
            let face = g.face(f);
            let len = face.len();
            if len < 5 {
                continue;
            }
            let (vertex_rule, face_rule) = match len {
                5 | 6 => (None, "R2"),
                7 => (Some("R3a"), "R3b"),
                _ => (Some("R4a"), "R4b"),
            };
            match vertex_rule {
                Some("R3a") => {
                    let mut sinks = BTreeSet::new();
                    for (x, y) in face.darts() {
                        for (z, w) in [(x, y), (y, x)] {
                            if g.degree(z) == 3 && g.degree(w) == 4 {
                                sinks.insert(z);
                            }
                        }
                    }
                    for z in sinks {
                        self.send(Element::Face(f), Element::Vertex(z), THIRD, "R3a");
                    }
                }
                Some(rule) => {
                    for &z in face.walk().iter().filter(|&&z| g.degree(z) == 3) {
                        self.send(Element::Face(f), Element::Vertex(z), THIRD, rule);
                    }
                }
                None => {}
            }
            let targets: Vec<FaceId> = face
                .darts()
                .filter_map(|(x, y)| g.face_of_dart(y, x))
                .filter(|&h| h != f && g.face(h).len() == 3)
                .collect();
            for h in targets {
                self.send(Element::Face(f), Element::Face(h), THIRD, face_rule);
            }
        }
        for c in three_side_conflicts(g) {
            if !self.conflicts.contains(&c) {
                self.conflicts.push(c);
            }
        }
    }
}

/// Vertices within `radius` steps of `seeds`.
pub fn ball(
    g: &PlaneGraph,
    seeds: impl IntoIterator<Item = VertexId>,
    radius: usize,
) -> BTreeSet<VertexId> {
    let mut dist = vec![usize::MAX; g.capacity()];
    let mut queue = VecDeque::new();
    for s in seeds {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        if dist[u] == radius {
            continue;
        }
        for &w in g.rotation(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    (0..g.capacity())
        .filter(|&v| dist[v] != usize::MAX)
        .collect()
}

/// How far from a negative element the rules' case analysis looks before it
/// meets a configuration.
pub fn explanation_radius(strategy: Strategy) -> usize {
    match strategy {
        Strategy::G1 => 1,
        Strategy::G2 => 2,
        Strategy::Gcal | Strategy::No4 => 6,
    }
}

/// Pairs every negative element with a configuration of the strategy lying
/// within [`explanation_radius`] of it, if there is one.
pub fn explain_negatives(
    g: &PlaneGraph,
    report: &DischargeReport,
) -> Vec<(Element, Option<Configuration>)> {
    let radius = explanation_radius(report.strategy);
    report
        .negative
        .iter()
        .map(|&(e, _)| {
            let seeds: Vec<VertexId> = match e {
                Element::Vertex(v) => vec![v],
                Element::Face(f) => g.face(f).walk().to_vec(),
            };
            let region = ball(g, seeds, radius);
            (e, find_within(g, report.strategy, &region))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> PlaneGraph {
        let tris = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 1],
            [5, 2, 1],
            [5, 3, 2],
            [5, 4, 3],
            [5, 1, 4],
        ];
        PlaneGraph::from_triangles(6, &tris).unwrap()
    }

    #[test]
    fn balanced_total_is_minus_eight() {
        let g = octahedron();
        let c = balanced_charges(&g);
        assert_eq!(c.total(), -48);
        assert!(c.vertex.iter().all(|&x| x == 0));
        assert!(c.face.iter().all(|&x| x == -6));
    }

    #[test]
    fn single_vertex_and_edge_totals() {
        let g = PlaneGraph::build(vec![vec![]]).unwrap();
        assert_eq!(balanced_charges(&g).total(), -48);
        let g = PlaneGraph::build(vec![vec![1], vec![0]]).unwrap();
        assert_eq!(balanced_charges(&g).total(), -48);
    }

    #[test]
    fn one_special_diamond() {
        // v = 0 with neighbors 1, 2, 3; triangles 012 and 023; 4 closes a 4-face 0-3-4-1.
        let pts = [(0.0, 0.0), (-1.0, 1.0), (0.0, 2.0), (1.0, 1.0), (0.0, -1.5)];
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 4), (3, 4)];
        let g = PlaneGraph::from_coordinates(&pts, &edges).unwrap();
        let s = diamond_stats(&g)[0];
        assert_eq!(s.triangles, 2);
        assert_eq!(s.special, 1);
    }

    #[test]
    fn discharge_conserves_charge() {
        let g = octahedron();
        for s in [Strategy::G1, Strategy::G2, Strategy::Gcal] {
            let r = run_discharge(&g, s).unwrap();
            assert_eq!(r.after.total(), -48);
        }
        assert!(run_discharge(&g, Strategy::No4).is_none());
    }
}
