//! Reducible configurations and how to find them.
//!
//! Each recoloring strategy pairs a minimum-degree floor with a set of local
//! configurations; a graph in the strategy's class always contains one of
//! them. The search order and tie-breaking here are fixed so that recursion is
//! reproducible: the smallest role-ordered vertex tuple wins.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::plane::{PlaneGraph, VertexId};

/// The four plane-graph recoloring strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    /// Minimum degree 5 territory; lists of 10, at most 190 recolorings.
    G1,
    /// Lists of 9, at most 13 recolorings.
    G2,
    /// Lists of 7, at most 242 recolorings.
    Gcal,
    /// No 4-cycles; lists of 8, at most 29 recolorings.
    No4,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::G1, Strategy::G2, Strategy::Gcal, Strategy::No4];

    /// Vertices of at most this degree are always reducible.
    pub fn degree_floor(self) -> usize {
        match self {
            Strategy::G1 => 4,
            Strategy::G2 => 3,
            Strategy::Gcal => 2,
            Strategy::No4 => 3,
        }
    }

    pub fn list_floor(self) -> usize {
        match self {
            Strategy::G1 => 10,
            Strategy::G2 => 9,
            Strategy::Gcal => 7,
            Strategy::No4 => 8,
        }
    }

    /// Maximum number of times any vertex is recolored.
    pub fn budget(self) -> usize {
        match self {
            Strategy::G1 => 190,
            Strategy::G2 => 13,
            Strategy::Gcal => 242,
            Strategy::No4 => 29,
        }
    }

    /// Whether the embedding lies in the class the strategy is proven for.
    pub fn in_class(self, g: &PlaneGraph) -> bool {
        let c = g.classify();
        match self {
            Strategy::G1 => c.in_g1,
            Strategy::G2 => c.in_g2,
            Strategy::Gcal => c.in_gcal,
            Strategy::No4 => !c.has_4cycle,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::G1 => "g1",
            Strategy::G2 => "g2",
            Strategy::Gcal => "gcal",
            Strategy::No4 => "no4",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| format!("unknown strategy {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConfigKind {
    /// A vertex of degree at most the given bound.
    LowDegree(usize),
    /// Two 3-faces sharing one edge, with three 5-vertices and one 6⁻-vertex.
    Diamond,
    /// Adjacent 4-vertices.
    FourFourEdge,
    /// Triangle with degrees 4, 5, 5.
    Triangle455,
    /// Triangle with degrees 4, 5, 6 whose 6-vertex has a further 4-neighbor.
    Triangle456,
    /// Adjacent 3-vertices.
    ThreeThreeEdge,
    /// Two paths from a 4-vertex through 4-vertices to 3-vertices.
    FourPathPair,
    /// Four paths from a 5-vertex through 4-vertices to 3-vertices.
    FivePathQuad,
    /// A 4-vertex on two 3-faces that share no edge, with mostly 4-vertices.
    BowTie,
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigKind::LowDegree(d) => write!(f, "low-degree-{d}"),
            ConfigKind::Diamond => f.write_str("diamond"),
            ConfigKind::FourFourEdge => f.write_str("edge-44"),
            ConfigKind::Triangle455 => f.write_str("triangle-455"),
            ConfigKind::Triangle456 => f.write_str("triangle-456"),
            ConfigKind::ThreeThreeEdge => f.write_str("edge-33"),
            ConfigKind::FourPathPair => f.write_str("paths-4"),
            ConfigKind::FivePathQuad => f.write_str("paths-5"),
            ConfigKind::BowTie => f.write_str("bowtie"),
        }
    }
}

impl FromStr for ConfigKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(d) = s.strip_prefix("low-degree-") {
            return d
                .parse()
                .map(ConfigKind::LowDegree)
                .map_err(|e| format!("{s:?}: {e}"));
        }
        Ok(match s {
            "diamond" => ConfigKind::Diamond,
            "edge-44" => ConfigKind::FourFourEdge,
            "triangle-455" => ConfigKind::Triangle455,
            "triangle-456" => ConfigKind::Triangle456,
            "edge-33" => ConfigKind::ThreeThreeEdge,
            "paths-4" => ConfigKind::FourPathPair,
            "paths-5" => ConfigKind::FivePathQuad,
            "bowtie" => ConfigKind::BowTie,
            _ => return Err(format!("unknown configuration kind {s:?}")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Vertex,
    Mid,
    Tip,
    U,
    V,
    W,
    X,
    Anchor,
    Center,
    Tri,
    Opp,
}

impl Role {
    const NAMES: [(Role, &'static str); 11] = [
        (Role::Vertex, "vertex"),
        (Role::Mid, "mid"),
        (Role::Tip, "tip"),
        (Role::U, "u"),
        (Role::V, "v"),
        (Role::W, "w"),
        (Role::X, "x"),
        (Role::Anchor, "anchor"),
        (Role::Center, "center"),
        (Role::Tri, "tri"),
        (Role::Opp, "opp"),
    ];
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = Role::NAMES
            .iter()
            .find(|(r, _)| r == self)
            .map(|(_, n)| *n)
            .unwrap_or("?");
        f.write_str(name)
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Role::NAMES
            .iter()
            .find(|(_, n)| *n == s)
            .map(|(r, _)| *r)
            .ok_or_else(|| format!("unknown role {s:?}"))
    }
}

/// A located configuration: labeled vertices plus, for the path kinds, the
/// paths themselves (each starting at the anchor).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub kind: ConfigKind,
    pub vertices: Vec<(Role, VertexId)>,
    pub paths: Vec<Vec<VertexId>>,
}

impl Configuration {
    fn new(kind: ConfigKind, vertices: Vec<(Role, VertexId)>) -> Self {
        Configuration {
            kind,
            vertices,
            paths: Vec::new(),
        }
    }

    fn with_paths(kind: ConfigKind, anchor: VertexId, paths: Vec<Vec<VertexId>>) -> Self {
        Configuration {
            kind,
            vertices: vec![(Role::Anchor, anchor)],
            paths,
        }
    }

    /// Vertices carrying role `r`, in witness order.
    pub fn role(&self, r: Role) -> Vec<VertexId> {
        self.vertices
            .iter()
            .filter(|(x, _)| *x == r)
            .map(|(_, v)| *v)
            .collect()
    }

    /// All vertices of the configuration, sorted.
    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.vertices
            .iter()
            .map(|(_, v)| *v)
            .chain(self.paths.iter().flatten().copied())
            .collect()
    }

    /// Tie-breaking key: role-ordered vertices, then the paths.
    pub fn key(&self) -> (Vec<VertexId>, Vec<Vec<VertexId>>) {
        (
            self.vertices.iter().map(|(_, v)| *v).collect(),
            self.paths.clone(),
        )
    }

    /// Checks the defining properties of the configuration in `g`.
    pub fn holds_in(&self, g: &PlaneGraph) -> bool {
        let present = self.vertex_set().iter().all(|&v| g.contains(v));
        present && self.check(g)
    }

    fn check(&self, g: &PlaneGraph) -> bool {
        let deg = |v: VertexId| g.degree(v);
        let one = |r| self.role(r).first().copied();
        match self.kind {
            ConfigKind::LowDegree(d) => one(Role::Vertex).is_some_and(|v| deg(v) <= d),
            ConfigKind::Diamond => {
                let (mids, tips) = (self.role(Role::Mid), self.role(Role::Tip));
                if mids.len() != 2 || tips.len() != 2 {
                    return false;
                }
                is_diamond(g, mids[0], mids[1], tips[0], tips[1])
                    && diamond_degrees_ok(&[mids[0], mids[1], tips[0], tips[1]].map(deg))
            }
            ConfigKind::FourFourEdge => match (one(Role::U), one(Role::V)) {
                (Some(u), Some(v)) => g.has_edge(u, v) && deg(u) == 4 && deg(v) == 4,
                _ => false,
            },
            ConfigKind::ThreeThreeEdge => match (one(Role::U), one(Role::V)) {
                (Some(u), Some(v)) => g.has_edge(u, v) && deg(u) == 3 && deg(v) == 3,
                _ => false,
            },
            ConfigKind::Triangle455 | ConfigKind::Triangle456 => {
                let (Some(u), Some(v), Some(w)) = (one(Role::U), one(Role::V), one(Role::W)) else {
                    return false;
                };
                let tri = g.has_edge(u, v) && g.has_edge(v, w) && g.has_edge(u, w);
                if self.kind == ConfigKind::Triangle455 {
                    tri && deg(u) == 4 && deg(v) == 5 && deg(w) == 5
                } else {
                    let x = one(Role::X);
                    tri && deg(u) == 4
                        && deg(v) == 5
                        && deg(w) == 6
                        && x.is_some_and(|x| x != u && x != v && g.has_edge(w, x) && deg(x) == 4)
                }
            }
            ConfigKind::FourPathPair => {
                self.paths.len() == 2
                    && self.paths.iter().all(|p| is_path_to_three(g, p, 4, 3))
                    && self.paths[0][1] != self.paths[1][1]
                    && self.paths[0][0] == self.paths[1][0]
            }
            ConfigKind::FivePathQuad => five_quad_ok(g, &self.paths),
            ConfigKind::BowTie => {
                let (Some(c), tri, opp) = (
                    one(Role::Center),
                    self.role(Role::Tri),
                    self.role(Role::Opp),
                ) else {
                    return false;
                };
                tri.len() == 2
                    && opp.len() == 2
                    && deg(c) == 4
                    && is_face_triangle(g, c, tri[0], tri[1])
                    && is_face_triangle(g, c, opp[0], opp[1])
                    && tri.iter().chain(&opp).collect::<BTreeSet<_>>().len() == 4
                    && tri.iter().chain(&opp).filter(|&&x| deg(x) != 4).count() <= 1
            }
        }
    }
}

impl fmt::Display for Configuration {
    /// `kind; role=vertex; ...; path=a,b,c`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for (r, v) in &self.vertices {
            write!(f, "; {r}={v}")?;
        }
        for p in &self.paths {
            let joined: Vec<String> = p.iter().map(ToString::to_string).collect();
            write!(f, "; path={}", joined.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Configuration {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split(';').map(str::trim);
        let kind: ConfigKind = parts.next().unwrap_or("").parse()?;
        let mut out = Configuration::new(kind, Vec::new());
        for part in parts {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| format!("expected role=vertex, got {part:?}"))?;
            if k == "path" {
                let path = v
                    .split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<VertexId>()
                            .map_err(|e| format!("{x:?}: {e}"))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                out.paths.push(path);
            } else {
                let role: Role = k.parse()?;
                let vertex = v.parse().map_err(|e| format!("{v:?}: {e}"))?;
                out.vertices.push((role, vertex));
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("no reducible configuration for strategy {strategy} in a graph with {vertices} vertices and minimum degree {min_degree}")]
    StructureNotFound {
        strategy: Strategy,
        vertices: usize,
        min_degree: usize,
    },
}

fn is_face_triangle(g: &PlaneGraph, a: VertexId, b: VertexId, c: VertexId) -> bool {
    [(a, b), (b, a)].iter().any(|&(x, y)| {
        g.face_of_dart(x, y).is_some_and(|f| {
            let face = g.face(f);
            face.len() == 3 && face.walk().contains(&c)
        })
    })
}

/// The two faces on either side of `ab` are 3-faces with distinct apexes.
fn diamond_tips(g: &PlaneGraph, a: VertexId, b: VertexId) -> Option<(VertexId, VertexId)> {
    let (f1, f2) = g.faces_of_edge(a, b)?;
    let apex = |f| {
        let face = g.face(f);
        (face.len() == 3)
            .then(|| face.walk().iter().copied().find(|&x| x != a && x != b))
            .flatten()
    };
    let (c, d) = (apex(f1)?, apex(f2)?);
    (f1 != f2 && c != d).then_some((c, d))
}

fn is_diamond(g: &PlaneGraph, a: VertexId, b: VertexId, c: VertexId, d: VertexId) -> bool {
    diamond_tips(g, a, b).is_some_and(|(x, y)| (x, y) == (c, d) || (y, x) == (c, d))
}

fn diamond_degrees_ok(degrees: &[usize; 4]) -> bool {
    let fives = degrees.iter().filter(|&&d| d == 5).count();
    fives == 4 || (fives == 3 && degrees.iter().any(|&d| d != 5 && d <= 6))
}

/// `p` starts at a vertex of degree `start_degree`, passes only through
/// 4-vertices (at most `max_interior` of them), and ends at a 3-vertex.
fn is_path_to_three(
    g: &PlaneGraph,
    p: &[VertexId],
    start_degree: usize,
    max_interior: usize,
) -> bool {
    let simple = p.iter().collect::<BTreeSet<_>>().len() == p.len();
    simple
        && p.len() >= 2
        && p.len() - 2 <= max_interior
        && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
        && g.degree(p[0]) == start_degree
        && g.degree(p[p.len() - 1]) == 3
        && p[1..p.len() - 1].iter().all(|&x| g.degree(x) == 4)
}

fn five_quad_ok(g: &PlaneGraph, paths: &[Vec<VertexId>]) -> bool {
    if paths.len() != 4 || !paths.iter().all(|p| is_path_to_three(g, p, 5, 4)) {
        return false;
    }
    let anchor = paths[0][0];
    let seconds: BTreeSet<_> = paths.iter().map(|p| p[1]).collect();
    seconds.len() == 4 && paths.iter().all(|p| p[0] == anchor) && long_paths_covered(paths)
}

/// A path with four interior vertices needs its end joined directly to the
/// anchor by another of the paths.
fn long_paths_covered(paths: &[Vec<VertexId>]) -> bool {
    paths.iter().filter(|p| p.len() == 6).all(|p| {
        let end = p[p.len() - 1];
        paths.iter().any(|q| q.len() == 2 && q[1] == end)
    })
}

/// All simple paths from `anchor` through at most `max_interior` 4-vertices
/// to a 3-vertex, restricted to vertices accepted by `allow`, in
/// lexicographic order.
pub fn paths_to_threes(
    g: &PlaneGraph,
    anchor: VertexId,
    max_interior: usize,
    allow: &dyn Fn(VertexId) -> bool,
) -> Vec<Vec<VertexId>> {
    fn go(
        g: &PlaneGraph,
        path: &mut Vec<VertexId>,
        max_interior: usize,
        allow: &dyn Fn(VertexId) -> bool,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        let last = *path.last().expect("nonempty");
        let mut nbrs = g.rotation(last).to_vec();
        nbrs.sort_unstable();
        for y in nbrs {
            if path.contains(&y) || !allow(y) {
                continue;
            }
            match g.degree(y) {
                3 => {
                    path.push(y);
                    out.push(path.clone());
                    path.pop();
                }
                4 if path.len() - 1 < max_interior => {
                    path.push(y);
                    go(g, path, max_interior, allow, out);
                    path.pop();
                }
                _ => {}
            }
        }
    }
    let mut out = Vec::new();
    go(g, &mut vec![anchor], max_interior, allow, &mut out);
    out.sort();
    out
}

fn low_degree(g: &PlaneGraph, max: usize) -> Option<Configuration> {
    let v = g.vertices().min_by_key(|&v| (g.degree(v), v))?;
    (g.degree(v) <= max)
        .then(|| Configuration::new(ConfigKind::LowDegree(max), vec![(Role::Vertex, v)]))
}

fn diamonds(g: &PlaneGraph, allow: &dyn Fn(VertexId) -> bool) -> Vec<Configuration> {
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        let Some((c, d)) = diamond_tips(g, a, b) else {
            continue;
        };
        if ![a, b, c, d].iter().all(|&x| allow(x)) {
            continue;
        }
        if diamond_degrees_ok(&[a, b, c, d].map(|x| g.degree(x))) {
            let (c, d) = (c.min(d), c.max(d));
            out.push(Configuration::new(
                ConfigKind::Diamond,
                vec![
                    (Role::Mid, a),
                    (Role::Mid, b),
                    (Role::Tip, c),
                    (Role::Tip, d),
                ],
            ));
        }
    }
    out
}

fn degree_edges(
    g: &PlaneGraph,
    d: usize,
    kind: ConfigKind,
    allow: &dyn Fn(VertexId) -> bool,
) -> Vec<Configuration> {
    g.edges()
        .filter(|&(u, v)| g.degree(u) == d && g.degree(v) == d && allow(u) && allow(v))
        .map(|(u, v)| Configuration::new(kind, vec![(Role::U, u), (Role::V, v)]))
        .collect()
}

fn triangles(
    g: &PlaneGraph,
    want_six: bool,
    allow: &dyn Fn(VertexId) -> bool,
) -> Vec<Configuration> {
    let mut out = Vec::new();
    for u in g.vertices().filter(|&u| g.degree(u) == 4 && allow(u)) {
        for &v in g
            .rotation(u)
            .iter()
            .filter(|&&v| g.degree(v) == 5 && allow(v))
        {
            for &w in g.rotation(u) {
                if w == v || !g.has_edge(v, w) || !allow(w) {
                    continue;
                }
                match (want_six, g.degree(w)) {
                    (false, 5) if v < w => out.push(Configuration::new(
                        ConfigKind::Triangle455,
                        vec![(Role::U, u), (Role::V, v), (Role::W, w)],
                    )),
                    (true, 6) => {
                        let mut xs: Vec<_> = g
                            .rotation(w)
                            .iter()
                            .copied()
                            .filter(|&x| x != u && x != v && g.degree(x) == 4 && allow(x))
                            .collect();
                        xs.sort_unstable();
                        if let Some(&x) = xs.first() {
                            out.push(Configuration::new(
                                ConfigKind::Triangle456,
                                vec![(Role::U, u), (Role::V, v), (Role::W, w), (Role::X, x)],
                            ));
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    out
}

/// First pair of paths, in lexicographic order, from the smallest 4-vertex
/// that has one.
fn four_path_pairs(
    g: &PlaneGraph,
    allow: &dyn Fn(VertexId) -> bool,
    first_only: bool,
) -> Vec<Configuration> {
    let mut out = Vec::new();
    for a in g.vertices().filter(|&a| g.degree(a) == 4 && allow(a)) {
        let paths = paths_to_threes(g, a, 3, allow);
        for i in 0..paths.len() {
            for j in i + 1..paths.len() {
                if paths[i][1] != paths[j][1] {
                    out.push(Configuration::with_paths(
                        ConfigKind::FourPathPair,
                        a,
                        vec![paths[i].clone(), paths[j].clone()],
                    ));
                    if first_only {
                        return out;
                    }
                }
            }
        }
    }
    out
}

/// Paths from `anchor` grouped by second vertex (groups in increasing order).
fn grouped_paths(paths: Vec<Vec<VertexId>>) -> Vec<Vec<Vec<VertexId>>> {
    let mut groups: Vec<Vec<Vec<VertexId>>> = Vec::new();
    for p in paths {
        match groups.last_mut() {
            Some(gr) if gr[0][1] == p[1] => gr.push(p),
            _ => groups.push(vec![p]),
        }
    }
    groups
}

/// Lexicographically first choice of four paths with distinct second vertices.
fn first_five_quad(groups: &[Vec<Vec<VertexId>>]) -> Option<Vec<Vec<VertexId>>> {
    fn go(groups: &[Vec<Vec<VertexId>>], from: usize, chosen: &mut Vec<Vec<VertexId>>) -> bool {
        if chosen.len() == 4 {
            return long_paths_covered(chosen);
        }
        for gi in from..groups.len() {
            if groups.len() - gi < 4 - chosen.len() {
                break;
            }
            for p in &groups[gi] {
                chosen.push(p.clone());
                if go(groups, gi + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(groups, 0, &mut chosen).then_some(chosen)
}

fn five_path_quads(g: &PlaneGraph, allow: &dyn Fn(VertexId) -> bool) -> Option<Configuration> {
    g.vertices()
        .filter(|&a| g.degree(a) == 5 && allow(a))
        .find_map(|a| {
            let groups = grouped_paths(paths_to_threes(g, a, 4, allow));
            first_five_quad(&groups)
                .map(|paths| Configuration::with_paths(ConfigKind::FivePathQuad, a, paths))
        })
}

/// Triangle faces at `v`, as sorted pairs of their other two vertices.
fn face_triangles_at(g: &PlaneGraph, v: VertexId) -> Vec<(VertexId, VertexId)> {
    let mut out: Vec<_> = g
        .corner_faces(v)
        .filter(|&f| g.face(f).len() == 3)
        .filter_map(|f| {
            let others: Vec<_> = g
                .face(f)
                .walk()
                .iter()
                .copied()
                .filter(|&x| x != v)
                .collect();
            (others.len() == 2).then(|| (others[0].min(others[1]), others[0].max(others[1])))
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn bowties(g: &PlaneGraph, allow: &dyn Fn(VertexId) -> bool) -> Vec<Configuration> {
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| g.degree(v) == 4 && allow(v)) {
        let tris = face_triangles_at(g, v);
        for i in 0..tris.len() {
            for j in 0..tris.len() {
                let ((a, b), (c, d)) = (tris[i], tris[j]);
                if i == j || [a, b].contains(&c) || [a, b].contains(&d) {
                    continue;
                }
                if ![a, b, c, d].iter().all(|&x| allow(x)) {
                    continue;
                }
                let fours = |xs: &[VertexId]| xs.iter().filter(|&&x| g.degree(x) == 4).count();
                if fours(&[a, b]) == 2 && fours(&[a, b, c, d]) >= 3 {
                    out.push(Configuration::new(
                        ConfigKind::BowTie,
                        vec![
                            (Role::Center, v),
                            (Role::Tri, a),
                            (Role::Tri, b),
                            (Role::Opp, c),
                            (Role::Opp, d),
                        ],
                    ));
                }
            }
        }
    }
    out
}

fn smallest(mut found: Vec<Configuration>) -> Option<Configuration> {
    found.sort_by_key(Configuration::key);
    found.into_iter().next()
}

/// Configurations of `strategy`, in search order, using only vertices
/// accepted by `allow`. The low-degree case is not included.
fn search(
    g: &PlaneGraph,
    strategy: Strategy,
    allow: &dyn Fn(VertexId) -> bool,
) -> Option<Configuration> {
    match strategy {
        Strategy::G1 => smallest(diamonds(g, allow)),
        Strategy::G2 => smallest(degree_edges(g, 4, ConfigKind::FourFourEdge, allow))
            .or_else(|| smallest(triangles(g, false, allow)))
            .or_else(|| smallest(triangles(g, true, allow))),
        Strategy::Gcal => smallest(degree_edges(g, 3, ConfigKind::ThreeThreeEdge, allow))
            .or_else(|| four_path_pairs(g, allow, true).into_iter().next())
            .or_else(|| five_path_quads(g, allow)),
        Strategy::No4 => smallest(bowties(g, allow)),
    }
}

/// The configuration the recursion for `strategy` removes next: a vertex
/// below the degree floor if there is one, otherwise the first configuration
/// in the strategy's order.
pub fn find_reduction(g: &PlaneGraph, strategy: Strategy) -> Result<Configuration, ConfigError> {
    low_degree(g, strategy.degree_floor())
        .or_else(|| search(g, strategy, &|_| true))
        .ok_or(ConfigError::StructureNotFound {
            strategy,
            vertices: g.vertex_count(),
            min_degree: g.min_degree(),
        })
}

/// Like [`find_reduction`], but only configurations inside `region` count.
pub fn find_within(
    g: &PlaneGraph,
    strategy: Strategy,
    region: &BTreeSet<VertexId>,
) -> Option<Configuration> {
    let allow = |v: VertexId| region.contains(&v);
    region
        .iter()
        .copied()
        .filter(|&v| g.contains(v) && g.degree(v) <= strategy.degree_floor())
        .min_by_key(|&v| (g.degree(v), v))
        .map(|v| {
            Configuration::new(
                ConfigKind::LowDegree(strategy.degree_floor()),
                vec![(Role::Vertex, v)],
            )
        })
        .or_else(|| search(g, strategy, &allow))
}

/// Every witness of a path kind anchored at `anchor`, in lexicographic order.
fn anchored(g: &PlaneGraph, kind: ConfigKind, anchor: VertexId) -> Vec<Vec<Vec<VertexId>>> {
    match kind {
        ConfigKind::FourPathPair => {
            let paths = paths_to_threes(g, anchor, 3, &|_| true);
            let mut out = Vec::new();
            for i in 0..paths.len() {
                for j in i + 1..paths.len() {
                    if paths[i][1] != paths[j][1] {
                        out.push(vec![paths[i].clone(), paths[j].clone()]);
                    }
                }
            }
            out
        }
        _ => Vec::new(),
    }
}

fn union_size(paths: &[Vec<VertexId>]) -> usize {
    paths.iter().flatten().collect::<BTreeSet<_>>().len()
}

/// Choice of four paths with distinct second vertices whose trimmed union
/// is smallest, keeping `incumbent` on ties.
fn min_order_five_quad(
    groups: &[Vec<Vec<VertexId>>],
    incumbent: Vec<Vec<VertexId>>,
) -> Vec<Vec<VertexId>> {
    fn go(
        groups: &[Vec<Vec<VertexId>>],
        from: usize,
        chosen: &mut Vec<Vec<VertexId>>,
        best: &mut (usize, Vec<Vec<VertexId>>),
    ) {
        if chosen.len() == 4 {
            let size = trimmed_size(chosen);
            if size < best.0 && long_paths_covered(chosen) {
                *best = (size, chosen.clone());
            }
            return;
        }
        for gi in from..groups.len() {
            if groups.len() - gi < 4 - chosen.len() {
                break;
            }
            for p in &groups[gi] {
                chosen.push(p.clone());
                go(groups, gi + 1, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = (trimmed_size(&incumbent), incumbent);
    go(groups, 0, &mut Vec::new(), &mut best);
    best.1
}

fn trimmed_size(paths: &[Vec<VertexId>]) -> usize {
    union_size(&trim_paths(paths.to_vec()))
}

/// Index of the first vertex of `path` after the anchor that also lies on
/// one of `later`, if it is at least the third vertex.
fn first_shared(path: &[VertexId], later: &[Vec<VertexId>]) -> Option<usize> {
    let anchor = path[0];
    let others: BTreeSet<VertexId> = later
        .iter()
        .flatten()
        .copied()
        .filter(|&x| x != anchor)
        .collect();
    path.iter()
        .position(|x| others.contains(x))
        .filter(|&i| i >= 2)
}

/// Sorts paths longest first and cuts each one just before its first vertex
/// shared with a later path. The last vertex of a cut path then plays the
/// role of the path's end once the later paths are removed.
fn trim_paths(mut paths: Vec<Vec<VertexId>>) -> Vec<Vec<VertexId>> {
    paths.sort_by_key(|p| std::cmp::Reverse(p.len()));
    for i in 0..paths.len().saturating_sub(1) {
        let (head, tail) = paths.split_at_mut(i + 1);
        if let Some(cut) = first_shared(&head[i], tail) {
            head[i].truncate(cut);
        }
    }
    paths
}

/// Replaces a two-path witness by the one with the same anchor whose trimmed
/// form has fewest vertices (keeping the input on ties), trimmed so that the
/// first path meets the second only at the anchor.
pub fn minimize_four_paths(g: &PlaneGraph, witness: &Configuration) -> Configuration {
    let anchor = witness.role(Role::Anchor)[0];
    let mut best = witness.paths.clone();
    let mut best_size = trimmed_size(&best);
    for cand in anchored(g, ConfigKind::FourPathPair, anchor) {
        let size = trimmed_size(&cand);
        if size < best_size {
            best_size = size;
            best = cand;
        }
    }
    Configuration::with_paths(ConfigKind::FourPathPair, anchor, trim_paths(best))
}

/// Four-path analogue of [`minimize_four_paths`]: each of the first three
/// paths (longest first) is cut before its first vertex shared with a later
/// path.
pub fn minimize_five_paths(g: &PlaneGraph, witness: &Configuration) -> Configuration {
    let anchor = witness.role(Role::Anchor)[0];
    let groups = grouped_paths(paths_to_threes(g, anchor, 4, &|_| true));
    let best = min_order_five_quad(&groups, witness.paths.clone());
    Configuration::with_paths(ConfigKind::FivePathQuad, anchor, trim_paths(best))
}

/// Result of looking for a path from `u` along the short faces at edge `vu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FacialPath {
    NotFound,
    Unique(Vec<VertexId>),
    /// Two different paths; together they form a two-path configuration.
    Conflict(Vec<VertexId>, Vec<VertexId>),
}

/// Walks the face of dart `v -> u` forward from `u`, or the face of dart
/// `u -> v` backward from `u`, yielding the vertices met after `v`.
fn face_walk_from(
    g: &PlaneGraph,
    v: VertexId,
    u: VertexId,
    forward: bool,
    max_len: usize,
) -> Option<Vec<VertexId>> {
    let (a, b) = if forward { (v, u) } else { (u, v) };
    let f = g.face_of_dart(a, b)?;
    let walk = g.face(f).walk();
    let k = walk.len();
    if k > max_len {
        return None;
    }
    let i = (0..k).find(|&i| walk[i] == a && walk[(i + 1) % k] == b)?;
    Some(if forward {
        (1..k).map(|s| walk[(i + s) % k]).collect()
    } else {
        (0..k - 1).map(|s| walk[(i + k - s) % k]).collect()
    })
}

/// Leading run of 4-vertices ending at a 3-vertex, with at most
/// `max_interior` 4-vertices after the first.
fn run_to_three(g: &PlaneGraph, seq: &[VertexId], max_interior: usize) -> Option<Vec<VertexId>> {
    let mut path: Vec<VertexId> = Vec::new();
    for &x in seq {
        if path.contains(&x) {
            return None;
        }
        match g.degree(x) {
            3 if !path.is_empty() => {
                path.push(x);
                return Some(path);
            }
            4 if path.len() <= max_interior => path.push(x),
            _ => return None,
        }
    }
    None
}

/// Searches the faces of length at most 6 on either side of edge `vu` for a
/// path that starts at the 4-vertex `u`, continues along the facial walk
/// through at most `max_interior` further 4-vertices, and stops at a 3-vertex.
pub fn facial_path_to_three(
    g: &PlaneGraph,
    v: VertexId,
    u: VertexId,
    max_interior: usize,
) -> FacialPath {
    if !g.has_edge(v, u) || g.degree(u) != 4 {
        return FacialPath::NotFound;
    }
    let found: Vec<Vec<VertexId>> = [true, false]
        .into_iter()
        .filter_map(|fw| face_walk_from(g, v, u, fw, 6))
        .filter_map(|seq| run_to_three(g, &seq, max_interior))
        .collect();
    match found.len() {
        0 => FacialPath::NotFound,
        1 => FacialPath::Unique(found[0].clone()),
        _ if found[0] == found[1] => FacialPath::Unique(found[0].clone()),
        _ => FacialPath::Conflict(found[0].clone(), found[1].clone()),
    }
}

/// Two-path configuration formed by two facial paths from the same 4-vertex.
pub fn pair_from_paths(p1: Vec<VertexId>, p2: Vec<VertexId>) -> Configuration {
    let anchor = p1[0];
    Configuration::with_paths(ConfigKind::FourPathPair, anchor, vec![p1, p2])
}

/// Two-path configurations seen from the 3-vertex side: a facial run of
/// 4-vertices from a 3-vertex that ends at another 3-vertex, or that closes
/// up on the face, splits at its middle 4-vertex into two paths.
pub fn three_side_conflicts(g: &PlaneGraph) -> Vec<Configuration> {
    let mut out = BTreeSet::new();
    for z in g.vertices().filter(|&z| g.degree(z) == 3) {
        for &u in g.rotation(z).iter().filter(|&&u| g.degree(u) == 4) {
            for fw in [true, false] {
                let Some(seq) = face_walk_from(g, z, u, fw, 6) else {
                    continue;
                };
                let mut run = Vec::new();
                // The run either reaches another 3-vertex or closes up at z.
                let mut last = Some(z);
                for &x in &seq {
                    match g.degree(x) {
                        4 if !run.contains(&x) => run.push(x),
                        3 => {
                            last = Some(x);
                            break;
                        }
                        _ => {
                            last = None;
                            break;
                        }
                    }
                }
                let Some(last) = last else { continue };
                if last == z && run.len() < 2 {
                    continue;
                }
                let j = run.len().div_ceil(2) - 1;
                let mut p1: Vec<_> = run[..=j].iter().rev().copied().collect();
                p1.push(z);
                let mut p2: Vec<_> = run[j..].to_vec();
                p2.push(last);
                if p1[1] != p2[1] {
                    let mut pair = [p1, p2];
                    pair.sort();
                    let [p1, p2] = pair;
                    out.insert((p1.clone(), p2.clone()));
                }
            }
        }
    }
    out.into_iter()
        .map(|(p1, p2)| pair_from_paths(p1, p2))
        .collect()
}
