//! Connected plane graphs stored as rotation systems.
//!
//! Each vertex keeps its neighbors in clockwise order. Faces are the orbits of
//! the dart permutation `(u, v) -> (v, w)` where `w` follows `u` in the rotation
//! at `v`. Vertex ids are stable: deleting vertices leaves holes instead of
//! relabeling, so witnesses and colorings keep referring to the same vertices.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::Graph;
pub use crate::graph::VertexId;

pub type FaceId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneGraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {vertex} lists neighbor {neighbor}, which is out of range")]
    OutOfRange {
        vertex: VertexId,
        neighbor: VertexId,
    },
    #[error("vertex {0} lists itself as a neighbor")]
    SelfLoop(VertexId),
    #[error("vertex {vertex} lists neighbor {neighbor} more than once")]
    RepeatedNeighbor {
        vertex: VertexId,
        neighbor: VertexId,
    },
    #[error("vertex {u} lists {v} but {v} does not list {u}")]
    Asymmetric { u: VertexId, v: VertexId },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("rotation system embeds the graph with genus {genus}, not in the plane")]
    NotPlanar { genus: usize },
    #[error("vertex {0} is not in the graph")]
    NoSuchVertex(VertexId),
    #[error("{u}{v} is not an edge")]
    NoSuchEdge { u: VertexId, v: VertexId },
    #[error("triangle list does not describe a triangulated sphere: {0}")]
    BadTriangulation(String),
}

/// A facial walk. `walk[i] -> walk[i + 1]` (cyclically) are its darts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    walk: Vec<VertexId>,
}

impl Face {
    /// Number of darts on the walk; a cut edge is counted twice.
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    pub fn walk(&self) -> &[VertexId] {
        &self.walk
    }

    /// Darts of the walk as `(tail, head)` pairs.
    pub fn darts(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let k = self.walk.len();
        (0..k).map(move |i| (self.walk[i], self.walk[(i + 1) % k]))
    }
}

/// Class membership of the given embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassReport {
    /// Every 3-face shares edges with at most two other 3-faces.
    pub in_g1: bool,
    /// Every 3-face shares edges with at most one other 3-face.
    pub in_g2: bool,
    /// Every face sharing an edge with a 3-face has length at least 6.
    pub in_g3: bool,
    /// Faces sharing an edge with a 3-face have length at least 5, and each
    /// 5-face touches at most three 3-faces.
    pub in_gcal: bool,
    /// The graph contains a 4-cycle as a subgraph.
    pub has_4cycle: bool,
    pub min_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    rot: Vec<Vec<VertexId>>,
    alive: Vec<bool>,
    vertex_count: usize,
    edge_count: usize,
    /// First dart id of each vertex; dart `offsets[v] + i` is `v -> rot[v][i]`.
    offsets: Vec<usize>,
    /// For dart `v -> u`, the position of `v` in `rot[u]`.
    twin_pos: Vec<usize>,
    dart_face: Vec<FaceId>,
    faces: Vec<Face>,
}

impl PlaneGraph {
    /// Builds a plane graph on vertices `0..rotation.len()`.
    pub fn build(rotation: Vec<Vec<VertexId>>) -> Result<Self, PlaneGraphError> {
        let n = rotation.len();
        Self::from_rotation(rotation, vec![true; n])
    }

    fn from_rotation(rot: Vec<Vec<VertexId>>, alive: Vec<bool>) -> Result<Self, PlaneGraphError> {
        let n = rot.len();
        let vertex_count = alive.iter().filter(|&&a| a).count();
        if vertex_count == 0 {
            return Err(PlaneGraphError::Empty);
        }
        for (v, list) in rot.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &u in list {
                if u >= n || !alive[u] {
                    return Err(PlaneGraphError::OutOfRange {
                        vertex: v,
                        neighbor: u,
                    });
                }
                if u == v {
                    return Err(PlaneGraphError::SelfLoop(v));
                }
                if !seen.insert(u) {
                    return Err(PlaneGraphError::RepeatedNeighbor {
                        vertex: v,
                        neighbor: u,
                    });
                }
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut total = 0;
        for list in &rot {
            offsets.push(total);
            total += list.len();
        }
        offsets.push(total);
        let mut twin_pos = vec![0; total];
        for (v, list) in rot.iter().enumerate() {
            for (i, &u) in list.iter().enumerate() {
                match rot[u].iter().position(|&w| w == v) {
                    Some(p) => twin_pos[offsets[v] + i] = p,
                    None => return Err(PlaneGraphError::Asymmetric { u: v, v: u }),
                }
            }
        }
        let mut g = PlaneGraph {
            rot,
            alive,
            vertex_count,
            edge_count: total / 2,
            offsets,
            twin_pos,
            dart_face: vec![usize::MAX; total],
            faces: Vec::new(),
        };
        if !g.is_connected() {
            return Err(PlaneGraphError::Disconnected);
        }
        g.trace_faces();
        let euler = g.vertex_count as i64 - g.edge_count as i64 + g.faces.len() as i64;
        if euler != 2 {
            return Err(PlaneGraphError::NotPlanar {
                genus: ((2 - euler) / 2) as usize,
            });
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let Some(start) = self.vertices().next() else {
            return false;
        };
        let mut seen = vec![false; self.rot.len()];
        seen[start] = true;
        let mut reached = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.rot[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.vertex_count
    }

    fn trace_faces(&mut self) {
        for v in 0..self.rot.len() {
            if self.alive[v] && self.rot[v].is_empty() {
                self.faces.push(Face { walk: Vec::new() });
            }
        }
        for start in 0..self.dart_face.len() {
            if self.dart_face[start] != usize::MAX {
                continue;
            }
            let id = self.faces.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                self.dart_face[d] = id;
                let (tail, head) = self.dart_ends(d);
                walk.push(tail);
                // Continue with the neighbor after `tail` in the rotation at `head`.
                let p = self.twin_pos[d];
                let next = (p + 1) % self.rot[head].len();
                d = self.offsets[head] + next;
                if d == start {
                    break;
                }
            }
            self.faces.push(Face { walk });
        }
    }

    fn dart_ends(&self, d: usize) -> (VertexId, VertexId) {
        let v = self.offsets.partition_point(|&o| o <= d) - 1;
        (v, self.rot[v][d - self.offsets[v]])
    }

    /// Upper bound on vertex ids (including deleted ones).
    pub fn capacity(&self) -> usize {
        self.rot.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.alive.len() && self.alive[v]
    }

    /// Live vertex ids in increasing order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.rot.len()).filter(move |&v| self.alive[v])
    }

    /// Neighbors of `v` in clockwise order.
    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        &self.rot[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rot[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.contains(u) && self.rot[u].contains(&v)
    }

    /// Undirected edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| {
            self.rot[u]
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| (u, v))
        })
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    /// Face traversed by the dart `u -> v`.
    pub fn face_of_dart(&self, u: VertexId, v: VertexId) -> Option<FaceId> {
        let i = self.rot.get(u)?.iter().position(|&w| w == v)?;
        Some(self.dart_face[self.offsets[u] + i])
    }

    /// The two faces on either side of edge `uv` (equal for a cut edge).
    pub fn faces_of_edge(&self, u: VertexId, v: VertexId) -> Option<(FaceId, FaceId)> {
        Some((self.face_of_dart(u, v)?, self.face_of_dart(v, u)?))
    }

    /// Faces met at the corners of `v`, one entry per corner, in rotation order.
    pub fn corner_faces(&self, v: VertexId) -> impl Iterator<Item = FaceId> + '_ {
        let start = self.offsets[v];
        (0..self.rot[v].len()).map(move |i| self.dart_face[start + i])
    }

    /// Distinct faces other than `f` that share an edge with `f`.
    pub fn adjacent_faces(&self, f: FaceId) -> Vec<FaceId> {
        let mut out: Vec<FaceId> = self.faces[f]
            .darts()
            .filter_map(|(u, v)| self.face_of_dart(v, u))
            .filter(|&g| g != f)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Number of distinct 3-faces sharing at least one edge with `f`.
    pub fn adjacent_3face_count(&self, f: FaceId) -> usize {
        self.adjacent_faces(f)
            .into_iter()
            .filter(|&g| self.faces[g].len() == 3)
            .count()
    }

    pub fn classify(&self) -> ClassReport {
        let mut in_g1 = true;
        let mut in_g2 = true;
        let mut in_g3 = true;
        let mut in_gcal = true;
        for (f, face) in self.faces.iter().enumerate() {
            if face.len() != 3 {
                if face.len() == 5 && self.adjacent_3face_count(f) > 3 {
                    in_gcal = false;
                }
                continue;
            }
            let adj = self.adjacent_faces(f);
            let tri = adj.iter().filter(|&&g| self.faces[g].len() == 3).count();
            in_g1 &= tri <= 2;
            in_g2 &= tri <= 1;
            let shortest = adj
                .iter()
                .map(|&g| self.faces[g].len())
                .min()
                .unwrap_or(usize::MAX);
            in_g3 &= shortest >= 6;
            in_gcal &= shortest >= 5;
        }
        ClassReport {
            in_g1,
            in_g2,
            in_g3,
            in_gcal,
            has_4cycle: self.has_4cycle(),
            min_degree: self.min_degree(),
        }
    }

    /// True if some two vertices have two common neighbors.
    pub fn has_4cycle(&self) -> bool {
        let mut mark = vec![usize::MAX; self.rot.len()];
        for a in self.vertices() {
            for &b in &self.rot[a] {
                for &c in &self.rot[b] {
                    if c == a {
                        continue;
                    }
                    if mark[c] == a {
                        return true;
                    }
                    mark[c] = a;
                }
            }
        }
        false
    }

    /// Abstract graph on `0..capacity()`; deleted ids become isolated vertices.
    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.rot.len(), self.edges().collect::<Vec<_>>())
    }

    /// Raw rotation lists indexed by vertex id (empty for deleted ids).
    pub fn rotation_lists(&self) -> &[Vec<VertexId>] {
        &self.rot
    }

    /// Rotation system relabeled to `0..vertex_count()`, with the map from new
    /// ids back to the ids of `self`.
    pub fn compact_rotation(&self) -> (Vec<Vec<VertexId>>, Vec<VertexId>) {
        let ids: Vec<VertexId> = self.vertices().collect();
        let mut index = vec![usize::MAX; self.rot.len()];
        for (i, &v) in ids.iter().enumerate() {
            index[v] = i;
        }
        let rot = ids
            .iter()
            .map(|&v| self.rot[v].iter().map(|&u| index[u]).collect())
            .collect();
        (rot, ids)
    }

    fn removed(
        &self,
        set: &[VertexId],
    ) -> Result<(Vec<Vec<VertexId>>, Vec<bool>), PlaneGraphError> {
        let mut alive = self.alive.clone();
        for &v in set {
            if !self.contains(v) {
                return Err(PlaneGraphError::NoSuchVertex(v));
            }
            alive[v] = false;
        }
        let rot = self
            .rot
            .iter()
            .enumerate()
            .map(|(v, list)| {
                if alive[v] {
                    list.iter().copied().filter(|&u| alive[u]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        Ok((rot, alive))
    }

    /// Deletes a vertex set, inheriting the embedding. The result must be
    /// nonempty and connected.
    pub fn delete_vertices(&self, set: &[VertexId]) -> Result<PlaneGraph, PlaneGraphError> {
        let (rot, alive) = self.removed(set)?;
        Self::from_rotation(rot, alive)
    }

    /// Deletes a vertex set and returns the connected components of what is
    /// left, each keeping the original vertex ids.
    pub fn split_without(&self, set: &[VertexId]) -> Result<Vec<PlaneGraph>, PlaneGraphError> {
        let (rot, alive) = self.removed(set)?;
        let mut comp = vec![usize::MAX; rot.len()];
        let mut parts = Vec::new();
        for s in 0..rot.len() {
            if !alive[s] || comp[s] != usize::MAX {
                continue;
            }
            let id = parts.len();
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            let mut members = vec![s];
            while let Some(u) = queue.pop_front() {
                for &w in &rot[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            parts.push(members);
        }
        parts
            .into_iter()
            .map(|members| {
                let mut a = vec![false; rot.len()];
                for &v in &members {
                    a[v] = true;
                }
                let r = rot
                    .iter()
                    .enumerate()
                    .map(|(v, l)| if a[v] { l.clone() } else { Vec::new() })
                    .collect();
                Self::from_rotation(r, a)
            })
            .collect()
    }

    /// Deletes edge `uv`; fails if the edge is a bridge.
    pub fn delete_edge(&self, u: VertexId, v: VertexId) -> Result<PlaneGraph, PlaneGraphError> {
        if !self.has_edge(u, v) {
            return Err(PlaneGraphError::NoSuchEdge { u, v });
        }
        let mut rot = self.rot.clone();
        rot[u].retain(|&w| w != v);
        rot[v].retain(|&w| w != u);
        Self::from_rotation(rot, self.alive.clone())
    }

    /// Builds a plane graph from a straight-line drawing. Neighbors are ordered
    /// by angle, which is a valid rotation system when no two edges cross.
    pub fn from_coordinates(
        points: &[(f64, f64)],
        edges: &[(VertexId, VertexId)],
    ) -> Result<PlaneGraph, PlaneGraphError> {
        let n = points.len();
        let mut rot = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(PlaneGraphError::OutOfRange {
                    vertex: u.min(v),
                    neighbor: u.max(v),
                });
            }
            rot[u].push(v);
            rot[v].push(u);
        }
        for (v, list) in rot.iter_mut().enumerate() {
            let (x, y) = points[v];
            // Decreasing angle is clockwise in the usual orientation.
            list.sort_by(|&a, &b| {
                let ta = (points[a].1 - y).atan2(points[a].0 - x);
                let tb = (points[b].1 - y).atan2(points[b].0 - x);
                tb.total_cmp(&ta)
            });
        }
        Self::build(rot)
    }

    /// Builds a triangulated sphere from consistently oriented triangles.
    pub fn from_triangles(
        n: usize,
        triangles: &[[VertexId; 3]],
    ) -> Result<PlaneGraph, PlaneGraphError> {
        let bad = |m: String| PlaneGraphError::BadTriangulation(m);
        // succ[v] holds pairs (a, b): in the rotation at v, b follows a.
        let mut succ: Vec<Vec<(VertexId, VertexId)>> = vec![Vec::new(); n];
        for t in triangles {
            let [a, b, c] = *t;
            if a >= n || b >= n || c >= n {
                return Err(bad(format!("triangle {t:?} out of range")));
            }
            succ[b].push((a, c));
            succ[c].push((b, a));
            succ[a].push((c, b));
        }
        let mut rot = Vec::with_capacity(n);
        for (v, pairs) in succ.iter().enumerate() {
            if pairs.is_empty() {
                return Err(bad(format!("vertex {v} is on no triangle")));
            }
            let mut order = vec![pairs[0].0];
            let mut cur = pairs[0].0;
            loop {
                let nexts: Vec<_> = pairs.iter().filter(|p| p.0 == cur).collect();
                if nexts.len() != 1 {
                    return Err(bad(format!("link of vertex {v} is not a cycle")));
                }
                cur = nexts[0].1;
                if cur == order[0] {
                    break;
                }
                if order.len() > pairs.len() {
                    return Err(bad(format!("link of vertex {v} is not a cycle")));
                }
                order.push(cur);
            }
            if order.len() != pairs.len() {
                return Err(bad(format!("link of vertex {v} is not a single cycle")));
            }
            rot.push(order);
        }
        Self::build(rot)
    }
}
