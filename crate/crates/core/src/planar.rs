//! Recoloring plane graphs by peeling off reducible configurations.
//!
//! The recursion removes a configuration, solves each remaining component,
//! and re-adds the removed vertices one at a time with [`extend_vertex`].
//! Since every re-added vertex only looks at its neighbors' steps, the whole
//! recursion flattens into a single re-add order.

use std::fmt;

use thiserror::Error;

use crate::config::{find_reduction, minimize_five_paths, minimize_four_paths};
use crate::config::{ConfigError, ConfigKind, Configuration, Role, Strategy};
use crate::graph::Graph;
use crate::plane::{PlaneGraph, VertexId};
use crate::recolor::{extend_along, validate_partial, Color, ColoringError, ExtendError};
use crate::recolor::{ListAssignment, RecolorSequence, SequenceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecolorError {
    #[error("vertex {vertex} has {size} colors; the strategy needs {needed}")]
    ListTooSmall {
        vertex: VertexId,
        size: usize,
        needed: usize,
    },
    #[error("{which} coloring is invalid: {source}")]
    BadColoring {
        which: &'static str,
        source: ColoringError,
    },
    #[error("graph has degeneracy {actual}, more than {d}")]
    TooDense { actual: usize, d: usize },
    #[error("lists and colorings must cover {expected} vertices, got {found}")]
    Length { expected: usize, found: usize },
    #[error(transparent)]
    StructureNotFound(Box<Stuck>),
    #[error("extension failed: {0}")]
    Extend(#[from] ExtendError),
    #[error("produced sequence is invalid: {0}")]
    InvalidOutput(SequenceError),
}

/// A subinstance met by the recursion that has no reducible configuration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{error}")]
pub struct Stuck {
    pub error: ConfigError,
    pub graph: PlaneGraph,
}

/// What a run promises and what it achieved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub strategy: String,
    pub budget: usize,
    /// Recoloring count per vertex id.
    pub counts: Vec<usize>,
    pub steps: usize,
    /// The input lies in the class the budget is proven for.
    pub in_class: bool,
    /// Configurations removed by the recursion, outermost first.
    pub reductions: Vec<Configuration>,
}

impl Certificate {
    pub fn max_count(&self) -> usize {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn within_budget(&self) -> bool {
        self.max_count() <= self.budget
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "strategy: {}", self.strategy)?;
        writeln!(f, "budget: {}", self.budget)?;
        writeln!(f, "max_count: {}", self.max_count())?;
        writeln!(f, "within_budget: {}", self.within_budget())?;
        writeln!(f, "in_class: {}", self.in_class)?;
        writeln!(f, "steps: {}", self.steps)?;
        writeln!(f, "reductions: {}", self.reductions.len())?;
        let counts: Vec<String> = self.counts.iter().map(ToString::to_string).collect();
        writeln!(f, "counts: {}", counts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recoloring {
    pub sequence: RecolorSequence,
    pub certificate: Certificate,
}

fn check_inputs(
    g: &Graph,
    vertices: &[VertexId],
    lists: &ListAssignment,
    alpha: &[Color],
    beta: &[Color],
    list_floor: usize,
) -> Result<(), RecolorError> {
    let n = g.vertex_count();
    for found in [lists.len(), alpha.len(), beta.len()] {
        if found != n {
            return Err(RecolorError::Length { expected: n, found });
        }
    }
    if let Some(&v) = vertices.iter().find(|&&v| lists.list(v).len() < list_floor) {
        return Err(RecolorError::ListTooSmall {
            vertex: v,
            size: lists.list(v).len(),
            needed: list_floor,
        });
    }
    let restrict = |c: &[Color]| {
        let mut p = vec![None; n];
        for &v in vertices {
            p[v] = Some(c[v]);
        }
        p
    };
    validate_partial(g, lists, &restrict(alpha)).map_err(|source| RecolorError::BadColoring {
        which: "start",
        source,
    })?;
    validate_partial(g, lists, &restrict(beta)).map_err(|source| RecolorError::BadColoring {
        which: "target",
        source,
    })?;
    Ok(())
}

/// The removed vertices of a configuration, in re-add order. Path
/// configurations are first minimized and trimmed; the returned
/// configuration is the one actually used.
pub fn reduction_order(g: &PlaneGraph, cfg: &Configuration) -> (Vec<VertexId>, Configuration) {
    let one = |r| cfg.role(r)[0];
    let order = match cfg.kind {
        ConfigKind::LowDegree(_) => vec![one(Role::Vertex)],
        ConfigKind::Diamond => {
            let (mids, tips) = (cfg.role(Role::Mid), cfg.role(Role::Tip));
            // The vertex that may have degree 6 goes first.
            let all = [mids[0], mids[1], tips[0], tips[1]];
            let first = all
                .iter()
                .copied()
                .find(|&x| g.degree(x) != 5)
                .unwrap_or(mids[0]);
            let (same, cross) = if mids.contains(&first) {
                (mids, tips)
            } else {
                (tips, mids)
            };
            let partner = if same[0] == first { same[1] } else { same[0] };
            vec![first, partner, cross[0], cross[1]]
        }
        ConfigKind::FourFourEdge | ConfigKind::ThreeThreeEdge => vec![one(Role::V), one(Role::U)],
        ConfigKind::Triangle455 => vec![one(Role::V), one(Role::W), one(Role::U)],
        ConfigKind::Triangle456 => vec![one(Role::W), one(Role::V), one(Role::X), one(Role::U)],
        ConfigKind::FourPathPair | ConfigKind::FivePathQuad => {
            let used = if cfg.kind == ConfigKind::FourPathPair {
                minimize_four_paths(g, cfg)
            } else {
                minimize_five_paths(g, cfg)
            };
            let mut order = vec![one(Role::Anchor)];
            for x in used.paths.iter().flat_map(|p| p[1..].iter()) {
                if !order.contains(x) {
                    order.push(*x);
                }
            }
            return (order, used);
        }
        ConfigKind::BowTie => {
            let tri = cfg.role(Role::Tri);
            let opp = cfg.role(Role::Opp);
            let four = opp
                .iter()
                .copied()
                .find(|&x| g.degree(x) == 4)
                .unwrap_or(opp[0]);
            vec![tri[0], tri[1], four, one(Role::Center)]
        }
    };
    (order, cfg.clone())
}

/// Re-add order for the whole recursion, plus the configurations used.
pub fn elimination_order(
    g: &PlaneGraph,
    strategy: Strategy,
) -> Result<(Vec<VertexId>, Vec<Configuration>), Box<Stuck>> {
    fn go(
        g: &PlaneGraph,
        strategy: Strategy,
        order: &mut Vec<VertexId>,
        used: &mut Vec<Configuration>,
    ) -> Result<(), Box<Stuck>> {
        let cfg = find_reduction(g, strategy).map_err(|error| {
            Box::new(Stuck {
                error,
                graph: g.clone(),
            })
        })?;
        let (readd, cfg) = reduction_order(g, &cfg);
        used.push(cfg);
        let parts = g
            .split_without(&readd)
            .expect("removed vertices are present");
        for part in &parts {
            go(part, strategy, order, used)?;
        }
        order.extend(readd);
        Ok(())
    }
    let mut order = Vec::with_capacity(g.vertex_count());
    let mut used = Vec::new();
    go(g, strategy, &mut order, &mut used)?;
    Ok((order, used))
}

/// Recolors `alpha` into `beta` on a plane graph with the given strategy.
/// Colorings and lists are indexed by vertex id; entries of deleted ids are
/// ignored.
pub fn recolor(
    g: &PlaneGraph,
    lists: &ListAssignment,
    alpha: &[Color],
    beta: &[Color],
    strategy: Strategy,
) -> Result<Recoloring, RecolorError> {
    let graph = g.to_graph();
    let vertices: Vec<VertexId> = g.vertices().collect();
    check_inputs(&graph, &vertices, lists, alpha, beta, strategy.list_floor())?;
    let (order, reductions) =
        elimination_order(g, strategy).map_err(RecolorError::StructureNotFound)?;
    let sequence = extend_along(
        &graph,
        lists,
        &order,
        RecolorSequence::empty(g.capacity()),
        alpha,
        beta,
    )?;
    sequence
        .validate(&graph, lists)
        .map_err(RecolorError::InvalidOutput)?;
    let certificate = Certificate {
        strategy: strategy.to_string(),
        budget: strategy.budget(),
        counts: sequence.counts(),
        steps: sequence.len(),
        in_class: strategy.in_class(g),
        reductions,
    };
    Ok(Recoloring {
        sequence,
        certificate,
    })
}

/// Recolors a `d`-degenerate graph with lists of at least `2d + 2` colors,
/// recoloring each vertex at most `d + 1` times.
pub fn recolor_degenerate(
    g: &Graph,
    lists: &ListAssignment,
    alpha: &[Color],
    beta: &[Color],
    d: usize,
) -> Result<Recoloring, RecolorError> {
    let vertices: Vec<VertexId> = (0..g.vertex_count()).collect();
    check_inputs(g, &vertices, lists, alpha, beta, 2 * d + 2)?;
    let (actual, peel) = g.degeneracy_order();
    if actual > d {
        return Err(RecolorError::TooDense { actual, d });
    }
    let order: Vec<VertexId> = peel.into_iter().rev().collect();
    let sequence = extend_along(
        g,
        lists,
        &order,
        RecolorSequence::empty(g.vertex_count()),
        alpha,
        beta,
    )?;
    sequence
        .validate(g, lists)
        .map_err(RecolorError::InvalidOutput)?;
    let certificate = Certificate {
        strategy: format!("degenerate-{d}"),
        budget: d + 1,
        counts: sequence.counts(),
        steps: sequence.len(),
        in_class: true,
        reductions: Vec::new(),
    };
    Ok(Recoloring {
        sequence,
        certificate,
    })
}
