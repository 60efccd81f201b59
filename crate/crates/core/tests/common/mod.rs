//! Checks written against the definitions, sharing no code with the library
//! beyond its data types.

#![allow(dead_code)]

use planar_recolor::graph::Graph;
use planar_recolor::recolor::{Color, ListAssignment, RecolorSequence};

/// Replays `seq` from its start coloring, rechecking every step, and returns
/// the coloring it ends at.
pub fn replay(
    g: &Graph,
    lists: &ListAssignment,
    seq: &RecolorSequence,
) -> Result<Vec<Option<Color>>, String> {
    let mut cur = seq.start().to_vec();
    for (u, v) in g.edges() {
        if cur[u].is_some() && cur[u] == cur[v] {
            return Err(format!("start coloring gives {u} and {v} the same color"));
        }
    }
    for (v, c) in cur.iter().enumerate() {
        if let Some(c) = c {
            if !lists.list(v).contains(c) {
                return Err(format!("start color {c} of {v} is not in its list"));
            }
        }
    }
    for (i, s) in seq.steps().iter().enumerate() {
        if cur[s.vertex] != Some(s.from) {
            return Err(format!(
                "step {i}: vertex {} has {:?}, not {}",
                s.vertex, cur[s.vertex], s.from
            ));
        }
        if s.from == s.to {
            return Err(format!("step {i} is not a change"));
        }
        if !lists.list(s.vertex).contains(&s.to) {
            return Err(format!(
                "step {i}: {} is not in the list of {}",
                s.to, s.vertex
            ));
        }
        if let Some(&u) = g
            .neighbors(s.vertex)
            .iter()
            .find(|&&u| cur[u] == Some(s.to))
        {
            return Err(format!(
                "step {i}: {} and {u} would both have {}",
                s.vertex, s.to
            ));
        }
        cur[s.vertex] = Some(s.to);
    }
    Ok(cur)
}

/// Replays `seq` and checks it walks from `alpha` to `beta` on every vertex.
pub fn replay_between(
    g: &Graph,
    lists: &ListAssignment,
    seq: &RecolorSequence,
    alpha: &[Color],
    beta: &[Color],
) -> Result<(), String> {
    if seq.start().iter().zip(alpha).any(|(s, a)| *s != Some(*a)) {
        return Err("sequence does not start at alpha".into());
    }
    let end = replay(g, lists, seq)?;
    if end.iter().zip(beta).any(|(e, b)| *e != Some(*b)) {
        return Err("sequence does not end at beta".into());
    }
    Ok(())
}

pub fn recolor_counts(seq: &RecolorSequence, n: usize) -> Vec<usize> {
    let mut counts = vec![0; n];
    for s in seq.steps() {
        counts[s.vertex] += 1;
    }
    counts
}
