//! Line-oriented text formats. Blank lines and lines starting with `#` are
//! ignored unless noted.
//!
//! ```text
//! plane 3          graph 3        0: 1 2        0 1        seq 3 1
//! 0: 1 2           0 1            1: 1 2 3      1 2        start: 1 2 -
//! 1: 2 0           1 2            2: 3 4        2 1        0 1 3
//! 2: 0 1
//! ```
//!
//! From left to right: a rotation system (clockwise neighbors), an abstract
//! graph, lists, a coloring, and a recoloring sequence whose start coloring
//! leaves vertex 2 out.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::charge::{DischargeReport, Element};
use crate::graph::{Graph, VertexId};
use crate::oracle::ReconfigStats;
use crate::plane::{ClassReport, PlaneGraph, PlaneGraphError};
use crate::recolor::{Color, Coloring, ListAssignment, PartialColoring, RecolorSequence, Step};

/// Largest vertex count a header may announce.
pub const MAX_VERTICES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header line")]
    MissingHeader,
    #[error("vertex {0} has no line")]
    MissingVertex(VertexId),
    #[error("expected {expected} steps, found {found}")]
    StepCount { expected: usize, found: usize },
    #[error("checksum mismatch for the {0} coloring")]
    Checksum(&'static str),
    #[error(transparent)]
    Plane(#[from] PlaneGraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Content lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn number<T: std::str::FromStr>(line: usize, word: &str) -> Result<T, ParseError> {
    word.parse()
        .map_err(|_| syntax(line, format!("expected a number, found {word:?}")))
}

fn header(line: usize, text: &str, keyword: &str) -> Result<Vec<usize>, ParseError> {
    let mut words = text.split_whitespace();
    if words.next() != Some(keyword) {
        return Err(syntax(line, format!("expected header '{keyword} ...'")));
    }
    let nums = words
        .map(|w| number(line, w))
        .collect::<Result<Vec<usize>, _>>()?;
    if nums.first().is_some_and(|&n| n > MAX_VERTICES) {
        return Err(syntax(
            line,
            format!("at most {MAX_VERTICES} vertices are supported"),
        ));
    }
    Ok(nums)
}

/// `v: a b c` lines for `v` in `0..n`, each exactly once.
fn indexed_lines<'a, T: std::str::FromStr>(
    body: impl Iterator<Item = (usize, &'a str)>,
    n: Option<usize>,
) -> Result<Vec<Vec<T>>, ParseError> {
    let mut rows: Vec<Option<Vec<T>>> = Vec::new();
    for (ln, text) in body {
        let (head, rest) = text
            .split_once(':')
            .ok_or_else(|| syntax(ln, "expected 'v: ...'"))?;
        let v: usize = number(ln, head.trim())?;
        if n.is_some_and(|n| v >= n) || v > MAX_VERTICES {
            return Err(syntax(ln, format!("vertex {v} is out of range")));
        }
        if rows.len() <= v {
            rows.resize_with(v + 1, || None);
        }
        if rows[v].is_some() {
            return Err(syntax(ln, format!("vertex {v} appears twice")));
        }
        rows[v] = Some(
            rest.split_whitespace()
                .map(|w| number(ln, w))
                .collect::<Result<_, _>>()?,
        );
    }
    if let Some(n) = n {
        rows.resize_with(n, || None);
    }
    rows.into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or(ParseError::MissingVertex(v)))
        .collect()
}

pub fn parse_rotation(text: &str) -> Result<PlaneGraph, ParseError> {
    let mut it = lines(text);
    let (ln, first) = it.next().ok_or(ParseError::MissingHeader)?;
    let h = header(ln, first, "plane")?;
    let &[n] = h.as_slice() else {
        return Err(syntax(ln, "expected 'plane <n>'"));
    };
    let rot = indexed_lines::<VertexId>(it, Some(n))?;
    Ok(PlaneGraph::build(rot)?)
}

/// Writes the live vertices, renumbered to `0..vertex_count()` in id order.
pub fn emit_rotation(g: &PlaneGraph) -> String {
    let (rot, _) = g.compact_rotation();
    let mut out = format!("plane {}\n", rot.len());
    for (v, list) in rot.iter().enumerate() {
        let _ = write!(out, "{v}:");
        for u in list {
            let _ = write!(out, " {u}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut it = lines(text);
    let (ln, first) = it.next().ok_or(ParseError::MissingHeader)?;
    let h = header(ln, first, "graph")?;
    let &[n] = h.as_slice() else {
        return Err(syntax(ln, "expected 'graph <n>'"));
    };
    let mut edges = Vec::new();
    for (ln, text) in it {
        let w: Vec<&str> = text.split_whitespace().collect();
        let [a, b] = w.as_slice() else {
            return Err(syntax(ln, "expected 'u v'"));
        };
        let (u, v): (usize, usize) = (number(ln, a)?, number(ln, b)?);
        if u >= n || v >= n {
            return Err(syntax(ln, format!("edge {u} {v} leaves 0..{n}")));
        }
        if u == v {
            return Err(syntax(ln, format!("loop at vertex {u}")));
        }
        edges.push((u, v));
    }
    Ok(Graph::from_edges(n, edges))
}

pub fn emit_graph(g: &Graph) -> String {
    let mut out = format!("graph {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Lists for vertices `0..n`, where `n` is one more than the largest vertex.
pub fn parse_lists(text: &str) -> Result<ListAssignment, ParseError> {
    let rows = indexed_lines::<Color>(lines(text), None)?;
    Ok(ListAssignment::new(rows))
}

pub fn emit_lists(lists: &ListAssignment) -> String {
    let mut out = String::new();
    for (v, list) in lists.lists().iter().enumerate() {
        let _ = write!(out, "{v}:");
        for c in list {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_coloring(text: &str) -> Result<Coloring, ParseError> {
    let mut colors: Vec<Option<Color>> = Vec::new();
    for (ln, text) in lines(text) {
        let w: Vec<&str> = text.split_whitespace().collect();
        let [a, b] = w.as_slice() else {
            return Err(syntax(ln, "expected 'v c'"));
        };
        let v: usize = number(ln, a)?;
        if v > MAX_VERTICES {
            return Err(syntax(ln, format!("vertex {v} is out of range")));
        }
        if colors.len() <= v {
            colors.resize(v + 1, None);
        }
        if colors[v].replace(number(ln, b)?).is_some() {
            return Err(syntax(ln, format!("vertex {v} appears twice")));
        }
    }
    colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or(ParseError::MissingVertex(v)))
        .collect()
}

pub fn emit_coloring(c: &[Color]) -> String {
    c.iter()
        .enumerate()
        .map(|(v, c)| format!("{v} {c}\n"))
        .collect()
}

/// Hex SHA-256 of a partial coloring, with `-` for absent vertices.
pub fn checksum(c: &[Option<Color>]) -> String {
    let mut h = Sha256::new();
    for x in c {
        match x {
            Some(c) => h.update(format!("{c} ")),
            None => h.update("- "),
        }
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// The `# checksum` line is optional; when present it must match.
pub fn parse_sequence(text: &str) -> Result<RecolorSequence, ParseError> {
    let mut sums = None;
    for (ln, l) in text.lines().enumerate() {
        if let Some(rest) = l.trim().strip_prefix("# checksum") {
            let w: Vec<&str> = rest.split_whitespace().collect();
            let [s, e] = w.as_slice() else {
                return Err(syntax(ln + 1, "expected '# checksum <start> <end>'"));
            };
            sums = Some((s.to_string(), e.to_string()));
        }
    }
    let mut it = lines(text);
    let (ln, first) = it.next().ok_or(ParseError::MissingHeader)?;
    let h = header(ln, first, "seq")?;
    let &[n, count] = h.as_slice() else {
        return Err(syntax(ln, "expected 'seq <n> <steps>'"));
    };
    let (ln, start_line) = it
        .next()
        .ok_or_else(|| syntax(ln + 1, "expected 'start: ...'"))?;
    let rest = start_line
        .strip_prefix("start:")
        .ok_or_else(|| syntax(ln, "expected 'start: ...'"))?;
    let start: PartialColoring = rest
        .split_whitespace()
        .map(|w| {
            if w == "-" {
                Ok(None)
            } else {
                number(ln, w).map(Some)
            }
        })
        .collect::<Result<_, _>>()?;
    if start.len() != n {
        return Err(syntax(
            ln,
            format!(
                "start coloring has {} entries, header says {n}",
                start.len()
            ),
        ));
    }
    let mut steps = Vec::new();
    for (ln, text) in it {
        let w: Vec<&str> = text.split_whitespace().collect();
        let [v, a, b] = w.as_slice() else {
            return Err(syntax(ln, "expected 'v old new'"));
        };
        let vertex: usize = number(ln, v)?;
        if vertex >= n {
            return Err(syntax(ln, format!("vertex {vertex} is out of range")));
        }
        steps.push(Step {
            vertex,
            from: number(ln, a)?,
            to: number(ln, b)?,
        });
    }
    if steps.len() != count {
        return Err(ParseError::StepCount {
            expected: count,
            found: steps.len(),
        });
    }
    let seq = RecolorSequence::from_steps(start, steps);
    if let Some((s, e)) = sums {
        if checksum(seq.start()) != s {
            return Err(ParseError::Checksum("start"));
        }
        if checksum(&seq.end()) != e {
            return Err(ParseError::Checksum("end"));
        }
    }
    Ok(seq)
}

pub fn emit_sequence(seq: &RecolorSequence) -> String {
    let start = seq.start();
    let mut out = format!("seq {} {}\n", start.len(), seq.len());
    let _ = writeln!(
        out,
        "# checksum {} {}",
        checksum(start),
        checksum(&seq.end())
    );
    out.push_str("start:");
    for c in start {
        match c {
            Some(c) => {
                let _ = write!(out, " {c}");
            }
            None => out.push_str(" -"),
        }
    }
    out.push('\n');
    for s in seq.steps() {
        let _ = writeln!(out, "{} {} {}", s.vertex, s.from, s.to);
    }
    out
}

pub fn emit_class_report(c: &ClassReport) -> String {
    format!(
        "in_g1: {}\nin_g2: {}\nin_g3: {}\nin_gcal: {}\nhas_4cycle: {}\nmin_degree: {}\n",
        c.in_g1, c.in_g2, c.in_g3, c.in_gcal, c.has_4cycle, c.min_degree
    )
}

fn element(e: Element) -> String {
    match e {
        Element::Vertex(v) => format!("vertex {v}"),
        Element::Face(f) => format!("face {f}"),
    }
}

/// Charges are written in sixths.
pub fn emit_discharge_report(r: &DischargeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "strategy: {}", r.strategy);
    let _ = writeln!(out, "hypothesis: {}", r.hypothesis);
    let _ = writeln!(out, "units: sixths");
    let _ = writeln!(out, "total_initial: {}", r.initial.total());
    let _ = writeln!(out, "total_after: {}", r.after.total());
    let _ = writeln!(out, "transfers: {}", r.transfers.len());
    let _ = writeln!(out, "negative: {}", r.negative.len());
    for &(e, c) in &r.negative {
        let _ = writeln!(out, "  {} {}", element(e), c);
    }
    let _ = writeln!(out, "conflicts: {}", r.conflicts.len());
    for c in &r.conflicts {
        let _ = writeln!(out, "  {c}");
    }
    let _ = writeln!(out, "flags: {}", r.flags.len());
    for f in &r.flags {
        let _ = writeln!(out, "  {f}");
    }
    out
}

pub fn emit_stats(s: &ReconfigStats) -> String {
    let diameter = s.diameter().map_or("inf".to_string(), |d| d.to_string());
    let sizes: Vec<String> = s.component_sizes.iter().map(ToString::to_string).collect();
    format!(
        "colorings: {}\nconnected: {}\ndiameter: {}\ncomponents: {}\ncomponent_sizes: {}\nisolated: {}\ncomponent_diameter: {}\nexact: {}\n",
        s.colorings,
        s.connected(),
        diameter,
        s.components(),
        sizes.join(" "),
        s.isolated,
        s.component_diameter,
        s.exact
    )
}
