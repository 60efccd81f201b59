use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use planar_recolor::bounded::{
    frozen_family, recolor_bounded, BoundedError, BoundedParams, DEFAULT_CAP,
};
use planar_recolor::charge::{diamond_stats, explain_negatives, run_discharge};
use planar_recolor::config::{find_reduction, Strategy};
use planar_recolor::formats::*;
use planar_recolor::graph::Graph;
use planar_recolor::instances::Family;
use planar_recolor::oracle::{distance, reconfiguration_stats, OracleError};
use planar_recolor::planar::{recolor, recolor_degenerate, RecolorError};
use planar_recolor::plane::PlaneGraph;
use planar_recolor::recolor::{Color, ListAssignment, RecolorSequence};

#[derive(Parser)]
#[command(
    name = "planar-recolor",
    version,
    about = "List recoloring of plane graphs with per-vertex budgets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    G1,
    G2,
    Gcal,
    No4,
    Degenerate,
    Bounded,
}

impl StrategyArg {
    fn planar(self) -> Option<Strategy> {
        match self {
            StrategyArg::G1 => Some(Strategy::G1),
            StrategyArg::G2 => Some(Strategy::G2),
            StrategyArg::Gcal => Some(Strategy::Gcal),
            StrategyArg::No4 => Some(Strategy::No4),
            StrategyArg::Degenerate | StrategyArg::Bounded => None,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Report which face classes the embedding belongs to.
    Classify {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Run a strategy's discharging rules and report leftover negative charge.
    Audit {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
    },
    /// Sizes, degrees, face lengths and triangle weights.
    Stats {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Find a reducible configuration for a strategy.
    FindConfig {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
    },
    /// Build a recoloring sequence between two colorings.
    Recolor {
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        #[arg(long)]
        graph: PathBuf,
        /// Not used by the bounded strategy, whose palette is 1..=ell.
        #[arg(long)]
        lists: Option<PathBuf>,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        /// Write the sequence here and the certificate to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Enumerate all list colorings and describe the recoloring graph.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lists: PathBuf,
        #[arg(long)]
        from: Option<PathBuf>,
        #[arg(long)]
        to: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Emit a graph with a coloring that admits no single recoloring.
    Frozen {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        k: usize,
        /// Write PREFIX.graph and PREFIX.col instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate an instance as a rotation file.
    Gen {
        /// grid:RxC, cube, octahedron, icosahedron, geodesic:F, diamonds:N, fan:N,
        /// polygon:N, frozen:P, random:N, triangulation:N, hypothesis-S, class-S:N
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn precondition(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }

    fn not_found(message: impl ToString) -> Self {
        Failure {
            code: 3,
            message: message.to_string(),
        }
    }

    fn parse(path: &Path, message: impl ToString) -> Self {
        Failure {
            code: 4,
            message: format!("{}: {}", path.display(), message.to_string()),
        }
    }

    fn invalid(message: impl ToString) -> Self {
        Failure {
            code: 5,
            message: message.to_string(),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::parse(path, e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::precondition(format!("{}: {e}", path.display())))
}

fn load_plane(path: &Path) -> Result<PlaneGraph, Failure> {
    parse_rotation(&read(path)?).map_err(|e| Failure::parse(path, e))
}

/// Either file format; a rotation file is read as its underlying graph.
fn load_any_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read(path)?;
    let plane = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("plane"));
    if plane {
        parse_rotation(&text)
            .map(|g| g.to_graph())
            .map_err(|e| Failure::parse(path, e))
    } else {
        parse_graph(&text).map_err(|e| Failure::parse(path, e))
    }
}

fn load_lists(path: &Path) -> Result<ListAssignment, Failure> {
    parse_lists(&read(path)?).map_err(|e| Failure::parse(path, e))
}

fn load_coloring(path: &Path) -> Result<Vec<Color>, Failure> {
    parse_coloring(&read(path)?).map_err(|e| Failure::parse(path, e))
}

fn planar_strategy(s: StrategyArg) -> Result<Strategy, Failure> {
    s.planar()
        .ok_or_else(|| Failure::precondition("this command needs one of g1, g2, gcal, no4"))
}

fn recolor_failure(e: RecolorError) -> Failure {
    match e {
        RecolorError::StructureNotFound(stuck) => Failure::not_found(format!(
            "{}\n# stuck subinstance\n{}",
            stuck.error,
            emit_rotation(&stuck.graph)
        )),
        RecolorError::InvalidOutput(_) => Failure::invalid(e),
        _ => Failure::precondition(e),
    }
}

/// Re-parses and re-validates the emitted sequence before it leaves the process.
fn checked_sequence(
    seq: &RecolorSequence,
    g: &Graph,
    lists: &ListAssignment,
) -> Result<String, Failure> {
    let text = emit_sequence(seq);
    let back = parse_sequence(&text)
        .map_err(|e| Failure::invalid(format!("emitted sequence does not re-parse: {e}")))?;
    if &back != seq {
        return Err(Failure::invalid("emitted sequence does not round-trip"));
    }
    back.validate(g, lists)
        .map_err(|e| Failure::invalid(format!("emitted sequence is invalid: {e}")))?;
    Ok(text)
}

fn deliver(sequence: String, certificate: String, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => {
            write(path, &sequence)?;
            Ok(certificate)
        }
        None => {
            let comments: String = certificate.lines().map(|l| format!("# {l}\n")).collect();
            Ok(sequence + &comments)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Classify { graph } => Ok(emit_class_report(&load_plane(&graph)?.classify())),
        Command::Audit { graph, strategy } => {
            let g = load_plane(&graph)?;
            let s = planar_strategy(strategy)?;
            let report = run_discharge(&g, s)
                .ok_or_else(|| Failure::precondition(format!("{s} has no discharging rules")))?;
            let mut out = emit_discharge_report(&report);
            let explained = explain_negatives(&g, &report);
            let count = explained.iter().filter(|(_, c)| c.is_some()).count();
            out.push_str(&format!("explained: {count}/{}\n", explained.len()));
            Ok(out)
        }
        Command::Stats { graph } => {
            let g = load_plane(&graph)?;
            let graph = g.to_graph();
            let (degeneracy, _) = graph.degeneracy_order();
            let max_degree = g.vertices().map(|v| g.degree(v)).max().unwrap_or(0);
            let mut lengths = std::collections::BTreeMap::new();
            for f in g.faces() {
                *lengths.entry(f.len()).or_insert(0usize) += 1;
            }
            let lengths: Vec<String> = lengths.iter().map(|(l, c)| format!("{l}x{c}")).collect();
            let weights = diamond_stats(&g);
            let heavy = g
                .vertices()
                .filter(|&v| g.degree(v) >= 7 && weights[v].weight() > 3 * (g.degree(v) - 4))
                .count();
            Ok(format!(
                "vertices: {}\nedges: {}\nfaces: {}\nmin_degree: {}\nmax_degree: {max_degree}\ndegeneracy: {degeneracy}\nface_lengths: {}\nheavy_7plus_vertices: {heavy}\n",
                g.vertex_count(),
                g.edge_count(),
                g.face_count(),
                g.min_degree(),
                lengths.join(" ")
            ))
        }
        Command::FindConfig { graph, strategy } => {
            let g = load_plane(&graph)?;
            let cfg = find_reduction(&g, planar_strategy(strategy)?).map_err(Failure::not_found)?;
            Ok(format!("{cfg}\n"))
        }
        Command::Recolor {
            strategy,
            graph,
            lists,
            from,
            to,
            out,
            d,
            p,
            k,
            ell,
            cap,
        } => {
            let alpha = load_coloring(&from)?;
            let beta = load_coloring(&to)?;
            let need_lists = || {
                lists
                    .as_deref()
                    .ok_or_else(|| Failure::precondition("--lists is required"))
                    .and_then(load_lists)
            };
            match strategy {
                StrategyArg::Bounded => {
                    let g = load_any_graph(&graph)?;
                    let (Some(p), Some(k), Some(ell)) = (p, k, ell) else {
                        return Err(Failure::precondition("bounded needs --p, --k and --ell"));
                    };
                    let seq = recolor_bounded(&g, BoundedParams { p, k, ell }, &alpha, &beta, cap)
                        .map_err(|e| match e {
                            BoundedError::NoSmallClass => Failure::invalid(e),
                            _ => Failure::precondition(e),
                        })?;
                    let palette = ListAssignment::uniform(g.vertex_count(), 1..=ell as Color);
                    let text = checked_sequence(&seq, &g, &palette)?;
                    let cert = format!("strategy: bounded\nbudget: 4\nmax_count: {}\nwithin_budget: {}\nsteps: {}\n", seq.max_count(), seq.max_count() <= 4, seq.len());
                    deliver(text, cert, out.as_deref())
                }
                StrategyArg::Degenerate => {
                    let g = load_any_graph(&graph)?;
                    let l = need_lists()?;
                    let d = d.ok_or_else(|| Failure::precondition("degenerate needs --d"))?;
                    let r =
                        recolor_degenerate(&g, &l, &alpha, &beta, d).map_err(recolor_failure)?;
                    let text = checked_sequence(&r.sequence, &g, &l)?;
                    deliver(text, r.certificate.to_string(), out.as_deref())
                }
                _ => {
                    let s = planar_strategy(strategy)?;
                    let g = load_plane(&graph)?;
                    let l = need_lists()?;
                    let r = recolor(&g, &l, &alpha, &beta, s).map_err(recolor_failure)?;
                    if !r.certificate.in_class {
                        eprintln!("warning: the embedding is not in the class {s} is proven for; the budget is not guaranteed");
                    }
                    let text = checked_sequence(&r.sequence, &g.to_graph(), &l)?;
                    deliver(text, r.certificate.to_string(), out.as_deref())
                }
            }
        }
        Command::Oracle {
            graph,
            lists,
            from,
            to,
            cap,
        } => {
            let g = load_any_graph(&graph)?;
            let l = load_lists(&lists)?;
            let oracle_failure = |e: OracleError| Failure::precondition(e);
            let stats = reconfiguration_stats(&g, &l, cap).map_err(oracle_failure)?;
            let mut text = emit_stats(&stats);
            if let (Some(a), Some(b)) = (from, to) {
                let d = distance(&g, &l, &load_coloring(&a)?, &load_coloring(&b)?, cap)
                    .map_err(oracle_failure)?;
                text.push_str(&format!(
                    "distance: {}\n",
                    d.map_or("inf".to_string(), |d| d.to_string())
                ));
            }
            Ok(text)
        }
        Command::Frozen { p, k, out } => {
            let (g, c) = frozen_family(p, k).map_err(Failure::precondition)?;
            let (gt, ct) = (emit_graph(&g), emit_coloring(&c));
            match out {
                Some(prefix) => {
                    let base = prefix.to_string_lossy().into_owned();
                    write(Path::new(&format!("{base}.graph")), &gt)?;
                    write(Path::new(&format!("{base}.col")), &ct)?;
                    Ok(format!(
                        "vertices: {}\ncolors: {}\n",
                        g.vertex_count(),
                        p * k / 2
                    ))
                }
                None => Ok(format!("{gt}# coloring\n{ct}")),
            }
        }
        Command::Gen { family, seed, out } => {
            let fam: Family = family.parse().map_err(Failure::precondition)?;
            let g = fam.generate(seed).map_err(Failure::precondition)?;
            let text = emit_rotation(&g);
            match out {
                Some(path) => {
                    write(&path, &text)?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
