mod common;

use planar_recolor::config::Strategy;
use planar_recolor::graph::Graph;
use planar_recolor::instances::*;
use planar_recolor::oracle::distance;
use planar_recolor::planar::{recolor, recolor_degenerate, RecolorError};
use planar_recolor::plane::PlaneGraph;
use planar_recolor::recolor::{Color, ListAssignment};

fn check_run(g: &PlaneGraph, lists: &ListAssignment, seed: u64, s: Strategy) -> usize {
    let mut r = rng(seed);
    let alpha = random_plane_coloring(&mut r, g, lists).unwrap();
    let beta = random_plane_coloring(&mut r, g, lists).unwrap();
    let out =
        recolor(g, lists, &alpha, &beta, s).unwrap_or_else(|e| panic!("{s} seed {seed}: {e}"));
    common::replay_between(&g.to_graph(), lists, &out.sequence, &alpha, &beta).unwrap();
    let counts = common::recolor_counts(&out.sequence, g.capacity());
    assert_eq!(counts, out.certificate.counts);
    let max = counts.iter().copied().max().unwrap_or(0);
    assert!(max <= s.budget(), "{s} seed {seed}: {max} > {}", s.budget());
    max
}

#[test]
fn cube_under_the_sparse_triangle_strategy() {
    let g = cube().unwrap();
    assert!(Strategy::Gcal.in_class(&g));
    for seed in 0..20 {
        let lists = ListAssignment::uniform(8, 1..=7);
        check_run(&g, &lists, seed, Strategy::Gcal);
        let lists = random_lists(&mut rng(seed), 8, 7, 10);
        check_run(&g, &lists, seed, Strategy::Gcal);
    }
}

#[test]
fn diamond_chain_under_the_isolated_diamond_strategy() {
    for len in 1..=6 {
        let g = diamond_chain(len).unwrap();
        assert!(Strategy::G2.in_class(&g));
        for seed in 0..10 {
            let lists = random_lists(&mut rng(seed), g.capacity(), 9, 12);
            check_run(&g, &lists, seed, Strategy::G2);
        }
    }
}

#[test]
fn named_families_in_class() {
    let families = [
        Family::Grid { rows: 4, cols: 5 },
        Family::Cube,
        Family::Octahedron,
        Family::Icosahedron,
        Family::Geodesic(2),
        Family::DiamondChain(4),
        Family::Fan(7),
        Family::Polygon(9),
        Family::FrozenEmbed(3),
        Family::FrozenEmbed(4),
    ];
    let mut runs = 0;
    for fam in families {
        let g = fam.generate(0).unwrap();
        for s in Strategy::ALL {
            if !s.in_class(&g) {
                continue;
            }
            for seed in 0..3 {
                let lists = random_lists(
                    &mut rng(seed),
                    g.capacity(),
                    s.list_floor(),
                    s.list_floor() + 4,
                );
                check_run(&g, &lists, seed, s);
                runs += 1;
            }
        }
    }
    assert!(runs >= 40, "only {runs} runs");
}

#[test]
fn random_class_members() {
    for s in Strategy::ALL {
        for seed in 0..8 {
            let g = Family::InClass(s, 35).generate(seed).unwrap();
            let lists = random_lists(
                &mut rng(seed),
                g.capacity(),
                s.list_floor(),
                s.list_floor() + 3,
            );
            check_run(&g, &lists, seed, s);
        }
    }
}

#[test]
fn runs_are_deterministic() {
    let g = Family::InClass(Strategy::No4, 30).generate(7).unwrap();
    let lists = ListAssignment::uniform(g.capacity(), 1..=8);
    let mut r = rng(3);
    let alpha = random_plane_coloring(&mut r, &g, &lists).unwrap();
    let beta = random_plane_coloring(&mut r, &g, &lists).unwrap();
    let a = recolor(&g, &lists, &alpha, &beta, Strategy::No4).unwrap();
    let b = recolor(&g, &lists, &alpha, &beta, Strategy::No4).unwrap();
    assert_eq!(a, b);
}

#[test]
fn recoloring_to_itself_is_empty() {
    let g = cube().unwrap();
    let lists = ListAssignment::uniform(8, 1..=7);
    let alpha = random_plane_coloring(&mut rng(1), &g, &lists).unwrap();
    let out = recolor(&g, &lists, &alpha, &alpha, Strategy::Gcal).unwrap();
    assert!(out.sequence.is_empty());
}

#[test]
fn oracle_agrees_on_small_cases() {
    // A 4-cycle with seven colors: the shortest walk swaps two opposite
    // vertices through a spare color.
    let g = PlaneGraph::build(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap();
    let lists = ListAssignment::uniform(4, 1..=7);
    let alpha = vec![1, 2, 1, 2];
    let beta = vec![2, 1, 2, 1];
    let out = recolor(&g, &lists, &alpha, &beta, Strategy::Gcal).unwrap();
    let best = distance(&g.to_graph(), &lists, &alpha, &beta, 10_000)
        .unwrap()
        .unwrap();
    assert_eq!(best, 6);
    assert!(best <= out.sequence.len());
}

#[test]
fn single_edge_and_tree_by_degeneracy() {
    let edge = Graph::from_edges(2, [(0, 1)]);
    let lists = ListAssignment::uniform(2, 1..=4);
    let out = recolor_degenerate(&edge, &lists, &[1, 2], &[2, 1], 1).unwrap();
    common::replay_between(&edge, &lists, &out.sequence, &[1, 2], &[2, 1]).unwrap();
    assert!(out.certificate.max_count() <= 2);
    assert!(out.sequence.len() >= 3);

    let tree = Graph::from_edges(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]);
    let lists = ListAssignment::uniform(7, 1..=4);
    for seed in 0..30 {
        let mut r = rng(seed);
        let alpha = random_coloring(&mut r, &tree, &lists).unwrap();
        let beta = random_coloring(&mut r, &tree, &lists).unwrap();
        let out = recolor_degenerate(&tree, &lists, &alpha, &beta, 1).unwrap();
        common::replay_between(&tree, &lists, &out.sequence, &alpha, &beta).unwrap();
        assert!(out.certificate.max_count() <= 2);
    }
}

#[test]
fn preconditions_are_reported() {
    let g = cube().unwrap();
    let short = ListAssignment::uniform(8, 1..=6);
    let c: Vec<Color> = vec![1, 2, 2, 1, 2, 1, 1, 2];
    let err = recolor(&g, &short, &c, &c, Strategy::Gcal).unwrap_err();
    assert!(
        matches!(err, RecolorError::ListTooSmall { needed: 7, .. }),
        "{err}"
    );

    let lists = ListAssignment::uniform(8, 1..=7);
    let improper = vec![1; 8];
    let err = recolor(&g, &lists, &improper, &improper, Strategy::Gcal).unwrap_err();
    assert!(
        matches!(err, RecolorError::BadColoring { which: "start", .. }),
        "{err}"
    );

    let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let lists = ListAssignment::uniform(4, 1..=8);
    let err = recolor_degenerate(&k4, &lists, &[1, 2, 3, 4], &[1, 2, 3, 4], 2).unwrap_err();
    assert!(
        matches!(err, RecolorError::TooDense { actual: 3, d: 2 }),
        "{err}"
    );
}

#[test]
fn stuck_recursion_reports_the_subinstance() {
    // The icosahedron has minimum degree 5 and every face is a triangle, so
    // none of the isolated-diamond reductions apply.
    let g = icosahedron().unwrap();
    let lists = ListAssignment::uniform(12, 1..=9);
    let alpha = random_plane_coloring(&mut rng(0), &g, &lists).unwrap();
    match recolor(&g, &lists, &alpha, &alpha, Strategy::G2) {
        Err(RecolorError::StructureNotFound(stuck)) => {
            assert!(stuck.graph.vertex_count() <= 12);
            assert!(stuck.graph.min_degree() > Strategy::G2.degree_floor());
        }
        other => panic!("expected a stuck recursion, got {other:?}"),
    }
}

#[test]
fn quadrangulations_reduce_through_path_configurations() {
    use planar_recolor::config::ConfigKind;
    let mut path_kinds = 0;
    for seed in 0..12 {
        let t = triangulation_with_min_degree(
            &mut rng(seed),
            14 + seed as usize % 5,
            4 + seed as usize % 2,
        )
        .unwrap();
        let g = dual(&medial(&t.to_plane().unwrap()).unwrap()).unwrap();
        let lists = random_lists(&mut rng(seed), g.capacity(), 7, 9);
        check_run(&g, &lists, seed, Strategy::Gcal);
        let alpha = random_plane_coloring(&mut rng(seed), &g, &lists).unwrap();
        let out = recolor(&g, &lists, &alpha, &alpha, Strategy::Gcal).unwrap();
        path_kinds += out
            .certificate
            .reductions
            .iter()
            .filter(|c| matches!(c.kind, ConfigKind::FourPathPair | ConfigKind::FivePathQuad))
            .count();
    }
    assert!(path_kinds > 0);
}
