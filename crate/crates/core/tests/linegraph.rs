mod common;

use std::collections::BTreeSet;

use common::g7;
use quasi_core::hypergraph::vset;
use quasi_core::linegraph::{
    analyze_graph, build_hypergraph, hamilton_cycle_in_line_graph, hamilton_path_in_line_graph, is_line_hamilton_cycle,
    is_line_hamilton_path, line_graph, reduce, spanning_eulerian, HyperSource, PathCase, TrailKind,
};
use quasi_core::oracles::{
    brute_force_hamilton, brute_force_spanning_eulerian, brute_force_vertex_connectivity, generate_instances, Constraints,
    GenSpec, HamiltonMode, Instance, InstanceKind,
};
use quasi_core::{EdgeId, Error, Multigraph, VertexId};

fn triangle() -> Multigraph {
    Multigraph::build(&[1, 2, 3], &[("a", 1, 2), ("b", 2, 3), ("c", 1, 3)]).unwrap()
}

fn doubled_triangle() -> Multigraph {
    Multigraph::build(
        &[1, 2, 3],
        &[("a1", 1, 2), ("a2", 1, 2), ("b1", 2, 3), ("b2", 2, 3), ("c1", 1, 3), ("c2", 1, 3)],
    )
    .unwrap()
}

/// Triangle x,y,z with tripled sides plus a vertex w of degree 3 seeing all three.
fn hub_graph() -> Multigraph {
    let mut edges = Vec::new();
    for (a, b, tag) in [(1, 2, "xy"), (2, 3, "yz"), (1, 3, "xz")] {
        for i in 0..3 {
            edges.push((format!("{tag}{i}"), a, b));
        }
    }
    for (x, tag) in [(1, "wx"), (2, "wy"), (3, "wz")] {
        edges.push((tag.to_string(), 4, x));
    }
    let refs: Vec<(&str, u32, u32)> = edges.iter().map(|(n, a, b)| (n.as_str(), *a, *b)).collect();
    Multigraph::build(&[1, 2, 3, 4], &refs).unwrap()
}

#[test]
fn analysis_examples() {
    let a = analyze_graph(&g7()).unwrap();
    assert_eq!(a.essential_connectivity, None);
    assert_eq!(a.min_edge_weight, 6);
    assert_eq!(a.degree_map[&VertexId(1)], 7);
    assert!(a.accepts());

    assert_eq!(analyze_graph(&triangle()).unwrap().min_edge_weight, 2);
    // three vertices: every cut is trivial, but each edge meets only five others
    let d = analyze_graph(&doubled_triangle()).unwrap();
    assert_eq!(d.essential_connectivity, None);
    assert_eq!(d.min_edge_weight, 5);
    assert!(!d.accepts());

    let split = Multigraph::build(&[1, 2, 3, 4], &[("a", 1, 2), ("b", 3, 4)]).unwrap();
    assert!(matches!(analyze_graph(&split), Err(Error::Domain(_))));
}

#[test]
fn line_graph_examples() {
    let k7 = line_graph(&g7());
    assert_eq!((k7.num_vertices(), k7.num_edges()), (7, 21));
    let path = Multigraph::build(&[1, 2, 3], &[("p", 1, 2), ("q", 2, 3)]).unwrap();
    assert_eq!(line_graph(&path).num_edges(), 1);
    let t = line_graph(&triangle());
    assert_eq!((t.num_vertices(), t.num_edges()), (3, 3));
}

#[test]
fn hypergraph_of_a_graph() {
    let b = build_hypergraph(&g7()).unwrap();
    assert_eq!(b.h.num_vertices(), 2);
    assert_eq!(b.h.num_edges(), 7);
    assert_eq!(b.h.count_by_size(2), 7);

    let hub = build_hypergraph(&hub_graph()).unwrap();
    assert_eq!(hub.h.vertices(), &vset([1, 2, 3]));
    assert_eq!(hub.h.count_by_size(3), 1);
    let t = hub.h.find("@4").unwrap();
    assert_eq!(hub.h.verts(t), [VertexId(1), VertexId(2), VertexId(3)]);
    assert!(matches!(hub.source[t.index()], HyperSource::Hub { vertex: VertexId(4), .. }));

    assert!(matches!(build_hypergraph(&triangle()), Err(Error::Rejected { .. })));
}

#[test]
fn reductions_fire_and_lift() {
    // a degree-2 vertex between two heavy vertices is suppressed
    let mut edges: Vec<(String, u32, u32)> = (0..7).map(|i| (format!("m{i}"), 1, 2)).collect();
    edges.push(("s1".into(), 1, 3));
    edges.push(("s2".into(), 3, 2));
    let refs: Vec<(&str, u32, u32)> = edges.iter().map(|(n, a, b)| (n.as_str(), *a, *b)).collect();
    let g = Multigraph::build(&[1, 2, 3], &refs).unwrap();
    let r = reduce(&g);
    assert_eq!(r.graph.num_vertices(), 2);
    assert_eq!(r.graph.num_edges(), 8);
    let merged: BTreeSet<EdgeId> = r.lift.iter().find(|l| l.len() == 2).unwrap().iter().copied().collect();
    assert_eq!(merged, BTreeSet::from([EdgeId(7), EdgeId(8)]));
    assert_eq!(r.touched, merged);
}

#[test]
fn eulerian_examples() {
    let e = spanning_eulerian(&g7()).unwrap();
    let sub = g7().edge_subgraph(&e.edges);
    assert!(sub.odd_vertices().is_empty());
    assert!(sub.without_isolated().is_connected());
    assert_eq!(e.span, vset([1, 2]));
    assert_eq!(e.edges.len(), 2);

    // the doubled triangle has one, but fails the connectivity hypothesis
    let d = doubled_triangle();
    assert!(brute_force_spanning_eulerian(&d, d.vertices()).unwrap().is_some());
    assert!(matches!(spanning_eulerian(&d), Err(Error::Rejected { .. })));

    let hub = spanning_eulerian(&hub_graph()).unwrap();
    let s = hub_graph().edge_subgraph(&hub.edges);
    assert!(s.odd_vertices().is_empty());
    assert!(vset([1, 2, 3]).iter().all(|v| s.degree(*v) > 0));
}

#[test]
fn hamilton_cycles() {
    let c = hamilton_cycle_in_line_graph(&g7()).unwrap();
    assert_eq!(c.cycle.len(), 7);
    assert!(is_line_hamilton_cycle(&g7(), &c.cycle));
    assert_eq!(c.trail.kind, TrailKind::Closed);
    assert!(brute_force_hamilton(&line_graph(&g7()), HamiltonMode::Cycle).unwrap().is_some());

    let err = hamilton_cycle_in_line_graph(&doubled_triangle()).unwrap_err();
    assert!(matches!(err, Error::Rejected { stage: "hamilton", .. }), "{err}");

    let h = hub_graph();
    let hc = hamilton_cycle_in_line_graph(&h).unwrap();
    assert!(is_line_hamilton_cycle(&h, &hc.cycle));
}

#[test]
fn hamilton_paths() {
    let g = g7();
    let (m1, m2) = (g.find("m1").unwrap(), g.find("m2").unwrap());
    let p = hamilton_path_in_line_graph(&g, m1, m2).unwrap();
    assert!(is_line_hamilton_path(&g, &p.path, m1, m2));
    assert_eq!(p.path.len(), 7);
    assert!(p.trail.dominating);
    assert!(p.degree_sum_h_prime + 4 >= p.degree_sum_h);
    assert!(matches!(hamilton_path_in_line_graph(&g, m1, m1), Err(Error::Domain(_))));
}

#[test]
fn hub_graph_is_hamilton_connected() {
    let g = hub_graph();
    let mut shared = 0;
    for a in g.edge_ids() {
        for b in g.edge_ids().filter(|b| *b != a) {
            let p = hamilton_path_in_line_graph(&g, a, b).unwrap();
            assert!(is_line_hamilton_path(&g, &p.path, a, b));
            assert!(p.degree_sum_h_prime + 4 >= p.degree_sum_h);
            if matches!(p.case, PathCase::SharedHub { .. }) {
                shared += 1;
            }
        }
    }
    // wx, wy, wz pairwise
    assert_eq!(shared, 6);
}

fn small_graphs(seed: u64) -> Vec<Multigraph> {
    let mut out = Vec::new();
    for n in 2..=5 {
        let mut spec = GenSpec::new(InstanceKind::Graph, n, Constraints::None, seed);
        spec.max_edges = 8;
        for inst in generate_instances(spec).take(40) {
            let Ok(Instance::Graph(g)) = inst else { continue };
            if g.is_connected() {
                out.push(g);
            }
        }
    }
    out
}

#[test]
fn line_graph_degree_is_edge_weight() {
    for g in small_graphs(3) {
        let a = analyze_graph(&g).unwrap();
        let l = line_graph(&g);
        let min_deg = l.vertices().iter().map(|v| l.degree(*v)).min().unwrap();
        assert_eq!(a.min_edge_weight, min_deg);
    }
}

#[test]
fn line_graph_connectivity_matches_essential_connectivity() {
    let mut compared = 0;
    for g in small_graphs(5) {
        let a = analyze_graph(&g).unwrap();
        let l = line_graph(&g);
        let kappa = brute_force_vertex_connectivity(&l).unwrap();
        let complete = l.num_edges() == l.num_vertices() * (l.num_vertices().saturating_sub(1)) / 2;
        match a.essential_connectivity {
            Some(k) if !complete => {
                assert_eq!(kappa, k, "{g:?}");
                compared += 1;
            }
            _ => {}
        }
    }
    assert!(compared > 20);
}

#[test]
fn seeded_corpus_cycles_agree_with_oracle() {
    let mut seen = 0;
    for n in 3..=4 {
        let spec = GenSpec::new(InstanceKind::Graph, n, Constraints::LineGraph, 11);
        for inst in generate_instances(spec).take(4) {
            let Instance::Graph(g) = inst.unwrap() else { unreachable!() };
            let c = hamilton_cycle_in_line_graph(&g).unwrap();
            assert!(is_line_hamilton_cycle(&g, &c.cycle));
            assert!(brute_force_hamilton(&line_graph(&g), HamiltonMode::Cycle).unwrap().is_some());
            seen += 1;
        }
    }
    assert_eq!(seen, 8);
}
