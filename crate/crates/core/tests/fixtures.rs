//! Worked examples on the shared fixtures F1, F2, F4, F6.

mod common;

use std::sync::Arc;

use common::*;
use quasi_core::contract::{canonical, contract, cycle_dichotomy, substitute, Case};
use quasi_core::hypergraph::{edge_connectivity_report, expand_to_graph, vset};
use quasi_core::narrow_wide::{check_witness, finest_narrow, finest_wide, has_tight_complement, is_narrow, is_wide, Tightness, TightWitness};
use quasi_core::order::{compare_quasigraphs, is_skeletal, is_solid, partition_sequence};
use quasi_core::partition::{lex_compare, LexOrder};
use quasi_core::{Error, HyperedgeId, Hypergraph3, Partition, QuasiClass, Quasigraph, VertexId, VertexSet};

fn id(h: &Hypergraph3, name: &str) -> HyperedgeId {
    h.find(name).unwrap()
}

fn names(h: &Hypergraph3) -> Vec<String> {
    h.edges().map(|(_, e)| e.name.to_string()).collect()
}

// core structures

#[test]
fn expansion_adds_a_vertex_per_triple() {
    let g = expand_to_graph(&f1()).graph;
    assert_eq!((g.num_vertices(), g.num_edges()), (3, 3));

    let x = expand_to_graph(&f4());
    assert_eq!(x.graph.num_vertices(), 5);
    assert_eq!(x.graph.num_edges(), 5);
    let vt = x.aux_of[&id(&f4(), "t")];
    assert_eq!(x.graph.degree(vt), 3);
    assert!(!x.is_original(vt));

    let star = Hypergraph3::build(&[1, 2, 3], &[("e", &[1, 2, 3])]).unwrap();
    let s = expand_to_graph(&star).graph;
    assert!(s.is_tree());
    assert_eq!(s.vertices().iter().map(|v| s.degree(*v)).max(), Some(3));
}

#[test]
fn induced_subhypergraphs() {
    let t = f4().induced(&vset([1, 2, 3])).unwrap();
    assert_eq!(names(&t), ["t"]);
    assert_eq!(t.verts(HyperedgeId(0)).len(), 3);

    let a = f1().induced(&vset([1, 2])).unwrap();
    assert_eq!(names(&a), ["a"]);

    let h = f2();
    let two = h.induced(&vset([1, 2])).unwrap();
    assert_eq!(two.num_edges(), 2);
    let origins: Vec<_> = two.edges().map(|(_, e)| e.origin.unwrap()).collect();
    assert_eq!(origins, [id(&h, "a1"), id(&h, "a2")]);

    assert!(matches!(f1().induced(&vset([1, 9])), Err(Error::Domain(_))));
}

#[test]
fn connectivity_reports() {
    let r2 = edge_connectivity_report(&f2());
    assert_eq!(r2.min_cut_size, Some(4));
    assert!(!r2.forbidden_3cut);
    assert!(r2.satisfies_theorem());
    assert_eq!(edge_connectivity_report(&f1()).min_cut_size, Some(2));
    // vertex 2 lies only in t
    assert_eq!(edge_connectivity_report(&f4()).min_cut_size, Some(1));
}

// partitions

#[test]
fn meets_and_traces() {
    let p = Partition::of(&[&[1, 2], &[3]]);
    let r = Partition::of(&[&[1], &[2, 3]]);
    assert_eq!(p.meet(&r).unwrap(), Partition::singletons(&vset([1, 2, 3])));
    assert_eq!(p.meet(&p).unwrap(), p);
    assert_eq!(Partition::of(&[&[1, 2, 3]]).meet(&p).unwrap(), p);

    let q = Partition::of(&[&[1, 2], &[3, 4]]);
    assert_eq!(q.induced(&vset([1, 3])).unwrap(), Partition::of(&[&[1], &[3]]));
    assert_eq!(q.induced(&vset([1, 2])).unwrap(), Partition::of(&[&[1, 2]]));
    assert_eq!(q.induced(&VertexSet::new()).unwrap().num_classes(), 0);
    assert!(p.meet(&q).is_err());
}

#[test]
fn lexicographic_comparison() {
    let a = partition_sequence(&Quasigraph::empty(f2())).unwrap();
    let b = partition_sequence(&pi2()).unwrap();
    assert_eq!(lex_compare(&a, &a).unwrap(), LexOrder::Equal);
    assert_eq!(lex_compare(&a, &b).unwrap(), LexOrder::Less);
    assert_eq!(lex_compare(&b, &a).unwrap(), LexOrder::Greater);
}

// quasigraphs

#[test]
fn underlying_graphs_and_classes() {
    let g = pi1().underlying_graph();
    assert!(g.is_tree());
    assert_eq!(g.num_edges(), 2);
    assert_eq!(Quasigraph::empty(f1()).underlying_graph().num_edges(), 0);
    let g4 = pi4().underlying_graph();
    assert_eq!((g4.num_vertices(), g4.num_edges()), (4, 2));

    assert_eq!(pi1().classify(), QuasiClass::Quasitree);
    assert_eq!(pi4().classify(), QuasiClass::Quasiforest);
    let tri = Quasigraph::with_reps(f1(), &[("a", [1, 2]), ("b", [2, 3]), ("c", [1, 3])]).unwrap();
    assert_eq!(tri.classify(), QuasiClass::Quasicycle);
}

#[test]
fn complements() {
    assert_eq!(names(&pi1().complement()), ["c"]);
    assert_eq!(names(&Quasigraph::empty(f1()).complement()), ["a", "b", "c"]);
    assert_eq!(names(&pi2().complement()), ["a2", "b2", "c1", "c2"]);
}

#[test]
fn sections_and_induced_quasigraphs() {
    let s = pi4().section(&vset([1, 2])).unwrap();
    assert_eq!(names(&s), ["t"]);
    assert_eq!(s.verts(HyperedgeId(0)), [VertexId(1), VertexId(2)]);

    let s6 = pi6().section(&vset([1, 2, 3])).unwrap();
    assert_eq!(names(&s6), ["e", "g", "h", "k"]);
    assert!(s6.edges().all(|(_, e)| e.size() == 2));

    let moved = Quasigraph::with_reps(f4(), &[("t", [2, 3])]).unwrap();
    assert_eq!(moved.section(&vset([1, 2])).unwrap().num_edges(), 0);

    let q = pi6().induced(&vset([1, 2, 3])).unwrap();
    let used: Vec<String> = q.used().map(|i| q.host().name(i).to_string()).collect();
    assert_eq!(used, ["e", "g"]);
    assert_eq!(q.rep(HyperedgeId(0)), Some([VertexId(2), VertexId(3)]));

    let whole = pi1().induced(f1().vertices()).unwrap();
    assert_eq!(whole.reps(), pi1().reps());

    let c = pi1().induced(&vset([1, 3])).unwrap();
    assert_eq!(names(c.host()), ["c"]);
    assert_eq!(c.num_used(), 0);
}

#[test]
fn removal_and_restriction() {
    let h = f1();
    let r = pi1().remove(id(&h, "a")).unwrap();
    let used: Vec<_> = r.used().collect();
    assert_eq!(used, [id(&h, "b")]);
    let empty = Quasigraph::empty(h.clone());
    assert!(empty.is_restriction_of(&pi1()));
    assert!(!pi1().is_restriction_of(&empty));
    assert!(pi1().remove(HyperedgeId(7)).is_err());
}

// narrow and wide partitions

#[test]
fn narrow_and_wide_checks() {
    assert!(is_narrow(&Partition::of(&[&[1, 3], &[2]]), &pi1()).unwrap());
    assert!(!is_narrow(&Partition::singletons(&vset([1, 2, 3])), &pi1()).unwrap());
    assert!(is_wide(&Partition::of(&[&[1, 2], &[3, 4]]), &pi4()).unwrap());
    assert!(is_narrow(&Partition::of(&[&[1, 2]]), &pi1()).is_err());
}

#[test]
fn finest_partitions() {
    let v = vset([1, 2, 3]);
    assert_eq!(finest_wide(&pi1()), Partition::trivial(&v));
    assert_eq!(finest_wide(&Quasigraph::empty(f1())), Partition::singletons(&v));
    assert_eq!(finest_wide(&pi4()), Partition::of(&[&[1, 2], &[3, 4]]));

    assert_eq!(finest_narrow(&pi1()).unwrap(), Partition::of(&[&[1, 3], &[2]]));
    assert_eq!(finest_narrow(&Quasigraph::empty(f1())).unwrap(), Partition::trivial(&v));
    assert_eq!(finest_narrow(&pi2()).unwrap(), Partition::trivial(&v));
}

#[test]
fn tight_complement_witnesses() {
    assert_eq!(has_tight_complement(&pi2()).unwrap(), Tightness::Tight(TightWitness::Connected));
    assert_eq!(has_tight_complement(&pi1()).unwrap(), Tightness::NotTight(Partition::of(&[&[1, 3], &[2]])));

    let h = f6();
    let Tightness::Tight(w) = has_tight_complement(&pi6()).unwrap() else { panic!("π6 is tight") };
    assert_eq!(
        w,
        TightWitness::Split {
            x1: vset([1, 2, 3]),
            x2: vset([4]),
            bridge: id(&h, "e"),
            left: Box::new(TightWitness::Connected),
            right: Box::new(TightWitness::Connected),
        }
    );
    assert!(check_witness(&pi6(), &w).unwrap());
    assert_eq!(w.to_json(&h)["split"]["bridge"], "e");
}

// order

#[test]
fn partition_sequences() {
    let s1 = partition_sequence(&pi1()).unwrap();
    let v = vset([1, 2, 3]);
    assert_eq!(
        s1.terms(),
        [Partition::trivial(&v), Partition::of(&[&[1, 3], &[2]]), Partition::singletons(&v)]
    );
    assert_eq!(s1.stable_index(), 2);

    let s2 = partition_sequence(&pi2()).unwrap();
    assert_eq!(s2.terms(), [Partition::trivial(&v)]);

    let s0 = partition_sequence(&Quasigraph::empty(f1())).unwrap();
    assert_eq!(s0.limit(), &Partition::singletons(&v));
    assert_eq!(s0.stable_index(), 0);
}

#[test]
fn quasigraph_comparison() {
    let e2 = Quasigraph::empty(f2());
    assert_eq!(compare_quasigraphs(&e2, &pi2()).unwrap().preceq, LexOrder::Less);
    assert!(compare_quasigraphs(&e2, &pi2()).unwrap().tri_unlhd);
    assert_eq!(compare_quasigraphs(&pi6(), &pi6()).unwrap().preceq, LexOrder::Equal);
    // Π⁺ and Π⁻ move in opposite directions here, so neither side is ⊴ the other.
    let v = compare_quasigraphs(&pi1(), &Quasigraph::empty(f1())).unwrap();
    assert_eq!(v.preceq, LexOrder::Incomparable);
    assert!(!v.tri_unlhd);
    assert!(compare_quasigraphs(&pi1(), &pi2()).is_err());
}

#[test]
fn solid_and_skeletal() {
    assert!(is_solid(&pi2(), &vset([1, 2, 3])).unwrap());
    assert!(is_solid(&pi1(), &vset([2])).unwrap());
    assert!(!is_solid(&pi1(), &vset([1, 2, 3])).unwrap());

    let v = vset([1, 2, 3]);
    assert!(is_skeletal(&pi1(), &Partition::singletons(&v)).unwrap());
    assert!(is_skeletal(&pi2(), &Partition::trivial(&v)).unwrap());
    assert!(!is_skeletal(&Quasigraph::empty(f2()), &Partition::singletons(&v)).unwrap());
}

// contraction and substitution

#[test]
fn contractions() {
    let h = f1();
    let (c, q) = contract(&pi1(), &Partition::of(&[&[1, 2], &[3]])).unwrap();
    assert_eq!(c.base.num_vertices(), 2);
    assert_eq!(names(&c.base), ["b", "c"]);
    let used: Vec<_> = q.used().map(|i| c.base.edge(i).origin.unwrap()).collect();
    assert_eq!(used, [id(&h, "b")]);
    assert_eq!(names(&q.complement()), ["c"]);

    let h4 = f4();
    let (c4, q4) = contract(&pi4(), &Partition::of(&[&[1, 2], &[3], &[4]])).unwrap();
    let t = c4.base.find("t").unwrap();
    assert_eq!(c4.base.verts(t), [VertexId(1), VertexId(3)]);
    assert_eq!(q4.rep(t), None);
    let d = c4.base.find("d").unwrap();
    assert!(q4.rep(d).is_some());
    assert_eq!(c4.base.edge(d).origin, Some(id(&h4, "d")));

    let (cs, qs) = contract(&pi6(), &Partition::singletons(&vset([1, 2, 3, 4]))).unwrap();
    let whole = pi6().induced(&vset([1, 2, 3, 4])).unwrap();
    assert_eq!(canonical(&qs, &[]), canonical(&whole, &[]));
    assert_eq!(cs.base.num_edges(), f6().num_edges());
}

#[test]
fn substitutions() {
    let x = vset([1, 3]);
    let same = substitute(&pi1(), &[(x.clone(), pi1().induced(&x).unwrap())]).unwrap();
    assert_eq!(same, pi1());

    let sec = Arc::new(pi1().section(&x).unwrap());
    let sigma = Quasigraph::with_reps(sec, &[("c", [1, 3])]).unwrap();
    let out = substitute(&pi1(), &[(x, sigma)]).unwrap();
    let h = f1();
    assert_eq!(out.rep(id(&h, "c")), Some([VertexId(1), VertexId(3)]));
    assert_eq!(out.rep(id(&h, "a")), pi1().rep(id(&h, "a")));
    assert_eq!(out.rep(id(&h, "b")), pi1().rep(id(&h, "b")));

    let p = Partition::of(&[&[1, 3], &[2]]);
    let (_, a) = contract(&out, &p).unwrap();
    let (_, b) = contract(&pi1(), &p).unwrap();
    assert_eq!(a, b);
}

#[test]
fn quasicycle_dichotomy() {
    let h = f2();
    let gamma = Quasigraph::with_reps(h.clone(), &[("a2", [1, 2]), ("b2", [2, 3]), ("c2", [1, 3])]).unwrap();
    let v = vset([1, 2, 3]);
    let single = Partition::singletons(&v);
    match cycle_dichotomy(&gamma, &pi2(), &single, &Partition::trivial(&v)).unwrap() {
        Case::Inside { x, .. } => assert_eq!(x, v),
        other => panic!("expected the inside case, got {other:?}"),
    }
    match cycle_dichotomy(&gamma, &pi2(), &single, &Partition::of(&[&[1, 2], &[3]])).unwrap() {
        Case::Eulerian { contracted } => {
            let g = contracted.underlying_graph();
            assert_eq!(g.num_edges(), 2);
            assert!(g.odd_vertices().is_empty());
        }
        other => panic!("expected the eulerian case, got {other:?}"),
    }
    // with R = P every edge of γ/R joins two classes of P
    assert!(matches!(cycle_dichotomy(&gamma, &pi2(), &single, &single).unwrap(), Case::Eulerian { .. }));
    // γ must avoid π
    let bad = Quasigraph::with_reps(h, &[("a1", [1, 2]), ("b2", [2, 3]), ("c2", [1, 3])]).unwrap();
    assert!(cycle_dichotomy(&bad, &pi2(), &single, &single).is_err());
}

#[test]
fn finest_narrow_comparison_does_not_lift() {
    let h = Arc::new(
        Hypergraph3::build(&[1, 2, 3, 4, 5], &[("e0", &[1, 2, 3]), ("e1", &[4, 5]), ("e2", &[1, 4]), ("e3", &[1, 2, 4]), ("e4", &[2, 3])])
            .unwrap(),
    );
    let pi = Quasigraph::with_reps(h.clone(), &[("e0", [1, 2]), ("e3", [1, 4]), ("e4", [2, 3])]).unwrap();
    let sigma = Quasigraph::with_reps(h, &[("e0", [1, 3]), ("e3", [1, 4]), ("e4", [2, 3])]).unwrap();
    let x = vset([1, 2, 3]);
    let (pi_x, sigma_x) = (pi.induced(&x).unwrap(), sigma.induced(&x).unwrap());
    assert_eq!(finest_narrow(&pi_x).unwrap(), finest_narrow(&sigma_x).unwrap());
    assert_eq!(finest_wide(&pi_x), finest_wide(&sigma_x));
    // {12|3} is σ[X]-narrow but not π[X]-narrow, although both finest narrow partitions are discrete
    let p = Partition::from_classes([vset([1, 2]), vset([3])]).unwrap();
    assert!(is_narrow(&p, &sigma_x).unwrap() && !is_narrow(&p, &pi_x).unwrap());
    assert_eq!(finest_narrow(&pi).unwrap(), Partition::trivial(pi.host().vertices()));
    assert_eq!(finest_narrow(&sigma).unwrap(), Partition::from_classes([vset([1, 2, 4, 5]), vset([3])]).unwrap());
}

#[test]
fn preceq_inside_does_not_lift() {
    let h = Arc::new(
        Hypergraph3::build(&[1, 2, 3, 4], &[("e0", &[1, 2]), ("e1", &[2, 3]), ("e2", &[1, 4]), ("e3", &[1, 2, 4]), ("e4", &[3, 4])]).unwrap(),
    );
    let pi = Quasigraph::with_reps(h.clone(), &[("e0", [1, 2]), ("e2", [1, 4]), ("e3", [2, 4])]).unwrap();
    let sigma = Quasigraph::with_reps(h, &[("e0", [1, 2]), ("e2", [1, 4]), ("e3", [1, 2])]).unwrap();
    let x = vset([1, 2, 4]);
    assert!(finest_wide(&pi).classes().contains(&x));
    let inner = compare_quasigraphs(&pi.induced(&x).unwrap(), &sigma.induced(&x).unwrap()).unwrap();
    assert!(inner.preceq == LexOrder::Equal);
    assert_eq!(finest_narrow(&pi).unwrap(), Partition::trivial(pi.host().vertices()));
    assert_eq!(finest_narrow(&sigma).unwrap(), Partition::from_classes([vset([1]), vset([2, 3, 4])]).unwrap());
    let outer = compare_quasigraphs(&pi, &sigma).unwrap();
    assert!(!outer.tri_unlhd && !matches!(outer.preceq, LexOrder::Less | LexOrder::Equal));
}
