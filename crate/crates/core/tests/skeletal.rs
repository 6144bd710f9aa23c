mod common;

use common::*;
use quasi_core::hypergraph::vset;
use quasi_core::narrow_wide::has_tight_complement;
use quasi_core::order::compare_quasigraphs;
use quasi_core::partition::LexOrder;
use quasi_core::skeletal::{break_cycles, find_tight_quasitree, skeletal_step, SearchOutcome};
use quasi_core::{Error, Partition, Quasigraph, VertexId};

#[test]
fn pi2_is_already_skeletal() {
    match skeletal_step(&pi2()).unwrap() {
        SearchOutcome::Skeletal { sigma, s } => {
            assert_eq!(sigma, pi2());
            assert!(s.is_trivial());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn empty_on_f2_improves() {
    let e = Quasigraph::empty(f2());
    let SearchOutcome::Improved(s) = skeletal_step(&e).unwrap() else { panic!() };
    assert_eq!(compare_quasigraphs(&s, &e).unwrap().preceq, LexOrder::Greater);
}

#[test]
fn pi1_gives_singletons() {
    match skeletal_step(&pi1()).unwrap() {
        SearchOutcome::Skeletal { sigma, s } => {
            assert_eq!(sigma, pi1());
            assert_eq!(s, Partition::singletons(&vset([1, 2, 3])));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn cyclic_input_rejected() {
    let all = Quasigraph::with_reps(f1(), &[("a", [1, 2]), ("b", [2, 3]), ("c", [1, 3])]).unwrap();
    assert!(matches!(skeletal_step(&all), Err(Error::Domain(_))));
}

#[test]
fn break_cycles_examples() {
    assert_eq!(break_cycles(&pi2(), 0).unwrap(), pi2());
    let tri = Quasigraph::with_reps(f1(), &[("a", [1, 2]), ("b", [2, 3]), ("c", [1, 3])]).unwrap();
    // the triangle sits inside the single class of P_0
    assert!(matches!(break_cycles(&tri, 0), Err(Error::Domain(_))));
    let two = Quasigraph::with_reps(f2(), &[("a1", [1, 2]), ("a2", [1, 2]), ("b1", [2, 3])]).unwrap();
    assert!(matches!(break_cycles(&two, 0), Err(Error::Domain(_))));
}

#[test]
fn find_on_fixtures() {
    let r = find_tight_quasitree(&f2()).unwrap();
    assert!(r.pi.is_quasitree());
    assert!(has_tight_complement(&r.pi).unwrap().is_tight());
    match find_tight_quasitree(&f1()) {
        Err(Error::Rejected { reason, .. }) => assert!(reason.contains("min_cut_size 2")),
        other => panic!("{other:?}"),
    }
    let mut h = (*f2()).clone();
    h.add_edge("t", &[VertexId(1), VertexId(2), VertexId(3)]).unwrap();
    let r = find_tight_quasitree(&h).unwrap();
    assert!(r.pi.is_quasitree() && has_tight_complement(&r.pi).unwrap().is_tight());
}
