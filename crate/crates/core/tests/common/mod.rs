#![allow(dead_code)]

use std::sync::Arc;

use quasi_core::{Hypergraph3, Multigraph, Quasigraph};

pub fn f1() -> Arc<Hypergraph3> {
    Arc::new(Hypergraph3::build(&[1, 2, 3], &[("a", &[1, 2]), ("b", &[2, 3]), ("c", &[1, 3])]).unwrap())
}

pub fn f2() -> Arc<Hypergraph3> {
    Arc::new(
        Hypergraph3::build(
            &[1, 2, 3],
            &[("a1", &[1, 2]), ("a2", &[1, 2]), ("b1", &[2, 3]), ("b2", &[2, 3]), ("c1", &[1, 3]), ("c2", &[1, 3])],
        )
        .unwrap(),
    )
}

pub fn f4() -> Arc<Hypergraph3> {
    Arc::new(Hypergraph3::build(&[1, 2, 3, 4], &[("t", &[1, 2, 3]), ("d", &[3, 4]), ("e", &[1, 4])]).unwrap())
}

pub fn f6() -> Arc<Hypergraph3> {
    Arc::new(
        Hypergraph3::build(
            &[1, 2, 3, 4],
            &[("e", &[2, 3, 4]), ("f", &[1, 4]), ("g", &[1, 2]), ("h", &[1, 3]), ("k", &[2, 3])],
        )
        .unwrap(),
    )
}

pub fn pi1() -> Quasigraph {
    Quasigraph::with_reps(f1(), &[("a", [1, 2]), ("b", [2, 3])]).unwrap()
}

pub fn pi2() -> Quasigraph {
    Quasigraph::with_reps(f2(), &[("a1", [1, 2]), ("b1", [2, 3])]).unwrap()
}

pub fn pi4() -> Quasigraph {
    Quasigraph::with_reps(f4(), &[("t", [1, 2]), ("d", [3, 4])]).unwrap()
}

pub fn pi6() -> Quasigraph {
    Quasigraph::with_reps(f6(), &[("e", [2, 3]), ("f", [1, 4]), ("g", [1, 2])]).unwrap()
}

pub fn g7() -> Multigraph {
    let names = ["m1", "m2", "m3", "m4", "m5", "m6", "m7"];
    let edges: Vec<(&str, u32, u32)> = names.iter().map(|n| (*n, 1, 2)).collect();
    Multigraph::build(&[1, 2], &edges).unwrap()
}
