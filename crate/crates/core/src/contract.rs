//! Contraction of a partition, substitution into sections, and the
//! quasicycle dichotomy for nested partitions.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{domain, Result};
use crate::hypergraph::{HyperedgeId, Hypergraph3, VertexId, VertexSet};
use crate::partition::Partition;
use crate::quasigraph::{pair, QuasiClass, Quasigraph, Rep};

/// `H/P`: one vertex per class (its label) and `e/P` for each crossing `e`.
#[derive(Clone, Debug)]
pub struct ContractedHypergraph {
    pub base: Arc<Hypergraph3>,
    pub classes: Partition,
}

fn image(p: &Partition, verts: &[VertexId]) -> Vec<VertexId> {
    let set: BTreeSet<VertexId> = verts.iter().map(|v| p.label(*v).unwrap()).collect();
    set.into_iter().collect()
}

pub fn contract_hypergraph(h: &Hypergraph3, p: &Partition) -> Result<ContractedHypergraph> {
    if p.ground() != *h.vertices() {
        return domain("partition ground differs from the host vertex set");
    }
    let labels: VertexSet = h.vertices().iter().map(|v| p.label(*v).unwrap()).collect();
    let mut base = Hypergraph3::new(labels);
    for (id, e) in h.edges() {
        let img = image(p, &e.verts);
        if img.len() >= 2 {
            base.push(e.name.clone(), &img, Some(id))?;
        }
    }
    Ok(ContractedHypergraph { base: Arc::new(base), classes: p.clone() })
}

/// `(H/P, π/P)`: `e/P` is used iff `π(e)` crosses `P`, with value `π(e)/P`.
pub fn contract(pi: &Quasigraph, p: &Partition) -> Result<(ContractedHypergraph, Quasigraph)> {
    let c = contract_hypergraph(pi.host(), p)?;
    let rep = contract_reps(pi, &c);
    let q = Quasigraph::from_reps(c.base.clone(), rep)?;
    Ok((c, q))
}

pub(crate) fn contract_reps(pi: &Quasigraph, c: &ContractedHypergraph) -> Vec<Rep> {
    c.base
        .edges()
        .map(|(_, f)| {
            let r = pi.rep(f.origin.unwrap())?;
            let (a, b) = (c.classes.label(r[0]).unwrap(), c.classes.label(r[1]).unwrap());
            (a != b).then(|| pair(a, b))
        })
        .collect()
}

/// Replace π inside each listed set by the given quasigraph on its section.
/// Each assignment's host must equal the section of π at its set.
pub fn substitute(pi: &Quasigraph, assignments: &[(VertexSet, Quasigraph)]) -> Result<Quasigraph> {
    for (i, (x, sx)) in assignments.iter().enumerate() {
        for (y, _) in &assignments[..i] {
            if !x.is_disjoint(y) {
                return domain("substitution sets overlap");
            }
        }
        if pi.section(x)? != **sx.host() {
            return domain("assigned quasigraph does not live on the section");
        }
    }
    Ok(substitute_unchecked(pi, assignments.iter().map(|(_, s)| s)))
}

/// [`substitute`] without the host and disjointness checks.
pub(crate) fn substitute_unchecked<'a, I: IntoIterator<Item = &'a Quasigraph>>(pi: &Quasigraph, parts: I) -> Quasigraph {
    let mut rep = pi.reps().to_vec();
    for s in parts {
        for (f, e) in s.host().edges() {
            rep[e.origin.unwrap().index()] = s.rep(f);
        }
    }
    Quasigraph::from_reps(pi.host().clone(), rep).expect("section values lie inside parent hyperedges")
}

/// Outcome of the dichotomy for a contracted quasicycle.
#[derive(Clone, Debug)]
pub enum Case {
    /// All edges of the cycle lie inside the class `x` of the coarser partition.
    Inside { x: VertexSet, cycle: Quasigraph },
    /// The cycle survives contraction of the coarser partition as a nonempty
    /// quasigraph with all degrees even.
    Eulerian { contracted: Quasigraph },
}

/// Given `R ≤ P` and `γ` with `γ/R` a quasicycle avoiding `E(π/R)`, decide
/// which alternative of the dichotomy applies.
pub fn cycle_dichotomy(gamma: &Quasigraph, pi: &Quasigraph, r: &Partition, p: &Partition) -> Result<Case> {
    if !gamma.same_host(pi) {
        return domain("γ and π live on different hosts");
    }
    if !r.refines(p)? {
        return domain("R does not refine P");
    }
    let (cr, gr) = contract(gamma, r)?;
    let pr = Quasigraph::from_reps(cr.base.clone(), contract_reps(pi, &cr))?;
    if gr.classify() != QuasiClass::Quasicycle {
        return domain("γ/R is not a quasicycle");
    }
    if gr.used().any(|f| pr.rep(f).is_some()) {
        return domain("γ/R uses a hyperedge of π/R");
    }
    let crossing = gr.used().find(|f| {
        let [a, b] = gr.rep(*f).unwrap();
        p.label(a) != p.label(b)
    });
    match crossing {
        None => {
            let f = gr.used().next().unwrap();
            let x = p.class_of(gr.rep(f).unwrap()[0]);
            let rx: VertexSet = x.iter().map(|v| r.label(*v).unwrap()).collect();
            let cycle = gr.induced(&rx)?;
            if cycle.classify() != QuasiClass::Quasicycle {
                return domain("restricted cycle degenerated");
            }
            Ok(Case::Inside { x, cycle })
        }
        Some(_) => {
            let (_, gp) = contract(gamma, p)?;
            let g = gp.underlying_graph();
            if gp.num_used() == 0 || !g.odd_vertices().is_empty() {
                return domain("γ/P is not a nonempty eulerian quasigraph");
            }
            Ok(Case::Eulerian { contracted: gp })
        }
    }
}

/// Follows provenance from a derived hypergraph back through `chain`
/// (innermost first, after the hypergraph the id belongs to).
pub fn trace(id: HyperedgeId, start: &Hypergraph3, chain: &[&Hypergraph3]) -> HyperedgeId {
    let mut cur = start.edge(id).origin.expect("derived hyperedge");
    for h in chain {
        cur = h.edge(cur).origin.expect("derived hyperedge");
    }
    cur
}

/// Provenance-canonical form of a derived quasigraph: for each hyperedge, its
/// root id, vertex set and value, sorted.
pub fn canonical(q: &Quasigraph, chain: &[&Hypergraph3]) -> Vec<(HyperedgeId, Vec<VertexId>, Rep)> {
    let mut out: Vec<_> = q
        .host()
        .edges()
        .map(|(id, e)| (trace(id, q.host(), chain), e.verts.clone(), q.rep(id)))
        .collect();
    out.sort();
    out
}
