//! Narrow and wide partitions, their finest members, and tight complements.
//!
//! A partition is narrow for π when every crossing hyperedge has a crossing
//! representation, and wide when every representation sits inside a class.
//! π has tight complement exactly when its finest narrow partition is
//! trivial; [`has_tight_complement`] also produces a checkable certificate.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::error::{domain, invariant, Result};
use crate::hypergraph::{HyperedgeId, Hypergraph3, VertexId, VertexSet};
use crate::partition::Partition;
use crate::quasigraph::{rep_inside, Quasigraph};

fn ground_check(p: &Partition, pi: &Quasigraph) -> Result<()> {
    if p.len_ground() == pi.host().num_vertices() && p.ground() == *pi.host().vertices() {
        Ok(())
    } else {
        domain("partition ground differs from the host vertex set")
    }
}

pub fn is_narrow(p: &Partition, pi: &Quasigraph) -> Result<bool> {
    ground_check(p, pi)?;
    Ok(pi.host().edges().all(|(id, e)| {
        !p.crosses(&e.verts) || pi.rep(id).is_some_and(|r| p.crosses(&r))
    }))
}

pub fn is_wide(p: &Partition, pi: &Quasigraph) -> Result<bool> {
    ground_check(p, pi)?;
    Ok(pi.used().all(|id| !p.crosses(&pi.rep(id).unwrap())))
}

/// Components of `π*`.
pub fn finest_wide(pi: &Quasigraph) -> Partition {
    Partition::from_classes(pi.underlying_graph().components()).expect("components are disjoint")
}

/// Finest narrow partition, grown from singletons: a crossing hyperedge
/// whose representation does not cross forces every class it meets into one.
pub fn finest_narrow(pi: &Quasigraph) -> Result<Partition> {
    let host = pi.host();
    let mut p = Partition::singletons(host.vertices());
    loop {
        let forcing = host.edges().find(|(id, e)| {
            p.crosses(&e.verts) && !pi.rep(*id).is_some_and(|r| p.crosses(&r))
        });
        let Some((_, e)) = forcing else { break };
        let labels: BTreeSet<VertexId> = e.verts.iter().map(|v| p.label(*v).unwrap()).collect();
        p = p.merged(&[labels]);
    }
    if !is_narrow(&p, pi)? {
        return invariant("finest narrow fixpoint is not narrow");
    }
    Ok(p)
}

pub fn is_tight(pi: &Quasigraph) -> Result<bool> {
    Ok(finest_narrow(pi)?.is_trivial())
}

/// Certificate of tightness following the recursive definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TightWitness {
    Connected,
    Split {
        x1: VertexSet,
        x2: VertexSet,
        /// Used hyperedge of the certified quasigraph's host with
        /// representation inside `x1` that meets `x2`.
        bridge: HyperedgeId,
        left: Box<TightWitness>,
        right: Box<TightWitness>,
    },
}

impl TightWitness {
    fn lift(self, child: &Hypergraph3) -> TightWitness {
        match self {
            TightWitness::Connected => TightWitness::Connected,
            TightWitness::Split { x1, x2, bridge, left, right } => TightWitness::Split {
                x1,
                x2,
                bridge: child.edge(bridge).origin.expect("section provenance"),
                left: Box::new(left.lift(child)),
                right: Box::new(right.lift(child)),
            },
        }
    }

    pub fn to_json(&self, host: &Hypergraph3) -> Value {
        match self {
            TightWitness::Connected => json!("connected"),
            TightWitness::Split { x1, x2, bridge, left, right } => json!({
                "split": {
                    "x1": x1.iter().map(|v| v.0).collect::<Vec<_>>(),
                    "x2": x2.iter().map(|v| v.0).collect::<Vec<_>>(),
                    "bridge": &*host.name(*bridge),
                    "left": left.to_json(host),
                    "right": right.to_json(host),
                }
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tightness {
    Tight(TightWitness),
    /// A nontrivial narrow partition refuting tightness.
    NotTight(Partition),
}

impl Tightness {
    pub fn is_tight(&self) -> bool {
        matches!(self, Tightness::Tight(_))
    }
}

pub fn has_tight_complement(pi: &Quasigraph) -> Result<Tightness> {
    let p = finest_narrow(pi)?;
    if !p.is_trivial() {
        return Ok(Tightness::NotTight(p));
    }
    Ok(Tightness::Tight(witness(pi)?))
}

fn bridge(pi: &Quasigraph, x1: &VertexSet, x2: &VertexSet) -> Option<HyperedgeId> {
    pi.used().find(|id| {
        rep_inside(pi.rep(*id), x1) && pi.host().verts(*id).iter().any(|v| x2.contains(v))
    })
}

/// Builds a certificate for a quasigraph already known to be tight.
fn witness(pi: &Quasigraph) -> Result<TightWitness> {
    if pi.complement().is_connected() {
        return Ok(TightWitness::Connected);
    }
    let verts: Vec<VertexId> = pi.host().vertices().iter().copied().collect();
    let n = verts.len();
    for mask in 1u64..(1u64 << n) - 1 {
        let x1: VertexSet = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
        let x2: VertexSet = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| verts[i]).collect();
        let Some(b) = bridge(pi, &x1, &x2) else { continue };
        let (q1, q2) = (pi.induced(&x1)?, pi.induced(&x2)?);
        if !is_tight(&q1)? || !is_tight(&q2)? {
            continue;
        }
        let left = witness(&q1)?.lift(q1.host());
        let right = witness(&q2)?.lift(q2.host());
        return Ok(TightWitness::Split { x1, x2, bridge: b, left: Box::new(left), right: Box::new(right) });
    }
    invariant("tight quasigraph admits no certifying split")
}

/// Independent check of a certificate against the definition.
pub fn check_witness(pi: &Quasigraph, w: &TightWitness) -> Result<bool> {
    match w {
        TightWitness::Connected => Ok(pi.complement().is_connected()),
        TightWitness::Split { x1, x2, bridge, left, right } => {
            let ground = pi.host().vertices();
            if x1.is_empty() || x2.is_empty() || !x1.is_disjoint(x2) || x1.len() + x2.len() != ground.len() || !x1.iter().chain(x2).all(|v| ground.contains(v)) {
                return Ok(false);
            }
            let rep = pi.rep(*bridge);
            if rep.is_none() || !rep_inside(rep, x1) || !pi.host().verts(*bridge).iter().any(|v| x2.contains(v)) {
                return Ok(false);
            }
            let (q1, q2) = (pi.induced(x1)?, pi.induced(x2)?);
            let down = |q: &Quasigraph, w: &TightWitness| -> Result<bool> {
                // child certificate ids were lifted to this level; push them back down
                match lower(w, q.host()) {
                    Some(w) => check_witness(q, &w),
                    None => Ok(false),
                }
            };
            Ok(down(&q1, left)? && down(&q2, right)?)
        }
    }
}

fn lower(w: &TightWitness, child: &Hypergraph3) -> Option<TightWitness> {
    match w {
        TightWitness::Connected => Some(TightWitness::Connected),
        TightWitness::Split { x1, x2, bridge, left, right } => {
            let b = child.edges().find(|(_, e)| e.origin == Some(*bridge)).map(|(id, _)| id)?;
            Some(TightWitness::Split {
                x1: x1.clone(),
                x2: x2.clone(),
                bridge: b,
                left: Box::new(lower(left, child)?),
                right: Box::new(lower(right, child)?),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::vset;
    use std::sync::Arc;

    #[test]
    fn narrow_examples() {
        let h = Arc::new(Hypergraph3::build(&[1, 2, 3], &[("a", &[1, 2]), ("b", &[2, 3]), ("c", &[1, 3])]).unwrap());
        let pi1 = Quasigraph::with_reps(h.clone(), &[("a", [1, 2]), ("b", [2, 3])]).unwrap();
        assert!(is_narrow(&Partition::of(&[&[1, 3], &[2]]), &pi1).unwrap());
        assert!(!is_narrow(&Partition::singletons(&vset([1, 2, 3])), &pi1).unwrap());
        assert_eq!(finest_narrow(&pi1).unwrap(), Partition::of(&[&[1, 3], &[2]]));
        assert!(!has_tight_complement(&pi1).unwrap().is_tight());
    }
}
