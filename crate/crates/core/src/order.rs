//! Partition sequences and the orders used to compare quasigraphs.
//!
//! `π ⊴ σ` holds when both finest partitions of π refine those of σ.
//! `π ⪯ σ` additionally asks that the partition sequence of π is
//! lexicographically at most that of σ, where a strictly finer term is
//! smaller.

use serde::Serialize;

use crate::contract::contract;
use crate::error::{domain, invariant, Result};
use crate::hypergraph::{expand_to_graph, VertexSet};
use crate::narrow_wide::{finest_narrow, finest_wide, is_tight};
use crate::partition::{lex_compare, LexOrder, Partition, PartitionSequence};
use crate::quasigraph::Quasigraph;

/// `P0 = Π⁺(π)`; odd terms refine each class by negative parts of the
/// induced quasigraph, even terms by positive parts.
pub fn partition_sequence(pi: &Quasigraph) -> Result<PartitionSequence> {
    let n = pi.host().num_vertices();
    let mut terms = vec![finest_wide(pi)];
    loop {
        let k = terms.len();
        if k >= 3 && terms[k - 1] == terms[k - 3] {
            terms.truncate(k - 2);
            return Ok(PartitionSequence::new(terms));
        }
        if k > 2 * n + 4 {
            return invariant("partition sequence failed to stabilize");
        }
        let prev = &terms[k - 1];
        let mut parts = Vec::new();
        for x in prev.classes() {
            let q = pi.induced(&x)?;
            parts.push(if k % 2 == 1 { finest_narrow(&q)? } else { finest_wide(&q) });
        }
        terms.push(Partition::union(parts)?);
    }
}

/// Everything needed to compare a quasigraph with others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank {
    pub pos: Partition,
    pub neg: Partition,
    pub seq: PartitionSequence,
}

impl Rank {
    pub fn of(pi: &Quasigraph) -> Result<Rank> {
        let seq = partition_sequence(pi)?;
        Ok(Rank { pos: seq.term(0).clone(), neg: finest_narrow(pi)?, seq })
    }

    pub fn unlhd(&self, other: &Rank) -> Result<bool> {
        Ok(self.pos.refines(&other.pos)? && self.neg.refines(&other.neg)?)
    }

    /// `self ⪯ other`.
    pub fn preceq(&self, other: &Rank) -> Result<bool> {
        Ok(self.unlhd(other)? && matches!(lex_compare(&self.seq, &other.seq)?, LexOrder::Less | LexOrder::Equal))
    }

    pub fn compare(&self, other: &Rank) -> Result<LexOrder> {
        Ok(match (self.preceq(other)?, other.preceq(self)?) {
            (true, true) => LexOrder::Equal,
            (true, false) => LexOrder::Less,
            (false, true) => LexOrder::Greater,
            (false, false) => LexOrder::Incomparable,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiOrderVerdict {
    /// `π ⊴ σ`.
    pub tri_unlhd: bool,
    pub preceq: LexOrder,
}

pub fn compare_quasigraphs(pi: &Quasigraph, sigma: &Quasigraph) -> Result<QuasiOrderVerdict> {
    if !pi.same_host(sigma) {
        return domain("quasigraphs live on different hosts");
    }
    let (a, b) = (Rank::of(pi)?, Rank::of(sigma)?);
    Ok(QuasiOrderVerdict { tri_unlhd: a.unlhd(&b)?, preceq: a.compare(&b)? })
}

/// `π[X]` is a quasitree with tight complement in its section.
pub fn is_solid(pi: &Quasigraph, x: &VertexSet) -> Result<bool> {
    let q = pi.induced(x)?;
    Ok(q.is_quasitree() && is_tight(&q)?)
}

/// Every class is solid and the contracted complement is acyclic.
pub fn is_skeletal(pi: &Quasigraph, p: &Partition) -> Result<bool> {
    let (_, q) = contract(pi, p)?;
    for x in p.classes() {
        if !is_solid(pi, &x)? {
            return Ok(false);
        }
    }
    Ok(expand_to_graph(&q.complement()).graph.is_forest())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{vset, Hypergraph3};
    use std::sync::Arc;

    #[test]
    fn singleton_is_solid() {
        let h = Arc::new(Hypergraph3::build(&[1, 2], &[("a", &[1, 2])]).unwrap());
        assert!(is_solid(&Quasigraph::empty(h), &vset([2])).unwrap());
    }
}
