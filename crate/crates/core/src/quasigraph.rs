//! Quasigraphs: each hyperedge is represented by one of its 2-subsets or by
//! nothing.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::hypergraph::{HyperedgeId, Hypergraph3, Multigraph, VertexId, VertexSet};

/// Representation of one hyperedge: a sorted pair inside it, or empty.
pub type Rep = Option<[VertexId; 2]>;

pub fn pair(a: VertexId, b: VertexId) -> [VertexId; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

pub fn rep_inside(rep: Rep, x: &VertexSet) -> bool {
    match rep {
        None => true,
        Some([a, b]) => x.contains(&a) && x.contains(&b),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuasiClass {
    Quasitree,
    Quasicycle,
    Quasiforest,
    Other,
}

#[derive(Clone, Debug)]
pub struct Quasigraph {
    host: Arc<Hypergraph3>,
    rep: Vec<Rep>,
}

impl PartialEq for Quasigraph {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && (Arc::ptr_eq(&self.host, &other.host) || self.host == other.host)
    }
}

impl Eq for Quasigraph {}

impl Quasigraph {
    pub fn empty(host: Arc<Hypergraph3>) -> Quasigraph {
        let n = host.num_edges();
        Quasigraph { host, rep: vec![None; n] }
    }

    /// Empty quasigraph with the given hyperedges represented (by name).
    pub fn with_reps(host: Arc<Hypergraph3>, reps: &[(&str, [u32; 2])]) -> Result<Quasigraph> {
        let mut q = Quasigraph::empty(host);
        for (name, [a, b]) in reps {
            let Some(id) = q.host.find(name) else {
                return domain(format!("unknown hyperedge {name:?}"));
            };
            q.set(id, Some([VertexId(*a), VertexId(*b)]))?;
        }
        Ok(q)
    }

    pub fn from_reps(host: Arc<Hypergraph3>, rep: Vec<Rep>) -> Result<Quasigraph> {
        if rep.len() != host.num_edges() {
            return domain("representation map is not total on the host");
        }
        let mut q = Quasigraph::empty(host);
        for (i, r) in rep.into_iter().enumerate() {
            q.set(HyperedgeId(i as u32), r)?;
        }
        Ok(q)
    }

    pub fn host(&self) -> &Arc<Hypergraph3> {
        &self.host
    }

    pub fn same_host(&self, other: &Quasigraph) -> bool {
        Arc::ptr_eq(&self.host, &other.host) || self.host == other.host
    }

    pub fn reps(&self) -> &[Rep] {
        &self.rep
    }

    pub fn rep(&self, id: HyperedgeId) -> Rep {
        self.rep[id.index()]
    }

    pub fn set(&mut self, id: HyperedgeId, rep: Rep) -> Result<()> {
        self.host.check_id(id)?;
        let rep = match rep {
            None => None,
            Some([a, b]) => {
                let e = self.host.edge(id);
                if a == b || !e.contains(a) || !e.contains(b) {
                    return domain(format!("{a}{b} is not a 2-subset of hyperedge {}", e.name));
                }
                Some(pair(a, b))
            }
        };
        self.rep[id.index()] = rep;
        Ok(())
    }

    pub fn with(&self, id: HyperedgeId, rep: Rep) -> Result<Quasigraph> {
        let mut q = self.clone();
        q.set(id, rep)?;
        Ok(q)
    }

    /// `π − e`.
    pub fn remove(&self, id: HyperedgeId) -> Result<Quasigraph> {
        self.with(id, None)
    }

    /// Ids of used hyperedges, `E(π)`.
    pub fn used(&self) -> impl Iterator<Item = HyperedgeId> + '_ {
        self.rep.iter().enumerate().filter(|(_, r)| r.is_some()).map(|(i, _)| HyperedgeId(i as u32))
    }

    pub fn used_set(&self) -> BTreeSet<HyperedgeId> {
        self.used().collect()
    }

    pub fn num_used(&self) -> usize {
        self.rep.iter().filter(|r| r.is_some()).count()
    }

    /// `π*`: one edge per used hyperedge, spanning all host vertices. Edge `i`
    /// of the graph comes from the `i`-th used hyperedge.
    pub fn underlying_graph(&self) -> Multigraph {
        let mut g = Multigraph::new(self.host.vertices().iter().copied());
        for id in self.used() {
            let [a, b] = self.rep(id).unwrap();
            g.add_edge(self.host.name(id).to_string(), a, b).expect("rep inside host");
        }
        g
    }

    pub fn classify(&self) -> QuasiClass {
        let g = self.underlying_graph();
        if g.is_tree() {
            return QuasiClass::Quasitree;
        }
        let nontrivial: Vec<_> = g.components().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.len() == 1 && g.num_edges() == nontrivial[0].len() && g.vertices().iter().all(|v| g.degree(*v) % 2 == 0 && g.degree(*v) <= 2) {
            return QuasiClass::Quasicycle;
        }
        if g.is_forest() {
            QuasiClass::Quasiforest
        } else {
            QuasiClass::Other
        }
    }

    /// `π*` has no cycle.
    pub fn is_acyclic(&self) -> bool {
        self.underlying_graph().is_forest()
    }

    pub fn is_quasitree(&self) -> bool {
        self.underlying_graph().is_tree()
    }

    /// Spanning subhypergraph of unused hyperedges.
    pub fn complement(&self) -> Hypergraph3 {
        self.host.without(&self.used_set())
    }

    /// The π-section at `x`: `e ∩ x` for every `e` with `|e ∩ x| ≥ 2` whose
    /// representation lies inside `x`.
    pub fn section(&self, x: &VertexSet) -> Result<Hypergraph3> {
        self.host.check_subset(x)?;
        let mut out = Hypergraph3::new(x.iter().copied());
        for (id, e) in self.host.edges() {
            if !rep_inside(self.rep(id), x) {
                continue;
            }
            let m = e.meet(x);
            if m.len() >= 2 {
                out.push(e.name.clone(), &m, Some(id))?;
            }
        }
        Ok(out)
    }

    /// `π[x]` on the section at `x`.
    pub fn induced(&self, x: &VertexSet) -> Result<Quasigraph> {
        let sec = Arc::new(self.section(x)?);
        let rep = sec.edges().map(|(_, e)| self.rep(e.origin.unwrap())).collect();
        Ok(Quasigraph { host: sec, rep })
    }

    /// Every value of `self` equals the value of `pi` or is empty.
    pub fn is_restriction_of(&self, pi: &Quasigraph) -> bool {
        self.same_host(pi) && self.rep.iter().zip(&pi.rep).all(|(s, p)| s.is_none() || s == p)
    }

    /// The same representation over a structurally equal host.
    pub fn rehost(&self, host: Arc<Hypergraph3>) -> Result<Quasigraph> {
        if *host != *self.host {
            return domain("host mismatch");
        }
        Ok(Quasigraph { host, rep: self.rep.clone() })
    }

    /// DOT drawing: used representations bold, 3-hyperedges as a point
    /// joined to their vertices.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph quasigraph {\n");
        for v in self.host.vertices() {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for (id, e) in self.host.edges() {
            let rep = self.rep(id);
            if e.size() == 3 {
                let _ = writeln!(out, "  \"@{}\" [shape=point];", e.name);
                for v in &e.verts {
                    let _ = writeln!(out, "  \"@{}\" -- \"{v}\" [style=dotted];", e.name);
                }
            }
            match rep {
                Some([a, b]) => {
                    let _ = writeln!(out, "  \"{a}\" -- \"{b}\" [label=\"{}\", style=bold];", e.name);
                }
                None if e.size() == 2 => {
                    let _ = writeln!(out, "  \"{}\" -- \"{}\" [label=\"{}\", style=dotted];", e.verts[0], e.verts[1], e.name);
                }
                None => {}
            }
        }
        out.push_str("}\n");
        out
    }
}
