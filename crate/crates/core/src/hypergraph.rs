//! Loopless multigraphs and 3-hypergraphs.
//!
//! Both structures address edges by dense ids; parallel copies are distinct
//! ids. Every edge also carries a string name used for I/O, and derived
//! hypergraphs record for each hyperedge the id it came from in the parent.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Index of a hyperedge inside its host hypergraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HyperedgeId(pub u32);

impl HyperedgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Index of an edge inside its host multigraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub type VertexSet = BTreeSet<VertexId>;

pub fn vset<I: IntoIterator<Item = u32>>(it: I) -> VertexSet {
    it.into_iter().map(VertexId).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperedge {
    pub name: Arc<str>,
    /// Sorted, 2 or 3 distinct vertices.
    pub verts: Vec<VertexId>,
    /// Id of the parent hyperedge this one was derived from, if any.
    pub origin: Option<HyperedgeId>,
}

impl Hyperedge {
    pub fn size(&self) -> usize {
        self.verts.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    pub fn meet(&self, x: &VertexSet) -> Vec<VertexId> {
        self.verts.iter().copied().filter(|v| x.contains(v)).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Hypergraph3 {
    vertices: VertexSet,
    edges: Vec<Hyperedge>,
}

impl Hypergraph3 {
    pub fn new<I: IntoIterator<Item = VertexId>>(vertices: I) -> Self {
        Hypergraph3 { vertices: vertices.into_iter().collect(), edges: Vec::new() }
    }

    /// Convenience constructor used heavily by tests and fixtures.
    pub fn build(vertices: &[u32], edges: &[(&str, &[u32])]) -> Result<Self> {
        let mut h = Hypergraph3::new(vertices.iter().copied().map(VertexId));
        for (name, vs) in edges {
            let vs: Vec<VertexId> = vs.iter().copied().map(VertexId).collect();
            h.add_edge(*name, &vs)?;
        }
        Ok(h)
    }

    pub fn add_edge(&mut self, name: impl Into<String>, verts: &[VertexId]) -> Result<HyperedgeId> {
        let name: Arc<str> = name.into().into();
        if self.edges.iter().any(|e| e.name == name) {
            return domain(format!("duplicate hyperedge id {name:?}"));
        }
        self.push(name, verts, None)
    }

    pub(crate) fn push(
        &mut self,
        name: Arc<str>,
        verts: &[VertexId],
        origin: Option<HyperedgeId>,
    ) -> Result<HyperedgeId> {
        let mut vs = verts.to_vec();
        vs.sort();
        vs.dedup();
        if vs.len() != verts.len() || !(2..=3).contains(&vs.len()) {
            return domain(format!("hyperedge {name:?} must have 2 or 3 distinct vertices"));
        }
        if let Some(v) = vs.iter().find(|v| !self.vertices.contains(v)) {
            return domain(format!("hyperedge {name:?} uses unknown vertex {v}"));
        }
        let id = HyperedgeId(self.edges.len() as u32);
        self.edges.push(Hyperedge { name, verts: vs, origin });
        Ok(id)
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = HyperedgeId> + '_ {
        (0..self.edges.len() as u32).map(HyperedgeId)
    }

    pub fn edges(&self) -> impl Iterator<Item = (HyperedgeId, &Hyperedge)> + '_ {
        self.edges.iter().enumerate().map(|(i, e)| (HyperedgeId(i as u32), e))
    }

    pub fn edge(&self, id: HyperedgeId) -> &Hyperedge {
        &self.edges[id.index()]
    }

    pub fn verts(&self, id: HyperedgeId) -> &[VertexId] {
        &self.edges[id.index()].verts
    }

    pub fn name(&self, id: HyperedgeId) -> &str {
        &self.edges[id.index()].name
    }

    pub fn find(&self, name: &str) -> Option<HyperedgeId> {
        self.edges.iter().position(|e| &*e.name == name).map(|i| HyperedgeId(i as u32))
    }

    pub fn check_id(&self, id: HyperedgeId) -> Result<()> {
        if id.index() < self.edges.len() {
            Ok(())
        } else {
            domain(format!("unknown hyperedge index {}", id.0))
        }
    }

    pub fn check_subset(&self, x: &VertexSet) -> Result<()> {
        match x.iter().find(|v| !self.vertices.contains(v)) {
            Some(v) => domain(format!("vertex {v} is not in the host")),
            None => Ok(()),
        }
    }

    pub fn count_by_size(&self, k: usize) -> usize {
        self.edges.iter().filter(|e| e.size() == k).count()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Sum of all vertex degrees.
    pub fn degree_sum(&self) -> usize {
        self.edges.iter().map(|e| e.size()).sum()
    }

    /// The subhypergraph induced on `x`: one hyperedge `e ∩ x` for each `e`
    /// meeting `x` in at least two vertices.
    pub fn induced(&self, x: &VertexSet) -> Result<Hypergraph3> {
        self.check_subset(x)?;
        let mut out = Hypergraph3::new(x.iter().copied());
        for (id, e) in self.edges() {
            let m = e.meet(x);
            if m.len() >= 2 {
                out.push(e.name.clone(), &m, Some(id))?;
            }
        }
        Ok(out)
    }

    /// Spanning subhypergraph with the listed hyperedges dropped.
    pub fn without(&self, drop: &BTreeSet<HyperedgeId>) -> Hypergraph3 {
        let mut out = Hypergraph3::new(self.vertices.iter().copied());
        for (id, e) in self.edges() {
            if !drop.contains(&id) {
                out.edges.push(Hyperedge { name: e.name.clone(), verts: e.verts.clone(), origin: Some(id) });
            }
        }
        out
    }

    /// Vertex sets of the connected components, ordered by minimum vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let idx: BTreeMap<VertexId, usize> = self.vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            let a = idx[&e.verts[0]];
            for v in &e.verts[1..] {
                uf.union(a, idx[v]);
            }
        }
        group_by_root(self.vertices.iter().map(|v| (*v, uf.find(idx[v]))))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True iff `e` meets both `x` and its complement.
    pub fn crosses(&self, id: HyperedgeId, x: &VertexSet) -> bool {
        let e = self.edge(id);
        let inside = e.verts.iter().filter(|v| x.contains(v)).count();
        inside > 0 && inside < e.size()
    }
}

pub(crate) fn group_by_root<I: Iterator<Item = (VertexId, usize)>>(items: I) -> Vec<VertexSet> {
    let mut by_root: BTreeMap<usize, VertexSet> = BTreeMap::new();
    for (v, r) in items {
        by_root.entry(r).or_default().insert(v);
    }
    let mut comps: Vec<VertexSet> = by_root.into_values().collect();
    comps.sort_by_key(|c| *c.iter().next().unwrap());
    comps
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub ends: [VertexId; 2],
}

impl Edge {
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }

    pub fn has(&self, v: VertexId) -> bool {
        self.ends[0] == v || self.ends[1] == v
    }
}

/// Loopless multigraph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multigraph {
    vertices: VertexSet,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new<I: IntoIterator<Item = VertexId>>(vertices: I) -> Self {
        Multigraph { vertices: vertices.into_iter().collect(), edges: Vec::new() }
    }

    pub fn build(vertices: &[u32], edges: &[(&str, u32, u32)]) -> Result<Self> {
        let mut g = Multigraph::new(vertices.iter().copied().map(VertexId));
        for (name, a, b) in edges {
            g.add_edge(*name, VertexId(*a), VertexId(*b))?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub fn add_edge(&mut self, name: impl Into<String>, a: VertexId, b: VertexId) -> Result<EdgeId> {
        let name = name.into();
        if a == b {
            return domain(format!("edge {name:?} is a loop"));
        }
        if !self.vertices.contains(&a) || !self.vertices.contains(&b) {
            return domain(format!("edge {name:?} has an endpoint outside the vertex set"));
        }
        let ends = if a < b { [a, b] } else { [b, a] };
        self.edges.push(Edge { name, ends });
        Ok(EdgeId(self.edges.len() as u32 - 1))
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> + '_ {
        self.edges.iter().enumerate().map(|(i, e)| (EdgeId(i as u32), e))
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.index()]
    }

    pub fn find(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name).map(|i| EdgeId(i as u32))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.has(v)).count()
    }

    pub fn incident(&self, v: VertexId) -> Vec<EdgeId> {
        self.edges().filter(|(_, e)| e.has(v)).map(|(id, _)| id).collect()
    }

    pub fn neighbors(&self, v: VertexId) -> VertexSet {
        self.edges.iter().filter(|e| e.has(v)).map(|e| e.other(v)).collect()
    }

    pub fn components(&self) -> Vec<VertexSet> {
        let idx: BTreeMap<VertexId, usize> = self.vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(idx[&e.ends[0]], idx[&e.ends[1]]);
        }
        group_by_root(self.vertices.iter().map(|v| (*v, uf.find(idx[v]))))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.components().len() == self.vertices.len()
    }

    pub fn is_tree(&self) -> bool {
        self.is_forest() && self.is_connected()
    }

    /// Vertices of odd degree.
    pub fn odd_vertices(&self) -> VertexSet {
        self.vertices.iter().copied().filter(|v| self.degree(*v) % 2 == 1).collect()
    }

    /// Subgraph on the same vertex set keeping the listed edges (in id order).
    pub fn edge_subgraph(&self, keep: &BTreeSet<EdgeId>) -> Multigraph {
        let mut g = Multigraph::new(self.vertices.iter().copied());
        for id in keep {
            g.edges.push(self.edges[id.index()].clone());
        }
        g
    }

    /// Drops vertices of degree zero.
    pub fn without_isolated(&self) -> Multigraph {
        let mut g = self.clone();
        g.vertices = self.vertices.iter().copied().filter(|v| self.degree(*v) > 0).collect();
        g
    }
}

/// `Gr(H)` with bookkeeping linking it back to `H`.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub graph: Multigraph,
    /// Auxiliary vertex `v_e` for each 3-hyperedge `e`.
    pub aux: BTreeMap<VertexId, HyperedgeId>,
    pub aux_of: BTreeMap<HyperedgeId, VertexId>,
    /// Hyperedge each graph edge came from.
    pub source: Vec<HyperedgeId>,
}

impl Expansion {
    pub fn is_original(&self, v: VertexId) -> bool {
        !self.aux.contains_key(&v)
    }
}

/// Replace every 3-hyperedge `e` by a new vertex `v_e` joined to the three
/// vertices of `e`; 2-hyperedges stay edges.
pub fn expand_to_graph(h: &Hypergraph3) -> Expansion {
    let base = h.vertices().iter().next_back().map_or(0, |v| v.0 + 1);
    let mut g = Multigraph::new(h.vertices().iter().copied());
    let mut aux = BTreeMap::new();
    let mut aux_of = BTreeMap::new();
    let mut source = Vec::new();
    for (id, e) in h.edges() {
        if e.size() == 2 {
            g.add_edge(e.name.to_string(), e.verts[0], e.verts[1]).expect("valid hyperedge");
            source.push(id);
        } else {
            let ve = VertexId(base + id.0);
            g.add_vertex(ve);
            aux.insert(ve, id);
            aux_of.insert(id, ve);
            for &x in &e.verts {
                g.add_edge(format!("{}:{}", e.name, x), ve, x).expect("valid hyperedge");
                source.push(id);
            }
        }
    }
    Expansion { graph: g, aux, aux_of, source }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub connected: bool,
    /// Size of a minimum edge-cut; 0 when disconnected, `None` for one vertex.
    pub min_cut_size: Option<usize>,
    /// Some inclusionwise minimal edge-cut of size at most 4 contains a 3-hyperedge.
    pub forbidden_3cut: bool,
    /// The bipartition scan stopped early because the instance is too large.
    pub truncated: bool,
}

impl ConnectivityReport {
    /// Hypotheses of the quasitree existence theorem.
    pub fn satisfies_theorem(&self) -> bool {
        self.connected && self.min_cut_size.map_or(true, |k| k >= 4) && !self.forbidden_3cut
    }
}

const MAX_SCAN_VERTICES: usize = 22;

/// Bitmask view of a hypergraph used by the cut scans.
struct Masks {
    n: usize,
    edges: Vec<(u32, usize)>,
}

impl Masks {
    fn of(h: &Hypergraph3) -> Masks {
        let idx: BTreeMap<VertexId, usize> = h.vertices().iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let edges = h
            .edges()
            .map(|(_, e)| (e.verts.iter().fold(0u32, |m, v| m | 1 << idx[v]), e.size()))
            .collect();
        Masks { n: h.num_vertices(), edges }
    }

    fn crossing(&self, x: u32) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| {
                let m = self.edges[i].0;
                m & x != 0 && m & !x != 0
            })
            .collect()
    }

    /// Connected after removing the hyperedges flagged in `removed`?
    fn connected_without(&self, removed: &[bool]) -> bool {
        if self.n == 0 {
            return true;
        }
        let full = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        let mut reach = 1u32;
        loop {
            let before = reach;
            for (i, &(m, _)) in self.edges.iter().enumerate() {
                if !removed[i] && m & reach != 0 {
                    reach |= m;
                }
            }
            if reach == before {
                return reach == full;
            }
        }
    }
}

/// Exhaustive bipartition scan for the smallest edge-cut and for minimal
/// edge-cuts of size at most 4 that contain a 3-hyperedge.
pub fn edge_connectivity_report(h: &Hypergraph3) -> ConnectivityReport {
    let n = h.num_vertices();
    let connected = h.is_connected();
    if n <= 1 {
        return ConnectivityReport { connected: true, min_cut_size: None, forbidden_3cut: false, truncated: false };
    }
    if !connected {
        return ConnectivityReport { connected, min_cut_size: Some(0), forbidden_3cut: false, truncated: false };
    }
    let truncated = n > MAX_SCAN_VERTICES;
    let scan_n = n.min(MAX_SCAN_VERTICES);
    let masks = Masks::of(h);
    let mut best = usize::MAX;
    let mut forbidden = false;
    // Fix the last vertex on the outside so each bipartition is seen once.
    for x in 1u32..(1u32 << (scan_n - 1)) {
        let cut = masks.crossing(x);
        best = best.min(cut.len());
        if !forbidden && cut.len() <= 4 && cut.iter().any(|&i| masks.edges[i].1 == 3) {
            forbidden = is_minimal_cut(&masks, &cut);
        }
    }
    ConnectivityReport { connected, min_cut_size: Some(best), forbidden_3cut: forbidden, truncated }
}

fn is_minimal_cut(masks: &Masks, cut: &[usize]) -> bool {
    let mut removed = vec![false; masks.edges.len()];
    for &i in cut {
        removed[i] = true;
    }
    cut.iter().all(|&i| {
        removed[i] = false;
        let ok = masks.connected_without(&removed);
        removed[i] = true;
        ok
    })
}
