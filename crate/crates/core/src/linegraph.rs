//! From graphs to hypergraphs and back: line graphs, essential
//! edge-connectivity, the reductions that make a graph hypergraph-shaped,
//! spanning eulerian subgraphs, and Hamilton cycles and paths in `L(G)`.
//!
//! `L(G)` joins two edges once when they share at least one endpoint, so
//! parallel edges of `G` give a single adjacency.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{domain, invariant, Error, Result};
use crate::hypergraph::{edge_connectivity_report, EdgeId, Expansion, HyperedgeId, Hypergraph3, Multigraph, VertexId, VertexSet};
use crate::parity::{make_balanced, make_even, xjoin_completion};
use crate::quasigraph::Quasigraph;
use crate::skeletal::{find_tight_quasitree, search_tight_quasitree, default_cap, SearchStats, Variant};

const MAX_CUT_SCAN: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphAnalysis {
    /// Smallest nontrivial edge-cut; `None` when every edge-cut is trivial.
    pub essential_connectivity: Option<usize>,
    pub min_edge_weight: usize,
    pub degree_map: BTreeMap<VertexId, usize>,
}

impl GraphAnalysis {
    /// Essentially 5-edge-connected with minimum edge weight at least 6.
    pub fn accepts(&self) -> bool {
        self.essential_connectivity.is_none_or(|k| k >= 5) && self.min_edge_weight >= 6
    }
}

/// Number of other edges sharing an endpoint with `e`.
pub fn edge_weight(g: &Multigraph, e: EdgeId) -> usize {
    let ed = g.edge(e);
    g.edges().filter(|(id, f)| *id != e && (f.has(ed.ends[0]) || f.has(ed.ends[1]))).count()
}

pub fn analyze_graph(g: &Multigraph) -> Result<GraphAnalysis> {
    if g.num_edges() == 0 {
        return domain("graph has no edges");
    }
    if !g.is_connected() {
        return domain("graph is disconnected");
    }
    let n = g.num_vertices();
    if n > MAX_CUT_SCAN {
        return Err(Error::TooLarge(format!("{n} vertices for the cut scan")));
    }
    let verts: Vec<VertexId> = g.vertices().iter().copied().collect();
    let idx: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let ends: Vec<(usize, usize)> = g.edges().map(|(_, e)| (idx[&e.ends[0]], idx[&e.ends[1]])).collect();
    let side_connected = |mask: u32| -> bool {
        let start = mask.trailing_zeros();
        let mut reach = 1u32 << start;
        loop {
            let before = reach;
            for &(a, b) in &ends {
                let (ma, mb) = (1u32 << a, 1u32 << b);
                if mask & ma != 0 && mask & mb != 0 && reach & (ma | mb) != 0 {
                    reach |= ma | mb;
                }
            }
            if reach == before {
                return reach == mask;
            }
        }
    };
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut best: Option<usize> = None;
    for x in 1u32..(1u32 << (n - 1)) {
        let y = full & !x;
        if x.count_ones() < 2 || y.count_ones() < 2 || !side_connected(x) || !side_connected(y) {
            continue;
        }
        let cut = ends.iter().filter(|&&(a, b)| (x >> a & 1) != (x >> b & 1)).count();
        best = Some(best.map_or(cut, |k| k.min(cut)));
    }
    let min_edge_weight = g.edge_ids().map(|e| edge_weight(g, e)).min().unwrap();
    let degree_map = verts.iter().map(|v| (*v, g.degree(*v))).collect();
    Ok(GraphAnalysis { essential_connectivity: best, min_edge_weight, degree_map })
}

/// Vertex `i` of the line graph is edge `i` of `g`.
pub fn line_graph(g: &Multigraph) -> Multigraph {
    let mut l = Multigraph::new((0..g.num_edges() as u32).map(VertexId));
    let edges: Vec<_> = g.edges().collect();
    for (i, (_, a)) in edges.iter().enumerate() {
        for (j, (_, b)) in edges.iter().enumerate().skip(i + 1) {
            if a.has(b.ends[0]) || a.has(b.ends[1]) {
                l.add_edge(format!("{}~{}", a.name, b.name), VertexId(i as u32), VertexId(j as u32)).expect("distinct");
            }
        }
    }
    l
}

fn rejected<T>(stage: &'static str, reason: impl Into<String>) -> Result<T> {
    Err(Error::Rejected { stage, reason: reason.into() })
}

/// One step of the reduction loop, for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReductionStep {
    /// A degree-2 vertex with two neighbours replaced by one edge.
    Suppress { vertex: VertexId },
    /// Low-degree vertices hanging off a single neighbour removed.
    Pendant { hub: VertexId, removed: Vec<VertexId> },
    /// A degree-3 vertex on parallel edges removed, its neighbours rejoined.
    Rewire { vertex: VertexId },
}

/// The reduced graph with, for each of its edges, the edges of the input it stands for.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub graph: Multigraph,
    pub lift: Vec<Vec<EdgeId>>,
    pub steps: Vec<ReductionStep>,
    /// Input edges that were deleted or merged into a longer edge.
    pub touched: BTreeSet<EdgeId>,
}

impl Reduced {
    pub fn lift_set(&self, edges: &BTreeSet<EdgeId>) -> BTreeSet<EdgeId> {
        edges.iter().flat_map(|e| self.lift[e.index()].iter().copied()).collect()
    }

    /// Reduced edge standing for exactly the input edge `e`.
    pub fn image(&self, e: EdgeId) -> Option<EdgeId> {
        self.lift.iter().position(|l| l.as_slice() == [e]).map(|i| EdgeId(i as u32))
    }
}

struct Work {
    verts: VertexSet,
    edges: Vec<(String, [VertexId; 2], Vec<EdgeId>)>,
}

impl Work {
    fn at(&self, v: VertexId) -> Vec<usize> {
        (0..self.edges.len()).filter(|i| self.edges[*i].1.contains(&v)).collect()
    }

    fn other(&self, i: usize, v: VertexId) -> VertexId {
        let [a, b] = self.edges[i].1;
        if a == v {
            b
        } else {
            a
        }
    }

    fn fresh_name(&self, base: String) -> String {
        let mut name = base.clone();
        let mut k = 1;
        while self.edges.iter().any(|e| e.0 == name) {
            name = format!("{base}#{k}");
            k += 1;
        }
        name
    }

    fn remove(&mut self, mut idx: Vec<usize>, touched: &mut BTreeSet<EdgeId>) -> Vec<(String, [VertexId; 2], Vec<EdgeId>)> {
        idx.sort_unstable();
        let mut out = Vec::new();
        for i in idx.into_iter().rev() {
            let e = self.edges.remove(i);
            touched.extend(e.2.iter().copied());
            out.push(e);
        }
        out.reverse();
        out
    }

    fn join(&mut self, a: VertexId, b: VertexId, parts: &[&(String, [VertexId; 2], Vec<EdgeId>)]) {
        let name = self.fresh_name(parts.iter().map(|p| p.0.as_str()).collect::<Vec<_>>().join("+"));
        let lift = parts.iter().flat_map(|p| p.2.iter().copied()).collect();
        let ends = if a < b { [a, b] } else { [b, a] };
        self.edges.push((name, ends, lift));
    }

    fn suppress(&mut self, touched: &mut BTreeSet<EdgeId>) -> Option<ReductionStep> {
        let v = self.verts.iter().copied().find(|v| {
            let at = self.at(*v);
            at.len() == 2 && self.other(at[0], *v) != self.other(at[1], *v)
        })?;
        let at = self.at(v);
        let (w1, w2) = (self.other(at[0], v), self.other(at[1], v));
        let gone = self.remove(at, touched);
        self.verts.remove(&v);
        self.join(w1, w2, &[&gone[0], &gone[1]]);
        Some(ReductionStep::Suppress { vertex: v })
    }

    fn pendant(&mut self, touched: &mut BTreeSet<EdgeId>) -> Option<ReductionStep> {
        let single = |w: &Work, u: VertexId| -> Option<VertexId> {
            let at = w.at(u);
            if !(1..=2).contains(&at.len()) {
                return None;
            }
            let z = w.other(at[0], u);
            at.iter().all(|i| w.other(*i, u) == z).then_some(z)
        };
        let u = self.verts.iter().copied().find(|u| single(self, *u).is_some())?;
        let z = single(self, u).unwrap();
        let cluster: Vec<VertexId> = self.verts.iter().copied().filter(|x| single(self, *x) == Some(z)).collect();
        let idx: Vec<usize> = cluster.iter().flat_map(|x| self.at(*x)).collect::<BTreeSet<_>>().into_iter().collect();
        self.remove(idx, touched);
        for x in &cluster {
            self.verts.remove(x);
        }
        Some(ReductionStep::Pendant { hub: z, removed: cluster })
    }

    fn rewire(&mut self, touched: &mut BTreeSet<EdgeId>) -> Option<ReductionStep> {
        let v = self.verts.iter().copied().find(|v| {
            let at = self.at(*v);
            at.len() == 3 && self.verts.len() > 1 && {
                let nb: BTreeSet<VertexId> = at.iter().map(|i| self.other(*i, *v)).collect();
                nb.len() < 3
            }
        })?;
        let at = self.at(v);
        let mut by: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for i in &at {
            by.entry(self.other(*i, v)).or_default().push(*i);
        }
        self.verts.remove(&v);
        if by.len() == 1 {
            self.remove(at, touched);
        } else {
            let (&w, pair) = by.iter().find(|(_, l)| l.len() == 2).unwrap();
            let (&z, single) = by.iter().find(|(_, l)| l.len() == 1).unwrap();
            let (e1, f) = (pair[0], single[0]);
            let gone = self.remove(at.clone(), touched);
            let pos = |i: usize| at.iter().position(|x| *x == i).unwrap();
            let (g1, gf) = (gone[pos(e1)].clone(), gone[pos(f)].clone());
            self.join(w, z, &[&g1, &gf]);
        }
        Some(ReductionStep::Rewire { vertex: v })
    }
}

/// Applies the reductions until none applies: degree-2 suppression, then
/// pendant removal, then rewiring of degree-3 vertices on parallel edges.
pub fn reduce(g: &Multigraph) -> Reduced {
    let mut w = Work {
        verts: g.vertices().clone(),
        edges: g.edges().map(|(id, e)| (e.name.clone(), e.ends, vec![id])).collect(),
    };
    let mut steps = Vec::new();
    let mut touched = BTreeSet::new();
    loop {
        let step = w.suppress(&mut touched).or_else(|| w.pendant(&mut touched)).or_else(|| w.rewire(&mut touched));
        match step {
            Some(s) => steps.push(s),
            None => break,
        }
    }
    let mut graph = Multigraph::new(w.verts.iter().copied());
    let mut lift = Vec::new();
    for (name, [a, b], l) in w.edges {
        graph.add_edge(name, a, b).expect("reduced edges stay inside the vertex set");
        if l.len() > 1 {
            touched.extend(l.iter().copied());
        }
        lift.push(l);
    }
    Reduced { graph, lift, steps, touched }
}

/// What a hyperedge stands for in the reduced graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HyperSource {
    Edge(EdgeId),
    /// The three edges at a degree-3 vertex, keyed by the far endpoint.
    Hub { vertex: VertexId, spokes: BTreeMap<VertexId, EdgeId> },
    /// Two edges at a degree-3 vertex joining the two far endpoints.
    Through { vertex: VertexId, edges: [EdgeId; 2] },
}

#[derive(Clone, Debug)]
pub struct Built {
    pub reduced: Reduced,
    pub h: Hypergraph3,
    pub source: Vec<HyperSource>,
}

impl Built {
    /// Edges of the reduced graph behind a subgraph of `Gr(h)`.
    pub fn to_reduced(&self, gr: &Expansion, source: &[HyperSource], edges: &BTreeSet<EdgeId>) -> BTreeSet<EdgeId> {
        let mut out = BTreeSet::new();
        for eid in edges {
            let hid = gr.source[eid.index()];
            match &source[hid.index()] {
                HyperSource::Edge(e) => {
                    out.insert(*e);
                }
                HyperSource::Hub { spokes, .. } => {
                    let e = gr.graph.edge(*eid);
                    let far = if gr.is_original(e.ends[0]) { e.ends[0] } else { e.ends[1] };
                    out.insert(spokes[&far]);
                }
                HyperSource::Through { edges, .. } => out.extend(edges.iter().copied()),
            }
        }
        out
    }
}

/// The 3-hypergraph of a reduced graph: vertices of degree at least 4,
/// 2-hyperedges for edges among them, a 3-hyperedge per degree-3 vertex.
pub fn build_hypergraph(g: &Multigraph) -> Result<Built> {
    let a = analyze_graph(g)?;
    if !a.accepts() {
        return rejected(
            "build-hypergraph",
            format!(
                "need essential connectivity >= 5 and edge weight >= 6, got {} and {}",
                a.essential_connectivity.map_or("inf".to_string(), |k| k.to_string()),
                a.min_edge_weight
            ),
        );
    }
    let reduced = reduce(g);
    let r = &reduced.graph;
    let big: VertexSet = r.vertices().iter().copied().filter(|v| r.degree(*v) >= 4).collect();
    if r.num_vertices() > 1 {
        if let Some(v) = r.vertices().iter().find(|v| r.degree(**v) < 3) {
            return invariant(format!("vertex {v} has degree {} after reduction", r.degree(*v)));
        }
    }
    let mut h = Hypergraph3::new(big.iter().copied());
    let mut source = Vec::new();
    for (id, e) in r.edges() {
        if big.contains(&e.ends[0]) && big.contains(&e.ends[1]) {
            h.add_edge(e.name.clone(), &e.ends)?;
            source.push(HyperSource::Edge(id));
        }
    }
    for &w in r.vertices() {
        if r.degree(w) != 3 {
            continue;
        }
        let mut spokes = BTreeMap::new();
        for eid in r.incident(w) {
            let x = r.edge(eid).other(w);
            if !big.contains(&x) {
                return invariant(format!("degree-3 vertex {w} is adjacent to the low-degree vertex {x}"));
            }
            spokes.insert(x, eid);
        }
        if spokes.len() != 3 {
            return invariant(format!("degree-3 vertex {w} has parallel edges after reduction"));
        }
        let verts: Vec<VertexId> = spokes.keys().copied().collect();
        let name = format!("@{w}");
        if h.find(&name).is_some() {
            return Err(Error::Parse(format!("edge name {name:?} clashes with a degree-3 hub")));
        }
        h.add_edge(name, &verts)?;
        source.push(HyperSource::Hub { vertex: w, spokes });
    }
    Ok(Built { reduced, h, source })
}

/// A connected eulerian subgraph of `G` covering every vertex of degree at least 4.
#[derive(Clone, Debug)]
pub struct EulerianOutcome {
    pub edges: BTreeSet<EdgeId>,
    /// Vertices touched by the subgraph (the lone hub when it has no edges).
    pub span: VertexSet,
    pub built: Built,
    pub pi: Quasigraph,
    pub even: Quasigraph,
    pub stats: SearchStats,
}

pub fn spanning_eulerian(g: &Multigraph) -> Result<EulerianOutcome> {
    let built = build_hypergraph(g)?;
    let found = find_tight_quasitree(&built.h)?;
    let even = make_even(&found.pi)?;
    let comp = xjoin_completion(&even, &VertexSet::new())?;
    let reduced_edges = built.to_reduced(&comp.gr, &built.source, &comp.s_edges);
    let edges = built.reduced.lift_set(&reduced_edges);
    let sub = g.edge_subgraph(&edges);
    let mut span: VertexSet = sub.vertices().iter().copied().filter(|v| sub.degree(*v) > 0).collect();
    if span.is_empty() {
        span = built.h.vertices().clone();
    }
    let must: VertexSet = g.vertices().iter().copied().filter(|v| g.degree(*v) >= 4).collect();
    if !sub.odd_vertices().is_empty() || !sub.without_isolated().is_connected() || !must.is_subset(&span) || span.len() > 1 && edges.is_empty() {
        return invariant("completion does not lift to a connected eulerian subgraph covering the degree-4 vertices");
    }
    Ok(EulerianOutcome { edges, span, built, pi: found.pi, even, stats: found.stats })
}

/// Trail of `g` through exactly `edges`, starting at `start`, choosing the
/// smallest unused edge id at each vertex. Returns the vertex and edge sequences.
pub fn euler_trail(g: &Multigraph, edges: &BTreeSet<EdgeId>, start: VertexId) -> Option<(Vec<VertexId>, Vec<EdgeId>)> {
    let mut used = BTreeSet::new();
    let mut stack: Vec<(VertexId, Option<EdgeId>)> = vec![(start, None)];
    let mut out: Vec<(VertexId, Option<EdgeId>)> = Vec::new();
    while let Some(&(v, _)) = stack.last() {
        let next = edges.iter().copied().find(|e| !used.contains(e) && g.edge(*e).has(v));
        match next {
            Some(e) => {
                used.insert(e);
                stack.push((g.edge(e).other(v), Some(e)));
            }
            None => out.push(stack.pop().unwrap()),
        }
    }
    if used.len() != edges.len() {
        return None;
    }
    out.reverse();
    let verts = out.iter().map(|(v, _)| *v).collect();
    let es = out.iter().filter_map(|(_, e)| *e).collect();
    Some((verts, es))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrailKind {
    Closed,
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrailCertificate {
    pub edges: Vec<EdgeId>,
    pub kind: TrailKind,
    /// Closed: every edge meets the trail. Open: every edge meets an edge
    /// of the trail other than its first and last.
    pub dominating: bool,
}

/// Inserts every edge off the trail right after the first transition vertex
/// it contains. `transitions[i]` sits between `trail[i]` and `trail[i + 1]`.
fn expand(g: &Multigraph, trail: &[EdgeId], transitions: &[VertexId]) -> Option<Vec<EdgeId>> {
    let on: BTreeSet<EdgeId> = trail.iter().copied().collect();
    let mut extra: BTreeMap<usize, Vec<EdgeId>> = BTreeMap::new();
    for f in g.edge_ids().filter(|f| !on.contains(f)) {
        let i = transitions.iter().position(|x| g.edge(f).has(*x))?;
        extra.entry(i).or_default().push(f);
    }
    let mut out = Vec::new();
    for (i, e) in trail.iter().enumerate() {
        out.push(*e);
        if let Some(fs) = extra.get(&i) {
            out.extend(fs);
        }
    }
    Some(out)
}

fn shares(g: &Multigraph, a: EdgeId, b: EdgeId) -> bool {
    let (x, y) = (g.edge(a), g.edge(b));
    y.has(x.ends[0]) || y.has(x.ends[1])
}

/// Every edge appears once and cyclically consecutive edges share an endpoint.
pub fn is_line_hamilton_cycle(g: &Multigraph, seq: &[EdgeId]) -> bool {
    let all: BTreeSet<EdgeId> = seq.iter().copied().collect();
    seq.len() >= 3
        && all.len() == seq.len()
        && all == g.edge_ids().collect()
        && (0..seq.len()).all(|i| shares(g, seq[i], seq[(i + 1) % seq.len()]))
}

pub fn is_line_hamilton_path(g: &Multigraph, seq: &[EdgeId], from: EdgeId, to: EdgeId) -> bool {
    let all: BTreeSet<EdgeId> = seq.iter().copied().collect();
    seq.first() == Some(&from)
        && seq.last() == Some(&to)
        && all.len() == seq.len()
        && all == g.edge_ids().collect()
        && seq.windows(2).all(|w| shares(g, w[0], w[1]))
}

#[derive(Clone, Debug)]
pub struct HamiltonCycle {
    /// Edges of `G`, i.e. vertices of `L(G)`, in cyclic order.
    pub cycle: Vec<EdgeId>,
    pub trail: TrailCertificate,
    pub eulerian: EulerianOutcome,
}

fn check_accepts(g: &Multigraph, stage: &'static str) -> Result<GraphAnalysis> {
    let a = analyze_graph(g)?;
    if a.essential_connectivity.is_some_and(|k| k < 5) {
        return rejected(stage, format!("essential connectivity {} < 5", a.essential_connectivity.unwrap()));
    }
    if a.min_edge_weight < 6 {
        return rejected(stage, format!("minimum edge weight {} < 6", a.min_edge_weight));
    }
    Ok(a)
}

pub fn hamilton_cycle_in_line_graph(g: &Multigraph) -> Result<HamiltonCycle> {
    check_accepts(g, "hamilton")?;
    let eul = spanning_eulerian(g)?;
    if g.edges().any(|(_, e)| !eul.span.contains(&e.ends[0]) && !eul.span.contains(&e.ends[1])) {
        return invariant("eulerian subgraph is not dominating");
    }
    let (trail, cycle) = if eul.edges.is_empty() {
        (Vec::new(), g.edge_ids().collect())
    } else {
        let start = *eul.span.iter().next().unwrap();
        let (verts, es) = euler_trail(g, &eul.edges, start).ok_or_else(|| Error::Invariant("eulerian subgraph has no closed trail".into()))?;
        // transition after trail edge i is the vertex reached by it
        let transitions: Vec<VertexId> = verts[1..].to_vec();
        let cycle = expand(g, &es, &transitions).ok_or_else(|| Error::Invariant("an edge misses the closed trail".into()))?;
        (es, cycle)
    };
    if !is_line_hamilton_cycle(g, &cycle) {
        return invariant("expanded sequence is not a Hamilton cycle of the line graph");
    }
    Ok(HamiltonCycle { cycle, trail: TrailCertificate { edges: trail, kind: TrailKind::Closed, dominating: true }, eulerian: eul })
}

/// What happened to one end edge when building `H'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EndChange {
    /// Its 2-hyperedge was deleted.
    Removed,
    /// Its far end has degree 3; that hyperedge lost the anchor.
    Shrunk,
    /// The edge was deleted by the reductions, so `H` needs no change.
    Kept,
}

/// Which modification turned `H` into `H'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathCase {
    /// Both edges end at the same degree-3 vertex; its hyperedge is removed.
    SharedHub { vertex: VertexId },
    /// Both edges were merged into one reduced edge (named here), which is removed.
    SameEdge { edge: String },
    Separate { ends: [EndChange; 2] },
}

#[derive(Clone, Debug)]
pub struct HamiltonPath {
    pub path: Vec<EdgeId>,
    pub trail: TrailCertificate,
    pub case: PathCase,
    pub x: VertexSet,
    pub degree_sum_h: usize,
    pub degree_sum_h_prime: usize,
    pub stats: SearchStats,
}

/// Endpoint of `e` used as its anchor: the smallest one of degree at least 4.
pub fn anchor(g: &Multigraph, e: EdgeId) -> Option<VertexId> {
    g.edge(e).ends.iter().copied().find(|v| g.degree(*v) >= 4)
}

/// An end edge of `G` seen from the reduced graph: the reduced edge whose
/// lift contains it (if any) and the vertex where the inner trail starts.
struct End {
    reduced: Option<EdgeId>,
    anchor: VertexId,
}

fn locate_end(g: &Multigraph, red: &Reduced, e: EdgeId, other: EdgeId) -> Result<End> {
    let r = &red.graph;
    let big = |v: &VertexId| r.vertices().contains(v) && r.degree(*v) >= 4;
    let unsupported = || Error::Unsupported(format!("no endpoint of {} survives the reductions with degree at least 4", g.edge(e).name));
    if let Some(img) = red.image(e) {
        let anchor = anchor(r, img).ok_or_else(unsupported)?;
        return Ok(End { reduced: Some(img), anchor });
    }
    let holder = red.lift.iter().position(|l| l.contains(&e)).map(|i| EdgeId(i as u32));
    match holder {
        Some(rid) => {
            let re = r.edge(rid);
            let anchor = g.edge(e).ends.iter().copied().find(|v| re.has(*v) && big(v)).ok_or_else(unsupported)?;
            // the rest of the merged path is left out and must stay dominated
            let stray = red.lift[rid.index()].iter().any(|f| *f != e && *f != other && !re.ends.iter().any(|x| g.edge(*f).has(*x)));
            if stray {
                return Err(Error::Unsupported(format!("{} lies inside a long merged edge", g.edge(e).name)));
            }
            Ok(End { reduced: Some(rid), anchor })
        }
        None => {
            let anchor = g.edge(e).ends.iter().copied().find(big).ok_or_else(unsupported)?;
            Ok(End { reduced: None, anchor })
        }
    }
}

pub fn hamilton_path_in_line_graph(g: &Multigraph, e1: EdgeId, e2: EdgeId) -> Result<HamiltonPath> {
    if e1.index() >= g.num_edges() || e2.index() >= g.num_edges() {
        return domain("unknown edge");
    }
    if e1 == e2 {
        return domain("path endpoints must be distinct edges");
    }
    check_accepts(g, "hamilton-path")?;
    let built = build_hypergraph(g)?;
    let red = &built.reduced;
    let r = &red.graph;
    let (end1, end2) = (locate_end(g, red, e1, e2)?, locate_end(g, red, e2, e1)?);
    let (u1, u2) = (end1.anchor, end2.anchor);
    let x: VertexSet = if u1 != u2 { [u1, u2].into() } else { VertexSet::new() };

    let h = &built.h;
    let report = edge_connectivity_report(h);
    if !report.satisfies_theorem() {
        return rejected("hamilton-path", "the hypergraph of the graph fails the connectivity hypotheses");
    }
    let hub_of = |w: VertexId| {
        built.source.iter().position(|s| matches!(s, HyperSource::Hub { vertex, .. } if *vertex == w)).map(|i| HyperedgeId(i as u32))
    };
    let edge_of = |e: EdgeId| {
        built
            .source
            .iter()
            .position(|s| *s == HyperSource::Edge(e))
            .map(|i| HyperedgeId(i as u32))
            .ok_or_else(|| Error::Invariant(format!("reduced edge {} has no hyperedge", r.edge(e).name)))
    };
    let far = |end: &End| end.reduced.map(|re| r.edge(re).other(end.anchor));
    let mut drop: BTreeSet<HyperedgeId> = BTreeSet::new();
    let mut shrink: Vec<(HyperedgeId, VertexId)> = Vec::new();
    let case = match (end1.reduced, end2.reduced, far(&end1), far(&end2)) {
        (Some(a), Some(b), _, _) if a == b => {
            drop.insert(edge_of(a)?);
            PathCase::SameEdge { edge: r.edge(a).name.clone() }
        }
        (Some(_), Some(_), Some(w1), Some(w2)) if w1 == w2 && r.degree(w1) == 3 => {
            drop.insert(hub_of(w1).unwrap());
            PathCase::SharedHub { vertex: w1 }
        }
        _ => {
            let mut ends = [EndChange::Kept; 2];
            for (i, end) in [&end1, &end2].into_iter().enumerate() {
                let Some(re) = end.reduced else { continue };
                let w = r.edge(re).other(end.anchor);
                if r.degree(w) == 3 {
                    shrink.push((hub_of(w).unwrap(), end.anchor));
                    ends[i] = EndChange::Shrunk;
                } else {
                    drop.insert(edge_of(re)?);
                    ends[i] = EndChange::Removed;
                }
            }
            PathCase::Separate { ends }
        }
    };
    let mut hp = Hypergraph3::new(h.vertices().iter().copied());
    let mut source = Vec::new();
    for (id, e) in h.edges() {
        if drop.contains(&id) {
            continue;
        }
        match shrink.iter().find(|(s, _)| *s == id) {
            Some((_, u)) => {
                let HyperSource::Hub { vertex, spokes } = &built.source[id.index()] else { unreachable!() };
                let rest: Vec<VertexId> = e.verts.iter().copied().filter(|v| v != u).collect();
                hp.push(e.name.clone(), &rest, Some(id))?;
                source.push(HyperSource::Through { vertex: *vertex, edges: [spokes[&rest[0]], spokes[&rest[1]]] });
            }
            None => {
                hp.push(e.name.clone(), &e.verts, Some(id))?;
                source.push(built.source[id.index()].clone());
            }
        }
    }
    let (s_h, s_hp) = (h.degree_sum(), hp.degree_sum());
    if s_hp + 4 < s_h {
        return invariant(format!("degree sum dropped from {s_h} to {s_hp}"));
    }

    let found = search_tight_quasitree(&hp, default_cap(&hp), Variant::Adjusted, Some(h))?;
    let balanced = make_balanced(&found.pi, &x)?;
    let comp = xjoin_completion(&balanced, &x)?;
    let j_red = built.to_reduced(&comp.gr, &source, &comp.s_edges);
    if [end1.reduced, end2.reduced].iter().flatten().any(|re| j_red.contains(re)) {
        return invariant("join uses one of the end edges");
    }
    let j = red.lift_set(&j_red);
    let sub = g.edge_subgraph(&j);
    if sub.odd_vertices() != x || !sub.without_isolated().is_connected() {
        return invariant("lifted join is not a connected join with the anchor parity");
    }
    let (mut verts, mut trail) = (vec![u1], Vec::new());
    if !j.is_empty() {
        let (vs, es) = euler_trail(g, &j, u1).ok_or_else(|| Error::Invariant("join has no trail from the first anchor".into()))?;
        verts = vs;
        trail = es;
    }
    if *verts.last().unwrap() != u2 {
        return invariant("join trail ends away from the second anchor");
    }
    let mut full = vec![e1];
    full.extend(&trail);
    full.push(e2);
    // transitions: u1 after e1, then the vertices reached along the join trail
    let transitions: Vec<VertexId> = verts.clone();
    let inner: BTreeSet<EdgeId> = trail.iter().copied().collect();
    let dominating = g.edge_ids().all(|f| inner.iter().any(|t| shares(g, *t, f)));
    let path = expand(g, &full, &transitions).ok_or_else(|| Error::Invariant("an edge misses the trail".into()))?;
    if !is_line_hamilton_path(g, &path, e1, e2) {
        return invariant("expanded sequence is not a Hamilton path of the line graph");
    }
    Ok(HamiltonPath {
        path,
        trail: TrailCertificate { edges: full, kind: TrailKind::Open, dominating },
        case,
        x,
        degree_sum_h: s_h,
        degree_sum_h_prime: s_hp,
        stats: found.stats,
    })
}

/// DOT drawing of `g` with `highlight` in bold.
pub fn graph_dot(g: &Multigraph, highlight: &BTreeSet<EdgeId>) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for (id, e) in g.edges() {
        let style = if highlight.contains(&id) { "bold" } else { "dotted" };
        let _ = writeln!(out, "  \"{}\" -- \"{}\" [label=\"{}\", style={style}];", e.ends[0], e.ends[1], e.name);
    }
    out.push_str("}\n");
    out
}
