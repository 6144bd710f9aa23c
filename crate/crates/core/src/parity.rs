//! Degree parity of quasitrees, even quasitrees, and X-joins.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{domain, Result};
use crate::hypergraph::{expand_to_graph, EdgeId, Expansion, HyperedgeId, Multigraph, VertexId, VertexSet};
use crate::narrow_wide::is_tight;
use crate::quasigraph::{pair, Quasigraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParityBit(u8);

impl ParityBit {
    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// `Φ_π(X)`: parity of the `π*`-degree sum over `X`.
pub fn phi(pi: &Quasigraph, x: &VertexSet) -> Result<ParityBit> {
    pi.host().check_subset(x)?;
    Ok(ParityBit(phi_with(pi, x, &VertexSet::new())))
}

/// `Φ_π(X) + |X ∩ T|` modulo 2.
fn phi_with(pi: &Quasigraph, x: &VertexSet, t: &VertexSet) -> u8 {
    let mut s = x.intersection(t).count();
    for id in pi.used() {
        let [a, b] = pi.rep(id).unwrap();
        s += usize::from(x.contains(&a)) + usize::from(x.contains(&b));
    }
    (s % 2) as u8
}

/// Every component of the complement lying inside `X` has `Φ = 0`.
pub fn is_even_on(pi: &Quasigraph, x: &VertexSet) -> Result<bool> {
    pi.host().check_subset(x)?;
    Ok(even_for(pi, x, &VertexSet::new()))
}

fn even_for(pi: &Quasigraph, x: &VertexSet, t: &VertexSet) -> bool {
    pi.complement().components().iter().filter(|k| k.is_subset(x)).all(|k| phi_with(pi, k, t) == 0)
}

/// Every component `K` of the complement has `Φ(K) + |K ∩ T|` even, so the
/// odd vertices of `π*` inside `K` combined with `T ∩ K` can be paired up.
pub fn is_balanced_for(pi: &Quasigraph, t: &VertexSet) -> Result<bool> {
    pi.host().check_subset(t)?;
    Ok(even_for(pi, pi.host().vertices(), t))
}

/// Re-represents used hyperedges so the quasitree becomes even.
pub fn make_even(pi: &Quasigraph) -> Result<Quasigraph> {
    make_balanced(pi, &VertexSet::new())
}

/// [`make_even`] with the parity of every complement component shifted by
/// its intersection with `t`.
pub fn make_balanced(pi: &Quasigraph, t: &VertexSet) -> Result<Quasigraph> {
    pi.host().check_subset(t)?;
    if !pi.is_quasitree() {
        return domain("make_even needs a quasitree");
    }
    if !is_tight(pi)? {
        return domain("make_even needs a quasitree with tight complement");
    }
    if t.len() % 2 == 1 {
        return domain("target set has odd size");
    }
    switch_balance(pi, t).or_else(|_| exhaustive_balance(pi, t))
}

/// Only the recursive switching procedure, without the exhaustive fallback.
pub fn switch_balance(pi: &Quasigraph, t: &VertexSet) -> Result<Quasigraph> {
    let mut rho = pi.clone();
    let all = pi.host().vertices().clone();
    extend(&mut rho, &all, t)?;
    if rho.is_quasitree() && even_for(&rho, &all, t) {
        Ok(rho)
    } else {
        domain("switching did not balance the quasitree")
    }
}

/// The recursive switching procedure on a split of `π[X]`.
fn extend(pi: &mut Quasigraph, x: &VertexSet, t: &VertexSet) -> Result<()> {
    if x.len() <= 1 {
        return Ok(());
    }
    let q = pi.induced(x)?;
    if q.complement().is_connected() {
        return Ok(());
    }
    let Some((x1, x2, bridge)) = separating_split(&q)? else {
        return domain("no split separating the complement");
    };
    if phi_with(pi, &x1, t) == 1 {
        let e = q.host().edge(bridge).origin.expect("section provenance");
        let [a, b] = pi.rep(e).unwrap();
        let Some(&y) = pi.host().verts(e).iter().find(|v| **v != a && **v != b) else {
            return domain("bridge of a split is a 2-hyperedge");
        };
        let side_a = reach_without(pi, e, a);
        let new = if side_a.contains(&y) { pair(b, y) } else { pair(a, y) };
        pi.set(e, Some(new))?;
    }
    extend(pi, &x1, t)?;
    extend(pi, &x2, t)
}

/// A split `X1, X2` of the host of `q` with both parts tight, a used
/// hyperedge valued in `X1` meeting `X2`, and no unused hyperedge across.
fn separating_split(q: &Quasigraph) -> Result<Option<(VertexSet, VertexSet, HyperedgeId)>> {
    let verts: Vec<VertexId> = q.host().vertices().iter().copied().collect();
    let n = verts.len();
    for mask in 1u64..(1u64 << n) - 1 {
        let x1: VertexSet = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
        let x2: VertexSet = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| verts[i]).collect();
        let across = |id| q.host().crosses(id, &x1);
        if q.host().edge_ids().any(|id| q.rep(id).is_none() && across(id)) {
            continue;
        }
        let bridge = q.used().find(|id| {
            let [a, b] = q.rep(*id).unwrap();
            x1.contains(&a) && x1.contains(&b) && across(*id)
        });
        let Some(bridge) = bridge else { continue };
        if is_tight(&q.induced(&x1)?)? && is_tight(&q.induced(&x2)?)? {
            return Ok(Some((x1, x2, bridge)));
        }
    }
    Ok(None)
}

/// Vertices reachable from `start` in `π*` without the edge of `skip`.
fn reach_without(pi: &Quasigraph, skip: HyperedgeId, start: VertexId) -> VertexSet {
    let mut seen = VertexSet::from([start]);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for id in pi.used().filter(|id| *id != skip) {
            let [a, b] = pi.rep(id).unwrap();
            let w = if a == u { b } else if b == u { a } else { continue };
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen
}

/// Tries every representation of the used 3-hyperedges.
fn exhaustive_balance(pi: &Quasigraph, t: &VertexSet) -> Result<Quasigraph> {
    let threes: Vec<HyperedgeId> = pi.used().filter(|id| pi.host().edge(*id).size() == 3).collect();
    if threes.len() > 12 {
        return domain("no balanced re-representation found by switching");
    }
    let mut cur = pi.clone();
    let all = pi.host().vertices().clone();
    for code in 0..3usize.pow(threes.len() as u32) {
        let mut c = code;
        for id in &threes {
            let v = pi.host().verts(*id);
            let r = match c % 3 {
                0 => [v[0], v[1]],
                1 => [v[0], v[2]],
                _ => [v[1], v[2]],
            };
            cur.set(*id, Some(r))?;
            c /= 3;
        }
        if cur.is_quasitree() && even_for(&cur, &all, t) {
            return Ok(cur);
        }
    }
    domain("no re-representation of the used hyperedges is balanced")
}

/// Subgraph of the tree `T` whose odd-degree vertices are exactly `X`.
pub fn tree_xjoin(t: &Multigraph, x: &VertexSet) -> Result<Multigraph> {
    Ok(t.edge_subgraph(&xjoin_edges(t, x)?))
}

/// Edge ids of `t` forming the X-join returned by [`tree_xjoin`].
pub fn xjoin_edges(t: &Multigraph, x: &VertexSet) -> Result<BTreeSet<EdgeId>> {
    if !t.is_tree() {
        return domain("X-join needs a tree");
    }
    if x.len() % 2 == 1 {
        return domain("X has odd size");
    }
    if !x.is_subset(t.vertices()) {
        return domain("X is not inside the tree");
    }
    let mut keep = BTreeSet::new();
    let edges: BTreeSet<EdgeId> = t.edge_ids().collect();
    join_rec(t, t.vertices().clone(), edges, x.clone(), &mut keep);
    Ok(keep)
}

fn join_rec(t: &Multigraph, verts: VertexSet, edges: BTreeSet<EdgeId>, x: VertexSet, keep: &mut BTreeSet<EdgeId>) {
    let Some(&e) = edges.iter().next() else { return };
    let [v1, v2] = t.edge(e).ends;
    let mut rest = edges.clone();
    rest.remove(&e);
    // side of v1 in T - e
    let mut side = VertexSet::from([v1]);
    let mut stack = vec![v1];
    while let Some(u) = stack.pop() {
        for f in &rest {
            let ed = t.edge(*f);
            if ed.has(u) && side.insert(ed.other(u)) {
                stack.push(ed.other(u));
            }
        }
    }
    let other: VertexSet = verts.difference(&side).copied().collect();
    let (e1, e2): (BTreeSet<EdgeId>, BTreeSet<EdgeId>) = rest.iter().partition(|f| side.contains(&t.edge(**f).ends[0]));
    let mut x1: VertexSet = x.intersection(&side).copied().collect();
    let mut x2: VertexSet = x.intersection(&other).copied().collect();
    let odd = x1.len() % 2 == 1;
    if odd {
        toggle(&mut x1, v1);
        toggle(&mut x2, v2);
        keep.insert(e);
    }
    join_rec(t, side, e1, x1, keep);
    join_rec(t, other, e2, x2, keep);
}

fn toggle(s: &mut VertexSet, v: VertexId) {
    if !s.remove(&v) {
        s.insert(v);
    }
}

/// A completion of a quasitree to a connected subgraph of `Gr(H)`.
#[derive(Clone, Debug)]
pub struct Completion {
    pub tau: Quasigraph,
    /// `π* + τ*` as a subgraph of `gr.graph` (same vertex set).
    pub s: Multigraph,
    pub s_edges: BTreeSet<EdgeId>,
    /// Edges of `s` that come from `π`.
    pub from_pi: BTreeSet<EdgeId>,
    pub gr: Expansion,
}

/// Completes `π*` inside each complement component with an X-join of a
/// spanning tree of that component's graph, giving a connected subgraph of
/// `Gr(H)` odd exactly on `X`.
pub fn xjoin_completion(pi: &Quasigraph, x: &VertexSet) -> Result<Completion> {
    let h = pi.host();
    h.check_subset(x)?;
    if !pi.is_quasitree() {
        return domain("completion needs a quasitree");
    }
    let comp = pi.complement();
    let odd = pi.underlying_graph().odd_vertices();
    let cg = expand_to_graph(&comp);
    let mut tau = Quasigraph::empty(h.clone());
    for k in comp.components() {
        let target: VertexSet = odd.intersection(&k).copied().collect::<VertexSet>().symmetric_difference(&x.intersection(&k).copied().collect()).copied().collect();
        if target.len() % 2 == 1 {
            return domain(format!("component {k:?} has odd parity; make the quasitree balanced first"));
        }
        let tree = bfs_tree(&cg, &k);
        let join = xjoin_edges(&tree.graph, &target)?;
        // lift: 2-hyperedges directly, 3-hyperedges via the two edges at v_e
        let mut at_aux: BTreeMap<HyperedgeId, Vec<VertexId>> = BTreeMap::new();
        for jid in join {
            let e = tree.graph.edge(jid);
            let hid = cg.source[tree.origin[jid.index()].index()];
            let hid = comp.edge(hid).origin.expect("complement provenance");
            if h.edge(hid).size() == 2 {
                tau.set(hid, Some(e.ends))?;
            } else {
                let ve = cg.aux_of[&comp_id(&comp, hid)];
                at_aux.entry(hid).or_default().push(e.other(ve));
            }
        }
        for (hid, ends) in at_aux {
            if ends.len() != 2 {
                return crate::error::invariant(format!("auxiliary vertex of {} has join degree {}", h.name(hid), ends.len()));
            }
            tau.set(hid, Some(pair(ends[0], ends[1])))?;
        }
    }
    let gr = expand_to_graph(h);
    let from_pi = lift_to_gr(pi, &gr);
    let from_tau = lift_to_gr(&tau, &gr);
    let s_edges: BTreeSet<EdgeId> = from_pi.union(&from_tau).copied().collect();
    let s = gr.graph.edge_subgraph(&s_edges);
    Ok(Completion { tau, s, s_edges, from_pi, gr })
}

fn comp_id(comp: &crate::Hypergraph3, hid: HyperedgeId) -> HyperedgeId {
    comp.edges().find(|(_, e)| e.origin == Some(hid)).map(|(id, _)| id).expect("unused hyperedge")
}

/// Edges of `Gr(H)` realising `π*`: the edge itself for a 2-hyperedge, the
/// two edges through `v_e` for a 3-hyperedge.
pub fn lift_to_gr(pi: &Quasigraph, gr: &Expansion) -> BTreeSet<EdgeId> {
    let mut out = BTreeSet::new();
    for id in pi.used() {
        let [a, b] = pi.rep(id).unwrap();
        for (eid, e) in gr.graph.edges() {
            if gr.source[eid.index()] != id {
                continue;
            }
            let hit = if pi.host().edge(id).size() == 2 { true } else { e.has(a) || e.has(b) };
            if hit {
                out.insert(eid);
            }
        }
    }
    out
}

struct Tree {
    graph: Multigraph,
    /// Edge of the expanded complement behind each tree edge.
    origin: Vec<EdgeId>,
}

/// Breadth-first spanning tree of the component of `g` containing the class
/// `k` of original vertices, rooted at its smallest vertex.
fn bfs_tree(g: &Expansion, k: &VertexSet) -> Tree {
    let root = *k.iter().next().unwrap();
    let mut seen = VertexSet::from([root]);
    let mut queue = std::collections::VecDeque::from([root]);
    let mut picked = Vec::new();
    while let Some(u) = queue.pop_front() {
        for eid in g.graph.incident(u) {
            let w = g.graph.edge(eid).other(u);
            if seen.insert(w) {
                picked.push((eid, u, w));
                queue.push_back(w);
            }
        }
    }
    let mut graph = Multigraph::new(seen.iter().copied());
    let mut origin = Vec::new();
    for (eid, u, w) in picked {
        graph.add_edge(g.graph.edge(eid).name.clone(), u, w).expect("tree edge");
        origin.push(eid);
    }
    Tree { graph, origin }
}

/// DOT drawing of a completion: `π*` solid, `τ*` dashed, auxiliary vertices small.
pub fn completion_dot(c: &Completion) -> String {
    let mut out = String::from("graph completion {\n");
    for v in c.gr.graph.vertices() {
        if c.gr.is_original(*v) {
            let _ = writeln!(out, "  \"{v}\";");
        } else {
            let _ = writeln!(out, "  \"{v}\" [shape=point];");
        }
    }
    for eid in &c.s_edges {
        let e = c.gr.graph.edge(*eid);
        let style = if c.from_pi.contains(eid) { "solid" } else { "dashed" };
        let _ = writeln!(out, "  \"{}\" -- \"{}\" [label=\"{}\", style={style}];", e.ends[0], e.ends[1], e.name);
    }
    out.push_str("}\n");
    out
}
