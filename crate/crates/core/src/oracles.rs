//! Brute-force ground truth and instance generators.
//!
//! Nothing here calls the finest-partition, search, parity or pipeline code;
//! every check is a direct reading of a definition.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::hypergraph::{edge_connectivity_report, Hypergraph3, Multigraph, VertexId, VertexSet};
use crate::partition::Partition;
use crate::quasigraph::{Quasigraph, Rep};

pub const MAX_ORACLE_VERTICES: usize = 8;
pub const MAX_ORACLE_EDGES: usize = 12;
pub const MAX_HAMILTON_VERTICES: usize = 12;

/// Every partition of `ground`, by restricted growth strings.
pub fn all_partitions(ground: &VertexSet) -> Vec<Partition> {
    let verts: Vec<VertexId> = ground.iter().copied().collect();
    let mut out = Vec::new();
    let mut rgs = vec![0usize; verts.len()];
    grow(&verts, &mut rgs, 0, 0, &mut out);
    out
}

fn grow(verts: &[VertexId], rgs: &mut Vec<usize>, i: usize, used: usize, out: &mut Vec<Partition>) {
    if i == verts.len() {
        let mut classes = vec![VertexSet::new(); used];
        for (k, v) in verts.iter().enumerate() {
            classes[rgs[k]].insert(*v);
        }
        out.push(Partition::from_classes(classes).expect("restricted growth gives a partition"));
        return;
    }
    for c in 0..=used {
        rgs[i] = c;
        grow(verts, rgs, i + 1, used.max(c + 1), out);
    }
}

/// Direct narrowness: each hyperedge meeting two classes has a value meeting two classes.
pub fn narrow_by_definition(p: &Partition, pi: &Quasigraph) -> bool {
    pi.host().edges().all(|(id, e)| {
        let classes: BTreeSet<_> = e.verts.iter().map(|v| p.label(*v)).collect();
        if classes.len() < 2 {
            return true;
        }
        match pi.rep(id) {
            None => false,
            Some([a, b]) => p.label(a) != p.label(b),
        }
    })
}

/// Direct wideness: every value lies inside one class.
pub fn wide_by_definition(p: &Partition, pi: &Quasigraph) -> bool {
    pi.used().all(|id| {
        let [a, b] = pi.rep(id).unwrap();
        p.label(a) == p.label(b)
    })
}

/// Tightness as the absence of a nontrivial narrow partition, by enumeration.
pub fn tight_by_enumeration(pi: &Quasigraph) -> bool {
    all_partitions(pi.host().vertices()).iter().all(|p| p.num_classes() < 2 || !narrow_by_definition(p, pi))
}

/// Tightness by the recursive definition: the complement is connected, or
/// some split `X1, X2` has a used hyperedge with value in `X1` meeting `X2`
/// and both induced quasigraphs are tight.
pub fn tight_by_definition(pi: &Quasigraph) -> Result<bool> {
    let verts: Vec<VertexId> = pi.host().vertices().iter().copied().collect();
    let n = verts.len();
    if n > 16 {
        return Err(Error::TooLarge(format!("{n} vertices")));
    }
    if spanning_connected(&verts, pi, |id| pi.rep(id).is_none()) {
        return Ok(true);
    }
    for mask in 1u32..(1u32 << n) - 1 {
        let x1: VertexSet = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
        let x2: VertexSet = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| verts[i]).collect();
        let bridged = pi.used().any(|id| {
            let [a, b] = pi.rep(id).unwrap();
            x1.contains(&a) && x1.contains(&b) && pi.host().verts(id).iter().any(|v| x2.contains(v))
        });
        if bridged && tight_by_definition(&pi.induced(&x1)?)? && tight_by_definition(&pi.induced(&x2)?)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn spanning_connected<F: Fn(crate::HyperedgeId) -> bool>(verts: &[VertexId], pi: &Quasigraph, keep: F) -> bool {
    let Some(&start) = verts.first() else { return true };
    let mut reached = BTreeSet::from([start]);
    loop {
        let before = reached.len();
        for (id, e) in pi.host().edges() {
            if keep(id) && e.verts.iter().any(|v| reached.contains(v)) {
                reached.extend(e.verts.iter().copied());
            }
        }
        if reached.len() == before {
            return reached.len() == verts.len();
        }
    }
}

/// Simple tree test by counting and reachability.
fn is_spanning_tree(pi: &Quasigraph) -> bool {
    let verts: Vec<VertexId> = pi.host().vertices().iter().copied().collect();
    if pi.num_used() + 1 != verts.len() {
        return false;
    }
    let Some(&start) = verts.first() else { return false };
    let mut reached = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for id in pi.used() {
            let [a, b] = pi.rep(id).unwrap();
            let w = if a == u { b } else if b == u { a } else { continue };
            if reached.insert(w) {
                stack.push(w);
            }
        }
    }
    reached.len() == verts.len()
}

fn guard(h: &Hypergraph3) -> Result<()> {
    if h.num_vertices() > MAX_ORACLE_VERTICES || h.num_edges() > MAX_ORACLE_EDGES {
        return Err(Error::TooLarge(format!(
            "oracle handles at most {MAX_ORACLE_VERTICES} vertices and {MAX_ORACLE_EDGES} hyperedges"
        )));
    }
    Ok(())
}

/// Visits every quasitree of `h` (exactly `|V| − 1` used hyperedges) until
/// `visit` returns `false`.
fn each_quasitree<F: FnMut(&Quasigraph) -> bool>(h: &Arc<Hypergraph3>, mut visit: F) {
    let m = h.num_edges();
    let k = h.num_vertices().saturating_sub(1);
    let options: Vec<Vec<[VertexId; 2]>> = h
        .edges()
        .map(|(_, e)| {
            let mut o = Vec::new();
            for i in 0..e.size() {
                for j in i + 1..e.size() {
                    o.push([e.verts[i], e.verts[j]]);
                }
            }
            o
        })
        .collect();
    let mut rep: Vec<Rep> = vec![None; m];
    fn rec<F: FnMut(&Quasigraph) -> bool>(
        h: &Arc<Hypergraph3>,
        options: &[Vec<[VertexId; 2]>],
        rep: &mut Vec<Rep>,
        i: usize,
        left: usize,
        visit: &mut F,
    ) -> bool {
        if left == 0 {
            let q = Quasigraph::from_reps(h.clone(), rep.clone()).expect("values inside hyperedges");
            return !is_spanning_tree(&q) || visit(&q);
        }
        if options.len() - i < left {
            return true;
        }
        for r in &options[i] {
            rep[i] = Some(*r);
            if !rec(h, options, rep, i + 1, left - 1, visit) {
                rep[i] = None;
                return false;
            }
        }
        rep[i] = None;
        rec(h, options, rep, i + 1, left, visit)
    }
    if h.num_vertices() == 0 {
        return;
    }
    rec(h, &options, &mut rep, 0, k, &mut visit);
}

/// All quasitrees with tight complement, by exhaustive enumeration.
pub fn brute_force_tight_quasitrees(h: &Hypergraph3) -> Result<Vec<Quasigraph>> {
    guard(h)?;
    let host = Arc::new(h.clone());
    let mut out = Vec::new();
    each_quasitree(&host, |q| {
        if tight_by_enumeration(q) {
            out.push(q.clone());
        }
        true
    });
    Ok(out)
}

/// First quasitree with tight complement in enumeration order, if any.
pub fn brute_force_any_tight_quasitree(h: &Hypergraph3) -> Result<Option<Quasigraph>> {
    guard(h)?;
    let host = Arc::new(h.clone());
    let mut found = None;
    each_quasitree(&host, |q| {
        if tight_by_enumeration(q) {
            found = Some(q.clone());
            return false;
        }
        true
    });
    Ok(found)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HamiltonMode {
    Cycle,
    Path(VertexId, VertexId),
}

/// Hamilton cycle or `u`–`v` path by backtracking; vertices in visiting order.
pub fn brute_force_hamilton(l: &Multigraph, mode: HamiltonMode) -> Result<Option<Vec<VertexId>>> {
    let n = l.num_vertices();
    if n > MAX_HAMILTON_VERTICES {
        return Err(Error::TooLarge(format!("{n} vertices exceeds {MAX_HAMILTON_VERTICES}")));
    }
    let adj: BTreeMap<VertexId, VertexSet> = l.vertices().iter().map(|v| (*v, l.neighbors(*v))).collect();
    let (start, end) = match mode {
        HamiltonMode::Cycle => {
            if n < 3 {
                return Ok(None);
            }
            (*l.vertices().iter().next().unwrap(), None)
        }
        HamiltonMode::Path(u, v) => {
            if !l.vertices().contains(&u) || !l.vertices().contains(&v) {
                return domain("path endpoints are not vertices");
            }
            if u == v {
                return if n == 1 { Ok(Some(vec![u])) } else { domain("path endpoints coincide") };
            }
            (u, Some(v))
        }
    };
    let mut path = vec![start];
    let mut seen = BTreeSet::from([start]);
    fn rec(
        adj: &BTreeMap<VertexId, VertexSet>,
        n: usize,
        start: VertexId,
        end: Option<VertexId>,
        path: &mut Vec<VertexId>,
        seen: &mut BTreeSet<VertexId>,
    ) -> bool {
        let cur = *path.last().unwrap();
        if path.len() == n {
            return match end {
                None => adj[&cur].contains(&start),
                Some(e) => cur == e,
            };
        }
        for &w in &adj[&cur] {
            if seen.contains(&w) || (Some(w) == end && path.len() + 1 < n) {
                continue;
            }
            path.push(w);
            seen.insert(w);
            if rec(adj, n, start, end, path, seen) {
                return true;
            }
            seen.remove(&w);
            path.pop();
        }
        false
    }
    Ok(rec(&adj, n, start, end, &mut path, &mut seen).then_some(path))
}

/// Vertex connectivity by trying every vertex subset as a separator
/// (complete graphs on `n` vertices get `n − 1`).
pub fn brute_force_vertex_connectivity(l: &Multigraph) -> Result<usize> {
    let verts: Vec<VertexId> = l.vertices().iter().copied().collect();
    let n = verts.len();
    if n > 16 {
        return Err(Error::TooLarge(format!("{n} vertices")));
    }
    let mut best = n.saturating_sub(1);
    for mask in 0u32..(1u32 << n) {
        let k = mask.count_ones() as usize;
        if k >= best || n - k < 2 {
            continue;
        }
        let rest: Vec<VertexId> = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| verts[i]).collect();
        let removed: VertexSet = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
        let mut reached = BTreeSet::from([rest[0]]);
        let mut stack = vec![rest[0]];
        while let Some(u) = stack.pop() {
            for w in l.neighbors(u) {
                if !removed.contains(&w) && reached.insert(w) {
                    stack.push(w);
                }
            }
        }
        if reached.len() < rest.len() {
            best = k;
        }
    }
    Ok(best)
}

/// Some connected even subgraph of `g` covering `must`, by subset enumeration.
pub fn brute_force_spanning_eulerian(g: &Multigraph, must: &VertexSet) -> Result<Option<Multigraph>> {
    let m = g.num_edges();
    if m > 20 {
        return Err(Error::TooLarge(format!("{m} edges")));
    }
    let ids: Vec<_> = g.edge_ids().collect();
    for mask in 0u32..(1u32 << m) {
        let keep: BTreeSet<_> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| ids[i]).collect();
        let s = g.edge_subgraph(&keep);
        if !must.iter().all(|v| s.degree(*v) > 0 || (must.len() == 1 && keep.is_empty())) {
            continue;
        }
        if !s.odd_vertices().is_empty() {
            continue;
        }
        let busy = s.without_isolated();
        if busy.num_vertices() <= 1 || busy.is_connected() {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Lexicographically least sorted edge list over all vertex relabelings.
pub fn canonical_form(h: &Hypergraph3) -> Vec<Vec<u32>> {
    let verts: Vec<VertexId> = h.vertices().iter().copied().collect();
    let n = verts.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let index: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut best: Option<Vec<Vec<u32>>> = None;
    loop {
        let mut edges: Vec<Vec<u32>> = h
            .edges()
            .map(|(_, e)| {
                let mut x: Vec<u32> = e.verts.iter().map(|v| perm[index[v]] as u32).collect();
                x.sort();
                x
            })
            .collect();
        edges.sort();
        if best.as_ref().is_none_or(|b| edges < *b) {
            best = Some(edges);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn hypergraph_from_types(n: usize, types: &[Vec<u32>], chosen: &[usize]) -> Hypergraph3 {
    let mut h = Hypergraph3::new((1..=n as u32).map(VertexId));
    for (i, t) in chosen.iter().enumerate() {
        let verts: Vec<VertexId> = types[*t].iter().map(|v| VertexId(*v)).collect();
        h.add_edge(format!("e{i}"), &verts).expect("fresh name, valid vertices");
    }
    h
}

fn edge_types(n: usize) -> Vec<Vec<u32>> {
    let mut types = Vec::new();
    for a in 1..=n as u32 {
        for b in a + 1..=n as u32 {
            types.push(vec![a, b]);
            for c in b + 1..=n as u32 {
                types.push(vec![a, b, c]);
            }
        }
    }
    types.sort_by_key(|t| (t.len(), t.clone()));
    types
}

/// Every 3-hypergraph on `{1..n}` with at most `max_edges` hyperedges passing
/// `keep`, one per isomorphism class. Candidates with a vertex of degree below
/// `min_degree` are skipped before `keep` runs.
pub fn enumerate_hypergraphs<F: Fn(&Hypergraph3) -> bool>(
    n: usize,
    max_edges: usize,
    min_degree: usize,
    keep: F,
) -> Vec<Hypergraph3> {
    let types = edge_types(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut deg = vec![0usize; n + 1];
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(&Hypergraph3) -> bool>(
        n: usize,
        types: &[Vec<u32>],
        from: usize,
        max_edges: usize,
        min_degree: usize,
        chosen: &mut Vec<usize>,
        deg: &mut Vec<usize>,
        keep: &F,
        seen: &mut BTreeSet<Vec<Vec<u32>>>,
        out: &mut Vec<Hypergraph3>,
    ) {
        let deficit: usize = (1..=n).map(|v| min_degree.saturating_sub(deg[v])).sum();
        // every isomorphism class has a member with non-increasing degrees
        if deficit == 0 && (1..n).all(|v| deg[v] >= deg[v + 1]) {
            let h = hypergraph_from_types(n, types, chosen);
            if keep(&h) && seen.insert(canonical_form(&h)) {
                out.push(h);
            }
        }
        let room = max_edges - chosen.len();
        if room == 0 || deficit > 3 * room {
            return;
        }
        for t in from..types.len() {
            chosen.push(t);
            for v in &types[t] {
                deg[*v as usize] += 1;
            }
            rec(n, types, t, max_edges, min_degree, chosen, deg, keep, seen, out);
            for v in &types[t] {
                deg[*v as usize] -= 1;
            }
            chosen.pop();
        }
    }
    rec(n, &types, 0, max_edges, min_degree, &mut chosen, &mut deg, &keep, &mut seen, &mut out);
    out
}

/// Hypergraphs satisfying the hypotheses of the tight-quasitree search.
pub fn theorem_hypergraphs(n: usize, max_edges: usize) -> Vec<Hypergraph3> {
    let min_degree = if n >= 2 { 4 } else { 0 };
    enumerate_hypergraphs(n, max_edges, min_degree, |h| edge_connectivity_report(h).satisfies_theorem())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Hypergraph,
    Graph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraints {
    /// 4-edge-connected, no 3-hyperedge in an edge-cut of size at most 4.
    Theorem,
    /// Essentially 5-edge-connected, minimum edge weight at least 6.
    LineGraph,
    None,
}

#[derive(Clone, Copy, Debug)]
pub struct GenSpec {
    pub kind: InstanceKind,
    pub n: usize,
    pub constraints: Constraints,
    pub seed: u64,
    pub max_edges: usize,
    /// Consecutive rejected draws before the stream gives up.
    pub attempts: usize,
}

impl GenSpec {
    pub fn new(kind: InstanceKind, n: usize, constraints: Constraints, seed: u64) -> GenSpec {
        GenSpec { kind, n, constraints, seed, max_edges: 12, attempts: 20_000 }
    }
}

#[derive(Clone, Debug)]
pub enum Instance {
    Hypergraph(Hypergraph3),
    Graph(Multigraph),
}

/// Seeded stream of instances passing the requested filter.
pub struct InstanceStream {
    spec: GenSpec,
    rng: ChaCha8Rng,
    done: bool,
}

pub fn generate_instances(spec: GenSpec) -> InstanceStream {
    InstanceStream { spec, rng: ChaCha8Rng::seed_from_u64(spec.seed), done: false }
}

impl InstanceStream {
    fn draw_hypergraph(&mut self) -> Hypergraph3 {
        let n = self.spec.n.max(1);
        let lo = if n >= 2 { (4 * n).div_ceil(3) } else { 0 };
        let hi = self.spec.max_edges.max(lo);
        let m = self.rng.gen_range(lo..=hi);
        let mut h = Hypergraph3::new((1..=n as u32).map(VertexId));
        if n < 2 {
            return h;
        }
        for i in 0..m {
            let size = if n >= 3 && self.rng.gen_bool(0.35) { 3 } else { 2 };
            let verts = rand::seq::index::sample(&mut self.rng, n, size);
            let verts: Vec<VertexId> = verts.iter().map(|v| VertexId(v as u32 + 1)).collect();
            h.add_edge(format!("e{i}"), &verts).expect("distinct vertices");
        }
        h
    }

    fn draw_graph(&mut self) -> Multigraph {
        let n = self.spec.n.max(2);
        let lo = (5 * n).div_ceil(2).max(n - 1).min(self.spec.max_edges);
        let m = self.rng.gen_range(lo..=self.spec.max_edges.max(lo));
        let mut g = Multigraph::new((1..=n as u32).map(VertexId));
        for i in 0..m {
            let vs = rand::seq::index::sample(&mut self.rng, n, 2);
            g.add_edge(format!("g{i}"), VertexId(vs.index(0) as u32 + 1), VertexId(vs.index(1) as u32 + 1))
                .expect("distinct vertices");
        }
        g
    }

    fn accept(&self, inst: &Instance) -> bool {
        match (inst, self.spec.constraints) {
            (_, Constraints::None) => true,
            (Instance::Hypergraph(h), Constraints::Theorem) => edge_connectivity_report(h).satisfies_theorem(),
            (Instance::Graph(g), Constraints::LineGraph) => crate::linegraph::analyze_graph(g)
                .is_ok_and(|a| a.essential_connectivity.is_none_or(|k| k >= 5) && a.min_edge_weight >= 6),
            _ => false,
        }
    }
}

impl Iterator for InstanceStream {
    type Item = Result<Instance>;

    fn next(&mut self) -> Option<Result<Instance>> {
        if self.done {
            return None;
        }
        for _ in 0..self.spec.attempts {
            let inst = match self.spec.kind {
                InstanceKind::Hypergraph => Instance::Hypergraph(self.draw_hypergraph()),
                InstanceKind::Graph => Instance::Graph(self.draw_graph()),
            };
            if self.accept(&inst) {
                return Some(Ok(inst));
            }
        }
        self.done = true;
        Some(Err(Error::SearchExhausted(self.spec.attempts)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::vset;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=5).map(|n| all_partitions(&vset(1..=n)).len()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 15, 52]);
    }

    #[test]
    fn k7_and_path() {
        let mut k = Multigraph::new((1..=7).map(VertexId));
        for a in 1..=7u32 {
            for b in a + 1..=7 {
                k.add_edge(format!("{a}-{b}"), VertexId(a), VertexId(b)).unwrap();
            }
        }
        assert!(brute_force_hamilton(&k, HamiltonMode::Cycle).unwrap().is_some());
        let p = Multigraph::build(&[1, 2, 3], &[("p", 1, 2), ("q", 2, 3)]).unwrap();
        assert!(brute_force_hamilton(&p, HamiltonMode::Cycle).unwrap().is_none());
        assert_eq!(brute_force_vertex_connectivity(&k).unwrap(), 6);
        assert_eq!(brute_force_vertex_connectivity(&p).unwrap(), 1);
    }

    #[test]
    fn canonical_ignores_labels() {
        let a = Hypergraph3::build(&[1, 2, 3], &[("x", &[1, 2]), ("y", &[2, 3])]).unwrap();
        let b = Hypergraph3::build(&[1, 2, 3], &[("x", &[1, 3]), ("y", &[1, 2])]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }
}
