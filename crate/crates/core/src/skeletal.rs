//! Improvement search for quasitrees with tight complement.
//!
//! [`skeletal_step`] takes an acyclic quasigraph π and either returns a
//! strictly ⪯-greater acyclic quasigraph, or an acyclic σ ⪰ π together with
//! a σ-skeletal partition. [`find_tight_quasitree`] iterates it from the
//! empty quasigraph. Every outcome is re-verified before it is returned.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::contract::{contract, substitute_unchecked};
use crate::error::{domain, invariant, Error, Result};
use crate::hypergraph::{edge_connectivity_report, HyperedgeId, Hypergraph3, VertexId};
use crate::narrow_wide::{finest_wide, has_tight_complement};
use crate::order::{is_skeletal, partition_sequence, Rank};
use crate::partition::{LexOrder, Partition};
use crate::quasigraph::{pair, Quasigraph};

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Improved(Quasigraph),
    Skeletal { sigma: Quasigraph, s: Partition },
}

/// Counters describing how a search went.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchStats {
    pub steps: usize,
    pub improved: usize,
    /// Steps resolved by the generic single-hyperedge fallback.
    pub fallbacks: usize,
    pub cycle_breaks: usize,
    pub connectors_freed: usize,
}

const MAX_CYCLES: usize = 200_000;

/// Used hyperedges forming a cycle of `π*`, found by adding edges in id
/// order until one closes a cycle.
fn find_cycle(pi: &Quasigraph) -> Option<Vec<HyperedgeId>> {
    let verts: Vec<VertexId> = pi.host().vertices().iter().copied().collect();
    let idx = |v: VertexId| verts.binary_search(&v).unwrap();
    let mut uf = UnionFind::new(verts.len());
    let mut forest: Vec<(HyperedgeId, [VertexId; 2])> = Vec::new();
    for id in pi.used() {
        let [a, b] = pi.rep(id).unwrap();
        if uf.union(idx(a), idx(b)) {
            forest.push((id, [a, b]));
            continue;
        }
        // path from a to b in the forest
        let mut prev: BTreeMap<VertexId, (VertexId, HyperedgeId)> = BTreeMap::new();
        let mut queue = std::collections::VecDeque::from([a]);
        let mut seen = BTreeSet::from([a]);
        while let Some(u) = queue.pop_front() {
            for (fid, [x, y]) in &forest {
                let w = if *x == u { *y } else if *y == u { *x } else { continue };
                if seen.insert(w) {
                    prev.insert(w, (u, *fid));
                    queue.push_back(w);
                }
            }
        }
        let mut cycle = vec![id];
        let mut cur = b;
        while cur != a {
            let (p, fid) = prev[&cur];
            cycle.push(fid);
            cur = p;
        }
        cycle.sort();
        return Some(cycle);
    }
    None
}

/// Acyclic restriction of π, strictly ⪯-greater when π has a cycle. Needs
/// `π[X]` acyclic for every class `X` of `P_i`.
pub fn break_cycles(pi: &Quasigraph, i: usize) -> Result<Quasigraph> {
    let seq = partition_sequence(pi)?;
    for x in seq.term(i).classes() {
        if !pi.induced(&x)?.is_acyclic() {
            return domain(format!("π is cyclic inside the class {x:?} of P_{i}"));
        }
    }
    let sigma = break_all(pi)?;
    if sigma != *pi && Rank::of(&sigma)?.compare(&Rank::of(pi)?)? != LexOrder::Greater {
        return invariant("cycle breaking did not increase the rank");
    }
    Ok(sigma)
}

/// Removes cycle edges one at a time. Each removal takes a cycle of `π*`, the
/// least `k` for which some cycle edge crosses `P_k`, and drops the first such
/// edge. Fails when a cycle lies inside a class of the limit partition.
pub(crate) fn break_all(pi: &Quasigraph) -> Result<Quasigraph> {
    let mut cur = pi.clone();
    while let Some(cycle) = find_cycle(&cur) {
        let seq = partition_sequence(&cur)?;
        let hit = (0..=seq.stable_index()).find_map(|k| {
            let p = seq.term(k);
            cycle.iter().copied().find(|e| p.crosses(&cur.rep(*e).unwrap()))
        });
        match hit {
            Some(e) => cur = cur.remove(e)?,
            None => return domain("a cycle of π* lies inside a class of every partition in the sequence"),
        }
    }
    Ok(cur)
}

/// One quasicycle of a contracted complement: hyperedge ids of the
/// contracted host with the pair of classes they represent.
type Cycle = Vec<(HyperedgeId, [VertexId; 2])>;

/// All quasicycles in the complement of `q`.
fn complement_cycles(q: &Quasigraph) -> Result<Vec<Cycle>> {
    let host = q.host();
    let mut cand: Vec<(HyperedgeId, [VertexId; 2])> = Vec::new();
    for (id, e) in host.edges() {
        if q.rep(id).is_some() {
            continue;
        }
        for i in 0..e.size() {
            for j in i + 1..e.size() {
                cand.push((id, [e.verts[i], e.verts[j]]));
            }
        }
    }
    let mut found: BTreeSet<Cycle> = BTreeSet::new();
    for &s in host.vertices() {
        let mut path: Vec<(HyperedgeId, [VertexId; 2])> = Vec::new();
        let mut on_path = BTreeSet::from([s]);
        extend_cycles(s, s, &cand, &mut path, &mut on_path, &mut found)?;
    }
    Ok(found.into_iter().collect())
}

fn extend_cycles(
    start: VertexId,
    cur: VertexId,
    cand: &[(HyperedgeId, [VertexId; 2])],
    path: &mut Vec<(HyperedgeId, [VertexId; 2])>,
    on_path: &mut BTreeSet<VertexId>,
    found: &mut BTreeSet<Cycle>,
) -> Result<()> {
    for &(f, [a, b]) in cand {
        let next = if a == cur { b } else if b == cur { a } else { continue };
        if path.iter().any(|(g, _)| *g == f) {
            continue;
        }
        if next == start {
            if !path.is_empty() {
                let mut c = path.clone();
                c.push((f, [a, b]));
                c.sort();
                found.insert(c);
                if found.len() > MAX_CYCLES {
                    return Err(Error::TooLarge("too many contracted quasicycles".into()));
                }
            }
            continue;
        }
        if next < start || on_path.contains(&next) {
            continue;
        }
        path.push((f, [a, b]));
        on_path.insert(next);
        extend_cycles(start, next, cand, path, on_path, found)?;
        on_path.remove(&next);
        path.pop();
    }
    Ok(())
}

/// Vertices of `f` realising the class pair `pr` of a contraction.
fn realise(host: &Hypergraph3, f: HyperedgeId, p: &Partition, pr: [VertexId; 2]) -> [VertexId; 2] {
    let pick = |l: VertexId| *host.verts(f).iter().find(|v| p.label(**v) == Some(l)).unwrap();
    pair(pick(pr[0]), pick(pr[1]))
}

/// Path between two vertices of a quasitree, as hyperedge ids of its host.
fn tree_path(q: &Quasigraph, from: VertexId, to: VertexId) -> Option<Vec<HyperedgeId>> {
    let mut prev: BTreeMap<VertexId, (VertexId, HyperedgeId)> = BTreeMap::new();
    let mut queue = std::collections::VecDeque::from([from]);
    let mut seen = BTreeSet::from([from]);
    while let Some(u) = queue.pop_front() {
        for id in q.used() {
            let [x, y] = q.rep(id).unwrap();
            let w = if x == u { y } else if y == u { x } else { continue };
            if seen.insert(w) {
                prev.insert(w, (u, id));
                queue.push_back(w);
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = to;
    while cur != from {
        let (p, id) = *prev.get(&cur)?;
        out.push(id);
        cur = p;
    }
    Some(out)
}

struct Stepper<'a> {
    stats: &'a mut SearchStats,
    inner_cap: usize,
}

/// One step of the improvement procedure.
pub fn skeletal_step(pi: &Quasigraph) -> Result<SearchOutcome> {
    let mut stats = SearchStats::default();
    skeletal_step_with(pi, &mut stats)
}

pub fn skeletal_step_with(pi: &Quasigraph, stats: &mut SearchStats) -> Result<SearchOutcome> {
    if !pi.is_acyclic() {
        return domain("skeletal step needs an acyclic quasigraph");
    }
    let h = pi.host();
    let inner_cap = 10 * (h.num_vertices() + h.num_edges()).pow(2) + 10;
    let mut s = Stepper { stats, inner_cap };
    let rank = Rank::of(pi)?;
    let out = s.step(pi, &rank)?;
    if !verify(pi, &rank, &out)? {
        return invariant("skeletal step produced an unverified outcome");
    }
    Ok(out)
}

fn verify(_pi: &Quasigraph, rank: &Rank, out: &SearchOutcome) -> Result<bool> {
    Ok(match out {
        SearchOutcome::Improved(s) => s.is_acyclic() && Rank::of(s)?.compare(rank)? == LexOrder::Greater,
        SearchOutcome::Skeletal { sigma, s } => {
            sigma.is_acyclic()
                && matches!(Rank::of(sigma)?.compare(rank)?, LexOrder::Greater | LexOrder::Equal)
                && is_skeletal(sigma, s)?
        }
    })
}

impl Stepper<'_> {
    fn step(&mut self, pi: &Quasigraph, rank: &Rank) -> Result<SearchOutcome> {
        if pi.is_quasitree() && rank.neg.is_trivial() {
            return Ok(SearchOutcome::Skeletal { sigma: pi.clone(), s: Partition::trivial(pi.host().vertices()) });
        }
        let attempt = if rank.pos.is_trivial() { self.negative_parts(pi, rank)? } else { self.positive_parts(pi, rank)? };
        if let Some(out) = attempt {
            if verify(pi, rank, &out)? {
                return Ok(out);
            }
        }
        self.stats.fallbacks += 1;
        fallback(pi, rank)
    }

    fn improved(&mut self, sigma: Quasigraph) -> Option<SearchOutcome> {
        if sigma.is_acyclic() {
            return Some(SearchOutcome::Improved(sigma));
        }
        self.stats.cycle_breaks += 1;
        break_all(&sigma).ok().map(SearchOutcome::Improved)
    }

    /// `P0` trivial: recurse into the negative parts.
    fn negative_parts(&mut self, pi: &Quasigraph, rank: &Rank) -> Result<Option<SearchOutcome>> {
        let mut subs = Vec::new();
        let mut parts = Vec::new();
        for y in rank.neg.classes() {
            let q = pi.induced(&y)?;
            let qr = Rank::of(&q)?;
            match self.step(&q, &qr)? {
                SearchOutcome::Improved(s) => {
                    let sigma = substitute_unchecked(pi, [&s]);
                    return Ok(self.improved(sigma));
                }
                SearchOutcome::Skeletal { sigma, s } => {
                    subs.push(sigma);
                    parts.push(s);
                }
            }
        }
        let sigma = substitute_unchecked(pi, subs.iter());
        if !sigma.is_acyclic() {
            return Ok(self.improved(sigma));
        }
        Ok(Some(SearchOutcome::Skeletal { sigma, s: Partition::union(parts)? }))
    }

    /// `P0` nontrivial: recurse into the positive parts, then deal with the
    /// quasicycles of the contracted complement.
    fn positive_parts(&mut self, pi: &Quasigraph, rank: &Rank) -> Result<Option<SearchOutcome>> {
        let p0 = &rank.pos;
        let mut subs = Vec::new();
        let mut parts = Vec::new();
        for x in p0.classes() {
            let q = pi.induced(&x)?;
            let qr = Rank::of(&q)?;
            match self.step(&q, &qr)? {
                SearchOutcome::Improved(s) => {
                    let sigma = substitute_unchecked(pi, [&s]);
                    return Ok(self.improved(sigma));
                }
                SearchOutcome::Skeletal { sigma, s } => {
                    subs.push(sigma);
                    parts.push(s);
                }
            }
        }
        let rho = substitute_unchecked(pi, subs.iter());
        let r = Partition::union(parts)?;
        let (cr, rho_r) = contract(&rho, &r)?;
        let cycles = complement_cycles(&rho_r)?;
        if cycles.is_empty() {
            return Ok(Some(SearchOutcome::Skeletal { sigma: rho, s: r }));
        }

        // connector of each cycle: its least hyperedge whose value crosses P0
        let mut conn: BTreeMap<VertexId, BTreeSet<HyperedgeId>> = BTreeMap::new();
        let mut aim: BTreeMap<HyperedgeId, [VertexId; 2]> = BTreeMap::new();
        for cyc in &cycles {
            let Some(&(fc, pr)) = cyc.iter().find(|(_, pr)| p0.label(pr[0]) != p0.label(pr[1])) else {
                // a cycle inside one positive part; the recursive outcome was not skeletal
                return Ok(None);
            };
            let f = cr.base.edge(fc).origin.unwrap();
            let target = realise(pi.host(), f, &r, pr);
            match rho.rep(f) {
                None => {
                    let sigma = rho.with(f, Some(target))?;
                    return Ok(self.improved(sigma));
                }
                Some(rp) => {
                    conn.entry(r.label(rp[0]).unwrap()).or_default().insert(f);
                    aim.entry(f).or_insert(target);
                }
            }
        }

        let mut taus = Vec::new();
        let mut sparts = Vec::new();
        for y in r.classes() {
            let ylab = *y.iter().next().unwrap();
            let ry = rho.induced(&y)?;
            let Some(cs) = conn.get(&ylab) else {
                taus.push(ry);
                sparts.push(Partition::trivial(&y));
                continue;
            };
            let sec = ry.host().clone();
            let iconn: BTreeSet<HyperedgeId> =
                sec.edges().filter(|(_, e)| cs.contains(&e.origin.unwrap())).map(|(id, _)| id).collect();
            let ht = Arc::new(sec.without(&iconn));
            let rho_t = Quasigraph::from_reps(ht.clone(), ht.edges().map(|(_, e)| ry.rep(e.origin.unwrap())).collect())?;
            let pos_t = finest_wide(&rho_t);

            let mut sig = rho_t.clone();
            let mut iters = 0;
            let (sig, sy) = loop {
                if finest_wide(&sig) != pos_t {
                    break (sig, None);
                }
                iters += 1;
                if iters > self.inner_cap {
                    return Err(Error::SearchExhausted(iters));
                }
                let sr = Rank::of(&sig)?;
                match self.step(&sig, &sr)? {
                    SearchOutcome::Improved(s) => sig = s,
                    SearchOutcome::Skeletal { sigma, s } => {
                        if finest_wide(&sigma) != pos_t {
                            break (sigma, None);
                        }
                        break (sigma, Some(s));
                    }
                }
            };
            let tau_y = pin(&ry, &ht, &sig)?;
            match sy {
                Some(sy) => {
                    taus.push(tau_y);
                    sparts.push(sy);
                }
                None => return Ok(self.free_connector(rank, &rho, &ry, &tau_y, &iconn, &pos_t, &sig, &aim)),
            }
        }
        let sigma = substitute_unchecked(&rho, taus.iter());
        if !sigma.is_acyclic() {
            return Ok(self.improved(sigma));
        }
        Ok(Some(SearchOutcome::Skeletal { sigma, s: Partition::union(sparts)? }))
    }

    /// The positive parts in `H̃_Y` merged two classes: drop a connector on
    /// the tree path between them and re-aim it across the positive parts.
    #[allow(clippy::too_many_arguments)]
    fn free_connector(
        &mut self,
        rank: &Rank,
        rho: &Quasigraph,
        ry: &Quasigraph,
        tau_y: &Quasigraph,
        iconn: &BTreeSet<HyperedgeId>,
        pos_t: &Partition,
        sig: &Quasigraph,
        aim: &BTreeMap<HyperedgeId, [VertexId; 2]>,
    ) -> Option<SearchOutcome> {
        let pos_s = finest_wide(sig);
        let ys: Vec<VertexId> = ry.host().vertices().iter().copied().collect();
        let base = substitute_unchecked(rho, [tau_y]);
        let mut tried = BTreeSet::new();
        for (i, &u1) in ys.iter().enumerate() {
            for &u2 in &ys[i + 1..] {
                if pos_t.label(u1) == pos_t.label(u2) || pos_s.label(u1) != pos_s.label(u2) {
                    continue;
                }
                let path = tree_path(ry, u1, u2)?;
                for fe in path.into_iter().filter(|id| iconn.contains(id)) {
                    let f = ry.host().edge(fe).origin.unwrap();
                    if !tried.insert(f) {
                        continue;
                    }
                    let mut tau = base.remove(f).ok()?;
                    if !tau.is_acyclic() {
                        tau = break_all(&tau).ok()?;
                    }
                    let Ok(sigma) = tau.with(f, Some(aim[&f])) else { continue };
                    if sigma.is_acyclic() && Rank::of(&sigma).ok()?.compare(rank).ok()? == LexOrder::Greater {
                        self.stats.connectors_freed += 1;
                        return Some(SearchOutcome::Improved(sigma));
                    }
                }
            }
        }
        None
    }
}

/// `τ_Y`: connectors keep their values, everything else follows `sig`.
fn pin(ry: &Quasigraph, ht: &Hypergraph3, sig: &Quasigraph) -> Result<Quasigraph> {
    let mut rep = ry.reps().to_vec();
    for (fid, e) in ht.edges() {
        rep[e.origin.unwrap().index()] = sig.rep(fid);
    }
    Quasigraph::from_reps(ry.host().clone(), rep)
}

/// Generic step used when the structured procedure cannot be verified:
/// a strictly better single re-representation, or a skeletal partition
/// among a few natural candidates.
fn fallback(pi: &Quasigraph, rank: &Rank) -> Result<SearchOutcome> {
    let host = pi.host();
    for (id, e) in host.edges() {
        let mut options = vec![None];
        for i in 0..e.size() {
            for j in i + 1..e.size() {
                options.push(Some([e.verts[i], e.verts[j]]));
            }
        }
        for r in options {
            if r == pi.rep(id) {
                continue;
            }
            let sigma = pi.with(id, r)?;
            if sigma.is_acyclic() && Rank::of(&sigma)?.compare(rank)? == LexOrder::Greater {
                return Ok(SearchOutcome::Improved(sigma));
            }
        }
    }
    let candidates = [rank.seq.limit().clone(), Partition::singletons(host.vertices()), rank.pos.clone()];
    for p in candidates {
        if is_skeletal(pi, &p)? {
            return Ok(SearchOutcome::Skeletal { sigma: pi.clone(), s: p });
        }
    }
    invariant("no improvement and no skeletal partition found")
}

/// Quantities of the counting argument on `H/P`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CountingLedger {
    pub n: usize,
    pub m: usize,
    pub m2: usize,
    pub m3: usize,
    pub mbar2: usize,
    pub mbar3: usize,
    pub n4: usize,
    pub n5plus: usize,
    /// 3-hyperedges of `π/P` whose arc heads (forest rooted at the least
    /// class of each component) are pairwise distinct classes of degree ≥ 5.
    pub heads_ok: bool,
    /// Degree sum of the reference hypergraph contracted by `P`.
    pub s_ref: usize,
    pub n4_star: usize,
    pub n5plus_star: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Audit {
    pub checks: Vec<Check>,
    /// Every premise holds. The chain then forces the star bound, which
    /// exceeds the orientation bound, so the ledger cannot arise under the
    /// theorem's hypotheses.
    pub contradiction: bool,
    /// The ledger breaks its own bookkeeping identities.
    pub malformed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// 4-edge-connected host: `m3 ≥ m̄3 + n5⁺ + 6`.
    Spanning,
    /// Host obtained by deleting at most 4 from the degree sum of a
    /// 4-edge-connected reference: `m3 ≥ m̄3 + n5⁺* + 2`.
    Adjusted,
}

impl CountingLedger {
    /// Ledger of `σ/P` in `H`, with degrees of `reference/P` for the adjusted variant.
    pub fn measure(sigma: &Quasigraph, p: &Partition, reference: Option<&Hypergraph3>) -> Result<CountingLedger> {
        let (c, q) = contract(sigma, p)?;
        let base = &c.base;
        let mut l = CountingLedger { n: p.num_classes(), m: base.num_edges(), ..Default::default() };
        for (id, e) in base.edges() {
            match (q.rep(id).is_some(), e.size()) {
                (true, 2) => l.m2 += 1,
                (true, _) => l.m3 += 1,
                (false, 2) => l.mbar2 += 1,
                (false, _) => l.mbar3 += 1,
            }
        }
        l.n4 = base.vertices().iter().filter(|v| base.degree(**v) == 4).count();
        l.n5plus = l.n - l.n4;
        let refc = match reference {
            Some(h) => crate::contract::contract_hypergraph(h, p)?.base,
            None => base.clone(),
        };
        l.s_ref = refc.degree_sum();
        l.n4_star = refc.vertices().iter().filter(|v| refc.degree(**v) == 4).count();
        l.n5plus_star = l.n - l.n4_star;
        let degree_of = |v: VertexId| refc.degree(v);
        l.heads_ok = heads_distinct(&q, degree_of);
        Ok(l)
    }

    pub fn audit(&self, variant: Variant) -> Audit {
        let n = self.n as i64;
        let (m, m2, m3, mb2, mb3) = (self.m as i64, self.m2 as i64, self.m3 as i64, self.mbar2 as i64, self.mbar3 as i64);
        let malformed = self.m != self.m2 + self.m3 + self.mbar2 + self.mbar3 || self.n != self.n4 + self.n5plus || self.n < 2;
        let compl = mb2 + 2 * mb3 <= n - 1;
        let forest = m2 + m3 <= n - 1;
        let strict = mb2 + 2 * mb3 < n - 1 || m2 + m3 < n - 1;
        let both = m + mb3 <= 2 * n - 3;
        let (verts, star, orient) = match variant {
            Variant::Spanning => {
                let n5 = self.n5plus as i64;
                let verts = 4 * self.n4 as i64 + 5 * n5 <= 2 * m + m3 + mb3;
                (verts, m3 >= mb3 + n5 + 6, m3 <= n5 && self.heads_ok)
            }
            Variant::Adjusted => {
                let n5 = self.n5plus_star as i64;
                let verts = 4 * self.n4_star as i64 + 5 * n5 - 4 <= 2 * m + m3 + mb3;
                (verts, m3 >= mb3 + n5 + 2, m3 <= n5 && self.heads_ok)
            }
        };
        let checks = vec![
            Check { name: "complement_forest", holds: compl },
            Check { name: "quasigraph_forest", holds: forest },
            Check { name: "one_strict", holds: strict },
            Check { name: "both", holds: both },
            Check { name: "verts", holds: verts },
            Check { name: "star", holds: star },
            Check { name: "orientation", holds: orient },
        ];
        let premises = compl && forest && strict && verts;
        let contradiction = !malformed && premises;
        debug_assert!(!contradiction || both && star && !orient, "counting chain is inconsistent");
        Audit { checks, contradiction, malformed }
    }
}

/// Orient each component of `(π/P)*` away from its least class; the heads of
/// 3-hyperedge arcs must be distinct and of degree at least 5.
fn heads_distinct<F: Fn(VertexId) -> usize>(q: &Quasigraph, degree: F) -> bool {
    let g = q.underlying_graph();
    let used: Vec<HyperedgeId> = q.used().collect();
    let mut depth: BTreeMap<VertexId, usize> = BTreeMap::new();
    for comp in g.components() {
        let root = *comp.iter().next().unwrap();
        depth.insert(root, 0);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for (_, e) in g.edges() {
                if e.has(u) {
                    let w = e.other(u);
                    if !depth.contains_key(&w) {
                        depth.insert(w, depth[&u] + 1);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    let mut heads = BTreeSet::new();
    for (i, (_, e)) in g.edges().enumerate() {
        if q.host().edge(used[i]).size() != 3 {
            continue;
        }
        let head = if depth[&e.ends[0]] > depth[&e.ends[1]] { e.ends[0] } else { e.ends[1] };
        if !heads.insert(head) || degree(head) < 5 {
            return false;
        }
    }
    true
}

/// One entry of a search trace.
#[derive(Clone, Debug, Serialize)]
pub struct TraceEvent {
    pub iteration: usize,
    pub kind: &'static str,
    pub used: Vec<String>,
    pub positive: String,
    pub negative: String,
    pub skeletal: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub pi: Quasigraph,
    pub stats: SearchStats,
    pub trace: Vec<TraceEvent>,
    /// Ledgers of nontrivial skeletal partitions met on the way.
    pub audits: Vec<(CountingLedger, Audit)>,
}

pub fn default_cap(h: &Hypergraph3) -> usize {
    10 * (h.num_vertices() + h.num_edges()).pow(2)
}

/// Checks the theorem's hypotheses, then runs [`search_tight_quasitree`].
pub fn find_tight_quasitree(h: &Hypergraph3) -> Result<SearchResult> {
    check_hypotheses(h)?;
    search_tight_quasitree(h, default_cap(h), Variant::Spanning, None)
}

/// Connected, 4-edge-connected, and no 3-hyperedge in an edge-cut of size at most 4.
pub fn check_hypotheses(h: &Hypergraph3) -> Result<()> {
    let report = edge_connectivity_report(h);
    if !report.connected {
        return Err(Error::Rejected { stage: "find-quasitree", reason: "hypergraph is disconnected".into() });
    }
    if let Some(k) = report.min_cut_size.filter(|k| *k < 4) {
        return Err(Error::Rejected { stage: "find-quasitree", reason: format!("min_cut_size {k} < 4") });
    }
    if report.forbidden_3cut {
        return Err(Error::Rejected {
            stage: "find-quasitree",
            reason: "a 3-hyperedge lies in an edge-cut of size at most 4".into(),
        });
    }
    Ok(())
}

fn describe(pi: &Quasigraph, rank: &Rank, iteration: usize, kind: &'static str, s: Option<&Partition>) -> TraceEvent {
    TraceEvent {
        iteration,
        kind,
        used: pi.used().map(|id| pi.host().name(id).to_string()).collect(),
        positive: rank.pos.to_string(),
        negative: rank.neg.to_string(),
        skeletal: s.map(|p| p.to_string()),
    }
}

/// Iterates the skeletal step from the empty quasigraph until it yields a
/// quasitree with tight complement.
pub fn search_tight_quasitree(
    h: &Hypergraph3,
    cap: usize,
    variant: Variant,
    reference: Option<&Hypergraph3>,
) -> Result<SearchResult> {
    let host = Arc::new(h.clone());
    let mut pi = Quasigraph::empty(host);
    let mut stats = SearchStats::default();
    let mut trace = Vec::new();
    let mut audits = Vec::new();
    for iteration in 0..cap.max(1) {
        stats.steps += 1;
        match skeletal_step_with(&pi, &mut stats)? {
            SearchOutcome::Improved(sigma) => {
                stats.improved += 1;
                trace.push(describe(&sigma, &Rank::of(&sigma)?, iteration, "improved", None));
                pi = sigma;
            }
            SearchOutcome::Skeletal { sigma, s } => {
                trace.push(describe(&sigma, &Rank::of(&sigma)?, iteration, "skeletal", Some(&s)));
                if s.is_trivial() {
                    if !sigma.is_quasitree() || !has_tight_complement(&sigma)?.is_tight() {
                        return invariant("trivial skeletal partition without a tight quasitree");
                    }
                    return Ok(SearchResult { pi: sigma, stats, trace, audits });
                }
                let ledger = CountingLedger::measure(&sigma, &s, reference)?;
                let audit = ledger.audit(variant);
                audits.push((ledger, audit));
                let rank = Rank::of(&sigma)?;
                match fallback(&sigma, &rank) {
                    Ok(SearchOutcome::Improved(next)) => {
                        stats.fallbacks += 1;
                        pi = next;
                    }
                    _ => {
                        return Err(Error::Rejected {
                            stage: "skeletal",
                            reason: format!("nontrivial skeletal partition {s} with no further improvement"),
                        })
                    }
                }
            }
        }
    }
    Err(Error::SearchExhausted(cap))
}
