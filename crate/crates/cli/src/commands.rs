use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use quasi_core::hypergraph::edge_connectivity_report;
use quasi_core::io::{parse_hypergraph, parse_multigraph, parse_partition, parse_quasigraph, HypergraphDoc, MultigraphDoc, PartitionDoc, QuasigraphDoc};
use quasi_core::linegraph::{
    analyze_graph, graph_dot, hamilton_cycle_in_line_graph, hamilton_path_in_line_graph, is_line_hamilton_cycle,
    is_line_hamilton_path, line_graph,
};
use quasi_core::narrow_wide::{check_witness, finest_narrow, finest_wide, has_tight_complement, is_narrow, is_wide, Tightness};
use quasi_core::oracles::{
    brute_force_hamilton, brute_force_tight_quasitrees, generate_instances, Constraints, GenSpec, HamiltonMode, Instance,
    InstanceKind,
};
use quasi_core::order::{is_skeletal, partition_sequence};
use quasi_core::skeletal::{check_hypotheses, default_cap, search_tight_quasitree, Variant};
use quasi_core::{EdgeId, Error, Hypergraph3, Multigraph, Quasigraph, VertexId};
use serde_json::{json, Value};

use crate::{Cli, Command, ConstraintArg, Failure, Format, KindArg, OracleTask};

type Out<'a> = &'a mut String;

pub fn run(cli: &Cli, out: Out) -> Result<(), Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Check { input, quasigraph, partition, sequence } => {
            check(input.as_deref(), quasigraph.as_deref(), partition.as_deref(), *sequence, g.format, out)
        }
        Command::FindQuasitree { input, trace } => find_quasitree(input, *trace, g.max_iters, g.format, out),
        Command::Hamilton { input, path, emit } => {
            let format = emit.unwrap_or(g.format);
            match path.as_deref() {
                Some([a, b]) => hamilton_path(input, a, b, format, out),
                Some(_) => Err(Failure::Usage("--path takes two edge ids".into())),
                None => hamilton(input, format, out),
            }
        }
        Command::HamiltonPath { input, from, to, all } => match (all, from, to) {
            (true, _, _) => hamilton_all_pairs(input, g.format, out),
            (false, Some(a), Some(b)) => hamilton_path(input, a, b, g.format, out),
            _ => Err(Failure::Usage("give --from and --to, or --all".into())),
        },
        Command::Gen { kind, n, constraints, count, max_edges } => {
            json_only(g.format, "gen")?;
            gen(*kind, *n, *constraints, *count, *max_edges, g.seed, out)
        }
        Command::Oracle { task } => {
            json_only(g.format, "oracle")?;
            match task {
                OracleTask::Quasitrees { input } => oracle_quasitrees(input, out),
                OracleTask::Hamilton { input, line, from, to } => oracle_hamilton(input, *line, from.as_deref(), to.as_deref(), out),
            }
        }
    }
}

fn json_only(format: Format, what: &str) -> Result<(), Failure> {
    match format {
        Format::Json => Ok(()),
        Format::Dot => Err(Failure::Usage(format!("{what} has no DOT output"))),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: Out, v: &Value) {
    out.push_str(&serde_json::to_string_pretty(v).expect("values serialize"));
    out.push('\n');
}

fn line(out: Out, v: &Value) {
    out.push_str(&serde_json::to_string(v).expect("values serialize"));
    out.push('\n');
}

fn names(g: &Multigraph, seq: &[EdgeId]) -> Vec<String> {
    seq.iter().map(|e| g.edge(*e).name.clone()).collect()
}

fn edge_named(g: &Multigraph, name: &str) -> Result<EdgeId, Failure> {
    g.find(name).ok_or_else(|| Failure::Usage(format!("no edge named {name:?}")))
}

fn partition_json(p: &quasi_core::Partition) -> Value {
    json!(PartitionDoc::of(p).classes)
}

fn tightness_json(pi: &Quasigraph, t: &Tightness) -> Value {
    match t {
        Tightness::Tight(w) => json!({ "tight": true, "witness": w.to_json(pi.host()) }),
        Tightness::NotTight(p) => json!({ "tight": false, "narrow_partition": partition_json(p) }),
    }
}

fn hypergraph_report(h: &Hypergraph3) -> Value {
    let report = edge_connectivity_report(h);
    json!({
        "kind": "hypergraph",
        "vertices": h.num_vertices(),
        "hyperedges": h.num_edges(),
        "size2": h.count_by_size(2),
        "size3": h.count_by_size(3),
        "degree_sum": h.degree_sum(),
        "connectivity": report,
        "satisfies_theorem": report.satisfies_theorem(),
    })
}

fn check(
    input: Option<&Path>,
    quasigraph: Option<&Path>,
    partition: Option<&Path>,
    sequence: bool,
    format: Format,
    out: Out,
) -> Result<(), Failure> {
    let text = input.map(read).transpose()?;
    let doc: Option<Value> =
        text.as_deref().map(|t| serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))).transpose()?;
    let is_graph = doc.as_ref().is_some_and(|d| d.get("edges").is_some());
    let is_quasi = doc.as_ref().is_some_and(|d| d.get("rep").is_some());

    if is_graph {
        let g = parse_multigraph(text.as_deref().unwrap())?;
        if format == Format::Dot {
            out.push_str(&graph_dot(&g, &BTreeSet::new()));
            return Ok(());
        }
        let a = analyze_graph(&g)?;
        emit(out, &json!({
            "kind": "multigraph",
            "vertices": g.num_vertices(),
            "edges": g.num_edges(),
            "analysis": a,
            "accepts": a.accepts(),
            "line_graph": { "vertices": g.num_edges(), "edges": line_graph(&g).num_edges() },
        }));
        return Ok(());
    }

    let q_text = match (quasigraph, is_quasi) {
        (Some(p), _) => Some(read(p)?),
        (None, true) => text.clone(),
        (None, false) => None,
    };
    let host = match (&text, is_quasi) {
        (Some(t), false) => Some(Arc::new(parse_hypergraph(t)?)),
        _ => None,
    };
    let pi = q_text.as_deref().map(|t| parse_quasigraph(t, host.clone())).transpose()?;
    let h = match (&host, &pi) {
        (_, Some(pi)) => pi.host().clone(),
        (Some(h), None) => h.clone(),
        (None, None) => return Err(Failure::Usage("check needs --input or --quasigraph".into())),
    };
    if format == Format::Dot {
        let pi = pi.unwrap_or_else(|| Quasigraph::empty(h));
        out.push_str(&pi.to_dot());
        return Ok(());
    }

    let mut report = hypergraph_report(&h);
    if let Some(pi) = &pi {
        let t = has_tight_complement(pi)?;
        if let Tightness::Tight(w) = &t {
            if !check_witness(pi, w)? {
                return Err(Failure::Verify("tightness witness does not check".into()));
            }
        }
        let mut q = json!({
            "class": pi.classify(),
            "quasitree": pi.is_quasitree(),
            "acyclic": pi.is_acyclic(),
            "used": pi.used().map(|id| h.name(id).to_string()).collect::<Vec<_>>(),
            "tightness": tightness_json(pi, &t),
            "tight": t.is_tight(),
            "finest_wide": partition_json(&finest_wide(pi)),
            "finest_narrow": partition_json(&finest_narrow(pi)?),
        });
        if sequence {
            let seq = partition_sequence(pi)?;
            q["sequence"] = json!({
                "terms": seq.terms().iter().map(partition_json).collect::<Vec<_>>(),
                "stable_index": seq.stable_index(),
            });
        }
        if let Some(path) = partition {
            let p = parse_partition(&read(path)?)?;
            q["partition"] = json!({
                "classes": partition_json(&p),
                "narrow": is_narrow(&p, pi)?,
                "wide": is_wide(&p, pi)?,
                "skeletal": is_skeletal(pi, &p)?,
            });
        }
        report["quasigraph"] = q;
    } else if partition.is_some() || sequence {
        return Err(Failure::Usage("--partition and --sequence need a quasigraph".into()));
    }
    emit(out, &report);
    Ok(())
}

fn find_quasitree(input: &Path, trace: bool, max_iters: Option<usize>, format: Format, out: Out) -> Result<(), Failure> {
    let h = parse_hypergraph(&read(input)?)?;
    check_hypotheses(&h)?;
    let cap = max_iters.unwrap_or_else(|| default_cap(&h));
    let found = search_tight_quasitree(&h, cap, Variant::Spanning, None)?;
    let pi = &found.pi;
    let t = has_tight_complement(pi)?;
    let verified = pi.is_quasitree() && matches!(&t, Tightness::Tight(w) if check_witness(pi, w)?);
    if !verified {
        return Err(Failure::Verify("search result is not a quasitree with tight complement".into()));
    }
    if format == Format::Dot {
        out.push_str(&pi.to_dot());
        return Ok(());
    }
    let result = json!({
        "rep": QuasigraphDoc::of(pi, false).rep,
        "used": pi.used().map(|id| h.name(id).to_string()).collect::<Vec<_>>(),
        "verified": verified,
        "tightness": tightness_json(pi, &t),
        "stats": found.stats,
        "cap": cap,
        "audits": found.audits.iter().map(|(l, a)| json!({ "ledger": l, "audit": a })).collect::<Vec<_>>(),
    });
    if trace {
        for ev in &found.trace {
            let mut v = json!(ev);
            v["event"] = json!("step");
            line(out, &v);
        }
        let mut v = result;
        v["event"] = json!("result");
        line(out, &v);
    } else {
        emit(out, &result);
    }
    Ok(())
}

fn hamilton(input: &Path, format: Format, out: Out) -> Result<(), Failure> {
    let g = parse_multigraph(&read(input)?)?;
    let c = hamilton_cycle_in_line_graph(&g)?;
    if !is_line_hamilton_cycle(&g, &c.cycle) {
        return Err(Failure::Verify("returned sequence is not a Hamilton cycle of L(G)".into()));
    }
    if format == Format::Dot {
        out.push_str(&graph_dot(&g, &c.eulerian.edges));
        return Ok(());
    }
    let eul: Vec<EdgeId> = c.eulerian.edges.iter().copied().collect();
    emit(out, &json!({
        "mode": "cycle",
        "sequence": names(&g, &c.cycle),
        "verified": true,
        "trail": names(&g, &c.trail.edges),
        "eulerian_edges": names(&g, &eul),
        "search": c.eulerian.stats,
    }));
    Ok(())
}

fn path_report(g: &Multigraph, a: EdgeId, b: EdgeId) -> Result<(Value, BTreeSet<EdgeId>), Failure> {
    let p = hamilton_path_in_line_graph(g, a, b)?;
    if !is_line_hamilton_path(g, &p.path, a, b) {
        return Err(Failure::Verify(format!("no valid Hamilton path returned for {} -> {}", g.edge(a).name, g.edge(b).name)));
    }
    let ledger_ok = p.degree_sum_h_prime + 4 >= p.degree_sum_h;
    if !ledger_ok {
        return Err(Failure::Verify("degree sum dropped by more than 4".into()));
    }
    let v = json!({
        "mode": "path",
        "from": g.edge(a).name,
        "to": g.edge(b).name,
        "sequence": names(g, &p.path),
        "verified": true,
        "trail": names(g, &p.trail.edges),
        "case": p.case,
        "x": p.x,
        "degree_sum_h": p.degree_sum_h,
        "degree_sum_h_prime": p.degree_sum_h_prime,
    });
    Ok((v, p.trail.edges.iter().copied().collect()))
}

fn hamilton_path(input: &Path, from: &str, to: &str, format: Format, out: Out) -> Result<(), Failure> {
    let g = parse_multigraph(&read(input)?)?;
    let (a, b) = (edge_named(&g, from)?, edge_named(&g, to)?);
    let (v, trail) = path_report(&g, a, b)?;
    match format {
        Format::Dot => out.push_str(&graph_dot(&g, &trail)),
        Format::Json => emit(out, &v),
    }
    Ok(())
}

fn hamilton_all_pairs(input: &Path, format: Format, out: Out) -> Result<(), Failure> {
    json_only(format, "hamilton-path --all")?;
    let g = parse_multigraph(&read(input)?)?;
    let mut verified = 0usize;
    let mut cases = std::collections::BTreeMap::<&'static str, usize>::new();
    for a in g.edge_ids() {
        for b in g.edge_ids().filter(|b| *b != a) {
            let (v, _) = path_report(&g, a, b)?;
            let case = match v["case"] {
                Value::Object(ref m) if m.contains_key("shared_hub") => "shared_hub",
                Value::Object(ref m) if m.contains_key("same_edge") => "same_edge",
                _ => "separate",
            };
            *cases.entry(case).or_default() += 1;
            verified += 1;
        }
    }
    emit(out, &json!({ "mode": "all_pairs", "pairs": verified, "verified": verified, "cases": cases }));
    Ok(())
}

fn gen(kind: KindArg, n: usize, constraints: ConstraintArg, count: usize, max_edges: usize, seed: u64, out: Out) -> Result<(), Failure> {
    let kind = match kind {
        KindArg::Hypergraph => InstanceKind::Hypergraph,
        KindArg::Graph => InstanceKind::Graph,
    };
    let constraints = match constraints {
        ConstraintArg::Theorem => Constraints::Theorem,
        ConstraintArg::LineGraph => Constraints::LineGraph,
        ConstraintArg::None => Constraints::None,
    };
    let mut spec = GenSpec::new(kind, n, constraints, seed);
    spec.max_edges = max_edges;
    for inst in generate_instances(spec).take(count) {
        let v = match inst? {
            Instance::Hypergraph(h) => json!(HypergraphDoc::of(&h)),
            Instance::Graph(g) => json!(MultigraphDoc::of(&g)),
        };
        line(out, &v);
    }
    Ok(())
}

fn oracle_quasitrees(input: &Path, out: Out) -> Result<(), Failure> {
    let h = parse_hypergraph(&read(input)?)?;
    let all = brute_force_tight_quasitrees(&h)?;
    let reps: Vec<Value> = all.iter().map(|q| json!(QuasigraphDoc::of(q, false).rep)).collect();
    emit(out, &json!({ "count": all.len(), "quasitrees": reps }));
    Ok(())
}

fn oracle_hamilton(input: &Path, line_mode: bool, from: Option<&str>, to: Option<&str>, out: Out) -> Result<(), Failure> {
    let g = parse_multigraph(&read(input)?)?;
    let target = if line_mode { line_graph(&g) } else { g.clone() };
    let vertex = |name: &str| -> Result<VertexId, Failure> {
        if line_mode {
            return Ok(VertexId(edge_named(&g, name)?.0));
        }
        let v = name.parse::<u32>().map_err(|_| Failure::Usage(format!("{name:?} is not a vertex id")))?;
        if !g.vertices().contains(&VertexId(v)) {
            return Err(Failure::Usage(format!("no vertex {v}")));
        }
        Ok(VertexId(v))
    };
    let mode = match (from, to) {
        (Some(a), Some(b)) => HamiltonMode::Path(vertex(a)?, vertex(b)?),
        _ => HamiltonMode::Cycle,
    };
    let found = brute_force_hamilton(&target, mode)?;
    let witness = found.map(|vs| -> Vec<String> {
        vs.iter()
            .map(|v| if line_mode { g.edge(EdgeId(v.0)).name.clone() } else { v.to_string() })
            .collect()
    });
    let kind = match mode {
        HamiltonMode::Cycle => "cycle",
        HamiltonMode::Path(..) => "path",
    };
    let target = if line_mode { "line_graph" } else { "graph" };
    emit(out, &json!({ "mode": kind, "target": target, "exists": witness.is_some(), "witness": witness }));
    Ok(())
}
