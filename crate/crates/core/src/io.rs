//! JSON documents for hypergraphs, multigraphs, partitions and quasigraphs.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph3, Multigraph, VertexId, VertexSet};
use crate::partition::Partition;
use crate::quasigraph::Quasigraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperedgeDoc {
    pub id: String,
    pub verts: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphDoc {
    pub vertices: Vec<u32>,
    pub hyperedges: Vec<HyperedgeDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: String,
    pub ends: [u32; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultigraphDoc {
    pub vertices: Vec<u32>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub classes: Vec<Vec<u32>>,
}

/// A missing `hypergraph` means the host comes from elsewhere; a hyperedge
/// missing from `rep` is unused.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasigraphDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypergraph: Option<HypergraphDoc>,
    #[serde(default)]
    pub rep: BTreeMap<String, Option<[u32; 2]>>,
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn ids(set: &VertexSet) -> Vec<u32> {
    set.iter().map(|v| v.0).collect()
}

impl HypergraphDoc {
    pub fn of(h: &Hypergraph3) -> HypergraphDoc {
        HypergraphDoc {
            vertices: ids(h.vertices()),
            hyperedges: h
                .edges()
                .map(|(_, e)| HyperedgeDoc { id: e.name.to_string(), verts: e.verts.iter().map(|v| v.0).collect() })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<Hypergraph3> {
        let mut h = Hypergraph3::new(self.vertices.iter().copied().map(VertexId));
        for e in &self.hyperedges {
            let vs: Vec<VertexId> = e.verts.iter().copied().map(VertexId).collect();
            h.add_edge(e.id.clone(), &vs)?;
        }
        Ok(h)
    }
}

impl MultigraphDoc {
    pub fn of(g: &Multigraph) -> MultigraphDoc {
        MultigraphDoc {
            vertices: ids(g.vertices()),
            edges: g.edges().map(|(_, e)| EdgeDoc { id: e.name.clone(), ends: [e.ends[0].0, e.ends[1].0] }).collect(),
        }
    }

    pub fn build(&self) -> Result<Multigraph> {
        let mut g = Multigraph::new(self.vertices.iter().copied().map(VertexId));
        for e in &self.edges {
            if g.find(&e.id).is_some() {
                return Err(Error::Domain(format!("duplicate edge id {:?}", e.id)));
            }
            g.add_edge(e.id.clone(), VertexId(e.ends[0]), VertexId(e.ends[1]))?;
        }
        Ok(g)
    }
}

impl PartitionDoc {
    pub fn of(p: &Partition) -> PartitionDoc {
        PartitionDoc { classes: p.classes().iter().map(ids).collect() }
    }

    pub fn build(&self) -> Result<Partition> {
        Partition::from_classes(self.classes.iter().map(|c| c.iter().copied().map(VertexId).collect()))
    }
}

impl QuasigraphDoc {
    /// Every hyperedge appears in `rep`, unused ones as `null`.
    pub fn of(pi: &Quasigraph, with_host: bool) -> QuasigraphDoc {
        let h = pi.host();
        let rep = h.edges().map(|(id, e)| (e.name.to_string(), pi.rep(id).map(|[a, b]| [a.0, b.0]))).collect();
        QuasigraphDoc { hypergraph: with_host.then(|| HypergraphDoc::of(h)), rep }
    }

    /// Builds over the embedded host, or over `host` when none is embedded.
    pub fn build(&self, host: Option<Arc<Hypergraph3>>) -> Result<Quasigraph> {
        let host = match (&self.hypergraph, host) {
            (Some(doc), Some(given)) => {
                let own = doc.build()?;
                if own != *given {
                    return Err(Error::Domain("embedded hypergraph differs from the input hypergraph".into()));
                }
                given
            }
            (Some(doc), None) => Arc::new(doc.build()?),
            (None, Some(given)) => given,
            (None, None) => return Err(Error::Domain("quasigraph has no hypergraph".into())),
        };
        let mut pi = Quasigraph::empty(host.clone());
        for (name, r) in &self.rep {
            let id = host.find(name).ok_or_else(|| Error::Domain(format!("unknown hyperedge {name:?}")))?;
            pi.set(id, r.map(|[a, b]| [VertexId(a), VertexId(b)]))?;
        }
        Ok(pi)
    }
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph3> {
    parse::<HypergraphDoc>(text)?.build()
}

pub fn parse_multigraph(text: &str) -> Result<Multigraph> {
    parse::<MultigraphDoc>(text)?.build()
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    parse::<PartitionDoc>(text)?.build()
}

pub fn parse_quasigraph(text: &str, host: Option<Arc<Hypergraph3>>) -> Result<Quasigraph> {
    parse::<QuasigraphDoc>(text)?.build(host)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let h = Hypergraph3::build(&[1, 2, 3], &[("a", &[1, 2]), ("t", &[1, 2, 3])]).unwrap();
        let text = serde_json::to_string(&HypergraphDoc::of(&h)).unwrap();
        assert_eq!(parse_hypergraph(&text).unwrap(), h);

        let g = Multigraph::build(&[1, 2], &[("x", 1, 2), ("y", 2, 1)]).unwrap();
        let text = serde_json::to_string(&MultigraphDoc::of(&g)).unwrap();
        assert_eq!(parse_multigraph(&text).unwrap(), g);

        let pi = Quasigraph::with_reps(Arc::new(h), &[("t", [1, 3])]).unwrap();
        let text = serde_json::to_string(&QuasigraphDoc::of(&pi, true)).unwrap();
        assert_eq!(parse_quasigraph(&text, None).unwrap(), pi);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(parse_hypergraph("{\"vertices\":[1]}"), Err(Error::Parse(_))));
        let dup = r#"{"vertices":[1,2],"edges":[{"id":"x","ends":[1,2]},{"id":"x","ends":[1,2]}]}"#;
        assert!(matches!(parse_multigraph(dup), Err(Error::Domain(_))));
        assert!(parse_partition(r#"{"classes":[[1,2],[2]]}"#).is_err());
        let q = r#"{"rep":{"a":[1,2]}}"#;
        assert!(parse_quasigraph(q, None).is_err());
    }
}
