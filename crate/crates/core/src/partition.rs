//! Partitions of finite vertex sets.
//!
//! A partition is stored as a map from each vertex to the minimum vertex of
//! its class, so two partitions are equal iff their maps are equal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{domain, Result};
use crate::hypergraph::{VertexId, VertexSet};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    label: BTreeMap<VertexId, VertexId>,
}

impl Partition {
    pub fn from_classes<I: IntoIterator<Item = VertexSet>>(classes: I) -> Result<Partition> {
        let mut label = BTreeMap::new();
        for class in classes {
            let Some(&min) = class.iter().next() else {
                return domain("partition classes must be nonempty");
            };
            for v in class {
                if label.insert(v, min).is_some() {
                    return domain(format!("vertex {v} lies in two classes"));
                }
            }
        }
        Ok(Partition { label })
    }

    /// Builds from `u32` class lists; panics on overlap (test helper).
    pub fn of(classes: &[&[u32]]) -> Partition {
        Partition::from_classes(classes.iter().map(|c| c.iter().copied().map(VertexId).collect()))
            .expect("disjoint classes")
    }

    pub fn trivial(ground: &VertexSet) -> Partition {
        match ground.iter().next() {
            Some(&min) => Partition { label: ground.iter().map(|v| (*v, min)).collect() },
            None => Partition::default(),
        }
    }

    pub fn singletons(ground: &VertexSet) -> Partition {
        Partition { label: ground.iter().map(|v| (*v, *v)).collect() }
    }

    pub fn ground(&self) -> VertexSet {
        self.label.keys().copied().collect()
    }

    pub fn len_ground(&self) -> usize {
        self.label.len()
    }

    pub fn label(&self, v: VertexId) -> Option<VertexId> {
        self.label.get(&v).copied()
    }

    /// Classes in increasing order of their minimum.
    pub fn classes(&self) -> Vec<VertexSet> {
        let mut by: BTreeMap<VertexId, VertexSet> = BTreeMap::new();
        for (v, l) in &self.label {
            by.entry(*l).or_default().insert(*v);
        }
        by.into_values().collect()
    }

    pub fn class_of(&self, v: VertexId) -> VertexSet {
        let l = self.label[&v];
        self.label.iter().filter(|(_, m)| **m == l).map(|(u, _)| *u).collect()
    }

    pub fn num_classes(&self) -> usize {
        self.label.iter().filter(|(v, l)| v == l).count()
    }

    /// At most one class.
    pub fn is_trivial(&self) -> bool {
        self.num_classes() <= 1
    }

    fn same_ground(&self, other: &Partition) -> Result<()> {
        if self.label.len() == other.label.len() && self.label.keys().eq(other.label.keys()) {
            Ok(())
        } else {
            domain("partitions have different ground sets")
        }
    }

    /// `self ≤ other`: every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        self.same_ground(other)?;
        let mut image: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for (v, l) in &self.label {
            let o = other.label[v];
            if *image.entry(*l).or_insert(o) != o {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn strictly_refines(&self, other: &Partition) -> Result<bool> {
        Ok(self != other && self.refines(other)?)
    }

    /// Coarsest common refinement: nonempty intersections of classes.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.same_ground(other)?;
        let mut first: BTreeMap<(VertexId, VertexId), VertexId> = BTreeMap::new();
        let mut label = BTreeMap::new();
        for (v, l) in &self.label {
            let key = (*l, other.label[v]);
            let min = *first.entry(key).or_insert(*v);
            label.insert(*v, min);
        }
        Ok(Partition { label })
    }

    /// `P[Y]`: the nonempty traces of classes on `y`.
    pub fn induced(&self, y: &VertexSet) -> Result<Partition> {
        if let Some(v) = y.iter().find(|v| !self.label.contains_key(v)) {
            return domain(format!("vertex {v} is outside the ground set"));
        }
        let mut first: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut label = BTreeMap::new();
        for v in y {
            let min = *first.entry(self.label[v]).or_insert(*v);
            label.insert(*v, min);
        }
        Ok(Partition { label })
    }

    /// A set crosses the partition if it meets at least two classes.
    pub fn crosses<'a, I: IntoIterator<Item = &'a VertexId>>(&self, set: I) -> bool {
        let mut seen = None;
        for v in set {
            let Some(l) = self.label.get(v) else { continue };
            match seen {
                None => seen = Some(*l),
                Some(s) if s != *l => return true,
                _ => {}
            }
        }
        false
    }

    /// Union of partitions on pairwise disjoint grounds.
    pub fn union<I: IntoIterator<Item = Partition>>(parts: I) -> Result<Partition> {
        let mut label = BTreeMap::new();
        for p in parts {
            for (v, l) in p.label {
                if label.insert(v, l).is_some() {
                    return domain(format!("grounds overlap at vertex {v}"));
                }
            }
        }
        Ok(Partition { label })
    }

    /// Partition whose classes merge those listed in `groups` (sets of labels).
    pub fn merged(&self, groups: &[BTreeSet<VertexId>]) -> Partition {
        let mut remap: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for g in groups {
            let to = *g.iter().next().unwrap();
            for l in g {
                remap.insert(*l, to);
            }
        }
        let raw = self.label.iter().map(|(v, l)| (*v, *remap.get(l).unwrap_or(l)));
        Partition::from_labels(raw)
    }

    /// Canonicalizes arbitrary labels to class minima.
    pub(crate) fn from_labels<I: Iterator<Item = (VertexId, VertexId)>>(raw: I) -> Partition {
        let mut first: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut label = BTreeMap::new();
        let raw: Vec<_> = raw.collect();
        for (v, l) in &raw {
            let min = *first.entry(*l).or_insert(*v);
            label.insert(*v, min);
        }
        // keys iterate in order, so the first vertex seen for a label is the minimum
        Partition { label }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.classes().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, v) in c.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// An eventually constant sequence of partitions, stored up to the first
/// term of its constant tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSequence {
    terms: Vec<Partition>,
}

impl PartitionSequence {
    pub fn new(terms: Vec<Partition>) -> PartitionSequence {
        assert!(!terms.is_empty(), "a partition sequence has at least one term");
        PartitionSequence { terms }
    }

    /// Term `i`; indices past the stored prefix return the limit.
    pub fn term(&self, i: usize) -> &Partition {
        &self.terms[i.min(self.terms.len() - 1)]
    }

    pub fn terms(&self) -> &[Partition] {
        &self.terms
    }

    /// Index from which the sequence is constant.
    pub fn stable_index(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn limit(&self) -> &Partition {
        self.terms.last().unwrap()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LexOrder {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// Lexicographic comparison: at the first differing index, the strictly
/// finer term is the smaller one.
pub fn lex_compare(a: &PartitionSequence, b: &PartitionSequence) -> Result<LexOrder> {
    let len = a.terms.len().max(b.terms.len());
    for i in 0..len {
        let (x, y) = (a.term(i), b.term(i));
        if x == y {
            continue;
        }
        return Ok(if x.refines(y)? {
            LexOrder::Less
        } else if y.refines(x)? {
            LexOrder::Greater
        } else {
            LexOrder::Incomparable
        });
    }
    Ok(LexOrder::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::vset;

    #[test]
    fn meet_examples() {
        let p = Partition::of(&[&[1, 2], &[3]]);
        let r = Partition::of(&[&[1], &[2, 3]]);
        assert_eq!(p.meet(&r).unwrap(), Partition::singletons(&vset([1, 2, 3])));
        assert_eq!(p.meet(&p).unwrap(), p);
        assert_eq!(Partition::trivial(&vset([1, 2, 3])).meet(&p).unwrap(), p);
        assert!(p.meet(&Partition::of(&[&[1, 2]])).is_err());
    }

    #[test]
    fn induced_examples() {
        let p = Partition::of(&[&[1, 2], &[3, 4]]);
        assert_eq!(p.induced(&vset([1, 3])).unwrap(), Partition::of(&[&[1], &[3]]));
        assert_eq!(p.induced(&vset([1, 2])).unwrap(), Partition::of(&[&[1, 2]]));
        assert_eq!(p.induced(&VertexSet::new()).unwrap().num_classes(), 0);
        assert!(p.induced(&vset([9])).is_err());
    }

    #[test]
    fn lex_examples() {
        let g = vset([1, 2, 3]);
        let s = PartitionSequence::new(vec![Partition::singletons(&g)]);
        let t = PartitionSequence::new(vec![Partition::trivial(&g), Partition::singletons(&g)]);
        assert_eq!(lex_compare(&s, &s).unwrap(), LexOrder::Equal);
        assert_eq!(lex_compare(&s, &t).unwrap(), LexOrder::Less);
        assert_eq!(lex_compare(&t, &s).unwrap(), LexOrder::Greater);
        let a = PartitionSequence::new(vec![Partition::of(&[&[1, 2], &[3]])]);
        let b = PartitionSequence::new(vec![Partition::of(&[&[1], &[2, 3]])]);
        assert_eq!(lex_compare(&a, &b).unwrap(), LexOrder::Incomparable);
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(Partition::of(&[&[3], &[2, 1]]).to_string(), "{{1,2},{3}}");
    }
}
