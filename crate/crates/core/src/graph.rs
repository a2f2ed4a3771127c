//! The universal graph value.
//!
//! One container covers every kind: node and edge records carry optional
//! types, occurrence indices and attributes, edges are either ordered pairs
//! or numbered hyperedges, and a graph is a list of timestamped snapshots.
//! A static graph has exactly one snapshot at time 0.

use std::collections::BTreeMap;
use std::fmt;

use crate::attr::{AttrValue, Symbol};
use crate::error::{Error, Result};
use crate::kind::GraphKind;
use crate::validate::validate;

/// A node reference: an id, plus its type in node-heterogeneous graphs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeKey {
    pub id: u64,
    pub ty: Option<Symbol>,
}

impl NodeKey {
    pub fn new(id: u64) -> Self {
        NodeKey { id, ty: None }
    }

    pub fn typed(id: u64, ty: impl Into<Symbol>) -> Self {
        NodeKey {
            id,
            ty: Some(ty.into()),
        }
    }
}

impl From<u64> for NodeKey {
    fn from(id: u64) -> Self {
        NodeKey::new(id)
    }
}

impl From<(u64, &str)> for NodeKey {
    fn from((id, ty): (u64, &str)) -> Self {
        NodeKey::typed(id, ty)
    }
}

impl fmt::Display for NodeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)?;
        if let Some(ty) = &self.ty {
            write!(f, "/{ty}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeRecord {
    pub key: NodeKey,
    /// Occurrence index in an ordered multiset, starting at 1.
    pub multiplicity: u32,
    pub attr: Option<AttrValue>,
}

impl NodeRecord {
    pub fn new(key: impl Into<NodeKey>) -> Self {
        NodeRecord {
            key: key.into(),
            multiplicity: 1,
            attr: None,
        }
    }

    pub fn mult(mut self, m: u32) -> Self {
        self.multiplicity = m;
        self
    }

    pub fn attr(mut self, a: AttrValue) -> Self {
        self.attr = Some(a);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoints {
    Simple(NodeKey, NodeKey),
    /// A hyperedge: its node set together with the numbering of each node.
    Hyper(BTreeMap<NodeKey, u32>),
}

impl Endpoints {
    pub fn nodes(&self) -> Vec<&NodeKey> {
        match self {
            Endpoints::Simple(u, v) => vec![u, v],
            Endpoints::Hyper(map) => map.keys().collect(),
        }
    }

    pub fn map_nodes(&self, mut f: impl FnMut(&NodeKey) -> NodeKey) -> Endpoints {
        match self {
            Endpoints::Simple(u, v) => Endpoints::Simple(f(u), f(v)),
            Endpoints::Hyper(map) => Endpoints::Hyper(map.iter().map(|(k, n)| (f(k), *n)).collect()),
        }
    }

    pub fn is_hyper(&self) -> bool {
        matches!(self, Endpoints::Hyper(_))
    }
}

impl fmt::Display for Endpoints {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoints::Simple(u, v) => write!(f, "{u} -> {v}"),
            Endpoints::Hyper(map) => {
                f.write_str("{")?;
                for (i, (k, n)) in map.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k}:{n}")?;
                }
                f.write_str("}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRecord {
    pub ends: Endpoints,
    pub edge_type: Option<Symbol>,
    pub multiplicity: u32,
    pub attr: Option<AttrValue>,
}

impl EdgeRecord {
    pub fn new(ends: Endpoints) -> Self {
        EdgeRecord {
            ends,
            edge_type: None,
            multiplicity: 1,
            attr: None,
        }
    }

    pub fn simple(u: impl Into<NodeKey>, v: impl Into<NodeKey>) -> Self {
        EdgeRecord::new(Endpoints::Simple(u.into(), v.into()))
    }

    pub fn hyper<K: Into<NodeKey>>(numbering: impl IntoIterator<Item = (K, u32)>) -> Self {
        EdgeRecord::new(Endpoints::Hyper(
            numbering.into_iter().map(|(k, n)| (k.into(), n)).collect(),
        ))
    }

    pub fn typed(mut self, ty: impl Into<Symbol>) -> Self {
        self.edge_type = Some(ty.into());
        self
    }

    pub fn mult(mut self, m: u32) -> Self {
        self.multiplicity = m;
        self
    }

    pub fn attr(mut self, a: AttrValue) -> Self {
        self.attr = Some(a);
        self
    }

    /// The record's identity without its occurrence index.
    pub fn shape(&self) -> (&Endpoints, &Option<Symbol>) {
        (&self.ends, &self.edge_type)
    }
}

impl fmt::Display for EdgeRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ends)?;
        if let Some(t) = &self.edge_type {
            write!(f, " :{t}")?;
        }
        if self.multiplicity != 1 {
            write!(f, " #{}", self.multiplicity)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Snapshot {
    pub time: i64,
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<EdgeRecord>,
}

impl Snapshot {
    pub fn new(time: i64) -> Self {
        Snapshot {
            time,
            ..Default::default()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.edges.is_empty()
    }

    fn sort(&mut self) {
        self.nodes.sort();
        self.edges.sort();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphValue {
    pub kind: GraphKind,
    pub snapshots: Vec<Snapshot>,
}

impl GraphValue {
    /// The empty graph of a kind: one empty snapshot at time 0 when static,
    /// no snapshots at all when dynamic.
    pub fn empty(kind: GraphKind) -> Self {
        let snapshots = if kind.dynamic {
            Vec::new()
        } else {
            vec![Snapshot::new(0)]
        };
        GraphValue { kind, snapshots }
    }

    pub fn builder(kind: GraphKind) -> GraphBuilder {
        GraphBuilder::new(kind)
    }

    pub fn with_kind(mut self, kind: GraphKind) -> Self {
        self.kind = kind;
        self
    }

    /// Sorts records and snapshots without checking validity.
    pub fn sorted(&self) -> GraphValue {
        let mut g = self.clone();
        g.sort_in_place();
        g
    }

    pub(crate) fn sort_in_place(&mut self) {
        self.snapshots.iter_mut().for_each(Snapshot::sort);
        self.snapshots.sort_by_key(|s| s.time);
    }

    /// Normal form: nodes by (id, type, occurrence), edges by (endpoints,
    /// type, occurrence), snapshots by timestamp.
    pub fn canonicalize(&self) -> Result<GraphValue> {
        let diags = validate(self);
        if !diags.is_empty() {
            return Err(Error::InvalidGraph(diags));
        }
        Ok(self.sorted())
    }

    /// Identity-based equality: same kind and the same records, attributes
    /// included, regardless of listing order.
    pub fn equals(&self, other: &GraphValue) -> bool {
        if self.kind != other.kind || self.snapshots.len() != other.snapshots.len() {
            return false;
        }
        self.sorted() == other.sorted()
    }

    pub fn node_count(&self) -> usize {
        self.snapshots.iter().map(|s| s.nodes.len()).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.snapshots.iter().map(|s| s.edges.len()).sum()
    }

    /// The single snapshot of a static graph.
    pub fn static_snapshot(&self) -> Option<&Snapshot> {
        match self.snapshots.as_slice() {
            [s] if !self.kind.dynamic => Some(s),
            _ => None,
        }
    }
}

/// Incremental construction, mostly for tests and fixtures. Records go into
/// the snapshot selected by [`GraphBuilder::at`]; a static graph only ever
/// has the snapshot at time 0.
pub struct GraphBuilder {
    kind: GraphKind,
    snapshots: Vec<Snapshot>,
    current: Option<usize>,
}

impl GraphBuilder {
    pub fn new(kind: GraphKind) -> Self {
        let g = GraphValue::empty(kind);
        let current = if kind.dynamic { None } else { Some(0) };
        GraphBuilder {
            kind,
            snapshots: g.snapshots,
            current,
        }
    }

    pub fn at(mut self, time: i64) -> Self {
        match self.snapshots.iter().position(|s| s.time == time) {
            Some(i) => self.current = Some(i),
            None => {
                self.snapshots.push(Snapshot::new(time));
                self.current = Some(self.snapshots.len() - 1);
            }
        }
        self
    }

    fn snap(&mut self) -> &mut Snapshot {
        let i = match self.current {
            Some(i) => i,
            None => {
                self.snapshots.push(Snapshot::new(0));
                self.snapshots.len() - 1
            }
        };
        self.current = Some(i);
        &mut self.snapshots[i]
    }

    pub fn node(self, id: u64) -> Self {
        self.node_rec(NodeRecord::new(id))
    }

    pub fn node_rec(mut self, rec: NodeRecord) -> Self {
        self.snap().nodes.push(rec);
        self
    }

    pub fn edge(self, u: u64, v: u64) -> Self {
        self.edge_rec(EdgeRecord::simple(u, v))
    }

    pub fn edge_rec(mut self, rec: EdgeRecord) -> Self {
        self.snap().edges.push(rec);
        self
    }

    pub fn build(self) -> GraphValue {
        GraphValue {
            kind: self.kind,
            snapshots: self.snapshots,
        }
        .sorted()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn directed() -> GraphKind {
        GraphKind::default()
    }

    #[test]
    fn canonicalize_sorts_nodes() {
        let g = GraphValue {
            kind: directed(),
            snapshots: vec![Snapshot {
                time: 0,
                nodes: vec![NodeRecord::new(2), NodeRecord::new(1)],
                edges: vec![],
            }],
        };
        let c = g.canonicalize().unwrap();
        let ids: Vec<u64> = c.snapshots[0].nodes.iter().map(|n| n.key.id).collect();
        assert_eq!(ids, [1, 2]);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let g = GraphValue::builder(directed()).node(1).node(2).edge(1, 2).build();
        let once = g.canonicalize().unwrap();
        assert_eq!(once, g);
        assert_eq!(once.canonicalize().unwrap(), once);
    }

    #[test]
    fn canonicalize_orders_occurrences() {
        let kind: GraphKind = "multi".parse().unwrap();
        let g = GraphValue {
            kind,
            snapshots: vec![Snapshot {
                time: 0,
                nodes: vec![NodeRecord::new(1), NodeRecord::new(2)],
                edges: vec![EdgeRecord::simple(1, 2).mult(2), EdgeRecord::simple(1, 2)],
            }],
        };
        let c = g.canonicalize().unwrap();
        let mults: Vec<u32> = c.snapshots[0].edges.iter().map(|e| e.multiplicity).collect();
        assert_eq!(mults, [1, 2]);
    }

    #[test]
    fn canonicalize_rejects_invalid_graphs() {
        let g = GraphValue::builder(directed()).node(1).edge(1, 2).build();
        assert!(matches!(g.canonicalize(), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn equality_is_listing_order_independent() {
        let g = GraphValue::builder(directed()).node(1).node(2).edge(1, 2).build();
        assert!(g.equals(&g));
        let permuted = GraphValue {
            kind: directed(),
            snapshots: vec![Snapshot {
                time: 0,
                nodes: vec![NodeRecord::new(2), NodeRecord::new(1)],
                edges: vec![EdgeRecord::simple(1, 2)],
            }],
        };
        assert!(g.equals(&permuted));
        let bigger = GraphValue::builder(directed())
            .node(1)
            .node(2)
            .node(3)
            .edge(1, 2)
            .build();
        assert!(!g.equals(&bigger));
    }

    #[test]
    fn equality_sees_attributes() {
        let kind: GraphKind = "attributed".parse().unwrap();
        let a = GraphValue::builder(kind)
            .node_rec(NodeRecord::new(1).attr(AttrValue::sym("a")))
            .build();
        let b = GraphValue::builder(kind)
            .node_rec(NodeRecord::new(1).attr(AttrValue::Blank))
            .build();
        assert!(!a.equals(&b));
    }
}
