//! Folding snapshots into one static graph.

use std::collections::BTreeMap;

use super::{map_snapshots, Direction, Embedding, Property};
use crate::attr::{AttrValue, Symbol};
use crate::error::{Error, Result};
use crate::graph::{EdgeRecord, Endpoints, GraphValue, NodeKey, NodeRecord, Snapshot};
use crate::kind::{Attribution, GraphKind};

/// The union of all snapshots, where each record's attribute lists
/// `(attribute, t)` for every timestamp `t` at which it exists, in time
/// order. Records without an attribute contribute `(σ, t)`.
pub struct DynamicToStatic;

type NodeId = (NodeKey, u32);
type EdgeId = (Endpoints, Option<Symbol>, u32);

impl Embedding for DynamicToStatic {
    fn name(&self) -> &'static str {
        "dynamic_to_static"
    }
    fn lemma(&self) -> &'static str {
        "Lemma 9"
    }
    fn property(&self) -> Property {
        Property::Dynamic
    }
    fn direction(&self) -> Direction {
        Direction::Remove
    }
    fn accepts(&self, kind: &GraphKind) -> bool {
        kind.dynamic
    }
    fn target_kind(&self, source: &GraphKind) -> GraphKind {
        GraphKind {
            dynamic: false,
            attributed: Attribution::Full,
            ..*source
        }
    }

    fn encode(&self, g: &GraphValue) -> Result<GraphValue> {
        let stamp = |a: &Option<AttrValue>, t: i64| {
            AttrValue::pair(a.clone().unwrap_or(AttrValue::Blank), AttrValue::Int(t))
        };
        let mut nodes: BTreeMap<NodeId, Vec<AttrValue>> = BTreeMap::new();
        let mut edges: BTreeMap<EdgeId, Vec<AttrValue>> = BTreeMap::new();
        for s in &g.snapshots {
            for n in &s.nodes {
                nodes
                    .entry((n.key.clone(), n.multiplicity))
                    .or_default()
                    .push(stamp(&n.attr, s.time));
            }
            for e in &s.edges {
                edges
                    .entry((e.ends.clone(), e.edge_type.clone(), e.multiplicity))
                    .or_default()
                    .push(stamp(&e.attr, s.time));
            }
        }
        let snapshot = Snapshot {
            time: 0,
            nodes: nodes
                .into_iter()
                .map(|((key, m), stamps)| NodeRecord {
                    key,
                    multiplicity: m,
                    attr: Some(AttrValue::Seq(stamps)),
                })
                .collect(),
            edges: edges
                .into_iter()
                .map(|((ends, ty, m), stamps)| EdgeRecord {
                    ends,
                    edge_type: ty,
                    multiplicity: m,
                    attr: Some(AttrValue::Seq(stamps)),
                })
                .collect(),
        };
        Ok(GraphValue {
            kind: self.target_kind(&g.kind),
            snapshots: vec![snapshot],
        })
    }

    fn decode(&self, g: &GraphValue, source: &GraphKind) -> Result<GraphValue> {
        let bad = |what: String| Error::NotInImage {
            embedding: self.name(),
            reason: format!("{what} does not carry a timestamp sequence"),
        };
        let stamps = |a: &Option<AttrValue>| -> Option<Vec<(Option<AttrValue>, i64)>> {
            a.as_ref()?
                .as_seq()?
                .iter()
                .map(|entry| {
                    let (attr, t) = entry.as_pair()?;
                    let attr = source.is_attributed().then(|| attr.clone());
                    Some((attr, t.as_int()?))
                })
                .collect()
        };
        let mut snapshots: BTreeMap<i64, Snapshot> = BTreeMap::new();
        for s in &g.snapshots {
            for n in &s.nodes {
                for (attr, t) in stamps(&n.attr).ok_or_else(|| bad(format!("node {}", n.key)))? {
                    snapshots
                        .entry(t)
                        .or_insert_with(|| Snapshot::new(t))
                        .nodes
                        .push(NodeRecord {
                            attr,
                            ..n.clone()
                        });
                }
            }
            for e in &s.edges {
                for (attr, t) in stamps(&e.attr).ok_or_else(|| bad(format!("edge {e}")))? {
                    snapshots
                        .entry(t)
                        .or_insert_with(|| Snapshot::new(t))
                        .edges
                        .push(EdgeRecord {
                            attr,
                            ..e.clone()
                        });
                }
            }
        }
        Ok(GraphValue {
            kind: *source,
            snapshots: snapshots.into_values().collect(),
        })
    }
}

/// A static graph as a dynamic graph with a single snapshot at time 0, or
/// with no snapshots when it has no nodes.
pub struct StaticToDynamic;

impl Embedding for StaticToDynamic {
    fn name(&self) -> &'static str {
        "static_to_dynamic"
    }
    fn lemma(&self) -> &'static str {
        "Lemma 9"
    }
    fn property(&self) -> Property {
        Property::Dynamic
    }
    fn direction(&self) -> Direction {
        Direction::Add
    }
    fn accepts(&self, kind: &GraphKind) -> bool {
        !kind.dynamic
    }
    fn target_kind(&self, source: &GraphKind) -> GraphKind {
        GraphKind {
            dynamic: true,
            ..*source
        }
    }

    fn encode(&self, g: &GraphValue) -> Result<GraphValue> {
        let snapshots = g.snapshots.iter().filter(|s| !s.is_empty()).cloned().collect();
        Ok(GraphValue {
            kind: self.target_kind(&g.kind),
            snapshots,
        })
    }

    fn decode(&self, g: &GraphValue, source: &GraphKind) -> Result<GraphValue> {
        match g.snapshots.as_slice() {
            [] => Ok(GraphValue::empty(*source)),
            [s] if s.time == 0 => map_snapshots(g, *source, |s| Ok(s.clone())),
            _ => Err(Error::NotInImage {
                embedding: self.name(),
                reason: "expected at most one snapshot, at time 0".into(),
            }),
        }
    }
}
