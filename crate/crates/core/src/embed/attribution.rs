//! Adding and removing attributes.

use std::collections::BTreeMap;

use super::{map_snapshots, Direction, Embedding, Property};
use crate::attr::{AttrValue, Symbol};
use crate::error::{Error, Result};
use crate::graph::{EdgeRecord, Endpoints, GraphValue, NodeKey, NodeRecord, Snapshot};
use crate::kind::{Attribution, GraphKind};

/// Every node and edge gets the blank attribute σ.
pub struct UnattributedToAttributed;

impl Embedding for UnattributedToAttributed {
    fn name(&self) -> &'static str {
        "unattributed_to_attributed"
    }
    fn lemma(&self) -> &'static str {
        "Lemma 3"
    }
    fn property(&self) -> Property {
        Property::Attributed
    }
    fn direction(&self) -> Direction {
        Direction::Add
    }
    fn accepts(&self, kind: &GraphKind) -> bool {
        kind.attributed == Attribution::None
    }
    fn target_kind(&self, source: &GraphKind) -> GraphKind {
        GraphKind {
            attributed: Attribution::Full,
            ..*source
        }
    }

    fn encode(&self, g: &GraphValue) -> Result<GraphValue> {
        map_snapshots(g, self.target_kind(&g.kind), |s| {
            Ok(Snapshot {
                time: s.time,
                nodes: s
                    .nodes
                    .iter()
                    .map(|n| n.clone().attr(AttrValue::Blank))
                    .collect(),
                edges: s
                    .edges
                    .iter()
                    .map(|e| e.clone().attr(AttrValue::Blank))
                    .collect(),
            })
        })
    }

    fn decode(&self, g: &GraphValue, source: &GraphKind) -> Result<GraphValue> {
        let check = |a: &Option<AttrValue>, what: &dyn std::fmt::Display| match a {
            Some(AttrValue::Blank) => Ok(()),
            _ => Err(Error::NotInImage {
                embedding: self.name(),
                reason: format!("{what} carries an attribute other than σ"),
            }),
        };
        map_snapshots(g, *source, |s| {
            let mut out = Snapshot::new(s.time);
            for n in &s.nodes {
                check(&n.attr, &format_args!("node {}", n.key))?;
                out.nodes.push(NodeRecord { attr: None, ..n.clone() });
            }
            for e in &s.edges {
                check(&e.attr, &format_args!("edge {e}"))?;
                out.edges.push(EdgeRecord { attr: None, ..e.clone() });
            }
            Ok(out)
        })
    }
}

/// Attributes become types: a node `v` with attribute `a` becomes `(v, "a")`
/// and an edge with attribute `w` gets type `"w"`, where the type is the
/// attribute's text rendering. Since the rendering is unambiguous, the
/// inverse parses the types back into attributes.
///
/// The source must be simple and homogeneous: occurrences of a multigraph
/// would lose their order once split by type, and existing types would have
/// to share the single type slot.
pub struct AttributedToHeterogeneous;

impl AttributedToHeterogeneous {
    fn to_type(a: &Option<AttrValue>) -> Symbol {
        Symbol::new(a.as_ref().unwrap_or(&AttrValue::Blank).to_string())
    }

    fn type_to_attr(&self, ty: &Option<Symbol>, what: &dyn std::fmt::Display) -> Result<AttrValue> {
        ty.as_ref()
            .and_then(|t| t.as_str().parse().ok())
            .ok_or_else(|| Error::NotInImage {
                embedding: self.name(),
                reason: format!("type of {what} is not an attribute rendering"),
            })
    }
}

impl Embedding for AttributedToHeterogeneous {
    fn name(&self) -> &'static str {
        "attributed_to_heterogeneous"
    }
    fn lemma(&self) -> &'static str {
        "Lemma 4"
    }
    fn property(&self) -> Property {
        Property::Attributed
    }
    fn direction(&self) -> Direction {
        Direction::Remove
    }
    fn accepts(&self, kind: &GraphKind) -> bool {
        kind.is_attributed() && !kind.is_multi() && !kind.is_hetero()
    }
    fn target_kind(&self, source: &GraphKind) -> GraphKind {
        GraphKind {
            attributed: Attribution::None,
            hetero_node: true,
            hetero_edge: true,
            ..*source
        }
    }

    fn encode(&self, g: &GraphValue) -> Result<GraphValue> {
        map_snapshots(g, self.target_kind(&g.kind), |s| {
            let typed: BTreeMap<&NodeKey, NodeKey> = s
                .nodes
                .iter()
                .map(|n| (&n.key, NodeKey { id: n.key.id, ty: Some(Self::to_type(&n.attr)) }))
                .collect();
            let nodes = s
                .nodes
                .iter()
                .map(|n| NodeRecord {
                    key: typed[&n.key].clone(),
                    multiplicity: n.multiplicity,
                    attr: None,
                })
                .collect();
            let edges = s
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    ends: e.ends.map_nodes(|k| typed[k].clone()),
                    edge_type: Some(Self::to_type(&e.attr)),
                    multiplicity: e.multiplicity,
                    attr: None,
                })
                .collect();
            Ok(Snapshot {
                time: s.time,
                nodes,
                edges,
            })
        })
    }

    fn decode(&self, g: &GraphValue, source: &GraphKind) -> Result<GraphValue> {
        let strip = |k: &NodeKey| NodeKey::new(k.id);
        map_snapshots(g, *source, |s| {
            let mut out = Snapshot::new(s.time);
            for n in &s.nodes {
                out.nodes.push(NodeRecord {
                    key: strip(&n.key),
                    multiplicity: n.multiplicity,
                    attr: Some(self.type_to_attr(&n.key.ty, &format_args!("node {}", n.key))?),
                });
            }
            for e in &s.edges {
                out.edges.push(EdgeRecord {
                    ends: e.ends.map_nodes(strip),
                    edge_type: None,
                    multiplicity: e.multiplicity,
                    attr: Some(self.type_to_attr(&e.edge_type, &format_args!("edge {e}"))?),
                });
            }
            Ok(out)
        })
    }
}

/// Positive integer attributes become multiplicities: a node with attribute
/// k appears k times, likewise for edges.
pub struct IntAttributedToMultigraph;

fn occurrences(what: &dyn std::fmt::Display, a: &Option<AttrValue>, name: &'static str) -> Result<u32> {
    a.as_ref()
        .and_then(AttrValue::as_int)
        .filter(|k| *k >= 1)
        .and_then(|k| u32::try_from(k).ok())
        .ok_or_else(|| Error::InvalidSource {
            embedding: name,
            reason: format!("{what} needs a positive integer attribute"),
        })
}

fn expand(s: &Snapshot, name: &'static str) -> Result<Snapshot> {
    let mut out = Snapshot::new(s.time);
    for n in &s.nodes {
        let k = occurrences(&format_args!("node {}", n.key), &n.attr, name)?;
        out.nodes.extend((1..=k).map(|m| NodeRecord::new(n.key.clone()).mult(m)));
    }
    for e in &s.edges {
        let k = occurrences(&format_args!("edge {e}"), &e.attr, name)?;
        out.edges.extend((1..=k).map(|m| EdgeRecord::new(e.ends.clone()).mult(m)).map(|r| {
            EdgeRecord {
                edge_type: e.edge_type.clone(),
                ..r
            }
        }));
    }
    Ok(out)
}

fn count(s: &Snapshot) -> Snapshot {
    let mut nodes: BTreeMap<&NodeKey, i64> = BTreeMap::new();
    for n in &s.nodes {
        *nodes.entry(&n.key).or_default() += 1;
    }
    let mut edges: BTreeMap<(&Endpoints, &Option<Symbol>), i64> = BTreeMap::new();
    for e in &s.edges {
        *edges.entry(e.shape()).or_default() += 1;
    }
    Snapshot {
        time: s.time,
        nodes: nodes
            .into_iter()
            .map(|(k, c)| NodeRecord::new(k.clone()).attr(AttrValue::Int(c)))
            .collect(),
        edges: edges
            .into_iter()
            .map(|((ends, ty), c)| EdgeRecord {
                ends: ends.clone(),
                edge_type: ty.clone(),
                multiplicity: 1,
                attr: Some(AttrValue::Int(c)),
            })
            .collect(),
    }
}

impl Embedding for IntAttributedToMultigraph {
    fn name(&self) -> &'static str {
        "int_attributed_to_multigraph"
    }
    fn lemma(&self) -> &'static str {
        "Lemma 5"
    }
    fn property(&self) -> Property {
        Property::Attributed
    }
    fn direction(&self) -> Direction {
        Direction::Remove
    }
    fn accepts(&self, kind: &GraphKind) -> bool {
        kind.attributed == Attribution::IntegerOnly && !kind.is_multi()
    }
    fn target_kind(&self, source: &GraphKind) -> GraphKind {
        GraphKind {
            attributed: Attribution::None,
            multi_node: true,
            multi_edge: true,
            ..*source
        }
    }

    fn encode(&self, g: &GraphValue) -> Result<GraphValue> {
        map_snapshots(g, self.target_kind(&g.kind), |s| expand(s, self.name()))
    }

    fn decode(&self, g: &GraphValue, source: &GraphKind) -> Result<GraphValue> {
        map_snapshots(g, *source, |s| Ok(count(s)))
    }
}

/// The converse of [`IntAttributedToMultigraph`]: occurrence counts become
/// integer attributes.
pub struct MultigraphToIntAttributed;

impl Embedding for MultigraphToIntAttributed {
    fn name(&self) -> &'static str {
        "multigraph_to_int_attributed"
    }
    fn lemma(&self) -> &'static str {
        "Lemma 5"
    }
    fn property(&self) -> Property {
        Property::Attributed
    }
    fn direction(&self) -> Direction {
        Direction::Add
    }
    fn accepts(&self, kind: &GraphKind) -> bool {
        kind.attributed == Attribution::None && kind.is_multi()
    }
    fn target_kind(&self, source: &GraphKind) -> GraphKind {
        GraphKind {
            attributed: Attribution::IntegerOnly,
            multi_node: false,
            multi_edge: false,
            ..*source
        }
    }

    fn encode(&self, g: &GraphValue) -> Result<GraphValue> {
        map_snapshots(g, self.target_kind(&g.kind), |s| Ok(count(s)))
    }

    fn decode(&self, g: &GraphValue, source: &GraphKind) -> Result<GraphValue> {
        map_snapshots(g, *source, |s| {
            expand(s, self.name()).map_err(|e| Error::NotInImage {
                embedding: self.name(),
                reason: e.to_string(),
            })
        })
    }
}
