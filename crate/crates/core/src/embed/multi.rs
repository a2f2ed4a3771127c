//! Collapsing occurrences of an ordered multiset into one record.

use std::collections::BTreeMap;

use super::{map_snapshots, Direction, Embedding, Property};
use crate::attr::{AttrValue, Symbol};
use crate::error::{Error, Result};
use crate::graph::{EdgeRecord, Endpoints, GraphValue, NodeKey, NodeRecord, Snapshot};
use crate::kind::{Attribution, GraphKind};

/// Each node or edge keeps one record whose attribute is the sequence of its
/// occurrences' attributes, in occurrence order.
pub struct MultiToSimple;

impl Embedding for MultiToSimple {
    fn name(&self) -> &'static str {
        "multi_to_simple"
    }
    fn lemma(&self) -> &'static str {
        "Lemma 7"
    }
    fn property(&self) -> Property {
        Property::Multi
    }
    fn direction(&self) -> Direction {
        Direction::Remove
    }
    fn accepts(&self, kind: &GraphKind) -> bool {
        kind.is_attributed()
    }
    fn target_kind(&self, source: &GraphKind) -> GraphKind {
        GraphKind {
            multi_node: false,
            multi_edge: false,
            attributed: Attribution::Full,
            ..*source
        }
    }

    fn encode(&self, g: &GraphValue) -> Result<GraphValue> {
        let blank = AttrValue::Blank;
        map_snapshots(g, self.target_kind(&g.kind), |s| {
            let mut nodes: BTreeMap<&NodeKey, Vec<AttrValue>> = BTreeMap::new();
            for n in &s.nodes {
                nodes
                    .entry(&n.key)
                    .or_default()
                    .push(n.attr.as_ref().unwrap_or(&blank).clone());
            }
            let mut edges: BTreeMap<(&Endpoints, &Option<Symbol>), Vec<AttrValue>> =
                BTreeMap::new();
            for e in &s.edges {
                edges
                    .entry(e.shape())
                    .or_default()
                    .push(e.attr.as_ref().unwrap_or(&blank).clone());
            }
            Ok(Snapshot {
                time: s.time,
                nodes: nodes
                    .into_iter()
                    .map(|(k, attrs)| NodeRecord::new(k.clone()).attr(AttrValue::Seq(attrs)))
                    .collect(),
                edges: edges
                    .into_iter()
                    .map(|((ends, ty), attrs)| EdgeRecord {
                        ends: ends.clone(),
                        edge_type: ty.clone(),
                        multiplicity: 1,
                        attr: Some(AttrValue::Seq(attrs)),
                    })
                    .collect(),
            })
        })
    }

    fn decode(&self, g: &GraphValue, source: &GraphKind) -> Result<GraphValue> {
        let items = |a: &Option<AttrValue>, what: &dyn std::fmt::Display| {
            a.as_ref()
                .and_then(AttrValue::as_seq)
                .map(<[AttrValue]>::to_vec)
                .ok_or_else(|| Error::NotInImage {
                    embedding: self.name(),
                    reason: format!("{what} does not carry a sequence"),
                })
        };
        map_snapshots(g, *source, |s| {
            let mut out = Snapshot::new(s.time);
            for n in &s.nodes {
                for (i, a) in items(&n.attr, &format_args!("node {}", n.key))?.into_iter().enumerate() {
                    out.nodes.push(NodeRecord {
                        key: n.key.clone(),
                        multiplicity: i as u32 + 1,
                        attr: Some(a),
                    });
                }
            }
            for e in &s.edges {
                for (i, a) in items(&e.attr, &format_args!("edge {e}"))?.into_iter().enumerate() {
                    out.edges.push(EdgeRecord {
                        ends: e.ends.clone(),
                        edge_type: e.edge_type.clone(),
                        multiplicity: i as u32 + 1,
                        attr: Some(a),
                    });
                }
            }
            Ok(out)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(spec: &str) -> GraphKind {
        spec.parse().unwrap()
    }

    #[test]
    fn node_occurrences_become_a_sequence() {
        let g = GraphValue::builder(kind("multi,attributed"))
            .node_rec(NodeRecord::new(1).attr(AttrValue::sym("a")))
            .node_rec(NodeRecord::new(1).mult(2).attr(AttrValue::sym("b")))
            .build();
        let out = MultiToSimple.forward(&g).unwrap();
        assert_eq!(out.kind, kind("attributed"));
        assert_eq!(
            out.snapshots[0].nodes,
            [NodeRecord::new(1).attr(AttrValue::seq([AttrValue::sym("a"), AttrValue::sym("b")]))]
        );
        assert_eq!(MultiToSimple.inverse(&out, &g.kind).unwrap(), g);
    }

    #[test]
    fn simple_input_gives_singleton_sequences() {
        let g = GraphValue::builder(kind("attributed"))
            .node_rec(NodeRecord::new(1).attr(AttrValue::sym("a")))
            .build();
        let out = MultiToSimple.forward(&g).unwrap();
        assert_eq!(
            out.snapshots[0].nodes[0].attr,
            Some(AttrValue::seq([AttrValue::sym("a")]))
        );
        assert_eq!(MultiToSimple.inverse(&out, &g.kind).unwrap(), g);
    }

    #[test]
    fn triple_edge_keeps_its_order() {
        let mut b = GraphValue::builder(kind("multi-edge,attributed"))
            .node_rec(NodeRecord::new(1).attr(AttrValue::Blank))
            .node_rec(NodeRecord::new(2).attr(AttrValue::Blank));
        for (m, w) in [(1, "x"), (2, "y"), (3, "z")] {
            b = b.edge_rec(EdgeRecord::simple(1, 2).mult(m).attr(AttrValue::sym(w)));
        }
        let g = b.build();
        let out = MultiToSimple.forward(&g).unwrap();
        assert_eq!(
            out.snapshots[0].edges[0].attr,
            Some(AttrValue::seq(["x", "y", "z"].map(AttrValue::sym)))
        );
        assert_eq!(MultiToSimple.inverse(&out, &g.kind).unwrap(), g);
    }

    #[test]
    fn empty_sequence_is_not_in_image() {
        let g = GraphValue::builder(kind("attributed"))
            .node_rec(NodeRecord::new(1).attr(AttrValue::seq([])))
            .build();
        assert!(MultiToSimple.inverse(&g, &kind("multi,attributed")).is_err());
    }
}
