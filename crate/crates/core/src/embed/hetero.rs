//! Moving node and edge types into attributes, and adding trivial types.

use std::collections::BTreeMap;

use super::{map_snapshots, Direction, Embedding, Property};
use crate::attr::{AttrValue, Symbol};
use crate::error::{Error, Result};
use crate::graph::{EdgeRecord, Endpoints, GraphValue, NodeKey, NodeRecord, Snapshot};
use crate::kind::{Attribution, GraphKind};

/// The type given to every record by [`AddNodeTypes`] and [`AddEdgeTypes`].
pub const UNIT_TYPE: &str = "unit";

/// Types are folded into attributes.
///
/// In a node-heterogeneous graph all records sharing an id collapse into one
/// node whose attribute holds `(α, s)` for each record, ordered by type then
/// occurrence; a lone record is stored bare, several as a sequence. Edges
/// between two ids collapse the same way into `(ω, tag)` entries, where the
/// tag holds whatever types the edge record carried: its own type `r`, the
/// endpoint types `(s_a, s_b)` (smaller id first), or `(r, (s_a, s_b))`.
pub struct HeterogeneousToHomogeneous;

fn bundle(mut entries: Vec<(AttrValue, AttrValue)>) -> AttrValue {
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let mut items: Vec<AttrValue> = entries.into_iter().map(|(_, v)| v).collect();
    if items.len() == 1 {
        items.pop().unwrap()
    } else {
        AttrValue::Seq(items)
    }
}

fn unbundle(a: &AttrValue) -> Vec<&AttrValue> {
    match a {
        AttrValue::Seq(items) => items.iter().collect(),
        other => vec![other],
    }
}

fn sym(ty: &Option<Symbol>) -> AttrValue {
    ty.clone().map_or(AttrValue::Blank, AttrValue::Sym)
}

impl HeterogeneousToHomogeneous {
    fn not_in_image(&self, reason: impl Into<String>) -> Error {
        Error::NotInImage {
            embedding: self.name(),
            reason: reason.into(),
        }
    }

    /// Endpoint types oriented smaller id first.
    fn endpoint_tag(u: &NodeKey, v: &NodeKey) -> AttrValue {
        let (a, b) = if u.id > v.id { (v, u) } else { (u, v) };
        AttrValue::pair(sym(&a.ty), sym(&b.ty))
    }

    fn edge_tag(kind: &GraphKind, e: &EdgeRecord, u: &NodeKey, v: &NodeKey) -> AttrValue {
        match (kind.hetero_edge, kind.hetero_node) {
            (true, false) => sym(&e.edge_type),
            (false, true) => Self::endpoint_tag(u, v),
            _ => AttrValue::pair(sym(&e.edge_type), Self::endpoint_tag(u, v)),
        }
    }

    /// Recovers (edge type, u type, v type) from a tag on edge `u_id -> v_id`.
    #[allow(clippy::type_complexity)]
    fn read_tag(
        &self,
        kind: &GraphKind,
        tag: &AttrValue,
        u_id: u64,
        v_id: u64,
    ) -> Result<(Option<Symbol>, Option<Symbol>, Option<Symbol>)> {
        let symbol = |a: &AttrValue| {
            a.as_sym()
                .cloned()
                .ok_or_else(|| self.not_in_image("type in tag is not a symbol"))
        };
        let ends = |a: &AttrValue| -> Result<(Option<Symbol>, Option<Symbol>)> {
            let (sa, sb) = a
                .as_pair()
                .ok_or_else(|| self.not_in_image("endpoint tag is not a pair"))?;
            let (sa, sb) = (symbol(sa)?, symbol(sb)?);
            Ok(if u_id > v_id {
                (Some(sb), Some(sa))
            } else {
                (Some(sa), Some(sb))
            })
        };
        match (kind.hetero_edge, kind.hetero_node) {
            (true, false) => Ok((Some(symbol(tag)?), None, None)),
            (false, true) => {
                let (su, sv) = ends(tag)?;
                Ok((None, su, sv))
            }
            _ => {
                let (r, e) = tag
                    .as_pair()
                    .ok_or_else(|| self.not_in_image("edge tag is not a pair"))?;
                let (su, sv) = ends(e)?;
                Ok((Some(symbol(r)?), su, sv))
            }
        }
    }
}

impl Embedding for HeterogeneousToHomogeneous {
    fn name(&self) -> &'static str {
        "heterogeneous_to_homogeneous"
    }
    fn lemma(&self) -> &'static str {
        "Lemma 8"
    }
    fn property(&self) -> Property {
        Property::Heterogeneous
    }
    fn direction(&self) -> Direction {
        Direction::Remove
    }
    fn accepts(&self, kind: &GraphKind) -> bool {
        kind.is_attributed() && kind.is_hetero() && !kind.hyper
    }
    fn target_kind(&self, source: &GraphKind) -> GraphKind {
        GraphKind {
            hetero_node: false,
            hetero_edge: false,
            attributed: Attribution::Full,
            ..*source
        }
    }

    fn encode(&self, g: &GraphValue) -> Result<GraphValue> {
        let kind = g.kind;
        map_snapshots(g, self.target_kind(&kind), |s| {
            let nodes = if kind.hetero_node {
                let mut by_id: BTreeMap<u64, Vec<(AttrValue, AttrValue)>> = BTreeMap::new();
                for n in &s.nodes {
                    let ty = sym(&n.key.ty);
                    let alpha = n.attr.clone().unwrap_or(AttrValue::Blank);
                    by_id.entry(n.key.id).or_default().push((
                        AttrValue::pair(ty.clone(), AttrValue::Int(n.multiplicity.into())),
                        AttrValue::pair(alpha, ty),
                    ));
                }
                by_id
                    .into_iter()
                    .map(|(id, entries)| NodeRecord::new(id).attr(bundle(entries)))
                    .collect()
            } else {
                s.nodes.clone()
            };

            let mut by_ends: BTreeMap<(u64, u64), Vec<(AttrValue, AttrValue)>> = BTreeMap::new();
            for e in &s.edges {
                let Endpoints::Simple(u, v) = &e.ends else {
                    return Err(Error::InvalidSource {
                        embedding: self.name(),
                        reason: format!("edge {e} is a hyperedge"),
                    });
                };
                let tag = Self::edge_tag(&kind, e, u, v);
                let omega = e.attr.clone().unwrap_or(AttrValue::Blank);
                by_ends.entry((u.id, v.id)).or_default().push((
                    AttrValue::pair(tag.clone(), AttrValue::Int(e.multiplicity.into())),
                    AttrValue::pair(omega, tag),
                ));
            }
            let edges = by_ends
                .into_iter()
                .map(|((u, v), entries)| EdgeRecord::simple(u, v).attr(bundle(entries)))
                .collect();
            Ok(Snapshot {
                time: s.time,
                nodes,
                edges,
            })
        })
    }

    fn decode(&self, g: &GraphValue, source: &GraphKind) -> Result<GraphValue> {
        let attr_and = |a: &AttrValue| -> Result<(AttrValue, AttrValue)> {
            let (x, y) = a
                .as_pair()
                .ok_or_else(|| self.not_in_image("entry is not a pair"))?;
            Ok((x.clone(), y.clone()))
        };
        map_snapshots(g, *source, |s| {
            let mut out = Snapshot::new(s.time);
            let mut node_seen: BTreeMap<NodeKey, u32> = BTreeMap::new();
            for n in &s.nodes {
                if !source.hetero_node {
                    out.nodes.push(n.clone());
                    continue;
                }
                let attr = n
                    .attr
                    .as_ref()
                    .ok_or_else(|| self.not_in_image("node without attribute"))?;
                for entry in unbundle(attr) {
                    let (alpha, ty) = attr_and(entry)?;
                    let ty = ty
                        .as_sym()
                        .cloned()
                        .ok_or_else(|| self.not_in_image("node type is not a symbol"))?;
                    let key = NodeKey { id: n.key.id, ty: Some(ty) };
                    let m = node_seen.entry(key.clone()).or_default();
                    *m += 1;
                    out.nodes.push(NodeRecord {
                        key,
                        multiplicity: *m,
                        attr: Some(alpha),
                    });
                }
            }

            let mut edge_seen: BTreeMap<(Endpoints, Option<Symbol>), u32> = BTreeMap::new();
            for e in &s.edges {
                let Endpoints::Simple(u, v) = &e.ends else {
                    return Err(self.not_in_image("hyperedge in image"));
                };
                let attr = e
                    .attr
                    .as_ref()
                    .ok_or_else(|| self.not_in_image("edge without attribute"))?;
                for entry in unbundle(attr) {
                    let (omega, tag) = attr_and(entry)?;
                    let (r, su, sv) = self.read_tag(source, &tag, u.id, v.id)?;
                    let ends = Endpoints::Simple(
                        NodeKey { id: u.id, ty: su },
                        NodeKey { id: v.id, ty: sv },
                    );
                    let m = edge_seen.entry((ends.clone(), r.clone())).or_default();
                    *m += 1;
                    out.edges.push(EdgeRecord {
                        ends,
                        edge_type: r,
                        multiplicity: *m,
                        attr: Some(omega),
                    });
                }
            }
            Ok(out)
        })
    }
}

fn unit() -> Symbol {
    Symbol::new(UNIT_TYPE)
}

/// Gives every node the type [`UNIT_TYPE`].
pub struct AddNodeTypes;

impl Embedding for AddNodeTypes {
    fn name(&self) -> &'static str {
        "add_node_types"
    }
    fn lemma(&self) -> &'static str {
        "Lemma 8"
    }
    fn property(&self) -> Property {
        Property::Heterogeneous
    }
    fn direction(&self) -> Direction {
        Direction::Add
    }
    fn accepts(&self, kind: &GraphKind) -> bool {
        !kind.hetero_node
    }
    fn target_kind(&self, source: &GraphKind) -> GraphKind {
        GraphKind {
            hetero_node: true,
            ..*source
        }
    }

    fn encode(&self, g: &GraphValue) -> Result<GraphValue> {
        let typed = |k: &NodeKey| NodeKey { id: k.id, ty: Some(unit()) };
        map_snapshots(g, self.target_kind(&g.kind), |s| {
            Ok(Snapshot {
                time: s.time,
                nodes: s
                    .nodes
                    .iter()
                    .map(|n| NodeRecord { key: typed(&n.key), ..n.clone() })
                    .collect(),
                edges: s
                    .edges
                    .iter()
                    .map(|e| EdgeRecord { ends: e.ends.map_nodes(typed), ..e.clone() })
                    .collect(),
            })
        })
    }

    fn decode(&self, g: &GraphValue, source: &GraphKind) -> Result<GraphValue> {
        let strip = |k: &NodeKey| NodeKey::new(k.id);
        map_snapshots(g, *source, |s| {
            Ok(Snapshot {
                time: s.time,
                nodes: s
                    .nodes
                    .iter()
                    .map(|n| NodeRecord { key: strip(&n.key), ..n.clone() })
                    .collect(),
                edges: s
                    .edges
                    .iter()
                    .map(|e| EdgeRecord { ends: e.ends.map_nodes(strip), ..e.clone() })
                    .collect(),
            })
        })
    }
}

/// Gives every edge the type [`UNIT_TYPE`].
pub struct AddEdgeTypes;

impl Embedding for AddEdgeTypes {
    fn name(&self) -> &'static str {
        "add_edge_types"
    }
    fn lemma(&self) -> &'static str {
        "Lemma 8"
    }
    fn property(&self) -> Property {
        Property::Heterogeneous
    }
    fn direction(&self) -> Direction {
        Direction::Add
    }
    fn accepts(&self, kind: &GraphKind) -> bool {
        !kind.hetero_edge
    }
    fn target_kind(&self, source: &GraphKind) -> GraphKind {
        GraphKind {
            hetero_edge: true,
            ..*source
        }
    }

    fn encode(&self, g: &GraphValue) -> Result<GraphValue> {
        map_snapshots(g, self.target_kind(&g.kind), |s| {
            Ok(Snapshot {
                time: s.time,
                nodes: s.nodes.clone(),
                edges: s.edges.iter().map(|e| e.clone().typed(unit())).collect(),
            })
        })
    }

    fn decode(&self, g: &GraphValue, source: &GraphKind) -> Result<GraphValue> {
        map_snapshots(g, *source, |s| {
            Ok(Snapshot {
                time: s.time,
                nodes: s.nodes.clone(),
                edges: s
                    .edges
                    .iter()
                    .map(|e| EdgeRecord { edge_type: None, ..e.clone() })
                    .collect(),
            })
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
    fn typed_node_attribute_pairs_with_its_type() {
        let g = GraphValue::builder(kind("hetero-node,attributed"))
            .node_rec(NodeRecord::new((1, "s")).attr(AttrValue::sym("c")))
            .build();
        let out = HeterogeneousToHomogeneous.forward(&g).unwrap();
        assert_eq!(out.kind, kind("attributed"));
        assert_eq!(
            out.snapshots[0].nodes,
            [NodeRecord::new(1).attr(AttrValue::pair(AttrValue::sym("c"), AttrValue::sym("s")))]
        );
        assert_eq!(HeterogeneousToHomogeneous.inverse(&out, &g.kind).unwrap(), g);
    }

    #[test]
    fn single_types_are_reattached() {
        let k = kind("hetero-node,hetero-edge,attributed");
        let g = GraphValue::builder(k)
            .node_rec(NodeRecord::new((1, "s")).attr(AttrValue::Blank))
            .node_rec(NodeRecord::new((2, "s")).attr(AttrValue::Blank))
            .edge_rec(
                EdgeRecord::simple((1, "s"), (2, "s"))
                    .typed("r")
                    .attr(AttrValue::sym("w")),
            )
            .build();
        let out = HeterogeneousToHomogeneous.forward(&g).unwrap();
        assert_eq!(
            out.snapshots[0].edges[0].attr,
            Some(AttrValue::pair(
                AttrValue::sym("w"),
                AttrValue::pair(
                    AttrValue::sym("r"),
                    AttrValue::pair(AttrValue::sym("s"), AttrValue::sym("s"))
                )
            ))
        );
        assert_eq!(HeterogeneousToHomogeneous.inverse(&out, &g.kind).unwrap(), g);
    }

    #[test]
    fn one_id_with_two_types_collapses_into_a_sequence() {
        let g = GraphValue::builder(kind("hetero-node,attributed"))
            .node_rec(NodeRecord::new((1, "s2")).attr(AttrValue::sym("b")))
            .node_rec(NodeRecord::new((1, "s1")).attr(AttrValue::sym("a")))
            .build();
        let out = HeterogeneousToHomogeneous.forward(&g).unwrap();
        assert_eq!(
            out.snapshots[0].nodes[0].attr,
            Some(AttrValue::seq([
                AttrValue::pair(AttrValue::sym("a"), AttrValue::sym("s1")),
                AttrValue::pair(AttrValue::sym("b"), AttrValue::sym("s2")),
            ]))
        );
        assert_eq!(HeterogeneousToHomogeneous.inverse(&out, &g.kind).unwrap(), g);
    }

    #[test]
    fn undirected_edges_between_typed_nodes_stay_symmetric() {
        let k = kind("undirected,hetero-node,attributed");
        let g = GraphValue::builder(k)
            .node_rec(NodeRecord::new((1, "s")).attr(AttrValue::Blank))
            .node_rec(NodeRecord::new((2, "t")).attr(AttrValue::Blank))
            .edge_rec(EdgeRecord::simple((1, "s"), (2, "t")).attr(AttrValue::Blank))
            .edge_rec(EdgeRecord::simple((2, "t"), (1, "s")).attr(AttrValue::Blank))
            .build();
        let out = HeterogeneousToHomogeneous.forward(&g).unwrap();
        assert!(crate::validate(&out).is_empty());
        assert_eq!(HeterogeneousToHomogeneous.inverse(&out, &g.kind).unwrap(), g);
    }

    #[test]
    fn unit_types_come_and_go() {
        let g = GraphValue::builder(kind("directed")).node(1).node(2).edge(1, 2).build();
        let typed = AddNodeTypes.forward(&g).unwrap();
        assert_eq!(typed.snapshots[0].nodes[0].key, NodeKey::typed(1, UNIT_TYPE));
        assert_eq!(AddNodeTypes.inverse(&typed, &g.kind).unwrap(), g);
        let typed = AddEdgeTypes.forward(&g).unwrap();
        assert_eq!(typed.snapshots[0].edges[0].edge_type, Some(unit()));
        assert_eq!(AddEdgeTypes.inverse(&typed, &g.kind).unwrap(), g);
    }

    #[test]
    fn foreign_type_is_not_in_the_unit_image() {
        let g = GraphValue::builder(kind("hetero-node"))
            .node_rec(NodeRecord::new((1, "other")))
            .build();
        assert!(AddNodeTypes.inverse(&g, &kind("directed")).is_err());
    }
}
