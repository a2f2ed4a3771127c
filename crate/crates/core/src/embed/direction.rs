//! Trading edge direction for edge types or attributes.

use std::collections::BTreeMap;

use super::{map_snapshots, Direction, Embedding, Property};
use crate::attr::{AttrValue, Symbol};
use crate::error::{Error, Result};
use crate::graph::{EdgeRecord, Endpoints, GraphValue, NodeKey, Snapshot};
use crate::kind::{Attribution, GraphKind};

const WITH_ORDER: &str = "0";
const AGAINST_ORDER: &str = "1";

fn simple_ends<'a>(name: &'static str, e: &'a EdgeRecord) -> Result<(&'a NodeKey, &'a NodeKey)> {
    match &e.ends {
        Endpoints::Simple(u, v) => Ok((u, v)),
        Endpoints::Hyper(_) => Err(Error::InvalidSource {
            embedding: name,
            reason: format!("edge {e} is a hyperedge"),
        }),
    }
}

/// Directed edges become undirected typed edges. An edge from the smaller
/// to the larger endpoint (self-loops included) gets type `0`, an edge
/// against that order gets type `1`; both orientations of the pair are
/// stored with that type.
pub struct DirectedToHeterogeneous;

impl Embedding for DirectedToHeterogeneous {
    fn name(&self) -> &'static str {
        "directed_to_heterogeneous"
    }
    fn lemma(&self) -> &'static str {
        "Lemma 2"
    }
    fn property(&self) -> Property {
        Property::Heterogeneous
    }
    fn direction(&self) -> Direction {
        Direction::Add
    }
    fn accepts(&self, kind: &GraphKind) -> bool {
        kind.directed && !kind.hyper && !kind.hetero_edge
    }
    fn target_kind(&self, source: &GraphKind) -> GraphKind {
        GraphKind {
            directed: false,
            hetero_edge: true,
            ..*source
        }
    }

    fn encode(&self, g: &GraphValue) -> Result<GraphValue> {
        map_snapshots(g, self.target_kind(&g.kind), |s| {
            let mut edges = Vec::with_capacity(s.edges.len() * 2);
            for e in &s.edges {
                let (u, v) = simple_ends(self.name(), e)?;
                let ty = if u <= v { WITH_ORDER } else { AGAINST_ORDER };
                let typed = EdgeRecord {
                    edge_type: Some(Symbol::new(ty)),
                    ..e.clone()
                };
                if u != v {
                    edges.push(EdgeRecord {
                        ends: Endpoints::Simple(v.clone(), u.clone()),
                        ..typed.clone()
                    });
                }
                edges.push(typed);
            }
            Ok(Snapshot {
                time: s.time,
                nodes: s.nodes.clone(),
                edges,
            })
        })
    }

    fn decode(&self, g: &GraphValue, source: &GraphKind) -> Result<GraphValue> {
        map_snapshots(g, *source, |s| {
            let mut edges = Vec::with_capacity(s.edges.len() / 2 + 1);
            for e in &s.edges {
                let (u, v) = simple_ends(self.name(), e)?;
                if u > v {
                    continue;
                }
                let ends = match e.edge_type.as_ref().map(Symbol::as_str) {
                    Some(WITH_ORDER) => Endpoints::Simple(u.clone(), v.clone()),
                    Some(AGAINST_ORDER) if u != v => Endpoints::Simple(v.clone(), u.clone()),
                    _ => {
                        return Err(Error::NotInImage {
                            embedding: self.name(),
                            reason: format!("edge {e} has no orientation type"),
                        })
                    }
                };
                edges.push(EdgeRecord {
                    ends,
                    edge_type: None,
                    ..e.clone()
                });
            }
            Ok(Snapshot {
                time: s.time,
                nodes: s.nodes.clone(),
                edges,
            })
        })
    }
}

/// Directed edges become undirected edges whose attribute records the
/// original orientation: `(w, 1)` for an edge from the smaller to the larger
/// endpoint, `(w, -1)` for the reverse, `((w1, 1), (w2, -1))` when both are
/// present. Occurrences of a multi-edge are paired by index.
pub struct DirectedToUndirected;

fn forward(w: AttrValue) -> AttrValue {
    AttrValue::pair(w, AttrValue::Int(1))
}

fn backward(w: AttrValue) -> AttrValue {
    AttrValue::pair(w, AttrValue::Int(-1))
}

/// Splits an undirected edge attribute into its forward and backward parts.
fn orientation(a: &AttrValue) -> Option<(Option<AttrValue>, Option<AttrValue>)> {
    let (w, marker) = a.as_pair()?;
    match marker {
        AttrValue::Int(1) => Some((Some(w.clone()), None)),
        AttrValue::Int(-1) => Some((None, Some(w.clone()))),
        AttrValue::Pair(..) => {
            let (wf, mf) = w.as_pair()?;
            let (wb, mb) = marker.as_pair()?;
            (mf.as_int() == Some(1) && mb.as_int() == Some(-1))
                .then(|| (Some(wf.clone()), Some(wb.clone())))
        }
        _ => None,
    }
}

impl Embedding for DirectedToUndirected {
    fn name(&self) -> &'static str {
        "directed_to_undirected"
    }
    fn lemma(&self) -> &'static str {
        "Lemma 6"
    }
    fn property(&self) -> Property {
        Property::Directed
    }
    fn direction(&self) -> Direction {
        Direction::Remove
    }
    fn accepts(&self, kind: &GraphKind) -> bool {
        kind.directed && !kind.hyper && kind.is_attributed()
    }
    fn target_kind(&self, source: &GraphKind) -> GraphKind {
        GraphKind {
            directed: false,
            attributed: Attribution::Full,
            ..*source
        }
    }

    fn encode(&self, g: &GraphValue) -> Result<GraphValue> {
        type Slot = (Option<AttrValue>, Option<AttrValue>);
        map_snapshots(g, self.target_kind(&g.kind), |s| {
            let mut groups: BTreeMap<(NodeKey, NodeKey, Option<Symbol>), BTreeMap<u32, Slot>> =
                BTreeMap::new();
            for e in &s.edges {
                let (u, v) = simple_ends(self.name(), e)?;
                let w = e.attr.clone().unwrap_or(AttrValue::Blank);
                let (lo, hi, along) = if u <= v {
                    (u, v, true)
                } else {
                    (v, u, false)
                };
                let slot = groups
                    .entry((lo.clone(), hi.clone(), e.edge_type.clone()))
                    .or_default()
                    .entry(e.multiplicity)
                    .or_default();
                if along {
                    slot.0 = Some(w);
                } else {
                    slot.1 = Some(w);
                }
            }
            let mut edges = Vec::new();
            for ((lo, hi, ty), slots) in groups {
                for (mult, slot) in slots {
                    let attr = match slot {
                        (Some(wf), None) => forward(wf),
                        (None, Some(wb)) => backward(wb),
                        (Some(wf), Some(wb)) => AttrValue::pair(forward(wf), backward(wb)),
                        (None, None) => unreachable!("slots are created with a value"),
                    };
                    let rec = EdgeRecord {
                        ends: Endpoints::Simple(lo.clone(), hi.clone()),
                        edge_type: ty.clone(),
                        multiplicity: mult,
                        attr: Some(attr),
                    };
                    if lo != hi {
                        edges.push(EdgeRecord {
                            ends: Endpoints::Simple(hi.clone(), lo.clone()),
                            ..rec.clone()
                        });
                    }
                    edges.push(rec);
                }
            }
            Ok(Snapshot {
                time: s.time,
                nodes: s.nodes.clone(),
                edges,
            })
        })
    }

    fn decode(&self, g: &GraphValue, source: &GraphKind) -> Result<GraphValue> {
        map_snapshots(g, *source, |s| {
            let mut edges = Vec::new();
            for e in &s.edges {
                let (lo, hi) = simple_ends(self.name(), e)?;
                if lo > hi {
                    continue;
                }
                let parts = e.attr.as_ref().and_then(orientation).ok_or_else(|| {
                    Error::NotInImage {
                        embedding: self.name(),
                        reason: format!("edge {e} carries no orientation marker"),
                    }
                })?;
                let mut emit = |u: &NodeKey, v: &NodeKey, w: AttrValue| {
                    edges.push(EdgeRecord {
                        ends: Endpoints::Simple(u.clone(), v.clone()),
                        edge_type: e.edge_type.clone(),
                        multiplicity: e.multiplicity,
                        attr: Some(w),
                    })
                };
                if let Some(wf) = parts.0 {
                    emit(lo, hi, wf);
                }
                if let Some(wb) = parts.1 {
                    emit(hi, lo, wb);
                }
            }
            Ok(Snapshot {
                time: s.time,
                nodes: s.nodes.clone(),
                edges,
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NodeRecord;

    fn kind(spec: &str) -> GraphKind {
        spec.parse().unwrap()
    }

    fn typed_pairs(g: &GraphValue) -> Vec<(u64, u64, String)> {
        g.snapshots[0]
            .edges
            .iter()
            .map(|e| match &e.ends {
                Endpoints::Simple(u, v) => (u.id, v.id, e.edge_type.as_ref().unwrap().as_str().to_string()),
                Endpoints::Hyper(_) => panic!("hyperedge"),
            })
            .collect()
    }

    #[test]
    fn single_edge_becomes_a_typed_undirected_pair() {
        let g = GraphValue::builder(kind("directed")).node(1).node(2).edge(1, 2).build();
        let out = DirectedToHeterogeneous.forward(&g).unwrap();
        assert_eq!(out.kind, kind("undirected,hetero-edge"));
        assert_eq!(
            typed_pairs(&out),
            [(1, 2, "0".to_string()), (2, 1, "0".to_string())]
        );
        assert_eq!(DirectedToHeterogeneous.inverse(&out, &g.kind).unwrap(), g);
    }

    #[test]
    fn both_directions_get_distinct_types() {
        let g = GraphValue::builder(kind("directed"))
            .node(1)
            .node(2)
            .edge(1, 2)
            .edge(2, 1)
            .build();
        let out = DirectedToHeterogeneous.forward(&g).unwrap();
        assert_eq!(out.edge_count(), 4);
        assert_eq!(DirectedToHeterogeneous.inverse(&out, &g.kind).unwrap(), g);
    }

    #[test]
    fn opposite_edges_do_not_collide() {
        let k = kind("directed");
        let a = GraphValue::builder(k).node(1).node(2).edge(1, 2).build();
        let b = GraphValue::builder(k).node(1).node(2).edge(2, 1).build();
        let fa = DirectedToHeterogeneous.forward(&a).unwrap();
        let fb = DirectedToHeterogeneous.forward(&b).unwrap();
        assert!(!fa.equals(&fb));
    }

    #[test]
    fn empty_edge_set_stays_empty() {
        let g = GraphValue::builder(kind("directed")).node(1).build();
        let out = DirectedToHeterogeneous.forward(&g).unwrap();
        assert_eq!(out.edge_count(), 0);
    }

    fn attributed(edges: &[(u64, u64, &str)]) -> GraphValue {
        let mut b = GraphValue::builder(kind("attributed"))
            .node_rec(NodeRecord::new(1).attr(AttrValue::Blank))
            .node_rec(NodeRecord::new(2).attr(AttrValue::Blank));
        for (u, v, w) in edges {
            b = b.edge_rec(EdgeRecord::simple(*u, *v).attr(AttrValue::sym(*w)));
        }
        b.build()
    }

    fn marker(g: &GraphValue) -> AttrValue {
        g.snapshots[0].edges[0].attr.clone().unwrap()
    }

    #[test]
    fn forward_only_edge_is_marked_plus_one() {
        let g = attributed(&[(1, 2, "w")]);
        let out = DirectedToUndirected.forward(&g).unwrap();
        assert_eq!(out.kind, kind("undirected,attributed"));
        assert_eq!(marker(&out), AttrValue::pair(AttrValue::sym("w"), AttrValue::Int(1)));
        assert_eq!(DirectedToUndirected.inverse(&out, &g.kind).unwrap(), g);
    }

    #[test]
    fn backward_only_edge_is_marked_minus_one() {
        let g = attributed(&[(2, 1, "w")]);
        let out = DirectedToUndirected.forward(&g).unwrap();
        assert_eq!(marker(&out), AttrValue::pair(AttrValue::sym("w"), AttrValue::Int(-1)));
        assert_eq!(DirectedToUndirected.inverse(&out, &g.kind).unwrap(), g);
    }

    #[test]
    fn reciprocal_edges_are_marked_with_both() {
        let g = attributed(&[(1, 2, "w1"), (2, 1, "w2")]);
        let out = DirectedToUndirected.forward(&g).unwrap();
        assert_eq!(out.edge_count(), 2);
        assert_eq!(
            marker(&out),
            AttrValue::pair(
                AttrValue::pair(AttrValue::sym("w1"), AttrValue::Int(1)),
                AttrValue::pair(AttrValue::sym("w2"), AttrValue::Int(-1)),
            )
        );
        assert_eq!(DirectedToUndirected.inverse(&out, &g.kind).unwrap(), g);
    }

    #[test]
    fn undirected_relabel_emits_both_copies() {
        let k = kind("undirected,attributed");
        let g = GraphValue::builder(k)
            .node_rec(NodeRecord::new(1).attr(AttrValue::Blank))
            .node_rec(NodeRecord::new(2).attr(AttrValue::Blank))
            .edge_rec(EdgeRecord::simple(1, 2).attr(AttrValue::sym("a")))
            .edge_rec(EdgeRecord::simple(2, 1).attr(AttrValue::sym("a")))
            .build();
        let out = super::super::UNDIRECTED_TO_DIRECTED.forward(&g).unwrap();
        assert_eq!(out.kind, kind("directed,attributed"));
        assert_eq!(out.edge_count(), 2);
        let asym = attributed(&[(1, 2, "a")]);
        assert!(super::super::UNDIRECTED_TO_DIRECTED
            .inverse(&asym, &k)
            .is_err());
    }

    #[test]
    fn unmarked_undirected_edge_is_not_in_image() {
        let g = GraphValue::builder(kind("undirected,attributed"))
            .node_rec(NodeRecord::new(1).attr(AttrValue::Blank))
            .node_rec(NodeRecord::new(2).attr(AttrValue::Blank))
            .edge_rec(EdgeRecord::simple(1, 2).attr(AttrValue::sym("a")))
            .edge_rec(EdgeRecord::simple(2, 1).attr(AttrValue::sym("a")))
            .build();
        assert!(matches!(
            DirectedToUndirected.inverse(&g, &kind("attributed")),
            Err(Error::NotInImage { .. })
        ));
    }
}
