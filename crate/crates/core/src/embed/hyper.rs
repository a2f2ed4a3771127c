//! Hyperedges to ordinary edges and back.
//!
//! An all-zero hyperedge expands to the clique on its nodes (both
//! directions, no self pairs); a numbered hyperedge expands to the chain of
//! bicliques linking level k to level k + 1. The expansion alone is not
//! injective, so every produced edge carries a tag per contributing
//! hyperedge: `[ordinal, role, f(u), f(v)]`, plus the hyperedge's attribute
//! when the source is attributed. Hyperedges whose expansion is empty (a
//! single node, or a single numbering level) are tagged on their member
//! nodes instead as `[ordinal, role, f(w), type]`.

use std::collections::{BTreeMap, BTreeSet};

use super::{map_snapshots, Direction, Embedding, Property};
use crate::attr::{AttrValue, Symbol};
use crate::error::{Error, Result};
use crate::graph::{EdgeRecord, Endpoints, GraphValue, NodeKey, NodeRecord, Snapshot};
use crate::kind::{Attribution, GraphKind};

const CLIQUE: &str = "clique";
const CHAIN: &str = "chain";

/// The ordered pairs a hyperedge expands to.
pub(crate) fn expansion(numbering: &BTreeMap<NodeKey, u32>) -> Vec<(&NodeKey, &NodeKey)> {
    let all_zero = numbering.values().all(|n| *n == 0);
    let mut out = Vec::new();
    for (u, fu) in numbering {
        for (v, fv) in numbering {
            let hit = if all_zero { u != v } else { *fv == *fu + 1 };
            if hit {
                out.push((u, v));
            }
        }
    }
    out
}

fn type_attr(ty: &Option<Symbol>) -> AttrValue {
    ty.clone().map_or(AttrValue::Blank, AttrValue::Sym)
}

pub struct HyperToDirected;

impl Embedding for HyperToDirected {
    fn name(&self) -> &'static str {
        "hyper_to_directed"
    }
    fn lemma(&self) -> &'static str {
        "Lemma 1"
    }
    fn property(&self) -> Property {
        Property::Hyper
    }
    fn direction(&self) -> Direction {
        Direction::Remove
    }
    fn accepts(&self, kind: &GraphKind) -> bool {
        kind.hyper
    }
    fn target_kind(&self, source: &GraphKind) -> GraphKind {
        GraphKind {
            hyper: false,
            attributed: Attribution::Full,
            ..*source
        }
    }

    fn encode(&self, g: &GraphValue) -> Result<GraphValue> {
        let attributed = g.kind.is_attributed();
        map_snapshots(g, self.target_kind(&g.kind), |s| {
            let mut edge_tags: BTreeMap<(NodeKey, NodeKey, Option<Symbol>), Vec<AttrValue>> =
                BTreeMap::new();
            let mut node_tags: BTreeMap<&NodeKey, Vec<AttrValue>> = BTreeMap::new();

            for (ordinal, e) in s.edges.iter().enumerate() {
                let Endpoints::Hyper(numbering) = &e.ends else {
                    return Err(Error::InvalidSource {
                        embedding: self.name(),
                        reason: format!("edge {e} is not a hyperedge"),
                    });
                };
                let role = if numbering.values().all(|n| *n == 0) {
                    CLIQUE
                } else {
                    CHAIN
                };
                let with_attr = |mut fields: Vec<AttrValue>| {
                    if attributed {
                        fields.extend(e.attr.clone());
                    }
                    AttrValue::Seq(fields)
                };
                let pairs = expansion(numbering);
                if pairs.is_empty() {
                    for (w, fw) in numbering {
                        node_tags.entry(w).or_default().push(with_attr(vec![
                            AttrValue::Int(ordinal as i64),
                            AttrValue::sym(role),
                            AttrValue::Int(*fw as i64),
                            type_attr(&e.edge_type),
                        ]));
                    }
                }
                for (u, v) in pairs {
                    edge_tags
                        .entry((u.clone(), v.clone(), e.edge_type.clone()))
                        .or_default()
                        .push(with_attr(vec![
                            AttrValue::Int(ordinal as i64),
                            AttrValue::sym(role),
                            AttrValue::Int(numbering[u] as i64),
                            AttrValue::Int(numbering[v] as i64),
                        ]));
                }
            }

            let nodes = s
                .nodes
                .iter()
                .map(|n| {
                    let tags = AttrValue::Seq(node_tags.get(&n.key).cloned().unwrap_or_default());
                    let attr = match (&n.attr, attributed) {
                        (Some(a), true) => AttrValue::pair(a.clone(), tags),
                        _ => tags,
                    };
                    NodeRecord {
                        key: n.key.clone(),
                        multiplicity: n.multiplicity,
                        attr: Some(attr),
                    }
                })
                .collect();
            let edges = edge_tags
                .into_iter()
                .map(|((u, v, ty), tags)| EdgeRecord {
                    ends: Endpoints::Simple(u, v),
                    edge_type: ty,
                    multiplicity: 1,
                    attr: Some(AttrValue::Seq(tags)),
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
        let attributed = source.is_attributed();
        let bad = |reason: &str| Error::NotInImage {
            embedding: self.name(),
            reason: reason.to_string(),
        };

        #[derive(Default)]
        struct Partial {
            ty: Option<Option<Symbol>>,
            attr: Option<AttrValue>,
            numbering: BTreeMap<NodeKey, u32>,
        }

        impl Partial {
            fn place(&mut self, key: &NodeKey, level: &AttrValue) -> Option<()> {
                let level = u32::try_from(level.as_int()?).ok()?;
                match self.numbering.insert(key.clone(), level) {
                    Some(old) if old != level => None,
                    _ => Some(()),
                }
            }
            fn set_type(&mut self, ty: Option<Symbol>) -> Option<()> {
                match &self.ty {
                    Some(old) if *old != ty => None,
                    _ => {
                        self.ty = Some(ty);
                        Some(())
                    }
                }
            }
            fn set_attr(&mut self, attr: Option<&AttrValue>) -> Option<()> {
                let Some(attr) = attr else { return Some(()) };
                match &self.attr {
                    Some(old) if old != attr => None,
                    _ => {
                        self.attr = Some(attr.clone());
                        Some(())
                    }
                }
            }
        }

        let fields = |tag: &AttrValue| -> Option<Vec<AttrValue>> {
            let items = tag.as_seq()?;
            (items.len() == 4 + usize::from(attributed)).then(|| items.to_vec())
        };
        let ordinal = |v: &AttrValue| v.as_int().filter(|i| *i >= 0);

        map_snapshots(g, *source, |s| {
            let mut parts: BTreeMap<i64, Partial> = BTreeMap::new();
            let mut nodes = Vec::with_capacity(s.nodes.len());

            for n in &s.nodes {
                let attr = n.attr.as_ref().ok_or_else(|| bad("node without tags"))?;
                let (orig, tags) = if attributed {
                    let (a, t) = attr.as_pair().ok_or_else(|| bad("node attribute is not a pair"))?;
                    (Some(a.clone()), t)
                } else {
                    (None, attr)
                };
                let tags = tags.as_seq().ok_or_else(|| bad("node tags are not a sequence"))?;
                for tag in tags {
                    let f = fields(tag).ok_or_else(|| bad("malformed node tag"))?;
                    let ord = ordinal(&f[0]).ok_or_else(|| bad("bad hyperedge ordinal"))?;
                    let ty = match &f[3] {
                        AttrValue::Blank => None,
                        AttrValue::Sym(s) => Some(s.clone()),
                        _ => return Err(bad("bad hyperedge type in node tag")),
                    };
                    let part = parts.entry(ord).or_default();
                    part.place(&n.key, &f[2])
                        .and_then(|_| part.set_type(ty))
                        .and_then(|_| part.set_attr(f.get(4)))
                        .ok_or_else(|| bad("inconsistent node tags"))?;
                }
                nodes.push(NodeRecord {
                    key: n.key.clone(),
                    multiplicity: n.multiplicity,
                    attr: orig,
                });
            }

            for e in &s.edges {
                let Endpoints::Simple(u, v) = &e.ends else {
                    return Err(bad("hyperedge in expanded graph"));
                };
                let tags = e
                    .attr
                    .as_ref()
                    .and_then(AttrValue::as_seq)
                    .ok_or_else(|| bad("edge tags are not a sequence"))?;
                for tag in tags {
                    let f = fields(tag).ok_or_else(|| bad("malformed edge tag"))?;
                    let ord = ordinal(&f[0]).ok_or_else(|| bad("bad hyperedge ordinal"))?;
                    let part = parts.entry(ord).or_default();
                    part.place(u, &f[2])
                        .and_then(|_| part.place(v, &f[3]))
                        .and_then(|_| part.set_type(e.edge_type.clone()))
                        .and_then(|_| part.set_attr(f.get(4)))
                        .ok_or_else(|| bad("inconsistent edge tags"))?;
                }
            }

            if parts.keys().copied().ne(0..parts.len() as i64) {
                return Err(bad("hyperedge ordinals are not contiguous"));
            }
            let mut seen: BTreeMap<(Endpoints, Option<Symbol>), u32> = BTreeMap::new();
            let mut edges = Vec::with_capacity(parts.len());
            for part in parts.into_values() {
                let ends = Endpoints::Hyper(part.numbering);
                let ty = part.ty.flatten();
                let count = seen.entry((ends.clone(), ty.clone())).or_default();
                *count += 1;
                edges.push(EdgeRecord {
                    ends,
                    edge_type: ty,
                    multiplicity: *count,
                    attr: part.attr,
                });
            }
            Ok(Snapshot {
                time: s.time,
                nodes,
                edges,
            })
        })
    }
}

/// Every ordinary edge is a hyperedge: `(u, v)` becomes `{u:1, v:2}` and a
/// self-loop `(u, u)` becomes `{u:1}`. For undirected sources each stored
/// pair becomes one all-zero hyperedge.
pub struct DirectedToHyper;

impl Embedding for DirectedToHyper {
    fn name(&self) -> &'static str {
        "directed_to_hyper"
    }
    fn lemma(&self) -> &'static str {
        "Lemma 1"
    }
    fn property(&self) -> Property {
        Property::Hyper
    }
    fn direction(&self) -> Direction {
        Direction::Add
    }
    fn accepts(&self, kind: &GraphKind) -> bool {
        !kind.hyper
    }
    fn target_kind(&self, source: &GraphKind) -> GraphKind {
        GraphKind {
            hyper: true,
            ..*source
        }
    }

    fn encode(&self, g: &GraphValue) -> Result<GraphValue> {
        let directed = g.kind.directed;
        map_snapshots(g, self.target_kind(&g.kind), |s| {
            let mut edges = Vec::with_capacity(s.edges.len());
            for e in &s.edges {
                let Endpoints::Simple(u, v) = &e.ends else {
                    return Err(Error::InvalidSource {
                        embedding: self.name(),
                        reason: format!("edge {e} is already a hyperedge"),
                    });
                };
                let numbering: BTreeMap<NodeKey, u32> = match (directed, u == v) {
                    (true, true) => [(u.clone(), 1)].into(),
                    (true, false) => [(u.clone(), 1), (v.clone(), 2)].into(),
                    (false, _) if u > v => continue,
                    (false, true) => [(u.clone(), 0)].into(),
                    (false, false) => [(u.clone(), 0), (v.clone(), 0)].into(),
                };
                edges.push(EdgeRecord {
                    ends: Endpoints::Hyper(numbering),
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

    fn decode(&self, g: &GraphValue, source: &GraphKind) -> Result<GraphValue> {
        let bad = |e: &EdgeRecord| Error::NotInImage {
            embedding: self.name(),
            reason: format!("hyperedge {e} does not come from an ordinary edge"),
        };
        map_snapshots(g, *source, |s| {
            let mut edges = Vec::with_capacity(s.edges.len() * 2);
            for e in &s.edges {
                let Endpoints::Hyper(numbering) = &e.ends else {
                    return Err(bad(e));
                };
                let entries: Vec<(&NodeKey, u32)> = numbering.iter().map(|(k, n)| (k, *n)).collect();
                let pairs = match (source.directed, entries.as_slice()) {
                    (true, [(u, 1)]) => vec![(*u, *u)],
                    (true, [(a, 1), (b, 2)]) => vec![(*a, *b)],
                    (true, [(a, 2), (b, 1)]) => vec![(*b, *a)],
                    (false, [(u, 0)]) => vec![(*u, *u)],
                    (false, [(a, 0), (b, 0)]) => vec![(*a, *b), (*b, *a)],
                    _ => return Err(bad(e)),
                };
                for (u, v) in pairs {
                    edges.push(EdgeRecord {
                        ends: Endpoints::Simple(u.clone(), v.clone()),
                        ..e.clone()
                    });
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

/// The clique/biclique expansion without disambiguation tags. Lossy: a
/// single hyperedge `{1,2,3}` and the three pair hyperedges expand to the
/// same graph. Not part of the catalog.
pub struct UntaggedCliqueExpansion;

impl Embedding for UntaggedCliqueExpansion {
    fn name(&self) -> &'static str {
        "untagged_clique_expansion"
    }
    fn lemma(&self) -> &'static str {
        "Lemma 1"
    }
    fn property(&self) -> Property {
        Property::Hyper
    }
    fn direction(&self) -> Direction {
        Direction::Remove
    }
    fn accepts(&self, kind: &GraphKind) -> bool {
        kind.hyper && !kind.is_attributed() && !kind.hetero_edge && !kind.multi_edge
    }
    fn target_kind(&self, source: &GraphKind) -> GraphKind {
        GraphKind {
            hyper: false,
            ..*source
        }
    }
    fn lossless(&self) -> bool {
        false
    }

    fn encode(&self, g: &GraphValue) -> Result<GraphValue> {
        map_snapshots(g, self.target_kind(&g.kind), |s| {
            let mut pairs = BTreeSet::new();
            for e in &s.edges {
                if let Endpoints::Hyper(numbering) = &e.ends {
                    for (u, v) in expansion(numbering) {
                        pairs.insert((u.clone(), v.clone()));
                    }
                }
            }
            Ok(Snapshot {
                time: s.time,
                nodes: s.nodes.clone(),
                edges: pairs.into_iter().map(|(u, v)| EdgeRecord::simple(u, v)).collect(),
            })
        })
    }

    fn decode(&self, _g: &GraphValue, _source: &GraphKind) -> Result<GraphValue> {
        Err(Error::NotInImage {
            embedding: self.name(),
            reason: "the untagged expansion has no inverse".into(),
        })
    }
}
