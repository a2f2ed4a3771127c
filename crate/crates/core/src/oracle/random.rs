use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::UniverseSpec;
use crate::attr::Symbol;
use crate::graph::{EdgeRecord, Endpoints, GraphValue, NodeKey, NodeRecord, Snapshot};

/// A random valid graph within `spec`.
pub fn random_graph(spec: &UniverseSpec, rng: &mut impl Rng) -> GraphValue {
    let kind = spec.kind;
    if !kind.dynamic {
        return GraphValue {
            kind,
            snapshots: vec![random_snapshot(spec, 0, false, rng)],
        };
    }
    let horizon = (spec.max_timestamps as i64 * 3).max(1);
    let mut times: Vec<i64> = (0..horizon).collect();
    times.shuffle(rng);
    let count = rng.gen_range(0..=spec.max_timestamps.min(times.len()));
    let mut times = times[..count].to_vec();
    times.sort_unstable();
    GraphValue {
        kind,
        snapshots: times
            .into_iter()
            .map(|t| random_snapshot(spec, t, true, rng))
            .collect(),
    }
}

fn pick<T: Clone>(items: &[T], rng: &mut impl Rng) -> T {
    items[rng.gen_range(0..items.len())].clone()
}

fn random_snapshot(spec: &UniverseSpec, time: i64, need_node: bool, rng: &mut impl Rng) -> Snapshot {
    let attrs = spec.attr_choices();
    let node_types = spec.node_type_choices();
    let edge_types = spec.edge_type_choices();
    let mut snap = Snapshot::new(time);
    if spec.max_node_ids == 0 || attrs.is_empty() {
        return snap;
    }

    let mut keys: Vec<NodeKey> = Vec::new();
    for id in 1..=spec.max_node_ids {
        if !rng.gen_bool(0.6) {
            continue;
        }
        let mut types: Vec<Option<Symbol>> =
            node_types.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        if types.is_empty() {
            types.push(pick(&node_types, rng));
        }
        keys.extend(types.into_iter().map(|ty| NodeKey { id, ty }));
    }
    if keys.is_empty() && need_node {
        keys.push(NodeKey {
            id: rng.gen_range(1..=spec.max_node_ids),
            ty: pick(&node_types, rng),
        });
    }
    for key in &keys {
        let m = rng.gen_range(1..=spec.node_mult().max(1));
        for i in 1..=m {
            snap.nodes.push(NodeRecord {
                key: key.clone(),
                multiplicity: i,
                attr: pick(&attrs, rng),
            });
        }
    }
    if keys.is_empty() {
        return snap;
    }

    let undirected_simple = !spec.kind.directed && !spec.kind.hyper;
    let max_edges = spec.max_edges.unwrap_or(2 * keys.len());
    let target = rng.gen_range(0..=max_edges);
    let mut used: BTreeMap<(Endpoints, Option<Symbol>), u32> = BTreeMap::new();
    for _ in 0..target {
        let Some(ends) = random_ends(spec, &keys, rng) else {
            continue;
        };
        let ty = pick(&edge_types, rng);
        let count = used.entry((ends.clone(), ty.clone())).or_default();
        if *count >= spec.edge_mult() {
            continue;
        }
        *count += 1;
        let rec = EdgeRecord {
            ends: ends.clone(),
            edge_type: ty,
            multiplicity: *count,
            attr: pick(&attrs, rng),
        };
        if let (true, Endpoints::Simple(u, v)) = (undirected_simple, &ends) {
            if u != v {
                snap.edges.push(EdgeRecord {
                    ends: Endpoints::Simple(v.clone(), u.clone()),
                    ..rec.clone()
                });
            }
        }
        snap.edges.push(rec);
    }
    snap.nodes.sort();
    snap.edges.sort();
    snap
}

/// Random endpoints; undirected simple edges come out with `u <= v` so the
/// caller can add the mirror.
fn random_ends(spec: &UniverseSpec, keys: &[NodeKey], rng: &mut impl Rng) -> Option<Endpoints> {
    if spec.kind.hyper {
        let min = if spec.self_loops { 1 } else { 2 };
        if keys.len() < min {
            return None;
        }
        let size = rng.gen_range(min..=keys.len().min(4));
        let members: Vec<NodeKey> = keys.choose_multiple(rng, size).cloned().collect();
        let numbering = if spec.kind.directed {
            // Random levels, then squeezed so the used levels are contiguous.
            let start: u32 = rng.gen_range(0..=1);
            let raw: Vec<u32> = (0..size).map(|_| rng.gen_range(0..size as u32)).collect();
            let mut levels = raw.clone();
            levels.sort_unstable();
            levels.dedup();
            members
                .into_iter()
                .zip(raw)
                .map(|(k, r)| (k, start + levels.binary_search(&r).unwrap() as u32))
                .collect()
        } else {
            members.into_iter().map(|k| (k, 0)).collect()
        };
        return Some(Endpoints::Hyper(numbering));
    }
    let u = pick(keys, rng);
    let v = pick(keys, rng);
    if u == v && !spec.self_loops {
        return None;
    }
    if !spec.kind.directed && v < u {
        return Some(Endpoints::Simple(v, u));
    }
    Some(Endpoints::Simple(u, v))
}
