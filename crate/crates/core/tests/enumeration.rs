//! Universe enumeration checked against a test-side brute force.

use std::collections::HashSet;

use kindred_core::attr::{AttrValue, Symbol};
use kindred_core::graph::{EdgeRecord, Endpoints, GraphValue, NodeKey, NodeRecord, Snapshot};
use kindred_core::kind::{Attribution, GraphKind};
use kindred_core::oracle::{enumerate, UniverseSpec};
use kindred_core::validate::validate;

fn kind(spec: &str) -> GraphKind {
    spec.parse().unwrap()
}

fn small(k: GraphKind) -> UniverseSpec {
    UniverseSpec {
        max_node_ids: 2,
        max_timestamps: 2,
        ..UniverseSpec::base(k)
    }
}

fn alphabet(spec: &UniverseSpec) -> Vec<Option<AttrValue>> {
    match spec.kind.attributed {
        Attribution::None => vec![None],
        _ => spec.attr_alphabet.iter().cloned().map(Some).collect(),
    }
}

fn keys(spec: &UniverseSpec) -> Vec<NodeKey> {
    let types: Vec<Option<Symbol>> = if spec.kind.hetero_node {
        spec.node_types.iter().cloned().map(Some).collect()
    } else {
        vec![None]
    };
    (1..=spec.max_node_ids)
        .flat_map(|id| types.iter().map(move |ty| NodeKey { id, ty: ty.clone() }))
        .collect()
}

fn subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    (0u32..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Endpoint shapes over `present`, each accepted by `validate` as the only
/// edge of an otherwise plain graph of the spec's kind.
fn shapes(spec: &UniverseSpec, present: &[NodeKey]) -> Vec<Endpoints> {
    let mut out = Vec::new();
    if spec.kind.hyper {
        for members in subsets(present).into_iter().filter(|s| !s.is_empty()) {
            if members.len() < 2 && !spec.self_loops {
                continue;
            }
            // Every function into 0..=n; validate decides which are allowed.
            let n = members.len() as u32;
            let mut levels = vec![0u32; members.len()];
            loop {
                let ends = Endpoints::Hyper(members.iter().cloned().zip(levels.iter().copied()).collect());
                if accepts_edge(spec, present, &ends) {
                    out.push(ends);
                }
                let mut i = 0;
                while i < levels.len() && levels[i] == n {
                    levels[i] = 0;
                    i += 1;
                }
                if i == levels.len() {
                    break;
                }
                levels[i] += 1;
            }
        }
    } else {
        for (i, u) in present.iter().enumerate() {
            for (j, v) in present.iter().enumerate() {
                if (i == j && !spec.self_loops) || (!spec.kind.directed && j < i) {
                    continue;
                }
                out.push(Endpoints::Simple(u.clone(), v.clone()));
            }
        }
    }
    out
}

fn accepts_edge(spec: &UniverseSpec, present: &[NodeKey], ends: &Endpoints) -> bool {
    let mut s = Snapshot::new(0);
    let attr = alphabet(spec)[0].clone();
    s.nodes = present
        .iter()
        .map(|k| NodeRecord {
            key: k.clone(),
            multiplicity: 1,
            attr: attr.clone(),
        })
        .collect();
    s.edges.push(EdgeRecord {
        ends: ends.clone(),
        edge_type: spec.kind.hetero_edge.then(|| spec.edge_types[0].clone()),
        multiplicity: 1,
        attr,
    });
    let g = GraphValue {
        kind: spec.kind.with_static(),
        snapshots: vec![s],
    };
    validate(&g).is_empty()
}

trait Static {
    fn with_static(self) -> Self;
}

impl Static for GraphKind {
    fn with_static(self) -> Self {
        GraphKind {
            dynamic: false,
            ..self
        }
    }
}

fn edge_types(spec: &UniverseSpec) -> Vec<Option<Symbol>> {
    if spec.kind.hetero_edge {
        spec.edge_types.iter().cloned().map(Some).collect()
    } else {
        vec![None]
    }
}

fn node_mult(spec: &UniverseSpec) -> u32 {
    if spec.kind.multi_node {
        spec.max_multiplicity
    } else {
        1
    }
}

fn edge_mult(spec: &UniverseSpec) -> u32 {
    if spec.kind.multi_edge {
        spec.max_multiplicity
    } else {
        1
    }
}

/// Occurrence lists of length `lo..=hi` over the alphabet.
fn occurrences(spec: &UniverseSpec, lo: u32, hi: u32) -> Vec<Vec<Option<AttrValue>>> {
    let alpha = alphabet(spec);
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Option<AttrValue>>> = vec![Vec::new()];
    for len in 0..=hi {
        if len >= lo {
            out.extend(layer.iter().cloned());
        }
        layer = layer
            .iter()
            .flat_map(|prefix| {
                alpha.iter().map(move |a| {
                    let mut p = prefix.clone();
                    p.push(a.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// Count of static graphs from per-slot choice counts; `None` on overflow.
fn brute_static_count(spec: &UniverseSpec) -> Option<u128> {
    let per_node = occurrences(spec, 1, node_mult(spec)).len() as u128;
    let per_slot = occurrences(spec, 0, edge_mult(spec)).len() as u128;
    let types = edge_types(spec).len() as u32;
    subsets(&keys(spec)).iter().try_fold(0u128, |acc, present| {
        let slots = shapes(spec, present).len() as u32 * types;
        let term = per_node
            .checked_pow(present.len() as u32)?
            .checked_mul(per_slot.checked_pow(slots)?)?;
        acc.checked_add(term)
    })
}

fn brute_count(spec: &UniverseSpec) -> Option<u128> {
    let n = brute_static_count(spec)?;
    if !spec.kind.dynamic {
        return Some(n);
    }
    // Each subset of timestamps carries nonempty snapshots.
    let t = spec.max_timestamps as u32;
    (0..=t).try_fold(0u128, |acc, k| {
        acc.checked_add(binomial(t, k).checked_mul((n - 1).checked_pow(k)?)?)
    })
}

fn binomial(n: u32, k: u32) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

/// Every static graph of the spec, built independently of the library.
fn brute_static_graphs(spec: &UniverseSpec) -> Vec<GraphValue> {
    let node_lists = occurrences(spec, 1, node_mult(spec));
    let slot_lists = occurrences(spec, 0, edge_mult(spec));
    let mut out = Vec::new();
    for present in subsets(&keys(spec)) {
        let slots: Vec<(Endpoints, Option<Symbol>)> = shapes(spec, &present)
            .into_iter()
            .flat_map(|e| edge_types(spec).into_iter().map(move |t| (e.clone(), t)))
            .collect();
        let mut partial = vec![Snapshot::new(0)];
        for key in &present {
            partial = partial
                .iter()
                .flat_map(|s| {
                    node_lists.iter().map(move |occ| {
                        let mut s = s.clone();
                        for (i, a) in occ.iter().enumerate() {
                            s.nodes.push(NodeRecord {
                                key: key.clone(),
                                multiplicity: i as u32 + 1,
                                attr: a.clone(),
                            });
                        }
                        s
                    })
                })
                .collect();
        }
        for (ends, ty) in &slots {
            partial = partial
                .iter()
                .flat_map(|s| {
                    slot_lists.iter().map(move |occ| {
                        let mut s = s.clone();
                        for (i, a) in occ.iter().enumerate() {
                            let rec = EdgeRecord {
                                ends: ends.clone(),
                                edge_type: ty.clone(),
                                multiplicity: i as u32 + 1,
                                attr: a.clone(),
                            };
                            if let Endpoints::Simple(u, v) = ends {
                                if !spec.kind.directed && u != v {
                                    s.edges.push(EdgeRecord {
                                        ends: Endpoints::Simple(v.clone(), u.clone()),
                                        ..rec.clone()
                                    });
                                }
                            }
                            s.edges.push(rec);
                        }
                        s
                    })
                })
                .collect();
        }
        out.extend(partial.into_iter().map(|s| {
            GraphValue {
                kind: spec.kind,
                snapshots: vec![s],
            }
            .sorted()
        }));
    }
    out
}

#[test]
fn one_node_digraphs_by_hand() {
    let spec = UniverseSpec {
        max_node_ids: 1,
        ..UniverseSpec::base(kind("directed"))
    };
    let got: Vec<GraphValue> = enumerate(&spec).unwrap().iter().collect();
    let expected = vec![
        GraphValue::empty(spec.kind),
        GraphValue::builder(spec.kind).node(1).build(),
        GraphValue::builder(spec.kind).node(1).edge(1, 1).build(),
    ];
    assert_eq!(got, expected);
}

#[test]
fn undirected_pairs_without_loops() {
    let spec = UniverseSpec {
        max_node_ids: 2,
        self_loops: false,
        ..UniverseSpec::base(kind("undirected"))
    };
    // Subsets of {1,2}: sizes 0, 1, 1, 2 with 0, 0, 0, 1 pairs.
    let closed_form = 1 + 1 + 1 + 2;
    assert_eq!(spec.count(), closed_form);
    assert_eq!(enumerate(&spec).unwrap().len(), closed_form as u64);
    assert_eq!(brute_count(&spec), Some(closed_form));
}

#[test]
fn zero_ids_is_just_the_empty_graph() {
    for k in GraphKind::all() {
        let spec = UniverseSpec {
            max_node_ids: 0,
            ..UniverseSpec::base(k)
        };
        assert_eq!(spec.count(), 1, "{k}");
    }
}

#[test]
fn closed_form_count_matches_brute_force_for_every_kind() {
    for k in GraphKind::all() {
        for spec in [small(k), UniverseSpec { self_loops: false, ..small(k) }] {
            // The closed form saturates where the exact count overflows.
            let expected = brute_count(&spec).unwrap_or(u128::MAX);
            assert_eq!(spec.count(), expected, "{k} loops={}", spec.self_loops);
        }
    }
}

#[test]
fn enumeration_lengths_match_brute_force() {
    let mut checked = 0;
    for k in GraphKind::all() {
        let spec = small(k);
        let n = brute_count(&spec).unwrap_or(u128::MAX);
        if n > 50_000 {
            continue;
        }
        let u = enumerate(&spec).unwrap();
        assert_eq!(u.len() as u128, n, "{k}");
        checked += 1;
    }
    assert!(checked >= 70, "only {checked} kinds were small enough");
}

#[test]
fn static_universes_equal_the_brute_force_sets() {
    let one_type = |k: &str| UniverseSpec {
        max_node_ids: 2,
        node_types: vec![Symbol::new("s")],
        ..UniverseSpec::base(kind(k))
    };
    let specs = [
        small(kind("directed")),
        small(kind("undirected")),
        small(kind("directed,attributed")),
        small(kind("undirected,multi,int-attributed")),
        UniverseSpec {
            max_node_ids: 1,
            ..UniverseSpec::base(kind("directed,hetero"))
        },
        one_type("undirected,hetero-node,multi-edge"),
        one_type("directed,hetero-edge"),
        UniverseSpec::base(kind("undirected,hyper")),
        UniverseSpec {
            self_loops: false,
            ..small(kind("directed,hyper,attributed"))
        },
        UniverseSpec {
            self_loops: false,
            ..small(kind("directed,hyper"))
        },
    ];
    for spec in specs {
        let k = spec.kind;
        assert!(spec.max_edges.is_none());
        assert!(brute_count(&spec).unwrap() <= 100_000, "{k}");
        let brute: Vec<GraphValue> = brute_static_graphs(&spec);
        let brute_set: HashSet<GraphValue> = brute.iter().cloned().collect();
        assert_eq!(brute.len(), brute_set.len(), "{k}: brute force has duplicates");
        for g in &brute {
            assert!(validate(g).is_empty(), "{k}: brute force produced {g:?}");
        }
        let listed: Vec<GraphValue> = enumerate(&spec).unwrap().iter().collect();
        let listed_set: HashSet<GraphValue> = listed.iter().cloned().collect();
        assert_eq!(listed.len(), listed_set.len(), "{k}: enumerate has duplicates");
        assert_eq!(listed_set, brute_set, "{k}");
    }
}

#[test]
fn enumeration_is_deterministic() {
    let spec = UniverseSpec::standard(kind("dynamic,attributed"));
    let a: Vec<GraphValue> = enumerate(&spec).unwrap().iter().take(2_000).collect();
    let b: Vec<GraphValue> = enumerate(&spec).unwrap().iter().take(2_000).collect();
    assert_eq!(a, b);
}

#[test]
fn dynamic_graphs_have_nonempty_sorted_snapshots() {
    let spec = small(kind("dynamic,undirected"));
    for g in enumerate(&spec).unwrap().iter() {
        assert!(g.snapshots.iter().all(|s| !s.is_empty()));
        assert!(g.snapshots.windows(2).all(|w| w[0].time < w[1].time));
        assert!(g.snapshots.iter().all(|s| (0..2).contains(&s.time)));
    }
}
