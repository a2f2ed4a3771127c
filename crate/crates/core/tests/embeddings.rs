use std::collections::{BTreeSet, HashMap};

use kindred_core::attr::{AttrValue, Symbol};
use kindred_core::embed::{catalog, find};
use kindred_core::graph::{EdgeRecord, Endpoints, GraphValue, NodeRecord};
use kindred_core::kind::GraphKind;
use kindred_core::lattice::{compose, invert_chain, WitnessChain};
use kindred_core::oracle::{enumerate, verify, UniverseSpec};

fn kind(spec: &str) -> GraphKind {
    spec.parse().unwrap()
}

fn assert_verified(name: &str, spec: &UniverseSpec) -> u64 {
    let r = verify(find(name).unwrap(), spec).unwrap();
    assert!(
        r.verified(),
        "{name} on {}: {} round-trip, {} injectivity, {} typing failures; first: {:?}",
        spec.kind,
        r.roundtrip_failures.len(),
        r.injectivity_collisions.len(),
        r.typing_failures.len(),
        r.roundtrip_failures
            .first()
            .or(r.injectivity_collisions.first())
            .or(r.typing_failures.first())
    );
    r.universe_size
}

#[test]
fn every_accepted_kind_verifies_on_a_small_universe() {
    let mut pairs = 0;
    for e in catalog() {
        for k in GraphKind::all().into_iter().filter(|k| e.accepts(k)) {
            assert_verified(e.name(), &UniverseSpec::base(k).fit(800));
            pairs += 1;
        }
    }
    assert!(pairs > 2000, "{pairs}");
}

#[test]
fn self_loops_through_directed_to_hyper() {
    let spec = UniverseSpec {
        max_node_ids: 1,
        ..UniverseSpec::base(kind("directed"))
    };
    assert_eq!(assert_verified("directed_to_hyper", &spec), 3);
}

#[test]
fn all_two_node_digraphs_through_directed_to_heterogeneous() {
    let spec = UniverseSpec {
        max_node_ids: 2,
        ..UniverseSpec::base(kind("directed"))
    };
    assert_eq!(assert_verified("directed_to_heterogeneous", &spec), 1 + 2 * 2 + 16);
}

#[test]
fn two_letter_alphabet_through_attributed_to_heterogeneous() {
    let spec = UniverseSpec {
        max_node_ids: 2,
        attr_alphabet: vec![AttrValue::sym("a"), AttrValue::sym("b")],
        ..UniverseSpec::base(kind("attributed"))
    };
    assert_verified("attributed_to_heterogeneous", &spec);
}

#[test]
fn integer_attributes_up_to_three_through_multigraphs() {
    let spec = UniverseSpec {
        max_node_ids: 2,
        attr_alphabet: (1..=3).map(AttrValue::Int).collect(),
        ..UniverseSpec::base(kind("int-attributed"))
    };
    assert_verified("int_attributed_to_multigraph", &spec);
    let spec = UniverseSpec {
        max_node_ids: 2,
        max_multiplicity: 3,
        max_edges: Some(2),
        ..UniverseSpec::base(kind("multi"))
    };
    assert_verified("multigraph_to_int_attributed", &spec);
}

#[test]
fn two_node_attributed_digraphs_through_directed_to_undirected() {
    let spec = UniverseSpec {
        max_node_ids: 2,
        ..UniverseSpec::base(kind("attributed"))
    };
    assert_verified("directed_to_undirected", &spec);
}

#[test]
fn multiplicity_three_through_multi_to_simple() {
    let spec = UniverseSpec {
        max_node_ids: 2,
        max_multiplicity: 3,
        max_edges: Some(3),
        ..UniverseSpec::base(kind("multi,attributed"))
    };
    assert_verified("multi_to_simple", &spec);
}

#[test]
fn two_types_through_heterogeneous_to_homogeneous() {
    let spec = UniverseSpec {
        max_node_ids: 2,
        max_edges: Some(2),
        ..UniverseSpec::base(kind("hetero,attributed"))
    };
    assert_verified("heterogeneous_to_homogeneous", &spec);
}

#[test]
fn two_timestamps_through_dynamic_to_static() {
    let spec = UniverseSpec {
        max_node_ids: 2,
        max_timestamps: 2,
        max_edges: Some(2),
        ..UniverseSpec::base(kind("dynamic,attributed"))
    };
    assert_verified("dynamic_to_static", &spec);
}

type TypedEdges = BTreeSet<(u64, u64, u8)>;

/// The typed edge set written out literally: `(u,v,0),(v,u,0)` for every
/// `(u,v)` in E and `(u,v,1),(v,u,1)` for every `(v,u)` in E.
fn literal_typed_edges(g: &GraphValue) -> TypedEdges {
    let edges: BTreeSet<(u64, u64)> = g.snapshots[0]
        .edges
        .iter()
        .map(|e| match &e.ends {
            Endpoints::Simple(u, v) => (u.id, v.id),
            Endpoints::Hyper(_) => unreachable!(),
        })
        .collect();
    let mut out = BTreeSet::new();
    for &(u, v) in &edges {
        out.extend([(u, v, 0), (v, u, 0)]);
    }
    for &(u, v) in &edges {
        // (v,u) in E, read with the roles swapped.
        let (x, y) = (v, u);
        out.extend([(x, y, 1), (y, x, 1)]);
    }
    out
}

#[test]
fn literal_typed_edge_formula_is_not_injective() {
    let k = kind("directed");
    let forward = GraphValue::builder(k).node(1).node(2).edge(1, 2).build();
    let backward = GraphValue::builder(k).node(1).node(2).edge(2, 1).build();
    assert_eq!(literal_typed_edges(&forward), literal_typed_edges(&backward));

    let e = find("directed_to_heterogeneous").unwrap();
    assert_ne!(e.forward(&forward).unwrap(), e.forward(&backward).unwrap());

    // Over all two-node digraphs the literal formula collides and the
    // implemented one does not.
    let spec = UniverseSpec {
        max_node_ids: 2,
        ..UniverseSpec::base(k)
    };
    let mut seen: HashMap<(Vec<u64>, TypedEdges), usize> = HashMap::new();
    let mut collisions = 0;
    for g in enumerate(&spec).unwrap().iter() {
        let ids = g.snapshots[0].nodes.iter().map(|n| n.key.id).collect();
        *seen.entry((ids, literal_typed_edges(&g))).or_default() += 1;
    }
    for n in seen.values() {
        collisions += n * (n - 1) / 2;
    }
    assert!(collisions >= 1);
    assert!(verify(e, &spec).unwrap().injectivity_collisions.is_empty());
}

fn hetero_dynamic_sample() -> GraphValue {
    let k = kind("dynamic,hetero,attributed");
    GraphValue::builder(k)
        .at(0)
        .node_rec(NodeRecord::new((1, "s")).attr(AttrValue::sym("a")))
        .node_rec(NodeRecord::new((2, "t")).attr(AttrValue::Blank))
        .edge_rec(EdgeRecord::simple((1, "s"), (2, "t")).typed("r").attr(AttrValue::Int(3)))
        .at(1)
        .node_rec(NodeRecord::new((1, "s")).attr(AttrValue::sym("b")))
        .build()
}

#[test]
fn step_order_changes_the_nesting_but_both_invert() {
    let src = kind("dynamic,hetero,attributed");
    let types_first = WitnessChain::from_names(src, &["heterogeneous_to_homogeneous", "dynamic_to_static"]).unwrap();
    let time_first = WitnessChain::from_names(src, &["dynamic_to_static", "heterogeneous_to_homogeneous"]).unwrap();
    assert_eq!(types_first.target, time_first.target);

    let g = hetero_dynamic_sample();
    let a = compose(&g, &types_first).unwrap();
    let b = compose(&g, &time_first).unwrap();
    assert_ne!(a, b);
    let node_attr = |h: &GraphValue| h.snapshots[0].nodes[0].attr.clone().unwrap();
    // Types inside the time tags, or time tags inside the type pair.
    assert_eq!(
        node_attr(&a),
        AttrValue::seq([
            AttrValue::pair(AttrValue::pair(AttrValue::sym("a"), AttrValue::sym("s")), AttrValue::Int(0)),
            AttrValue::pair(AttrValue::pair(AttrValue::sym("b"), AttrValue::sym("s")), AttrValue::Int(1)),
        ])
    );
    assert_eq!(
        node_attr(&b),
        AttrValue::pair(
            AttrValue::seq([
                AttrValue::pair(AttrValue::sym("a"), AttrValue::Int(0)),
                AttrValue::pair(AttrValue::sym("b"), AttrValue::Int(1)),
            ]),
            AttrValue::sym("s")
        )
    );

    // Measured over a universe: every graph with a record nests differently,
    // and each order inverts exactly.
    let spec = UniverseSpec {
        max_node_ids: 2,
        node_types: vec![Symbol::new("s"), Symbol::new("t")],
        ..UniverseSpec::base(src)
    }
    .fit(3_000);
    let (mut differ, mut total) = (0, 0);
    for g in enumerate(&spec).unwrap().iter() {
        let a = compose(&g, &types_first).unwrap();
        let b = compose(&g, &time_first).unwrap();
        assert!(invert_chain(&types_first).apply(&a).unwrap().equals(&g));
        assert!(invert_chain(&time_first).apply(&b).unwrap().equals(&g));
        total += 1;
        if a != b {
            differ += 1;
        }
    }
    assert_eq!(differ, total - 1, "only the empty graph has a shared image");
}
