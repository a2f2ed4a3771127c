//! Well-formedness checks and kind inference.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::attr::AttrValue;
use crate::graph::{EdgeRecord, Endpoints, GraphValue, NodeKey, Snapshot};
use crate::kind::{Attribution, GraphKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// Static graphs have exactly one snapshot, at time 0.
    SnapshotLayout,
    DuplicateTimestamp,
    /// Snapshots of a dynamic graph contain at least one node.
    EmptySnapshot,
    DuplicateRecord,
    MultiplicityGap,
    UnexpectedMultiplicity,
    NodeTypePresence,
    EdgeTypePresence,
    AttrPresence,
    NonIntegerAttr,
    DanglingEndpoint,
    EdgeShape,
    EmptyHyperedge,
    NumberingGap,
    UndirectedNumbering,
    Asymmetric,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::SnapshotLayout => "snapshot-layout",
            Rule::DuplicateTimestamp => "duplicate-timestamp",
            Rule::EmptySnapshot => "empty-snapshot",
            Rule::DuplicateRecord => "duplicate-record",
            Rule::MultiplicityGap => "multiplicity-gap",
            Rule::UnexpectedMultiplicity => "unexpected-multiplicity",
            Rule::NodeTypePresence => "node-type-presence",
            Rule::EdgeTypePresence => "edge-type-presence",
            Rule::AttrPresence => "attr-presence",
            Rule::NonIntegerAttr => "non-integer-attr",
            Rule::DanglingEndpoint => "dangling-endpoint",
            Rule::EdgeShape => "edge-shape",
            Rule::EmptyHyperedge => "empty-hyperedge",
            Rule::NumberingGap => "numbering-gap",
            Rule::UndirectedNumbering => "undirected-numbering",
            Rule::Asymmetric => "asymmetric",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub rule: Rule,
    pub time: i64,
    /// The offending record, rendered.
    pub record: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at t={}: {}", self.rule.name(), self.time, self.record)
    }
}

/// Checks `g` against the invariants of its own kind.
pub fn validate(g: &GraphValue) -> Vec<Diagnostic> {
    validate_as(g, &g.kind)
}

/// Checks the records of `g` against `kind`, ignoring `g.kind`.
pub fn validate_as(g: &GraphValue, kind: &GraphKind) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut diag = |rule, time, record: String| out.push(Diagnostic { rule, time, record });

    if kind.dynamic {
        let mut seen = BTreeSet::new();
        for s in &g.snapshots {
            if !seen.insert(s.time) {
                diag(Rule::DuplicateTimestamp, s.time, format!("snapshot {}", s.time));
            }
            if s.nodes.is_empty() {
                diag(Rule::EmptySnapshot, s.time, format!("snapshot {}", s.time));
            }
        }
    } else if g.snapshots.len() != 1 || g.snapshots[0].time != 0 {
        let times: Vec<String> = g.snapshots.iter().map(|s| s.time.to_string()).collect();
        diag(
            Rule::SnapshotLayout,
            0,
            format!("snapshots at [{}]", times.join(", ")),
        );
    }

    for s in &g.snapshots {
        check_snapshot(s, kind, &mut diag);
    }
    out
}

fn check_attr(
    attr: &Option<AttrValue>,
    kind: &GraphKind,
    time: i64,
    what: &dyn Fn() -> String,
    diag: &mut impl FnMut(Rule, i64, String),
) {
    match (kind.attributed, attr) {
        (Attribution::None, Some(_)) | (Attribution::IntegerOnly | Attribution::Full, None) => {
            diag(Rule::AttrPresence, time, what())
        }
        (Attribution::IntegerOnly, Some(a)) if a.as_int().is_none() => {
            diag(Rule::NonIntegerAttr, time, what())
        }
        _ => {}
    }
}

fn check_gap_free<K: Ord + Clone>(
    occurrences: BTreeMap<K, Vec<u32>>,
    time: i64,
    render: impl Fn(&K) -> String,
    diag: &mut impl FnMut(Rule, i64, String),
) {
    for (key, mut mults) in occurrences {
        mults.sort_unstable();
        let before = mults.len();
        mults.dedup();
        if mults.len() != before {
            diag(Rule::DuplicateRecord, time, render(&key));
        }
        if mults.iter().enumerate().any(|(i, m)| *m as usize != i + 1) {
            diag(Rule::MultiplicityGap, time, render(&key));
        }
    }
}

fn check_snapshot(s: &Snapshot, kind: &GraphKind, diag: &mut impl FnMut(Rule, i64, String)) {
    let t = s.time;
    let mut node_occ: BTreeMap<&NodeKey, Vec<u32>> = BTreeMap::new();
    for n in &s.nodes {
        let what = || format!("node {}#{}", n.key, n.multiplicity);
        node_occ.entry(&n.key).or_default().push(n.multiplicity);
        if n.multiplicity > 1 && !kind.multi_node {
            diag(Rule::UnexpectedMultiplicity, t, what());
        }
        if n.key.ty.is_some() != kind.hetero_node {
            diag(Rule::NodeTypePresence, t, what());
        }
        check_attr(&n.attr, kind, t, &what, diag);
    }
    let present: HashSet<&NodeKey> = node_occ.keys().copied().collect();
    check_gap_free(node_occ, t, |k| format!("node {k}"), diag);

    let mut edge_occ: BTreeMap<(&Endpoints, &Option<crate::attr::Symbol>), Vec<u32>> =
        BTreeMap::new();
    for e in &s.edges {
        let what = || format!("edge {e}");
        edge_occ.entry(e.shape()).or_default().push(e.multiplicity);
        if e.multiplicity > 1 && !kind.multi_edge {
            diag(Rule::UnexpectedMultiplicity, t, what());
        }
        if e.edge_type.is_some() != kind.hetero_edge {
            diag(Rule::EdgeTypePresence, t, what());
        }
        check_attr(&e.attr, kind, t, &what, diag);
        if e.ends.is_hyper() != kind.hyper {
            diag(Rule::EdgeShape, t, what());
        }
        if e.ends.nodes().iter().any(|k| !present.contains(k)) {
            diag(Rule::DanglingEndpoint, t, what());
        }
        if let Endpoints::Hyper(numbering) = &e.ends {
            if numbering.is_empty() {
                diag(Rule::EmptyHyperedge, t, what());
            }
            if !numbering_gap_free(numbering.values().copied()) {
                diag(Rule::NumberingGap, t, what());
            }
            if kind.hyper && !kind.directed && numbering.values().any(|n| *n != 0) {
                diag(Rule::UndirectedNumbering, t, what());
            }
        }
    }
    check_gap_free(
        edge_occ,
        t,
        |(ends, ty)| match ty {
            Some(ty) => format!("edge {ends} :{ty}"),
            None => format!("edge {ends}"),
        },
        diag,
    );

    if !kind.directed && !kind.hyper {
        let stored: HashSet<&EdgeRecord> = s.edges.iter().collect();
        for e in &s.edges {
            if let Endpoints::Simple(u, v) = &e.ends {
                let mut mirror = e.clone();
                mirror.ends = Endpoints::Simple(v.clone(), u.clone());
                if !stored.contains(&mirror) {
                    diag(Rule::Asymmetric, t, format!("edge {e}"));
                }
            }
        }
    }
}

/// If some node maps to k > 1, some node maps to k - 1.
pub fn numbering_gap_free(values: impl IntoIterator<Item = u32>) -> bool {
    let set: BTreeSet<u32> = values.into_iter().collect();
    set.iter().all(|k| *k <= 1 || set.contains(&(k - 1)))
}

/// The most specific kind `g` conforms to.
///
/// Flags that only permit structure (multiplicities, types, hyperedges) are
/// set when that structure occurs; a graph whose edges are symmetric reports
/// undirected; attribution is `IntegerOnly` when every attribute is an
/// integer. A record-free graph reports unattributed.
pub fn kind_of(g: &GraphValue) -> GraphKind {
    let nodes = || g.snapshots.iter().flat_map(|s| s.nodes.iter());
    let edges = || g.snapshots.iter().flat_map(|s| s.edges.iter());

    let hyper = edges().any(|e| e.ends.is_hyper());
    let directed = if hyper {
        edges().any(|e| match &e.ends {
            Endpoints::Hyper(m) => m.values().any(|n| *n != 0),
            Endpoints::Simple(..) => true,
        })
    } else {
        g.snapshots.iter().any(|s| {
            let stored: HashSet<&EdgeRecord> = s.edges.iter().collect();
            s.edges.iter().any(|e| match &e.ends {
                Endpoints::Simple(u, v) => {
                    let mut mirror = e.clone();
                    mirror.ends = Endpoints::Simple(v.clone(), u.clone());
                    !stored.contains(&mirror)
                }
                Endpoints::Hyper(_) => true,
            })
        })
    };

    let attrs: Vec<&AttrValue> = nodes()
        .filter_map(|n| n.attr.as_ref())
        .chain(edges().filter_map(|e| e.attr.as_ref()))
        .collect();
    let attributed = if attrs.is_empty() {
        Attribution::None
    } else if attrs.iter().all(|a| a.as_int().is_some()) {
        Attribution::IntegerOnly
    } else {
        Attribution::Full
    };

    let dynamic = !matches!(g.snapshots.as_slice(), [s] if s.time == 0);

    GraphKind {
        directed,
        hyper,
        multi_node: nodes().any(|n| n.multiplicity > 1),
        multi_edge: edges().any(|e| e.multiplicity > 1),
        hetero_node: nodes().any(|n| n.key.ty.is_some()),
        hetero_edge: edges().any(|e| e.edge_type.is_some()),
        attributed,
        dynamic,
    }
}
