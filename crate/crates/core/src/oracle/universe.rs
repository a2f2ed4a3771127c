use std::collections::HashMap;

use crate::attr::{AttrValue, Symbol};
use crate::error::{Error, Result};
use crate::graph::{EdgeRecord, Endpoints, GraphValue, NodeKey, NodeRecord, Snapshot};
use crate::kind::{Attribution, GraphKind};
use crate::validate::numbering_gap_free;

pub const DEFAULT_CAP: u64 = 10_000_000;

/// Graph count the standard universe is shrunk to fit.
pub const STANDARD_BUDGET: u128 = 60_000;

/// Bounds of a finite universe of graphs of one kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniverseSpec {
    pub kind: GraphKind,
    /// Node ids are drawn from `1..=max_node_ids`.
    pub max_node_ids: u64,
    /// Attribute values; integer-only kinds use just the integers listed.
    pub attr_alphabet: Vec<AttrValue>,
    pub max_multiplicity: u32,
    /// Dynamic graphs use timestamps `0..max_timestamps`.
    pub max_timestamps: usize,
    pub node_types: Vec<Symbol>,
    pub edge_types: Vec<Symbol>,
    /// Bound on edge records per snapshot, an undirected pair counting once.
    pub max_edges: Option<usize>,
    pub self_loops: bool,
    pub cap: u64,
}

impl UniverseSpec {
    /// Unshrunk standard bounds: 3 node ids, alphabet `{σ, a}` (`{1, 2}` for
    /// integer-only kinds), multiplicity 2, 2 timestamps, 2 node types and 2
    /// edge types.
    pub fn base(kind: GraphKind) -> Self {
        let attr_alphabet = match kind.attributed {
            Attribution::None => Vec::new(),
            Attribution::IntegerOnly => vec![AttrValue::Int(1), AttrValue::Int(2)],
            Attribution::Full => vec![AttrValue::Blank, AttrValue::sym("a")],
        };
        UniverseSpec {
            kind,
            max_node_ids: 3,
            attr_alphabet,
            max_multiplicity: 2,
            max_timestamps: 2,
            node_types: vec![Symbol::new("s"), Symbol::new("t")],
            edge_types: vec![Symbol::new("r"), Symbol::new("q")],
            max_edges: None,
            self_loops: true,
            cap: DEFAULT_CAP,
        }
    }

    /// The base bounds, shrunk until the universe has at most
    /// [`STANDARD_BUDGET`] graphs.
    pub fn standard(kind: GraphKind) -> Self {
        Self::base(kind).fit(STANDARD_BUDGET)
    }

    /// Shrinks the bounds until the universe has at most `budget` graphs,
    /// narrowing edge counts and node ids first, then multiplicities, type
    /// alphabets and timestamps.
    pub fn fit(self, budget: u128) -> Self {
        let mut candidates = Vec::new();
        let mut narrowed = vec![self.clone()];
        let mut one_mult = self.clone();
        one_mult.max_multiplicity = one_mult.max_multiplicity.min(1);
        narrowed.push(one_mult.clone());
        let mut one_type = one_mult;
        one_type.node_types.truncate(1);
        one_type.edge_types.truncate(1);
        narrowed.push(one_type.clone());
        let mut one_time = one_type;
        one_time.max_timestamps = one_time.max_timestamps.min(1);
        narrowed.push(one_time);

        // Preference order of (node ids, edge bound): a few edges matter
        // more than a third node id.
        let top = self.max_node_ids;
        let mut shapes: Vec<(u64, Option<usize>)> = Vec::new();
        for ids in [top, top.saturating_sub(1)] {
            shapes.extend([None, Some(4), Some(3), Some(2)].map(|me| (ids, me)));
        }
        for ids in (1..=top).rev() {
            shapes.extend([Some(1), Some(0)].map(|me| (ids, me)));
        }
        for base in &narrowed {
            for &(ids, me) in &shapes {
                let mut c = base.clone();
                c.max_node_ids = ids;
                c.max_edges = match (me, base.max_edges) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
                candidates.push(c);
            }
        }
        let fallback = candidates.last().cloned().unwrap_or_else(|| self.clone());
        candidates
            .into_iter()
            .find(|c| c.count() <= budget)
            .unwrap_or(fallback)
    }

    /// Bounds for random graphs: up to 8 node ids and 12 edges per snapshot.
    pub fn fuzz(kind: GraphKind) -> Self {
        UniverseSpec {
            max_node_ids: 8,
            max_timestamps: 3,
            max_edges: Some(12),
            ..Self::base(kind)
        }
    }

    pub(crate) fn attr_choices(&self) -> Vec<Option<AttrValue>> {
        match self.kind.attributed {
            Attribution::None => vec![None],
            Attribution::IntegerOnly => self
                .attr_alphabet
                .iter()
                .filter(|a| a.as_int().is_some())
                .cloned()
                .map(Some)
                .collect(),
            Attribution::Full => self.attr_alphabet.iter().cloned().map(Some).collect(),
        }
    }

    pub(crate) fn node_mult(&self) -> u32 {
        if self.kind.multi_node {
            self.max_multiplicity
        } else {
            self.max_multiplicity.min(1)
        }
    }

    pub(crate) fn edge_mult(&self) -> u32 {
        if self.kind.multi_edge {
            self.max_multiplicity
        } else {
            self.max_multiplicity.min(1)
        }
    }

    pub(crate) fn node_type_choices(&self) -> Vec<Option<Symbol>> {
        if self.kind.hetero_node {
            self.node_types.iter().cloned().map(Some).collect()
        } else {
            vec![None]
        }
    }

    pub(crate) fn edge_type_choices(&self) -> Vec<Option<Symbol>> {
        if self.kind.hetero_edge {
            self.edge_types.iter().cloned().map(Some).collect()
        } else {
            vec![None]
        }
    }

    pub(crate) fn node_keys(&self) -> Vec<NodeKey> {
        let types = self.node_type_choices();
        (1..=self.max_node_ids)
            .flat_map(|id| types.iter().map(move |ty| NodeKey { id, ty: ty.clone() }))
            .collect()
    }

    /// Number of graphs in the universe, by closed form.
    pub fn count(&self) -> u128 {
        let statics = self.count_static();
        if self.kind.dynamic {
            // Each timestamp holds either nothing or a graph with a node;
            // the empty static graph stands for "nothing".
            pow(statics, self.max_timestamps as u128)
        } else {
            statics
        }
    }

    fn count_static(&self) -> u128 {
        let a = self.attr_choices().len() as u128;
        let keys = self.node_keys().len() as u128;
        let per_key: u128 = (1..=self.node_mult()).map(|c| pow(a, c as u128)).fold(0, add);
        let slot_poly: Vec<u128> = (0..=self.edge_mult()).map(|c| pow(a, c as u128)).collect();
        let types = self.edge_type_choices().len() as u128;
        (0..=keys)
            .map(|j| {
                let slots = mul(shape_count(&self.kind, j, self.self_loops), types);
                let edges = bounded_power_sum(&slot_poly, slots, self.max_edges);
                mul(mul(binomial(keys, j), pow(per_key, j)), edges)
            })
            .fold(0, add)
    }
}

fn add(a: u128, b: u128) -> u128 {
    a.saturating_add(b)
}

fn mul(a: u128, b: u128) -> u128 {
    a.saturating_mul(b)
}

fn pow(base: u128, exp: u128) -> u128 {
    let (mut out, mut base, mut exp) = (1u128, base, exp);
    while exp > 0 {
        if exp & 1 == 1 {
            out = mul(out, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    out
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| mul(acc, n - i) / (i + 1))
}

/// Ordered Bell number: surjections onto blocks of every size.
fn fubini(n: u128) -> u128 {
    let mut a = vec![1u128];
    for m in 1..=n {
        let v = (1..=m).map(|k| mul(binomial(m, k), a[(m - k) as usize])).fold(0, add);
        a.push(v);
    }
    a[n as usize]
}

/// Number of distinct edge endpoints over `j` present node keys.
fn shape_count(kind: &GraphKind, j: u128, loops: bool) -> u128 {
    let min_size = if loops { 1 } else { 2 };
    match (kind.hyper, kind.directed) {
        (false, true) => j * j - if loops { 0 } else { j },
        (false, false) => j * (j + 1) / 2 - if loops { 0 } else { j },
        (true, false) => (min_size..=j).map(|i| binomial(j, i)).fold(0, add),
        // A gap-free numbering of i nodes starts at 0 or 1 and is a
        // surjection onto the levels it uses.
        (true, true) => (min_size..=j)
            .map(|i| mul(binomial(j, i), mul(2, fubini(i))))
            .fold(0, add),
    }
}

/// Sum of the coefficients of x^0..=x^bound in poly^n.
fn bounded_power_sum(poly: &[u128], n: u128, bound: Option<usize>) -> u128 {
    let Some(b) = bound else {
        return pow(poly.iter().copied().fold(0, add), n);
    };
    let times = |x: &[u128], y: &[u128]| {
        let mut out = vec![0u128; b + 1];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate().take(b + 1 - i) {
                out[i + j] = add(out[i + j], mul(*xi, *yj));
            }
        }
        out
    };
    let mut base: Vec<u128> = poly.iter().copied().take(b + 1).collect();
    let mut out = vec![0u128; b + 1];
    out[0] = 1;
    let mut exp = n;
    while exp > 0 {
        if exp & 1 == 1 {
            out = times(&out, &base);
        }
        base = times(&base, &base);
        exp >>= 1;
    }
    out.into_iter().fold(0, add)
}

/// All gap-free numberings of `nodes`, undirected ones being all zero.
pub(crate) fn numberings(nodes: &[NodeKey], directed: bool) -> Vec<Endpoints> {
    if !directed {
        return vec![Endpoints::Hyper(nodes.iter().map(|k| (k.clone(), 0)).collect())];
    }
    let n = nodes.len();
    let radix = n as u32 + 1;
    let mut out = Vec::new();
    for code in 0..(radix as u64).pow(n as u32) {
        let mut c = code;
        let values: Vec<u32> = (0..n)
            .map(|_| {
                let v = (c % radix as u64) as u32;
                c /= radix as u64;
                v
            })
            .collect();
        if numbering_gap_free(values.iter().copied()) {
            out.push(Endpoints::Hyper(
                nodes.iter().cloned().zip(values).collect(),
            ));
        }
    }
    out
}

/// Endpoints over the present keys, one per unordered pair when undirected.
pub(crate) fn shapes(kind: &GraphKind, keys: &[NodeKey], loops: bool) -> Vec<Endpoints> {
    let mut out = Vec::new();
    if kind.hyper {
        let min_size = if loops { 1 } else { 2 };
        for mask in 1u64..(1 << keys.len()) {
            let subset: Vec<NodeKey> = keys
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, k)| k.clone())
                .collect();
            if subset.len() >= min_size {
                out.extend(numberings(&subset, kind.directed));
            }
        }
    } else {
        for (i, u) in keys.iter().enumerate() {
            for (j, v) in keys.iter().enumerate() {
                if (i == j && !loops) || (!kind.directed && j < i) {
                    continue;
                }
                out.push(Endpoints::Simple(u.clone(), v.clone()));
            }
        }
    }
    out
}

/// Every sequence of at most `max` attribute choices, shortest first.
fn occurrence_lists(choices: &[Option<AttrValue>], max: u32) -> Vec<Vec<Option<AttrValue>>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for prefix in &layer {
            for c in choices {
                let mut l: Vec<Option<AttrValue>> = prefix.clone();
                l.push(c.clone());
                next.push(l);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// A finite universe, enumerated once. Dynamic universes are indexed
/// mixed-radix over the static graphs, one digit per timestamp.
pub struct Universe {
    spec: UniverseSpec,
    statics: Vec<Snapshot>,
}

/// Every valid graph within `spec`, each exactly once, in a fixed order
/// that starts with the empty graph.
pub fn enumerate(spec: &UniverseSpec) -> Result<Universe> {
    let size = spec.count();
    if size > spec.cap as u128 {
        return Err(Error::BoundsTooLarge {
            size,
            cap: spec.cap,
        });
    }
    let keys = spec.node_keys();
    let node_opts = occurrence_lists(&spec.attr_choices(), spec.node_mult());
    let edge_opts = occurrence_lists(&spec.attr_choices(), spec.edge_mult());
    let edge_types = spec.edge_type_choices();

    let mut slot_cache: HashMap<Vec<NodeKey>, Vec<(Endpoints, Option<Symbol>)>> = HashMap::new();
    let mut statics = Vec::new();
    let mut choice = vec![0usize; keys.len()];
    loop {
        let mut nodes = Vec::new();
        let mut present = Vec::new();
        for (key, &c) in keys.iter().zip(&choice) {
            let occ = &node_opts[c];
            if !occ.is_empty() {
                present.push(key.clone());
            }
            for (m, attr) in occ.iter().enumerate() {
                nodes.push(NodeRecord {
                    key: key.clone(),
                    multiplicity: m as u32 + 1,
                    attr: attr.clone(),
                });
            }
        }
        let slots = slot_cache.entry(present.clone()).or_insert_with(|| {
            if spec.max_edges == Some(0) {
                return Vec::new();
            }
            shapes(&spec.kind, &present, spec.self_loops)
                .into_iter()
                .flat_map(|ends| edge_types.iter().map(move |t| (ends.clone(), t.clone())))
                .collect::<Vec<_>>()
        });
        let mut edges = Vec::new();
        fill_edges(
            slots,
            0,
            &edge_opts,
            !spec.kind.directed && !spec.kind.hyper,
            spec.max_edges.unwrap_or(usize::MAX),
            &mut edges,
            &mut |edges| {
                let mut s = Snapshot {
                    time: 0,
                    nodes: nodes.clone(),
                    edges: edges.to_vec(),
                };
                s.nodes.sort();
                s.edges.sort();
                statics.push(s);
            },
        );

        // Advance the node choice, last key fastest.
        let mut i = keys.len();
        loop {
            if i == 0 {
                return Ok(Universe {
                    spec: spec.clone(),
                    statics,
                });
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < node_opts.len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Emits every assignment of nonempty occurrence lists to slots from
/// `start` on, using at most `budget` records. With `mirror`, each simple
/// edge is also stored reversed. Recursion depth is bounded by the number
/// of slots used, not the number of slots.
fn fill_edges(
    slots: &[(Endpoints, Option<Symbol>)],
    start: usize,
    opts: &[Vec<Option<AttrValue>>],
    mirror: bool,
    budget: usize,
    acc: &mut Vec<EdgeRecord>,
    emit: &mut impl FnMut(&[EdgeRecord]),
) {
    emit(acc);
    for (i, (ends, ty)) in slots.iter().enumerate().skip(start) {
        for occ in opts.iter().filter(|o| !o.is_empty() && o.len() <= budget) {
            let before = acc.len();
            for (m, attr) in occ.iter().enumerate() {
                let rec = EdgeRecord {
                    ends: ends.clone(),
                    edge_type: ty.clone(),
                    multiplicity: m as u32 + 1,
                    attr: attr.clone(),
                };
                if let Endpoints::Simple(u, v) = ends {
                    if mirror && u != v {
                        acc.push(EdgeRecord {
                            ends: Endpoints::Simple(v.clone(), u.clone()),
                            ..rec.clone()
                        });
                    }
                }
                acc.push(rec);
            }
            fill_edges(slots, i + 1, opts, mirror, budget - occ.len(), acc, emit);
            acc.truncate(before);
        }
    }
}

impl Universe {
    pub fn spec(&self) -> &UniverseSpec {
        &self.spec
    }

    pub fn len(&self) -> u64 {
        if self.spec.kind.dynamic {
            pow(self.statics.len() as u128, self.spec.max_timestamps as u128) as u64
        } else {
            self.statics.len() as u64
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, index: u64) -> GraphValue {
        let kind = self.spec.kind;
        if !kind.dynamic {
            return GraphValue {
                kind,
                snapshots: vec![self.statics[index as usize].clone()],
            };
        }
        let n = self.statics.len() as u64;
        let mut rest = index;
        let mut snapshots = Vec::new();
        for t in 0..self.spec.max_timestamps {
            let digit = rest % n;
            rest /= n;
            if digit != 0 {
                snapshots.push(Snapshot {
                    time: t as i64,
                    ..self.statics[digit as usize].clone()
                });
            }
        }
        GraphValue { kind, snapshots }
    }

    pub fn iter(&self) -> impl Iterator<Item = GraphValue> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }
}
