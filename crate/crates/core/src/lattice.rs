//! Expressivity order between graph kinds, searched over the embedding
//! catalog, and composition of embeddings along a chain.
//!
//! A chain from `k1` to `k2` witnesses that `k2` can encode every graph of
//! kind `k1`. Search is breadth-first over all kinds the flag vocabulary
//! can express, so [`plan`] returns a shortest chain; ties are broken by
//! trying steps in [`Property`] declaration order.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::embed::{catalog, find, Direction, Embedding, Property};
use crate::error::{Error, Result};
use crate::graph::GraphValue;
use crate::kind::GraphKind;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyStep {
    pub property: Property,
    pub direction: Direction,
    pub embedding: &'static str,
}

impl PropertyStep {
    pub fn of(e: &dyn Embedding) -> Self {
        PropertyStep {
            property: e.property(),
            direction: e.direction(),
            embedding: e.name(),
        }
    }

    pub fn resolve(&self) -> &'static dyn Embedding {
        find(self.embedding).expect("steps only name catalog embeddings")
    }
}

impl fmt::Display for PropertyStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} via {} ({})",
            self.direction,
            self.property,
            self.embedding,
            self.resolve().lemma()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessChain {
    pub source: GraphKind,
    pub target: GraphKind,
    pub steps: Vec<PropertyStep>,
}

impl WitnessChain {
    pub fn identity(kind: GraphKind) -> Self {
        WitnessChain {
            source: kind,
            target: kind,
            steps: Vec::new(),
        }
    }

    /// Builds a chain from embedding names, checking that each step accepts
    /// the kind the previous one produces.
    pub fn from_names<S: AsRef<str>>(source: GraphKind, names: &[S]) -> Result<Self> {
        let mut kind = source;
        let mut steps = Vec::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            let e = find(name.as_ref())?;
            if !e.lossless() {
                return Err(Error::UnknownEmbedding(format!(
                    "{} is lossy and cannot be chained",
                    e.name()
                )));
            }
            if !e.accepts(&kind) {
                return Err(Error::KindMismatch {
                    step: i,
                    expected: kind,
                    found: kind,
                });
            }
            kind = e.target_kind(&kind);
            steps.push(PropertyStep::of(e));
        }
        Ok(WitnessChain {
            source,
            target: kind,
            steps,
        })
    }

    /// The kinds visited, from source to target.
    pub fn kinds(&self) -> Vec<GraphKind> {
        let mut out = vec![self.source];
        for s in &self.steps {
            let k = *out.last().unwrap();
            out.push(s.resolve().target_kind(&k));
        }
        out
    }

    pub fn lemmas(&self) -> Vec<&'static str> {
        self.steps.iter().map(|s| s.resolve().lemma()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }
}

impl fmt::Display for WitnessChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return f.write_str("[]");
        }
        let names: Vec<String> = self
            .steps
            .iter()
            .map(|s| format!("{} ({})", s.embedding, s.resolve().lemma()))
            .collect();
        write!(f, "[{}]", names.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    LessOrEqual,
    GreaterOrEqual,
    Equivalent,
    IncomparableByCatalog,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::LessOrEqual => "≼",
            Relation::GreaterOrEqual => "≽",
            Relation::Equivalent => "≈",
            Relation::IncomparableByCatalog => "incomparable-by-catalog",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderResult {
    pub relation: Relation,
    /// Chain from the first kind to the second.
    pub forward: Option<WitnessChain>,
    /// Chain from the second kind to the first.
    pub backward: Option<WitnessChain>,
}

/// Catalog embeddings in tie-break order.
fn ordered_catalog() -> Vec<&'static dyn Embedding> {
    let mut out: Vec<&'static dyn Embedding> = catalog().iter().map(|e| e.as_ref()).collect();
    out.sort_by_key(|e| e.property());
    out
}

/// Shortest chain of catalog embeddings from `from` to `to`.
pub fn plan(from: GraphKind, to: GraphKind) -> Result<WitnessChain> {
    if from == to {
        return Ok(WitnessChain::identity(from));
    }
    let steps = ordered_catalog();
    let mut parent: BTreeMap<GraphKind, (GraphKind, &'static dyn Embedding)> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    while let Some(k) = queue.pop_front() {
        for e in &steps {
            if !e.accepts(&k) {
                continue;
            }
            let next = e.target_kind(&k);
            if next == from || parent.contains_key(&next) {
                continue;
            }
            parent.insert(next, (k, *e));
            if next == to {
                let mut chain = Vec::new();
                let mut cur = to;
                while cur != from {
                    let (prev, e) = parent[&cur];
                    chain.push(PropertyStep::of(e));
                    cur = prev;
                }
                chain.reverse();
                return Ok(WitnessChain {
                    source: from,
                    target: to,
                    steps: chain,
                });
            }
            queue.push_back(next);
        }
    }
    Err(Error::NoPath { from, to })
}

pub fn compare(a: GraphKind, b: GraphKind) -> OrderResult {
    let forward = plan(a, b).ok();
    let backward = plan(b, a).ok();
    let relation = match (&forward, &backward) {
        (Some(_), Some(_)) => Relation::Equivalent,
        (Some(_), None) => Relation::LessOrEqual,
        (None, Some(_)) => Relation::GreaterOrEqual,
        (None, None) => Relation::IncomparableByCatalog,
    };
    OrderResult {
        relation,
        forward,
        backward,
    }
}

/// Applies every step of `chain` to `g` in order.
pub fn compose(g: &GraphValue, chain: &WitnessChain) -> Result<GraphValue> {
    if g.kind != chain.source {
        return Err(Error::KindMismatch {
            step: 0,
            expected: chain.source,
            found: g.kind,
        });
    }
    let kinds = chain.kinds();
    let mut cur = g.clone();
    for (i, step) in chain.steps.iter().enumerate() {
        cur = step.resolve().forward(&cur)?;
        if cur.kind != kinds[i + 1] {
            return Err(Error::KindMismatch {
                step: i + 1,
                expected: kinds[i + 1],
                found: cur.kind,
            });
        }
    }
    Ok(cur)
}

/// The inverse of a composed chain: per-step inverses in reverse order.
pub struct ChainInverse {
    chain: WitnessChain,
}

pub fn invert_chain(chain: &WitnessChain) -> ChainInverse {
    ChainInverse {
        chain: chain.clone(),
    }
}

impl ChainInverse {
    pub fn chain(&self) -> &WitnessChain {
        &self.chain
    }

    pub fn apply(&self, g: &GraphValue) -> Result<GraphValue> {
        if g.kind != self.chain.target {
            return Err(Error::KindMismatch {
                step: self.chain.len(),
                expected: self.chain.target,
                found: g.kind,
            });
        }
        let kinds = self.chain.kinds();
        let mut cur = g.clone();
        for (i, step) in self.chain.steps.iter().enumerate().rev() {
            cur = step.resolve().inverse(&cur, &kinds[i])?;
        }
        Ok(cur)
    }
}
