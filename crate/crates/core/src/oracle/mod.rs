//! Exhaustive and randomized checking of embeddings.
//!
//! [`enumerate`] lists every valid graph of a kind within small bounds;
//! [`verify`] runs an embedding over such a universe and checks round-trips,
//! injectivity and the kind of every image; [`fuzz`] checks round-trips and
//! typing on seeded random graphs.

mod random;
mod universe;

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use random::random_graph;
pub use universe::{enumerate, Universe, UniverseSpec, DEFAULT_CAP, STANDARD_BUDGET};

use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::graph::GraphValue;
use crate::kind::GraphKind;
use crate::validate::validate_as;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub input: GraphValue,
    /// The second source graph of an injectivity collision.
    pub other: Option<GraphValue>,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Fuzz { seed: u64, count: u64 },
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub embedding: String,
    pub source_kind: GraphKind,
    pub mode: Mode,
    pub universe_size: u64,
    pub roundtrip_failures: Vec<Counterexample>,
    pub injectivity_collisions: Vec<Counterexample>,
    pub typing_failures: Vec<Counterexample>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.roundtrip_failures.is_empty()
            && self.injectivity_collisions.is_empty()
            && self.typing_failures.is_empty()
    }
}

/// Reports compare equal when their findings agree; elapsed time is ignored.
impl PartialEq for VerificationReport {
    fn eq(&self, other: &Self) -> bool {
        self.embedding == other.embedding
            && self.source_kind == other.source_kind
            && self.mode == other.mode
            && self.universe_size == other.universe_size
            && self.roundtrip_failures == other.roundtrip_failures
            && self.injectivity_collisions == other.injectivity_collisions
            && self.typing_failures == other.typing_failures
    }
}

/// The source kind each embedding is checked on by default.
pub fn reference_kind(e: &dyn Embedding) -> GraphKind {
    let spec = match e.name() {
        "hyper_to_directed" => "hyper",
        "untagged_clique_expansion" => "undirected,hyper",
        "attributed_to_heterogeneous" | "directed_to_undirected" => "attributed",
        "int_attributed_to_multigraph" => "int-attributed",
        "multigraph_to_int_attributed" => "multi",
        "undirected_to_directed" => "undirected",
        "multi_to_simple" => "multi,attributed",
        "heterogeneous_to_homogeneous" => "hetero-node,hetero-edge,attributed",
        "dynamic_to_static" => "dynamic,attributed",
        _ => "directed",
    };
    let kind: GraphKind = spec.parse().expect("reference kinds parse");
    debug_assert!(e.accepts(&kind), "{} rejects its reference kind", e.name());
    kind
}

fn fingerprint(g: &GraphValue) -> u64 {
    let mut h = DefaultHasher::new();
    g.hash(&mut h);
    h.finish()
}

struct Checker<'a> {
    e: &'a dyn Embedding,
    source: GraphKind,
    roundtrip: Vec<Counterexample>,
    typing: Vec<Counterexample>,
}

impl Checker<'_> {
    /// Round-trip and typing checks on one graph; returns the image.
    fn check(&mut self, g: &GraphValue) -> Option<GraphValue> {
        let fail = |detail: String| Counterexample {
            input: g.clone(),
            other: None,
            detail,
        };
        let out = match self.e.forward(g) {
            Ok(out) => out,
            Err(err) => {
                self.roundtrip.push(fail(format!("forward failed: {err}")));
                return None;
            }
        };
        let target = self.e.target_kind(&self.source);
        let diags = validate_as(&out, &target);
        if out.kind != target || !diags.is_empty() {
            self.typing.push(fail(format!(
                "image is not of kind {target}: {}",
                Error::InvalidGraph(diags)
            )));
        }
        match self.e.inverse(&out, &self.source) {
            Ok(back) if back.equals(g) => {}
            Ok(_) => self.roundtrip.push(fail("inverse returned a different graph".into())),
            Err(err) => self.roundtrip.push(fail(format!("inverse failed: {err}"))),
        }
        Some(out)
    }
}

fn sort_counterexamples(list: &mut [Counterexample]) {
    list.sort_by(|a, b| {
        (&a.input.snapshots, a.other.as_ref().map(|o| &o.snapshots))
            .cmp(&(&b.input.snapshots, b.other.as_ref().map(|o| &o.snapshots)))
    });
}

fn check_source(e: &dyn Embedding, kind: &GraphKind) -> Result<()> {
    if e.accepts(kind) {
        Ok(())
    } else {
        Err(Error::InvalidSource {
            embedding: e.name(),
            reason: format!("kind {kind} is not accepted"),
        })
    }
}

/// Checks `e` on every graph of `spec`: round-trip, pairwise injectivity of
/// the images and their kind.
pub fn verify(e: &dyn Embedding, spec: &UniverseSpec) -> Result<VerificationReport> {
    check_source(e, &spec.kind)?;
    let start = Instant::now();
    let universe = enumerate(spec)?;
    let mut checker = Checker {
        e,
        source: spec.kind,
        roundtrip: Vec::new(),
        typing: Vec::new(),
    };
    let mut images: Vec<(u64, GraphValue)> = Vec::new();
    let mut by_hash: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut collisions = Vec::new();
    for i in 0..universe.len() {
        let g = universe.get(i);
        let Some(out) = checker.check(&g) else {
            continue;
        };
        let h = fingerprint(&out);
        let slot = by_hash.entry(h).or_default();
        for &j in slot.iter() {
            let (src, img) = &images[j];
            if *img == out {
                collisions.push(Counterexample {
                    input: universe.get(*src),
                    other: Some(g.clone()),
                    detail: "both map to the same image".into(),
                });
            }
        }
        slot.push(images.len());
        images.push((i, out));
    }
    sort_counterexamples(&mut checker.roundtrip);
    sort_counterexamples(&mut checker.typing);
    sort_counterexamples(&mut collisions);
    Ok(VerificationReport {
        embedding: e.name().to_string(),
        source_kind: spec.kind,
        mode: Mode::Exhaustive,
        universe_size: universe.len(),
        roundtrip_failures: checker.roundtrip,
        injectivity_collisions: collisions,
        typing_failures: checker.typing,
        elapsed: start.elapsed(),
    })
}

/// Checks round-trip and typing of `e` on `count` random graphs within
/// `bounds`. The same seed gives the same graphs and the same report.
pub fn fuzz(e: &dyn Embedding, seed: u64, count: u64, bounds: &UniverseSpec) -> Result<VerificationReport> {
    check_source(e, &bounds.kind)?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checker = Checker {
        e,
        source: bounds.kind,
        roundtrip: Vec::new(),
        typing: Vec::new(),
    };
    for _ in 0..count {
        let g = random_graph(bounds, &mut rng);
        checker.check(&g);
    }
    sort_counterexamples(&mut checker.roundtrip);
    sort_counterexamples(&mut checker.typing);
    Ok(VerificationReport {
        embedding: e.name().to_string(),
        source_kind: bounds.kind,
        mode: Mode::Fuzz { seed, count },
        universe_size: count,
        roundtrip_failures: checker.roundtrip,
        injectivity_collisions: Vec::new(),
        typing_failures: checker.typing,
        elapsed: start.elapsed(),
    })
}
