//! Invertible embeddings between graph kinds.
//!
//! An [`Embedding`] supplies a raw `encode`/`decode` pair. The provided
//! [`Embedding::forward`] and [`Embedding::inverse`] wrap them with the
//! checks every embedding shares: the source must be valid and of an
//! accepted kind, and the inverse only accepts graphs that `encode`
//! reproduces exactly, so anything outside the image is rejected rather than
//! guessed at.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::{GraphValue, Snapshot};
use crate::kind::GraphKind;
use crate::validate::validate;

mod attribution;
mod direction;
mod dynamic;
mod hetero;
mod hyper;
mod multi;

pub use attribution::{
    AttributedToHeterogeneous, IntAttributedToMultigraph, MultigraphToIntAttributed,
    UnattributedToAttributed,
};
pub use direction::{DirectedToHeterogeneous, DirectedToUndirected};
pub use dynamic::{DynamicToStatic, StaticToDynamic};
pub use hetero::{AddEdgeTypes, AddNodeTypes, HeterogeneousToHomogeneous, UNIT_TYPE};
pub use hyper::{DirectedToHyper, HyperToDirected, UntaggedCliqueExpansion};
pub use multi::MultiToSimple;

/// The structural property an embedding adds or removes. The declaration
/// order is the tie-break order used when planning chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Attributed,
    Hyper,
    Multi,
    Directed,
    Heterogeneous,
    Dynamic,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Attributed => "attributed",
            Property::Hyper => "hyper",
            Property::Multi => "multi",
            Property::Directed => "directed",
            Property::Heterogeneous => "heterogeneous",
            Property::Dynamic => "dynamic",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            Property::Attributed,
            Property::Hyper,
            Property::Multi,
            Property::Directed,
            Property::Heterogeneous,
            Property::Dynamic,
        ]
        .into_iter()
        .find(|p| p.name() == s)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Add,
    Remove,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Add => "add",
            Direction::Remove => "remove",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "add" => Some(Direction::Add),
            "remove" => Some(Direction::Remove),
            _ => None,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub trait Embedding: Send + Sync {
    fn name(&self) -> &'static str;

    /// The lemma this embedding realizes, e.g. `"Lemma 3"`.
    fn lemma(&self) -> &'static str;

    fn property(&self) -> Property;

    fn direction(&self) -> Direction;

    fn accepts(&self, kind: &GraphKind) -> bool;

    /// The kind of `forward(g)` for any `g` of kind `source`.
    fn target_kind(&self, source: &GraphKind) -> GraphKind;

    /// Raw forward map. Called only on valid graphs of an accepted kind,
    /// in canonical order.
    fn encode(&self, g: &GraphValue) -> Result<GraphValue>;

    /// Raw inverse. May produce anything on inputs outside the image; the
    /// checked [`Embedding::inverse`] catches that.
    fn decode(&self, g: &GraphValue, source: &GraphKind) -> Result<GraphValue>;

    /// False for the deliberately lossy demonstration maps.
    fn lossless(&self) -> bool {
        true
    }

    fn forward(&self, g: &GraphValue) -> Result<GraphValue> {
        if !self.accepts(&g.kind) {
            return Err(Error::InvalidSource {
                embedding: self.name(),
                reason: format!("kind {} is not accepted", g.kind),
            });
        }
        let diags = validate(g);
        if !diags.is_empty() {
            return Err(Error::InvalidSource {
                embedding: self.name(),
                reason: Error::InvalidGraph(diags).to_string(),
            });
        }
        let mut out = self.encode(&g.sorted())?;
        out.kind = self.target_kind(&g.kind);
        out.sort_in_place();
        Ok(out)
    }

    /// Inverse on the image of `forward` restricted to graphs of kind
    /// `source`.
    fn inverse(&self, g: &GraphValue, source: &GraphKind) -> Result<GraphValue> {
        let not_in_image = |reason: String| Error::NotInImage {
            embedding: self.name(),
            reason,
        };
        if !self.accepts(source) {
            return Err(Error::InvalidSource {
                embedding: self.name(),
                reason: format!("kind {source} is not accepted"),
            });
        }
        let expected = self.target_kind(source);
        if g.kind != expected {
            return Err(not_in_image(format!(
                "expected kind {expected}, found {}",
                g.kind
            )));
        }
        let diags = validate(g);
        if !diags.is_empty() {
            return Err(not_in_image(Error::InvalidGraph(diags).to_string()));
        }
        let g = g.sorted();
        let mut decoded = self.decode(&g, source)?;
        decoded.kind = *source;
        decoded.sort_in_place();
        let diags = validate(&decoded);
        if !diags.is_empty() {
            return Err(not_in_image(format!(
                "preimage would be invalid: {}",
                Error::InvalidGraph(diags)
            )));
        }
        let again = self
            .encode(&decoded)
            .map_err(|e| not_in_image(e.to_string()))?;
        if again.sorted().snapshots != g.snapshots {
            return Err(not_in_image("graph is not reproduced by the forward map".into()));
        }
        Ok(decoded)
    }
}

impl fmt::Debug for dyn Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name(), self.lemma())
    }
}

/// Applies `f` to every snapshot, producing a graph of kind `kind`.
pub(crate) fn map_snapshots(
    g: &GraphValue,
    kind: GraphKind,
    mut f: impl FnMut(&Snapshot) -> Result<Snapshot>,
) -> Result<GraphValue> {
    let snapshots = g.snapshots.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
    Ok(GraphValue { kind, snapshots })
}

/// An embedding that only changes the declared kind; the records already
/// satisfy the target kind. Its inverse relies on validation of the
/// preimage to reject records the source kind does not allow.
pub struct Relabel {
    name: &'static str,
    lemma: &'static str,
    property: Property,
    direction: Direction,
    accepts: fn(&GraphKind) -> bool,
    target: fn(GraphKind) -> GraphKind,
}

impl Embedding for Relabel {
    fn name(&self) -> &'static str {
        self.name
    }
    fn lemma(&self) -> &'static str {
        self.lemma
    }
    fn property(&self) -> Property {
        self.property
    }
    fn direction(&self) -> Direction {
        self.direction
    }
    fn accepts(&self, kind: &GraphKind) -> bool {
        (self.accepts)(kind)
    }
    fn target_kind(&self, source: &GraphKind) -> GraphKind {
        (self.target)(*source)
    }
    fn encode(&self, g: &GraphValue) -> Result<GraphValue> {
        Ok(g.clone().with_kind(self.target_kind(&g.kind)))
    }
    fn decode(&self, g: &GraphValue, source: &GraphKind) -> Result<GraphValue> {
        Ok(g.clone().with_kind(*source))
    }
}

pub const UNDIRECTED_TO_DIRECTED: Relabel = Relabel {
    name: "undirected_to_directed",
    lemma: "Lemma 6",
    property: Property::Directed,
    direction: Direction::Add,
    accepts: |k| !k.directed && !k.hyper,
    target: |k| GraphKind { directed: true, ..k },
};

pub const SIMPLE_TO_MULTI_NODE: Relabel = Relabel {
    name: "simple_to_multi_node",
    lemma: "Lemma 7",
    property: Property::Multi,
    direction: Direction::Add,
    accepts: |k| !k.multi_node,
    target: |k| GraphKind {
        multi_node: true,
        ..k
    },
};

pub const SIMPLE_TO_MULTI_EDGE: Relabel = Relabel {
    name: "simple_to_multi_edge",
    lemma: "Lemma 7",
    property: Property::Multi,
    direction: Direction::Add,
    accepts: |k| !k.multi_edge,
    target: |k| GraphKind {
        multi_edge: true,
        ..k
    },
};

/// Every lossless embedding, in a fixed order.
pub fn catalog() -> &'static [Box<dyn Embedding>] {
    static CATALOG: OnceLock<Vec<Box<dyn Embedding>>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        vec![
            Box::new(HyperToDirected),
            Box::new(DirectedToHyper),
            Box::new(DirectedToHeterogeneous),
            Box::new(UnattributedToAttributed),
            Box::new(AttributedToHeterogeneous),
            Box::new(IntAttributedToMultigraph),
            Box::new(MultigraphToIntAttributed),
            Box::new(DirectedToUndirected),
            Box::new(UNDIRECTED_TO_DIRECTED),
            Box::new(MultiToSimple),
            Box::new(SIMPLE_TO_MULTI_NODE),
            Box::new(SIMPLE_TO_MULTI_EDGE),
            Box::new(HeterogeneousToHomogeneous),
            Box::new(AddNodeTypes),
            Box::new(AddEdgeTypes),
            Box::new(DynamicToStatic),
            Box::new(StaticToDynamic),
        ]
    })
}

/// Looks up a catalog embedding, or the lossy clique expansion, by name.
pub fn find(name: &str) -> Result<&'static dyn Embedding> {
    static UNTAGGED: UntaggedCliqueExpansion = UntaggedCliqueExpansion;
    if name == UNTAGGED.name() {
        return Ok(&UNTAGGED);
    }
    catalog()
        .iter()
        .find(|e| e.name() == name)
        .map(|e| e.as_ref())
        .ok_or_else(|| Error::UnknownEmbedding(name.to_string()))
}
