//! Graph kinds, a universal graph value, and invertible embeddings between
//! graph kinds.
//!
//! Every embedding maps graphs of one kind into another and comes with an
//! inverse defined on its image. The [`lattice`] module searches the catalog
//! of embeddings to relate kinds by expressivity, [`oracle`] checks the
//! embeddings exhaustively on small universes, and [`format`] is the textual
//! exchange format.

pub mod attr;
pub mod embed;
pub mod error;
pub mod format;
pub mod graph;
pub mod kind;
pub mod lattice;
pub mod oracle;
mod text;
pub mod validate;

pub use attr::{AttrValue, Symbol};
pub use error::{Error, Result};
pub use graph::{EdgeRecord, Endpoints, GraphValue, NodeKey, NodeRecord, Snapshot};
pub use kind::{Attribution, GraphKind};
pub use validate::{kind_of, validate, validate_as, Diagnostic, Rule};
