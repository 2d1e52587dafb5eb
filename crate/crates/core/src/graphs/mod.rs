//! Connected comparison structures up to isomorphism.
//!
//! Graphs are identified by a canonical code: the edge-indicator bitstring
//! over the `n(n-1)/2` vertex pairs (in lexicographic pair order) that is
//! lexicographically smallest over all relabelings of the vertices.

mod canonical;
mod enumerate;
mod properties;

pub use canonical::{canonical_code, CanonicalCode, MAX_CANONICAL_VERTICES};
pub use enumerate::{
    enumerate_connected, single_edge_extensions, GraphClass, MAX_ENUMERATION_VERTICES,
};
pub use properties::{properties, GraphProperties};
