//! Edge-subgraph posets, induced-subgraph posets and bond lattices of small
//! graphs, with the inversion that recovers the abstract bond lattice from
//! the abstract edge-subgraph poset.

pub mod cache;
pub mod canon;
pub mod catalog;
pub mod counting;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod named;
pub mod poset;
pub mod reconstruct;
pub mod verify;

pub use error::*;
pub use graph::{Graph, VertexSet};
pub use graph6::{format_graph6, parse_graph6};
pub use iso::{canonical_form, cert, is_isomorphic, CanonicalCert};
pub use poset::{abstract_cert, AbstractPosetCert, build_omega, build_p, build_q, legitimate_labelings, poset_isomorphic, PosetKind, WeightedPoset};
