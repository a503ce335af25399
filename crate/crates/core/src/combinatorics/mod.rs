//! Combinatorial models of ideal Coxeter polyhedra and their validation.

mod andreev;
mod catalog;
mod cusp;
mod icp;
mod invariants;
mod iso;
mod model;
mod profile;
mod validate;

pub use andreev::{andreev_check, AndreevReport};
pub use catalog::{antiprism, catalog, catalog_all, CATALOG_NAMES};
pub use cusp::{classify_cusp, classify_labels, CuspType};
pub use icp::parse_icp;
pub use invariants::{compute_invariants, InvariantVector};
pub use iso::{find_isomorphism, is_isomorphic};
pub use model::{canonical_cycle, AngleLabel, Builder, Edge, ModelError, PolyhedronCombinatorics};
pub use profile::{face_profile, FaceProfile};
pub use validate::{validate, ValidationReport};
