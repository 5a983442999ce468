//! Explicit complex matrix representations of Clifford algebras, with the
//! chirality and Majorana conjugation operators.

mod conjugation;
mod json;
mod representation;
mod spinor;

pub use conjugation::{
    build_conjugation, conjugation_channel, conjugation_channels, majorana_subspace, Conjugation,
};
pub use json::{matrix_from_json, matrix_to_json, ConjugationJson, MatrixJson, RepresentationJson};
pub use representation::{build_representation, GammaRepresentation};
pub use spinor::{chirality, weyl_projector, weyl_split, Chirality, SpinorVector};
