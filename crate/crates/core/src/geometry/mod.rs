//! Spin connection, spinor covariant derivative and Dirac operator on a
//! periodic lattice.
//!
//! Only local frame data is modeled. Whether a global spin structure
//! exists (the second Stiefel-Whitney class of the manifold) is not
//! computed; a trivial torus frame is assumed.

mod fields;
mod io;
mod operators;

pub use fields::{
    lowered_asymmetry, ConnectionField, FrameField, Grid, SpinorField, DEFAULT_POINTS,
    MAX_GRID_AXES,
};
pub use io::{spinor_field_to_csv, ConnectionJson, FrameJson, SpinorFieldJson};
pub use operators::{covariant_derivative, dirac_operator, lift_to_spin};
