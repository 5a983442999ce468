//! Clifford group, Pin and Spin, and the covering map onto `O(p,q)`.

mod exp;
mod group;

pub use exp::{boost, exp_bivector, lie_algebra_basis, rotation};
pub use group::{
    chi, component_of, matrix_component, pin_normalize, Component, OrthogonalMatrix, Parity,
    SpinElement,
};
