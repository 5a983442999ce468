//! Exact arithmetic in the real Clifford algebra `C(p,q)` and its
//! complexification.

mod blade;
mod center;
mod json;
mod multivector;
mod signature;

pub use blade::{blade_product, Blade};
pub use center::{center, CenterReport};
pub use json::{MultivectorJson, TermJson};
pub use multivector::{orientation_operator, orientation_square_sign, Multivector};
pub use signature::Signature;
