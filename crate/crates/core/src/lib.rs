//! Clifford algebras `C(p,q)`, their classification, spinor representations,
//! Pin/Spin groups, a lattice Dirac operator and Standard-Model bookkeeping.
//!
//! Algebraic code is generic over the scalar type ([`scalar::Scalar`]); the
//! aliases below name the instantiations used throughout.

pub mod check;
pub mod classify;
pub mod clifford;
pub mod error;
pub mod gamma;
pub mod geometry;
pub mod linalg;
pub mod scalar;
pub mod sm;
pub mod spin;

pub use error::{Error, Result};

pub type Rational = num_rational::BigRational;
pub type GaussianRational = num_complex::Complex<Rational>;
pub use scalar::Complex64;

pub type RationalMultivector = clifford::Multivector<Rational>;
pub type ComplexMultivector = clifford::Multivector<GaussianRational>;
pub type FloatMultivector = clifford::Multivector<f64>;

pub type ExactRepresentation = gamma::GammaRepresentation<GaussianRational>;
pub type FloatRepresentation = gamma::GammaRepresentation<Complex64>;
