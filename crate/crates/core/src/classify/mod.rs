//! Isomorphism types of real and complex Clifford algebras.

mod reduction;
mod spinor;
mod structural;
mod tables;
mod types;

pub use reduction::{
    base_case, classify_complex, classify_even, classify_real, periodicity_type,
    reduction_chain, ReductionChain, ReductionStep, Rule,
};
pub use spinor::{spinor_types, SpinorTypeReport};
pub use structural::{
    classify_structural, left_ideal_rank, DEFAULT_SEED, DEFAULT_TRIALS, MAX_ORACLE_DIM,
    REQUIRED_REPEATS,
};
pub use tables::{build_table, render_table, ClassificationJson, Family, TableFormat, TableRow};
pub use types::{tensor_type, DivisionRing, MatrixAlgebraType};
