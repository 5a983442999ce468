//! Standard-Model particle content, hypercharge bookkeeping and the Dirac
//! scalar product.

mod bilinear;
mod registry;

pub use bilinear::{
    bilinear_decomposition_check, dirac_adjoint, dirac_form_matrix, dirac_form_signature,
    dirac_pairing, spin_invariance_check, BilinearReport,
};
pub use registry::{
    hypercharge_audit, AuditEntry, Color, Handedness, ParticleSpec, Registry, Sector, Su2,
    FAMILIES,
};
