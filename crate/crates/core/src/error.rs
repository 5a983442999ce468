use thiserror::Error;

use crate::clifford::Signature;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(Signature, Signature),

    #[error("dimension n = {n} exceeds the limit {limit} for {what}")]
    DimensionTooLarge {
        n: u32,
        limit: u32,
        what: &'static str,
    },

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("invalid blade: {0}")]
    InvalidBlade(String),

    #[error("{0}")]
    Undefined(String),

    #[error("tensor product of two doubled algebras {0} and {1} is not representable")]
    DoubledTensor(String, String),

    #[error("structural classification of {sig} did not stabilize after {trials} trials; increase trials")]
    OracleUnstable { sig: Signature, trials: usize },

    #[error("structural classification of {sig} failed: {reason}")]
    OracleInconsistent { sig: Signature, reason: String },

    #[error("element is not in the Clifford group: {0}")]
    NotInCliffordGroup(String),

    #[error("element is not invertible")]
    NotInvertible,

    #[error("not expressible in Pin normal form: {0}")]
    NotPinNormalizable(String),

    #[error("not in Pin: {0}")]
    NotInPin(String),

    #[error("expected a bivector: {0}")]
    NotBivector(String),

    #[error("signature {0} admits no Majorana conjugation with c² = +1")]
    NotMajorana(Signature),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not antisymmetric after lowering an index (residual {0:e})")]
    NotAntisymmetric(f64),

    #[error("registry incomplete: missing {0:?}")]
    RegistryIncomplete(Vec<String>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
