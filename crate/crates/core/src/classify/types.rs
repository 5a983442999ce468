use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DivisionRing {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
    #[serde(rename = "H")]
    Quaternion,
}

impl DivisionRing {
    pub fn real_dimension(self) -> u64 {
        match self {
            DivisionRing::Real => 1,
            DivisionRing::Complex => 2,
            DivisionRing::Quaternion => 4,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            DivisionRing::Real => "ℝ",
            DivisionRing::Complex => "ℂ",
            DivisionRing::Quaternion => "ℍ",
        }
    }

    pub fn ascii(self) -> &'static str {
        match self {
            DivisionRing::Real => "R",
            DivisionRing::Complex => "C",
            DivisionRing::Quaternion => "H",
        }
    }
}

/// `M(d, K)`, or `M(d, K) ⊕ M(d, K)` when `doubled`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixAlgebraType {
    pub d: u64,
    pub ring: DivisionRing,
    pub doubled: bool,
}

impl MatrixAlgebraType {
    pub fn new(d: u64, ring: DivisionRing, doubled: bool) -> Self {
        Self { d, ring, doubled }
    }

    pub fn simple(d: u64, ring: DivisionRing) -> Self {
        Self::new(d, ring, false)
    }

    pub fn real_dimension(&self) -> u64 {
        let blocks = if self.doubled { 2 } else { 1 };
        blocks * self.d * self.d * self.ring.real_dimension()
    }

    /// Same ring and doubling; block sizes may differ.
    pub fn same_kind(&self, other: &Self) -> bool {
        self.ring == other.ring && self.doubled == other.doubled
    }

    /// Compact cell form used in the tables: `(d,K)`, or just `K` for `d = 1`,
    /// with ` ⊕ ` joining the two blocks of a doubled algebra.
    pub fn cell(&self) -> String {
        let block = if self.d == 1 {
            self.ring.symbol().to_string()
        } else {
            format!("({},{})", self.d, self.ring.symbol())
        };
        if self.doubled {
            format!("{block} ⊕ {block}")
        } else {
            block
        }
    }
}

impl fmt::Display for MatrixAlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let block = if self.d == 1 {
            self.ring.symbol().to_string()
        } else {
            format!("M({},{})", self.d, self.ring.symbol())
        };
        if self.doubled {
            write!(f, "{block} ⊕ {block}")
        } else {
            write!(f, "{block}")
        }
    }
}

/// Tensor product over ℝ of two matrix algebras:
///
/// ```text
/// M(n,ℝ)⊗M(m,ℝ) = M(nm,ℝ)   ℂ⊗ℂ = ℂ⊕ℂ
/// M(n,ℝ)⊗ℂ      = M(n,ℂ)    ℍ⊗ℂ = M(2,ℂ)
/// M(n,ℝ)⊗ℍ      = M(n,ℍ)    ℍ⊗ℍ = M(4,ℝ)
/// ```
///
/// extended multiplicatively over block sizes. Doubling distributes, so at
/// most one doubled operand is allowed (and none when the rings already
/// produce a doubled result).
pub fn tensor_type(a: &MatrixAlgebraType, b: &MatrixAlgebraType) -> Result<MatrixAlgebraType> {
    use DivisionRing::*;
    let (factor, ring, splits) = match (a.ring, b.ring) {
        (Real, k) | (k, Real) => (1, k, false),
        (Complex, Complex) => (1, Complex, true),
        (Quaternion, Complex) | (Complex, Quaternion) => (2, Complex, false),
        (Quaternion, Quaternion) => (4, Real, false),
    };
    let doublings = a.doubled as u32 + b.doubled as u32 + splits as u32;
    if doublings > 1 {
        return Err(Error::DoubledTensor(a.to_string(), b.to_string()));
    }
    Ok(MatrixAlgebraType::new(
        a.d * b.d * factor,
        ring,
        doublings == 1,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use DivisionRing::*;

    fn m(d: u64, ring: DivisionRing) -> MatrixAlgebraType {
        MatrixAlgebraType::simple(d, ring)
    }

    #[test]
    fn tensor_rules() {
        assert_eq!(tensor_type(&m(2, Real), &m(1, Quaternion)).unwrap(), m(2, Quaternion));
        assert_eq!(tensor_type(&m(1, Quaternion), &m(1, Complex)).unwrap(), m(2, Complex));
        assert_eq!(
            tensor_type(&m(1, Complex), &m(1, Complex)).unwrap(),
            MatrixAlgebraType::new(1, Complex, true)
        );
        assert_eq!(tensor_type(&m(1, Quaternion), &m(1, Quaternion)).unwrap(), m(4, Real));
        assert_eq!(tensor_type(&m(3, Real), &m(5, Real)).unwrap(), m(15, Real));
        assert_eq!(tensor_type(&m(2, Real), &m(1, Complex)).unwrap(), m(2, Complex));
    }

    #[test]
    fn doubling_distributes() {
        let rr = MatrixAlgebraType::new(1, Real, true);
        assert_eq!(
            tensor_type(&m(1, Quaternion), &rr).unwrap(),
            MatrixAlgebraType::new(1, Quaternion, true)
        );
        assert!(tensor_type(&rr, &rr).is_err());
        let cc = MatrixAlgebraType::new(1, Complex, true);
        assert!(tensor_type(&cc, &m(1, Complex)).is_err());
    }

    #[test]
    fn dimensions_multiply() {
        let all = [
            m(2, Real),
            m(1, Complex),
            m(1, Quaternion),
            MatrixAlgebraType::new(2, Quaternion, true),
        ];
        for a in &all {
            for b in &all {
                if let Ok(t) = tensor_type(a, b) {
                    assert_eq!(t.real_dimension(), a.real_dimension() * b.real_dimension());
                }
            }
        }
    }

    #[test]
    fn formatting() {
        assert_eq!(m(4, Real).cell(), "(4,ℝ)");
        assert_eq!(MatrixAlgebraType::new(1, Quaternion, true).cell(), "ℍ ⊕ ℍ");
        assert_eq!(m(2, Complex).to_string(), "M(2,ℂ)");
        assert_eq!(
            serde_json::to_string(&m(4, Real)).unwrap(),
            r#"{"d":4,"ring":"R","doubled":false}"#
        );
    }
}
