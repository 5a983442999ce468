use serde::{Deserialize, Serialize};

use super::reduction::periodicity_type;
use super::types::DivisionRing;
use crate::clifford::{orientation_square_sign, Signature};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinorTypeReport {
    pub signature: Signature,
    /// `f = 2^⌊n/2⌋`.
    pub dirac_dimension: u64,
    pub weyl_defined: bool,
    pub majorana_exists: bool,
    pub weyl_majorana_exists: bool,
    pub chirality_uses_i: bool,
    /// Whether `C(p,q)` itself has real type.
    pub real_type: bool,
    /// Whether `C(q,p)` has real type.
    pub opposite_real_type: bool,
}

/// Majorana spinors exist when `C(p,q)` or `C(q,p)` is of real type;
/// Weyl-Majorana spinors additionally need `p − q ≡ 0 mod 8`.
pub fn spinor_types(sig: Signature) -> SpinorTypeReport {
    let real_type = periodicity_type(sig).ring == DivisionRing::Real;
    let opposite_real_type = periodicity_type(sig.opposite()).ring == DivisionRing::Real;
    let majorana_exists = real_type || opposite_real_type;
    let weyl_defined = sig.n() % 2 == 0;
    SpinorTypeReport {
        signature: sig,
        dirac_dimension: 1 << (sig.n() / 2),
        weyl_defined,
        majorana_exists,
        weyl_majorana_exists: majorana_exists && weyl_defined && sig.p_minus_q_mod(8) == 0,
        chirality_uses_i: orientation_square_sign(sig) < 0,
        real_type,
        opposite_real_type,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(p: u32, q: u32) -> SpinorTypeReport {
        spinor_types(Signature::new(p, q).unwrap())
    }

    #[test]
    fn physical_examples() {
        let r = report(3, 1);
        assert_eq!(r.dirac_dimension, 4);
        assert!(r.weyl_defined && r.majorana_exists && !r.weyl_majorana_exists);
        assert!(r.chirality_uses_i);
        assert!(r.real_type && !r.opposite_real_type);

        let r = report(8, 0);
        assert_eq!(r.dirac_dimension, 16);
        assert!(r.weyl_defined && r.majorana_exists && r.weyl_majorana_exists);

        let r = report(1, 1);
        assert_eq!(r.dirac_dimension, 2);
        assert!(r.weyl_defined && r.majorana_exists && r.weyl_majorana_exists);
        assert!(!r.chirality_uses_i);

        assert!(!report(4, 0).majorana_exists);
    }

    #[test]
    fn weyl_majorana_implies_the_others() {
        for n in 0..=20 {
            for p in 0..=n {
                let r = report(p, n - p);
                if r.weyl_majorana_exists {
                    assert!(r.majorana_exists && r.weyl_defined);
                }
                assert_eq!(r.majorana_exists, report(n - p, p).majorana_exists);
            }
        }
    }
}
