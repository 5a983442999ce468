use serde::{Deserialize, Serialize};

use crate::clifford::Signature;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::ComplexScalar;

use super::representation::{half, GammaRepresentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Left,
    Right,
}

impl Chirality {
    /// Eigenvalue of `θ` on the Weyl subspace.
    pub fn eigenvalue(self) -> i8 {
        match self {
            Chirality::Left => -1,
            Chirality::Right => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinorVector<T> {
    pub signature: Signature,
    pub components: Vec<T>,
}

impl<T: ComplexScalar> SpinorVector<T> {
    pub fn new(signature: Signature, components: Vec<T>) -> Result<Self> {
        let f = 1usize << (signature.n() / 2);
        if components.len() != f {
            return Err(Error::Shape(format!(
                "spinor for {signature} needs {f} components, got {}",
                components.len()
            )));
        }
        Ok(Self {
            signature,
            components,
        })
    }

    pub fn zero(signature: Signature) -> Self {
        let f = 1usize << (signature.n() / 2);
        Self {
            signature,
            components: vec![T::zero(); f],
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn apply(&self, m: &Matrix<T>) -> Self {
        Self {
            signature: self.signature,
            components: m.mul_vec(&self.components),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            signature: self.signature,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| (a.clone() - b.clone()).magnitude())
            .fold(0.0, f64::max)
    }
}

/// `θ`; defined for even `n` only.
pub fn chirality<T: ComplexScalar>(rep: &GammaRepresentation<T>) -> Result<Matrix<T>> {
    rep.theta.clone().ok_or_else(|| {
        Error::Undefined(format!(
            "chirality is defined only for an even number of generators; {} has n = {}",
            rep.signature,
            rep.n()
        ))
    })
}

/// `P_L = (1 − θ)/2` or `P_R = (1 + θ)/2`.
pub fn weyl_projector<T: ComplexScalar>(
    rep: &GammaRepresentation<T>,
    which: Chirality,
) -> Result<Matrix<T>> {
    let theta = chirality(rep)?;
    let signed = if which.eigenvalue() > 0 { theta } else { -&theta };
    Ok((&rep.identity() + &signed).scale(&half()))
}

/// `(ψ_L, ψ_R)` with `θψ_L = −ψ_L`, `θψ_R = ψ_R`.
pub fn weyl_split<T: ComplexScalar>(
    rep: &GammaRepresentation<T>,
    psi: &SpinorVector<T>,
) -> Result<(SpinorVector<T>, SpinorVector<T>)> {
    if psi.signature != rep.signature || psi.len() != rep.f {
        return Err(Error::Shape(format!(
            "spinor of {} with {} components does not fit the representation of {}",
            psi.signature,
            psi.len(),
            rep.signature
        )));
    }
    let left = psi.apply(&weyl_projector(rep, Chirality::Left)?);
    let right = psi.apply(&weyl_projector(rep, Chirality::Right)?);
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::build_representation;
    use crate::scalar::{Complex64, Scalar};
    use crate::GaussianRational;
    use rand::{Rng, SeedableRng};

    #[test]
    fn projectors_are_complementary() {
        let rep: GammaRepresentation<GaussianRational> =
            build_representation(Signature::new(3, 1).unwrap()).unwrap();
        let l = weyl_projector(&rep, Chirality::Left).unwrap();
        let r = weyl_projector(&rep, Chirality::Right).unwrap();
        assert_eq!(&l + &r, rep.identity());
        assert!((&l * &r).is_zero(0.0));
        assert_eq!(l.rank(0.0), 2);
        assert_eq!(r.rank(0.0), 2);
    }

    #[test]
    fn split_recombines() {
        let rep: GammaRepresentation<Complex64> =
            build_representation(Signature::new(3, 1).unwrap()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let psi = SpinorVector::new(
            rep.signature,
            (0..4).map(|_| Complex64::new(rng.gen(), rng.gen())).collect(),
        )
        .unwrap();
        let (l, r) = weyl_split(&rep, &psi).unwrap();
        assert!(l.add(&r).max_abs_diff(&psi) < 1e-12);
        let theta = rep.theta.clone().unwrap();
        assert!(l.apply(&theta).max_abs_diff(&l.apply(&(-&Matrix::identity(4)))) < 1e-12);
        assert!(r.apply(&theta).max_abs_diff(&r) < 1e-12);

        let (l, r) = weyl_split(&rep, &SpinorVector::zero(rep.signature)).unwrap();
        assert!(l.components.iter().chain(&r.components).all(|v| v.magnitude() == 0.0));
    }

    #[test]
    fn left_eigenvector_is_fixed() {
        let rep: GammaRepresentation<GaussianRational> =
            build_representation(Signature::new(1, 1).unwrap()).unwrap();
        let pl = weyl_projector(&rep, Chirality::Left).unwrap();
        let col: Vec<GaussianRational> = (0..2).map(|r| pl[(r, 0)].clone()).collect();
        let v = if col.iter().all(|x| x.magnitude() == 0.0) {
            (0..2).map(|r| pl[(r, 1)].clone()).collect()
        } else {
            col
        };
        let psi = SpinorVector::new(rep.signature, v).unwrap();
        let (l, r) = weyl_split(&rep, &psi).unwrap();
        assert_eq!(l, psi);
        assert!(r.components.iter().all(|x| x.magnitude() == 0.0));
    }

    #[test]
    fn odd_n_has_no_chirality() {
        let rep: GammaRepresentation<GaussianRational> =
            build_representation(Signature::new(3, 0).unwrap()).unwrap();
        assert!(chirality(&rep).is_err());
        assert!(weyl_split(&rep, &SpinorVector::zero(rep.signature)).is_err());
    }
}
