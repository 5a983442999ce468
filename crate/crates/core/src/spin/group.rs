use std::fmt;

use serde::{Deserialize, Serialize};

use crate::clifford::{Blade, Multivector, Signature};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::FloatScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(k: usize) -> Self {
        if k % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

/// Connected components of `O(p,q)`: `L±` is the sign of the determinant,
/// `↑`/`↓` whether the time orientation is kept. Euclidean signatures only
/// distinguish `L₊` and `L₋`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Component {
    #[serde(rename = "L+↑")]
    PlusUp,
    #[serde(rename = "L+↓")]
    PlusDown,
    #[serde(rename = "L-↑")]
    MinusUp,
    #[serde(rename = "L-↓")]
    MinusDown,
    #[serde(rename = "L+")]
    Plus,
    #[serde(rename = "L-")]
    Minus,
}

impl Component {
    fn from_flags(proper: bool, orthochronous: Option<bool>) -> Self {
        match (proper, orthochronous) {
            (true, Some(true)) => Component::PlusUp,
            (true, Some(false)) => Component::PlusDown,
            (false, Some(true)) => Component::MinusUp,
            (false, Some(false)) => Component::MinusDown,
            (true, None) => Component::Plus,
            (false, None) => Component::Minus,
        }
    }

    pub fn is_proper(self) -> bool {
        matches!(self, Component::PlusUp | Component::PlusDown | Component::Plus)
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Component::PlusUp => "L₊↑",
            Component::PlusDown => "L₊↓",
            Component::MinusUp => "L₋↑",
            Component::MinusDown => "L₋↓",
            Component::Plus => "L₊",
            Component::Minus => "L₋",
        };
        f.write_str(s)
    }
}

/// An element of the Clifford group, optionally remembering the parity of
/// the number of vectors it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinElement<T> {
    pub value: Multivector<T>,
    pub factor_parity: Option<Parity>,
}

impl<T: FloatScalar> SpinElement<T> {
    pub fn new(value: Multivector<T>) -> Self {
        Self {
            value,
            factor_parity: None,
        }
    }

    pub fn signature(&self) -> Signature {
        self.value.signature()
    }

    /// Product of vectors `u₁ ⋯ u_k`, each given by its components.
    pub fn from_vectors(sig: Signature, vectors: &[Vec<T>]) -> Result<Self> {
        let mut value = Multivector::one(sig);
        for v in vectors {
            value = value.geometric_product(&Multivector::vector(sig, v)?)?;
        }
        Ok(Self {
            value,
            factor_parity: Some(Parity::of(vectors.len())),
        })
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        let parity = match (self.factor_parity, other.factor_parity) {
            (Some(a), Some(b)) => Some(if a == b { Parity::Even } else { Parity::Odd }),
            _ => None,
        };
        Ok(Self {
            value: self.value.geometric_product(&other.value)?,
            factor_parity: parity,
        })
    }

    pub fn negate(&self) -> Self {
        Self {
            value: -&self.value,
            factor_parity: self.factor_parity,
        }
    }

    /// Parity from the recorded factor count, else from the grade support.
    pub fn parity(&self, tol: f64) -> Result<Parity> {
        if let Some(p) = self.factor_parity {
            return Ok(p);
        }
        let pruned = self.value.prune(tol * self.value.max_abs().max(1.0));
        if pruned.is_even() {
            Ok(Parity::Even)
        } else if pruned.is_odd() {
            Ok(Parity::Odd)
        } else {
            Err(Error::NotInPin("element mixes even and odd grades".into()))
        }
    }

    /// `s̄s`, required to be a nonzero scalar.
    pub fn norm_scalar(&self, tol: f64) -> Result<T> {
        let n = self.value.bar().geometric_product(&self.value)?;
        let lambda = n.scalar_part();
        let scale = n.max_abs().max(1.0);
        let rest = n.terms().filter(|(b, _)| *b != Blade::SCALAR).map(|(_, v)| v.as_f64().abs());
        if rest.fold(0.0, f64::max) > tol * scale || lambda.as_f64().abs() <= tol * scale {
            return Err(Error::NotPinNormalizable(format!(
                "s̄s = {} is not a nonzero scalar",
                n.map(|v| v.as_f64())
            )));
        }
        Ok(lambda)
    }
}

fn sign<T: FloatScalar>(x: T) -> i8 {
    if x > T::zero() {
        1
    } else {
        -1
    }
}

/// Rescales `s` so that `|s̄s| = 1`; returns the normalized element and the
/// sign of `s̄s`.
pub fn pin_normalize<T: FloatScalar>(s: &SpinElement<T>, tol: f64) -> Result<(SpinElement<T>, i8)> {
    let lambda = s.norm_scalar(tol)?;
    let factor = T::one() / lambda.abs().sqrt();
    Ok((
        SpinElement {
            value: s.value.scale(&factor),
            factor_parity: s.factor_parity,
        },
        sign(lambda),
    ))
}

/// `O(p,q)` matrix with its component label.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalMatrix<T> {
    pub entries: Matrix<T>,
    pub component: Component,
}

impl<T: FloatScalar> OrthogonalMatrix<T> {
    /// Largest entry of `ΛᵀGΛ − G`.
    pub fn metric_residual(&self, sig: Signature) -> f64 {
        let g = Matrix::from_fn(sig.n() as usize, sig.n() as usize, |r, c| {
            if r == c {
                T::from_f64(sig.metric_sign(r) as f64)
            } else {
                T::zero()
            }
        });
        let lhs = &(&self.entries.transpose() * &g) * &self.entries;
        lhs.max_abs_diff(&g)
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.entries.rows())
            .map(|r| self.entries.row(r).iter().map(|v| v.as_f64()).collect())
            .collect()
    }
}

/// Component of an `O(p,q)` matrix from the sign of its determinant and of
/// the determinant of its time-like block.
pub fn matrix_component<T: FloatScalar>(m: &Matrix<T>, sig: Signature) -> Component {
    let proper = m.determinant() > T::zero();
    let time = sig.time_like();
    let orthochronous = (!sig.is_euclidean()).then(|| {
        let block = Matrix::from_fn(time.len(), time.len(), |r, c| m[(time[r], time[c])].clone());
        block.determinant() > T::zero()
    });
    Component::from_flags(proper, orthochronous)
}

/// `χ(s): x ↦ s x s⁻¹`; column `μ` holds the coordinates of `s γ^μ s⁻¹`.
pub fn chi<T: FloatScalar>(s: &SpinElement<T>, tol: f64) -> Result<OrthogonalMatrix<T>> {
    let sig = s.signature();
    let n = sig.n() as usize;
    // s⁻¹ = s̄/(s̄s) is exact up to one division; the linear solve is the
    // fallback for elements whose s̄s is not scalar.
    let inv = match s.norm_scalar(tol) {
        Ok(lambda) => s.value.bar().scale(&(T::one() / lambda)),
        Err(_) => s.value.inverse(tol)?,
    };
    let mut entries = Matrix::<T>::zeros(n, n);
    for mu in 0..n {
        let g = Multivector::generator(sig, mu)?;
        let image = s.value.geometric_product(&g)?.geometric_product(&inv)?;
        let scale = image.max_abs().max(1.0);
        for (blade, v) in image.terms() {
            if blade.grade() == 1 {
                entries[(blade.indices()[0], mu)] = *v;
            } else if v.as_f64().abs() > tol * scale {
                return Err(Error::NotInCliffordGroup(format!(
                    "s γ^{mu} s⁻¹ has a grade-{} component",
                    blade.grade()
                )));
            }
        }
    }
    let component = matrix_component(&entries, sig);
    Ok(OrthogonalMatrix { entries, component })
}

/// Component from the parity of the factor count `k` and the sign of `s̄s`.
///
/// Writing `s = u₁⋯u_k`, each factor contributes `sign(u_i²)` to `s̄s` and
/// reverses time orientation exactly when it is time-like (for a negative
/// time-like block) or space-like (for a positive one), once the overall
/// `−1` of `χ(u) = −reflection` is accounted for. This gives
/// `↑ ⇔ sign(s̄s)·(−1)^{k|T|} > 0` when the time-like block `T` squares to
/// `−1`, and `↑ ⇔ sign(s̄s)·(−1)^{k(|T|+1)} > 0` when it squares to `+1`.
/// The result is cross-checked against the matrix of `χ(s)`.
pub fn component_of<T: FloatScalar>(s: &SpinElement<T>, tol: f64) -> Result<Component> {
    let sig = s.signature();
    let parity = s.parity(tol)?;
    let (_, norm_sign) = pin_normalize(s, tol)?;
    let proper = !parity.is_odd();
    let orthochronous = (!sig.is_euclidean()).then(|| {
        let t = sig.time_like().len();
        let time_negative = sig.q() <= sig.p();
        let k_odd = parity.is_odd();
        let flips = if time_negative {
            k_odd && t % 2 == 1
        } else {
            k_odd && t % 2 == 0
        };
        (norm_sign > 0) != flips
    });
    let component = Component::from_flags(proper, orthochronous);
    let from_matrix = chi(s, tol)?.component;
    if from_matrix != component {
        return Err(Error::Internal(format!(
            "component rule gives {component} but χ(s) lies in {from_matrix}"
        )));
    }
    Ok(component)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: u32, q: u32) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn gen(s: Signature, mu: usize) -> SpinElement<f64> {
        let mut v = vec![0.0; s.n() as usize];
        v[mu] = 1.0;
        SpinElement::from_vectors(s, &[v]).unwrap()
    }

    #[test]
    fn reflection_in_two_zero() {
        let s = sig(2, 0);
        let m = chi(&gen(s, 0), 1e-10).unwrap();
        assert_eq!(m.entries[(1, 1)], -1.0);
        assert_eq!(m.entries[(0, 0)], 1.0);
        assert_eq!(m.component, Component::Minus);
    }

    #[test]
    fn identity_is_plus_up() {
        let s = sig(3, 1);
        let one = SpinElement::new(Multivector::<f64>::one(s));
        let m = chi(&one, 1e-10).unwrap();
        assert_eq!(m.entries, Matrix::identity(4));
        assert_eq!(m.component, Component::PlusUp);
        assert_eq!(component_of(&one, 1e-10).unwrap(), Component::PlusUp);
    }

    #[test]
    fn pin_normalization() {
        let s = sig(1, 0);
        let two_g = SpinElement::from_vectors(s, &[vec![2.0]]).unwrap();
        let (n, sign) = pin_normalize(&two_g, 1e-10).unwrap();
        assert_eq!(n.value, Multivector::generator(s, 0).unwrap());
        assert_eq!(sign, 1);

        let (_, sign) = pin_normalize(&gen(sig(3, 1), 3), 1e-10).unwrap();
        assert_eq!(sign, -1);

        let s = sig(2, 0);
        let b = SpinElement::from_vectors(s, &[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(b.norm_scalar(1e-10).unwrap(), 1.0);

        let mixed = SpinElement::new(&Multivector::<f64>::one(s) + &Multivector::generator(s, 0).unwrap());
        assert!(pin_normalize(&mixed, 1e-10).is_err());
        assert!(matches!(mixed.parity(1e-10), Err(Error::NotInPin(_))));
    }

    #[test]
    fn single_vectors_in_both_lorentz_conventions() {
        // Mostly plus: time is γ³.
        let s = sig(3, 1);
        assert_eq!(component_of(&gen(s, 3), 1e-10).unwrap(), Component::MinusUp);
        assert_eq!(component_of(&gen(s, 0), 1e-10).unwrap(), Component::MinusDown);
        // Mostly minus: time is γ⁰; here s̄s > 0 ⇔ ↑ for odd k as well.
        let s = sig(1, 3);
        assert_eq!(component_of(&gen(s, 0), 1e-10).unwrap(), Component::MinusUp);
        assert_eq!(component_of(&gen(s, 1), 1e-10).unwrap(), Component::MinusDown);
        let two = gen(s, 0).product(&gen(s, 1)).unwrap();
        assert_eq!(component_of(&two, 1e-10).unwrap(), Component::PlusDown);
    }

    #[test]
    fn not_in_clifford_group() {
        let s = sig(3, 0);
        let x = &Multivector::<f64>::one(s) + &Multivector::generator(s, 0).unwrap().scale(&0.5);
        assert!(matches!(chi(&SpinElement::new(x), 1e-10), Err(Error::NotInCliffordGroup(_))));
    }
}
