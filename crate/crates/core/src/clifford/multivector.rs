use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use crate::clifford::blade::{blade_product, Blade};
use crate::clifford::Signature;
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Element of `C(p,q)` (or its complexification, when `T` is complex) stored
/// as a sparse map from basis blades to coefficients. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq)]
pub struct Multivector<T> {
    signature: Signature,
    terms: BTreeMap<Blade, T>,
}

impl<T: Scalar> Multivector<T> {
    pub fn zero(signature: Signature) -> Self {
        Self {
            signature,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(signature: Signature) -> Self {
        Self::scalar(signature, T::one())
    }

    pub fn scalar(signature: Signature, value: T) -> Self {
        Self::from_blade(signature, Blade::SCALAR, value)
    }

    pub fn from_blade(signature: Signature, blade: Blade, value: T) -> Self {
        let mut mv = Self::zero(signature);
        mv.add_term(blade, value);
        mv
    }

    /// `γ^μ`.
    pub fn generator(signature: Signature, mu: usize) -> Result<Self> {
        if mu >= signature.n() as usize {
            return Err(Error::InvalidBlade(format!(
                "generator index {mu} out of range for {signature}"
            )));
        }
        Ok(Self::from_blade(signature, Blade::generator(mu), T::one()))
    }

    /// Vector `Σ v_μ γ^μ`.
    pub fn vector(signature: Signature, components: &[T]) -> Result<Self> {
        if components.len() != signature.n() as usize {
            return Err(Error::Shape(format!(
                "{} vector components for {signature}",
                components.len()
            )));
        }
        let mut mv = Self::zero(signature);
        for (mu, c) in components.iter().enumerate() {
            mv.add_term(Blade::generator(mu), c.clone());
        }
        Ok(mv)
    }

    pub fn from_terms<I>(signature: Signature, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Blade, T)>,
    {
        let mut mv = Self::zero(signature);
        for (blade, value) in terms {
            if !blade.fits(signature.n()) {
                return Err(Error::InvalidBlade(format!(
                    "blade {blade} does not fit {signature}"
                )));
            }
            mv.add_term(blade, value);
        }
        Ok(mv)
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &T)> {
        self.terms.iter().map(|(b, v)| (*b, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, blade: Blade) -> T {
        self.terms.get(&blade).cloned().unwrap_or_else(T::zero)
    }

    pub fn scalar_part(&self) -> T {
        self.coefficient(Blade::SCALAR)
    }

    /// Adds `value` to the coefficient of `blade`, pruning an exact zero.
    pub fn add_term(&mut self, blade: Blade, value: T) {
        debug_assert!(blade.fits(self.signature.n()));
        if value.is_zero() {
            return;
        }
        match self.terms.get_mut(&blade) {
            Some(v) => {
                *v = v.clone() + value;
                if v.is_zero() {
                    self.terms.remove(&blade);
                }
            }
            None => {
                self.terms.insert(blade, value);
            }
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Multivector<U> {
        let mut out = Multivector::zero(self.signature);
        for (b, v) in &self.terms {
            out.add_term(*b, f(v));
        }
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|v| v.clone() * s.clone())
    }

    /// Drops coefficients with magnitude at most `tol` (no-op on exact scalars
    /// since zeros are never stored).
    pub fn prune(&self, tol: f64) -> Self {
        let mut out = self.clone();
        out.terms.retain(|_, v| !v.is_negligible(tol));
        out
    }

    pub fn grades(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.keys().map(|b| b.grade())
    }

    pub fn grade_part(&self, k: u32) -> Self {
        self.filter(|b| b.grade() == k)
    }

    /// Projection onto the even subalgebra `C₀`.
    pub fn even_part(&self) -> Self {
        self.filter(Blade::is_even)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|b| !b.is_even())
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|b| b.is_even())
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|b| !b.is_even())
    }

    fn filter(&self, keep: impl Fn(Blade) -> bool) -> Self {
        Self {
            signature: self.signature,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| keep(**b))
                .map(|(b, v)| (*b, v.clone()))
                .collect(),
        }
    }

    /// Reverses the factor order of every blade and conjugates complex
    /// coefficients.
    pub fn bar(&self) -> Self {
        Self {
            signature: self.signature,
            terms: self
                .terms
                .iter()
                .map(|(b, v)| {
                    let c = v.conj();
                    (*b, if b.reversion_sign() < 0 { -c } else { c })
                })
                .collect(),
        }
    }

    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        if self.signature != other.signature {
            return Err(Error::SignatureMismatch(self.signature, other.signature));
        }
        let mut acc: BTreeMap<Blade, T> = BTreeMap::new();
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                let (sign, c) = blade_product(&self.signature, a, b);
                let v = x.clone() * y.clone();
                let v = if sign < 0 { -v } else { v };
                let entry = acc.entry(c).or_insert_with(T::zero);
                *entry = entry.clone() + v;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(Self {
            signature: self.signature,
            terms: acc,
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.signature != other.signature {
            return Err(Error::SignatureMismatch(self.signature, other.signature));
        }
        let mut out = self.clone();
        for (b, v) in &other.terms {
            out.add_term(*b, v.clone());
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.geometric_product(other)? - &other.geometric_product(self)?)
    }

    /// Largest coefficient magnitude (0 for the zero element).
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Equality: exact for exact scalars, coefficientwise within `tol`
    /// otherwise.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.signature == other.signature && (self - other).terms.values().all(|v| v.is_negligible(tol))
    }

    /// Coefficient vector over all `2ⁿ` blades (dense, blade mask order).
    pub fn to_dense(&self) -> Vec<T> {
        let mut v = vec![T::zero(); self.signature.algebra_dim()];
        for (b, x) in &self.terms {
            v[b.0 as usize] = x.clone();
        }
        v
    }

    pub fn from_dense(signature: Signature, coeffs: &[T]) -> Self {
        let mut mv = Self::zero(signature);
        for (mask, x) in coeffs.iter().enumerate() {
            mv.add_term(Blade(mask as u32), x.clone());
        }
        mv
    }
}

impl<T: Field> Multivector<T> {
    /// Matrix of `x ↦ self · x` on the dense blade basis (row = output blade).
    pub fn left_multiplication_matrix(&self) -> crate::linalg::Matrix<T> {
        let dim = self.signature.algebra_dim();
        let mut m = crate::linalg::Matrix::<T>::zeros(dim, dim);
        for col in 0..dim {
            for (&a, x) in &self.terms {
                let (sign, c) = blade_product(&self.signature, a, Blade(col as u32));
                let v = if sign < 0 { -x.clone() } else { x.clone() };
                m[(c.0 as usize, col)] = m[(c.0 as usize, col)].clone() + v;
            }
        }
        m
    }

    /// Two-sided inverse, found by solving `self · x = 1` in the `2ⁿ`-dimensional
    /// coefficient space.
    pub fn inverse(&self, tol: f64) -> Result<Self> {
        self.signature
            .ensure_concrete(Signature::MAX_ALGEBRA_DIM, "algebra inverse")?;
        let mut rhs = vec![T::zero(); self.signature.algebra_dim()];
        rhs[0] = T::one();
        let x = self.left_multiplication_matrix().solve(&rhs, tol)?;
        Ok(Self::from_dense(self.signature, &x))
    }
}

/// Ascending product of all `n` generators, `ε = γ⁰γ¹…γⁿ⁻¹`.
pub fn orientation_operator<T: Scalar>(signature: Signature) -> Result<Multivector<T>> {
    let n = signature.n();
    if n == 0 {
        return Err(Error::Undefined(
            "the orientation operator needs at least one generator".into(),
        ));
    }
    let mask = ((1u64 << n) - 1) as u32;
    Ok(Multivector::from_blade(signature, Blade(mask), T::one()))
}

/// Sign of `ε²` computed from the signature alone: `(-1)^{n(n-1)/2 + q}`.
pub fn orientation_square_sign(signature: Signature) -> i8 {
    let n = signature.n() as u64;
    if (n * n.saturating_sub(1) / 2 + signature.q() as u64) % 2 == 0 {
        1
    } else {
        -1
    }
}

impl<T: Scalar> Add for &Multivector<T> {
    type Output = Multivector<T>;
    fn add(self, rhs: &Multivector<T>) -> Multivector<T> {
        self.checked_add(rhs).expect("multivector signature mismatch")
    }
}

impl<T: Scalar> Sub for &Multivector<T> {
    type Output = Multivector<T>;
    fn sub(self, rhs: &Multivector<T>) -> Multivector<T> {
        self.checked_add(&-rhs).expect("multivector signature mismatch")
    }
}

impl<T: Scalar> Neg for &Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        self.map(|v| -v.clone())
    }
}

/// Geometric product; panics on a signature mismatch (use
/// [`Multivector::geometric_product`] for the fallible form).
impl<T: Scalar> Mul for &Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: &Multivector<T>) -> Multivector<T> {
        self.geometric_product(rhs)
            .expect("multivector signature mismatch")
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, v)| {
                if b.0 == 0 {
                    format!("{v}")
                } else {
                    format!("({v}){b}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<T: fmt::Debug> fmt::Debug for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector{} {{", self.signature)?;
        for (b, v) in &self.terms {
            write!(f, " {b}: {v:?};")?;
        }
        write!(f, " }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn sig(p: u32, q: u32) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn gen(s: Signature, mu: usize) -> Multivector<Rational> {
        Multivector::generator(s, mu).unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn generator_products_in_euclidean_plane() {
        let s = sig(2, 0);
        let (g0, g1) = (gen(s, 0), gen(s, 1));
        assert_eq!(&g0 * &g0, Multivector::one(s));
        let e01 = &g0 * &g1;
        assert_eq!(e01.coefficient(Blade(0b11)), r(1));
        assert_eq!((&g1 * &g0).coefficient(Blade(0b11)), r(-1));
        assert_eq!(&e01 * &e01, Multivector::scalar(s, r(-1)));
    }

    #[test]
    fn bar_signs() {
        let s = sig(3, 0);
        let b12 = Multivector::from_blade(s, Blade::from_indices(&[1, 2]).unwrap(), r(1));
        assert_eq!(b12.bar(), -&b12);
        let five = Multivector::scalar(s, r(5));
        assert_eq!(five.bar(), five);
        let b012 = Multivector::from_blade(s, Blade(0b111), r(1));
        assert_eq!(b012.bar(), -&b012);
        // reversal of the factor list agrees with the product of generators
        let (g0, g1, g2) = (gen(s, 0), gen(s, 1), gen(s, 2));
        assert_eq!(b012.bar(), &(&g2 * &g1) * &g0);
    }

    #[test]
    fn orientation_squares() {
        for ((p, q), expected) in [((3, 1), -1), ((1, 1), 1), ((0, 2), -1), ((2, 0), -1)] {
            let s = sig(p, q);
            let eps: Multivector<Rational> = orientation_operator(s).unwrap();
            assert_eq!(&eps * &eps, Multivector::scalar(s, r(expected)), "{s}");
            assert_eq!(orientation_square_sign(s), expected as i8);
        }
        assert!(orientation_operator::<Rational>(sig(0, 0)).is_err());
    }

    #[test]
    fn even_part_filters() {
        let s = sig(2, 0);
        let x = &(&Multivector::one(s) + &gen(s, 0)) + &(&gen(s, 0) * &gen(s, 1));
        let even = x.even_part();
        assert_eq!(even, &Multivector::one(s) + &(&gen(s, 0) * &gen(s, 1)));
        assert_eq!(even.even_part(), even);
    }

    #[test]
    fn signature_mismatch_is_an_error() {
        let a = gen(sig(2, 0), 0);
        let b = gen(sig(1, 1), 0);
        let err = a.geometric_product(&b).unwrap_err().to_string();
        assert!(err.contains("(2,0)") && err.contains("(1,1)"), "{err}");
    }

    #[test]
    fn inverse_of_vector() {
        let s = sig(3, 1);
        let v = Multivector::vector(s, &[r(1), r(2), r(0), r(1)]).unwrap();
        let inv = v.inverse(0.0).unwrap();
        assert_eq!(&v * &inv, Multivector::one(s));
        assert_eq!(&inv * &v, Multivector::one(s));
        // v² = 1 + 4 - 1 = 4, so v⁻¹ = v / 4
        assert_eq!(inv, v.scale(&Rational::new(1.into(), 4.into())));
        let null = Multivector::vector(s, &[r(1), r(0), r(0), r(1)]).unwrap();
        assert!(null.inverse(0.0).is_err());
    }
}
