use num_traits::Zero;

use crate::clifford::{orientation_square_sign, Blade, Multivector, Signature};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseEchelon};
use crate::scalar::{Complex64, ComplexScalar, Scalar};

use super::conjugation::{build_conjugation, Conjugation};

/// Matrices for the generators of `C(p,q) ⊗ ℂ` acting on `ℂ^f`, with the
/// orientation, chirality and (when one exists with `c² = +1`) Majorana
/// conjugation operators.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaRepresentation<T> {
    pub signature: Signature,
    pub f: usize,
    pub gammas: Vec<Matrix<T>>,
    pub epsilon: Matrix<T>,
    /// `ε` or `iε`, whichever squares to the identity; even `n` only.
    pub theta: Option<Matrix<T>>,
    pub conjugation: Option<Conjugation<T>>,
}

fn seeds<T: ComplexScalar>(first: i8, second: i8) -> (Matrix<T>, Matrix<T>) {
    let m = |rows: [[i64; 2]; 2]| {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_i64(v)).collect())
                .collect(),
        )
    };
    match (first, second) {
        (1, -1) => (m([[0, 1], [1, 0]]), m([[0, 1], [-1, 0]])),
        (1, 1) => (m([[1, 0], [0, -1]]), m([[0, 1], [1, 0]])),
        _ => (m([[1, 0], [0, -1]]).scale_by_i(), m([[0, 1], [1, 0]]).scale_by_i()),
    }
}

/// Peels one two-dimensional factor `E` off `generators` and recurses on the
/// complement with its metric rescaled by `ε_E²`:
/// `Γ^μ = γ^μ ⊗ 1` for `μ ∈ E` and `Γ^α = ε_E ⊗ γ'^α` otherwise.
fn build<T: ComplexScalar>(generators: &[(usize, i8)]) -> (usize, Vec<(usize, Matrix<T>)>) {
    match generators {
        [] => (1, Vec::new()),
        [(mu, sign)] => {
            let value = if *sign > 0 { T::one() } else { T::i() };
            (1, vec![(*mu, Matrix::from_rows(vec![vec![value]]))])
        }
        _ => {
            let pos = generators.iter().position(|g| g.1 > 0);
            let neg = generators.iter().position(|g| g.1 < 0);
            let (i, j) = match (pos, neg) {
                (Some(i), Some(j)) => (i, j),
                (Some(i), None) => (i, i + 1),
                (None, Some(j)) => (j, j + 1),
                (None, None) => unreachable!("signs are ±1"),
            };
            let (a, b) = (generators[i], generators[j]);
            let (seed_a, seed_b) = seeds::<T>(a.1, b.1);
            let eps_e = &seed_a * &seed_b;
            let eps_sq: i8 = if a.1 == b.1 { -1 } else { 1 };

            let rest: Vec<(usize, i8)> = generators
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i && *k != j)
                .map(|(_, &(mu, s))| (mu, s * eps_sq))
                .collect();
            let (inner, inner_gammas) = build::<T>(&rest);
            let id = Matrix::<T>::identity(inner);
            let mut out = vec![(a.0, seed_a.kron(&id)), (b.0, seed_b.kron(&id))];
            out.extend(inner_gammas.into_iter().map(|(mu, g)| (mu, eps_e.kron(&g))));
            (2 * inner, out)
        }
    }
}

/// Builds the representation by repeated dimensional reduction. Mixed-sign
/// pairs are peeled first, then equal-sign pairs; a leftover generator is
/// represented by the scalar `1` or `i`.
pub fn build_representation<T: ComplexScalar>(sig: Signature) -> Result<GammaRepresentation<T>> {
    sig.ensure_concrete(Signature::MAX_ALGEBRA_DIM, "gamma representations")?;
    let n = sig.n() as usize;
    let generators: Vec<(usize, i8)> = (0..n).map(|mu| (mu, sig.metric_sign(mu))).collect();
    let (f, mut built) = build::<T>(&generators);
    built.sort_by_key(|(mu, _)| *mu);
    let gammas: Vec<Matrix<T>> = built.into_iter().map(|(_, g)| g).collect();
    debug_assert_eq!(f, 1 << (n / 2));

    let epsilon = gammas
        .iter()
        .fold(Matrix::identity(f), |acc, g| &acc * g);
    let theta = (n % 2 == 0).then(|| {
        if orientation_square_sign(sig) > 0 {
            epsilon.clone()
        } else {
            epsilon.scale_by_i()
        }
    });
    let mut rep = GammaRepresentation {
        signature: sig,
        f,
        gammas,
        epsilon,
        theta,
        conjugation: None,
    };
    rep.conjugation = build_conjugation(&rep)?;
    Ok(rep)
}

impl<T: ComplexScalar> GammaRepresentation<T> {
    pub fn n(&self) -> usize {
        self.gammas.len()
    }

    pub fn identity(&self) -> Matrix<T> {
        Matrix::identity(self.f)
    }

    /// Image of a basis blade: the ascending product of its generators.
    pub fn blade_matrix(&self, blade: Blade) -> Matrix<T> {
        blade
            .indices()
            .into_iter()
            .fold(self.identity(), |acc, mu| &acc * &self.gammas[mu])
    }

    /// Image of a multivector whose coefficients convert into `T`.
    pub fn represent<S: Scalar>(
        &self,
        x: &Multivector<S>,
        convert: impl Fn(&S) -> T,
    ) -> Result<Matrix<T>> {
        if x.signature() != self.signature {
            return Err(Error::SignatureMismatch(x.signature(), self.signature));
        }
        let mut out = Matrix::zeros(self.f, self.f);
        for (blade, v) in x.terms() {
            out = &out + &self.blade_matrix(blade).scale(&convert(v));
        }
        Ok(out)
    }

    /// Largest deviation from `γ^μγ^ν + γ^νγ^μ = 2 g^{μν}` over all pairs
    /// (zero for exact scalars when the relations hold).
    pub fn relation_residual(&self) -> f64 {
        let two = T::from_i64(2);
        let mut worst = 0.0f64;
        for mu in 0..self.n() {
            for nu in mu..self.n() {
                let lhs = self.gammas[mu].anticommutator(&self.gammas[nu]);
                let rhs = if mu == nu {
                    self.identity()
                        .scale(&(two.clone() * T::from_i64(self.signature.metric_sign(mu) as i64)))
                } else {
                    Matrix::zeros(self.f, self.f)
                };
                worst = worst.max(lhs.max_abs_diff(&rhs));
            }
        }
        worst
    }

    /// Dimension over ℂ of the span of the blade images, optionally only
    /// the even blades.
    pub fn span_dimension(&self, even_only: bool) -> usize {
        let mut ech = SparseEchelon::<T>::new(self.f * self.f, 1e-12);
        for b in 0..self.signature.algebra_dim() as u32 {
            let blade = Blade(b);
            if even_only && !blade.is_even() {
                continue;
            }
            let m = self.blade_matrix(blade);
            ech.insert(
                m.data()
                    .iter()
                    .cloned()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero()),
            );
        }
        ech.rank()
    }

    /// For odd `n`, the scalar `λ` with `ε = λ·1` (the representation is
    /// not faithful). `None` if `ε` is not scalar.
    pub fn epsilon_scalar(&self) -> Option<T> {
        let lambda = self.epsilon[(0, 0)].clone();
        self.epsilon
            .approx_eq(&self.identity().scale(&lambda), 1e-12)
            .then_some(lambda)
    }

    pub fn to_float(&self) -> GammaRepresentation<Complex64> {
        GammaRepresentation {
            signature: self.signature,
            f: self.f,
            gammas: self.gammas.iter().map(Matrix::to_c64).collect(),
            epsilon: self.epsilon.to_c64(),
            theta: self.theta.as_ref().map(Matrix::to_c64),
            conjugation: self.conjugation.as_ref().map(Conjugation::to_float),
        }
    }

    /// Whether every entry of every generator is real.
    pub fn is_real(&self) -> bool {
        self.gammas
            .iter()
            .all(|g| g.data().iter().all(|v| v.im().is_zero()))
    }
}

/// Projector `(1 ∓ θ)/2` helper shared by the Weyl code.
pub(crate) fn half<T: ComplexScalar>() -> T {
    T::one() / T::from_i64(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GaussianRational;

    fn exact(p: u32, q: u32) -> GammaRepresentation<GaussianRational> {
        build_representation(Signature::new(p, q).unwrap()).unwrap()
    }

    #[test]
    fn relations_hold_exactly() {
        for n in 0..=6 {
            for p in 0..=n {
                let rep = exact(p, n - p);
                assert_eq!(rep.relation_residual(), 0.0, "({p},{})", n - p);
                assert_eq!(rep.f, 1 << (n / 2));
            }
        }
    }

    #[test]
    fn real_seeds_stay_real() {
        assert!(exact(2, 0).is_real());
        assert!(exact(3, 1).is_real());
        assert!(exact(1, 1).is_real());
        assert!(!exact(0, 2).is_real());
    }

    #[test]
    fn one_zero_is_the_unit() {
        let rep = exact(1, 0);
        assert_eq!(rep.f, 1);
        assert_eq!(rep.gammas[0], Matrix::identity(1));
        assert!(rep.theta.is_none());
    }

    #[test]
    fn faithful_for_even_irreducible_for_odd() {
        for (p, q) in [(2, 0), (3, 1), (1, 3), (4, 0), (2, 2)] {
            let rep = exact(p, q);
            assert_eq!(rep.span_dimension(false), rep.f * rep.f);
        }
        for (p, q) in [(1, 0), (2, 1), (3, 0), (0, 5), (3, 2)] {
            let rep = exact(p, q);
            assert!(rep.epsilon_scalar().is_some());
            assert_eq!(rep.span_dimension(true), rep.f * rep.f);
        }
    }

    #[test]
    fn theta_squares_to_one_and_anticommutes() {
        for (p, q) in [(3, 1), (1, 1), (4, 0), (0, 6), (5, 3)] {
            let rep = exact(p, q);
            let theta = rep.theta.clone().unwrap();
            assert_eq!(&theta * &theta, rep.identity());
            for g in &rep.gammas {
                assert!(theta.anticommutator(g).is_zero(0.0));
            }
            assert!(rep.theta.as_ref().unwrap().trace().is_zero());
        }
    }

    #[test]
    fn represent_matches_blade_products() {
        let rep = exact(3, 1);
        let sig = rep.signature;
        let x = Multivector::<crate::Rational>::from_blade(
            sig,
            Blade::from_indices(&[0, 3]).unwrap(),
            crate::Rational::from_i64(2),
        );
        let m = rep.represent(&x, |v| GaussianRational::new(v.clone(), Zero::zero())).unwrap();
        let expected = (&rep.gammas[0] * &rep.gammas[3]).scale(&GaussianRational::from_i64(2));
        assert_eq!(m, expected);
        let other = Multivector::<crate::Rational>::one(Signature::new(4, 0).unwrap());
        assert!(rep.represent(&other, |v| GaussianRational::new(v.clone(), Zero::zero())).is_err());
    }
}
