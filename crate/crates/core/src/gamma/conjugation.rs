use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseEchelon};
use crate::scalar::{Complex64, ComplexScalar, RealScalar, Scalar};

use super::representation::GammaRepresentation;
use super::spinor::Chirality;

/// The antilinear map `c(ψ) = C·ψ*`, with `C·γ^μ* = η·γ^μ·C` for every
/// generator and `c∘c = C·C* = c_squared · 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Conjugation<T> {
    pub matrix: Matrix<T>,
    pub eta: i8,
    pub c_squared: i8,
}

impl<T: ComplexScalar> Conjugation<T> {
    pub fn apply(&self, psi: &[T]) -> Vec<T> {
        let conj: Vec<T> = psi.iter().map(Scalar::conj).collect();
        self.matrix.mul_vec(&conj)
    }

    pub fn to_float(&self) -> Conjugation<Complex64> {
        Conjugation {
            matrix: self.matrix.to_c64(),
            eta: self.eta,
            c_squared: self.c_squared,
        }
    }

    /// `+1` if `c` commutes with the linear map `m` (`C·m* = m·C`), `-1` if
    /// it anticommutes, `None` otherwise.
    pub fn relation_with(&self, m: &Matrix<T>) -> Option<i8> {
        let lhs = &self.matrix * &m.conj();
        let rhs = m * &self.matrix;
        if lhs.approx_eq(&rhs, 1e-12) {
            Some(1)
        } else if lhs.approx_eq(&(-&rhs), 1e-12) {
            Some(-1)
        } else {
            None
        }
    }
}

fn sign_of<R: RealScalar>(x: &R) -> i8 {
    if *x > R::zero() {
        1
    } else {
        -1
    }
}

/// Solves `C·γ^μ* = η·γ^μ·C` for `C`, normalized so that `C·C* = ±1` and made
/// real when a global phase allows it. `None` if the channel has no
/// nonzero solution.
pub fn conjugation_channel<T: ComplexScalar>(
    rep: &GammaRepresentation<T>,
    eta: i8,
) -> Result<Option<Conjugation<T>>> {
    let f = rep.f;
    let eta_t = T::from_i64(eta as i64);
    let mut ech = SparseEchelon::<T>::new(f * f, 1e-12);
    for g in &rep.gammas {
        let gc = g.conj();
        for r in 0..f {
            for c in 0..f {
                let mut row: Vec<(usize, T)> = Vec::new();
                for k in 0..f {
                    let a = &gc[(k, c)];
                    if !a.is_zero() {
                        row.push((r * f + k, a.clone()));
                    }
                    let b = &g[(r, k)];
                    if !b.is_zero() {
                        row.push((k * f + c, -(eta_t.clone() * b.clone())));
                    }
                }
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
    }
    let Some(solution) = ech.nullspace().into_iter().next() else {
        return Ok(None);
    };
    let mut matrix = Matrix::<T>::zeros(f, f);
    for (idx, v) in solution {
        matrix[(idx / f, idx % f)] = v;
    }

    let square = &matrix * &matrix.conj();
    let lambda = square[(0, 0)].clone();
    if !square.approx_eq(&Matrix::identity(f).scale(&lambda), 1e-9) || !lambda.im().is_negligible(1e-9)
    {
        return Err(Error::Internal(format!(
            "C·C* is not a real multiple of the identity for {}",
            rep.signature
        )));
    }
    let lambda = lambda.re();
    let c_squared = sign_of(&lambda);
    let magnitude = if c_squared > 0 { lambda } else { -lambda };
    let root = magnitude.try_sqrt().ok_or_else(|| {
        Error::Internal(format!("cannot normalize C·C* for {}", rep.signature))
    })?;
    matrix = matrix.scale(&T::from_real(T::Real::one() / root));

    let data = matrix.data();
    if data.iter().all(|v| v.re().is_negligible(1e-12)) {
        matrix = matrix.scale(&-T::i());
    }
    Ok(Some(Conjugation {
        matrix,
        eta,
        c_squared,
    }))
}

/// Both sign channels `η = +1, −1`, in that order, skipping empty ones.
pub fn conjugation_channels<T: ComplexScalar>(
    rep: &GammaRepresentation<T>,
) -> Result<Vec<Conjugation<T>>> {
    let mut out = Vec::new();
    for eta in [1, -1] {
        if let Some(c) = conjugation_channel(rep, eta)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// The Majorana conjugation: a channel with `c² = +1`, preferring `η = +1`.
/// `None` when only `c² = −1` is achievable.
pub fn build_conjugation<T: ComplexScalar>(
    rep: &GammaRepresentation<T>,
) -> Result<Option<Conjugation<T>>> {
    let channels = conjugation_channels(rep)?;
    if channels.is_empty() {
        return Err(Error::Internal(format!(
            "no conjugation matrix in either sign channel for {}",
            rep.signature
        )));
    }
    Ok(channels.into_iter().find(|c| c.c_squared > 0))
}

/// Real-linear matrix of `ψ ↦ M·ψ* − s·ψ` (`antilinear`) or `ψ ↦ M·ψ − s·ψ`
/// on `ℝ^{2f}` with coordinates `(Re ψ, Im ψ)`.
fn real_block<T: ComplexScalar>(m: &Matrix<T>, s: i64, antilinear: bool) -> Vec<Vec<T::Real>> {
    let f = m.rows();
    let s = T::Real::from_i64(s);
    let mut rows = vec![vec![T::Real::zero(); 2 * f]; 2 * f];
    for r in 0..f {
        for c in 0..f {
            let (a, b) = (m[(r, c)].re(), m[(r, c)].im());
            let diag = if r == c { s.clone() } else { T::Real::zero() };
            if antilinear {
                // (A + iB)(x − iy) = (Ax + By) + i(Bx − Ay)
                rows[r][c] = a.clone() - diag.clone();
                rows[r][f + c] = b.clone();
                rows[f + r][c] = b;
                rows[f + r][f + c] = -a - diag;
            } else {
                // (A + iB)(x + iy) = (Ax − By) + i(Bx + Ay)
                rows[r][c] = a.clone() - diag.clone();
                rows[r][f + c] = -b.clone();
                rows[f + r][c] = b;
                rows[f + r][f + c] = a - diag;
            }
        }
    }
    rows
}

/// Real dimension of `{ψ : c(ψ) = ψ}`, optionally intersected with a Weyl
/// eigenspace of `θ`.
pub fn majorana_subspace<T: ComplexScalar>(
    rep: &GammaRepresentation<T>,
    c: Option<&Conjugation<T>>,
    restrict: Option<Chirality>,
) -> Result<usize> {
    let c = match c {
        Some(c) if c.c_squared > 0 => c,
        _ => return Err(Error::NotMajorana(rep.signature)),
    };
    let mut rows = real_block(&c.matrix, 1, true);
    if let Some(chirality) = restrict {
        let theta = rep
            .theta
            .as_ref()
            .ok_or_else(|| Error::Undefined("Weyl spinors need an even number of generators".into()))?;
        rows.extend(real_block(theta, chirality.eigenvalue() as i64, false));
    }
    let m = Matrix::from_rows(rows);
    Ok(2 * rep.f - m.rank(1e-12))
}
