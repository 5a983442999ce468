use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{weyl_split, GammaRepresentation, SpinorVector};
use crate::linalg::Matrix;
use crate::scalar::{Complex64, ComplexScalar, Scalar};
use crate::spin::SpinElement;

/// `A` in `Ψ̄ = Ψ†A`: the ascending product of the time-like generators,
/// multiplied by `i` when that product is anti-hermitian so the form
/// `Ψ̄Φ` is hermitian. Euclidean signatures give the identity.
pub fn dirac_form_matrix<T: ComplexScalar>(rep: &GammaRepresentation<T>) -> Matrix<T> {
    let product = rep
        .signature
        .time_like()
        .into_iter()
        .fold(rep.identity(), |acc, mu| &acc * &rep.gammas[mu]);
    if product.adjoint().approx_eq(&product, 1e-12) {
        product
    } else {
        product.scale_by_i()
    }
}

/// The row vector `Ψ†A`.
pub fn dirac_adjoint<T: ComplexScalar>(psi: &SpinorVector<T>, rep: &GammaRepresentation<T>) -> Vec<T> {
    let a = dirac_form_matrix(rep);
    (0..rep.f)
        .map(|c| {
            psi.components
                .iter()
                .enumerate()
                .fold(T::zero(), |acc, (r, v)| acc + v.conj() * a[(r, c)].clone())
        })
        .collect()
}

/// `Ψ̄ M Φ`.
pub fn dirac_pairing<T: ComplexScalar>(
    rep: &GammaRepresentation<T>,
    psi: &SpinorVector<T>,
    m: &Matrix<T>,
    phi: &SpinorVector<T>,
) -> T {
    let bar = dirac_adjoint(psi, rep);
    bar.iter()
        .zip(m.mul_vec(&phi.components))
        .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b)
}

/// Number of `+1` and `−1` eigenvalues of the hermitian form `Ψ ↦ Ψ̄Ψ`.
///
/// Proven exactly: `A` is checked to be hermitian with `A² = 1`, so its
/// eigenvalues are `±1` and the counts follow from the trace.
pub fn dirac_form_signature<T: ComplexScalar>(rep: &GammaRepresentation<T>) -> Result<(usize, usize)> {
    let a = dirac_form_matrix(rep);
    if !a.adjoint().approx_eq(&a, 1e-12) || !(&a * &a).approx_eq(&rep.identity(), 1e-12) {
        return Err(Error::Internal(format!(
            "Dirac form of {} is not a hermitian involution",
            rep.signature
        )));
    }
    let trace = a.trace().re();
    let f = rep.f as i64;
    let t = (0..=f)
        .map(|k| 2 * k - f)
        .find(|&k| (trace.clone() - <T::Real as Scalar>::from_i64(k)).is_negligible(1e-9))
        .ok_or_else(|| Error::Internal("trace of the Dirac form is not an integer".into()))?;
    Ok((((f + t) / 2) as usize, ((f - t) / 2) as usize))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BilinearReport {
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub residual: f64,
}

impl BilinearReport {
    fn new(lhs: Complex64, rhs: Complex64) -> Self {
        Self {
            lhs: [lhs.re, lhs.im],
            rhs: [rhs.re, rhs.im],
            residual: (lhs - rhs).norm(),
        }
    }
}

/// Evaluates `Ψ̄ γ^μA_μ Ψ = Ψ̄_L γ^μA_μ Ψ_L + Ψ̄_R γ^μA_μ Ψ_R` and
/// `Ψ̄ φ Ψ = Ψ̄_L φ Ψ_R + Ψ̄_R φ Ψ_L`.
///
/// Both hold when the Dirac form matrix anticommutes with `θ`, which is the
/// case for an odd number of time-like generators (space-time signatures).
pub fn bilinear_decomposition_check(
    rep: &GammaRepresentation<Complex64>,
    psi: &SpinorVector<Complex64>,
    phi: Complex64,
    a: &[f64],
) -> Result<(BilinearReport, BilinearReport)> {
    if a.len() != rep.n() {
        return Err(Error::Shape(format!(
            "one-form needs {} components, got {}",
            rep.n(),
            a.len()
        )));
    }
    let (left, right) = weyl_split(rep, psi)?;
    let slash_a = rep
        .gammas
        .iter()
        .zip(a)
        .fold(Matrix::zeros(rep.f, rep.f), |acc, (g, &am)| {
            &acc + &g.scale(&Complex64::new(am, 0.0))
        });
    let scalar = rep.identity().scale(&phi);

    let vector = BilinearReport::new(
        dirac_pairing(rep, psi, &slash_a, psi),
        dirac_pairing(rep, &left, &slash_a, &left) + dirac_pairing(rep, &right, &slash_a, &right),
    );
    let mass = BilinearReport::new(
        dirac_pairing(rep, psi, &scalar, psi),
        dirac_pairing(rep, &left, &scalar, &right) + dirac_pairing(rep, &right, &scalar, &left),
    );
    Ok((vector, mass))
}

/// Compares `(sΨ)‾(sΦ)` with `Ψ̄Φ`. The two agree when `s` lies in `Spin↑`.
pub fn spin_invariance_check(
    rep: &GammaRepresentation<Complex64>,
    s: &SpinElement<f64>,
    psi: &SpinorVector<Complex64>,
    phi: &SpinorVector<Complex64>,
) -> Result<BilinearReport> {
    let m = rep.represent(&s.value, |v| Complex64::new(*v, 0.0))?;
    let one = rep.identity();
    let lhs = dirac_pairing(rep, &psi.apply(&m), &one, &phi.apply(&m));
    let rhs = dirac_pairing(rep, psi, &one, phi);
    Ok(BilinearReport::new(lhs, rhs))
}
