use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Complex64;
use crate::FloatRepresentation;

use super::fields::{lowered_asymmetry, ConnectionField, FrameField, SpinorField};

const ANTISYMMETRY_TOL: f64 = 1e-12;

/// `¼ M_ab γ^a γ^b` with `M_ab = η_aa M^a_b`, summed over all `a, b`.
pub fn lift_to_spin(m: &Matrix<f64>, rep: &FloatRepresentation) -> Result<Matrix<Complex64>> {
    let n = rep.n();
    if m.rows() != n || m.cols() != n {
        return Err(Error::Shape(format!(
            "expected a {n}×{n} matrix, got {}×{}",
            m.rows(),
            m.cols()
        )));
    }
    let scale = m.data().iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let residual = lowered_asymmetry(rep.signature, m);
    if residual > ANTISYMMETRY_TOL * scale {
        return Err(Error::NotAntisymmetric(residual));
    }
    Ok(Lift::new(rep).apply(m))
}

/// Precomputed `¼ η_aa γ^a γ^b` for repeated lifts.
struct Lift {
    f: usize,
    terms: Vec<(usize, usize, Matrix<Complex64>)>,
}

impl Lift {
    fn new(rep: &FloatRepresentation) -> Self {
        let n = rep.n();
        let mut terms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let w = 0.25 * rep.signature.metric_sign(a) as f64;
                let prod = (&rep.gammas[a] * &rep.gammas[b]).scale(&Complex64::new(w, 0.0));
                terms.push((a, b, prod));
            }
        }
        Self { f: rep.f, terms }
    }

    fn apply(&self, m: &Matrix<f64>) -> Matrix<Complex64> {
        let mut out = Matrix::zeros(self.f, self.f);
        for (a, b, prod) in &self.terms {
            let v = m[(*a, *b)];
            if v != 0.0 {
                out = &out + &prod.scale(&Complex64::new(v, 0.0));
            }
        }
        out
    }
}

fn check_shapes(
    psi: &SpinorField,
    conn: &ConnectionField,
    frame: &FrameField,
    rep: &FloatRepresentation,
) -> Result<()> {
    let sigs = [psi.signature, conn.signature, frame.signature, rep.signature];
    if sigs.iter().any(|s| *s != rep.signature) {
        return Err(Error::Shape(format!(
            "signatures differ: spinor {}, connection {}, frame {}, representation {}",
            sigs[0], sigs[1], sigs[2], sigs[3]
        )));
    }
    if psi.grid != conn.grid || psi.grid != frame.grid {
        return Err(Error::Shape("fields live on different grids".into()));
    }
    if psi.f != rep.f {
        return Err(Error::Shape(format!(
            "spinors have {} components but the representation acts on {}",
            psi.f, rep.f
        )));
    }
    Ok(())
}

/// `∇_a ψ` at one site: central differences contracted with `e_a^μ`, plus
/// the lifted connection `Γ_μ e_a^μ` acting on `ψ`.
fn nabla_at(
    site: usize,
    a: usize,
    psi: &SpinorField,
    conn: &ConnectionField,
    frame: &FrameField,
    lift: &Lift,
) -> Vec<Complex64> {
    let grid = &psi.grid;
    let n = frame.signature.n() as usize;
    let e = &frame.vielbein[site];
    let mut out = vec![Complex64::new(0.0, 0.0); psi.f];
    let mut m = Matrix::<f64>::zeros(n, n);
    let mut connected = false;
    for mu in 0..n {
        let w = e[(a, mu)];
        if w == 0.0 {
            continue;
        }
        let fwd = &psi.values[grid.neighbor(site, mu, 1)];
        let bwd = &psi.values[grid.neighbor(site, mu, -1)];
        let k = w / (2.0 * grid.spacing[mu]);
        for (o, (x, y)) in out.iter_mut().zip(fwd.iter().zip(bwd)) {
            *o += (x - y) * k;
        }
        let gamma = &conn.coefficients[site][mu];
        if gamma.data().iter().any(|v| *v != 0.0) {
            m = &m + &gamma.scale(&w);
            connected = true;
        }
    }
    if connected {
        let lifted = lift.apply(&m).mul_vec(&psi.values[site]);
        for (o, v) in out.iter_mut().zip(lifted) {
            *o += v;
        }
    }
    out
}

pub fn covariant_derivative(
    psi: &SpinorField,
    conn: &ConnectionField,
    frame: &FrameField,
    rep: &FloatRepresentation,
    a: usize,
) -> Result<SpinorField> {
    check_shapes(psi, conn, frame, rep)?;
    if a >= rep.n() {
        return Err(Error::Shape(format!("frame index {a} out of range")));
    }
    let lift = Lift::new(rep);
    let values = (0..psi.grid.sites())
        .into_par_iter()
        .map(|site| nabla_at(site, a, psi, conn, frame, &lift))
        .collect();
    Ok(SpinorField {
        values,
        ..psi.clone_shape()
    })
}

/// `γ^a ∇_a ψ`.
pub fn dirac_operator(
    psi: &SpinorField,
    conn: &ConnectionField,
    frame: &FrameField,
    rep: &FloatRepresentation,
) -> Result<SpinorField> {
    check_shapes(psi, conn, frame, rep)?;
    let lift = Lift::new(rep);
    let values = (0..psi.grid.sites())
        .into_par_iter()
        .map(|site| {
            let mut out = vec![Complex64::new(0.0, 0.0); psi.f];
            for (a, gamma) in rep.gammas.iter().enumerate() {
                let d = nabla_at(site, a, psi, conn, frame, &lift);
                for (o, v) in out.iter_mut().zip(gamma.mul_vec(&d)) {
                    *o += v;
                }
            }
            out
        })
        .collect();
    Ok(SpinorField {
        values,
        ..psi.clone_shape()
    })
}

impl SpinorField {
    fn clone_shape(&self) -> Self {
        Self {
            signature: self.signature,
            grid: self.grid.clone(),
            f: self.f,
            values: Vec::new(),
        }
    }
}
