use serde::{Deserialize, Serialize};

use crate::clifford::Signature;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Complex64;

pub const MAX_GRID_AXES: usize = 4;
pub const DEFAULT_POINTS: usize = 16;

/// Periodic lattice on a torus, row-major with the last axis fastest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub shape: Vec<usize>,
    pub spacing: Vec<f64>,
}

impl Grid {
    pub fn new(shape: Vec<usize>, spacing: Vec<f64>) -> Result<Self> {
        if shape.is_empty() || shape.len() > MAX_GRID_AXES {
            return Err(Error::Shape(format!(
                "grids need 1 to {MAX_GRID_AXES} axes, got {}",
                shape.len()
            )));
        }
        if shape.len() != spacing.len() {
            return Err(Error::Shape("shape and spacing lengths differ".into()));
        }
        if shape.iter().any(|&s| s < 3) || spacing.iter().any(|&h| !(h > 0.0 && h.is_finite())) {
            return Err(Error::Shape(
                "each axis needs at least 3 points and a positive spacing".into(),
            ));
        }
        Ok(Self { shape, spacing })
    }

    /// `points` sites per axis over a torus of side `2π`.
    pub fn cube(axes: usize, points: usize) -> Result<Self> {
        let h = 2.0 * std::f64::consts::PI / points as f64;
        Self::new(vec![points; axes], vec![h; axes])
    }

    pub fn axes(&self) -> usize {
        self.shape.len()
    }

    pub fn sites(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn coords(&self, mut site: usize) -> Vec<usize> {
        let mut out = vec![0; self.axes()];
        for axis in (0..self.axes()).rev() {
            out[axis] = site % self.shape[axis];
            site /= self.shape[axis];
        }
        out
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.shape)
            .fold(0, |acc, (&c, &s)| acc * s + c % s)
    }

    /// Site one step forward (`step = 1`) or back (`step = -1`) along `axis`.
    pub fn neighbor(&self, site: usize, axis: usize, step: isize) -> usize {
        let mut c = self.coords(site);
        let s = self.shape[axis] as isize;
        c[axis] = (c[axis] as isize + step).rem_euclid(s) as usize;
        self.index(&c)
    }

    pub fn position(&self, site: usize) -> Vec<f64> {
        self.coords(site)
            .iter()
            .zip(&self.spacing)
            .map(|(&c, &h)| c as f64 * h)
            .collect()
    }
}

fn check_axes(sig: Signature, grid: &Grid) -> Result<()> {
    if grid.axes() != sig.n() as usize {
        return Err(Error::Shape(format!(
            "a {}-axis grid cannot carry frames of {sig}",
            grid.axes()
        )));
    }
    Ok(())
}

/// Vielbein `e_a^μ` at every site; entry `(a, μ)` of each matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameField {
    pub signature: Signature,
    pub grid: Grid,
    pub vielbein: Vec<Matrix<f64>>,
}

impl FrameField {
    pub fn new(signature: Signature, grid: Grid, vielbein: Vec<Matrix<f64>>) -> Result<Self> {
        check_axes(signature, &grid)?;
        let n = signature.n() as usize;
        if vielbein.len() != grid.sites() || vielbein.iter().any(|e| e.rows() != n || e.cols() != n) {
            return Err(Error::Shape(format!(
                "expected {} vielbein matrices of size {n}",
                grid.sites()
            )));
        }
        if let Some(site) = vielbein.iter().position(|e| e.determinant().abs() < 1e-12) {
            return Err(Error::Shape(format!("vielbein is singular at site {site}")));
        }
        Ok(Self {
            signature,
            grid,
            vielbein,
        })
    }

    pub fn flat(signature: Signature, grid: Grid) -> Result<Self> {
        let n = signature.n() as usize;
        let sites = grid.sites();
        Self::new(signature, grid, vec![Matrix::identity(n); sites])
    }

    /// `g^{μν} = e_a^μ e_b^ν η^{ab}` at `site`.
    pub fn inverse_metric(&self, site: usize) -> Matrix<f64> {
        let e = &self.vielbein[site];
        let n = e.rows();
        Matrix::from_fn(n, n, |mu, nu| {
            (0..n)
                .map(|a| self.signature.metric_sign(a) as f64 * e[(a, mu)] * e[(a, nu)])
                .sum()
        })
    }
}

/// `Γ^a_{bμ}` at every site, stored as one `n × n` matrix `M^a_b` per
/// direction `μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionField {
    pub signature: Signature,
    pub grid: Grid,
    pub coefficients: Vec<Vec<Matrix<f64>>>,
}

/// Residual of `η_{aa} M^a_b + η_{bb} M^b_a`.
pub fn lowered_asymmetry(sig: Signature, m: &Matrix<f64>) -> f64 {
    let n = m.rows();
    let mut worst = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let lowered = sig.metric_sign(a) as f64 * m[(a, b)] + sig.metric_sign(b) as f64 * m[(b, a)];
            worst = worst.max(lowered.abs());
        }
    }
    worst
}

impl ConnectionField {
    pub fn new(signature: Signature, grid: Grid, coefficients: Vec<Vec<Matrix<f64>>>) -> Result<Self> {
        check_axes(signature, &grid)?;
        let n = signature.n() as usize;
        if coefficients.len() != grid.sites()
            || coefficients
                .iter()
                .any(|site| site.len() != n || site.iter().any(|m| m.rows() != n || m.cols() != n))
        {
            return Err(Error::Shape(format!(
                "expected {} sites of {n} connection matrices of size {n}",
                grid.sites()
            )));
        }
        for site in &coefficients {
            for m in site {
                let r = lowered_asymmetry(signature, m);
                if r > 1e-12 {
                    return Err(Error::NotAntisymmetric(r));
                }
            }
        }
        Ok(Self {
            signature,
            grid,
            coefficients,
        })
    }

    pub fn zero(signature: Signature, grid: Grid) -> Result<Self> {
        let n = signature.n() as usize;
        let sites = grid.sites();
        Self::new(signature, grid, vec![vec![Matrix::zeros(n, n); n]; sites])
    }

    /// The same `Γ_μ` at every site.
    pub fn constant(signature: Signature, grid: Grid, per_direction: Vec<Matrix<f64>>) -> Result<Self> {
        let sites = grid.sites();
        Self::new(signature, grid, vec![per_direction; sites])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinorField {
    pub signature: Signature,
    pub grid: Grid,
    pub f: usize,
    pub values: Vec<Vec<Complex64>>,
}

impl SpinorField {
    pub fn new(signature: Signature, grid: Grid, values: Vec<Vec<Complex64>>) -> Result<Self> {
        let f = 1usize << (signature.n() / 2);
        if values.len() != grid.sites() || values.iter().any(|v| v.len() != f) {
            return Err(Error::Shape(format!(
                "expected {} sites of {f}-component spinors",
                grid.sites()
            )));
        }
        if values.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Shape("spinor field has non-finite entries".into()));
        }
        Ok(Self {
            signature,
            grid,
            f,
            values,
        })
    }

    pub fn zero(signature: Signature, grid: Grid) -> Self {
        let f = 1usize << (signature.n() / 2);
        let sites = grid.sites();
        Self {
            signature,
            grid,
            f,
            values: vec![vec![Complex64::new(0.0, 0.0); f]; sites],
        }
    }

    /// `ψ(x) = ψ₀ exp(i k·x)`.
    pub fn plane_wave(signature: Signature, grid: Grid, psi0: &[Complex64], k: &[f64]) -> Result<Self> {
        if k.len() != grid.axes() {
            return Err(Error::Shape("wave vector length differs from the grid axes".into()));
        }
        let values = (0..grid.sites())
            .map(|site| {
                let phase: f64 = grid.position(site).iter().zip(k).map(|(x, k)| x * k).sum();
                let w = Complex64::from_polar(1.0, phase);
                psi0.iter().map(|z| z * w).collect()
            })
            .collect();
        Self::new(signature, grid, values)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .flatten()
            .zip(other.values.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }
}
