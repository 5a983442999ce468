//! Small linear-algebra kit: sparse row echelon forms for rank and null
//! spaces, and a dense matrix type for gamma matrices and spinor maps.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Complex64, ComplexScalar, Field, Scalar};

/// Incrementally built row echelon form over a field.
///
/// Rows are stored sparsely and keyed by their leading column, so fill-in
/// stays inside the blocks of block-structured systems. For inexact
/// scalars, entries with magnitude below `tol` are dropped.
#[derive(Clone, Debug)]
pub struct SparseEchelon<T> {
    ncols: usize,
    tol: f64,
    pivots: BTreeMap<usize, BTreeMap<usize, T>>,
}

impl<T: Field> SparseEchelon<T> {
    pub fn new(ncols: usize, tol: f64) -> Self {
        Self {
            ncols,
            tol,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduces `row` against the current pivots; stores the remainder as a
    /// new pivot row if it is nonzero. Returns whether the rank increased.
    pub fn insert<I>(&mut self, row: I) -> bool
    where
        I: IntoIterator<Item = (usize, T)>,
    {
        let mut work: BTreeMap<usize, T> = BTreeMap::new();
        for (col, value) in row {
            debug_assert!(col < self.ncols);
            let entry = work.entry(col).or_insert_with(T::zero);
            *entry = entry.clone() + value;
        }
        work.retain(|_, v| !v.is_negligible(self.tol));

        // Eliminate leading entries one pivot at a time; columns below the
        // current lead are already clean.
        let mut floor = 0usize;
        loop {
            let lead = match work.range(floor..).next() {
                Some((&c, _)) => c,
                None => return false,
            };
            match self.pivots.get(&lead) {
                Some(pivot_row) => {
                    let factor = work.remove(&lead).expect("lead present");
                    for (&c, v) in pivot_row.range(lead + 1..) {
                        let entry = work.entry(c).or_insert_with(T::zero);
                        *entry = entry.clone() - factor.clone() * v.clone();
                        if entry.is_negligible(self.tol) {
                            work.remove(&c);
                        }
                    }
                    floor = lead + 1;
                }
                None => {
                    let inv = T::one() / work[&lead].clone();
                    let normalized: BTreeMap<usize, T> = work
                        .into_iter()
                        .map(|(c, v)| (c, if c == lead { T::one() } else { v * inv.clone() }))
                        .collect();
                    self.pivots.insert(lead, normalized);
                    return true;
                }
            }
        }
    }

    /// Basis of the right null space, one sparse vector per free column.
    pub fn nullspace(&self) -> Vec<BTreeMap<usize, T>> {
        // Back-substitute to reduced row echelon form.
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        let mut reduced: BTreeMap<usize, BTreeMap<usize, T>> = BTreeMap::new();
        for lead in cols {
            let mut row = self.pivots[&lead].clone();
            let later: Vec<usize> = row
                .range(lead + 1..)
                .map(|(&c, _)| c)
                .filter(|c| reduced.contains_key(c))
                .collect();
            for c in later {
                let factor = match row.remove(&c) {
                    Some(f) => f,
                    None => continue,
                };
                for (&cc, v) in &reduced[&c] {
                    if cc == c {
                        continue;
                    }
                    let entry = row.entry(cc).or_insert_with(T::zero);
                    *entry = entry.clone() - factor.clone() * v.clone();
                    if entry.is_negligible(self.tol) {
                        row.remove(&cc);
                    }
                }
            }
            reduced.insert(lead, row);
        }

        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|c| !reduced.contains_key(c)) {
            let mut v = BTreeMap::new();
            v.insert(free, T::one());
            for (&lead, row) in &reduced {
                if let Some(x) = row.get(&free) {
                    v.insert(lead, -x.clone());
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(Scalar::conj)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        Self::from_fn(rows, cols, |r, c| {
            self[(r / other.rows, c / other.cols)].clone()
                * other[(r % other.rows, c % other.cols)].clone()
        })
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.is_negligible(tol))
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b.clone()).magnitude())
            .fold(0.0, f64::max)
    }

    /// Equality: exact for exact scalars, entrywise within `tol` otherwise.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a.clone() - b.clone()).is_negligible(tol))
    }

    pub fn to_c64(&self) -> Matrix<Complex64> {
        self.map(Scalar::to_c64)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }
}

impl<T: Field> Matrix<T> {
    /// Solves `self · x = b` by Gaussian elimination with partial pivoting.
    pub fn solve(&self, b: &[T], tol: f64) -> Result<Vec<T>> {
        if !self.is_square() || b.len() != self.rows {
            return Err(Error::Shape(format!(
                "cannot solve {}x{} system with rhs of length {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut x = b.to_vec();
        for k in 0..n {
            let (piv, mag) = (k..n)
                .map(|r| (r, a[r * n + k].magnitude()))
                .fold((k, -1.0), |best, cand| if cand.1 > best.1 { cand } else { best });
            if a[piv * n + k].is_negligible(tol) || mag <= 0.0 {
                return Err(Error::NotInvertible);
            }
            if piv != k {
                for c in 0..n {
                    a.swap(k * n + c, piv * n + c);
                }
                x.swap(k, piv);
            }
            let pivot = a[k * n + k].clone();
            for r in k + 1..n {
                if a[r * n + k].is_zero() {
                    continue;
                }
                let factor = a[r * n + k].clone() / pivot.clone();
                for c in k..n {
                    let v = a[r * n + c].clone() - factor.clone() * a[k * n + c].clone();
                    a[r * n + c] = v;
                }
                x[r] = x[r].clone() - factor * x[k].clone();
            }
        }
        for k in (0..n).rev() {
            let mut acc = x[k].clone();
            for c in k + 1..n {
                acc = acc - a[k * n + c].clone() * x[c].clone();
            }
            x[k] = acc / a[k * n + k].clone();
        }
        Ok(x)
    }

    pub fn inverse(&self, tol: f64) -> Result<Self> {
        let n = self.rows;
        let mut inv = Self::zeros(n, n);
        for c in 0..n {
            let mut e = vec![T::zero(); n];
            e[c] = T::one();
            let col = self.solve(&e, tol)?;
            for (r, v) in col.into_iter().enumerate() {
                inv[(r, c)] = v;
            }
        }
        Ok(inv)
    }

    /// Determinant by elimination with partial pivoting.
    pub fn determinant(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = T::one();
        for k in 0..n {
            let piv = (k..n)
                .max_by(|&x, &y| {
                    a[x * n + k]
                        .magnitude()
                        .partial_cmp(&a[y * n + k].magnitude())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("nonempty range");
            if a[piv * n + k].is_zero() {
                return T::zero();
            }
            if piv != k {
                for c in 0..n {
                    a.swap(k * n + c, piv * n + c);
                }
                det = -det;
            }
            let pivot = a[k * n + k].clone();
            det = det * pivot.clone();
            for r in k + 1..n {
                let factor = a[r * n + k].clone() / pivot.clone();
                if factor.is_zero() {
                    continue;
                }
                for c in k..n {
                    let v = a[r * n + c].clone() - factor.clone() * a[k * n + c].clone();
                    a[r * n + c] = v;
                }
            }
        }
        det
    }

    /// Rank via sparse elimination of the rows.
    pub fn rank(&self, tol: f64) -> usize {
        let mut ech = SparseEchelon::new(self.cols, tol);
        for r in 0..self.rows {
            ech.insert(
                self.row(r)
                    .iter()
                    .cloned()
                    .enumerate()
                    .filter(|(_, v)| !v.is_negligible(tol)),
            );
        }
        ech.rank()
    }
}

impl<T: ComplexScalar> Matrix<T> {
    pub fn scale_by_i(&self) -> Self {
        self.scale(&T::i())
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = Matrix::<T>::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] = out[(r, c)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn echelon_rank_and_nullspace() {
        // x + y + z = 0, 2x + 2y + 2z = 0, y - z = 0 → rank 2, null (-2, 1, 1)
        let mut ech = SparseEchelon::<Rational>::new(3, 0.0);
        assert!(ech.insert(vec![(0, q(1)), (1, q(1)), (2, q(1))]));
        assert!(!ech.insert(vec![(0, q(2)), (1, q(2)), (2, q(2))]));
        assert!(ech.insert(vec![(1, q(1)), (2, q(-1))]));
        assert_eq!(ech.rank(), 2);
        let null = ech.nullspace();
        assert_eq!(null.len(), 1);
        let v = &null[0];
        assert_eq!(v[&0], q(-2));
        assert_eq!(v[&1], q(1));
        assert_eq!(v[&2], q(1));
    }

    #[test]
    fn solve_and_inverse() {
        let a: Matrix<f64> = Matrix::from_rows(vec![vec![0.0, 2.0], vec![1.0, 1.0]]);
        let x = a.solve(&[4.0, 3.0], 1e-14).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] - 2.0).abs() < 1e-14);
        let inv = a.inverse(1e-14).unwrap();
        assert!((&a * &inv).approx_eq(&Matrix::identity(2), 1e-14));
        let singular = Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(singular.solve(&[1.0, 1.0], 1e-14).is_err());
    }

    #[test]
    fn kron_shape_and_values() {
        let a = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(3), q(4)]]);
        let b = Matrix::<Rational>::identity(2);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(k[(2, 0)], q(3));
        assert_eq!(k[(3, 3)], q(4));
        assert_eq!(k[(2, 3)], q(0));
        assert_eq!(k.trace(), q(10));
    }

    #[test]
    fn determinant_with_pivoting() {
        let a = Matrix::from_rows(vec![
            vec![q(0), q(2), q(1)],
            vec![q(1), q(0), q(0)],
            vec![q(0), q(1), q(3)],
        ]);
        assert_eq!(a.determinant(), q(-5));
        assert_eq!(Matrix::<Rational>::zeros(2, 2).determinant(), q(0));
    }
}
