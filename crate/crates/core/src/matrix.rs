//! Dense complex matrices with the arithmetic the rest of the crate builds on.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num_complex::Complex;
use num_traits::{One, Zero};
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// Dense row-major matrix over `Complex<T>`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::DimensionMismatch("matrix must be nonempty".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged row lengths".into()));
        }
        let data: Vec<Complex<T>> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        for (k, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite(format!("entry {k}")));
            }
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let lifted: Vec<Vec<Complex<T>>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| Complex::new(T::real(x), T::zero()))
                    .collect()
            })
            .collect();
        Self::from_rows(&lifted)
    }

    pub fn diagonal(entries: &[Complex<T>]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn real_diagonal(entries: &[f64]) -> Self {
        let lifted: Vec<Complex<T>> = entries
            .iter()
            .map(|&x| Complex::new(T::real(x), T::zero()))
            .collect();
        Self::diagonal(&lifted)
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

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self[(i, j)] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conjugate_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        let mut out = self.clone();
        for z in &mut out.data {
            *z = *z * k;
        }
        out
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.scale(Complex::new(T::real(k), T::zero()))
    }

    pub fn trace(&self) -> Result<Complex<T>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((0..self.rows).map(|i| self[(i, i)]).sum())
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    /// Maximum modulus of `a_ij - conj(a_ji)` over all entries.
    pub fn hermitian_defect(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        Ok(worst)
    }

    /// `(A + A*)/2` with the diagonal forced real.
    pub fn hermitian_part(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let half = T::real(0.5);
        let mut out = Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()).scale(half)
        });
        for i in 0..self.rows {
            out[(i, i)] = Complex::new(out[(i, i)].re, T::zero());
        }
        Ok(out)
    }

    /// Determinant by LU elimination with partial pivoting on the modulus.
    pub fn determinant(&self) -> Result<Complex<T>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Complex::one());
        }
        let mut a = self.data.clone();
        let mut det = Complex::one();
        for k in 0..n {
            let mut p = k;
            let mut best = a[k * n + k].norm_sqr();
            for i in k + 1..n {
                let v = a[i * n + k].norm_sqr();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == T::zero() {
                return Ok(Complex::zero());
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let piv = a[k * n + k];
            det = det * piv;
            for i in k + 1..n {
                let f = a[i * n + k] / piv;
                for j in k + 1..n {
                    let t = a[k * n + j] * f;
                    a[i * n + j] = a[i * n + j] - t;
                }
                a[i * n + k] = Complex::zero();
            }
        }
        Ok(det)
    }

    /// Submatrix selected by row and column index lists; repetition allowed.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    /// Matrix-vector product.
    pub fn mat_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.cols, v.len(), "mat_vec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self[(i, j)] * v[j])
                    .sum::<Complex<T>>()
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }
}

impl<T: Scalar> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn add(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "shape mismatch in addition"
        );
        let mut out = self.clone();
        for (z, w) in out.data.iter_mut().zip(&rhs.data) {
            *z = *z + *w;
        }
        out
    }
}

impl<T: Scalar> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn sub(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "shape mismatch in subtraction"
        );
        let mut out = self.clone();
        for (z, w) in out.data.iter_mut().zip(&rhs.data) {
            *z = *z - *w;
        }
        out
    }
}

impl<T: Scalar> Neg for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn neg(self) -> ComplexMatrix<T> {
        let mut out = self.clone();
        for z in &mut out.data {
            *z = -*z;
        }
        out
    }
}

impl<T: Scalar> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn mul(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch in product");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == Complex::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = aik * rhs[(k, j)];
                    out[(i, j)] = out[(i, j)] + t;
                }
            }
        }
        out
    }
}
