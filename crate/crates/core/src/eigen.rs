//! Hermitian eigendecomposition via cyclic Jacobi rotations, plus the
//! Loewner-order checks built on top of it.
//!
//! The solver accepts matrices that are Hermitian up to a small defect,
//! symmetrizes them, and then annihilates off-diagonal entries with complex
//! plane rotations until the off-diagonal Frobenius mass is negligible
//! relative to the whole matrix.

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;
use num_complex::Complex;
use num_traits::Zero;

/// Relative tolerance on the Hermitian defect accepted by the solver.
pub const HERMITICITY_REL_TOL: f64 = 1e-10;
/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;
/// Convergence threshold on off-diagonal mass relative to the Frobenius norm.
pub const OFF_DIAGONAL_REL_TOL: f64 = 1e-12;

/// Result of a Hermitian eigendecomposition: `a == v * diag(values) * v^*`,
/// eigenvalues ascending, columns of `v` orthonormal.
#[derive(Clone, Debug)]
pub struct Eigendecomposition<T: Scalar> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

fn off_diagonal_norm<T: Scalar>(a: &ComplexMatrix<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Rejects inputs whose Hermitian defect exceeds
/// `HERMITICITY_REL_TOL * (1 + frobenius_norm)`; otherwise works on the
/// symmetrized matrix `(A + A^*)/2`.
pub fn eigh<T: Scalar>(a: &ComplexMatrix<T>) -> Result<Eigendecomposition<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let fro = a.frobenius_norm();
    let defect = a.hermitian_defect()?;
    let gate = T::real(HERMITICITY_REL_TOL) * (T::one() + fro);
    if defect > gate {
        return Err(Error::NotHermitian {
            defect: defect.as_f64(),
            tolerance: gate.as_f64(),
        });
    }
    let mut h = a.hermitian_part()?;
    let mut v = ComplexMatrix::<T>::identity(n);
    if n <= 1 {
        let values = (0..n).map(|i| h[(i, i)].re).collect();
        return Ok(Eigendecomposition { values, vectors: v });
    }
    let threshold = T::real(OFF_DIAGONAL_REL_TOL) * fro;
    let mut converged = off_diagonal_norm(&h) <= threshold;
    let mut sweeps = 0usize;
    while !converged {
        if sweeps >= MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let gamma = h[(p, q)];
                let g = gamma.norm();
                if g == T::zero() {
                    continue;
                }
                let alpha = h[(p, p)].re;
                let beta = h[(q, q)].re;
                let theta = (beta - alpha) / (T::real(2.0) * g);
                let t = if theta == T::zero() {
                    T::one()
                } else {
                    let s = if theta > T::zero() { T::one() } else { -T::one() };
                    s / (theta.abs() + theta.hypot(T::one()))
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let sigma = t * c;
                let phase = gamma.unscale(g);
                let s_rot = phase.scale(sigma);
                let cc = Complex::new(c, T::zero());

                // Column update: A <- A * U.
                for i in 0..n {
                    let aip = h[(i, p)];
                    let aiq = h[(i, q)];
                    h[(i, p)] = aip * cc - aiq * s_rot.conj();
                    h[(i, q)] = aip * s_rot + aiq * cc;
                }
                // Row update: A <- U^* * A.
                for j in 0..n {
                    let apj = h[(p, j)];
                    let aqj = h[(q, j)];
                    h[(p, j)] = apj * cc - aqj * s_rot;
                    h[(q, j)] = apj * s_rot.conj() + aqj * cc;
                }
                // Accumulate V <- V * U.
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * cc - viq * s_rot.conj();
                    v[(i, q)] = vip * s_rot + viq * cc;
                }
                h[(p, q)] = Complex::zero();
                h[(q, p)] = Complex::zero();
                h[(p, p)] = Complex::new(h[(p, p)].re, T::zero());
                h[(q, q)] = Complex::new(h[(q, q)].re, T::zero());
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&h) <= threshold;
    }
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| h[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("finite eigenvalues"));
    let values: Vec<T> = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(Eigendecomposition { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn eigenvalues<T: Scalar>(a: &ComplexMatrix<T>) -> Result<Vec<T>> {
    Ok(eigh(a)?.values)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue<T: Scalar>(a: &ComplexMatrix<T>) -> Result<T> {
    let vals = eigenvalues(a)?;
    vals.first()
        .copied()
        .ok_or_else(|| Error::DimensionMismatch("empty matrix has no eigenvalues".into()))
}

/// Outcome of a positive-semidefiniteness test.
#[derive(Clone, Debug)]
pub struct LoewnerVerdict<T: Scalar> {
    pub holds: bool,
    pub min_eigenvalue: T,
    pub tolerance_used: T,
}

/// Tests `A >= 0` in the Loewner order: the smallest eigenvalue must be at
/// least `-tol * (1 + ||A||_F)`.
pub fn is_psd<T: Scalar>(a: &ComplexMatrix<T>, tol: f64) -> Result<LoewnerVerdict<T>> {
    let fro = a.frobenius_norm();
    let min = min_eigenvalue(a)?;
    let tolerance_used = T::real(tol) * (T::one() + fro);
    Ok(LoewnerVerdict {
        holds: min >= -tolerance_used,
        min_eigenvalue: min,
        tolerance_used,
    })
}

/// Tests `A >= B` in the Loewner order by checking `A - B >= 0`.
pub fn loewner_ge<T: Scalar>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    tol: f64,
) -> Result<LoewnerVerdict<T>> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "cannot compare {}x{} with {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    is_psd(&(a - b), tol)
}

/// Applies a real scalar function to a Hermitian matrix through its spectrum:
/// `f(A) = V diag(f(lambda_i)) V^*`.
pub fn apply_spectral<T: Scalar>(
    a: &ComplexMatrix<T>,
    f: impl Fn(T) -> T,
) -> Result<ComplexMatrix<T>> {
    let eig = eigh(a)?;
    let n = a.rows();
    let d = ComplexMatrix::diagonal(
        &eig.values
            .iter()
            .map(|&l| Complex::new(f(l), T::zero()))
            .collect::<Vec<_>>(),
    );
    let vh = eig.vectors.conjugate_transpose();
    let mut out = &(&eig.vectors * &d) * &vh;
    // Symmetrize away rotation round-off so downstream Hermitian gates accept it.
    out = out.hermitian_part()?;
    let _ = n;
    Ok(out)
}

/// Entrywise modulus of a matrix.
pub fn entrywise_abs<T: Scalar>(a: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        Complex::new(a[(i, j)].norm(), T::zero())
    })
}
