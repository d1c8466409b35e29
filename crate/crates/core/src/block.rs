//! Block-partitioned matrices: partial traces, the block-transpose
//! (reshuffle) involution, entrywise functional compressions, and blockwise
//! tensor powers with their exact embedding into the full tensor power.

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::multilinear::tensor_power;
use crate::scalar::Scalar;
use num_complex::Complex;

/// An `m x m` grid of `n x n` blocks, stored row-major, viewed as an
/// `mn x mn` matrix when flattened.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockMatrix<T: Scalar> {
    m: usize,
    n: usize,
    blocks: Vec<ComplexMatrix<T>>,
}

impl<T: Scalar> BlockMatrix<T> {
    pub fn new(m: usize, n: usize, blocks: Vec<ComplexMatrix<T>>) -> Result<Self> {
        if blocks.len() != m * m {
            return Err(Error::DimensionMismatch(format!(
                "expected {} blocks, got {}",
                m * m,
                blocks.len()
            )));
        }
        for b in &blocks {
            if b.rows() != n || b.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "expected {n}x{n} blocks, found {}x{}",
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(Self { m, n, blocks })
    }

    /// Partitions an `mn x mn` matrix into an `m x m` grid of `n x n` blocks.
    pub fn from_flat(a: &ComplexMatrix<T>, m: usize, n: usize) -> Result<Self> {
        if a.rows() != m * n || a.cols() != m * n {
            return Err(Error::DimensionMismatch(format!(
                "cannot partition {}x{} into {m}x{m} grid of {n}x{n} blocks",
                a.rows(),
                a.cols()
            )));
        }
        let blocks = (0..m * m)
            .map(|idx| {
                let (i, j) = (idx / m, idx % m);
                ComplexMatrix::from_fn(n, n, |r, s| a[(i * n + r, j * n + s)])
            })
            .collect();
        Ok(Self { m, n, blocks })
    }

    pub fn outer_dimension(&self) -> usize {
        self.m
    }

    pub fn inner_dimension(&self) -> usize {
        self.n
    }

    pub fn block(&self, i: usize, j: usize) -> &ComplexMatrix<T> {
        assert!(i < self.m && j < self.m, "block index out of range");
        &self.blocks[i * self.m + j]
    }

    pub fn flatten(&self) -> ComplexMatrix<T> {
        let (m, n) = (self.m, self.n);
        ComplexMatrix::from_fn(m * n, m * n, |r, c| {
            self.block(r / n, c / n)[(r % n, c % n)]
        })
    }

    /// Sum of the diagonal blocks: the `n x n` trace over the outer index.
    pub fn partial_trace_first(&self) -> ComplexMatrix<T> {
        let mut out = ComplexMatrix::zeros(self.n, self.n);
        for i in 0..self.m {
            out = &out + self.block(i, i);
        }
        out
    }

    /// Trace of each block: the `m x m` trace over the inner index.
    pub fn partial_trace_second(&self) -> ComplexMatrix<T> {
        ComplexMatrix::from_fn(self.m, self.m, |i, j| {
            self.block(i, j).trace().expect("blocks are square")
        })
    }

    /// Exchanges the roles of the outer and inner indices:
    /// the result is an `n x n` grid of `m x m` blocks with
    /// `out.block(r, s)[(i, j)] = self.block(i, j)[(r, s)]`.
    ///
    /// Applying it twice returns the original matrix exactly, and the
    /// flattened result is a permutation conjugation of the flattened input.
    pub fn reshuffle(&self) -> BlockMatrix<T> {
        let (m, n) = (self.m, self.n);
        let blocks = (0..n * n)
            .map(|idx| {
                let (r, s) = (idx / n, idx % n);
                ComplexMatrix::from_fn(m, m, |i, j| self.block(i, j)[(r, s)])
            })
            .collect();
        BlockMatrix {
            m: n,
            n: m,
            blocks,
        }
    }

    /// Replaces every block by its r-th tensor power, keeping the grid.
    pub fn tensor_blockwise(&self, r: usize) -> Result<BlockMatrix<T>> {
        let blocks: Result<Vec<_>> = self.blocks.iter().map(|b| tensor_power(b, r)).collect();
        BlockMatrix::new(self.m, self.n.pow(r as u32), blocks?)
    }
}

/// Applies a scalar functional to every block: the `m x m` matrix
/// `[f(A_ij)]`. With `f = tr` this is the partial trace over the inner index.
pub fn partial_map_second<T: Scalar>(
    a: &BlockMatrix<T>,
    f: impl Fn(&ComplexMatrix<T>) -> Result<Complex<T>>,
) -> Result<ComplexMatrix<T>> {
    let m = a.outer_dimension();
    let mut out = ComplexMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            out[(i, j)] = f(a.block(i, j))?;
        }
    }
    Ok(out)
}

/// Applies a scalar functional across the outer index: the `n x n` matrix
/// whose `(r, s)` entry is `f([ (A_ij)_{rs} ]_{ij})`. Defined as the
/// blockwise map of the reshuffled matrix, so the duality with
/// [`partial_map_second`] is exact by construction. With `f = tr` this is
/// the partial trace over the outer index.
pub fn partial_map_first<T: Scalar>(
    a: &BlockMatrix<T>,
    f: impl Fn(&ComplexMatrix<T>) -> Result<Complex<T>>,
) -> Result<ComplexMatrix<T>> {
    partial_map_second(&a.reshuffle(), f)
}

/// Row/column indices at which the flattened blockwise tensor power embeds
/// into the full tensor power of the flattened matrix: the block-row
/// `(i, t_1 .. t_r)` sits at `sum_k (i*n + t_k) * (mn)^(r-1-k)`.
pub fn embedding_indices(m: usize, n: usize, r: usize) -> Vec<usize> {
    let big = m * n;
    let mut out = Vec::with_capacity(m * n.pow(r as u32));
    for i in 0..m {
        let tuples = crate::comb::tuples_lex(n, r);
        for t in tuples {
            let idx = t.iter().fold(0usize, |acc, &tk| acc * big + (i * n + tk));
            out.push(idx);
        }
    }
    out
}
