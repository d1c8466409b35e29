//! Tensor, exterior, and symmetric power constructions, two-factor
//! compressions, and character projectors on tensor-power spaces.

use crate::character::CharacterFunction;
use crate::comb::{binomial, multiset_multiplicity, multisets_lex, subsets_lex, tuples_lex};
use crate::error::{Error, Result};
use crate::functionals::permanent;
use crate::matrix::ComplexMatrix;
use crate::perm::PermutationGroup;
use crate::scalar::Scalar;
use num_complex::Complex;
use num_traits::{One, Zero};

/// Cap on the dimension of any tensor-power space built here.
pub const TENSOR_DIM_CAP: usize = 4096;
/// Cap on the dimension of a symmetric power.
pub const SYMMETRIC_DIM_CAP: usize = 1024;

/// Kronecker product `A ⊗ B`.
pub fn kronecker<T: Scalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (ar, ac) = (a.rows(), a.cols());
    let (br, bc) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(ar * br, ac * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// `A ⊗ A ⊗ .. ⊗ A` with `r` factors; `r = 0` gives the 1x1 identity.
pub fn tensor_power<T: Scalar>(a: &ComplexMatrix<T>, r: usize) -> Result<ComplexMatrix<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let dim = n.checked_pow(r as u32).filter(|&d| d <= TENSOR_DIM_CAP);
    if dim.is_none() {
        return Err(Error::TooLarge(format!(
            "tensor power dimension {n}^{r} exceeds {TENSOR_DIM_CAP}"
        )));
    }
    let mut out = ComplexMatrix::identity(1);
    for _ in 0..r {
        out = kronecker(&out, a);
    }
    Ok(out)
}

/// r-th exterior power: entries are `det A[alpha|beta]` over r-element index
/// subsets in lexicographic order.
pub fn compound<T: Scalar>(a: &ComplexMatrix<T>, r: usize) -> Result<ComplexMatrix<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if r > n {
        return Err(Error::IndexOutOfRange(format!(
            "exterior power order {r} exceeds dimension {n}"
        )));
    }
    let subsets = subsets_lex(n, r);
    let dim = subsets.len();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for (i, rows) in subsets.iter().enumerate() {
        for (j, cols) in subsets.iter().enumerate() {
            out[(i, j)] = a.submatrix(rows, cols).determinant()?;
        }
    }
    Ok(out)
}

/// r-th symmetric power: entries are `per(A[alpha|beta]) / sqrt(mu(alpha) mu(beta))`
/// over weakly increasing r-tuples in lexicographic order.
pub fn symmetric_power<T: Scalar>(a: &ComplexMatrix<T>, r: usize) -> Result<ComplexMatrix<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(ComplexMatrix::identity(if r == 0 { 1 } else { 0 }));
    }
    let dim = binomial(n + r - 1, r);
    if dim > SYMMETRIC_DIM_CAP {
        return Err(Error::TooLarge(format!(
            "symmetric power dimension {dim} exceeds {SYMMETRIC_DIM_CAP}"
        )));
    }
    let tuples = multisets_lex(n, r);
    let weights: Vec<T> = tuples
        .iter()
        .map(|t| T::real(multiset_multiplicity(t) as f64).sqrt())
        .collect();
    let dim = tuples.len();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for (i, alpha) in tuples.iter().enumerate() {
        for (j, beta) in tuples.iter().enumerate() {
            let p = permanent(&a.submatrix(alpha, beta))?;
            out[(i, j)] = p.unscale(weights[i] * weights[j]);
        }
    }
    Ok(out)
}

/// Antisymmetric two-factor compression. Rows and columns are indexed by
/// strictly increasing pairs in lexicographic order; with both factors equal
/// it reduces to the second exterior power.
pub fn wedge_product<T: Scalar>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
) -> Result<ComplexMatrix<T>> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "factors have dimensions {} and {}",
            a.rows(),
            b.rows()
        )));
    }
    let n = a.rows();
    if n < 2 {
        return Err(Error::IndexOutOfRange(
            "antisymmetric compression needs dimension >= 2".into(),
        ));
    }
    let pairs = subsets_lex(n, 2);
    let dim = pairs.len();
    let half = T::real(0.5);
    let mut out = ComplexMatrix::zeros(dim, dim);
    for (row, p) in pairs.iter().enumerate() {
        let (i, j) = (p[0], p[1]);
        for (col, q) in pairs.iter().enumerate() {
            let (k, l) = (q[0], q[1]);
            let s = a[(i, k)] * b[(j, l)] + a[(j, l)] * b[(i, k)]
                - a[(i, l)] * b[(j, k)]
                - a[(j, k)] * b[(i, l)];
            out[(row, col)] = s.scale(half);
        }
    }
    Ok(out)
}

/// Symmetric two-factor compression. Rows and columns are indexed by weakly
/// increasing pairs in lexicographic order; with both factors equal it
/// reduces to the second symmetric power.
pub fn vee_product<T: Scalar>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
) -> Result<ComplexMatrix<T>> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "factors have dimensions {} and {}",
            a.rows(),
            b.rows()
        )));
    }
    let n = a.rows();
    if n == 0 {
        return Err(Error::IndexOutOfRange(
            "symmetric compression needs dimension >= 1".into(),
        ));
    }
    let pairs = multisets_lex(n, 2);
    let weight = |i: usize, j: usize| -> T {
        if i == j {
            T::real(2.0)
        } else {
            T::real(2.0).sqrt()
        }
    };
    let dim = pairs.len();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for (row, p) in pairs.iter().enumerate() {
        let (i, j) = (p[0], p[1]);
        for (col, q) in pairs.iter().enumerate() {
            let (k, l) = (q[0], q[1]);
            let s = a[(i, k)] * b[(j, l)]
                + a[(j, k)] * b[(i, l)]
                + a[(i, l)] * b[(j, k)]
                + a[(j, l)] * b[(i, k)];
            out[(row, col)] = s.unscale(weight(i, j) * weight(k, l));
        }
    }
    Ok(out)
}

fn encode_tuple(indices: &[usize], d: usize) -> usize {
    indices.iter().fold(0, |acc, &i| acc * d + i)
}

/// Which power construction a check or a basis refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerKind {
    /// Full tensor power `⊗^r`.
    Tensor,
    /// Exterior (compound) power `∧^r`.
    Wedge,
    /// Symmetric power `∨^r`.
    Vee,
}

impl PowerKind {
    pub fn label(self) -> &'static str {
        match self {
            PowerKind::Tensor => "tensor",
            PowerKind::Wedge => "wedge",
            PowerKind::Vee => "vee",
        }
    }

    /// The r-th power of `a` under this construction.
    pub fn apply<T: Scalar>(self, a: &ComplexMatrix<T>, r: usize) -> Result<ComplexMatrix<T>> {
        match self {
            PowerKind::Tensor => tensor_power(a, r),
            PowerKind::Wedge => compound(a, r),
            PowerKind::Vee => symmetric_power(a, r),
        }
    }
}

/// Row/column labels of a power construction: the index tuples, in the
/// lexicographic order used by every matrix builder in this module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexBasis {
    pub kind: PowerKind,
    pub n: usize,
    pub r: usize,
    pub labels: Vec<Vec<usize>>,
}

impl IndexBasis {
    pub fn new(kind: PowerKind, n: usize, r: usize) -> Self {
        let labels = match kind {
            PowerKind::Tensor => tuples_lex(n, r),
            PowerKind::Wedge => subsets_lex(n, r),
            PowerKind::Vee => multisets_lex(n, r),
        };
        IndexBasis { kind, n, r, labels }
    }

    pub fn dimension(&self) -> usize {
        self.labels.len()
    }

    /// Position of a label tuple in the basis, if present.
    pub fn position(&self, label: &[usize]) -> Option<usize> {
        match self.kind {
            // Full tensor labels decode arithmetically.
            PowerKind::Tensor => {
                if label.len() != self.r || label.iter().any(|&i| i >= self.n) {
                    None
                } else {
                    Some(encode_tuple(label, self.n))
                }
            }
            _ => self.labels.iter().position(|l| l.as_slice() == label),
        }
    }
}

/// Margin verdict on `P(A+B) - P(A) - P(B)` for a power construction `P`;
/// nonnegative for positive semidefinite inputs.
pub fn tensor_superadditivity_check<T: Scalar>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    r: usize,
    kind: PowerKind,
    tol: f64,
) -> Result<crate::eigen::LoewnerVerdict<T>> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "summands are {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let lhs = kind.apply(&(a + b), r)?;
    let rhs = &kind.apply(a, r)? + &kind.apply(b, r)?;
    crate::eigen::is_psd(&(&lhs - &rhs), tol)
}

/// Margin verdict on the four-term against three-term combination
/// `P(A+B+C) + P(A) + P(B) + P(C) - P(A+B) - P(A+C) - P(B+C)`;
/// nonnegative for positive semidefinite inputs.
pub fn three_matrix_tensor_check<T: Scalar>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    c: &ComplexMatrix<T>,
    r: usize,
    kind: PowerKind,
    tol: f64,
) -> Result<crate::eigen::LoewnerVerdict<T>> {
    if a.rows() != b.rows() || a.rows() != c.rows() || !a.is_square() {
        return Err(Error::DimensionMismatch(
            "three-term check needs three square matrices of one dimension".into(),
        ));
    }
    let lhs = &(&kind.apply(&(&(a + b) + c), r)? + &kind.apply(a, r)?)
        + &(&kind.apply(b, r)? + &kind.apply(c, r)?);
    let rhs = &(&kind.apply(&(a + b), r)? + &kind.apply(&(a + c), r)?)
        + &kind.apply(&(b + c), r)?;
    crate::eigen::is_psd(&(&lhs - &rhs), tol)
}

/// A character projector on the n-fold tensor power of a `dim_v`-dimensional
/// space, together with an orthonormal basis of its range.
///
/// The projector is `(deg(chi)/|G|) * sum_sigma chi(sigma) P(sigma)`, where
/// `P(sigma)` permutes tensor factors. For an irreducible character this is
/// a Hermitian idempotent; reducible characters are rejected.
#[derive(Clone, Debug)]
pub struct SymmetrizerContext<T: Scalar> {
    group: PermutationGroup,
    chi: CharacterFunction<T>,
    dim_v: usize,
    projector: ComplexMatrix<T>,
    range_basis: ComplexMatrix<T>,
}

/// Relative tolerance for the projector idempotency check.
pub const IDEMPOTENCY_REL_TOL: f64 = 1e-8;
/// Relative tolerance for the range-invariance check of induced maps.
pub const INVARIANCE_REL_TOL: f64 = 1e-7;

impl<T: Scalar> SymmetrizerContext<T> {
    pub fn new(
        group: &PermutationGroup,
        chi: &CharacterFunction<T>,
        dim_v: usize,
    ) -> Result<Self> {
        if chi.values().len() != group.order() {
            return Err(Error::DimensionMismatch(
                "character length does not match group order".into(),
            ));
        }
        let n = group.degree();
        let dim = dim_v.checked_pow(n as u32).filter(|&d| d <= TENSOR_DIM_CAP);
        let dim = match dim {
            Some(d) => d,
            None => {
                return Err(Error::TooLarge(format!(
                    "tensor power dimension {dim_v}^{n} exceeds {TENSOR_DIM_CAP}"
                )))
            }
        };
        let order = T::real(group.order() as f64);
        let degree = chi.degree();
        let mut projector = ComplexMatrix::<T>::zeros(dim, dim);
        let tuples = tuples_lex(dim_v, n);
        for (idx, sigma) in group.elements().iter().enumerate() {
            let coeff = chi.value(idx).scale(degree / order);
            if coeff == Complex::zero() {
                continue;
            }
            let sigma_inv = sigma.inverse();
            for alpha in &tuples {
                let col = encode_tuple(alpha, dim_v);
                // P(sigma) e_alpha = e_{alpha o sigma^-1}.
                let beta: Vec<usize> = (0..n).map(|k| alpha[sigma_inv.apply(k)]).collect();
                let row = encode_tuple(&beta, dim_v);
                projector[(row, col)] = projector[(row, col)] + coeff;
            }
        }
        let fro = projector.frobenius_norm();
        let defect = (&(&projector * &projector) - &projector).frobenius_norm();
        if defect > T::real(IDEMPOTENCY_REL_TOL) * (T::one() + fro) {
            return Err(Error::NotIdempotent(defect.as_f64()));
        }
        // The projector is Hermitian, so its range is spanned by the
        // eigenvectors with eigenvalue 1.
        let eig = crate::eigen::eigh(&projector)?;
        let half = T::real(0.5);
        let kept: Vec<usize> = (0..dim).filter(|&i| eig.values[i] > half).collect();
        let range_basis =
            ComplexMatrix::from_fn(dim, kept.len(), |i, j| eig.vectors[(i, kept[j])]);
        Ok(Self {
            group: group.clone(),
            chi: chi.clone(),
            dim_v,
            projector,
            range_basis,
        })
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn character(&self) -> &CharacterFunction<T> {
        &self.chi
    }

    pub fn factor_dimension(&self) -> usize {
        self.dim_v
    }

    pub fn projector(&self) -> &ComplexMatrix<T> {
        &self.projector
    }

    /// Orthonormal basis of the projector's range, one column per basis vector.
    pub fn range_basis(&self) -> &ComplexMatrix<T> {
        &self.range_basis
    }

    pub fn range_dimension(&self) -> usize {
        self.range_basis.cols()
    }

    /// Projection of the decomposable tensor `v_1 ⊗ .. ⊗ v_n`.
    pub fn symmetrized_tensor(&self, vectors: &[Vec<Complex<T>>]) -> Result<Vec<Complex<T>>> {
        let n = self.group.degree();
        if vectors.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "expected {n} factors, got {}",
                vectors.len()
            )));
        }
        for v in vectors {
            if v.len() != self.dim_v {
                return Err(Error::DimensionMismatch(format!(
                    "factor has dimension {}, expected {}",
                    v.len(),
                    self.dim_v
                )));
            }
        }
        let dim = self.projector.rows();
        let mut w = vec![Complex::<T>::zero(); dim];
        for alpha in tuples_lex(self.dim_v, n) {
            let mut prod = Complex::<T>::one();
            for (k, &i) in alpha.iter().enumerate() {
                prod = prod * vectors[k][i];
            }
            w[encode_tuple(&alpha, self.dim_v)] = prod;
        }
        Ok(self.projector.mat_vec(&w))
    }

    /// Unit-normalized projected decomposable tensor; fails when the
    /// projection is numerically zero.
    pub fn unit_symmetrized_tensor(&self, vectors: &[Vec<Complex<T>>]) -> Result<Vec<Complex<T>>> {
        let w = self.symmetrized_tensor(vectors)?;
        let norm = w
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |s, x| s + x)
            .sqrt();
        let scale_ref = vectors.iter().fold(T::one(), |s, v| {
            s * v
                .iter()
                .map(|z| z.norm_sqr())
                .fold(T::zero(), |a, x| a + x)
                .sqrt()
        });
        if norm <= T::real(1e-12) * (T::one() + scale_ref) {
            return Err(Error::DegenerateSymmetrizedTensor);
        }
        Ok(w.into_iter().map(|z| z.unscale(norm)).collect())
    }

    /// Compression of the n-fold tensor power of `a` to the projector range:
    /// `K = B^* (⊗^n a) B`. Fails if the range is not invariant under the
    /// tensor power, which cannot happen for genuine class functions.
    pub fn induced_map(&self, a: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
        if !a.is_square() || a.rows() != self.dim_v {
            return Err(Error::DimensionMismatch(format!(
                "induced map needs a {0}x{0} matrix",
                self.dim_v
            )));
        }
        let n = self.group.degree();
        let m = tensor_power(a, n)?;
        let mb = &m * &self.range_basis;
        let k = &self.range_basis.conjugate_transpose() * &mb;
        let residual = (&mb - &(&self.range_basis * &k)).frobenius_norm();
        let scale = a.frobenius_norm().powi(n as i32);
        if residual > T::real(INVARIANCE_REL_TOL) * (T::one() + scale) {
            return Err(Error::SubspaceNotInvariant(residual.as_f64()));
        }
        Ok(k)
    }
}

/// Character-weighted permutation sum of `A` recovered from the action of
/// `⊗^n A` on a projected standard tensor: with `e* = T(e_0 ⊗ .. ⊗ e_{n-1})`,
/// the value `(|G|/deg chi) * <(⊗^n A) e*, e*>` equals the character sum of
/// the transpose of `A`.
pub fn character_sum_via_symmetrized_action<T: Scalar>(
    a: &ComplexMatrix<T>,
    group: &PermutationGroup,
    chi: &CharacterFunction<T>,
) -> Result<Complex<T>> {
    let n = group.degree();
    if !a.is_square() || a.rows() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            got: a.rows(),
        });
    }
    let ctx = SymmetrizerContext::new(group, chi, n)?;
    let basis: Vec<Vec<Complex<T>>> = (0..n)
        .map(|k| {
            (0..n)
                .map(|i| {
                    if i == k {
                        Complex::one()
                    } else {
                        Complex::zero()
                    }
                })
                .collect()
        })
        .collect();
    let e_star = ctx.symmetrized_tensor(&basis)?;
    let m = tensor_power(a, n)?;
    let me = m.mat_vec(&e_star);
    let inner: Complex<T> = me
        .iter()
        .zip(&e_star)
        .map(|(x, y)| *x * y.conj())
        .sum();
    let factor = T::real(group.order() as f64) / chi.degree();
    Ok(inner.scale(factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::{immanant, permanental_sum};
    use crate::rng::{random_matrix, RngSeed};

    type M = ComplexMatrix<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn close(a: Complex<f64>, b: Complex<f64>, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
    }

    #[test]
    fn kronecker_shape_and_values() {
        let a = M::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let b = M::from_real_rows(&[vec![0.0, 5.0], vec![6.0, 7.0]]).unwrap();
        let k = kronecker(&a, &b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(0, 1)], c(5.0, 0.0)); // a00 * b01
        assert_eq!(k[(2, 0)], c(0.0, 0.0)); // a10 * b00
        assert_eq!(k[(3, 3)], c(28.0, 0.0)); // a11 * b11
    }

    #[test]
    fn tensor_power_is_multiplicative() {
        let a = random_matrix::<f64>(3, 3, RngSeed(1));
        let b = random_matrix::<f64>(3, 3, RngSeed(2));
        let lhs = tensor_power(&(&a * &b), 2).unwrap();
        let rhs = &tensor_power(&a, 2).unwrap() * &tensor_power(&b, 2).unwrap();
        assert!((&lhs - &rhs).frobenius_norm() < 1e-10);
    }

    #[test]
    fn compound_of_diagonal_matrix() {
        let a = M::real_diagonal(&[2.0, 3.0, 5.0]);
        let k = compound(&a, 2).unwrap();
        // Subsets in lexicographic order: {0,1}, {0,2}, {1,2}.
        assert_eq!(k[(0, 0)], c(6.0, 0.0));
        assert_eq!(k[(1, 1)], c(10.0, 0.0));
        assert_eq!(k[(2, 2)], c(15.0, 0.0));
        assert_eq!(k[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn compound_is_multiplicative() {
        let a = random_matrix::<f64>(4, 4, RngSeed(3));
        let b = random_matrix::<f64>(4, 4, RngSeed(4));
        let lhs = compound(&(&a * &b), 2).unwrap();
        let rhs = &compound(&a, 2).unwrap() * &compound(&b, 2).unwrap();
        assert!((&lhs - &rhs).frobenius_norm() < 1e-9);
    }

    #[test]
    fn symmetric_power_of_diagonal_matrix() {
        let a = M::real_diagonal(&[2.0, 3.0]);
        let s = symmetric_power(&a, 2).unwrap();
        // Tuples in lexicographic order: (0,0), (0,1), (1,1).
        assert_eq!(s.rows(), 3);
        assert!(close(s[(0, 0)], c(4.0, 0.0), 1e-12));
        assert!(close(s[(1, 1)], c(6.0, 0.0), 1e-12));
        assert!(close(s[(2, 2)], c(9.0, 0.0), 1e-12));
    }

    #[test]
    fn symmetric_power_is_multiplicative() {
        let a = random_matrix::<f64>(3, 3, RngSeed(5));
        let b = random_matrix::<f64>(3, 3, RngSeed(6));
        let lhs = symmetric_power(&(&a * &b), 2).unwrap();
        let rhs = &symmetric_power(&a, 2).unwrap() * &symmetric_power(&b, 2).unwrap();
        assert!((&lhs - &rhs).frobenius_norm() < 1e-9);
    }

    #[test]
    fn symmetric_power_trace_matches_permanental_sum() {
        let a = random_matrix::<f64>(3, 3, RngSeed(7));
        for r in 1..=3 {
            let s = symmetric_power(&a, r).unwrap();
            let tr = s.trace().unwrap();
            let h = permanental_sum(&a, r).unwrap();
            assert!(close(tr, h, 1e-10), "order {r}");
        }
    }

    #[test]
    fn determinant_power_identities() {
        let a = random_matrix::<f64>(3, 3, RngSeed(8));
        let d = a.determinant().unwrap();
        let n = 3u32;

        // det(⊗^r A) = det(A)^(r n^(r-1)) with r = 2.
        let t = tensor_power(&a, 2).unwrap().determinant().unwrap();
        assert!(close(t, d.powi(2 * n.pow(1) as i32), 1e-8));

        // det of the exterior square = det(A)^binomial(n-1, r-1), r = 2.
        let k = compound(&a, 2).unwrap().determinant().unwrap();
        assert!(close(k, d.powi(binomial(2, 1) as i32), 1e-8));

        // det of the symmetric square = det(A)^((r/n) binomial(n+r-1, r)).
        let s = symmetric_power(&a, 2).unwrap().determinant().unwrap();
        let exp = 2 * binomial(4, 2) as i32 / 3;
        assert!(close(s, d.powi(exp), 1e-8));
    }

    #[test]
    fn wedge_with_equal_factors_is_exterior_square() {
        let a = random_matrix::<f64>(4, 4, RngSeed(9));
        let w = wedge_product(&a, &a).unwrap();
        let k = compound(&a, 2).unwrap();
        assert!((&w - &k).frobenius_norm() < 1e-10);
    }

    #[test]
    fn vee_with_equal_factors_is_symmetric_square() {
        let a = random_matrix::<f64>(3, 3, RngSeed(10));
        let v = vee_product(&a, &a).unwrap();
        let s = symmetric_power(&a, 2).unwrap();
        assert!((&v - &s).frobenius_norm() < 1e-10);
    }

    #[test]
    fn two_factor_compressions_are_symmetric_in_their_arguments() {
        let a = random_matrix::<f64>(3, 3, RngSeed(11));
        let b = random_matrix::<f64>(3, 3, RngSeed(12));
        let w1 = wedge_product(&a, &b).unwrap();
        let w2 = wedge_product(&b, &a).unwrap();
        assert!((&w1 - &w2).frobenius_norm() < 1e-12);
        let v1 = vee_product(&a, &b).unwrap();
        let v2 = vee_product(&b, &a).unwrap();
        assert!((&v1 - &v2).frobenius_norm() < 1e-12);
    }

    #[test]
    fn projector_range_for_alternating_character_is_determinant() {
        let s2 = PermutationGroup::symmetric(2).unwrap();
        let chi = CharacterFunction::<f64>::sign(&s2);
        let ctx = SymmetrizerContext::new(&s2, &chi, 2).unwrap();
        assert_eq!(ctx.range_dimension(), 1);
        let a = random_matrix::<f64>(2, 2, RngSeed(13));
        let k = ctx.induced_map(&a).unwrap();
        assert!(close(k[(0, 0)], a.determinant().unwrap(), 1e-10));
    }

    #[test]
    fn projector_range_for_trivial_character_matches_symmetric_square() {
        let s2 = PermutationGroup::symmetric(2).unwrap();
        let chi = CharacterFunction::<f64>::trivial(&s2);
        let ctx = SymmetrizerContext::new(&s2, &chi, 2).unwrap();
        assert_eq!(ctx.range_dimension(), 3);
        let a = random_matrix::<f64>(2, 2, RngSeed(14));
        let k = ctx.induced_map(&a).unwrap();
        let s = symmetric_power(&a, 2).unwrap();
        // Same compression in different orthonormal bases: compare invariants.
        assert!(close(k.trace().unwrap(), s.trace().unwrap(), 1e-10));
        assert!(close(
            k.determinant().unwrap(),
            s.determinant().unwrap(),
            1e-9
        ));
    }

    #[test]
    fn hook_projector_has_isotypic_rank() {
        let s3 = PermutationGroup::symmetric(3).unwrap();
        let chi = CharacterFunction::<f64>::sn_irreducible(&s3, &[2, 1]).unwrap();
        let ctx = SymmetrizerContext::new(&s3, &chi, 3).unwrap();
        // deg 2 times multiplicity 8 inside the 27-dimensional cube.
        assert_eq!(ctx.range_dimension(), 16);
        let a = random_matrix::<f64>(3, 3, RngSeed(15));
        let k = ctx.induced_map(&a).unwrap();
        assert_eq!(k.rows(), 16);
    }

    #[test]
    fn reducible_character_is_rejected() {
        let s2 = PermutationGroup::symmetric(2).unwrap();
        let triv = CharacterFunction::<f64>::trivial(&s2);
        let sign = CharacterFunction::<f64>::sign(&s2);
        let sum: Vec<Complex<f64>> = (0..2).map(|i| triv.value(i) + sign.value(i)).collect();
        let chi = CharacterFunction::from_element_values(&s2, "sum", sum).unwrap();
        assert!(matches!(
            SymmetrizerContext::new(&s2, &chi, 2),
            Err(Error::NotIdempotent(_))
        ));
    }

    #[test]
    fn degenerate_projection_is_detected() {
        // Alternating projection of e ⊗ e vanishes.
        let s2 = PermutationGroup::symmetric(2).unwrap();
        let chi = CharacterFunction::<f64>::sign(&s2);
        let ctx = SymmetrizerContext::new(&s2, &chi, 2).unwrap();
        let e = vec![c(1.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(
            ctx.unit_symmetrized_tensor(&[e.clone(), e]),
            Err(Error::DegenerateSymmetrizedTensor)
        ));
    }

    #[test]
    fn symmetrized_action_recovers_character_sums() {
        let s3 = PermutationGroup::symmetric(3).unwrap();
        let a = random_matrix::<f64>(3, 3, RngSeed(16));
        let at = a.transpose();
        for part in [vec![3], vec![2, 1], vec![1, 1, 1]] {
            let chi = CharacterFunction::<f64>::sn_irreducible(&s3, &part).unwrap();
            let via_action = character_sum_via_symmetrized_action(&a, &s3, &chi).unwrap();
            let direct = immanant(&at, &s3, &chi).unwrap();
            assert!(
                close(via_action, direct, 1e-10),
                "partition {part:?}: {via_action} vs {direct}"
            );
        }
    }

    #[test]
    fn symmetrized_action_with_rotation_characters() {
        let c3 = PermutationGroup::cyclic(3).unwrap();
        let a = random_matrix::<f64>(3, 3, RngSeed(17));
        let at = a.transpose();
        for k in 0..3 {
            let chi = CharacterFunction::<f64>::cyclic(&c3, k).unwrap();
            let via_action = character_sum_via_symmetrized_action(&a, &c3, &chi).unwrap();
            let direct = immanant(&at, &c3, &chi).unwrap();
            assert!(close(via_action, direct, 1e-10), "rotation character {k}");
        }
    }

    #[test]
    fn tensor_cap_is_enforced() {
        let a = M::identity(9);
        assert!(matches!(tensor_power(&a, 5), Err(Error::TooLarge(_))));
    }

    #[test]
    fn index_basis_orders_and_positions() {
        let full = IndexBasis::new(PowerKind::Tensor, 3, 2);
        assert_eq!(full.dimension(), 9);
        assert_eq!(full.labels[0], vec![0, 0]);
        assert_eq!(full.position(&[1, 2]), Some(5));
        assert_eq!(full.position(&[3, 0]), None);

        let wedge = IndexBasis::new(PowerKind::Wedge, 4, 2);
        assert_eq!(wedge.dimension(), 6);
        assert_eq!(wedge.position(&[1, 3]), Some(4));

        let vee = IndexBasis::new(PowerKind::Vee, 3, 2);
        assert_eq!(vee.dimension(), 6);
        assert_eq!(vee.position(&[1, 1]), Some(3));
    }

    #[test]
    fn power_superadditivity_on_random_psd_pairs() {
        use crate::rng::random_psd;
        for (trial, kind) in [(0u64, PowerKind::Tensor), (1, PowerKind::Wedge), (2, PowerKind::Vee)]
        {
            let a = random_psd::<f64>(3, RngSeed(40 + trial));
            let b = random_psd::<f64>(3, RngSeed(50 + trial));
            let v = tensor_superadditivity_check(&a, &b, 2, kind, 1e-9).unwrap();
            assert!(v.holds, "{} margin {}", kind.label(), v.min_eigenvalue);
        }
    }

    #[test]
    fn power_superadditivity_equality_cases() {
        use crate::rng::random_psd;
        let a = random_psd::<f64>(3, RngSeed(60));
        let zero = M::zeros(3, 3);
        // With a zero summand the two sides differ by P(0), which vanishes
        // for every construction at r >= 1.
        for kind in [PowerKind::Tensor, PowerKind::Wedge, PowerKind::Vee] {
            let v = tensor_superadditivity_check(&a, &zero, 2, kind, 1e-9).unwrap();
            assert!(v.holds && v.min_eigenvalue.abs() < 1e-9, "{}", kind.label());
        }
        // r = 1: every power is the matrix itself, so the margin matrix is 0.
        let b = random_psd::<f64>(3, RngSeed(61));
        let v = tensor_superadditivity_check(&a, &b, 1, PowerKind::Tensor, 1e-12).unwrap();
        assert!(v.min_eigenvalue.abs() < 1e-12);
    }

    #[test]
    fn three_matrix_check_on_random_psd_triples() {
        use crate::rng::random_psd;
        for kind in [PowerKind::Tensor, PowerKind::Wedge, PowerKind::Vee] {
            let a = random_psd::<f64>(2, RngSeed(70));
            let b = random_psd::<f64>(2, RngSeed(71));
            let c = random_psd::<f64>(2, RngSeed(72));
            let v = three_matrix_tensor_check(&a, &b, &c, 2, kind, 1e-9).unwrap();
            assert!(v.holds, "{} margin {}", kind.label(), v.min_eigenvalue);
        }
    }

    #[test]
    fn three_matrix_check_collapses_with_zero_summand() {
        // With C = 0 both sides share P(A+B) + P(A) + P(B); the difference
        // is P(0), the zero matrix for r >= 1, so the margin vanishes.
        use crate::rng::random_psd;
        let a = random_psd::<f64>(2, RngSeed(73));
        let b = random_psd::<f64>(2, RngSeed(74));
        let zero = M::zeros(2, 2);
        for kind in [PowerKind::Tensor, PowerKind::Wedge, PowerKind::Vee] {
            let v = three_matrix_tensor_check(&a, &b, &zero, 2, kind, 1e-9).unwrap();
            assert!(
                v.holds && v.min_eigenvalue.abs() < 1e-10,
                "{} margin {}",
                kind.label(),
                v.min_eigenvalue
            );
        }
    }
}
