//! Scalar-valued matrix functionals: trace, determinant, permanent,
//! character-weighted permutation sums, and the trace functionals induced by
//! tensor, exterior, and symmetric powers.

use crate::character::{sn_character_value, CharacterFunction};
use crate::comb::{multiset_multiplicity, multisets_lex, subsets_lex};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::perm::PermutationGroup;
use crate::scalar::Scalar;
use num_complex::Complex;
use num_traits::{One, Zero};

/// Largest dimension accepted by the permanent.
pub const PERMANENT_DIM_CAP: usize = 14;
/// Largest dimension accepted by the streaming full-symmetric-group sum.
pub const FULL_SN_DIM_CAP: usize = 8;

/// Character-weighted permutation sum over an explicit group:
/// `sum_{sigma in G} chi(sigma) * prod_i a[i, sigma(i)]`.
pub fn immanant<T: Scalar>(
    a: &ComplexMatrix<T>,
    group: &PermutationGroup,
    chi: &CharacterFunction<T>,
) -> Result<Complex<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if group.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            got: group.degree(),
        });
    }
    if chi.values().len() != group.order() {
        return Err(Error::DimensionMismatch(
            "character length does not match group order".into(),
        ));
    }
    let mut total = Complex::zero();
    for (idx, sigma) in group.elements().iter().enumerate() {
        let mut prod = Complex::<T>::one();
        for i in 0..n {
            prod = prod * a[(i, sigma.apply(i))];
        }
        total = total + chi.value(idx) * prod;
    }
    Ok(total)
}

/// Permanent by inclusion-exclusion over column subsets with Gray-code
/// updates of the running row sums.
pub fn permanent<T: Scalar>(a: &ComplexMatrix<T>) -> Result<Complex<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n > PERMANENT_DIM_CAP {
        return Err(Error::TooLarge(format!(
            "permanent limited to dimension {PERMANENT_DIM_CAP}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(Complex::one());
    }
    let mut row_sums = vec![Complex::<T>::zero(); n];
    let mut total = Complex::<T>::zero();
    for k in 1u64..(1u64 << n) {
        let gray = k ^ (k >> 1);
        let j = k.trailing_zeros() as usize;
        if gray & (1 << j) != 0 {
            for i in 0..n {
                row_sums[i] = row_sums[i] + a[(i, j)];
            }
        } else {
            for i in 0..n {
                row_sums[i] = row_sums[i] - a[(i, j)];
            }
        }
        let mut prod = Complex::<T>::one();
        for r in &row_sums {
            prod = prod * *r;
        }
        let size = gray.count_ones() as usize;
        if (n - size) % 2 == 0 {
            total = total + prod;
        } else {
            total = total - prod;
        }
    }
    Ok(total)
}

/// Character-weighted sum over the full symmetric group, streaming through
/// all permutations without materializing the group. The character is the
/// irreducible one indexed by `partition`.
pub fn immanant_sn<T: Scalar>(a: &ComplexMatrix<T>, partition: &[usize]) -> Result<Complex<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n > FULL_SN_DIM_CAP {
        return Err(Error::TooLarge(format!(
            "full symmetric-group sum limited to dimension {FULL_SN_DIM_CAP}, got {n}"
        )));
    }
    let total: usize = partition.iter().sum();
    if total != n {
        return Err(Error::NotSamePartitionSize);
    }
    if n == 0 {
        return Ok(Complex::one());
    }
    // Character value per cycle type, computed once.
    let mut table: Vec<(Vec<usize>, T)> = Vec::new();
    for rho in crate::comb::partitions(n) {
        let v = sn_character_value(partition, &rho)?;
        table.push((rho, T::real(v as f64)));
    }
    let lookup = |ct: &[usize]| -> T {
        table
            .iter()
            .find(|(rho, _)| rho.as_slice() == ct)
            .map(|(_, v)| *v)
            .expect("every cycle type is a partition of n")
    };

    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut total_sum = Complex::<T>::zero();
    let add_term = |p: &[usize], seen: &mut Vec<bool>| {
        let mut prod = Complex::<T>::one();
        for (i, &j) in p.iter().enumerate() {
            prod = prod * a[(i, j)];
        }
        seen.iter_mut().for_each(|s| *s = false);
        let mut ct = Vec::with_capacity(n);
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = p[i];
                len += 1;
            }
            ct.push(len);
        }
        ct.sort_unstable_by(|x, y| y.cmp(x));
        prod.scale(lookup(&ct))
    };
    total_sum = total_sum + add_term(&p, &mut seen);
    let mut i = 0usize;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            total_sum = total_sum + add_term(&p, &mut seen);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(total_sum)
}

/// Product of the main diagonal entries.
pub fn hadamard_function<T: Scalar>(a: &ComplexMatrix<T>) -> Result<Complex<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let mut prod = Complex::<T>::one();
    for i in 0..a.rows() {
        prod = prod * a[(i, i)];
    }
    Ok(prod)
}

/// The three spectral symmetric functions indexed by `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetricKind {
    /// `p_r`: the r-th power of the trace.
    TracePower,
    /// `e_r`: elementary symmetric polynomial of the eigenvalues.
    Elementary,
    /// `s_r`: complete homogeneous symmetric polynomial of the eigenvalues.
    Complete,
}

/// Symmetric function of the eigenvalues of a Hermitian matrix. Rejects
/// non-Hermitian input (the eigensolver gate propagates).
pub fn spectral_symmetric<T: Scalar>(
    a: &ComplexMatrix<T>,
    kind: SymmetricKind,
    r: usize,
) -> Result<T> {
    match kind {
        SymmetricKind::TracePower => {
            let vals = crate::eigen::eigenvalues(a)?;
            let t: T = vals.iter().copied().fold(T::zero(), |acc, l| acc + l);
            let mut out = T::one();
            for _ in 0..r {
                out = out * t;
            }
            Ok(out)
        }
        SymmetricKind::Elementary => elementary_symmetric_spectral(a, r),
        SymmetricKind::Complete => complete_homogeneous_spectral(a, r),
    }
}

/// `(tr A)^r`, the trace of the r-th tensor power.
pub fn trace_power<T: Scalar>(a: &ComplexMatrix<T>, r: usize) -> Result<Complex<T>> {
    let t = a.trace()?;
    let mut out = Complex::<T>::one();
    for _ in 0..r {
        out = out * t;
    }
    Ok(out)
}

/// Sum of all `r x r` principal minors, the trace of the r-th exterior power.
pub fn principal_minor_sum<T: Scalar>(a: &ComplexMatrix<T>, r: usize) -> Result<Complex<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if r > n {
        return Err(Error::IndexOutOfRange(format!(
            "minor order {r} exceeds dimension {n}"
        )));
    }
    let mut total = Complex::<T>::zero();
    for s in subsets_lex(n, r) {
        total = total + a.submatrix(&s, &s).determinant()?;
    }
    Ok(total)
}

/// Normalized permanental sum over weakly increasing index tuples, the trace
/// of the r-th symmetric power:
/// `sum_alpha per(A[alpha|alpha]) / mu(alpha)`.
pub fn permanental_sum<T: Scalar>(a: &ComplexMatrix<T>, r: usize) -> Result<Complex<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(if r == 0 { Complex::one() } else { Complex::zero() });
    }
    let mut total = Complex::<T>::zero();
    for alpha in multisets_lex(n, r) {
        let p = permanent(&a.submatrix(&alpha, &alpha))?;
        let mu = multiset_multiplicity(&alpha);
        total = total + p.unscale(T::real(mu as f64));
    }
    Ok(total)
}

/// Elementary symmetric polynomial of the eigenvalues of a Hermitian matrix.
/// Agrees with [`principal_minor_sum`] on Hermitian inputs.
pub fn elementary_symmetric_spectral<T: Scalar>(a: &ComplexMatrix<T>, r: usize) -> Result<T> {
    let vals = crate::eigen::eigenvalues(a)?;
    if r > vals.len() {
        return Err(Error::IndexOutOfRange(format!(
            "symmetric-function order {r} exceeds dimension {}",
            vals.len()
        )));
    }
    let mut e = vec![T::zero(); r + 1];
    e[0] = T::one();
    for &l in &vals {
        for k in (1..=r).rev() {
            e[k] = e[k] + l * e[k - 1];
        }
    }
    Ok(e[r])
}

/// Complete homogeneous symmetric polynomial of the eigenvalues of a
/// Hermitian matrix. Agrees with [`permanental_sum`] on Hermitian inputs.
pub fn complete_homogeneous_spectral<T: Scalar>(a: &ComplexMatrix<T>, r: usize) -> Result<T> {
    let vals = crate::eigen::eigenvalues(a)?;
    let mut h = vec![T::zero(); r + 1];
    h[0] = T::one();
    for &l in &vals {
        for k in 1..=r {
            h[k] = h[k] + l * h[k - 1];
        }
    }
    Ok(h[r])
}

/// A named scalar functional on square matrices.
#[derive(Clone, Debug)]
pub enum Functional<T: Scalar> {
    Trace,
    Determinant,
    Permanent,
    /// Character-weighted permutation sum over an explicit group.
    CharacterSum {
        group: PermutationGroup,
        character: CharacterFunction<T>,
    },
    /// `(tr A)^r`.
    TracePower { r: usize },
    /// Sum of `r x r` principal minors.
    MinorSum { r: usize },
    /// Normalized permanental sum of order `r`.
    PermanentalSum { r: usize },
}

impl<T: Scalar> Functional<T> {
    pub fn name(&self) -> String {
        match self {
            Functional::Trace => "tr".into(),
            Functional::Determinant => "det".into(),
            Functional::Permanent => "per".into(),
            Functional::CharacterSum { character, .. } => {
                format!("charsum[{}]", character.label())
            }
            Functional::TracePower { r } => format!("p:{r}"),
            Functional::MinorSum { r } => format!("e:{r}"),
            Functional::PermanentalSum { r } => format!("s:{r}"),
        }
    }

    pub fn evaluate(&self, a: &ComplexMatrix<T>) -> Result<Complex<T>> {
        match self {
            Functional::Trace => a.trace(),
            Functional::Determinant => a.determinant(),
            Functional::Permanent => permanent(a),
            Functional::CharacterSum { group, character } => immanant(a, group, character),
            Functional::TracePower { r } => trace_power(a, *r),
            Functional::MinorSum { r } => principal_minor_sum(a, *r),
            Functional::PermanentalSum { r } => permanental_sum(a, *r),
        }
    }
}
