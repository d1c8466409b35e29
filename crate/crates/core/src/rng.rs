//! Deterministic random sampling for matrices, vectors, and test instances.
//!
//! Every sampler is driven by an explicit seed. Independent streams for
//! (case, trial) pairs are split off with [`SampleRng::derive`], so parallel
//! runs visit trials in any order and still reproduce identical data.

use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;
use num_complex::Complex;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Master seed for a deterministic run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RngSeed(pub u64);

impl Default for RngSeed {
    fn default() -> Self {
        RngSeed(0x5eed_0001)
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Counter-based random stream with deterministic splitting.
pub struct SampleRng {
    inner: ChaCha8Rng,
}

impl SampleRng {
    pub fn new(seed: RngSeed) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed.0),
        }
    }

    /// Independent stream identified by a label and an index.
    ///
    /// Streams for distinct `(tag, index)` pairs are statistically
    /// independent and do not depend on draw order elsewhere.
    pub fn derive(seed: RngSeed, tag: &str, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix(seed.0 ^ fnv1a(tag.as_bytes())));
        rng.set_stream(splitmix(index.wrapping_add(0x9e37_79b9)));
        Self { inner: rng }
    }

    /// Uniform draw from `[0, 1)` with 53 usable bits.
    pub fn uniform(&mut self) -> f64 {
        ((self.inner.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Uniform draw from `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal draw (Box–Muller).
    pub fn normal(&mut self) -> f64 {
        let u1 = self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Complex draw with independent standard normal real and imaginary parts.
    pub fn complex_normal<T: Scalar>(&mut self) -> Complex<T> {
        Complex::new(T::real(self.normal()), T::real(self.normal()))
    }

    pub fn usize_below(&mut self, n: usize) -> usize {
        assert!(n > 0, "usize_below(0)");
        (self.inner.next_u64() % n as u64) as usize
    }
}

/// Matrix with independent complex-normal entries.
pub fn random_matrix_with<T: Scalar>(
    rows: usize,
    cols: usize,
    rng: &mut SampleRng,
) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(rows, cols, |_, _| rng.complex_normal())
}

/// Hermitian matrix sampled as the Hermitian part of a complex-normal matrix.
pub fn random_hermitian_with<T: Scalar>(n: usize, rng: &mut SampleRng) -> ComplexMatrix<T> {
    random_matrix_with(n, n, rng)
        .hermitian_part()
        .expect("square by construction")
}

/// Positive-semidefinite matrix `X^* X`, exactly Hermitian with a real diagonal.
pub fn random_psd_with<T: Scalar>(n: usize, rng: &mut SampleRng) -> ComplexMatrix<T> {
    let x = random_matrix_with::<T>(n, n, rng);
    let g = &x.conjugate_transpose() * &x;
    g.hermitian_part().expect("square by construction")
}

/// Haar-ish unitary via modified Gram–Schmidt on a complex-normal matrix.
pub fn random_unitary_with<T: Scalar>(n: usize, rng: &mut SampleRng) -> ComplexMatrix<T> {
    loop {
        let a = random_matrix_with::<T>(n, n, rng);
        let mut cols: Vec<Vec<Complex<T>>> = (0..n).map(|j| a.column(j)).collect();
        let mut ok = true;
        for j in 0..n {
            for k in 0..j {
                let proj: Complex<T> = (0..n).map(|i| cols[j][i] * cols[k][i].conj()).sum();
                for i in 0..n {
                    let t = cols[k][i] * proj;
                    cols[j][i] = cols[j][i] - t;
                }
            }
            let norm = (0..n)
                .map(|i| cols[j][i].norm_sqr())
                .fold(T::zero(), |s, v| s + v)
                .sqrt();
            if norm < T::real(1e-8) {
                ok = false;
                break;
            }
            for i in 0..n {
                cols[j][i] = cols[j][i].unscale(norm);
            }
        }
        if ok {
            return ComplexMatrix::from_fn(n, n, |i, j| cols[j][i]);
        }
    }
}

/// Complex-normal vector.
pub fn random_vector_with<T: Scalar>(n: usize, rng: &mut SampleRng) -> Vec<Complex<T>> {
    (0..n).map(|_| rng.complex_normal()).collect()
}

/// Unit-norm complex vector.
pub fn random_unit_vector_with<T: Scalar>(n: usize, rng: &mut SampleRng) -> Vec<Complex<T>> {
    loop {
        let v = random_vector_with::<T>(n, rng);
        let norm = v
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |s, x| s + x)
            .sqrt();
        if norm > T::real(1e-6) {
            return v.into_iter().map(|z| z.unscale(norm)).collect();
        }
    }
}

/// Unit-modulus complex scalar.
pub fn random_phase_with<T: Scalar>(rng: &mut SampleRng) -> Complex<T> {
    let theta = rng.uniform_in(0.0, std::f64::consts::TAU);
    Complex::new(T::real(theta.cos()), T::real(theta.sin()))
}

/// Convenience seeded samplers used by examples and fixtures.
pub fn random_matrix<T: Scalar>(rows: usize, cols: usize, seed: RngSeed) -> ComplexMatrix<T> {
    random_matrix_with(rows, cols, &mut SampleRng::new(seed))
}

pub fn random_hermitian<T: Scalar>(n: usize, seed: RngSeed) -> ComplexMatrix<T> {
    random_hermitian_with(n, &mut SampleRng::new(seed))
}

pub fn random_psd<T: Scalar>(n: usize, seed: RngSeed) -> ComplexMatrix<T> {
    random_psd_with(n, &mut SampleRng::new(seed))
}

pub fn random_unitary<T: Scalar>(n: usize, seed: RngSeed) -> ComplexMatrix<T> {
    random_unitary_with(n, &mut SampleRng::new(seed))
}
