//! Inner-product geometry of vector triples: Gram-type positivity
//! constructions, the entrywise-absolute-value lemma for 3x3 matrices, a
//! product inequality refining Cauchy-Schwarz, and the calculus of the two
//! standard angles between complex vectors, with their triangle inequalities.

use crate::eigen::{entrywise_abs, is_psd, LoewnerVerdict};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::rng::{random_psd_with, random_vector_with, RngSeed, SampleRng};
use crate::scalar::Scalar;
use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

/// Permitted overshoot of a cosine beyond [-1, 1] before clamping is
/// considered a numerical fault rather than roundoff.
pub const COSINE_OVERSHOOT_TOL: f64 = 1e-12;
/// Unit-norm gate for the three-unit-vector margins.
pub const UNIT_NORM_TOL: f64 = 1e-10;

/// Standard inner product with the conjugate on the second argument:
/// `<x, y> = sum_i conj(y_i) x_i`.
pub fn inner<T: Scalar>(x: &[Complex<T>], y: &[Complex<T>]) -> Result<Complex<T>> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "inner product of lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(x.iter().zip(y).map(|(a, b)| *a * b.conj()).sum())
}

/// Euclidean norm of a complex vector.
pub fn norm<T: Scalar>(x: &[Complex<T>]) -> T {
    x.iter()
        .map(|z| z.norm_sqr())
        .fold(T::zero(), |s, v| s + v)
        .sqrt()
}

/// 3x3 matrix of real parts of the pairwise products; positive semidefinite
/// for every triple, being the Gram matrix of the realified vectors.
pub fn gram_re<T: Scalar>(
    u: &[Complex<T>],
    v: &[Complex<T>],
    w: &[Complex<T>],
) -> Result<ComplexMatrix<T>> {
    let triple = [u, v, w];
    let mut out = ComplexMatrix::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            // Entry (i, j) carries x_i^* x_j.
            let z = inner(triple[j], triple[i])?;
            out[(i, j)] = Complex::new(z.re, T::zero());
        }
    }
    Ok(out)
}

/// 3x3 matrix of absolute values of the pairwise products; positive
/// semidefinite as the entrywise absolute value of a 3x3 Gram matrix.
pub fn abs_gram<T: Scalar>(
    u: &[Complex<T>],
    v: &[Complex<T>],
    w: &[Complex<T>],
) -> Result<ComplexMatrix<T>> {
    let triple = [u, v, w];
    let mut out = ComplexMatrix::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            let z = inner(triple[j], triple[i])?;
            out[(i, j)] = Complex::new(z.norm(), T::zero());
        }
    }
    Ok(out)
}

/// Verdict on the entrywise absolute value of a positive semidefinite 3x3
/// matrix. The absolute value of a PSD matrix is again PSD in dimension 3
/// (and not, in general, in dimension 4), so the verdict always holds for
/// valid input. Rejects input that is not itself PSD.
pub fn abs_psd_3x3<T: Scalar>(a: &ComplexMatrix<T>, tol: f64) -> Result<LoewnerVerdict<T>> {
    if a.rows() != 3 || a.cols() != 3 {
        return Err(Error::DimensionMismatch(format!(
            "expected a 3x3 matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let gate = is_psd(a, tol)?;
    if !gate.holds {
        return Err(Error::NotPsdInput(gate.min_eigenvalue.as_f64()));
    }
    is_psd(&entrywise_abs(a), tol)
}

/// Verdict on the sign-flipped Gram matrix of real vectors `u`, `w` and
/// their sum `v = u + w`:
///
/// ```text
/// [  u.u   u.v  -u.w ]
/// [  v.u   v.v   v.w ]
/// [ -w.u   w.v   w.w ]
/// ```
///
/// This matrix equals `S R S` with `S = diag(|u|, |v|, |w|)` and `R` the
/// cosine matrix of the interior angles of the triangle with sides `u`, `w`,
/// `v`; `det R = 4 cos(alpha) cos(beta) cos(gamma)`, which is negative
/// whenever the triangle is obtuse. The verdict therefore reports
/// `holds = false` for obtuse configurations; see the module tests for an
/// explicit witness.
pub fn signed_gram_check<T: Scalar>(u: &[T], w: &[T], tol: f64) -> Result<LoewnerVerdict<T>> {
    if u.len() != w.len() {
        return Err(Error::DimensionMismatch(format!(
            "vectors have lengths {} and {}",
            u.len(),
            w.len()
        )));
    }
    let v: Vec<T> = u.iter().zip(w).map(|(&a, &b)| a + b).collect();
    let dot = |x: &[T], y: &[T]| -> T {
        x.iter()
            .zip(y)
            .map(|(&a, &b)| a * b)
            .fold(T::zero(), |s, t| s + t)
    };
    let uu = dot(u, u);
    let uv = dot(u, &v);
    let uw = dot(u, w);
    let vv = dot(&v, &v);
    let vw = dot(&v, w);
    let ww = dot(w, w);
    let rows = [[uu, uv, -uw], [uv, vv, vw], [-uw, vw, ww]];
    let m = ComplexMatrix::from_fn(3, 3, |i, j| Complex::new(rows[i][j], T::zero()));
    is_psd(&m, tol)
}

/// Product-form margin refining Cauchy-Schwarz:
/// `(|u|^2|w|^2 - |<u,w>|^2)(|w|^2|v|^2 - |<w,v>|^2) - |<u,w><w,v> - <u,v><w,w>|^2`.
/// Nonnegative for every triple; degenerates to zero when `w` is parallel to
/// `u` or when `u = v` is orthogonal to `w`. The margin scales like the
/// fourth power of the norms.
pub fn dragomir_margin<T: Scalar>(
    u: &[Complex<T>],
    v: &[Complex<T>],
    w: &[Complex<T>],
) -> Result<T> {
    let nw = norm(w);
    if nw == T::zero() {
        return Err(Error::ZeroVector);
    }
    let nu = norm(u);
    let nv = norm(v);
    let uw = inner(u, w)?;
    let wv = inner(w, v)?;
    let uv = inner(u, v)?;
    let ww = Complex::new(nw * nw, T::zero());
    let left = (nu * nu * nw * nw - uw.norm_sqr()) * (nw * nw * nv * nv - wv.norm_sqr());
    let right = (uw * wv - uv * ww).norm_sqr();
    Ok(left - right)
}

/// Margins of the two determinant inequalities for unit triples: with
/// `a = <u,v>`, `b = <v,w>`, `c = <w,u>`,
///
/// * first:  `1 + 2|a||b||c| - (|a|^2 + |b|^2 + |c|^2)`,
/// * second: `1 + 2 Re(abc) - (|a|^2 + |b|^2 + |c|^2)`.
///
/// Both are nonnegative (determinants of the absolute and the plain Gram
/// matrix of the triple), and the second never exceeds the first.
pub fn unit_triple_inequalities<T: Scalar>(
    u: &[Complex<T>],
    v: &[Complex<T>],
    w: &[Complex<T>],
) -> Result<(T, T)> {
    for x in [u, v, w] {
        let defect = (norm(x) - T::one()).abs();
        if defect > T::real(UNIT_NORM_TOL) {
            return Err(Error::NotUnit(defect.as_f64()));
        }
    }
    let a = inner(u, v)?;
    let b = inner(v, w)?;
    let c = inner(w, u)?;
    let sq = a.norm_sqr() + b.norm_sqr() + c.norm_sqr();
    let two = T::real(2.0);
    let abs_margin = T::one() + two * a.norm() * b.norm() * c.norm() - sq;
    let re_margin = T::one() + two * (a * b * c).re - sq;
    Ok((abs_margin, re_margin))
}

/// The two standard angles between nonzero complex vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnglePair<T: Scalar> {
    /// `arccos(Re<u,v> / (|u||v|))`, in `[0, pi]`.
    pub phi: T,
    /// `arccos(|<u,v>| / (|u||v|))`, in `[0, pi/2]`; never exceeds `phi`.
    pub psi: T,
}

fn clamped_acos<T: Scalar>(x: T) -> Result<T> {
    let overshoot = (x.abs() - T::one()).max(T::zero());
    if overshoot > T::real(COSINE_OVERSHOOT_TOL) {
        return Err(Error::Invalid(format!(
            "cosine overshoots the unit interval by {}",
            overshoot.as_f64()
        )));
    }
    Ok(x.min(T::one()).max(-T::one()).acos())
}

/// Both angles between `u` and `v`. The second angle is also recomputed as
/// the first angle of the phase-aligned pair `(p u, v)` with
/// `p = conj(<u,v>)/|<u,v>|`, the analytic minimizer over unimodular
/// rescalings; the two routes must agree.
pub fn angles<T: Scalar>(u: &[Complex<T>], v: &[Complex<T>]) -> Result<AnglePair<T>> {
    let nu = norm(u);
    let nv = norm(v);
    if nu == T::zero() || nv == T::zero() {
        return Err(Error::ZeroVector);
    }
    let z = inner(u, v)?;
    let denom = nu * nv;
    let phi = clamped_acos(z.re / denom)?;
    let psi = clamped_acos(z.norm() / denom)?;

    // Recompute psi as the phase-aligned first angle.
    let p = if z == Complex::zero() {
        Complex::new(T::one(), T::zero())
    } else {
        z.conj().unscale(z.norm())
    };
    let pu: Vec<Complex<T>> = u.iter().map(|x| *x * p).collect();
    let zp = inner(&pu, v)?;
    let psi_aligned = clamped_acos(zp.re / (norm(&pu) * nv))?;
    if (psi - psi_aligned).abs() > T::real(1e-6) {
        return Err(Error::Invalid(format!(
            "phase-aligned angle {} disagrees with direct angle {}",
            psi_aligned.as_f64(),
            psi.as_f64()
        )));
    }
    Ok(AnglePair { phi, psi })
}

/// Named margins of the triangle-type angle inequalities for one triple.
/// Every margin is nonnegative up to roundoff:
///
/// * `phi_triangle`, `psi_triangle`: `angle(u,w) + angle(w,v) - angle(u,v)`;
/// * `phi_reverse`, `psi_reverse`: `angle(u,w) - |angle(u,v) - angle(v,w)|`;
/// * `phi_sum_upper`, `psi_sum_upper`: `2 pi` minus the cyclic angle sum;
/// * `sin_phi_triangle`, `sin_psi_triangle`: the triangle inequality for
///   `sqrt(1 - cos^2)` of the respective angle;
/// * `psi_le_phi`: `phi(u,v) - psi(u,v)`;
/// * `cos_psi_chain`: `cos psi(u,v) - cos(psi(u,w) + psi(w,v))`.
pub fn triangle_checks<T: Scalar>(
    u: &[Complex<T>],
    v: &[Complex<T>],
    w: &[Complex<T>],
) -> Result<BTreeMap<&'static str, T>> {
    let uv = angles(u, v)?;
    let uw = angles(u, w)?;
    let wv = angles(w, v)?;
    let two_pi = T::real(std::f64::consts::TAU);
    let sin = |x: T| x.sin();
    let mut out = BTreeMap::new();
    out.insert("phi_triangle", uw.phi + wv.phi - uv.phi);
    out.insert("psi_triangle", uw.psi + wv.psi - uv.psi);
    out.insert("phi_reverse", uw.phi - (uv.phi - wv.phi).abs());
    out.insert("psi_reverse", uw.psi - (uv.psi - wv.psi).abs());
    out.insert("phi_sum_upper", two_pi - (uv.phi + wv.phi + uw.phi));
    out.insert("psi_sum_upper", two_pi - (uv.psi + wv.psi + uw.psi));
    out.insert(
        "sin_phi_triangle",
        sin(uw.phi) + sin(wv.phi) - sin(uv.phi),
    );
    out.insert(
        "sin_psi_triangle",
        sin(uw.psi) + sin(wv.psi) - sin(uv.psi),
    );
    out.insert("psi_le_phi", uv.phi - uv.psi);
    out.insert("cos_psi_chain", uv.psi.cos() - (uw.psi + wv.psi).cos());
    Ok(out)
}

/// Outcome of one named check across the sampled triples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometryCheck {
    pub name: String,
    pub samples: usize,
    pub violations: usize,
    pub worst_margin: f64,
}

/// Aggregated outcomes of the randomized geometry suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometryReport {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub checks: Vec<GeometryCheck>,
}

impl GeometryReport {
    pub fn total_violations(&self) -> usize {
        self.checks.iter().map(|c| c.violations).sum()
    }

    pub fn check(&self, name: &str) -> Option<&GeometryCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct CheckAccumulator {
    name: &'static str,
    samples: usize,
    violations: usize,
    worst_margin: f64,
}

impl CheckAccumulator {
    fn new(name: &'static str) -> Self {
        CheckAccumulator {
            name,
            samples: 0,
            violations: 0,
            worst_margin: f64::INFINITY,
        }
    }

    fn record(&mut self, margin: f64, tol: f64) {
        self.samples += 1;
        if margin < self.worst_margin {
            self.worst_margin = margin;
        }
        if margin < -tol {
            self.violations += 1;
        }
    }

    fn finish(self) -> GeometryCheck {
        GeometryCheck {
            name: self.name.to_string(),
            samples: self.samples,
            violations: self.violations,
            worst_margin: if self.samples == 0 {
                0.0
            } else {
                self.worst_margin
            },
        }
    }
}

/// Relative size of the perturbation applied to the adversarial
/// near-collinear and near-orthogonal sample families.
pub const ADVERSARIAL_PERTURBATION: f64 = 1e-6;

fn perturb<T: Scalar>(x: &[Complex<T>], rng: &mut SampleRng) -> Vec<Complex<T>> {
    let scale = T::real(ADVERSARIAL_PERTURBATION) * (norm(x) + T::real(1e-30));
    x.iter()
        .map(|&z| z + rng.complex_normal::<T>().scale(scale))
        .collect()
}

fn orthogonalize<T: Scalar>(x: &[Complex<T>], against: &[Complex<T>]) -> Vec<Complex<T>> {
    let denom = inner(against, against).expect("same length");
    if denom.re == T::zero() {
        return x.to_vec();
    }
    let coeff = inner(x, against).expect("same length") / denom;
    x.iter()
        .zip(against)
        .map(|(&a, &b)| a - coeff * b)
        .collect()
}

/// Samples `samples` vector triples over dimensions 2 through 6 — generic
/// Gaussian triples plus near-collinear, near-orthogonal, and all-real
/// families — and accumulates the margins of every positivity and angle
/// check in this module. A margin below `-tol` (scale-adjusted per check)
/// counts as a violation. Deterministic for a fixed seed.
pub fn run_geometry_suite<T: Scalar>(
    samples: usize,
    seed: RngSeed,
    tol: f64,
) -> Result<GeometryReport> {
    let mut acc: Vec<CheckAccumulator> = [
        "gram_re_psd",
        "abs_gram_psd",
        "abs_psd_3x3",
        "signed_gram",
        "dragomir",
        "unit_abs_product",
        "unit_re_product",
        "phi_triangle",
        "psi_triangle",
        "phi_reverse",
        "psi_reverse",
        "phi_sum_upper",
        "psi_sum_upper",
        "sin_phi_triangle",
        "sin_psi_triangle",
        "psi_le_phi",
        "cos_psi_chain",
    ]
    .into_iter()
    .map(CheckAccumulator::new)
    .collect();
    let positions: BTreeMap<&'static str, usize> = acc
        .iter()
        .enumerate()
        .map(|(i, c)| (c.name, i))
        .collect();
    let idx = move |name: &str| -> usize { positions[name] };

    for k in 0..samples {
        let mut rng = SampleRng::derive(seed, "geometry-triple", k as u64);
        let dim = 2 + k % 5;
        let u: Vec<Complex<T>> = random_vector_with(dim, &mut rng);
        let (v, w): (Vec<Complex<T>>, Vec<Complex<T>>) = match k % 10 {
            // Near-collinear pair: v is a complex multiple of u, nudged.
            7 => {
                let factor = rng.complex_normal::<T>();
                let v0: Vec<Complex<T>> = u.iter().map(|&z| z * factor).collect();
                (perturb(&v0, &mut rng), random_vector_with(dim, &mut rng))
            }
            // Near-orthogonal pair: v is orthogonalized against u, nudged.
            8 => {
                let v0 = orthogonalize(&random_vector_with(dim, &mut rng), &u);
                (perturb(&v0, &mut rng), random_vector_with(dim, &mut rng))
            }
            // All-real triple.
            9 => {
                let real_vec = |rng: &mut SampleRng| -> Vec<Complex<T>> {
                    (0..dim)
                        .map(|_| Complex::new(T::real(rng.normal()), T::zero()))
                        .collect()
                };
                (real_vec(&mut rng), real_vec(&mut rng))
            }
            _ => (
                random_vector_with(dim, &mut rng),
                random_vector_with(dim, &mut rng),
            ),
        };
        let u = if k % 10 == 9 {
            u.iter()
                .map(|z| Complex::new(z.re, T::zero()))
                .collect::<Vec<_>>()
        } else {
            u
        };

        let scale = norm(&u).max(norm(&v)).max(norm(&w)).as_f64();

        // Positivity of the two derived 3x3 matrices; their entries scale
        // with the squared norms.
        let g = gram_re(&u, &v, &w)?;
        let verdict = is_psd(&g, tol)?;
        acc[idx("gram_re_psd")].record(
            verdict.min_eigenvalue.as_f64() / (1.0 + scale * scale),
            tol,
        );
        let g = abs_gram(&u, &v, &w)?;
        let verdict = is_psd(&g, tol)?;
        acc[idx("abs_gram_psd")].record(
            verdict.min_eigenvalue.as_f64() / (1.0 + scale * scale),
            tol,
        );

        // Entrywise absolute value of an independent random PSD 3x3.
        let psd = random_psd_with::<T>(3, &mut rng);
        let verdict = abs_psd_3x3(&psd, tol)?;
        acc[idx("abs_psd_3x3")].record(
            verdict.min_eigenvalue.as_f64() / (1.0 + psd.frobenius_norm().as_f64()),
            tol,
        );

        // Sign-flipped Gram construction on a real pair.
        let ur: Vec<T> = u.iter().map(|z| z.re).collect();
        let wr: Vec<T> = w.iter().map(|z| z.re).collect();
        let verdict = signed_gram_check(&ur, &wr, tol)?;
        let sg_scale: f64 = 1.0
            + ur.iter()
                .chain(&wr)
                .map(|x| x.as_f64() * x.as_f64())
                .sum::<f64>();
        acc[idx("signed_gram")].record(verdict.min_eigenvalue.as_f64() / sg_scale, tol);

        // Product margin; quartic in the norms.
        if norm(&w) > T::zero() {
            let margin = dragomir_margin(&u, &v, &w)?.as_f64();
            let quartic = (1.0 + scale).powi(4);
            acc[idx("dragomir")].record(margin / quartic, tol);
        }

        // Unit-triple margins on the normalized triple.
        let normalize = |x: &[Complex<T>]| -> Option<Vec<Complex<T>>> {
            let n = norm(x);
            if n == T::zero() {
                None
            } else {
                Some(x.iter().map(|z| z.unscale(n)).collect())
            }
        };
        if let (Some(un), Some(vn), Some(wn)) = (normalize(&u), normalize(&v), normalize(&w)) {
            let (abs_margin, re_margin) = unit_triple_inequalities(&un, &vn, &wn)?;
            acc[idx("unit_abs_product")].record(abs_margin.as_f64(), tol);
            acc[idx("unit_re_product")].record(re_margin.as_f64(), tol);

            // Angle margins on the same normalized triple.
            for (name, margin) in triangle_checks(&un, &vn, &wn)? {
                acc[idx(name)].record(margin.as_f64(), tol);
            }
        }
    }

    Ok(GeometryReport {
        samples,
        seed: seed.0,
        tolerance: tol,
        checks: acc.into_iter().map(CheckAccumulator::finish).collect(),
    })
}
