//! Property-based checks across module boundaries: eigensolver contracts,
//! Loewner-order behavior, partial-trace adjointness, reshuffle unitarity,
//! and wire-format round trips, driven by proptest over seeds and sizes.

use immanant_lab::block::{partial_map_first, partial_map_second, BlockMatrix};
use immanant_lab::eigen::{eigenvalues, eigh, is_psd, min_eigenvalue};
use immanant_lab::functionals::Functional;
use immanant_lab::harness::{check_margin, functional_sweep, MarginCheck};
use immanant_lab::io::{matrix_to_json, parse_matrix};
use immanant_lab::multilinear::kronecker;
use immanant_lab::rng::{
    random_hermitian, random_matrix, random_psd, random_unitary, RngSeed,
};
use immanant_lab::{Complex, Matrix64};
use proptest::prelude::*;

fn conjugate(u: &Matrix64, a: &Matrix64) -> Matrix64 {
    &(u * a) * &u.conjugate_transpose()
}

fn frobenius_inner(x: &Matrix64, y: &Matrix64) -> Complex<f64> {
    // <X, Y> = tr(Y^* X).
    (&y.conjugate_transpose() * x).trace().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn eigensolver_reconstructs_and_orders(seed in 0u64..1_000_000, dim in 2usize..=5) {
        let a = random_hermitian::<f64>(dim, RngSeed(seed));
        let e = eigh(&a).unwrap();
        let d = Matrix64::diagonal(
            &e.values.iter().map(|&l| Complex::new(l, 0.0)).collect::<Vec<_>>(),
        );
        let recon = &(&e.vectors * &d) * &e.vectors.conjugate_transpose();
        let scale = 1.0 + a.frobenius_norm();
        prop_assert!((&recon - &a).frobenius_norm() < 1e-9 * scale);
        let gram = &e.vectors.conjugate_transpose() * &e.vectors;
        prop_assert!((&gram - &Matrix64::identity(dim)).frobenius_norm() < 1e-10);
        for w in e.values.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn spectrum_is_invariant_under_unitary_conjugation(seed in 0u64..1_000_000, dim in 2usize..=4) {
        let a = random_hermitian::<f64>(dim, RngSeed(seed));
        let u = random_unitary::<f64>(dim, RngSeed(seed ^ 0x5eed));
        let vals = eigenvalues(&a).unwrap();
        let rotated = eigenvalues(&conjugate(&u, &a)).unwrap();
        let scale = 1.0 + a.frobenius_norm();
        for (x, y) in vals.iter().zip(&rotated) {
            prop_assert!((x - y).abs() < 1e-9 * scale);
        }
    }

    #[test]
    fn loewner_order_is_reflexive_and_respects_sums(seed in 0u64..1_000_000, dim in 2usize..=4) {
        let a = random_psd::<f64>(dim, RngSeed(seed));
        let b = random_psd::<f64>(dim, RngSeed(seed.wrapping_add(1)));
        prop_assert!(is_psd(&(&(&a + &b)), 1e-9).unwrap().holds);
        let residual = min_eigenvalue(&(&a - &a)).unwrap();
        prop_assert_eq!(residual, 0.0);
    }

    #[test]
    fn partial_trace_is_adjoint_to_identity_tensoring(seed in 0u64..1_000_000, m in 1usize..=3, n in 1usize..=3) {
        let flat = random_matrix::<f64>(m * n, m * n, RngSeed(seed));
        let block = BlockMatrix::from_flat(&flat, m, n).unwrap();
        let x = random_matrix::<f64>(n, n, RngSeed(seed ^ 0xabcd));
        // Trace over the outer index: <I (x) X, A> = <X, tr_1(A)>.
        let lifted = kronecker(&Matrix64::identity(m), &x);
        let lhs = frobenius_inner(&flat, &lifted);
        let tr1 = block.partial_trace_first();
        let rhs = frobenius_inner(&tr1, &x);
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()));

        // Trace over the inner index: <Y (x) I, A> = <Y, tr_2(A)>.
        let y = random_matrix::<f64>(m, m, RngSeed(seed ^ 0x1234));
        let lifted = kronecker(&y, &Matrix64::identity(n));
        let lhs = frobenius_inner(&flat, &lifted);
        let tr2 = block.partial_trace_second();
        let rhs = frobenius_inner(&tr2, &y);
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()));
    }

    #[test]
    fn reshuffle_is_an_exact_involution_preserving_spectra(seed in 0u64..1_000_000, m in 1usize..=3, n in 1usize..=3) {
        let flat = random_psd::<f64>(m * n, RngSeed(seed));
        let block = BlockMatrix::from_flat(&flat, m, n).unwrap();
        let twice = block.reshuffle().reshuffle();
        prop_assert_eq!(twice.flatten(), flat.clone());
        let vals = eigenvalues(&flat).unwrap();
        let shuffled = eigenvalues(&block.reshuffle().flatten()).unwrap();
        let scale = 1.0 + flat.frobenius_norm();
        for (x, y) in vals.iter().zip(&shuffled) {
            prop_assert!((x - y).abs() < 1e-8 * scale);
        }
    }

    #[test]
    fn partial_maps_of_psd_inputs_are_psd(seed in 0u64..200_000, m in 2usize..=3, n in 2usize..=3) {
        let flat = random_psd::<f64>(m * n, RngSeed(seed));
        let block = BlockMatrix::from_flat(&flat, m, n).unwrap();
        let det = Functional::<f64>::Determinant;
        let g1 = partial_map_first(&block, |b| det.evaluate(b)).unwrap();
        let g2 = partial_map_second(&block, |b| det.evaluate(b)).unwrap();
        prop_assert!(is_psd(&g1, 1e-8).unwrap().holds);
        prop_assert!(is_psd(&g2, 1e-8).unwrap().holds);
    }

    #[test]
    fn scalar_superadditivity_margins_are_nonnegative(seed in 0u64..200_000) {
        let a = random_psd::<f64>(3, RngSeed(seed));
        let b = random_psd::<f64>(3, RngSeed(seed.wrapping_add(7)));
        let scale = 1.0 + a.frobenius_norm().max(b.frobenius_norm());
        for f in functional_sweep::<f64>(3).unwrap() {
            let margin =
                check_margin(&MarginCheck::ScalarTwo(f.clone()), &[a.clone(), b.clone()], 1, 3)
                    .unwrap();
            prop_assert!(margin >= -1e-8 * scale, "{}: {margin}", f.name());
        }
    }

    #[test]
    fn matrix_wire_format_round_trips_exactly(seed in 0u64..1_000_000, rows in 1usize..=4, cols in 1usize..=4) {
        let a = random_matrix::<f64>(rows, cols, RngSeed(seed));
        let text = matrix_to_json(&a).to_string();
        let b: Matrix64 = parse_matrix(&text).unwrap();
        prop_assert_eq!(a, b);
    }
}
