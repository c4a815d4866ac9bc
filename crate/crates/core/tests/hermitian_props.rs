use banach_mp::generate::{complex_matrix, rng};
use banach_mp::hermitian::{exp_sweep_defect, hermitian_idempotent_with_range, is_hermitian, is_hermitian_idempotent};
use banach_mp::matcore::{c, Matrix, SubspaceBasis, ToleranceProfile};
use banach_mp::norms::NormKind;
use proptest::prelude::*;
use rand::Rng;

fn tol() -> ToleranceProfile {
    ToleranceProfile::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn real_diagonal_is_hermitian_for_l1_and_linf(d in prop::collection::vec(-10.0f64..10.0, 1..6)) {
        let m = Matrix::real_diag(&d);
        for k in [NormKind::L1, NormKind::Linf] {
            prop_assert!(is_hermitian(&m, k, &tol()).unwrap().is_hermitian);
        }
    }

    #[test]
    fn off_diagonal_or_complex_diagonal_breaks_it(
        d in prop::collection::vec(-10.0f64..10.0, 2..6),
        pos in any::<prop::sample::Index>(),
        mag in 1e-3f64..5.0,
        phase in 0.0f64..std::f64::consts::TAU,
        on_diagonal in any::<bool>(),
    ) {
        let n = d.len();
        let mut m = Matrix::real_diag(&d);
        if on_diagonal {
            let i = pos.index(n);
            m[(i, i)] += c(0.0, mag);
        } else {
            let flat = pos.index(n * (n - 1));
            let (i, rest) = (flat / (n - 1), flat % (n - 1));
            let j = if rest >= i { rest + 1 } else { rest };
            m[(i, j)] = c(mag * phase.cos(), mag * phase.sin());
        }
        for k in [NormKind::L1, NormKind::Linf] {
            prop_assert!(!is_hermitian(&m, k, &tol()).unwrap().is_hermitian);
        }
    }

    #[test]
    fn l2_hermitian_means_self_adjoint(seed in any::<u64>(), n in 1usize..=4, symmetrize in any::<bool>()) {
        let g = complex_matrix(&mut rng(seed), n, n);
        let m = if symmetrize { (&g + &g.adjoint()).scale_real(0.5) } else { g };
        let verdict = is_hermitian(&m, NormKind::L2, &tol()).unwrap().is_hermitian;
        prop_assert_eq!(verdict, tol().close(&m, &m.adjoint()));
    }

    #[test]
    fn sweep_confirms_verdict(seed in any::<u64>(), n in 1usize..=4, k in prop::sample::select(NormKind::ALL.to_vec())) {
        let g = complex_matrix(&mut rng(seed), n, n);
        let m = match k {
            NormKind::L2 => (&g + &g.adjoint()).scale_real(0.5),
            _ => Matrix::from_fn(n, n, |i, j| if i == j { c(g[(i, i)].re, 0.0) } else { c(0.0, 0.0) }),
        };
        prop_assert!(is_hermitian(&m, k, &tol()).unwrap().is_hermitian);
        prop_assert!(exp_sweep_defect(&m, k, 201, 10.0).unwrap() <= 10.0 * tol().herm_tol);
    }

    #[test]
    fn hermitian_idempotent_is_unique(seed in any::<u64>(), n in 2usize..=4, oblique in any::<bool>(), k in prop::sample::select(NormKind::ALL.to_vec())) {
        let mut g = rng(seed);
        let dim = g.gen_range(0..=n);
        let range = match k {
            NormKind::L2 => SubspaceBasis::column_span(&complex_matrix(&mut g, n, dim), &tol()),
            _ => SubspaceBasis::coordinate(n, &(0..dim).collect::<Vec<_>>()),
        };
        let p = hermitian_idempotent_with_range(&range, k, &tol()).unwrap();
        // another idempotent with the same range: P + P W (I - P)
        let w = if oblique { complex_matrix(&mut g, n, n) } else { Matrix::zeros(n, n) };
        let q = &p + &(&(&p * &w) * &(&Matrix::identity(n) - &p));
        let q_range = SubspaceBasis::column_span(&q, &tol());
        prop_assert!(q_range.equals(&range, &tol()).unwrap());
        if is_hermitian_idempotent(&q, k, &tol()).unwrap() {
            prop_assert!(p.max_abs_diff(&q) <= 1e-9);
        }
    }
}
