use banach_mp::generate::{complex_matrix, rng, with_singular_values};
use banach_mp::matcore::{mat_exp, rank_nullspace_range, subspace_intersect, subspace_sum, Matrix, SubspaceBasis, ToleranceProfile};
use banach_mp::norms::{op_norm, NormKind};
use proptest::prelude::*;

fn tol() -> ToleranceProfile {
    ToleranceProfile::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn nullspace_is_annihilated(seed in any::<u64>(), n in 1usize..=5, r in 0usize..=5) {
        let m = with_singular_values(&mut rng(seed), n, r.min(n));
        let rnr = rank_nullspace_range(&m, &tol());
        prop_assert_eq!(rnr.rank, r.min(n));
        let image = &m * rnr.nullspace.basis();
        prop_assert!(image.max_abs() <= tol().zero_abs_tol * op_norm(&m, NormKind::L2).max(1.0));
    }

    #[test]
    fn exp_inverse(seed in any::<u64>(), n in 1usize..=4, scale in 0.0f64..5.0) {
        let a = complex_matrix(&mut rng(seed), n, n);
        let a = a.scale_real(scale / op_norm(&a, NormKind::L2).max(1e-300));
        let prod = &mat_exp(&a).unwrap() * &mat_exp(&-&a).unwrap();
        prop_assert!(prod.max_abs_diff(&Matrix::identity(n)) <= 1e-10);
    }

    #[test]
    fn exp_group_law(seed in any::<u64>(), n in 1usize..=4, s in -2.0f64..2.0, t in -2.0f64..2.0) {
        let a = complex_matrix(&mut rng(seed), n, n);
        let lhs = mat_exp(&a.scale_real(s + t)).unwrap();
        let rhs = &mat_exp(&a.scale_real(s)).unwrap() * &mat_exp(&a.scale_real(t)).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10 * lhs.max_abs().max(1.0));
    }

    #[test]
    fn dimension_formula(seed in any::<u64>(), n in 1usize..=5, du in 0usize..=5, dv in 0usize..=5, shared in 0usize..=3) {
        let mut g = rng(seed);
        // planted overlap so intersections are not always trivial
        let common = complex_matrix(&mut g, n, shared.min(n));
        let u_extra = complex_matrix(&mut g, n, du.min(n));
        let v_extra = complex_matrix(&mut g, n, dv.min(n));
        let u = SubspaceBasis::column_span(&common.hstack(&u_extra).unwrap(), &tol());
        let v = SubspaceBasis::column_span(&common.hstack(&v_extra).unwrap(), &tol());
        let sum = subspace_sum(&u, &v, &tol()).unwrap();
        let cap = subspace_intersect(&u, &v, &tol()).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), u.dim() + v.dim());
    }
}
