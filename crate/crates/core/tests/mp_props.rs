use banach_mp::generate::{self, complex_matrix, rng, with_singular_values};
use banach_mp::matcore::{rank_nullspace_range, Matrix, ToleranceProfile};
use banach_mp::moorepenrose::{mp_inverse, mp_l2, normalized_from_generalized, verify_mp, verify_mp_lifted, AlgebraContext, Side};
use banach_mp::norms::NormKind;
use proptest::prelude::*;
use rand::Rng;

fn tol() -> ToleranceProfile {
    ToleranceProfile::default()
}

fn norm() -> impl Strategy<Value = NormKind> {
    prop::sample::select(NormKind::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn normalized_generalized_inverses_that_pass_are_the_inverse(seed in any::<u64>(), n in 2usize..=4, k in norm()) {
        let mut g = rng(seed);
        let a = generate::mixed_instance(&mut g, k, n);
        let x = mp_inverse(&a, k, &tol()).unwrap().into_inverse().unwrap();
        // every generalized inverse has the form x + (I - xa)W + V(I - ax)
        let id = Matrix::identity(n);
        let w = complex_matrix(&mut g, n, n);
        let v = complex_matrix(&mut g, n, n);
        let scale = if g.gen_bool(0.3) { 0.0 } else { 1.0 };
        let b = &(&x + &(&(&id - &(&x * &a)) * &w).scale_real(scale)) + &(&v * &(&id - &(&a * &x))).scale_real(scale);
        let y = normalized_from_generalized(&a, &b, &tol()).unwrap();
        if verify_mp(&a, &y, k, &tol()).unwrap() {
            prop_assert!(x.max_abs_diff(&y) <= 1e-8);
        }
    }

    #[test]
    fn involution(seed in any::<u64>(), n in 1usize..=4, k in norm()) {
        let a = generate::mixed_instance(&mut rng(seed), k, n);
        let x = mp_inverse(&a, k, &tol()).unwrap().into_inverse().unwrap();
        let back = mp_inverse(&x, k, &tol()).unwrap().into_inverse().unwrap();
        prop_assert!(back.max_abs_diff(&a) <= 1e-9);
    }

    #[test]
    fn euclidean_agrees_with_oracle(seed in any::<u64>(), n in 2usize..=5, r in 0usize..5) {
        let a = with_singular_values(&mut rng(seed), n, r.min(n - 1));
        let x = mp_inverse(&a, NormKind::L2, &tol()).unwrap().into_inverse().unwrap();
        prop_assert!(x.max_abs_diff(&mp_l2(&a)) <= 1e-9);
    }

    #[test]
    fn lifted_pair_is_an_inverse(seed in any::<u64>(), n in 1usize..=3, k in norm()) {
        let mut g = rng(seed);
        let ctx = AlgebraContext::single(n, k).unwrap();
        let a = generate::algebra_element(&mut g, &ctx);
        let x = ctx.mp_inverse(&a, &tol()).unwrap().into_inverse().unwrap();
        for side in [Side::Left, Side::Right] {
            let check = verify_mp_lifted(&ctx, side, &ctx.lift(&a, side, &tol()).unwrap(), &ctx.lift(&x, side, &tol()).unwrap(), &tol()).unwrap();
            prop_assert!(check.holds(&tol()), "{:?}", check);
        }
    }

    #[test]
    fn l1_existence_law(seed in any::<u64>(), n in 2usize..=4, scramble in any::<bool>(), k in prop::sample::select(vec![NormKind::L1, NormKind::Linf])) {
        let mut g = rng(seed);
        let base = generate::mixed_instance(&mut g, k, n);
        // conjugating by a generic invertible matrix usually destroys coordinate alignment
        let a = if scramble {
            let v = generate::invertible(&mut g, n);
            &(&v * &base) * &v.inverse().unwrap()
        } else {
            base
        };
        let rnr = rank_nullspace_range(&a, &tol());
        let coordinate = |s: &banach_mp::matcore::SubspaceBasis| s.row_support(tol().zero_abs_tol).len() == s.dim();
        let expected = coordinate(&rnr.nullspace) && coordinate(&rnr.range);
        let r = mp_inverse(&a, k, &tol()).unwrap();
        prop_assert_eq!(r.exists(), expected);
        if let Some(x) = r.inverse() {
            prop_assert!(verify_mp(&a, x, k, &tol()).unwrap());
        }
    }
}
