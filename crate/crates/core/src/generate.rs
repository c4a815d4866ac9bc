//! Seeded instance generators for property suites.
//!
//! Every generator draws from a caller-supplied RNG, so a fixed seed reproduces a whole
//! suite. Singular values of the invertible pieces stay in `[0.5, 2]` to keep the
//! conditioning mild.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matcore::{c, Matrix, PivotedQr};
use crate::moorepenrose::AlgebraContext;
use crate::norms::NormKind;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries with real and imaginary parts uniform in `[-1, 1]`.
pub fn complex_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

pub fn real_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| c(rng.gen_range(-1.0..1.0), 0.0))
}

pub fn unitary(rng: &mut impl Rng, n: usize) -> Matrix {
    PivotedQr::new(&complex_matrix(rng, n, n)).q
}

/// `U₁ · diag(s) · U₂` with `s ∈ [0.5, 2]`.
pub fn invertible(rng: &mut impl Rng, n: usize) -> Matrix {
    with_singular_values(rng, n, n)
}

/// `U₁ · diag(s₁, …, s_r, 0, …) · U₂` with `s ∈ [0.5, 2]`: rank exactly `r`.
pub fn with_singular_values(rng: &mut impl Rng, n: usize, r: usize) -> Matrix {
    let u1 = unitary(rng, n);
    let u2 = unitary(rng, n);
    let s: Vec<f64> = (0..n).map(|i| if i < r { rng.gen_range(0.5..2.0) } else { 0.0 }).collect();
    &(&u1 * &Matrix::real_diag(&s)) * &u2
}

fn core_block(rng: &mut impl Rng, n: usize, r: usize) -> Matrix {
    Matrix::block_diag(&[invertible(rng, r), Matrix::zeros(n - r, n - r)])
}

/// `U · (C ⊕ 0) · U*` with `U` unitary: EP under ℓ2.
pub fn l2_ep(rng: &mut impl Rng, n: usize, r: usize) -> Matrix {
    let u = unitary(rng, n);
    &(&u * &core_block(rng, n, r)) * &u.adjoint()
}

/// `V · (C ⊕ 0) · V⁻¹` with `V` invertible but not unitary. Generically not EP under ℓ2.
pub fn l2_similar(rng: &mut impl Rng, n: usize, r: usize) -> Matrix {
    let v = invertible(rng, n);
    let v_inv = v.inverse().expect("generated with singular values in [0.5, 2]");
    &(&v * &core_block(rng, n, r)) * &v_inv
}

/// Maps the coordinates `domain` onto the coordinates `range` through a random
/// invertible block, vanishing on the other coordinates. Null space and range are
/// coordinate subspaces, so the inverse exists under every norm; the matrix is EP iff
/// `domain == range` as sets.
pub fn coordinate_map(rng: &mut impl Rng, n: usize, domain: &[usize], range: &[usize]) -> Matrix {
    assert_eq!(domain.len(), range.len());
    let block = invertible(rng, domain.len());
    let mut a = Matrix::zeros(n, n);
    for (i, &ri) in range.iter().enumerate() {
        for (j, &dj) in domain.iter().enumerate() {
            a[(ri, dj)] = block[(i, j)];
        }
    }
    a
}

fn subset(rng: &mut impl Rng, n: usize, r: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    idx.truncate(r);
    idx.sort_unstable();
    idx
}

/// A matrix that is EP under `k`, of rank `r`.
pub fn ep_instance(rng: &mut impl Rng, k: NormKind, n: usize, r: usize) -> Matrix {
    match k {
        NormKind::L2 => l2_ep(rng, n, r),
        NormKind::L1 | NormKind::Linf => {
            let s = subset(rng, n, r);
            coordinate_map(rng, n, &s, &s)
        }
    }
}

/// A matrix with a Moore-Penrose inverse under `k` that is not EP, of rank `r` with
/// `0 < r < n`. Under ℓ2 the similarity is generic, so EP is unlikely but possible.
pub fn non_ep_instance(rng: &mut impl Rng, k: NormKind, n: usize, r: usize) -> Matrix {
    assert!(0 < r && r < n, "a non-EP instance needs 0 < rank < n");
    match k {
        NormKind::L2 => l2_similar(rng, n, r),
        NormKind::L1 | NormKind::Linf => {
            let domain = subset(rng, n, r);
            let mut range = subset(rng, n, r);
            while range == domain {
                range = subset(rng, n, r);
            }
            coordinate_map(rng, n, &domain, &range)
        }
    }
}

/// Half EP, half non-EP, ranks spread over `1..n` (and full rank for EP instances).
pub fn mixed_instance(rng: &mut impl Rng, k: NormKind, n: usize) -> Matrix {
    if rng.gen_bool(0.5) || n < 2 {
        let r = rng.gen_range(0..=n);
        ep_instance(rng, k, n, r)
    } else {
        let r = rng.gen_range(1..n);
        non_ep_instance(rng, k, n, r)
    }
}

/// A random isometry for `k`: unitary for ℓ2, signed complex-phase permutation for ℓ1/ℓ∞.
pub fn isometry(rng: &mut impl Rng, k: NormKind, n: usize) -> Matrix {
    match k {
        NormKind::L2 => unitary(rng, n),
        NormKind::L1 | NormKind::Linf => {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            let mut m = Matrix::zeros(n, n);
            for (i, &p) in perm.iter().enumerate() {
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                m[(i, p)] = c(theta.cos(), theta.sin());
            }
            m
        }
    }
}

/// Two EP matrices `S`, `T` with `(I - TT†)ST = 0` and `ST(I - S†S) = 0`.
///
/// Coordinates are split into blocks; on each block `S` and `T` are independently an
/// invertible block or zero, and the whole pair is conjugated by an isometry of `k`.
pub fn hypothesis_pair(rng: &mut impl Rng, k: NormKind, n: usize) -> (Matrix, Matrix) {
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let d = rng.gen_range(1..=left.min(2));
        sizes.push(d);
        left -= d;
    }
    let mut s_blocks = Vec::new();
    let mut t_blocks = Vec::new();
    for &d in &sizes {
        s_blocks.push(invertible_or_zero(rng, d));
        t_blocks.push(invertible_or_zero(rng, d));
    }
    let u = isometry(rng, k, n);
    let conj = |m: &Matrix| &(&u * m) * &u.adjoint();
    (conj(&Matrix::block_diag(&s_blocks)), conj(&Matrix::block_diag(&t_blocks)))
}

fn invertible_or_zero(rng: &mut impl Rng, d: usize) -> Matrix {
    if rng.gen_bool(0.7) {
        invertible(rng, d)
    } else {
        Matrix::zeros(d, d)
    }
}

/// Block sizes summing to at most `max_dim`, with at least `min_blocks` blocks.
pub fn block_context(rng: &mut impl Rng, k: NormKind, min_blocks: usize, max_dim: usize) -> AlgebraContext {
    assert!(min_blocks >= 1 && max_dim >= min_blocks);
    let count = rng.gen_range(min_blocks..=min_blocks.max(max_dim.min(3)));
    let mut sizes = vec![1; count];
    let mut spare = max_dim - count;
    for s in sizes.iter_mut() {
        let extra = rng.gen_range(0..=spare.min(2));
        *s += extra;
        spare -= extra;
    }
    AlgebraContext::new(sizes, k).expect("sizes are positive")
}

/// An element of `ctx` with a Moore-Penrose inverse: each block independently from
/// [`mixed_instance`].
pub fn algebra_element(rng: &mut impl Rng, ctx: &AlgebraContext) -> Matrix {
    let blocks: Vec<Matrix> = ctx.blocks().iter().map(|&d| mixed_instance(rng, ctx.norm(), d)).collect();
    Matrix::block_diag(&blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{rank, ToleranceProfile};
    use crate::moorepenrose::mp_inverse;

    #[test]
    fn unitary_is_unitary() {
        let mut r = rng(1);
        let u = unitary(&mut r, 4);
        assert!((&u * &u.adjoint()).max_abs_diff(&Matrix::identity(4)) < 1e-13);
    }

    #[test]
    fn prescribed_rank() {
        let mut r = rng(2);
        for k in 0..=4 {
            assert_eq!(rank(&with_singular_values(&mut r, 4, k), &ToleranceProfile::default()), k);
        }
    }

    #[test]
    fn seeded_generators_repeat() {
        assert_eq!(mixed_instance(&mut rng(9), NormKind::L1, 4), mixed_instance(&mut rng(9), NormKind::L1, 4));
    }

    #[test]
    fn coordinate_instances_have_inverses() {
        let mut r = rng(3);
        let tol = ToleranceProfile::default();
        for k in [NormKind::L1, NormKind::Linf] {
            for _ in 0..20 {
                assert!(mp_inverse(&mixed_instance(&mut r, k, 4), k, &tol).unwrap().exists());
            }
        }
    }

    #[test]
    fn block_contexts_fit() {
        let mut r = rng(4);
        for _ in 0..50 {
            let ctx = block_context(&mut r, NormKind::L2, 2, 5);
            assert!(ctx.blocks().len() >= 2 && ctx.dim() <= 5);
        }
    }
}
