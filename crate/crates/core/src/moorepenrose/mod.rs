//! Moore-Penrose inverses relative to a Banach norm.
//!
//! `x` is the Moore-Penrose inverse of `a` when `a = axa`, `x = xax` and both `ax` and
//! `xa` are hermitian for the active norm. At most one such `x` exists. It exists exactly
//! when the null space and the range of `a` are, respectively, the null space and the
//! range of hermitian idempotents; [`mp_inverse`] builds it from those idempotents.

mod algebra;
mod oracle;

pub use algebra::{
    direct_sum_mp, lift, lift_left, lift_right, quotient_mp, verify_mp_lifted, AlgebraContext, LiftedMpCheck, Side,
};
pub use oracle::{mp_l2, mp_l2_with_tol, rank_factorization};

use serde::{Deserialize, Serialize};

use crate::error::{Error, MpFailure, Result};
use crate::hermitian::{hermitian_idempotent_with_nullspace, hermitian_idempotent_with_range, passes_log_norm_test};
use crate::matcore::{rank_nullspace_range, Matrix, SubspaceBasis, ToleranceProfile};
use crate::norms::NormKind;

/// The inverse together with the two hermitian idempotents it induces:
/// `witness_p = a†a` (null space of `a`) and `witness_q = aa†` (range of `a`).
#[derive(Debug, Clone, PartialEq)]
pub struct MpWitness {
    pub inverse: Matrix,
    pub witness_p: Matrix,
    pub witness_q: Matrix,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MpResult {
    Exists(MpWitness),
    Missing(MpFailure),
}

impl MpResult {
    pub fn exists(&self) -> bool {
        matches!(self, MpResult::Exists(_))
    }

    pub fn inverse(&self) -> Option<&Matrix> {
        match self {
            MpResult::Exists(w) => Some(&w.inverse),
            MpResult::Missing(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&MpWitness> {
        match self {
            MpResult::Exists(w) => Some(w),
            MpResult::Missing(_) => None,
        }
    }

    pub fn failure(&self) -> Option<MpFailure> {
        match self {
            MpResult::Exists(_) => None,
            MpResult::Missing(f) => Some(*f),
        }
    }

    pub fn into_inverse(self) -> Result<Matrix> {
        match self {
            MpResult::Exists(w) => Ok(w.inverse),
            MpResult::Missing(f) => Err(Error::MpMissing(f)),
        }
    }
}

/// Residuals `max|axa - a|` and `max|xax - x|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PenroseResiduals {
    pub axa_minus_a: f64,
    pub xax_minus_x: f64,
}

pub fn penrose_residuals(a: &Matrix, x: &Matrix) -> Result<PenroseResiduals> {
    check_pair(a, x)?;
    let ax = a * x;
    Ok(PenroseResiduals {
        axa_minus_a: (&ax * a).max_abs_diff(a),
        xax_minus_x: (&(x * a) * x).max_abs_diff(x),
    })
}

fn check_pair(a: &Matrix, x: &Matrix) -> Result<()> {
    if x.shape() != (a.cols(), a.rows()) {
        return Err(Error::ShapeMismatch { left: a.shape(), right: x.shape() });
    }
    Ok(())
}

/// Checks `a = axa`, `x = xax` and that `ax`, `xa` are hermitian for `k`.
pub fn verify_mp(a: &Matrix, x: &Matrix, k: NormKind, tol: &ToleranceProfile) -> Result<bool> {
    check_pair(a, x)?;
    let ax = a * x;
    let xa = x * a;
    Ok(tol.close(&(&ax * a), a)
        && tol.close(&(&xa * x), x)
        && passes_log_norm_test(&ax, k, tol)?
        && passes_log_norm_test(&xa, k, tol)?)
}

/// Given a generalized inverse `b` of `a` (`a = aba`), returns `c = bab`, which also
/// satisfies `c = cac`.
pub fn normalized_from_generalized(a: &Matrix, b: &Matrix, tol: &ToleranceProfile) -> Result<Matrix> {
    check_pair(a, b)?;
    let aba = &(a * b) * a;
    if !tol.close(&aba, a) {
        return Err(Error::NotGeneralizedInverse(aba.max_abs_diff(a)));
    }
    Ok(&(b * a) * b)
}

/// Builds the Moore-Penrose inverse of a square `a` for norm `k`, or reports which
/// hermitian idempotent is missing.
///
/// With `P` the hermitian idempotent whose null space is `N(a)` and `Q` the one whose
/// range is `R(a)`, the inverse vanishes on `N(Q)` and maps `R(a)` back onto `R(P)`
/// through the inverse of `a` restricted to `R(P) → R(a)`.
pub fn mp_inverse(a: &Matrix, k: NormKind, tol: &ToleranceProfile) -> Result<MpResult> {
    let n = a.ensure_square()?;
    let rnr = rank_nullspace_range(a, tol);

    let p = match hermitian_idempotent_with_nullspace(&rnr.nullspace, k, tol) {
        Ok(p) => p,
        Err(Error::NotRepresentable(_)) => return Ok(MpResult::Missing(MpFailure::NullspaceNotRepresentable)),
        Err(e) => return Err(e),
    };
    let q = match hermitian_idempotent_with_range(&rnr.range, k, tol) {
        Ok(q) => q,
        Err(Error::NotRepresentable(_)) => return Ok(MpResult::Missing(MpFailure::RangeNotRepresentable)),
        Err(e) => return Err(e),
    };

    let range_p = SubspaceBasis::column_span(&p, tol);
    if range_p.dim() != rnr.rank {
        return Err(Error::ToleranceBreakdown(format!(
            "rank(P) = {} but rank(a) = {}",
            range_p.dim(),
            rnr.rank
        )));
    }
    let bp = range_p.basis();
    let bt = rnr.range.basis();
    // a restricted to R(P) -> R(a), in the two orthonormal bases
    let restricted = &(&bt.adjoint() * a) * bp;
    let restricted_inv = restricted
        .inverse()
        .map_err(|_| Error::ToleranceBreakdown("a restricted to R(P) is not invertible".into()))?;
    let inverse = &(&(bp * &restricted_inv) * &bt.adjoint()) * &q;
    debug_assert_eq!(inverse.shape(), (n, n));

    let witness_p = &inverse * a;
    let witness_q = a * &inverse;
    if !verify_mp(a, &inverse, k, tol)? || !tol.close(&witness_p, &p) || !tol.close(&witness_q, &q) {
        let res = penrose_residuals(a, &inverse)?;
        return Err(Error::ToleranceBreakdown(format!(
            "constructed inverse fails verification (|axa-a| = {:e}, |xax-x| = {:e})",
            res.axa_minus_a, res.xax_minus_x
        )));
    }
    Ok(MpResult::Exists(MpWitness { inverse, witness_p, witness_q }))
}

/// Moore-Penrose inverse of the Banach adjoint `tᵀ` on the dual space.
///
/// Cross-checks against `mp_inverse(t, k)`: existence must agree, and when both exist
/// the inverse of the transpose must be the transpose of the inverse.
pub fn adjoint_mp(t: &Matrix, k: NormKind, tol: &ToleranceProfile) -> Result<MpResult> {
    let primal = mp_inverse(t, k, tol)?;
    let dual = mp_inverse(&t.transpose(), k.dual(), tol)?;
    match (&primal, &dual) {
        (MpResult::Exists(p), MpResult::Exists(d)) => {
            if !tol.close(&d.inverse, &p.inverse.transpose()) {
                return Err(Error::ToleranceBreakdown(format!(
                    "(tᵀ)† differs from (t†)ᵀ by {:e}",
                    d.inverse.max_abs_diff(&p.inverse.transpose())
                )));
            }
        }
        (MpResult::Missing(_), MpResult::Missing(_)) => {}
        _ => {
            return Err(Error::ToleranceBreakdown(format!(
                "existence differs between t under {k} ({}) and tᵀ under {} ({})",
                primal.exists(),
                k.dual(),
                dual.exists()
            )))
        }
    }
    Ok(dual)
}

/// Transports the inverse of `u` through `f`: returns `f⁻¹ u† f`, checked to be the
/// Moore-Penrose inverse of `f⁻¹ u f`. `f` must be an isometry for `k`.
pub fn conjugate_transport(u: &Matrix, f: &Matrix, k: NormKind, tol: &ToleranceProfile) -> Result<Matrix> {
    u.ensure_square()?;
    if f.shape() != u.shape() {
        return Err(Error::ShapeMismatch { left: u.shape(), right: f.shape() });
    }
    let f_inv = f.inverse()?;
    let u_mp = mp_inverse(u, k, tol)?.into_inverse()?;
    let conj = &(&f_inv * u) * f;
    let transported = &(&f_inv * &u_mp) * f;
    if !verify_mp(&conj, &transported, k, tol)? {
        return Err(Error::NonIsometric(k));
    }
    Ok(transported)
}

fn complement(n: usize, coords: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut inside = coords.to_vec();
    inside.sort_unstable();
    inside.dedup();
    if let Some(&bad) = inside.iter().find(|&&i| i >= n) {
        return Err(Error::BadBlockIndex(bad));
    }
    let outside = (0..n).filter(|i| inside.binary_search(i).is_err()).collect();
    Ok((inside, outside))
}

fn check_invariant(t: &Matrix, t_mp: &Matrix, inside: &[usize], outside: &[usize], tol: &ToleranceProfile) -> Result<()> {
    let leak_t = t.submatrix(outside, inside);
    let leak_mp = t_mp.submatrix(outside, inside);
    if !tol.negligible(&leak_t, t.max_abs()) || !tol.negligible(&leak_mp, t_mp.max_abs()) {
        return Err(Error::NotInvariant);
    }
    Ok(())
}

/// Restriction of `t` and `t†` to the coordinate subspace spanned by `coords`, which
/// must be invariant under both. The restricted pair is verified to be an operator and
/// its Moore-Penrose inverse on the subspace.
pub fn restrict_to_invariant(
    t: &Matrix,
    t_mp: &Matrix,
    coords: &[usize],
    k: NormKind,
    tol: &ToleranceProfile,
) -> Result<(Matrix, Matrix)> {
    let n = t.ensure_square()?;
    let (inside, outside) = complement(n, coords)?;
    check_invariant(t, t_mp, &inside, &outside, tol)?;
    let pair = (t.submatrix(&inside, &inside), t_mp.submatrix(&inside, &inside));
    if !verify_mp(&pair.0, &pair.1, k, tol)? {
        return Err(Error::ToleranceBreakdown("restricted pair fails verification".into()));
    }
    Ok(pair)
}

/// Operators induced by `t` and `t†` on the quotient by the invariant coordinate
/// subspace spanned by `coords`. For ℓ1, ℓ2 and ℓ∞ the quotient norm of a class is the
/// same norm of its remaining coordinates.
pub fn quotient_by_invariant(
    t: &Matrix,
    t_mp: &Matrix,
    coords: &[usize],
    k: NormKind,
    tol: &ToleranceProfile,
) -> Result<(Matrix, Matrix)> {
    let n = t.ensure_square()?;
    let (inside, outside) = complement(n, coords)?;
    check_invariant(t, t_mp, &inside, &outside, tol)?;
    let pair = (t.submatrix(&outside, &outside), t_mp.submatrix(&outside, &outside));
    if !verify_mp(&pair.0, &pair.1, k, tol)? {
        return Err(Error::ToleranceBreakdown("quotient pair fails verification".into()));
    }
    Ok(pair)
}
