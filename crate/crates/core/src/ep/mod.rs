//! EP operators: those whose Moore-Penrose inverse commutes with them.
//!
//! For an operator `T` with inverse `T†` the following are decided independently and must
//! agree: `TT† = T†T`, `N(T) = N(T†)`, `R(T) = R(T†)`, and the existence of an invertible
//! `P` with `T† = PT = TP`. The last is settled constructively: when `ℂⁿ = N(T) ⊕ R(T)`
//! and `T` restricted to `R(T)` is invertible, `P` is the identity on `N(T)` and the
//! inverse square of that restriction on `R(T)`.

mod battery;
mod product;

pub use battery::{algebra_ep_battery, BatteryReport, Statement};
pub use product::{lifted_product_check, product_ep_check, product_flags, ProductReport};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::is_hermitian_idempotent;
use crate::matcore::{rank, rank_nullspace_range, subspace_equal, Matrix, SubspaceBasis, ToleranceProfile};
use crate::moorepenrose::{mp_inverse, MpResult};
use crate::norms::{op_norm, NormKind};

/// The four equivalent characterizations, each computed on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpFlags {
    /// `TT† = T†T`
    pub ep: bool,
    /// `N(T) = N(T†)`
    pub nullspace_eq: bool,
    /// `R(T) = R(T†)`
    pub range_eq: bool,
    /// an invertible `P` with `T† = PT = TP` was constructed and verified
    pub witness_found: bool,
}

impl EpFlags {
    pub fn agree(&self) -> bool {
        self.ep == self.nullspace_eq && self.ep == self.range_eq && self.ep == self.witness_found
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpReport {
    pub is_ep: bool,
    /// `‖TT† - T†T‖` in the operator norm.
    pub commutator_norm: f64,
    pub flags: EpFlags,
    pub mp_inverse: Matrix,
    /// Invertible, `T† = PT = TP`. Present iff EP.
    pub witness_p: Option<Matrix>,
    /// Invertible, `T = QT† = T†Q`. Present iff EP.
    pub witness_q: Option<Matrix>,
}

/// `ℂⁿ = R(T) ⊕ N(T)` in the basis `[range | null space]`, with `core` the matrix of
/// `T` restricted to `R(T)`.
struct CoreSplit {
    basis: Matrix,
    basis_inv: Matrix,
    rank: usize,
    core: Matrix,
}

impl CoreSplit {
    /// `None` unless `R(T) ∩ N(T) = 0` and `T` is invertible on its range.
    fn of(t: &Matrix, tol: &ToleranceProfile) -> Result<Option<Self>> {
        t.ensure_square()?;
        let rnr = rank_nullspace_range(t, tol);
        if rank(&(t * t), tol) != rnr.rank {
            return Ok(None);
        }
        let br = rnr.range.basis();
        let basis = br.hstack(rnr.nullspace.basis())?;
        let Ok(basis_inv) = basis.inverse() else {
            return Ok(None);
        };
        let core = &(&br.adjoint() * t) * br;
        if rnr.rank > 0 && core.inverse().is_err() {
            return Ok(None);
        }
        Ok(Some(CoreSplit { basis, basis_inv, rank: rnr.rank, core }))
    }

    /// `f(core)` on the range, `g` (identity or zero) on the null space.
    fn assemble(&self, on_range: Matrix, identity_on_null: bool) -> Matrix {
        let n = self.basis.rows();
        let null = if identity_on_null { Matrix::identity(n - self.rank) } else { Matrix::zeros(n - self.rank, n - self.rank) };
        &(&self.basis * &Matrix::block_diag(&[on_range, null])) * &self.basis_inv
    }
}

/// Constructs `(P, Q)` with `T† = PT = TP` and `T = QT† = T†Q`, verifying each identity
/// by multiplication. `None` if the construction does not apply or does not verify.
pub fn ep_witnesses(t: &Matrix, t_mp: &Matrix, tol: &ToleranceProfile) -> Result<Option<(Matrix, Matrix)>> {
    let Some(split) = CoreSplit::of(t, tol)? else {
        return Ok(None);
    };
    let sq = &split.core * &split.core;
    let Ok(sq_inv) = sq.inverse() else {
        return Ok(None);
    };
    let q = split.assemble(sq, true);
    let p = split.assemble(sq_inv, true);
    let ok = tol.close(t_mp, &(&p * t))
        && tol.close(t_mp, &(t * &p))
        && tol.close(t, &(&q * t_mp))
        && tol.close(t, &(t_mp * &q));
    Ok(ok.then_some((p, q)))
}

/// Builds the report without insisting that the flags agree.
pub fn ep_report(a: &Matrix, k: NormKind, tol: &ToleranceProfile) -> Result<EpReport> {
    let mp = mp_inverse(a, k, tol)?.into_inverse()?;
    ep_report_with(a, &mp, k, tol)
}

fn ep_report_with(a: &Matrix, mp: &Matrix, k: NormKind, tol: &ToleranceProfile) -> Result<EpReport> {
    let left = a * mp;
    let right = mp * a;
    let commutator = &left - &right;
    let a_split = rank_nullspace_range(a, tol);
    let mp_split = rank_nullspace_range(mp, tol);
    let witnesses = ep_witnesses(a, mp, tol)?;
    let flags = EpFlags {
        ep: tol.close(&left, &right),
        nullspace_eq: subspace_equal(&a_split.nullspace, &mp_split.nullspace, tol)?,
        range_eq: subspace_equal(&a_split.range, &mp_split.range, tol)?,
        witness_found: witnesses.is_some(),
    };
    let (witness_p, witness_q) = match witnesses {
        Some((p, q)) if flags.ep => (Some(p), Some(q)),
        _ => (None, None),
    };
    Ok(EpReport {
        is_ep: flags.ep,
        commutator_norm: op_norm(&commutator, k),
        flags,
        mp_inverse: mp.clone(),
        witness_p,
        witness_q,
    })
}

/// EP classification of `a` under `k`. Fails if the Moore-Penrose inverse does not exist,
/// and with a tolerance breakdown if the four characterizations disagree.
pub fn is_ep(a: &Matrix, k: NormKind, tol: &ToleranceProfile) -> Result<EpReport> {
    let report = ep_report(a, k, tol)?;
    if !report.flags.agree() {
        return Err(Error::ToleranceBreakdown(format!("EP characterizations disagree: {:?}", report.flags)));
    }
    Ok(report)
}

/// The unique hermitian idempotent with `N(P) = N(a)` and `R(P) = R(a)`, which exists
/// exactly when `a` is EP.
pub fn ep_projector(a: &Matrix, k: NormKind, tol: &ToleranceProfile) -> Result<Matrix> {
    let report = is_ep(a, k, tol)?;
    if !report.is_ep {
        return Err(Error::NotEp(report.commutator_norm));
    }
    let p = a * &report.mp_inverse;
    let rnr = rank_nullspace_range(a, tol);
    let p_split = rank_nullspace_range(&p, tol);
    if !is_hermitian_idempotent(&p, k, tol)?
        || !subspace_equal(&p_split.nullspace, &rnr.nullspace, tol)?
        || !subspace_equal(&p_split.range, &rnr.range, tol)?
    {
        return Err(Error::ToleranceBreakdown("aa† is not the hermitian idempotent for N(a), R(a)".into()));
    }
    Ok(p)
}

/// The group inverse: `b` with `a = aba`, `b = bab`, `ab = ba`. Exists iff
/// `rank(a) = rank(a²)`.
pub fn group_inverse(a: &Matrix, tol: &ToleranceProfile) -> Result<Matrix> {
    a.ensure_square()?;
    let r = rank(a, tol);
    let r2 = rank(&(a * a), tol);
    if r != r2 {
        return Err(Error::NoGroupInverse { rank: r, rank_sq: r2 });
    }
    let split = CoreSplit::of(a, tol)?
        .ok_or_else(|| Error::ToleranceBreakdown("range and null space are not complementary".into()))?;
    let core_inv = split.core.inverse()?;
    let b = split.assemble(core_inv, false);
    let ab = a * &b;
    if !tol.close(&(&ab * a), a) || !tol.close(&(&(&b * a) * &b), &b) || !tol.close(&ab, &(&b * a)) {
        return Err(Error::ToleranceBreakdown("group inverse fails verification".into()));
    }
    Ok(b)
}

/// EP status of `a, a², …, a^max_k`. Requires `a` to be EP.
pub fn powers_ep(a: &Matrix, k: NormKind, max_k: u32, tol: &ToleranceProfile) -> Result<Vec<bool>> {
    let report = is_ep(a, k, tol)?;
    if !report.is_ep {
        return Err(Error::NotEp(report.commutator_norm));
    }
    let mut out = Vec::with_capacity(max_k as usize);
    let mut power = a.clone();
    for _ in 0..max_k {
        let verdict = match is_ep(&power, k, tol) {
            Ok(r) => r.is_ep,
            Err(Error::MpMissing(_)) => false,
            Err(e) => return Err(e),
        };
        out.push(verdict);
        power = &power * a;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjointEp {
    /// `t` under `k`
    pub primal: bool,
    /// `tᵀ` under the dual norm
    pub dual: bool,
}

impl AdjointEp {
    pub fn agree(&self) -> bool {
        self.primal == self.dual
    }
}

/// EP status of `t` and of its Banach adjoint `tᵀ` on the dual space.
pub fn adjoint_ep(t: &Matrix, k: NormKind, tol: &ToleranceProfile) -> Result<AdjointEp> {
    let primal = is_ep(t, k, tol)?.is_ep;
    let dual = is_ep(&t.transpose(), k.dual(), tol)?.is_ep;
    Ok(AdjointEp { primal, dual })
}

/// `true` iff the inverse of `a` exists and is itself EP.
pub fn mp_is_ep(a: &Matrix, k: NormKind, tol: &ToleranceProfile) -> Result<bool> {
    match mp_inverse(a, k, tol)? {
        MpResult::Exists(w) => Ok(is_ep(&w.inverse, k, tol)?.is_ep),
        MpResult::Missing(f) => Err(Error::MpMissing(f)),
    }
}

/// Whether `v ∈ span(columns)`; helper for orbit and ideal membership.
pub(crate) fn in_range(m: &Matrix, v: &Matrix, tol: &ToleranceProfile) -> Result<bool> {
    SubspaceBasis::column_span(m, tol).contains_vector(v.entries(), tol)
}
