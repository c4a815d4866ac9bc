//! EP characterizations of an element of a block algebra, each decided on its own.
//!
//! Ideals such as `aA` and `Aa` are the ranges of the multiplication maps `L_a` and
//! `R_a`; annihilators are their null spaces. Statements that quantify over invertible
//! elements or operators are decided by building the witnesses explicitly and checking
//! them by multiplication.

use serde::{Deserialize, Serialize};

use super::{ep_witnesses, in_range};
use crate::error::Result;
use crate::matcore::{rank_nullspace_range, subspace_equal, Matrix, ToleranceProfile};
use crate::moorepenrose::{verify_mp_lifted, AlgebraContext, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statement {
    /// `aa† = a†a`
    Ep,
    /// `L_a` is an EP operator on the algebra
    LeftMultiplicationEp,
    /// `{x : ax = 0} = {x : a†x = 0}`
    RightAnnihilatorsEqual,
    /// `aA = a†A`
    RightIdealsEqual,
    /// invertible `P` with `L_a† = P L_a = L_a P`
    LeftMultiplicationWitnessP,
    /// invertible `Q` with `L_a = Q L_a† = L_a† Q`
    LeftMultiplicationWitnessQ,
    /// `R_a` is an EP operator on the algebra
    RightMultiplicationEp,
    /// `{x : xa = 0} = {x : xa† = 0}`
    LeftAnnihilatorsEqual,
    /// `Aa = Aa†`
    LeftIdealsEqual,
    /// invertible `U` with `R_a† = U R_a = R_a U`
    RightMultiplicationWitnessU,
    /// invertible `V` with `R_a = V R_a† = R_a† V`
    RightMultiplicationWitnessV,
    /// `a²a† = a = a†a²`
    SquareIdentities,
    /// `a ∈ a†A ∩ Aa†`
    ElementInIdealsOfInverse,
    /// `a† ∈ aA ∩ Aa`
    InverseInIdealsOfElement,
    /// `a ∈ a†A⁻¹ ∩ A⁻¹a†`
    ElementInUnitOrbitsOfInverse,
    /// `a† ∈ aA⁻¹ ∩ A⁻¹a`
    InverseInUnitOrbitsOfElement,
    /// `aA⁻¹ = a†A⁻¹`
    RightUnitOrbitsEqual,
    /// `A⁻¹a = A⁻¹a†`
    LeftUnitOrbitsEqual,
}

impl Statement {
    pub const ALL: [Statement; 18] = [
        Statement::Ep,
        Statement::LeftMultiplicationEp,
        Statement::RightAnnihilatorsEqual,
        Statement::RightIdealsEqual,
        Statement::LeftMultiplicationWitnessP,
        Statement::LeftMultiplicationWitnessQ,
        Statement::RightMultiplicationEp,
        Statement::LeftAnnihilatorsEqual,
        Statement::LeftIdealsEqual,
        Statement::RightMultiplicationWitnessU,
        Statement::RightMultiplicationWitnessV,
        Statement::SquareIdentities,
        Statement::ElementInIdealsOfInverse,
        Statement::InverseInIdealsOfElement,
        Statement::ElementInUnitOrbitsOfInverse,
        Statement::InverseInUnitOrbitsOfElement,
        Statement::RightUnitOrbitsEqual,
        Statement::LeftUnitOrbitsEqual,
    ];
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatteryReport {
    pub mp_inverse: Matrix,
    pub verdicts: Vec<(Statement, bool)>,
    /// Invertible `c` with `a† = ac = ca`, when constructed.
    pub witness_c: Option<Matrix>,
    /// Invertible `d` with `a = a†d = da†`, when constructed.
    pub witness_d: Option<Matrix>,
}

impl BatteryReport {
    pub fn get(&self, s: Statement) -> bool {
        self.verdicts.iter().find(|(k, _)| *k == s).map(|(_, v)| *v).expect("every statement is evaluated")
    }

    pub fn unanimous(&self) -> Option<bool> {
        let first = self.verdicts.first()?.1;
        self.verdicts.iter().all(|(_, v)| *v == first).then_some(first)
    }
}

struct Witnesses {
    c: Matrix,
    d: Matrix,
}

/// Element-level witnesses from the operator construction applied to `a` itself.
fn element_witnesses(
    a: &Matrix,
    a_mp: &Matrix,
    ctx: &AlgebraContext,
    tol: &ToleranceProfile,
) -> Result<Option<Witnesses>> {
    Ok(ep_witnesses(a, a_mp, tol)?.map(|(p, q)| Witnesses { c: ctx.project(&p), d: ctx.project(&q) }))
}

fn invertible(m: &Matrix) -> bool {
    m.inverse().is_ok()
}

/// Evaluates every statement for `a` in `ctx`. Requires `a` to have a Moore-Penrose
/// inverse in the algebra.
pub fn algebra_ep_battery(a: &Matrix, ctx: &AlgebraContext, tol: &ToleranceProfile) -> Result<BatteryReport> {
    let a = &ctx.project(a);
    let a_mp = ctx.mp_inverse(a, tol)?.into_inverse()?;
    let mp = &a_mp;

    let la = ctx.lift(a, Side::Left, tol)?;
    let lx = ctx.lift(mp, Side::Left, tol)?;
    let ra = ctx.lift(a, Side::Right, tol)?;
    let rx = ctx.lift(mp, Side::Right, tol)?;
    let la_split = rank_nullspace_range(&la, tol);
    let lx_split = rank_nullspace_range(&lx, tol);
    let ra_split = rank_nullspace_range(&ra, tol);
    let rx_split = rank_nullspace_range(&rx, tol);

    let lifted_ep = |side: Side, m: &Matrix, m_mp: &Matrix| -> Result<bool> {
        let check = verify_mp_lifted(ctx, side, m, m_mp, tol)?;
        Ok(check.holds(tol) && tol.close(&(m * m_mp), &(m_mp * m)))
    };
    let operator_witness = |m: &Matrix, m_mp: &Matrix| -> Result<Option<(Matrix, Matrix)>> { ep_witnesses(m, m_mp, tol) };

    let left_w = operator_witness(&la, &lx)?;
    let right_w = operator_witness(&ra, &rx)?;
    let lp = left_w.as_ref().is_some_and(|(p, _)| invertible(p) && tol.close(&lx, &(p * &la)) && tol.close(&lx, &(&la * p)));
    let lq = left_w.as_ref().is_some_and(|(_, q)| invertible(q) && tol.close(&la, &(q * &lx)) && tol.close(&la, &(&lx * q)));
    let ru = right_w.as_ref().is_some_and(|(u, _)| invertible(u) && tol.close(&rx, &(u * &ra)) && tol.close(&rx, &(&ra * u)));
    let rv = right_w.as_ref().is_some_and(|(_, v)| invertible(v) && tol.close(&ra, &(v * &rx)) && tol.close(&ra, &(&rx * v)));

    let a_vec = ctx.vectorize(a);
    let mp_vec = ctx.vectorize(mp);
    let a_sq = a * a;

    let w = element_witnesses(a, mp, ctx, tol)?;
    let (c_ok, d_ok, c_left, c_right, d_left, d_right) = match &w {
        Some(Witnesses { c, d }) => (
            invertible(c),
            invertible(d),
            tol.close(mp, &(a * c)),
            tol.close(mp, &(c * a)),
            tol.close(a, &(mp * d)),
            tol.close(a, &(d * mp)),
        ),
        None => (false, false, false, false, false, false),
    };

    let verdicts = vec![
        (Statement::Ep, tol.close(&(a * mp), &(mp * a))),
        (Statement::LeftMultiplicationEp, lifted_ep(Side::Left, &la, &lx)?),
        (Statement::RightAnnihilatorsEqual, subspace_equal(&la_split.nullspace, &lx_split.nullspace, tol)?),
        (Statement::RightIdealsEqual, subspace_equal(&la_split.range, &lx_split.range, tol)?),
        (Statement::LeftMultiplicationWitnessP, lp),
        (Statement::LeftMultiplicationWitnessQ, lq),
        (Statement::RightMultiplicationEp, lifted_ep(Side::Right, &ra, &rx)?),
        (Statement::LeftAnnihilatorsEqual, subspace_equal(&ra_split.nullspace, &rx_split.nullspace, tol)?),
        (Statement::LeftIdealsEqual, subspace_equal(&ra_split.range, &rx_split.range, tol)?),
        (Statement::RightMultiplicationWitnessU, ru),
        (Statement::RightMultiplicationWitnessV, rv),
        (Statement::SquareIdentities, tol.close(&(&a_sq * mp), a) && tol.close(&(mp * &a_sq), a)),
        (Statement::ElementInIdealsOfInverse, in_range(&lx, &a_vec, tol)? && in_range(&rx, &a_vec, tol)?),
        (Statement::InverseInIdealsOfElement, in_range(&la, &mp_vec, tol)? && in_range(&ra, &mp_vec, tol)?),
        (Statement::ElementInUnitOrbitsOfInverse, d_ok && d_left && d_right),
        (Statement::InverseInUnitOrbitsOfElement, c_ok && c_left && c_right),
        (Statement::RightUnitOrbitsEqual, c_ok && d_ok && c_left && d_left),
        (Statement::LeftUnitOrbitsEqual, c_ok && d_ok && c_right && d_right),
    ];

    let all_witnesses = c_ok && d_ok && c_left && c_right && d_left && d_right;
    let (witness_c, witness_d) = match w {
        Some(Witnesses { c, d }) if all_witnesses => (Some(c), Some(d)),
        _ => (None, None),
    };
    Ok(BatteryReport { mp_inverse: a_mp, verdicts, witness_c, witness_d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::norms::NormKind;

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    #[test]
    fn invertible_element() {
        let ctx = AlgebraContext::single(2, NormKind::L1).unwrap();
        let a = Matrix::from_real_rows(&[[2.0, 1.0], [1.0, 1.0]]);
        let r = algebra_ep_battery(&a, &ctx, &tol()).unwrap();
        assert_eq!(r.unanimous(), Some(true), "{:?}", r.verdicts);
        assert_eq!(r.verdicts.len(), Statement::ALL.len());
    }

    #[test]
    fn projector_element() {
        let ctx = AlgebraContext::single(2, NormKind::L2).unwrap();
        let a = Matrix::real_diag(&[1.0, 0.0]);
        let r = algebra_ep_battery(&a, &ctx, &tol()).unwrap();
        assert_eq!(r.unanimous(), Some(true), "{:?}", r.verdicts);
        assert_eq!(r.witness_c.unwrap(), Matrix::identity(2));
        assert_eq!(r.witness_d.unwrap(), Matrix::identity(2));
    }

    #[test]
    fn nilpotent_element() {
        let ctx = AlgebraContext::single(2, NormKind::L2).unwrap();
        let a = Matrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        let r = algebra_ep_battery(&a, &ctx, &tol()).unwrap();
        assert_eq!(r.unanimous(), Some(false), "{:?}", r.verdicts);
        assert!(!r.get(Statement::SquareIdentities));
        assert!(r.witness_c.is_none());
    }

    #[test]
    fn block_context() {
        let ctx = AlgebraContext::new(vec![2, 1], NormKind::Linf).unwrap();
        let a = Matrix::block_diag(&[Matrix::from_real_rows(&[[1.0, 2.0], [0.0, 1.0]]), Matrix::zeros(1, 1)]);
        let r = algebra_ep_battery(&a, &ctx, &tol()).unwrap();
        assert_eq!(r.unanimous(), Some(true), "{:?}", r.verdicts);
    }

    #[test]
    fn missing_inverse() {
        let ctx = AlgebraContext::single(2, NormKind::L1).unwrap();
        let s = Matrix::from_real_rows(&[[1.0, -1.0], [0.0, 0.0]]);
        assert!(matches!(algebra_ep_battery(&s, &ctx, &tol()), Err(Error::MpMissing(_))));
    }
}
