//! When is the product of two EP operators EP?

use serde::{Deserialize, Serialize};

use super::is_ep;
use crate::error::{Error, Result};
use crate::matcore::{rank_nullspace_range, Matrix, ToleranceProfile};
use crate::moorepenrose::{mp_inverse, AlgebraContext, Side};
use crate::norms::NormKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductReport {
    /// `(I - TT†)ST = 0`
    pub hyp_range: bool,
    /// `ST(I - S†S) = 0`
    pub hyp_null: bool,
    /// `N(ST) = N(S) + N(T)`
    pub null_sum_eq: bool,
    /// `R(ST) = R(S) ∩ R(T)`
    pub range_cap_eq: bool,
    /// `ST` is EP
    pub product_ep: bool,
    /// `R(ST) ⊆ R(T)`
    pub range_in_t: bool,
    /// `N(S) ⊆ N(ST)`
    pub null_s_in_product: bool,
}

impl ProductReport {
    /// Implications that must hold for every pair of EP operators whose product has a
    /// Moore-Penrose inverse. Returns the ones that fail.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.null_sum_eq && self.range_cap_eq && !self.product_ep {
            out.push("lattice identities hold but the product is not EP");
        }
        if self.product_ep && !(self.range_in_t && self.null_s_in_product) {
            out.push("product is EP but R(ST) ⊄ R(T) or N(S) ⊄ N(ST)");
        }
        if self.hyp_range != self.range_in_t {
            out.push("(I - TT†)ST = 0 disagrees with R(ST) ⊆ R(T)");
        }
        if self.hyp_null != self.null_s_in_product {
            out.push("ST(I - S†S) = 0 disagrees with N(S) ⊆ N(ST)");
        }
        if self.hyp_range && self.hyp_null && !(self.null_sum_eq && self.range_cap_eq && self.product_ep) {
            out.push("both hypotheses hold but the conclusions fail");
        }
        out
    }

    /// The flags shared with the algebra formulation, in a fixed order.
    pub fn as_array(&self) -> [bool; 7] {
        [
            self.hyp_range,
            self.hyp_null,
            self.null_sum_eq,
            self.range_cap_eq,
            self.product_ep,
            self.range_in_t,
            self.null_s_in_product,
        ]
    }
}

/// Evaluates every flag for operators `s`, `t` with inverses `s_mp`, `t_mp`, where
/// `st_mp` is the inverse of `st`. Does not check the implications.
pub fn product_flags(
    s: &Matrix,
    s_mp: &Matrix,
    t: &Matrix,
    t_mp: &Matrix,
    st_mp: &Matrix,
    tol: &ToleranceProfile,
) -> Result<ProductReport> {
    let n = s.ensure_square()?;
    if t.shape() != s.shape() {
        return Err(Error::ShapeMismatch { left: s.shape(), right: t.shape() });
    }
    let id = Matrix::identity(n);
    let st = s * t;
    let reference = s.max_abs() * t.max_abs();

    let s_split = rank_nullspace_range(s, tol);
    let t_split = rank_nullspace_range(t, tol);
    let st_split = rank_nullspace_range(&st, tol);

    let left = &st * st_mp;
    let right = st_mp * &st;
    Ok(ProductReport {
        hyp_range: tol.negligible(&(&(&id - &(t * t_mp)) * &st), reference),
        hyp_null: tol.negligible(&(&st * &(&id - &(s_mp * s))), reference),
        null_sum_eq: st_split.nullspace.equals(&s_split.nullspace.sum(&t_split.nullspace, tol)?, tol)?,
        range_cap_eq: st_split.range.equals(&s_split.range.intersect(&t_split.range, tol)?, tol)?,
        product_ep: tol.close(&left, &right),
        range_in_t: t_split.range.contains(&st_split.range, tol)?,
        null_s_in_product: st_split.nullspace.contains(&s_split.nullspace, tol)?,
    })
}

fn asserted(report: ProductReport) -> Result<ProductReport> {
    let bad = report.violations();
    if bad.is_empty() {
        Ok(report)
    } else {
        Err(Error::ToleranceBreakdown(bad.join("; ")))
    }
}

/// Product check for operators on ℂⁿ. `s` and `t` must be EP under `k` and `st` must
/// have a Moore-Penrose inverse.
pub fn product_ep_check(s: &Matrix, t: &Matrix, k: NormKind, tol: &ToleranceProfile) -> Result<ProductReport> {
    let rs = is_ep(s, k, tol)?;
    if !rs.is_ep {
        return Err(Error::NotEp(rs.commutator_norm));
    }
    let rt = is_ep(t, k, tol)?;
    if !rt.is_ep {
        return Err(Error::NotEp(rt.commutator_norm));
    }
    let st_mp = mp_inverse(&(s * t), k, tol)?.into_inverse()?;
    asserted(product_flags(s, &rs.mp_inverse, t, &rt.mp_inverse, &st_mp, tol)?)
}

/// The same check for elements `a`, `b` of a block algebra, carried out on their
/// multiplication maps.
///
/// With `Side::Left` the pair is `(L_a, L_b)`, so the flags speak about `abA`, `aA`, `bA`
/// and the right annihilators. With `Side::Right` the pair is `(R_b, R_a)`, whose product
/// is `R_ab`, and the flags speak about `Aab`, `Aa`, `Ab` and the left annihilators.
pub fn lifted_product_check(
    a: &Matrix,
    b: &Matrix,
    ctx: &AlgebraContext,
    side: Side,
    tol: &ToleranceProfile,
) -> Result<ProductReport> {
    let a_mp = ctx.mp_inverse(a, tol)?.into_inverse()?;
    let b_mp = ctx.mp_inverse(b, tol)?.into_inverse()?;
    for (x, x_mp) in [(a, &a_mp), (b, &b_mp)] {
        let left = x * x_mp;
        let right = x_mp * x;
        if !tol.close(&left, &right) {
            return Err(Error::NotEp((&left - &right).max_abs()));
        }
    }
    let ab = ctx.project(&(a * b));
    let ab_mp = ctx.mp_inverse(&ab, tol)?.into_inverse()?;
    let lift = |x: &Matrix| ctx.lift(x, side, tol);
    let (s, s_mp, t, t_mp) = match side {
        Side::Left => (lift(a)?, lift(&a_mp)?, lift(b)?, lift(&b_mp)?),
        Side::Right => (lift(b)?, lift(&b_mp)?, lift(a)?, lift(&a_mp)?),
    };
    asserted(product_flags(&s, &s_mp, &t, &t_mp, &lift(&ab_mp)?, tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    #[test]
    fn commuting_projectors() {
        let d = Matrix::real_diag(&[1.0, 0.0]);
        let r = product_ep_check(&d, &d, NormKind::L2, &tol()).unwrap();
        assert!(r.as_array().iter().all(|&f| f), "{r:?}");
    }

    #[test]
    fn classical_counterexample() {
        let s = Matrix::real_diag(&[1.0, 0.0]);
        let t = Matrix::from_real_rows(&[[0.5, 0.5], [0.5, 0.5]]);
        let r = product_ep_check(&s, &t, NormKind::L2, &tol()).unwrap();
        assert!(!r.hyp_range && !r.product_ep);
        assert!(!r.null_sum_eq && !r.range_cap_eq);
        let st = &s * &t;
        let defect = &(&Matrix::identity(2) - &(&t * &t)) * &st;
        assert!(defect.max_abs_diff(&Matrix::from_real_rows(&[[0.25, 0.25], [-0.25, -0.25]])) < 1e-15);
    }

    #[test]
    fn block_diagonal_invertible_leading_blocks() {
        let c1 = Matrix::from_real_rows(&[[2.0, 1.0], [1.0, 1.0]]);
        let c2 = Matrix::from_real_rows(&[[0.0, 1.0], [-1.0, 3.0]]);
        let s = Matrix::block_diag(&[c1, Matrix::zeros(1, 1)]);
        let t = Matrix::block_diag(&[c2, Matrix::zeros(1, 1)]);
        let r = product_ep_check(&s, &t, NormKind::L1, &tol()).unwrap();
        assert!(r.as_array().iter().all(|&f| f), "{r:?}");
    }

    #[test]
    fn rejects_non_ep_factor() {
        let nil = Matrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(product_ep_check(&nil, &Matrix::identity(2), NormKind::L2, &tol()), Err(Error::NotEp(_))));
    }

    #[test]
    fn lifted_flags_match_direct() {
        let s = Matrix::real_diag(&[1.0, 0.0]);
        let t = Matrix::from_real_rows(&[[0.5, 0.5], [0.5, 0.5]]);
        let ctx = AlgebraContext::single(2, NormKind::L2).unwrap();
        let left = lifted_product_check(&s, &t, &ctx, Side::Left, &tol()).unwrap();
        assert_eq!(left, product_ep_check(&s, &t, NormKind::L2, &tol()).unwrap());
        let right = lifted_product_check(&s, &t, &ctx, Side::Right, &tol()).unwrap();
        assert_eq!(right, product_ep_check(&t.transpose(), &s.transpose(), NormKind::L2, &tol()).unwrap());
    }
}
