//! Hermitian elements and hermitian idempotents.
//!
//! An operator `A` is hermitian for a norm when `‖exp(itA)‖ = 1` for every real `t`.
//! That holds exactly when the logarithmic norms of `iA` and `-iA` both vanish, which is
//! the criterion used here; a sampled sweep of `‖exp(itA)‖` is reported alongside as a
//! numerical witness.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{c, mat_exp, Matrix, SubspaceBasis, ToleranceProfile};
use crate::norms::NormKind;

pub const SWEEP_POINTS: usize = 201;
pub const SWEEP_T_MAX: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HermitianVerdict {
    pub is_hermitian: bool,
    /// μ(iA)
    pub log_norm_plus: f64,
    /// μ(-iA)
    pub log_norm_minus: f64,
    /// max over the sweep grid of |‖exp(itA)‖ - 1|
    pub sweep_max_defect: f64,
}

/// `(μ(iA), μ(-iA))` for the given norm.
pub fn log_norm_pair(m: &Matrix, k: NormKind) -> Result<(f64, f64)> {
    m.ensure_square()?;
    let strategy = k.strategy();
    let im = m.scale(c(0.0, 1.0));
    Ok((strategy.log_norm(&im), strategy.log_norm(&-&im)))
}

/// The exact criterion without the sweep.
pub fn passes_log_norm_test(m: &Matrix, k: NormKind, tol: &ToleranceProfile) -> Result<bool> {
    let (plus, minus) = log_norm_pair(m, k)?;
    Ok(plus.abs() <= tol.herm_tol && minus.abs() <= tol.herm_tol)
}

/// max over `points` equally spaced `t ∈ [-t_max, t_max]` of `|‖exp(itA)‖ - 1|`.
pub fn exp_sweep_defect(m: &Matrix, k: NormKind, points: usize, t_max: f64) -> Result<f64> {
    m.ensure_square()?;
    let strategy = k.strategy();
    let im = m.scale(c(0.0, 1.0));
    let mut worst = 0.0f64;
    for p in 0..points {
        let t = if points == 1 { 0.0 } else { -t_max + 2.0 * t_max * p as f64 / (points - 1) as f64 };
        let e = mat_exp(&im.scale_real(t))?;
        worst = worst.max((strategy.op_norm(&e) - 1.0).abs());
    }
    Ok(worst)
}

pub fn is_hermitian(m: &Matrix, k: NormKind, tol: &ToleranceProfile) -> Result<HermitianVerdict> {
    let (plus, minus) = log_norm_pair(m, k)?;
    let sweep = exp_sweep_defect(m, k, SWEEP_POINTS, SWEEP_T_MAX)?;
    Ok(HermitianVerdict {
        is_hermitian: plus.abs() <= tol.herm_tol && minus.abs() <= tol.herm_tol,
        log_norm_plus: plus,
        log_norm_minus: minus,
        sweep_max_defect: sweep,
    })
}

pub fn is_idempotent(m: &Matrix, tol: &ToleranceProfile) -> Result<bool> {
    m.ensure_square()?;
    Ok(tol.close(&(m * m), m))
}

pub fn is_hermitian_idempotent(m: &Matrix, k: NormKind, tol: &ToleranceProfile) -> Result<bool> {
    Ok(is_idempotent(m, tol)? && passes_log_norm_test(m, k, tol)?)
}

/// The unique hermitian idempotent with range `r`.
///
/// Under ℓ2 this is the orthogonal projector; under ℓ1 and ℓ∞ it exists only for
/// coordinate subspaces and is then the matching 0/1 diagonal matrix.
pub fn hermitian_idempotent_with_range(r: &SubspaceBasis, k: NormKind, tol: &ToleranceProfile) -> Result<Matrix> {
    let p = k.strategy().hermitian_idempotent_onto(r, tol)?;
    if !is_hermitian_idempotent(&p, k, tol)? {
        return Err(Error::ToleranceBreakdown(format!(
            "synthesized projector onto a {}-dimensional subspace fails the {k} hermitian idempotent test",
            r.dim()
        )));
    }
    Ok(p)
}

/// The unique hermitian idempotent with null space `nsp`, namely `I - P` for `P` the
/// hermitian idempotent onto `nsp`.
pub fn hermitian_idempotent_with_nullspace(
    nsp: &SubspaceBasis,
    k: NormKind,
    tol: &ToleranceProfile,
) -> Result<Matrix> {
    let p = hermitian_idempotent_with_range(nsp, k, tol)?;
    Ok(&Matrix::identity(nsp.ambient_dim()) - &p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    fn t_half() -> Matrix {
        Matrix::from_real_rows(&[[0.5, -0.5], [-0.5, 0.5]])
    }

    #[test]
    fn half_projector_depends_on_norm() {
        let l2 = is_hermitian(&t_half(), NormKind::L2, &tol()).unwrap();
        assert!(l2.is_hermitian);
        assert!(l2.sweep_max_defect <= 10.0 * tol().herm_tol);

        let l1 = is_hermitian(&t_half(), NormKind::L1, &tol()).unwrap();
        assert!(!l1.is_hermitian);
        assert!((l1.log_norm_plus - 0.5).abs() < 1e-12);
        assert!(l1.sweep_max_defect > 1e-3);
    }

    #[test]
    fn real_diagonal_is_hermitian_in_l1() {
        let d = Matrix::real_diag(&[1.0, -3.0, 0.0]);
        let v = is_hermitian(&d, NormKind::L1, &tol()).unwrap();
        assert!(v.is_hermitian);
        assert_eq!((v.log_norm_plus, v.log_norm_minus), (0.0, 0.0));
    }

    #[test]
    fn hermitian_idempotent_examples() {
        for k in NormKind::ALL {
            assert!(is_hermitian_idempotent(&Matrix::identity(3), k, &tol()).unwrap());
        }
        assert!(is_hermitian_idempotent(&t_half(), NormKind::L2, &tol()).unwrap());
        assert!(is_hermitian_idempotent(&Matrix::real_diag(&[1.0, 0.0, 1.0]), NormKind::L1, &tol()).unwrap());
        assert!(!is_hermitian_idempotent(&t_half(), NormKind::L1, &tol()).unwrap());
        assert!(!is_hermitian_idempotent(&Matrix::real_diag(&[2.0, 0.0]), NormKind::L2, &tol()).unwrap());
    }

    #[test]
    fn projector_with_range() {
        let e1 = SubspaceBasis::coordinate(2, &[0]);
        assert_eq!(hermitian_idempotent_with_range(&e1, NormKind::L1, &tol()).unwrap(), Matrix::real_diag(&[1.0, 0.0]));

        let ones = SubspaceBasis::span(&[vec![c(1.0, 0.0), c(1.0, 0.0)]], &tol()).unwrap();
        assert_eq!(
            hermitian_idempotent_with_range(&ones, NormKind::L1, &tol()),
            Err(Error::NotRepresentable(NormKind::L1))
        );
        let p = hermitian_idempotent_with_range(&ones, NormKind::L2, &tol()).unwrap();
        assert!(p.max_abs_diff(&Matrix::from_real_rows(&[[0.5, 0.5], [0.5, 0.5]])) < 1e-15);
    }

    #[test]
    fn projector_with_nullspace() {
        for k in NormKind::ALL {
            let p = hermitian_idempotent_with_nullspace(&SubspaceBasis::zero(2), k, &tol()).unwrap();
            assert_eq!(p, Matrix::identity(2));
        }
        let ones = SubspaceBasis::span(&[vec![c(1.0, 0.0), c(1.0, 0.0)]], &tol()).unwrap();
        let p = hermitian_idempotent_with_nullspace(&ones, NormKind::L2, &tol()).unwrap();
        assert!(p.max_abs_diff(&t_half()) < 1e-15);
        assert!(matches!(
            hermitian_idempotent_with_nullspace(&ones, NormKind::L1, &tol()),
            Err(Error::NotRepresentable(NormKind::L1))
        ));
    }

    #[test]
    fn non_square_rejected() {
        assert!(is_hermitian(&Matrix::zeros(2, 3), NormKind::L2, &tol()).is_err());
        assert!(is_hermitian_idempotent(&Matrix::zeros(3, 2), NormKind::L1, &tol()).is_err());
    }
}
