use serde::{Deserialize, Serialize};

use super::Matrix;

/// Thresholds shared by every numerical decision in the crate.
///
/// * `rank_rel_tol` - a pivot counts towards the rank when it exceeds this fraction of the
///   largest column norm.
/// * `zero_abs_tol` - absolute threshold for "this entry is zero" (null-space residuals,
///   support detection of coordinate subspaces).
/// * `herm_tol` - bound on logarithmic norms for hermitianness, and the relative bound used
///   for matrix identities and subspace containment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceProfile {
    pub rank_rel_tol: f64,
    pub zero_abs_tol: f64,
    pub herm_tol: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        ToleranceProfile { rank_rel_tol: 1e-10, zero_abs_tol: 1e-9, herm_tol: 1e-8 }
    }
}

impl ToleranceProfile {
    /// Derives the full profile from `herm_tol`, keeping the default ratios 1 : 1/10 : 1/100.
    pub fn from_herm_tol(herm_tol: f64) -> Self {
        ToleranceProfile { rank_rel_tol: herm_tol / 100.0, zero_abs_tol: herm_tol / 10.0, herm_tol }
    }

    pub fn is_valid(&self) -> bool {
        [self.rank_rel_tol, self.zero_abs_tol, self.herm_tol].iter().all(|t| t.is_finite() && *t >= 0.0)
    }

    /// Relative equality of two matrices of the same shape.
    pub fn close(&self, a: &Matrix, b: &Matrix) -> bool {
        if a.shape() != b.shape() {
            return false;
        }
        let scale = a.max_abs().max(b.max_abs()).max(1.0);
        a.max_abs_diff(b) <= self.herm_tol * scale
    }

    /// `m` is numerically the zero matrix relative to `reference`.
    pub fn negligible(&self, m: &Matrix, reference: f64) -> bool {
        m.max_abs() <= self.herm_tol * reference.max(1.0)
    }

    /// Residual bound for subspace containment and span rank decisions.
    pub fn span_tol(&self) -> f64 {
        self.herm_tol
    }
}
