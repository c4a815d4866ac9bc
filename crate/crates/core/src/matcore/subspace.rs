use super::decomp::{rank_nullspace_range, PivotedQr};
use super::matrix::{Matrix, C64};
use super::tolerance::ToleranceProfile;
use crate::error::{Error, Result};

/// A subspace of ℂⁿ held as an orthonormal (Euclidean) basis.
///
/// The ambient Banach norm never enters here: spans, sums and intersections do not
/// depend on which norm ℂⁿ carries.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    ambient: usize,
    basis: Matrix,
}

impl SubspaceBasis {
    /// Wraps a matrix whose columns are already orthonormal.
    pub fn from_orthonormal(basis: Matrix) -> Self {
        SubspaceBasis { ambient: basis.rows(), basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::from_orthonormal(Matrix::zeros(ambient, 0))
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_orthonormal(Matrix::identity(ambient))
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let basis = Matrix::from_fn(ambient, idx.len(), |i, j| {
            if idx[j] == i {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Self::from_orthonormal(basis)
    }

    /// Orthonormalizes the columns of `m`, dropping dependent directions.
    pub fn column_span(m: &Matrix, tol: &ToleranceProfile) -> Self {
        let qr = PivotedQr::new(m);
        let dim = qr.rank(tol.span_tol(), tol.zero_abs_tol);
        Self::from_orthonormal(qr.q.columns(0..dim))
    }

    /// Span of a list of vectors; all must have the same length.
    pub fn span(vectors: &[Vec<C64>], tol: &ToleranceProfile) -> Result<Self> {
        let n = vectors.first().map_or(0, Vec::len);
        if let Some(bad) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(n, bad.len()));
        }
        Ok(Self::column_span(&Matrix::from_columns(n, vectors), tol))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<C64>> {
        (0..self.dim()).map(|j| self.basis.col(j)).collect()
    }

    /// Orthogonal projector `U U*` onto the subspace.
    pub fn orthogonal_projector(&self) -> Matrix {
        &self.basis * &self.basis.adjoint()
    }

    fn check_ambient(&self, other: &SubspaceBasis) -> Result<()> {
        if self.ambient != other.ambient {
            Err(Error::DimensionMismatch(self.ambient, other.ambient))
        } else {
            Ok(())
        }
    }

    /// Largest distance from a basis vector of `other` to `self`.
    pub fn containment_residual(&self, other: &SubspaceBasis) -> Result<f64> {
        self.check_ambient(other)?;
        if other.dim() == 0 {
            return Ok(0.0);
        }
        let coeffs = &self.basis.adjoint() * &other.basis;
        let proj = &self.basis * &coeffs;
        let resid = &other.basis - &proj;
        Ok((0..resid.cols())
            .map(|j| resid.col(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0, f64::max))
    }

    /// `other ⊆ self` at tolerance.
    pub fn contains(&self, other: &SubspaceBasis, tol: &ToleranceProfile) -> Result<bool> {
        Ok(self.containment_residual(other)? <= tol.span_tol())
    }

    /// Contains a single (not necessarily normalized) vector.
    pub fn contains_vector(&self, v: &[C64], tol: &ToleranceProfile) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch(self.ambient, v.len()));
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= tol.zero_abs_tol {
            return Ok(true);
        }
        let unit: Vec<C64> = v.iter().map(|z| z / norm).collect();
        let line = SubspaceBasis::from_orthonormal(Matrix::column(&unit));
        self.contains(&line, tol)
    }

    pub fn equals(&self, other: &SubspaceBasis, tol: &ToleranceProfile) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.dim() == other.dim() && self.contains(other, tol)? && other.contains(self, tol)?)
    }

    pub fn sum(&self, other: &SubspaceBasis, tol: &ToleranceProfile) -> Result<SubspaceBasis> {
        self.check_ambient(other)?;
        Ok(Self::column_span(&self.basis.hstack(&other.basis)?, tol))
    }

    /// Intersection from the null space of the stacked system `[U, -V]`.
    pub fn intersect(&self, other: &SubspaceBasis, tol: &ToleranceProfile) -> Result<SubspaceBasis> {
        self.check_ambient(other)?;
        let (p, q) = (self.dim(), other.dim());
        if p == 0 || q == 0 {
            return Ok(Self::zero(self.ambient));
        }
        let stacked = self.basis.hstack(&other.basis.scale_real(-1.0))?;
        let span_profile = ToleranceProfile { rank_rel_tol: tol.span_tol(), ..*tol };
        let kernel = rank_nullspace_range(&stacked, &span_profile).nullspace;
        if kernel.dim() == 0 {
            return Ok(Self::zero(self.ambient));
        }
        let coeffs = Matrix::from_fn(p, kernel.dim(), |i, j| kernel.basis()[(i, j)]);
        Ok(Self::column_span(&(&self.basis * &coeffs), tol))
    }

    /// Rows of the basis whose Euclidean norm exceeds `threshold`.
    pub fn row_support(&self, threshold: f64) -> Vec<usize> {
        (0..self.ambient)
            .filter(|&i| (0..self.dim()).map(|j| self.basis[(i, j)].norm_sqr()).sum::<f64>().sqrt() > threshold)
            .collect()
    }
}

pub fn subspace_equal(u: &SubspaceBasis, v: &SubspaceBasis, tol: &ToleranceProfile) -> Result<bool> {
    u.equals(v, tol)
}

/// `v ⊆ u`.
pub fn subspace_contains(u: &SubspaceBasis, v: &SubspaceBasis, tol: &ToleranceProfile) -> Result<bool> {
    u.contains(v, tol)
}

pub fn subspace_sum(u: &SubspaceBasis, v: &SubspaceBasis, tol: &ToleranceProfile) -> Result<SubspaceBasis> {
    u.sum(v, tol)
}

pub fn subspace_intersect(u: &SubspaceBasis, v: &SubspaceBasis, tol: &ToleranceProfile) -> Result<SubspaceBasis> {
    u.intersect(v, tol)
}
