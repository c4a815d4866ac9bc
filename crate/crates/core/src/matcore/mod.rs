//! Dense complex matrices, pivoted QR, subspace lattice operations and the matrix
//! exponential.

mod decomp;
mod expm;
mod matrix;
mod subspace;
mod tolerance;

pub use decomp::{hermitian_eigenvalues, rank, rank_nullspace_range, PivotedQr, RankNullRange};
pub use expm::mat_exp;
pub use matrix::{c, Matrix, C64};
pub use subspace::{subspace_contains, subspace_equal, subspace_intersect, subspace_sum, SubspaceBasis};
pub use tolerance::ToleranceProfile;
