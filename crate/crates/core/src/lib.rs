//! Hermitian elements, Moore-Penrose inverses and EP operators for square complex
//! matrices acting on ℂⁿ with the ℓ1, ℓ2 or ℓ∞ norm, and for block-diagonal matrix
//! algebras built from those spaces.

pub mod ep;
pub mod error;
pub mod generate;
pub mod hermitian;
pub mod matcore;
pub mod moorepenrose;
pub mod norms;

pub use error::{Error, MpFailure, Result};
pub use matcore::{Matrix, ToleranceProfile, C64};
pub use norms::{BanachNorm, NormKind};
