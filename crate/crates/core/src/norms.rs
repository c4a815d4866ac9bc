//! Norms on ℂⁿ as interchangeable strategies.
//!
//! Each supported vector norm is a [`BanachNorm`] implementation that knows its induced
//! operator norm, its logarithmic norm, its dual, and which subspaces are ranges of its
//! hermitian idempotents. Implementations are registered by name in a [`NormRegistry`]
//! and looked up at runtime (`--norm l1|l2|linf` on the command line).

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{hermitian_eigenvalues, Matrix, SubspaceBasis, ToleranceProfile, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    L1,
    L2,
    Linf,
}

impl NormKind {
    pub const ALL: [NormKind; 3] = [NormKind::L1, NormKind::L2, NormKind::Linf];

    pub fn name(self) -> &'static str {
        match self {
            NormKind::L1 => "l1",
            NormKind::L2 => "l2",
            NormKind::Linf => "linf",
        }
    }

    /// Norm carried by the dual space under the bilinear pairing.
    pub fn dual(self) -> NormKind {
        self.strategy().dual()
    }

    pub fn strategy(self) -> &'static dyn BanachNorm {
        match self {
            NormKind::L1 => &L1Norm,
            NormKind::L2 => &L2Norm,
            NormKind::Linf => &LinfNorm,
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        registry().get(s).map(|n| n.kind()).ok_or_else(|| Error::UnknownNorm(s.to_string()))
    }
}

/// A norm on ℂⁿ together with everything the hermitian and Moore-Penrose machinery
/// needs to know about it.
pub trait BanachNorm: Send + Sync + fmt::Debug {
    fn kind(&self) -> NormKind;

    fn name(&self) -> &'static str {
        self.kind().name()
    }

    fn vector_norm(&self, v: &[C64]) -> f64;

    /// Induced operator norm.
    fn op_norm(&self, m: &Matrix) -> f64;

    /// One-sided derivative of `t ↦ ‖I + t·m‖` at `0⁺`. `m` must be square.
    fn log_norm(&self, m: &Matrix) -> f64;

    fn dual(&self) -> NormKind;

    /// The hermitian idempotent with range `r`, or [`Error::NotRepresentable`] when no
    /// hermitian idempotent has that range.
    fn hermitian_idempotent_onto(&self, r: &SubspaceBasis, tol: &ToleranceProfile) -> Result<Matrix>;
}

fn max_col_sum(m: &Matrix) -> f64 {
    (0..m.cols()).map(|j| (0..m.rows()).map(|i| m[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
}

fn max_row_sum(m: &Matrix) -> f64 {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// 0/1 diagonal projector onto `r` when `r` is spanned by standard basis vectors.
fn coordinate_projector(kind: NormKind, r: &SubspaceBasis, tol: &ToleranceProfile) -> Result<Matrix> {
    let support = r.row_support(tol.zero_abs_tol);
    if support.len() != r.dim() {
        return Err(Error::NotRepresentable(kind));
    }
    let mut p = Matrix::zeros(r.ambient_dim(), r.ambient_dim());
    for i in support {
        p[(i, i)] = C64::new(1.0, 0.0);
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct L1Norm;

#[derive(Debug, Clone, Copy, Default)]
pub struct L2Norm;

#[derive(Debug, Clone, Copy, Default)]
pub struct LinfNorm;

impl BanachNorm for L1Norm {
    fn kind(&self) -> NormKind {
        NormKind::L1
    }

    fn vector_norm(&self, v: &[C64]) -> f64 {
        v.iter().map(|z| z.norm()).sum()
    }

    fn op_norm(&self, m: &Matrix) -> f64 {
        max_col_sum(m)
    }

    fn log_norm(&self, m: &Matrix) -> f64 {
        (0..m.cols())
            .map(|j| m[(j, j)].re + (0..m.rows()).filter(|&i| i != j).map(|i| m[(i, j)].norm()).sum::<f64>())
            .reduce(f64::max)
            .unwrap_or(0.0)
    }

    fn dual(&self) -> NormKind {
        NormKind::Linf
    }

    fn hermitian_idempotent_onto(&self, r: &SubspaceBasis, tol: &ToleranceProfile) -> Result<Matrix> {
        coordinate_projector(self.kind(), r, tol)
    }
}

impl BanachNorm for LinfNorm {
    fn kind(&self) -> NormKind {
        NormKind::Linf
    }

    fn vector_norm(&self, v: &[C64]) -> f64 {
        v.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn op_norm(&self, m: &Matrix) -> f64 {
        max_row_sum(m)
    }

    fn log_norm(&self, m: &Matrix) -> f64 {
        (0..m.rows())
            .map(|i| m[(i, i)].re + (0..m.cols()).filter(|&j| j != i).map(|j| m[(i, j)].norm()).sum::<f64>())
            .reduce(f64::max)
            .unwrap_or(0.0)
    }

    fn dual(&self) -> NormKind {
        NormKind::L1
    }

    fn hermitian_idempotent_onto(&self, r: &SubspaceBasis, tol: &ToleranceProfile) -> Result<Matrix> {
        coordinate_projector(self.kind(), r, tol)
    }
}

impl BanachNorm for L2Norm {
    fn kind(&self) -> NormKind {
        NormKind::L2
    }

    fn vector_norm(&self, v: &[C64]) -> f64 {
        v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn op_norm(&self, m: &Matrix) -> f64 {
        if m.rows() == 0 || m.cols() == 0 {
            return 0.0;
        }
        let gram = &m.adjoint() * m;
        hermitian_eigenvalues(&gram).last().copied().unwrap_or(0.0).max(0.0).sqrt()
    }

    fn log_norm(&self, m: &Matrix) -> f64 {
        hermitian_eigenvalues(m).last().copied().unwrap_or(0.0)
    }

    fn dual(&self) -> NormKind {
        NormKind::L2
    }

    fn hermitian_idempotent_onto(&self, r: &SubspaceBasis, _tol: &ToleranceProfile) -> Result<Matrix> {
        Ok(r.orthogonal_projector())
    }
}

pub fn op_norm(m: &Matrix, k: NormKind) -> f64 {
    k.strategy().op_norm(m)
}

pub fn log_norm(m: &Matrix, k: NormKind) -> Result<f64> {
    m.ensure_square()?;
    Ok(k.strategy().log_norm(m))
}

pub fn dual_of(k: NormKind) -> NormKind {
    k.dual()
}

/// Name-keyed collection of norm strategies.
#[derive(Debug, Default)]
pub struct NormRegistry {
    entries: Vec<(String, Arc<dyn BanachNorm>)>,
}

impl NormRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry holding `l1`, `l2` and `linf`.
    pub fn with_builtins() -> Self {
        let mut reg = Self::new();
        reg.register(Arc::new(L1Norm));
        reg.register(Arc::new(L2Norm));
        reg.register(Arc::new(LinfNorm));
        reg
    }

    /// Registers under the strategy's own name; a later registration replaces an
    /// earlier one with the same name.
    pub fn register(&mut self, norm: Arc<dyn BanachNorm>) {
        let name = norm.name().to_string();
        self.register_as(name, norm);
    }

    pub fn register_as(&mut self, name: impl Into<String>, norm: Arc<dyn BanachNorm>) {
        let name = name.into().to_ascii_lowercase();
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = norm,
            None => self.entries.push((name, norm)),
        }
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn BanachNorm>> {
        let name = name.to_ascii_lowercase();
        self.entries.iter().find(|(n, _)| *n == name).map(|(_, s)| Arc::clone(s))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }
}

/// Process-wide registry of the built-in norms.
pub fn registry() -> &'static NormRegistry {
    static REGISTRY: OnceLock<NormRegistry> = OnceLock::new();
    REGISTRY.get_or_init(NormRegistry::with_builtins)
}
