//! `classify`, `product` and `examples`.

use std::fmt::Write as _;
use std::path::Path;

use banach_mp::ep::{group_inverse, is_ep, product_ep_check, EpFlags, ProductReport};
use banach_mp::hermitian::{is_hermitian, is_idempotent};
use banach_mp::matcore::{Matrix, ToleranceProfile};
use banach_mp::moorepenrose::{mp_inverse, penrose_residuals, MpResult};
use banach_mp::{Error, MpFailure, NormKind};
use serde::Serialize;

use crate::failure::Failure;
use crate::matrix_file::MatrixFile;

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub norm: NormKind,
    pub tol: ToleranceProfile,
}

fn core<T>(subject: &str, r: banach_mp::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::from_core(subject, e))
}

fn show(out: &mut String, label: &str, m: &Matrix) {
    let _ = writeln!(out, "{label}:");
    for line in m.to_string().lines() {
        let _ = writeln!(out, "  {line}");
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HermitianSection {
    pub is_hermitian: bool,
    pub idempotent: bool,
    pub hermitian_idempotent: bool,
    pub log_norm_plus: f64,
    pub log_norm_minus: f64,
    pub sweep_max_defect: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MpSection {
    pub exists: bool,
    pub failure: Option<MpFailure>,
    pub inverse: Option<MatrixFile>,
    pub witness_p: Option<MatrixFile>,
    pub witness_q: Option<MatrixFile>,
    pub axa_minus_a: Option<f64>,
    pub xax_minus_x: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EpSection {
    pub is_ep: bool,
    pub commutator_norm: f64,
    pub flags: EpFlags,
    pub witness_p: Option<MatrixFile>,
    pub witness_q: Option<MatrixFile>,
    pub group_inverse: Option<MatrixFile>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub command: &'static str,
    pub norm: NormKind,
    pub tolerance: ToleranceProfile,
    pub input: MatrixFile,
    pub hermitian: HermitianSection,
    pub moore_penrose: MpSection,
    pub ep: Option<EpSection>,
}

pub fn classify_matrix(m: &Matrix, s: &Settings) -> Result<ClassifyReport, Failure> {
    let k = s.norm;
    let v = core("input", is_hermitian(m, k, &s.tol))?;
    let idempotent = core("input", is_idempotent(m, &s.tol))?;
    let hermitian = HermitianSection {
        is_hermitian: v.is_hermitian,
        idempotent,
        hermitian_idempotent: v.is_hermitian && idempotent,
        log_norm_plus: v.log_norm_plus,
        log_norm_minus: v.log_norm_minus,
        sweep_max_defect: v.sweep_max_defect,
    };

    let (moore_penrose, ep) = match core("input", mp_inverse(m, k, &s.tol))? {
        MpResult::Missing(f) => (
            MpSection {
                exists: false,
                failure: Some(f),
                inverse: None,
                witness_p: None,
                witness_q: None,
                axa_minus_a: None,
                xax_minus_x: None,
            },
            None,
        ),
        MpResult::Exists(w) => {
            let res = core("input", penrose_residuals(m, &w.inverse))?;
            let report = core("input", is_ep(m, k, &s.tol))?;
            let group = match group_inverse(m, &s.tol) {
                Ok(g) => Some(MatrixFile::from(&g)),
                Err(Error::NoGroupInverse { .. }) => None,
                Err(e) => return Err(Failure::from_core("input", e)),
            };
            let ep = EpSection {
                is_ep: report.is_ep,
                commutator_norm: report.commutator_norm,
                flags: report.flags,
                witness_p: report.witness_p.as_ref().map(MatrixFile::from),
                witness_q: report.witness_q.as_ref().map(MatrixFile::from),
                group_inverse: group,
            };
            let mp = MpSection {
                exists: true,
                failure: None,
                inverse: Some(MatrixFile::from(&w.inverse)),
                witness_p: Some(MatrixFile::from(&w.witness_p)),
                witness_q: Some(MatrixFile::from(&w.witness_q)),
                axa_minus_a: Some(res.axa_minus_a),
                xax_minus_x: Some(res.xax_minus_x),
            };
            (mp, Some(ep))
        }
    };
    Ok(ClassifyReport {
        command: "classify",
        norm: k,
        tolerance: s.tol,
        input: MatrixFile::from(m),
        hermitian,
        moore_penrose,
        ep,
    })
}

pub fn classify(path: &Path, s: &Settings) -> Result<ClassifyReport, Failure> {
    let m = MatrixFile::read(path)?;
    if !m.is_square() {
        return Err(Failure::Precondition(format!("{}: matrix must be square, got {}x{}", path.display(), m.rows(), m.cols())));
    }
    classify_matrix(&m, s)
}

fn matrix_of(f: &MatrixFile) -> Matrix {
    f.to_matrix().expect("built from a valid matrix")
}

impl ClassifyReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "norm: {}", self.norm);
        show(&mut out, "input", &matrix_of(&self.input));
        let h = &self.hermitian;
        let _ = writeln!(
            out,
            "hermitian: {} (mu(iA) = {:e}, mu(-iA) = {:e}, sweep defect = {:e})",
            h.is_hermitian, h.log_norm_plus, h.log_norm_minus, h.sweep_max_defect
        );
        let _ = writeln!(out, "idempotent: {}", h.idempotent);
        let _ = writeln!(out, "hermitian idempotent: {}", h.hermitian_idempotent);
        let mp = &self.moore_penrose;
        match (&mp.inverse, mp.failure) {
            (Some(x), _) => {
                let _ = writeln!(out, "moore-penrose inverse: exists");
                show(&mut out, "inverse", &matrix_of(x));
                let _ = writeln!(
                    out,
                    "residuals: |axa - a| = {:e}, |xax - x| = {:e}",
                    mp.axa_minus_a.unwrap_or(0.0),
                    mp.xax_minus_x.unwrap_or(0.0)
                );
            }
            (None, Some(f)) => {
                let _ = writeln!(out, "moore-penrose inverse: none ({f})");
            }
            (None, None) => {}
        }
        if let Some(ep) = &self.ep {
            let _ = writeln!(out, "EP: {} (commutator norm {:e})", ep.is_ep, ep.commutator_norm);
            let f = ep.flags;
            let _ = writeln!(
                out,
                "  aa† = a†a: {}, N(a) = N(a†): {}, R(a) = R(a†): {}, invertible witness: {}",
                f.ep, f.nullspace_eq, f.range_eq, f.witness_found
            );
            if let Some(p) = &ep.witness_p {
                show(&mut out, "witness P (a† = Pa = aP)", &matrix_of(p));
            }
            if let Some(q) = &ep.witness_q {
                show(&mut out, "witness Q (a = Qa† = a†Q)", &matrix_of(q));
            }
            match &ep.group_inverse {
                Some(g) => show(&mut out, "group inverse", &matrix_of(g)),
                None => {
                    let _ = writeln!(out, "group inverse: none");
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductCommandReport {
    pub command: &'static str,
    pub norm: NormKind,
    pub tolerance: ToleranceProfile,
    pub s: MatrixFile,
    pub t: MatrixFile,
    pub s_inverse: MatrixFile,
    pub t_inverse: MatrixFile,
    pub st_inverse: MatrixFile,
    pub flags: ProductReport,
}

/// Requires `m` to be square and EP, returning its inverse; failures name `label`.
fn require_ep(label: &str, m: &Matrix, s: &Settings) -> Result<Matrix, Failure> {
    if !m.is_square() {
        return Err(Failure::Precondition(format!("{label}: matrix must be square")));
    }
    let r = core(label, is_ep(m, s.norm, &s.tol))?;
    if !r.is_ep {
        return Err(Failure::Precondition(format!(
            "{label} is not EP under {} (commutator norm {:e})",
            s.norm, r.commutator_norm
        )));
    }
    Ok(r.mp_inverse)
}

pub fn product_matrices(sm: &Matrix, tm: &Matrix, s: &Settings) -> Result<ProductCommandReport, Failure> {
    let s_inv = require_ep("S", sm, s)?;
    let t_inv = require_ep("T", tm, s)?;
    if sm.shape() != tm.shape() {
        return Err(Failure::Precondition(format!("S is {:?} but T is {:?}", sm.shape(), tm.shape())));
    }
    let st_inv = core("ST", mp_inverse(&(sm * tm), s.norm, &s.tol))?;
    let st_inv = core("ST", st_inv.into_inverse())?;
    let flags = core("S, T", product_ep_check(sm, tm, s.norm, &s.tol))?;
    Ok(ProductCommandReport {
        command: "product",
        norm: s.norm,
        tolerance: s.tol,
        s: sm.into(),
        t: tm.into(),
        s_inverse: (&s_inv).into(),
        t_inverse: (&t_inv).into(),
        st_inverse: (&st_inv).into(),
        flags,
    })
}

pub fn product(path_s: &Path, path_t: &Path, s: &Settings) -> Result<ProductCommandReport, Failure> {
    let sm = MatrixFile::read(path_s)?;
    let tm = MatrixFile::read(path_t)?;
    product_matrices(&sm, &tm, s)
}

impl ProductCommandReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "norm: {}", self.norm);
        show(&mut out, "S", &matrix_of(&self.s));
        show(&mut out, "T", &matrix_of(&self.t));
        show(&mut out, "(ST)†", &matrix_of(&self.st_inverse));
        let f = &self.flags;
        for (label, v) in [
            ("(I - TT†)ST = 0", f.hyp_range),
            ("ST(I - S†S) = 0", f.hyp_null),
            ("N(ST) = N(S) + N(T)", f.null_sum_eq),
            ("R(ST) = R(S) ∩ R(T)", f.range_cap_eq),
            ("ST is EP", f.product_ep),
            ("R(ST) ⊆ R(T)", f.range_in_t),
            ("N(S) ⊆ N(ST)", f.null_s_in_product),
        ] {
            let _ = writeln!(out, "{label}: {v}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct GalleryVerdict {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hermitian: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mp_exists: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<MpFailure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<MatrixFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ep: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_ep: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hyp_range: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub norm: NormKind,
    pub recorded: GalleryVerdict,
    pub computed: GalleryVerdict,
    pub matches: bool,
    pub witnesses: Vec<(String, MatrixFile)>,
    pub defects: Vec<(String, f64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GalleryReport {
    pub command: &'static str,
    pub tolerance: ToleranceProfile,
    pub entries: Vec<GalleryEntry>,
    pub all_match: bool,
}

fn half_projector() -> Matrix {
    Matrix::from_real_rows(&[[0.5, -0.5], [-0.5, 0.5]])
}

fn shear() -> Matrix {
    Matrix::from_real_rows(&[[1.0, -1.0], [0.0, 0.0]])
}

fn single_entry(
    name: &'static str,
    m: &Matrix,
    k: NormKind,
    recorded: GalleryVerdict,
    tol: &ToleranceProfile,
) -> Result<GalleryEntry, Failure> {
    let s = Settings { norm: k, tol: *tol };
    let report = classify_matrix(m, &s)?;
    let mut witnesses = vec![("input".to_string(), MatrixFile::from(m))];
    let mp = &report.moore_penrose;
    for (label, w) in [("inverse", &mp.inverse), ("a†a", &mp.witness_p), ("aa†", &mp.witness_q)] {
        if let Some(w) = w {
            witnesses.push((label.to_string(), w.clone()));
        }
    }
    let computed = GalleryVerdict {
        hermitian: Some(report.hermitian.is_hermitian),
        mp_exists: Some(mp.exists),
        failure: mp.failure,
        inverse: mp.inverse.clone(),
        ep: report.ep.as_ref().map(|e| e.is_ep),
        ..GalleryVerdict::default()
    };
    let inverse_ok = match (&recorded.inverse, &computed.inverse) {
        (Some(r), Some(c)) => tol.close(&matrix_of(r), &matrix_of(c)),
        (None, None) => true,
        _ => false,
    };
    let matches = inverse_ok
        && recorded.hermitian == computed.hermitian
        && recorded.mp_exists == computed.mp_exists
        && recorded.failure == computed.failure
        && recorded.ep == computed.ep;
    let h = &report.hermitian;
    Ok(GalleryEntry {
        name,
        norm: k,
        recorded,
        computed,
        matches,
        witnesses,
        defects: vec![
            ("log norm of iA".to_string(), h.log_norm_plus),
            ("log norm of -iA".to_string(), h.log_norm_minus),
            ("exp sweep defect".to_string(), h.sweep_max_defect),
        ],
    })
}

/// The fixed gallery: the half projector and the shear under ℓ2 and ℓ1, and a pair of
/// EP matrices whose product is not EP.
pub fn examples(tol: &ToleranceProfile) -> Result<GalleryReport, Failure> {
    let t = half_projector();
    let s = shear();
    let shear_inverse = Matrix::from_real_rows(&[[0.5, 0.0], [-0.5, 0.0]]);
    let mut entries = vec![
        single_entry(
            "half projector (1/2)[[1,-1],[-1,1]]",
            &t,
            NormKind::L2,
            GalleryVerdict {
                hermitian: Some(true),
                mp_exists: Some(true),
                inverse: Some(MatrixFile::from(&t)),
                ep: Some(true),
                ..GalleryVerdict::default()
            },
            tol,
        )?,
        single_entry(
            "half projector (1/2)[[1,-1],[-1,1]]",
            &t,
            NormKind::L1,
            GalleryVerdict {
                hermitian: Some(false),
                mp_exists: Some(false),
                failure: Some(MpFailure::NullspaceNotRepresentable),
                ..GalleryVerdict::default()
            },
            tol,
        )?,
        single_entry(
            "shear [[1,-1],[0,0]]",
            &s,
            NormKind::L2,
            GalleryVerdict {
                hermitian: Some(false),
                mp_exists: Some(true),
                inverse: Some(MatrixFile::from(&shear_inverse)),
                ep: Some(false),
                ..GalleryVerdict::default()
            },
            tol,
        )?,
        single_entry(
            "shear [[1,-1],[0,0]]",
            &s,
            NormKind::L1,
            GalleryVerdict {
                hermitian: Some(false),
                mp_exists: Some(false),
                failure: Some(MpFailure::NullspaceNotRepresentable),
                ..GalleryVerdict::default()
            },
            tol,
        )?,
    ];

    let ps = Matrix::real_diag(&[1.0, 0.0]);
    let pt = Matrix::from_real_rows(&[[0.5, 0.5], [0.5, 0.5]]);
    let settings = Settings { norm: NormKind::L2, tol: *tol };
    let product = product_matrices(&ps, &pt, &settings)?;
    let recorded = GalleryVerdict { product_ep: Some(false), hyp_range: Some(false), ..GalleryVerdict::default() };
    let computed = GalleryVerdict {
        product_ep: Some(product.flags.product_ep),
        hyp_range: Some(product.flags.hyp_range),
        ..GalleryVerdict::default()
    };
    let st = &ps * &pt;
    let defect = &(&Matrix::identity(2) - &(&pt * &matrix_of(&product.t_inverse))) * &st;
    entries.push(GalleryEntry {
        name: "product of diag(1,0) and (1/2)[[1,1],[1,1]]",
        norm: NormKind::L2,
        matches: recorded == computed,
        recorded,
        computed,
        witnesses: vec![
            ("S".to_string(), product.s.clone()),
            ("T".to_string(), product.t.clone()),
            ("ST".to_string(), MatrixFile::from(&st)),
            ("(ST)†".to_string(), product.st_inverse.clone()),
            ("(I - TT†)ST".to_string(), MatrixFile::from(&defect)),
        ],
        defects: vec![("max |(I - TT†)ST|".to_string(), defect.max_abs())],
    });

    let all_match = entries.iter().all(|e| e.matches);
    Ok(GalleryReport { command: "examples", tolerance: *tol, entries, all_match })
}

impl GalleryReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for (i, e) in self.entries.iter().enumerate() {
            let _ = writeln!(out, "[{}] {} under {}: {}", i + 1, e.name, e.norm, if e.matches { "matches" } else { "MISMATCH" });
            let v = &e.computed;
            let mut parts = Vec::new();
            if let Some(h) = v.hermitian {
                parts.push(format!("hermitian={h}"));
            }
            if let Some(x) = v.mp_exists {
                parts.push(format!("mp_exists={x}"));
            }
            if let Some(f) = v.failure {
                parts.push(format!("failure={f}"));
            }
            if let Some(x) = v.ep {
                parts.push(format!("ep={x}"));
            }
            if let Some(x) = v.product_ep {
                parts.push(format!("product_ep={x}"));
            }
            if let Some(x) = v.hyp_range {
                parts.push(format!("hyp_range={x}"));
            }
            let _ = writeln!(out, "    {}", parts.join(", "));
            for (label, value) in &e.defects {
                let _ = writeln!(out, "    {label} = {:e}", value + 0.0);
            }
            for (label, m) in &e.witnesses {
                let _ = writeln!(out, "    {label}:");
                for line in matrix_of(m).to_string().lines() {
                    let _ = writeln!(out, "      {line}");
                }
            }
        }
        let _ = writeln!(out, "{} entries, all match: {}", self.entries.len(), self.all_match);
        out
    }
}
