//! Seeded property suite.
//!
//! Every (property, instance) pair gets its own RNG derived from the run seed, so a
//! failing instance can be replayed alone and the report does not depend on how the
//! instances are scheduled.

use std::fmt::Write as _;

use banach_mp::ep::{adjoint_ep, algebra_ep_battery, ep_report, is_ep, mp_is_ep, product_ep_check};
use banach_mp::generate::{self, rng, SuiteRng};
use banach_mp::hermitian::{exp_sweep_defect, is_hermitian};
use banach_mp::matcore::{c, Matrix, ToleranceProfile};
use banach_mp::moorepenrose::{
    adjoint_mp, direct_sum_mp, mp_inverse, mp_l2, verify_mp, verify_mp_lifted, AlgebraContext, Side,
};
use banach_mp::{Error, NormKind};
use rand::Rng;
use serde::Serialize;

use crate::matrix_file::MatrixFile;

/// Above this `herm_tol` the verdicts stop being trustworthy and the run is flagged.
pub const MAX_TRUSTED_HERM_TOL: f64 = 1e-4;
/// Algebra properties lift to `n² × n²` maps; keep them small.
const MAX_ALGEBRA_DIM: usize = 3;

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    pub instances: usize,
    pub size: usize,
    pub norm: NormKind,
    pub tol: ToleranceProfile,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub instance: usize,
    pub seed: u64,
    pub detail: String,
    pub matrices: Vec<(String, MatrixFile)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub skipped: bool,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub command: &'static str,
    pub norm: NormKind,
    pub seed: u64,
    pub instances: usize,
    pub size: usize,
    pub tolerance: ToleranceProfile,
    pub tolerance_flagged: bool,
    pub warnings: Vec<String>,
    pub properties: Vec<PropertyResult>,
    pub all_pass: bool,
}

struct Failed {
    detail: String,
    matrices: Vec<(String, MatrixFile)>,
}

impl Failed {
    fn new(detail: impl Into<String>, matrices: &[(&str, &Matrix)]) -> Self {
        Failed {
            detail: detail.into(),
            matrices: matrices.iter().map(|(l, m)| (l.to_string(), MatrixFile::from(*m))).collect(),
        }
    }
}

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        Failed { detail: e.to_string(), matrices: Vec::new() }
    }
}

type Check = fn(&mut SuiteRng, &SuiteConfig) -> Result<(), Failed>;

struct Property {
    name: &'static str,
    applies: fn(NormKind) -> bool,
    check: Check,
}

fn always(_: NormKind) -> bool {
    true
}

fn euclidean(k: NormKind) -> bool {
    k == NormKind::L2
}

const PROPERTIES: &[Property] = &[
    Property { name: "mp-penrose", applies: always, check: mp_penrose },
    Property { name: "mp-involution", applies: always, check: mp_involution },
    Property { name: "mp-l2-oracle", applies: euclidean, check: mp_oracle },
    Property { name: "hermitian-sweep", applies: always, check: hermitian_sweep },
    Property { name: "ep-characterizations-agree", applies: always, check: ep_agree },
    Property { name: "ep-iff-inverse-ep", applies: always, check: ep_inverse },
    Property { name: "ep-battery-agrees", applies: always, check: ep_battery },
    Property { name: "product-hypotheses", applies: always, check: product_hypotheses },
    Property { name: "duality", applies: always, check: duality },
    Property { name: "lift-inverse", applies: always, check: lift_inverse },
    Property { name: "direct-sum", applies: always, check: direct_sum },
];

pub fn property_names() -> Vec<&'static str> {
    PROPERTIES.iter().map(|p| p.name).collect()
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of one instance of one property.
pub fn instance_seed(seed: u64, property: usize, instance: usize) -> u64 {
    splitmix(seed ^ splitmix(((property as u64) << 32) | instance as u64))
}

fn inverse_of(a: &Matrix, k: NormKind, tol: &ToleranceProfile) -> Result<Matrix, Failed> {
    mp_inverse(a, k, tol)?.into_inverse().map_err(|e| Failed::new(e.to_string(), &[("a", a)]))
}

fn mp_penrose(g: &mut SuiteRng, cfg: &SuiteConfig) -> Result<(), Failed> {
    let a = generate::mixed_instance(g, cfg.norm, cfg.size);
    let x = inverse_of(&a, cfg.norm, &cfg.tol)?;
    if !verify_mp(&a, &x, cfg.norm, &cfg.tol)? {
        return Err(Failed::new("constructed inverse fails verification", &[("a", &a), ("a†", &x)]));
    }
    Ok(())
}

fn mp_involution(g: &mut SuiteRng, cfg: &SuiteConfig) -> Result<(), Failed> {
    let a = generate::mixed_instance(g, cfg.norm, cfg.size);
    let x = inverse_of(&a, cfg.norm, &cfg.tol)?;
    let back = inverse_of(&x, cfg.norm, &cfg.tol)?;
    if !cfg.tol.close(&back, &a) {
        let detail = format!("(a†)† differs from a by {:e}", back.max_abs_diff(&a));
        return Err(Failed::new(detail, &[("a", &a), ("a†", &x), ("(a†)†", &back)]));
    }
    Ok(())
}

fn mp_oracle(g: &mut SuiteRng, cfg: &SuiteConfig) -> Result<(), Failed> {
    let r = g.gen_range(0..=cfg.size);
    let a = generate::with_singular_values(g, cfg.size, r);
    let x = inverse_of(&a, NormKind::L2, &cfg.tol)?;
    let oracle = mp_l2(&a);
    if !cfg.tol.close(&x, &oracle) {
        let detail = format!("differs from the SVD inverse by {:e}", x.max_abs_diff(&oracle));
        return Err(Failed::new(detail, &[("a", &a), ("a†", &x), ("oracle", &oracle)]));
    }
    Ok(())
}

fn hermitian_sweep(g: &mut SuiteRng, cfg: &SuiteConfig) -> Result<(), Failed> {
    let n = cfg.size;
    let raw = generate::complex_matrix(g, n, n);
    let h = match cfg.norm {
        NormKind::L2 => (&raw + &raw.adjoint()).scale_real(0.5),
        NormKind::L1 | NormKind::Linf => Matrix::from_fn(n, n, |i, j| if i == j { c(raw[(i, i)].re, 0.0) } else { c(0.0, 0.0) }),
    };
    let v = is_hermitian(&h, cfg.norm, &cfg.tol)?;
    if !v.is_hermitian || v.sweep_max_defect > 10.0 * cfg.tol.herm_tol {
        let detail = format!("hermitian input judged {} with sweep defect {:e}", v.is_hermitian, v.sweep_max_defect);
        return Err(Failed::new(detail, &[("h", &h)]));
    }
    let v = is_hermitian(&raw, cfg.norm, &cfg.tol)?;
    let sweep = exp_sweep_defect(&raw, cfg.norm, 201, 10.0)?;
    if v.is_hermitian || sweep <= 10.0 * cfg.tol.herm_tol {
        let detail = format!("generic input judged {} with sweep defect {sweep:e}", v.is_hermitian);
        return Err(Failed::new(detail, &[("a", &raw)]));
    }
    Ok(())
}

fn ep_agree(g: &mut SuiteRng, cfg: &SuiteConfig) -> Result<(), Failed> {
    let a = generate::mixed_instance(g, cfg.norm, cfg.size);
    let r = ep_report(&a, cfg.norm, &cfg.tol)?;
    if !r.flags.agree() {
        return Err(Failed::new(format!("characterizations disagree: {:?}", r.flags), &[("a", &a), ("a†", &r.mp_inverse)]));
    }
    Ok(())
}

fn ep_inverse(g: &mut SuiteRng, cfg: &SuiteConfig) -> Result<(), Failed> {
    let a = generate::mixed_instance(g, cfg.norm, cfg.size);
    let direct = is_ep(&a, cfg.norm, &cfg.tol)?;
    let inverse = mp_is_ep(&a, cfg.norm, &cfg.tol)?;
    if direct.is_ep != inverse {
        let detail = format!("a is EP: {}, a† is EP: {inverse}", direct.is_ep);
        return Err(Failed::new(detail, &[("a", &a), ("a†", &direct.mp_inverse)]));
    }
    Ok(())
}

fn ep_battery(g: &mut SuiteRng, cfg: &SuiteConfig) -> Result<(), Failed> {
    let dim = cfg.size.clamp(1, MAX_ALGEBRA_DIM);
    let ctx = generate::block_context(g, cfg.norm, 1, dim);
    let a = generate::algebra_element(g, &ctx);
    let report = algebra_ep_battery(&a, &ctx, &cfg.tol)?;
    let commute = cfg.tol.close(&(&a * &report.mp_inverse), &(&report.mp_inverse * &a));
    if report.unanimous() != Some(commute) {
        let split: Vec<String> = report.verdicts.iter().map(|(s, v)| format!("{s:?}={v}")).collect();
        let detail = format!("blocks {:?}, aa† = a†a: {commute}, statements: {}", ctx.blocks(), split.join(" "));
        return Err(Failed::new(detail, &[("a", &a), ("a†", &report.mp_inverse)]));
    }
    Ok(())
}

fn product_hypotheses(g: &mut SuiteRng, cfg: &SuiteConfig) -> Result<(), Failed> {
    let (s, t) = generate::hypothesis_pair(g, cfg.norm, cfg.size);
    let r = product_ep_check(&s, &t, cfg.norm, &cfg.tol).map_err(|e| Failed::new(e.to_string(), &[("S", &s), ("T", &t)]))?;
    if !r.as_array().iter().all(|&f| f) {
        return Err(Failed::new(format!("flags {r:?}"), &[("S", &s), ("T", &t)]));
    }
    Ok(())
}

fn duality(g: &mut SuiteRng, cfg: &SuiteConfig) -> Result<(), Failed> {
    let a = generate::mixed_instance(g, cfg.norm, cfg.size);
    adjoint_mp(&a, cfg.norm, &cfg.tol).map_err(|e| Failed::new(e.to_string(), &[("a", &a)]))?;
    let ep = adjoint_ep(&a, cfg.norm, &cfg.tol)?;
    if !ep.agree() {
        return Err(Failed::new(format!("EP under {}: {}, transpose under {}: {}", cfg.norm, ep.primal, cfg.norm.dual(), ep.dual), &[("a", &a)]));
    }
    Ok(())
}

fn lift_inverse(g: &mut SuiteRng, cfg: &SuiteConfig) -> Result<(), Failed> {
    let ctx = AlgebraContext::single(cfg.size.clamp(1, MAX_ALGEBRA_DIM), cfg.norm)?;
    let a = generate::algebra_element(g, &ctx);
    let x = ctx.mp_inverse(&a, &cfg.tol)?.into_inverse()?;
    for side in [Side::Left, Side::Right] {
        let la = ctx.lift(&a, side, &cfg.tol)?;
        let lx = ctx.lift(&x, side, &cfg.tol)?;
        let check = verify_mp_lifted(&ctx, side, &la, &lx, &cfg.tol)?;
        if !check.holds(&cfg.tol) {
            return Err(Failed::new(format!("{side:?}: {check:?}"), &[("a", &a), ("a†", &x)]));
        }
    }
    Ok(())
}

fn direct_sum(g: &mut SuiteRng, cfg: &SuiteConfig) -> Result<(), Failed> {
    let n1 = if cfg.size > 1 { g.gen_range(1..cfg.size) } else { 1 };
    let n2 = cfg.size.saturating_sub(n1).max(1);
    let t1 = generate::mixed_instance(g, cfg.norm, n1);
    let t2 = generate::mixed_instance(g, cfg.norm, n2);
    let r1 = mp_inverse(&t1, cfg.norm, &cfg.tol)?;
    let r2 = mp_inverse(&t2, cfg.norm, &cfg.tol)?;
    direct_sum_mp(&t1, &r1, &t2, &r2, cfg.norm, &cfg.tol).map_err(|e| Failed::new(e.to_string(), &[("t1", &t1), ("t2", &t2)]))?;
    Ok(())
}

pub fn run(cfg: &SuiteConfig) -> SuiteReport {
    let mut warnings = Vec::new();
    if cfg.instances == 0 {
        warnings.push("no instances requested; every property passes vacuously".to_string());
    }
    let tolerance_flagged = cfg.tol.herm_tol > MAX_TRUSTED_HERM_TOL;
    if tolerance_flagged {
        warnings.push(format!(
            "tolerance {:e} exceeds {MAX_TRUSTED_HERM_TOL:e}; verdicts are unreliable and the run cannot succeed",
            cfg.tol.herm_tol
        ));
    }

    let properties: Vec<PropertyResult> = PROPERTIES
        .iter()
        .enumerate()
        .map(|(pi, p)| {
            if !(p.applies)(cfg.norm) {
                return PropertyResult { name: p.name, checked: 0, failures: 0, skipped: true, passed: true, counterexample: None };
            }
            let mut failures = 0;
            let mut counterexample = None;
            for i in 0..cfg.instances {
                let seed = instance_seed(cfg.seed, pi, i);
                if let Err(f) = (p.check)(&mut rng(seed), cfg) {
                    failures += 1;
                    counterexample.get_or_insert(Counterexample { instance: i, seed, detail: f.detail, matrices: f.matrices });
                }
            }
            PropertyResult { name: p.name, checked: cfg.instances, failures, skipped: false, passed: failures == 0, counterexample }
        })
        .collect();

    let all_pass = properties.iter().all(|p| p.passed);
    SuiteReport {
        command: "suite",
        norm: cfg.norm,
        seed: cfg.seed,
        instances: cfg.instances,
        size: cfg.size,
        tolerance: cfg.tol,
        tolerance_flagged,
        warnings,
        properties,
        all_pass,
    }
}

impl SuiteReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite: norm {}, seed {}, {} instances of size {}, herm_tol {:e}",
            self.norm, self.seed, self.instances, self.size, self.tolerance.herm_tol
        );
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        for p in &self.properties {
            let status = if p.skipped {
                "skip"
            } else if p.passed {
                "pass"
            } else {
                "FAIL"
            };
            let _ = writeln!(out, "{status} {} ({} checked, {} failed)", p.name, p.checked, p.failures);
            if let Some(ce) = &p.counterexample {
                let _ = writeln!(out, "  first failure: instance {} (seed {}): {}", ce.instance, ce.seed, ce.detail);
                for (label, m) in &ce.matrices {
                    let _ = writeln!(out, "  {label} = {}", serde_json::to_string(m).expect("plain data serializes"));
                }
            }
        }
        let _ = writeln!(out, "{}", if self.all_pass { "all properties pass" } else { "some properties failed" });
        out
    }
}
