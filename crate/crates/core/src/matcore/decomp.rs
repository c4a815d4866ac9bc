use super::matrix::{c, Matrix, C64};
use super::subspace::SubspaceBasis;
use super::tolerance::ToleranceProfile;

/// Householder QR with column pivoting: `a · Π = Q · R`, with `Q` unitary and square.
///
/// `perm[j]` is the original index of the column that ended up in position `j`.
#[derive(Debug, Clone)]
pub struct PivotedQr {
    pub q: Matrix,
    pub r: Matrix,
    pub perm: Vec<usize>,
}

impl PivotedQr {
    pub fn new(a: &Matrix) -> Self {
        let (m, n) = a.shape();
        let mut r = a.clone();
        let mut q = Matrix::identity(m);
        let mut perm: Vec<usize> = (0..n).collect();

        for k in 0..m.min(n) {
            let (best, best_norm) = (k..n)
                .map(|j| (j, (k..m).map(|i| r[(i, j)].norm_sqr()).sum::<f64>()))
                .fold((k, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
            if best_norm <= 0.0 {
                break;
            }
            r.swap_cols(k, best);
            perm.swap(k, best);

            let mut v: Vec<C64> = (k..m).map(|i| r[(i, k)]).collect();
            let xnorm = best_norm.sqrt();
            let phase = if v[0].norm() > 0.0 { v[0] / v[0].norm() } else { c(1.0, 0.0) };
            let alpha = -phase * xnorm;
            v[0] -= alpha;
            let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if vnorm == 0.0 {
                continue;
            }
            for z in v.iter_mut() {
                *z /= vnorm;
            }

            for j in k..n {
                let s: C64 = v.iter().enumerate().map(|(l, vl)| vl.conj() * r[(k + l, j)]).sum();
                for (l, vl) in v.iter().enumerate() {
                    r[(k + l, j)] -= *vl * s * 2.0;
                }
            }
            for i in 0..m {
                let s: C64 = v.iter().enumerate().map(|(l, vl)| q[(i, k + l)] * vl).sum();
                for (l, vl) in v.iter().enumerate() {
                    q[(i, k + l)] -= s * vl.conj() * 2.0;
                }
            }
            r[(k, k)] = alpha;
            for i in k + 1..m {
                r[(i, k)] = c(0.0, 0.0);
            }
        }
        PivotedQr { q, r, perm }
    }

    /// Numerical rank: leading diagonal entries of `R` above both `rel_tol · |R₀₀|` and
    /// `abs_tol`.
    pub fn rank(&self, rel_tol: f64, abs_tol: f64) -> usize {
        let k = self.r.rows().min(self.r.cols());
        if k == 0 {
            return 0;
        }
        let lead = self.r[(0, 0)].norm();
        if lead == 0.0 {
            return 0;
        }
        let floor = (rel_tol * lead).max(abs_tol);
        (0..k).take_while(|&i| self.r[(i, i)].norm() > floor).count()
    }
}

/// Rank, null space and range of a matrix.
#[derive(Debug, Clone)]
pub struct RankNullRange {
    pub rank: usize,
    pub nullspace: SubspaceBasis,
    pub range: SubspaceBasis,
}

/// Computes rank, an orthonormal null-space basis and an orthonormal range basis.
///
/// The range comes from the leading columns of a pivoted QR of `m`; the null space
/// is the trailing block of a pivoted QR of `m*`, truncated at the same rank.
pub fn rank_nullspace_range(m: &Matrix, tol: &ToleranceProfile) -> RankNullRange {
    let (rows, cols) = m.shape();
    let qr = PivotedQr::new(m);
    let rank = qr.rank(tol.rank_rel_tol, tol.zero_abs_tol);
    let range = SubspaceBasis::from_orthonormal(qr.q.columns(0..rank));

    let qr_adj = PivotedQr::new(&m.adjoint());
    let nullspace = SubspaceBasis::from_orthonormal(qr_adj.q.columns(rank.min(cols)..cols));
    debug_assert_eq!(range.ambient_dim(), rows);
    RankNullRange { rank, nullspace, range }
}

pub fn rank(m: &Matrix, tol: &ToleranceProfile) -> usize {
    PivotedQr::new(m).rank(tol.rank_rel_tol, tol.zero_abs_tol)
}

/// Eigenvalues of a hermitian matrix in ascending order (cyclic Jacobi on the real
/// symmetric embedding `[[X, -Y], [Y, X]]` of `H = X + iY`).
///
/// Only the hermitian part of the input is used.
pub fn hermitian_eigenvalues(h: &Matrix) -> Vec<f64> {
    let n = h.rows();
    assert!(h.is_square(), "hermitian_eigenvalues needs a square matrix");
    if n == 0 {
        return Vec::new();
    }
    let dim = 2 * n;
    let mut a = vec![0.0f64; dim * dim];
    for i in 0..n {
        for j in 0..n {
            let z = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            a[i * dim + j] = z.re;
            a[(i + n) * dim + (j + n)] = z.re;
            a[i * dim + (j + n)] = -z.im;
            a[(i + n) * dim + j] = z.im;
        }
    }
    let frob: f64 = a.iter().map(|x| x * x).sum();
    for _sweep in 0..100 {
        let off: f64 = (0..dim)
            .flat_map(|p| (p + 1..dim).map(move |q| (p, q)))
            .map(|(p, q)| a[p * dim + q] * a[p * dim + q])
            .sum();
        if off <= 1e-32 * frob || off == 0.0 {
            break;
        }
        for p in 0..dim {
            for q in p + 1..dim {
                let apq = a[p * dim + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * dim + q] - a[p * dim + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                for k in 0..dim {
                    let akp = a[k * dim + p];
                    let akq = a[k * dim + q];
                    a[k * dim + p] = cs * akp - sn * akq;
                    a[k * dim + q] = sn * akp + cs * akq;
                }
                for k in 0..dim {
                    let apk = a[p * dim + k];
                    let aqk = a[q * dim + k];
                    a[p * dim + k] = cs * apk - sn * aqk;
                    a[q * dim + k] = sn * apk + cs * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..dim).map(|i| a[i * dim + i]).collect();
    eig.sort_by(|x, y| x.total_cmp(y));
    // every eigenvalue of H appears twice in the embedding
    eig.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect()
}
