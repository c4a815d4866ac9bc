use crate::matcore::Matrix;

const DEFAULT_REL_TOL: f64 = 1e-10;

/// Full-rank factorization `a = C · F` from the reduced row echelon form: `C` holds the
/// pivot columns of `a`, `F` the nonzero rows of its RREF.
pub fn rank_factorization(a: &Matrix, rel_tol: f64) -> (Matrix, Matrix) {
    let (m, n) = a.shape();
    let mut r = a.clone();
    let scale = a.max_abs();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let (p, mag) = (row..m)
            .map(|i| (i, r[(i, col)].norm()))
            .fold((row, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if mag <= rel_tol * scale || mag == 0.0 {
            for i in row..m {
                r[(i, col)] = 0.0.into();
            }
            continue;
        }
        r.swap_rows(p, row);
        let d = r[(row, col)].inv();
        for j in 0..n {
            r[(row, j)] *= d;
        }
        for i in 0..m {
            if i == row {
                continue;
            }
            let f = r[(i, col)];
            if f.norm() == 0.0 {
                continue;
            }
            for j in 0..n {
                let v = r[(row, j)];
                r[(i, j)] -= f * v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    let rank = pivots.len();
    let c = Matrix::from_fn(m, rank, |i, j| a[(i, pivots[j])]);
    let f = Matrix::from_fn(rank, n, |i, j| r[(i, j)]);
    (c, f)
}

/// Euclidean Moore-Penrose inverse via a full-rank factorization `a = C F`:
/// `a† = F*(F F*)⁻¹ (C* C)⁻¹ C*`. Works for rectangular input.
pub fn mp_l2(a: &Matrix) -> Matrix {
    mp_l2_with_tol(a, DEFAULT_REL_TOL)
}

pub fn mp_l2_with_tol(a: &Matrix, rel_tol: f64) -> Matrix {
    let (c, f) = rank_factorization(a, rel_tol);
    if c.cols() == 0 {
        return Matrix::zeros(a.cols(), a.rows());
    }
    let ff = (&f * &f.adjoint()).inverse().expect("F has full row rank");
    let cc = (&c.adjoint() * &c).inverse().expect("C has full column rank");
    &(&(&f.adjoint() * &ff) * &cc) * &c.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::c;

    fn penrose_l2(a: &Matrix, x: &Matrix) -> f64 {
        let ax = a * x;
        let xa = x * a;
        [
            (&ax * a).max_abs_diff(a),
            (&xa * x).max_abs_diff(x),
            ax.max_abs_diff(&ax.adjoint()),
            xa.max_abs_diff(&xa.adjoint()),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    #[test]
    fn diagonal() {
        assert!(mp_l2(&Matrix::real_diag(&[2.0, 0.0])).max_abs_diff(&Matrix::real_diag(&[0.5, 0.0])) < 1e-15);
    }

    #[test]
    fn shear() {
        let s = Matrix::from_real_rows(&[[1.0, -1.0], [0.0, 0.0]]);
        let x = mp_l2(&s);
        assert!(x.max_abs_diff(&Matrix::from_real_rows(&[[0.5, 0.0], [-0.5, 0.0]])) < 1e-15);
        assert!(penrose_l2(&s, &x) < 1e-10);
    }

    #[test]
    fn zero() {
        assert_eq!(mp_l2(&Matrix::zeros(2, 3)), Matrix::zeros(3, 2));
    }

    #[test]
    fn rectangular_complex() {
        let a = Matrix::from_rows(&[
            [c(1.0, 1.0), c(2.0, 0.0), c(3.0, -1.0)],
            [c(2.0, 2.0), c(4.0, 0.0), c(6.0, -2.0)],
        ]);
        let (cm, f) = rank_factorization(&a, 1e-10);
        assert_eq!(cm.cols(), 1);
        assert!((&cm * &f).max_abs_diff(&a) < 1e-14);
        assert!(penrose_l2(&a, &mp_l2(&a)) < 1e-10);
    }
}
