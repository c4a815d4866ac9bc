use super::matrix::Matrix;
use crate::error::Result;

const TAYLOR_ORDER: u32 = 18;

fn inf_norm(m: &Matrix) -> f64 {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring around a degree-18 Taylor polynomial.
///
/// The input is scaled by `2^-s` so that its max-row-sum norm is at most 1/2, the
/// truncated series is evaluated by Horner's rule, and the result squared `s` times.
/// `exp(0)` is exactly the identity.
pub fn mat_exp(m: &Matrix) -> Result<Matrix> {
    let n = m.ensure_square()?;
    let norm = inf_norm(m);
    let mut squarings = 0i32;
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as i32;
        while norm / 2f64.powi(squarings) > 0.5 {
            squarings += 1;
        }
    }
    let scaled = m.scale_real(2f64.powi(-squarings));

    // I + A(I + A/2(I + A/3(...)))
    let id = Matrix::identity(n);
    let mut acc = id.clone();
    for k in (1..=TAYLOR_ORDER).rev() {
        acc = &id + &(&scaled * &acc).scale_real(1.0 / k as f64);
    }
    for _ in 0..squarings {
        acc = &acc * &acc;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::matrix::c;
    use std::f64::consts::PI;

    #[test]
    fn zero_gives_identity_exactly() {
        assert_eq!(mat_exp(&Matrix::zeros(2, 2)).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn diagonal_phase() {
        let m = Matrix::diag(&[c(0.0, PI), c(0.0, 0.0)]);
        let e = mat_exp(&m).unwrap();
        assert!(e.max_abs_diff(&Matrix::real_diag(&[-1.0, 1.0])) < 1e-12);
    }

    #[test]
    fn nilpotent_series_terminates() {
        let m = Matrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        let e = mat_exp(&m).unwrap();
        assert!(e.max_abs_diff(&Matrix::from_real_rows(&[[1.0, 1.0], [0.0, 1.0]])) < 1e-15);
    }

    #[test]
    fn rejects_rectangular() {
        assert!(mat_exp(&Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn large_norm_rotation() {
        // exp(t [[0,-1],[1,0]]) is a rotation by t
        let t = 37.0;
        let m = Matrix::from_real_rows(&[[0.0, -t], [t, 0.0]]);
        let e = mat_exp(&m).unwrap();
        let expect = Matrix::from_real_rows(&[[t.cos(), -t.sin()], [t.sin(), t.cos()]]);
        assert!(e.max_abs_diff(&expect) < 1e-11);
    }
}
