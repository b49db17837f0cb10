use super::SymmetricMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi rotations. Converged once the off-diagonal Frobenius norm
/// drops below `tol * ||m||_F`.
pub fn jacobi_eigenvalues(m: &SymmetricMatrix, tol: f64) -> Result<Vec<f64>> {
    let n = m.dim();
    let mut a = m.data().to_vec();
    let norm = m.frobenius_norm();
    if n == 0 {
        return Ok(Vec::new());
    }
    let off_norm = |a: &[f64]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += a[i * n + j] * a[i * n + j];
            }
        }
        (2.0 * s).sqrt()
    };

    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) <= tol * norm {
            return Ok((0..n).map(|i| a[i * n + i]).collect());
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    if off_norm(&a) <= tol * norm {
        return Ok((0..n).map(|i| a[i * n + i]).collect());
    }
    Err(Error::NonConvergence {
        dim: n,
        iterations: MAX_SWEEPS,
    })
}
