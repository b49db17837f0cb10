//! Dense symmetric eigenvalue solvers.

mod jacobi;
mod symmetric;
mod tridiagonal;

pub use jacobi::jacobi_eigenvalues;
pub use symmetric::SymmetricMatrix;
pub use tridiagonal::tridiagonal_ql_eigenvalues;

use crate::error::Result;

/// Default relative convergence threshold for Jacobi sweeps.
pub const JACOBI_TOLERANCE: f64 = 1e-12;

/// Blocks at most this large go to Jacobi under [`EigenMethod::Auto`].
pub const JACOBI_MAX_DIM: usize = 96;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenMethod {
    /// Jacobi for small blocks, Householder + QL above `JACOBI_MAX_DIM`.
    #[default]
    Auto,
    Jacobi,
    TridiagonalQl,
}

/// All eigenvalues of `m`, ascending.
pub fn eigenvalues(m: &SymmetricMatrix, method: EigenMethod, tol: f64) -> Result<Vec<f64>> {
    let mut values = match method {
        EigenMethod::Jacobi => jacobi_eigenvalues(m, tol)?,
        EigenMethod::TridiagonalQl => tridiagonal_ql_eigenvalues(m)?,
        EigenMethod::Auto if m.dim() <= JACOBI_MAX_DIM => jacobi_eigenvalues(m, tol)?,
        EigenMethod::Auto => tridiagonal_ql_eigenvalues(m)?,
    };
    values.sort_by(f64::total_cmp);
    Ok(values)
}
