//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `h[p][q]` with a
//! diagonal unitary and then applies a real plane rotation, so the combined
//! 2x2 transform on columns `(p, q)` is
//!
//! ```text
//! G = [ c      s    ]      w = h[p][q] / |h[p][q]|
//!     [ -s w*  c w* ]
//! ```
//!
//! and `H <- G* H G`, `U <- U G`.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Sweep cap. Jacobi converges quadratically; small matrices need < 10.
pub const MAX_SWEEPS: usize = 64;

/// Absolute Hermitian-ness tolerance, scaled by `max(1, |h|_F)`.
pub const HERMITIAN_TOL: f64 = 1e-8;

/// Default convergence target for the off-diagonal norm relative to `|h|_F`.
pub const DEFAULT_JACOBI_TOL: f64 = 1e-12;

/// Constant in the reconstruction bound `|U* H U - diag|_F <= c tol |H|_F`.
pub const RESIDUAL_FACTOR: f64 = 10.0;

#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `i` is the eigenvector for `values[i]`.
    pub vectors: ComplexMatrix,
    pub sweeps: usize,
}

pub fn hermitian_eigen(h: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    let n = h.dim();
    let norm = h.frobenius_norm();
    let defect = h.hermitian_residual();
    if defect > HERMITIAN_TOL * norm.max(1.0) {
        return Err(Error::InvalidInput(format!(
            "matrix is not Hermitian: |H - H*|_F = {defect:e}"
        )));
    }
    // symmetrize away the admitted defect
    let mut a = (h + &h.adjoint()).scale(Complex64::new(0.5, 0.0));
    let mut u = ComplexMatrix::identity(n);
    let target = tol * norm;
    let mut sweeps = 0;

    while a.off_diagonal_norm() > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::Numeric(format!(
                "Jacobi did not converge in {MAX_SWEEPS} sweeps (off-diagonal {:e})",
                a.off_diagonal_norm()
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut u, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (new, &old) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, new)] = u[(r, old)];
        }
    }
    Ok(HermitianEigen { values, vectors, sweeps })
}

fn rotate(a: &mut ComplexMatrix, u: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.dim();
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let w = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let wc = w.conj();

    // columns: H G
    for i in 0..n {
        let hp = a[(i, p)];
        let hq = a[(i, q)];
        a[(i, p)] = hp * c - hq * wc * s;
        a[(i, q)] = hp * s + hq * wc * c;
    }
    // rows: G* H
    for j in 0..n {
        let hp = a[(p, j)];
        let hq = a[(q, j)];
        a[(p, j)] = hp * c - hq * w * s;
        a[(q, j)] = hp * s + hq * w * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for i in 0..n {
        let up = u[(i, p)];
        let uq = u[(i, q)];
        u[(i, p)] = up * c - uq * wc * s;
        u[(i, q)] = up * s + uq * wc * c;
    }
}
