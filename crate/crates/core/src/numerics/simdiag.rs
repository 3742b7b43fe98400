//! Simultaneous unitary diagonalization of commuting unitary matrices, and
//! the map sending a commuting pair to its multiset of joint eigenvalues.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::eigen::{hermitian_eigen, DEFAULT_JACOBI_TOL};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimDiagOptions {
    /// Tolerance on unitarity and commutator of the inputs.
    pub input_tol: f64,
    /// Jacobi off-diagonal target, relative to the Frobenius norm.
    pub jacobi_tol: f64,
    /// Required off-diagonal norm of the conjugated outputs.
    pub diagonal_tol: f64,
    /// Eigenvalues of the random Hermitian combination closer than this are
    /// treated as one cluster and refined.
    pub cluster_gap: f64,
    pub max_depth: usize,
    pub seed: u64,
}

impl Default for SimDiagOptions {
    fn default() -> Self {
        SimDiagOptions {
            input_tol: 1e-8,
            jacobi_tol: DEFAULT_JACOBI_TOL,
            diagonal_tol: 1e-8,
            cluster_gap: 1e-6,
            max_depth: 5,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SimDiag {
    #[serde(skip)]
    pub u: ComplexMatrix,
    pub unitarity_residual: f64,
    /// Larger of the off-diagonal norms of `u* a u` and `u* b u`.
    pub diagonality_residual: f64,
    /// Deepest refinement level that was needed.
    pub depth: usize,
    pub options: SimDiagOptions,
}

fn check_unitary(name: &str, m: &ComplexMatrix, tol: f64) -> Result<()> {
    let r = m.unitarity_residual();
    if r > tol {
        return Err(Error::InvalidInput(format!("{name} is not unitary: |{name}*{name} - I|_F = {r:e}")));
    }
    Ok(())
}

/// Finds a unitary `u` making `u* a u` and `u* b u` diagonal.
///
/// A random real combination of the Hermitian parts of `a` and `b` is
/// diagonalized; joint eigenspaces stay together only when the combination
/// has (numerically) repeated eigenvalues, and those clusters are refined
/// recursively with fresh coefficients.
pub fn simultaneous_diag(a: &ComplexMatrix, b: &ComplexMatrix, opts: &SimDiagOptions) -> Result<SimDiag> {
    if a.dim() != b.dim() {
        return Err(Error::InvalidInput(format!(
            "dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    check_unitary("A", a, opts.input_tol)?;
    check_unitary("B", b, opts.input_tol)?;
    let comm = a.commutator_norm(b);
    if comm > opts.input_tol {
        return Err(Error::InvalidInput(format!("matrices do not commute: |AB - BA|_F = {comm:e}")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut depth = 0;
    let u = refine(a, b, 0, &mut depth, &mut rng, opts)?;

    let da = (&(&u.adjoint() * a) * &u).off_diagonal_norm();
    let db = (&(&u.adjoint() * b) * &u).off_diagonal_norm();
    let diagonality_residual = da.max(db);
    if diagonality_residual > opts.diagonal_tol {
        return Err(Error::Numeric(format!(
            "simultaneous diagonalization left off-diagonal norm {diagonality_residual:e}"
        )));
    }
    Ok(SimDiag {
        unitarity_residual: u.unitarity_residual(),
        diagonality_residual,
        depth,
        u,
        options: *opts,
    })
}

fn refine(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    level: usize,
    deepest: &mut usize,
    rng: &mut ChaCha8Rng,
    opts: &SimDiagOptions,
) -> Result<ComplexMatrix> {
    let n = a.dim();
    let settled = 0.1 * opts.diagonal_tol;
    if n == 1 || (a.off_diagonal_norm() <= settled && b.off_diagonal_norm() <= settled) {
        return Ok(ComplexMatrix::identity(n));
    }
    if level > opts.max_depth {
        return Err(Error::Numeric(format!(
            "degenerate joint eigenspace of size {n} did not split within {} refinements",
            opts.max_depth
        )));
    }
    *deepest = (*deepest).max(level);

    let (ra, ia) = a.hermitian_parts();
    let (rb, ib) = b.hermitian_parts();
    let mut h = ComplexMatrix::zeros(n);
    for part in [&ra, &ia, &rb, &ib] {
        let c: f64 = rng.random_range(-1.0..1.0);
        h = &h + &part.scale(Complex64::new(c, 0.0));
    }
    let eig = hermitian_eigen(&h, opts.jacobi_tol)?;
    let mut v = eig.vectors;

    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eig.values[end] - eig.values[end - 1] <= opts.cluster_gap {
            end += 1;
        }
        if end - start > 1 {
            let cols: Vec<usize> = (start..end).collect();
            let ab = a.compress(&v, &cols);
            let bb = b.compress(&v, &cols);
            let w = refine(&ab, &bb, level + 1, deepest, rng, opts)?;
            let k = cols.len();
            let mut block = vec![Complex64::new(0.0, 0.0); n * k];
            for r in 0..n {
                for j in 0..k {
                    block[r * k + j] = (0..k).map(|i| v[(r, cols[i])] * w[(i, j)]).sum();
                }
            }
            for r in 0..n {
                for j in 0..k {
                    v[(r, cols[j])] = block[r * k + j];
                }
            }
        }
        start = end;
    }
    Ok(v)
}

/// Angle of a unit complex number in `[0, 2pi)`.
pub fn angle(z: Complex64) -> f64 {
    let t = z.arg();
    let t = if t < 0.0 { t + TAU } else { t };
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// An unordered multiset of points `(e^{i theta}, e^{i phi})` on the torus.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPairMultiset {
    /// `(theta, phi)` in `[0, 2pi)^2`, sorted lexicographically.
    pub pairs: Vec<(f64, f64)>,
}

impl EigenPairMultiset {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Complex64, Complex64)>) -> Self {
        Self::from_angles(pairs.into_iter().map(|(x, y)| (angle(x), angle(y))))
    }

    pub fn from_angles(angles: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut pairs: Vec<(f64, f64)> = angles
            .into_iter()
            .map(|(t, p)| (t.rem_euclid(TAU) % TAU, p.rem_euclid(TAU) % TAU))
            .collect();
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
        EigenPairMultiset { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// A commuting pair of diagonal unitaries realising this multiset. Any
    /// unitary conjugate is an equally good preimage.
    pub fn diagonal_section(&self) -> (ComplexMatrix, ComplexMatrix) {
        let a: Vec<Complex64> = self.pairs.iter().map(|&(t, _)| Complex64::from_polar(1.0, t)).collect();
        let b: Vec<Complex64> = self.pairs.iter().map(|&(_, p)| Complex64::from_polar(1.0, p)).collect();
        (ComplexMatrix::from_diagonal(&a), ComplexMatrix::from_diagonal(&b))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TorusMap {
    pub points: EigenPairMultiset,
    pub diagonalization: SimDiag,
}

/// Sends a commuting pair of unitaries to the multiset of its joint
/// eigenvalues, paired through shared eigenvectors.
pub fn torus_moduli_map(a: &ComplexMatrix, b: &ComplexMatrix, opts: &SimDiagOptions) -> Result<TorusMap> {
    let diag = simultaneous_diag(a, b, opts)?;
    let uh = diag.u.adjoint();
    let da = (&(&uh * a) * &diag.u).diagonal();
    let db = (&(&uh * b) * &diag.u).diagonal();
    Ok(TorusMap {
        points: EigenPairMultiset::from_pairs(da.into_iter().zip(db)),
        diagonalization: diag,
    })
}

/// Eigenvalues of a single unitary matrix, as angles in `[0, 2pi)`, sorted.
pub fn unitary_spectrum(a: &ComplexMatrix, opts: &SimDiagOptions) -> Result<Vec<f64>> {
    let id = ComplexMatrix::identity(a.dim());
    let map = torus_moduli_map(a, &id, opts)?;
    let mut angles: Vec<f64> = map.points.pairs.into_iter().map(|(t, _)| t).collect();
    angles.sort_by(f64::total_cmp);
    Ok(angles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(t: f64) -> Complex64 {
        Complex64::from_polar(1.0, t)
    }

    fn conj(v: &ComplexMatrix, d: &ComplexMatrix) -> ComplexMatrix {
        &(v * d) * &v.adjoint()
    }

    #[test]
    fn identity_pair() {
        let id = ComplexMatrix::identity(3);
        let r = simultaneous_diag(&id, &id, &SimDiagOptions::default()).unwrap();
        assert!(r.unitarity_residual < 1e-12);
        assert!(r.diagonality_residual < 1e-12);
        let map = torus_moduli_map(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2), &SimDiagOptions::default()).unwrap();
        assert_eq!(map.points.pairs, vec![(0.0, 0.0), (0.0, 0.0)]);
    }

    #[test]
    fn already_diagonal_pair() {
        let i = Complex64::new(0.0, 1.0);
        let a = ComplexMatrix::from_diagonal(&[i, -i]);
        let b = ComplexMatrix::from_diagonal(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
        let map = torus_moduli_map(&a, &b, &SimDiagOptions::default()).unwrap();
        assert_eq!(map.diagonalization.diagonality_residual, 0.0);
        let expected = EigenPairMultiset::from_pairs([(i, Complex64::new(1.0, 0.0)), (-i, Complex64::new(-1.0, 0.0))]);
        for (x, y) in map.points.pairs.iter().zip(&expected.pairs) {
            assert!((x.0 - y.0).abs() < 1e-15 && (x.1 - y.1).abs() < 1e-15);
        }
    }

    #[test]
    fn degenerate_factors_split_by_partner() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let v = ComplexMatrix::random_unitary(3, &mut rng);
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let a = conj(&v, &ComplexMatrix::from_diagonal(&[i, -i, one]));
        let b = conj(&v, &ComplexMatrix::from_diagonal(&[one, -one, -one]));
        let r = simultaneous_diag(&a, &b, &SimDiagOptions::default()).unwrap();
        assert!(r.diagonality_residual <= 1e-8);
        assert!(r.unitarity_residual <= 1e-9);
    }

    #[test]
    fn clustered_combination_triggers_refinement() {
        // cluster_gap larger than every eigenvalue gap forces the whole
        // space into one cluster at the top level
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let v = ComplexMatrix::random_unitary(4, &mut rng);
        let a = conj(&v, &ComplexMatrix::from_diagonal(&[unit(0.1), unit(0.1), unit(2.0), unit(2.0)]));
        let b = conj(&v, &ComplexMatrix::from_diagonal(&[unit(1.0), unit(3.0), unit(1.0), unit(3.0)]));
        let opts = SimDiagOptions { cluster_gap: 1e-3, ..Default::default() };
        let r = simultaneous_diag(&a, &b, &opts).unwrap();
        assert!(r.diagonality_residual <= 1e-8);
        // a zero diagonality target never settles, so refinement runs out of depth
        let opts = SimDiagOptions { cluster_gap: 10.0, diagonal_tol: 0.0, ..Default::default() };
        assert!(matches!(simultaneous_diag(&a, &b, &opts), Err(Error::Numeric(_))));
    }

    #[test]
    fn rejects_bad_inputs() {
        let opts = SimDiagOptions::default();
        let a = ComplexMatrix::from_diagonal(&[Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)]);
        let id = ComplexMatrix::identity(2);
        assert!(matches!(simultaneous_diag(&a, &id, &opts), Err(Error::InvalidInput(_))));
        let x = ComplexMatrix::from_rows(vec![
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        let z = ComplexMatrix::from_diagonal(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
        assert!(matches!(simultaneous_diag(&x, &z, &opts), Err(Error::InvalidInput(m)) if m.contains("commute")));
        assert!(simultaneous_diag(&id, &ComplexMatrix::identity(3), &opts).is_err());
    }

    #[test]
    fn angles_are_canonical() {
        assert_eq!(angle(Complex64::new(1.0, -0.0)), 0.0);
        assert!((angle(Complex64::new(0.0, -1.0)) - 1.5 * std::f64::consts::PI).abs() < 1e-15);
        let m = EigenPairMultiset::from_angles([(-0.5, TAU + 0.25)]);
        assert!((m.pairs[0].0 - (TAU - 0.5)).abs() < 1e-12);
        assert!((m.pairs[0].1 - 0.25).abs() < 1e-12);
    }

    #[test]
    fn unitary_spectrum_of_rotation() {
        let c = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let j = ComplexMatrix::from_rows(vec![vec![c, -one], vec![one, c]]).unwrap();
        let s = unitary_spectrum(&j, &SimDiagOptions::default()).unwrap();
        assert!((s[0] - 0.5 * std::f64::consts::PI).abs() < 1e-12);
        assert!((s[1] - 1.5 * std::f64::consts::PI).abs() < 1e-12);
    }
}
