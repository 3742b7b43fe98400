//! Unitary representations of surface groups given by generator images:
//! relation defects, `U(1)` character varieties of non-orientable surfaces,
//! and the stable eigenvalue map.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::ComplexMatrix;
use super::simdiag::{unitary_spectrum, SimDiagOptions};
use crate::error::{Error, Result};

/// Standard one-relator presentations (or none, for free groups).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Presentation {
    /// `<a_1..a_k | >`
    Free(u32),
    /// `<a_1, b_1, .., a_g, b_g | [a_1, b_1] .. [a_g, b_g]>`
    Orientable(u32),
    /// `<x_1..x_q | x_1^2 .. x_q^2>`
    NonOrientable(u32),
}

impl Presentation {
    pub fn generator_count(&self) -> usize {
        match *self {
            Presentation::Free(k) => k as usize,
            Presentation::Orientable(g) => 2 * g as usize,
            Presentation::NonOrientable(q) => q as usize,
        }
    }
}

fn check_tuple(matrices: &[ComplexMatrix], presentation: Presentation, tol: f64) -> Result<usize> {
    let want = presentation.generator_count();
    if matrices.len() != want {
        return Err(Error::InvalidInput(format!(
            "{presentation:?} needs {want} generator images, got {}",
            matrices.len()
        )));
    }
    let n = matrices.first().map_or(1, ComplexMatrix::dim);
    for (i, m) in matrices.iter().enumerate() {
        if m.dim() != n {
            return Err(Error::InvalidInput(format!("generator {i} has dimension {} not {n}", m.dim())));
        }
        let r = m.unitarity_residual();
        if r > tol {
            return Err(Error::InvalidInput(format!("generator {i} is not unitary (residual {r:e})")));
        }
    }
    Ok(n)
}

/// `|w(rho) - I|_F` for the defining relator `w`; zero for free groups.
/// Inverses are taken as adjoints.
pub fn relation_defect(matrices: &[ComplexMatrix], presentation: Presentation, tol: f64) -> Result<f64> {
    let n = check_tuple(matrices, presentation, tol)?;
    let id = ComplexMatrix::identity(n);
    let word = match presentation {
        Presentation::Free(_) => return Ok(0.0),
        Presentation::Orientable(_) => matrices.chunks(2).fold(id.clone(), |acc, ab| {
            let (a, b) = (&ab[0], &ab[1]);
            let comm = &(&(a * b) * &a.adjoint()) * &b.adjoint();
            &acc * &comm
        }),
        Presentation::NonOrientable(_) => matrices.iter().fold(id.clone(), |acc, x| &acc * &(x * x)),
    };
    Ok((&word - &id).frobenius_norm())
}

/// A `U(1)` representation of a non-orientable surface group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterPoint {
    pub values: Vec<Complex64>,
}

impl CharacterPoint {
    pub fn new(values: Vec<Complex64>, tol: f64) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::OutOfRange("need at least two crosscaps".into()));
        }
        if let Some(i) = values.iter().position(|z| (z.norm() - 1.0).abs() > tol) {
            return Err(Error::InvalidInput(format!("value {i} is not on the unit circle")));
        }
        let p = Self { values };
        let defect = (p.product().powi(2) - 1.0).norm();
        if defect > tol {
            return Err(Error::InvalidInput(format!("relation fails: |prod x_i^2 - 1| = {defect:e}")));
        }
        Ok(p)
    }

    pub fn product(&self) -> Complex64 {
        self.values.iter().product()
    }

    /// Sign of `prod x_i`, which is forced to be `+1` or `-1`.
    pub fn component(&self) -> i8 {
        if self.product().re >= 0.0 {
            1
        } else {
            -1
        }
    }

    pub fn as_matrices(&self) -> Vec<ComplexMatrix> {
        self.values.iter().map(|&z| ComplexMatrix::from_diagonal(&[z])).collect()
    }

    /// Dimension of the solution set near this point: `q` minus the rank of
    /// the finite-difference Jacobian of `theta -> prod(e^{i theta})^2 - 1`.
    pub fn local_dimension(&self, step: f64) -> usize {
        let q = self.values.len();
        let f = |vals: &[Complex64]| vals.iter().product::<Complex64>().powi(2) - 1.0;
        let base = f(&self.values);
        let cols: Vec<[f64; 2]> = (0..q)
            .map(|i| {
                let mut moved = self.values.clone();
                moved[i] *= Complex64::from_polar(1.0, step);
                let d = (f(&moved) - base) / step;
                [d.re, d.im]
            })
            .collect();
        // singular values of the 2 x q Jacobian from its 2 x 2 Gram matrix
        let (mut g00, mut g01, mut g11) = (0.0, 0.0, 0.0);
        for c in &cols {
            g00 += c[0] * c[0];
            g01 += c[0] * c[1];
            g11 += c[1] * c[1];
        }
        let tr = g00 + g11;
        let disc = ((g00 - g11).powi(2) + 4.0 * g01 * g01).sqrt();
        let (hi, lo) = ((tr + disc) / 2.0, (tr - disc) / 2.0);
        let cutoff = 1e-6 * hi.max(1.0);
        let rank = [hi, lo].iter().filter(|&&s| s > cutoff).count();
        q - rank
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LabeledCharacter {
    pub point: CharacterPoint,
    pub component: i8,
}

/// Samples `Hom(pi_1 N_q, U(1))`, which is the set of `x` in `T^q` with
/// `(x_1 .. x_q)^2 = 1`. The first `q - 1` values are uniform; `x_q` closes
/// the relation on the `+1` branch for even-indexed samples and the `-1`
/// branch for odd-indexed ones, so both components appear once
/// `samples >= 2`.
pub fn u1_characters(q: u32, samples: usize, seed: u64) -> Result<Vec<LabeledCharacter>> {
    if q < 2 {
        return Err(Error::OutOfRange(format!(
            "N({q}) is not aspherical; crosscap number must be at least 2"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|i| {
            let mut values: Vec<Complex64> = (0..q - 1)
                .map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..TAU)))
                .collect();
            let branch = if i % 2 == 0 { 1.0 } else { -1.0 };
            let partial: Complex64 = values.iter().product();
            values.push(Complex64::new(branch, 0.0) / partial);
            let point = CharacterPoint::new(values, 1e-10)?;
            Ok(LabeledCharacter { component: point.component(), point })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct StableEigenvalues {
    /// Component of the representation space, where it is known:
    /// `+1` for the connected orientable and free cases, the sign of
    /// `prod x_i` for non-orientable surfaces at `U(1)`, and `None` for
    /// non-orientable surfaces in higher rank.
    pub component: Option<i8>,
    /// Eigenvalue angles in `[0, 2pi)` of each generator image, sorted.
    pub spectra: Vec<Vec<f64>>,
    pub relation_defect: f64,
}

/// Stable eigenvalue map: unordered eigenvalues of every generator image.
pub fn stable_eigenvalue_map(
    rho: &[ComplexMatrix],
    presentation: Presentation,
    tol: f64,
) -> Result<StableEigenvalues> {
    let defect = relation_defect(rho, presentation, tol)?;
    if defect > tol {
        return Err(Error::InvalidInput(format!(
            "tuple does not satisfy the relation: defect {defect:e}"
        )));
    }
    let opts = SimDiagOptions { input_tol: tol, ..Default::default() };
    let spectra = rho.iter().map(|m| unitary_spectrum(m, &opts)).collect::<Result<Vec<_>>>()?;
    let n = rho.first().map_or(1, ComplexMatrix::dim);
    let component = match presentation {
        Presentation::NonOrientable(_) if n == 1 => {
            let p: Complex64 = rho.iter().map(|m| m[(0, 0)]).product();
            Some(if p.re >= 0.0 { 1 } else { -1 })
        }
        Presentation::NonOrientable(_) => None,
        _ => Some(1),
    };
    Ok(StableEigenvalues { component, spectra, relation_defect: defect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn commuting_pair_has_no_defect() {
        let a = ComplexMatrix::from_diagonal(&[Complex64::from_polar(1.0, 0.3), Complex64::from_polar(1.0, 2.0)]);
        let b = ComplexMatrix::from_diagonal(&[Complex64::from_polar(1.0, 1.1), Complex64::from_polar(1.0, -0.4)]);
        let d = relation_defect(&[a, b], Presentation::Orientable(1), 1e-8).unwrap();
        assert!(d < 1e-15);
    }

    #[test]
    fn identity_tuples() {
        let id = ComplexMatrix::identity(3);
        for p in [Presentation::Orientable(2), Presentation::NonOrientable(3), Presentation::Free(2)] {
            let tuple = vec![id.clone(); p.generator_count()];
            assert_eq!(relation_defect(&tuple, p, 1e-8).unwrap(), 0.0);
        }
    }

    #[test]
    fn random_pair_defect_matches_direct_commutator() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let a = ComplexMatrix::random_unitary(3, &mut rng);
        let b = ComplexMatrix::random_unitary(3, &mut rng);
        let direct = {
            let c = &(&(&a * &b) * &a.adjoint()) * &b.adjoint();
            (&c - &ComplexMatrix::identity(3)).frobenius_norm()
        };
        let d = relation_defect(&[a, b], Presentation::Orientable(1), 1e-8).unwrap();
        assert!((d - direct).abs() < 1e-14);
        assert!(d > 0.1);
    }

    #[test]
    fn relation_defect_errors() {
        let id = ComplexMatrix::identity(2);
        assert!(relation_defect(std::slice::from_ref(&id), Presentation::Orientable(1), 1e-8).is_err());
        let scaled = id.scale(Complex64::new(2.0, 0.0));
        assert!(relation_defect(&[id, scaled], Presentation::NonOrientable(2), 1e-8).is_err());
    }

    #[test]
    fn two_labels_for_each_q() {
        for q in 2..=5 {
            let pts = u1_characters(q, 16, 7).unwrap();
            let labels: BTreeSet<i8> = pts.iter().map(|p| p.component).collect();
            assert_eq!(labels, BTreeSet::from([-1, 1]));
            for p in &pts {
                assert_eq!(p.point.local_dimension(1e-7), (q - 1) as usize);
            }
        }
        assert!(u1_characters(1, 4, 0).is_err());
    }

    #[test]
    fn eigenvalue_map_on_u1_point() {
        let theta: f64 = 0.7;
        let x1 = Complex64::from_polar(1.0, theta);
        let x2 = -Complex64::from_polar(1.0, -theta);
        let p = CharacterPoint::new(vec![x1, x2], 1e-12).unwrap();
        assert_eq!(p.component(), -1);
        let r = stable_eigenvalue_map(&p.as_matrices(), Presentation::NonOrientable(2), 1e-8).unwrap();
        assert_eq!(r.component, Some(-1));
        assert!((r.spectra[0][0] - theta).abs() < 1e-12);
        assert!((r.spectra[1][0] - (std::f64::consts::PI - theta)).abs() < 1e-12);
    }

    #[test]
    fn trivial_representation() {
        let id = ComplexMatrix::identity(2);
        for p in [Presentation::Orientable(1), Presentation::NonOrientable(2)] {
            let r = stable_eigenvalue_map(&vec![id.clone(); p.generator_count()], p, 1e-8).unwrap();
            assert!(r.spectra.iter().flatten().all(|&t| t == 0.0));
            assert_ne!(r.component, Some(-1));
        }
        let one = ComplexMatrix::identity(1);
        let r = stable_eigenvalue_map(&[one.clone(), one], Presentation::NonOrientable(2), 1e-8).unwrap();
        assert_eq!(r.component, Some(1));
    }

    #[test]
    fn free_group_spectra_are_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = ComplexMatrix::random_unitary(3, &mut rng);
        let b = ComplexMatrix::random_unitary(3, &mut rng);
        let r = stable_eigenvalue_map(&[a.clone(), b], Presentation::Free(2), 1e-8).unwrap();
        assert_eq!(r.spectra.len(), 2);
        assert_eq!(r.spectra[0].len(), 3);
        let alone = unitary_spectrum(&a, &SimDiagOptions::default()).unwrap();
        for (x, y) in r.spectra[0].iter().zip(&alone) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn eigenvalue_map_rejects_broken_relation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = ComplexMatrix::random_unitary(2, &mut rng);
        let b = ComplexMatrix::random_unitary(2, &mut rng);
        assert!(stable_eigenvalue_map(&[a, b], Presentation::Orientable(1), 1e-8).is_err());
    }
}
