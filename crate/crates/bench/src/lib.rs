//! Shared inputs for the benchmarks.

use defkt::numerics::{Complex64, ComplexMatrix};
use defkt::{parse_expr, GroupExpr};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Products of increasing size used by the symbolic benchmarks.
pub fn products() -> Vec<(&'static str, GroupExpr)> {
    ["N(2)^3", "M(2) x N(3) x S1", "N(3)^5", "M(2)^5", "(M(1) x N(2))^3"]
        .into_iter()
        .map(|s| (s, parse_expr(s).expect("fixture parses")))
        .collect()
}

/// A commuting unitary pair `(V diag(a) V*, V diag(b) V*)` of dimension `n`.
pub fn commuting_pair(n: usize, seed: u64) -> (ComplexMatrix, ComplexMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = ComplexMatrix::random_unitary(n, &mut rng);
    let mut diag = || -> ComplexMatrix {
        let d: Vec<Complex64> = (0..n)
            .map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
            .collect();
        ComplexMatrix::from_diagonal(&d)
    };
    let (a, b) = (diag(), diag());
    (&(&v * &a) * &v.adjoint(), &(&v * &b) * &v.adjoint())
}
