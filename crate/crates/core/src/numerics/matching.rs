//! Distance on symmetric products of the torus via optimal assignment.

use std::f64::consts::TAU;

use super::simdiag::EigenPairMultiset;
use crate::error::{Error, Result};

/// Arc-length distance on the unit circle.
pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Product (Euclidean) metric on the torus.
pub fn pair_distance(x: (f64, f64), y: (f64, f64)) -> f64 {
    circle_distance(x.0, y.0).hypot(circle_distance(x.1, y.1))
}

/// Minimum-cost perfect matching on a square cost matrix (Hungarian method
/// with potentials, O(n^3)). Returns `assignment[row] = column`.
pub fn min_cost_assignment(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    // 1-based arrays; index 0 is the virtual column
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        owner[0] = row;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        while j0 != 0 {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
        }
    }
    let mut assignment = vec![0; n];
    for j in 1..=n {
        assignment[owner[j] - 1] = j - 1;
    }
    assignment
}

/// Total cost of the best pairing of the two multisets under [`pair_distance`].
pub fn multiset_distance(x: &EigenPairMultiset, y: &EigenPairMultiset) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::InvalidInput(format!(
            "multisets have different sizes {} and {}",
            x.len(),
            y.len()
        )));
    }
    let cost: Vec<Vec<f64>> = x
        .pairs
        .iter()
        .map(|&p| y.pairs.iter().map(|&q| pair_distance(p, q)).collect())
        .collect();
    let assignment = min_cost_assignment(&cost);
    Ok(assignment.iter().enumerate().map(|(i, &j)| cost[i][j]).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_force(cost: &[Vec<f64>]) -> f64 {
        fn go(cost: &[Vec<f64>], row: usize, used: &mut Vec<bool>) -> f64 {
            if row == cost.len() {
                return 0.0;
            }
            let mut best = f64::INFINITY;
            for j in 0..cost.len() {
                if !used[j] {
                    used[j] = true;
                    best = best.min(cost[row][j] + go(cost, row + 1, used));
                    used[j] = false;
                }
            }
            best
        }
        go(cost, 0, &mut vec![false; cost.len()])
    }

    #[test]
    fn hungarian_matches_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for n in 1..=7 {
            for _ in 0..20 {
                let cost: Vec<Vec<f64>> =
                    (0..n).map(|_| (0..n).map(|_| rng.random_range(0.0..10.0)).collect()).collect();
                let a = min_cost_assignment(&cost);
                let got: f64 = a.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
                assert!((got - brute_force(&cost)).abs() < 1e-9);
                let mut seen = a.clone();
                seen.sort();
                assert_eq!(seen, (0..n).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn distance_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x = EigenPairMultiset::from_angles((0..6).map(|_| (rng.random_range(0.0..TAU), rng.random_range(0.0..TAU))));
        assert_eq!(multiset_distance(&x, &x).unwrap(), 0.0);
        let mut shuffled = x.pairs.clone();
        shuffled.reverse();
        let y = EigenPairMultiset { pairs: shuffled };
        assert_eq!(multiset_distance(&x, &y).unwrap(), 0.0);

        let eps = 1e-3;
        let p = EigenPairMultiset::from_angles([(0.0, 0.0)]);
        let q = EigenPairMultiset::from_angles([(eps, 0.0)]);
        assert!((multiset_distance(&p, &q).unwrap() - eps).abs() < 1e-15);
        let q = EigenPairMultiset::from_angles([(TAU - eps, 0.0)]);
        assert!((multiset_distance(&p, &q).unwrap() - eps).abs() < 1e-12);
    }

    #[test]
    fn size_mismatch() {
        let p = EigenPairMultiset::from_angles([(0.0, 0.0)]);
        let q = EigenPairMultiset::from_angles([(0.0, 0.0), (1.0, 1.0)]);
        assert!(multiset_distance(&p, &q).is_err());
    }
}
