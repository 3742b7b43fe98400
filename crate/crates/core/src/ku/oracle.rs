//! Homotopy of a smash of two summands read off the long exact sequence of
//! the cofiber sequence `S^e ku --n--> S^e ku --> S^e ku/n`, smashed with the
//! other factor. Kernels and cokernels of multiplication by `n` are found by
//! enumerating the cyclic group, so nothing here uses the gcd rewrite.

use super::{KuSummand, SummandKind};
use crate::graded::FinAbGroup;

/// A cyclic group: `Infinite` is `Z`, `Finite(m)` is `Z/m` (`m = 1` is zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cyclic {
    Infinite,
    Finite(u64),
}

impl Cyclic {
    fn to_group(self) -> FinAbGroup {
        match self {
            Cyclic::Infinite => FinAbGroup::free(1),
            Cyclic::Finite(m) => FinAbGroup::cyclic(m),
        }
    }
}

fn summand_homotopy(s: &KuSummand, d: i64) -> Cyclic {
    let shifted = d - s.degree() as i64;
    if shifted < 0 || shifted % 2 != 0 {
        return Cyclic::Finite(1);
    }
    match s.kind() {
        SummandKind::Free => Cyclic::Infinite,
        SummandKind::Mod(m) => Cyclic::Finite(m),
    }
}

/// (kernel, cokernel) of multiplication by `n` on a cyclic group.
fn multiplication(n: u64, group: Cyclic) -> (Cyclic, Cyclic) {
    match group {
        Cyclic::Infinite => (Cyclic::Finite(1), Cyclic::Finite(n)),
        Cyclic::Finite(m) => {
            let kernel = (0..m).filter(|x| (x * n).is_multiple_of(m)).count() as u64;
            let mut hit = vec![false; m as usize];
            for x in 0..m {
                hit[((x * n) % m) as usize] = true;
            }
            let image = hit.iter().filter(|&&h| h).count() as u64;
            (Cyclic::Finite(kernel), Cyclic::Finite(m / image))
        }
    }
}

/// `pi_d(a ^ b)` computed from the long exact sequence.
///
/// For `a = S^e ku/n` the sequence gives
/// `0 -> coker(n on pi_{d-e} b) -> pi_d(a ^ b) -> ker(n on pi_{d-e-1} b) -> 0`.
/// The two outer terms live in degrees of opposite parity relative to `b`,
/// so at most one of them is nonzero and there is no extension problem.
pub fn smash_oracle(a: &KuSummand, b: &KuSummand, d: i64) -> FinAbGroup {
    match (a.kind(), b.kind()) {
        (SummandKind::Free, _) => summand_homotopy(b, d - a.degree() as i64).to_group(),
        (SummandKind::Mod(n), _) => {
            let e = a.degree() as i64;
            let (_, coker) = multiplication(n, summand_homotopy(b, d - e));
            let (ker, _) = multiplication(n, summand_homotopy(b, d - e - 1));
            coker.to_group().direct_sum(&ker.to_group())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(d: u32, n: u64) -> KuSummand {
        KuSummand::modn(d, n).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(smash_oracle(&md(0, 2), &md(0, 2), 0), FinAbGroup::cyclic(2));
        assert_eq!(smash_oracle(&md(0, 2), &md(0, 2), 1), FinAbGroup::cyclic(2));
        for d in 0..10 {
            assert!(smash_oracle(&md(0, 2), &md(0, 3), d).is_zero());
        }
        assert_eq!(smash_oracle(&KuSummand::free(0), &md(0, 5), 4), FinAbGroup::cyclic(5));
        assert!(smash_oracle(&md(0, 2), &md(0, 2), -1).is_zero());
    }

    #[test]
    fn mod_with_free_is_mod() {
        let a = md(1, 4);
        let b = KuSummand::free(2);
        assert!(smash_oracle(&a, &b, 2).is_zero());
        assert_eq!(smash_oracle(&a, &b, 3), FinAbGroup::cyclic(4));
        assert!(smash_oracle(&a, &b, 4).is_zero());
        assert_eq!(smash_oracle(&a, &b, 5), FinAbGroup::cyclic(4));
    }

    #[test]
    fn multiplication_on_cyclic_groups() {
        assert_eq!(multiplication(4, Cyclic::Finite(6)), (Cyclic::Finite(2), Cyclic::Finite(2)));
        assert_eq!(multiplication(3, Cyclic::Finite(9)), (Cyclic::Finite(3), Cyclic::Finite(3)));
        assert_eq!(multiplication(5, Cyclic::Finite(7)), (Cyclic::Finite(1), Cyclic::Finite(1)));
    }
}
