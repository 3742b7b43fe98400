//! Invariants of surface groups, free groups and their products: deformation
//! K-theory, the homotopy of the representation spectrum and of the stable
//! moduli space of flat connections, integral cohomology and complex
//! K-theory of the classifying space.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::expr::GroupExpr;
use crate::graded::{kunneth_integer, kunneth_mod2, FinAbGroup, GradedGroup};
use crate::ku::{KuModule, KuSummand};

fn building_block(e: &GroupExpr) -> KuModule {
    let mut m = KuModule::unit();
    match *e {
        GroupExpr::Integers => m.push_copies(KuSummand::free(1), 1),
        GroupExpr::Free(k) => m.push_copies(KuSummand::free(1), k as usize),
        GroupExpr::Orientable(g) => {
            m.push_copies(KuSummand::free(1), 2 * g as usize);
            m.push_copies(KuSummand::free(2), 1);
        }
        GroupExpr::NonOrientable(q) => {
            m.push_copies(KuSummand::free(1), (q - 1) as usize);
            m.push_copies(KuSummand::modn(0, 2).expect("2 is a valid modulus"), 1);
        }
        GroupExpr::Product(_) => unreachable!("factors are never products"),
    }
    m
}

fn kdef_cache() -> &'static RwLock<HashMap<GroupExpr, KuModule>> {
    static CACHE: OnceLock<RwLock<HashMap<GroupExpr, KuModule>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Deformation K-theory of the group as a wedge of `ku`-module summands,
/// computed without consulting the cache.
pub fn kdef_uncached(e: &GroupExpr) -> Result<KuModule> {
    e.validate()?;
    Ok(e.factors()
        .into_iter()
        .map(building_block)
        .fold(KuModule::unit(), |acc, b| acc.smash(&b)))
}

/// Deformation K-theory of the group, memoized on the normalized expression.
pub fn kdef(e: &GroupExpr) -> Result<KuModule> {
    let key = e.normalized();
    if let Some(m) = kdef_cache().read().ok().and_then(|c| c.get(&key).cloned()) {
        return Ok(m);
    }
    let m = kdef_uncached(&key)?;
    if let Ok(mut c) = kdef_cache().write() {
        c.entry(key).or_insert_with(|| m.clone());
    }
    Ok(m)
}

/// `pi_d` of the representation spectrum: the homotopy of the cofiber of
/// the Bott map on `kdef(e)`.
pub fn rdef_homotopy(e: &GroupExpr, d: u32) -> Result<FinAbGroup> {
    Ok(kdef(e)?.bott_cofiber_homotopy(i64::from(d)))
}

fn require_no_free_factor(e: &GroupExpr) -> Result<()> {
    match e.factors().into_iter().find(|f| matches!(f, GroupExpr::Free(_))) {
        Some(f) => Err(Error::FreeGroupFactor(f.to_string())),
        None => Ok(()),
    }
}

/// `pi_d` of the stable moduli space of flat unitary connections. Agrees
/// with [`rdef_homotopy`] except in degree 0, where the integer recording
/// the rank of the representation is dropped.
pub fn moduli_homotopy(e: &GroupExpr, d: u32) -> Result<FinAbGroup> {
    require_no_free_factor(e)?;
    let g = rdef_homotopy(e, d)?;
    if d > 0 {
        return Ok(g);
    }
    g.without_free_summand().ok_or_else(|| {
        Error::Semantic(format!("pi_0 of the representation spectrum of {e} has no free summand"))
    })
}

/// Integral cohomology of the classifying space (free groups as wedges of circles).
pub fn cohomology(e: &GroupExpr) -> Result<GradedGroup> {
    e.validate()?;
    let z = FinAbGroup::free;
    e.factors().into_iter().try_fold(GradedGroup::from_sequence([z(1)]), |acc, f| {
        let block = match *f {
            GroupExpr::Integers => GradedGroup::from_sequence([z(1), z(1)]),
            GroupExpr::Free(k) => GradedGroup::from_sequence([z(1), z(k as usize)]),
            GroupExpr::Orientable(g) => {
                GradedGroup::from_sequence([z(1), z(2 * g as usize), z(1)])
            }
            GroupExpr::NonOrientable(q) => GradedGroup::from_sequence([
                z(1),
                z((q - 1) as usize),
                FinAbGroup::cyclic(2),
            ]),
            GroupExpr::Product(_) => unreachable!("factors are never products"),
        };
        kunneth_integer(&acc, &block)
    })
}

/// Complex K-theory `K^0 + K^1` of the classifying space, mod-2 graded.
pub fn ktheory(e: &GroupExpr) -> Result<GradedGroup> {
    e.validate()?;
    let z = FinAbGroup::free;
    e.factors().into_iter().try_fold(GradedGroup::mod2(z(1), FinAbGroup::zero()), |acc, f| {
        let block = match *f {
            GroupExpr::Integers => GradedGroup::mod2(z(1), z(1)),
            GroupExpr::Free(k) => GradedGroup::mod2(z(1), z(k as usize)),
            GroupExpr::Orientable(g) => GradedGroup::mod2(z(2), z(2 * g as usize)),
            GroupExpr::NonOrientable(q) => {
                GradedGroup::mod2(FinAbGroup::new(1, [2]), z((q - 1) as usize))
            }
            GroupExpr::Product(_) => unreachable!("factors are never products"),
        };
        kunneth_mod2(&acc, &block)
    })
}

/// Rational cohomological dimension of the classifying space.
pub fn qcd(e: &GroupExpr) -> Result<u32> {
    e.validate()?;
    Ok(e.factors()
        .into_iter()
        .map(|f| match f {
            GroupExpr::Orientable(_) => 2,
            _ => 1,
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::ku::SummandCounts;
    use std::collections::BTreeMap;

    fn e(s: &str) -> GroupExpr {
        parse_expr(s).unwrap()
    }

    fn g(r: usize, t: &[u64]) -> FinAbGroup {
        FinAbGroup::new(r, t.iter().copied())
    }

    #[test]
    fn kdef_blocks() {
        assert_eq!(kdef(&e("M(2)")).unwrap().to_string(), "ku v S ku v S ku v S ku v S ku v S^2 ku");
        assert_eq!(kdef(&e("N(2)")).unwrap().to_string(), "ku v ku/2 v S ku");
        assert_eq!(kdef(&e("F(3)")).unwrap().to_string(), "ku v S ku v S ku v S ku");
        assert_eq!(kdef(&e("Z")).unwrap().to_string(), "ku v S ku");
    }

    #[test]
    fn circle_squared_is_the_torus() {
        assert_eq!(kdef(&e("Z x S1")).unwrap(), kdef(&e("M(1)")).unwrap());
    }

    #[test]
    fn kdef_klein_cubed() {
        let m = kdef(&e("N(2)^3")).unwrap();
        assert_eq!(m.free_by_degree(), BTreeMap::from([(0, 1), (1, 3), (2, 3), (3, 1)]));
        assert_eq!(m.mod_by_degree(2), BTreeMap::from([(0, 7), (1, 14), (2, 7)]));
        assert_eq!(m.summand_counts(), SummandCounts { r0: 4, r1: 4, t0: 14, t1: 14 });
    }

    #[test]
    fn kdef_permutation_invariant_and_cache_agrees() {
        let a = e("N(3) x M(1) x S1");
        let b = e("S1 x N(3) x M(1)");
        assert_eq!(kdef(&a).unwrap(), kdef(&b).unwrap());
        assert_eq!(kdef(&a).unwrap(), kdef_uncached(&b).unwrap());
    }

    #[test]
    fn rdef_examples() {
        for genus in 1..=4u32 {
            let m = GroupExpr::Orientable(genus);
            let got: Vec<_> = (0..4).map(|d| rdef_homotopy(&m, d).unwrap()).collect();
            assert_eq!(got, vec![g(1, &[]), g(2 * genus as usize, &[]), g(1, &[]), g(0, &[])]);
        }
        let n3 = GroupExpr::NonOrientable(3);
        assert_eq!(rdef_homotopy(&n3, 0).unwrap(), g(1, &[2]));
        assert_eq!(rdef_homotopy(&n3, 1).unwrap(), g(2, &[]));
        let cube = e("N(2)^3");
        let got: Vec<_> = (0..5).map(|d| rdef_homotopy(&cube, d).unwrap()).collect();
        assert_eq!(
            got,
            vec![g(1, &[2; 7]), g(3, &[2; 14]), g(3, &[2; 7]), g(1, &[]), g(0, &[])]
        );
    }

    #[test]
    fn moduli_examples() {
        assert!(moduli_homotopy(&e("M(3)"), 0).unwrap().is_zero());
        assert_eq!(moduli_homotopy(&e("N(4)"), 0).unwrap(), g(0, &[2]));
        assert_eq!(moduli_homotopy(&e("N(2)^2"), 0).unwrap(), g(0, &[2; 3]));
        assert_eq!(moduli_homotopy(&e("M(1)"), 1).unwrap(), g(2, &[]));
        assert!(matches!(
            moduli_homotopy(&e("M(1) x F(2)"), 1),
            Err(Error::FreeGroupFactor(f)) if f == "F(2)"
        ));
    }

    #[test]
    fn cohomology_examples() {
        assert_eq!(cohomology(&e("M(1)")).unwrap().to_string(), "(Z, Z^2, Z)");
        assert_eq!(cohomology(&e("N(3)")).unwrap().to_string(), "(Z, Z^2, Z/2)");
        assert_eq!(cohomology(&e("F(2)")).unwrap().to_string(), "(Z, Z^2)");
        let cube = cohomology(&e("N(2)^3")).unwrap();
        assert_eq!(
            cube,
            GradedGroup::from_sequence([
                g(1, &[]),
                g(3, &[]),
                g(3, &[2; 3]),
                g(1, &[2; 9]),
                g(0, &[2; 10]),
                g(0, &[2; 5]),
                g(0, &[2]),
            ])
        );
    }

    #[test]
    fn ktheory_examples() {
        assert_eq!(ktheory(&e("M(2)")).unwrap(), GradedGroup::mod2(g(2, &[]), g(4, &[])));
        assert_eq!(ktheory(&e("N(2)")).unwrap(), GradedGroup::mod2(g(1, &[2]), g(1, &[])));
        assert_eq!(
            ktheory(&e("N(2)^2")).unwrap(),
            GradedGroup::mod2(g(2, &[2; 3]), g(2, &[2; 3]))
        );
        assert_eq!(ktheory(&e("F(3)")).unwrap(), GradedGroup::mod2(g(1, &[]), g(3, &[])));
    }

    #[test]
    fn qcd_examples() {
        assert_eq!(qcd(&e("N(5)")).unwrap(), 1);
        assert_eq!(qcd(&e("M(3) x S1")).unwrap(), 3);
        assert_eq!(qcd(&e("N(2)^3")).unwrap(), 3);
        assert_eq!(qcd(&e("F(4)")).unwrap(), 1);
    }

    #[test]
    fn rdef_vanishes_above_qcd_and_not_at_it() {
        for s in ["M(2)", "N(3)", "N(2)^3", "M(1) x N(2) x S1", "M(2)^2"] {
            let x = e(s);
            let top = qcd(&x).unwrap();
            assert!(!rdef_homotopy(&x, top).unwrap().is_zero(), "{s}");
            for d in top + 1..top + 5 {
                assert!(rdef_homotopy(&x, d).unwrap().is_zero(), "{s} at {d}");
            }
        }
    }
}
