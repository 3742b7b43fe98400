//! Cross-checks between the deformation K-theory side and the topology of the
//! classifying space.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::GroupExpr;
use crate::graded::{rational_ranks, torsion_f2_rank_by_parity, FinAbGroup};
use crate::group::{cohomology, kdef, ktheory, moduli_homotopy, qcd};
use crate::ku::SummandCounts;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Isomorphic,
    NotIsomorphic,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub degree: u32,
    pub kdef: FinAbGroup,
    pub ktheory: FinAbGroup,
    pub isomorphic: bool,
    pub expected: Expectation,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub expr: String,
    pub qcd: u32,
    pub rows: Vec<ComparisonRow>,
    pub passed: bool,
}

fn require_surface_product(e: &GroupExpr) -> Result<()> {
    e.validate()?;
    match e.factors().into_iter().find(|f| matches!(f, GroupExpr::Free(_))) {
        Some(f) => Err(Error::FreeGroupFactor(f.to_string())),
        None => Ok(()),
    }
}

/// Compares `pi_d kdef(e)` with `K^{-d}` of the classifying space for
/// `d` from `qcd - 2` (clamped at 0) to `qcd + 4`. The groups must agree
/// above `qcd - 2` and differ at `qcd - 2`.
pub fn atiyah_segal_compare(e: &GroupExpr) -> Result<ComparisonReport> {
    require_surface_product(e)?;
    let top = qcd(e)?;
    let module = kdef(e)?;
    let k = ktheory(e)?;
    let rows: Vec<ComparisonRow> = (top.saturating_sub(2)..=top + 4)
        .map(|d| {
            let lhs = module.homotopy(i64::from(d));
            let rhs = k.get(d);
            let isomorphic = lhs == rhs;
            let expected = if top >= 2 && d == top - 2 {
                Expectation::NotIsomorphic
            } else {
                Expectation::Isomorphic
            };
            ComparisonRow {
                degree: d,
                passed: isomorphic == (expected == Expectation::Isomorphic),
                kdef: lhs,
                ktheory: rhs,
                isomorphic,
                expected,
            }
        })
        .collect();
    Ok(ComparisonReport {
        expr: e.to_string(),
        qcd: top,
        passed: rows.iter().all(|r| r.passed),
        rows,
    })
}

/// The four summand-count recurrences for adjoining one non-orientable
/// surface factor whose deformation K-theory has `r1_sigma` odd free
/// summands (one even free summand and one `ku/2` in degree 0).
pub fn nonorientable_extension(y: SummandCounts, r1_sigma: usize) -> SummandCounts {
    SummandCounts {
        r0: y.r0 + y.r1 * r1_sigma,
        r1: y.r1 + y.r0 * r1_sigma,
        t0: 2 * y.t0 + (r1_sigma + 1) * y.t1 + y.r0,
        t1: 2 * y.t1 + (r1_sigma + 1) * y.t0 + y.r1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckItem {
    pub id: &'static str,
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

impl CheckItem {
    fn new(id: &'static str, name: &'static str, ok: bool, detail: String) -> Self {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        CheckItem { id, name, status, detail }
    }

    fn not_applicable(id: &'static str, name: &'static str, why: &str) -> Self {
        CheckItem { id, name, status: CheckStatus::NotApplicable, detail: why.to_string() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub expr: String,
    pub items: Vec<CheckItem>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.status != CheckStatus::Fail)
    }

    pub fn item(&self, id: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.id == id)
    }
}

/// Runs the rational, torsion-parity, orientable, recurrence and vanishing
/// checks on one product of surfaces and circles.
pub fn consistency_suite(e: &GroupExpr) -> Result<SuiteReport> {
    require_surface_product(e)?;
    let top = qcd(e)?;
    let coh = cohomology(e)?;
    let reduced = coh.reduced();
    let scan = coh.max_degree().unwrap_or(0).max(top) + 2;
    let moduli: Vec<FinAbGroup> =
        (0..=scan).map(|d| moduli_homotopy(e, d)).collect::<Result<_>>()?;
    let coh_ranks = rational_ranks(&coh);

    let mut items = Vec::new();

    let rank_mismatch: Vec<u32> = (1..=scan)
        .filter(|&d| moduli[d as usize].free_rank() != coh_ranks.get(&d).copied().unwrap_or(0))
        .collect();
    items.push(CheckItem::new(
        "a",
        "rational homotopy equals reduced rational cohomology",
        rank_mismatch.is_empty(),
        if rank_mismatch.is_empty() {
            format!("free ranks agree in degrees 1..={scan}")
        } else {
            format!("free ranks differ in degrees {rank_mismatch:?}")
        },
    ));

    let coh_parity = torsion_f2_rank_by_parity(&reduced);
    let moduli_parity = moduli.iter().enumerate().fold((0, 0), |(ev, od), (d, g)| {
        if d % 2 == 0 {
            (ev + g.torsion_count(), od)
        } else {
            (ev, od + g.torsion_count())
        }
    });
    items.push(CheckItem::new(
        "b",
        "torsion parity sums agree",
        coh_parity == moduli_parity,
        format!(
            "cohomology even/odd {}/{}, moduli even/odd {}/{}",
            coh_parity.0, coh_parity.1, moduli_parity.0, moduli_parity.1
        ),
    ));

    if e.is_orientable_product() {
        let bad: Vec<u32> = (0..=scan)
            .filter(|&d| {
                let m = &moduli[d as usize];
                !m.is_torsion_free() || *m != reduced.get(d)
            })
            .collect();
        items.push(CheckItem::new(
            "c",
            "orientable product: moduli homotopy is reduced integral homology",
            bad.is_empty(),
            if bad.is_empty() {
                format!("torsion-free and equal to reduced cohomology in degrees 0..={scan}")
            } else {
                format!("mismatch in degrees {bad:?}")
            },
        ));
    } else {
        items.push(CheckItem::not_applicable(
            "c",
            "orientable product: moduli homotopy is reduced integral homology",
            "product has a non-orientable factor",
        ));
    }

    let factors = e.factors();
    if let Some((last, init)) = factors.split_last().filter(|(_, init)| !init.is_empty()) {
        let y = GroupExpr::product(init.iter().map(|f| (*f).clone()))?;
        let y_counts = kdef(&y)?.summand_counts();
        let sigma_counts = kdef(last)?.summand_counts();
        let actual = kdef(e)?.summand_counts();
        let predicted = match last {
            GroupExpr::NonOrientable(_) => nonorientable_extension(y_counts, sigma_counts.r1),
            _ => y_counts.smash(&sigma_counts),
        };
        items.push(CheckItem::new(
            "d",
            "summand-count recurrences",
            actual == predicted,
            format!("{y} x {last}: expanded {actual:?}, recurrence {predicted:?}"),
        ));
    } else {
        items.push(CheckItem::not_applicable(
            "d",
            "summand-count recurrences",
            "single factor",
        ));
    }

    let nonzero_above: Vec<u32> =
        (top + 1..=scan).filter(|&d| !moduli[d as usize].is_zero()).collect();
    items.push(CheckItem::new(
        "e",
        "moduli homotopy vanishes above the rational cohomological dimension",
        nonzero_above.is_empty(),
        format!("qcd = {top}, checked degrees {}..={scan}", top + 1),
    ));

    Ok(SuiteReport { expr: e.to_string(), items })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn e(s: &str) -> GroupExpr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn compare_genus_two() {
        let r = atiyah_segal_compare(&e("M(2)")).unwrap();
        assert!(r.passed);
        let d0 = &r.rows[0];
        assert_eq!(d0.degree, 0);
        assert_eq!(d0.kdef, FinAbGroup::free(1));
        assert_eq!(d0.ktheory, FinAbGroup::free(2));
        assert!(!d0.isomorphic);
        assert!(r.rows[1..].iter().all(|row| row.isomorphic));
    }

    #[test]
    fn compare_klein_bottle_iso_everywhere() {
        let r = atiyah_segal_compare(&e("N(2)")).unwrap();
        assert!(r.passed);
        assert_eq!(r.rows[0].degree, 0);
        assert!(r.rows.iter().all(|row| row.isomorphic));
    }

    #[test]
    fn compare_klein_squared() {
        let r = atiyah_segal_compare(&e("N(2)^2")).unwrap();
        assert!(r.passed);
        assert_eq!(r.rows[0].kdef, FinAbGroup::new(1, [2; 3]));
        assert_eq!(r.rows[0].ktheory, FinAbGroup::new(2, [2; 3]));
    }

    #[test]
    fn compare_rejects_free_factors() {
        assert!(matches!(atiyah_segal_compare(&e("F(2)")), Err(Error::FreeGroupFactor(_))));
        assert!(matches!(consistency_suite(&e("M(1) x F(2)")), Err(Error::FreeGroupFactor(_))));
    }

    #[test]
    fn suite_on_torus() {
        let r = consistency_suite(&e("M(1)")).unwrap();
        assert!(r.all_passed(), "{r:?}");
        assert_eq!(r.item("c").unwrap().status, CheckStatus::Pass);
        assert_eq!(r.item("d").unwrap().status, CheckStatus::NotApplicable);
    }

    #[test]
    fn suite_on_klein_cubed() {
        let r = consistency_suite(&e("N(2)^3")).unwrap();
        assert!(r.all_passed(), "{r:?}");
        assert!(r.item("b").unwrap().detail.contains("14/14"));
        assert_eq!(r.item("c").unwrap().status, CheckStatus::NotApplicable);
        assert_eq!(r.item("d").unwrap().status, CheckStatus::Pass);
    }

    #[test]
    fn suite_on_mixed_product() {
        let r = consistency_suite(&e("M(2) x N(3)")).unwrap();
        assert!(r.all_passed(), "{r:?}");
    }

    #[test]
    fn crosscap_recurrence_agrees_with_bilinear_rule() {
        let klein = SummandCounts { r0: 1, r1: 1, t0: 1, t1: 0 };
        let mut y = klein;
        for _ in 0..4 {
            let n3 = SummandCounts { r0: 1, r1: 2, t0: 1, t1: 0 };
            assert_eq!(nonorientable_extension(y, 2), y.smash(&n3));
            y = nonorientable_extension(y, 1);
        }
    }
}
