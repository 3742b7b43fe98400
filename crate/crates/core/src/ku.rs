//! Modules over connective K-theory built from suspended free summands
//! `S^d ku` and mod-n summands `S^d ku/n`.
//!
//! A [`KuModule`] is a finite wedge of such summands kept as a sorted
//! multiset. The smash product over `ku` is computed by distributing over
//! wedges and rewriting each pair of summands:
//!
//! ```text
//! S^a ku   ^ S^b ku   = S^(a+b) ku
//! S^a ku   ^ S^b ku/n = S^(a+b) ku/n
//! S^a ku/n ^ S^b ku/m = S^(a+b) ku/g  v  S^(a+b+1) ku/g,   g = gcd(n, m)
//! ```
//!
//! with both terms of the last rule vanishing when `g = 1`. The rules are
//! confluent, so the result does not depend on evaluation order.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{gcd, FinAbGroup};

pub mod oracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SummandKind {
    Free,
    Mod(u64),
}

/// One wedge summand `S^degree ku` or `S^degree ku/n`.
///
/// Ordering is by degree, then free before mod-n, then modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KuSummand {
    degree: u32,
    kind: SummandKind,
}

impl KuSummand {
    pub fn free(degree: u32) -> Self {
        KuSummand { degree, kind: SummandKind::Free }
    }

    pub fn modn(degree: u32, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidSummand(format!(
                "modulus must be at least 2, got {modulus}"
            )));
        }
        Ok(KuSummand { degree, kind: SummandKind::Mod(modulus) })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn kind(&self) -> SummandKind {
        self.kind
    }

    pub fn modulus(&self) -> Option<u64> {
        match self.kind {
            SummandKind::Free => None,
            SummandKind::Mod(n) => Some(n),
        }
    }

    /// Cyclic group sitting in each even degree of this summand's homotopy.
    pub(crate) fn coefficient(&self) -> FinAbGroup {
        match self.kind {
            SummandKind::Free => FinAbGroup::free(1),
            SummandKind::Mod(n) => FinAbGroup::cyclic(n),
        }
    }

    pub fn homotopy(&self, d: i64) -> FinAbGroup {
        let shifted = d - self.degree as i64;
        if shifted >= 0 && shifted % 2 == 0 {
            self.coefficient()
        } else {
            FinAbGroup::zero()
        }
    }

    fn smash(&self, other: &KuSummand) -> Vec<KuSummand> {
        let degree = self.degree + other.degree;
        match (self.kind, other.kind) {
            (SummandKind::Free, k) | (k, SummandKind::Free) => vec![KuSummand { degree, kind: k }],
            (SummandKind::Mod(n), SummandKind::Mod(m)) => match gcd(n, m) {
                1 => Vec::new(),
                g => vec![
                    KuSummand { degree, kind: SummandKind::Mod(g) },
                    KuSummand { degree: degree + 1, kind: SummandKind::Mod(g) },
                ],
            },
        }
    }
}

impl fmt::Display for KuSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            0 => {}
            1 => f.write_str("S ")?,
            d => write!(f, "S^{d} ")?,
        }
        f.write_str("ku")?;
        if let SummandKind::Mod(n) = self.kind {
            write!(f, "/{n}")?;
        }
        Ok(())
    }
}

/// A finite wedge of [`KuSummand`]s. The empty wedge is the zero module.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct KuModule {
    summands: BTreeMap<KuSummand, usize>,
}

/// Numbers of free and mod-n summands in even and odd suspension degrees.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SummandCounts {
    pub r0: usize,
    pub r1: usize,
    pub t0: usize,
    pub t1: usize,
}

impl SummandCounts {
    /// Counts of a smash product, given the counts of the factors.
    ///
    /// Valid when every mod-n summand on both sides has the same modulus
    /// (always 2 for surface groups), so that no pair of torsion summands is
    /// annihilated.
    pub fn smash(&self, other: &SummandCounts) -> SummandCounts {
        let a = self;
        let b = other;
        let torsion_pairs = (a.t0 + a.t1) * (b.t0 + b.t1);
        SummandCounts {
            r0: a.r0 * b.r0 + a.r1 * b.r1,
            r1: a.r0 * b.r1 + a.r1 * b.r0,
            t0: a.r0 * b.t0 + a.r1 * b.t1 + a.t0 * b.r0 + a.t1 * b.r1 + torsion_pairs,
            t1: a.r0 * b.t1 + a.r1 * b.t0 + a.t1 * b.r0 + a.t0 * b.r1 + torsion_pairs,
        }
    }
}

impl KuModule {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit module `ku`.
    pub fn unit() -> Self {
        Self::from_summands([KuSummand::free(0)])
    }

    pub fn from_summands(summands: impl IntoIterator<Item = KuSummand>) -> Self {
        let mut m = Self::zero();
        for s in summands {
            m.push(s, 1);
        }
        m
    }

    fn push(&mut self, s: KuSummand, mult: usize) {
        if mult > 0 {
            *self.summands.entry(s).or_default() += mult;
        }
    }

    /// Adds `mult` copies of `s` in place.
    pub fn push_copies(&mut self, s: KuSummand, mult: usize) {
        self.push(s, mult);
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// Total number of summands counted with multiplicity.
    pub fn len(&self) -> usize {
        self.summands.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Distinct summands with their multiplicities, in normal-form order.
    pub fn iter(&self) -> impl Iterator<Item = (&KuSummand, usize)> {
        self.summands.iter().map(|(s, &k)| (s, k))
    }

    /// Summands repeated according to multiplicity, in normal-form order.
    pub fn summands(&self) -> Vec<KuSummand> {
        self.iter().flat_map(|(&s, k)| std::iter::repeat_n(s, k)).collect()
    }

    pub fn multiplicity(&self, s: &KuSummand) -> usize {
        self.summands.get(s).copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.summands.keys().map(KuSummand::degree).max()
    }

    pub fn wedge(&self, other: &KuModule) -> KuModule {
        let mut out = self.clone();
        for (&s, k) in other.iter() {
            out.push(s, k);
        }
        out
    }

    pub fn suspend(&self, shift: u32) -> KuModule {
        KuModule {
            summands: self
                .iter()
                .map(|(s, k)| (KuSummand { degree: s.degree + shift, kind: s.kind }, k))
                .collect(),
        }
    }

    pub fn smash(&self, other: &KuModule) -> KuModule {
        let mut out = KuModule::zero();
        for (a, k) in self.iter() {
            for (b, l) in other.iter() {
                for s in a.smash(b) {
                    out.push(s, k * l);
                }
            }
        }
        out
    }

    /// `pi_d` of the module.
    pub fn homotopy(&self, d: i64) -> FinAbGroup {
        self.iter().map(|(s, k)| s.homotopy(d).power(k)).sum()
    }

    /// `pi_d` of the cofiber of the Bott map `S^2 M -> M`: each summand
    /// contributes its coefficient group exactly in its own degree.
    pub fn bott_cofiber_homotopy(&self, d: i64) -> FinAbGroup {
        self.iter()
            .filter(|(s, _)| s.degree as i64 == d)
            .map(|(s, k)| s.coefficient().power(k))
            .sum()
    }

    pub fn summand_counts(&self) -> SummandCounts {
        let mut c = SummandCounts::default();
        for (s, k) in self.iter() {
            let even = s.degree % 2 == 0;
            match (s.kind, even) {
                (SummandKind::Free, true) => c.r0 += k,
                (SummandKind::Free, false) => c.r1 += k,
                (SummandKind::Mod(_), true) => c.t0 += k,
                (SummandKind::Mod(_), false) => c.t1 += k,
            }
        }
        c
    }

    /// Number of free summands per suspension degree.
    pub fn free_by_degree(&self) -> BTreeMap<u32, usize> {
        self.count_by_degree(|k| k == SummandKind::Free)
    }

    /// Number of mod-n summands per suspension degree, for a fixed modulus.
    pub fn mod_by_degree(&self, modulus: u64) -> BTreeMap<u32, usize> {
        self.count_by_degree(|k| k == SummandKind::Mod(modulus))
    }

    fn count_by_degree(&self, pred: impl Fn(SummandKind) -> bool) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for (s, k) in self.iter().filter(|(s, _)| pred(s.kind)) {
            *out.entry(s.degree).or_default() += k;
        }
        out
    }
}

impl fmt::Display for KuModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.summands().iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" v "))
    }
}

#[derive(Serialize, Deserialize)]
struct SummandRepr {
    degree: u32,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<u64>,
}

impl Serialize for KuModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let reprs: Vec<SummandRepr> = self
            .summands()
            .into_iter()
            .map(|x| SummandRepr {
                degree: x.degree,
                kind: if x.modulus().is_some() { "mod" } else { "free" }.to_string(),
                modulus: x.modulus(),
            })
            .collect();
        reprs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for KuModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let reprs = Vec::<SummandRepr>::deserialize(d)?;
        let mut m = KuModule::zero();
        for r in reprs {
            let s = match (r.kind.as_str(), r.modulus) {
                ("free", None) => KuSummand::free(r.degree),
                ("mod", Some(n)) => KuSummand::modn(r.degree, n).map_err(D::Error::custom)?,
                (kind, modulus) => {
                    return Err(D::Error::custom(format!(
                        "bad summand kind {kind:?} with modulus {modulus:?}"
                    )))
                }
            };
            m.push(s, 1);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(d: u32) -> KuSummand {
        KuSummand::free(d)
    }

    fn md(d: u32, n: u64) -> KuSummand {
        KuSummand::modn(d, n).unwrap()
    }

    fn m(s: &[KuSummand]) -> KuModule {
        KuModule::from_summands(s.iter().copied())
    }

    #[test]
    fn rejects_modulus_below_two() {
        assert!(KuSummand::modn(0, 1).is_err());
        assert!(KuSummand::modn(3, 0).is_err());
    }

    #[test]
    fn wedge_and_suspend() {
        assert_eq!(m(&[free(0)]).wedge(&m(&[free(1)])), m(&[free(0), free(1)]));
        let x = m(&[md(0, 2), free(1)]);
        assert_eq!(x.wedge(&KuModule::zero()), x);
        let twice = m(&[md(0, 2)]).wedge(&m(&[md(0, 2)]));
        assert_eq!(twice.multiplicity(&md(0, 2)), 2);
        assert_eq!(m(&[free(0)]).suspend(2), m(&[free(2)]));
        assert_eq!(x.suspend(0), x);
        assert_eq!(x.suspend(1), m(&[md(1, 2), free(2)]));
    }

    #[test]
    fn smash_rules() {
        let x = m(&[md(0, 2), free(1), md(3, 6)]);
        assert_eq!(KuModule::unit().smash(&x), x);
        assert_eq!(m(&[md(0, 2)]).smash(&m(&[md(0, 2)])), m(&[md(0, 2), md(1, 2)]));
        assert_eq!(m(&[md(0, 4)]).smash(&m(&[md(0, 6)])), m(&[md(0, 2), md(1, 2)]));
        assert!(m(&[md(0, 2)]).smash(&m(&[md(0, 3)])).is_zero());
        let circle = m(&[free(0), free(1)]);
        assert_eq!(circle.smash(&circle), m(&[free(0), free(1), free(1), free(2)]));
    }

    #[test]
    fn homotopy_readout() {
        assert_eq!(m(&[free(1)]).homotopy(3), FinAbGroup::free(1));
        assert!(m(&[md(0, 2)]).homotopy(1).is_zero());
        assert_eq!(m(&[md(0, 2)]).homotopy(2), FinAbGroup::cyclic(2));
        assert_eq!(m(&[free(0), free(1), free(1), free(2)]).homotopy(2), FinAbGroup::free(2));
        assert!(m(&[free(0)]).homotopy(-2).is_zero());
    }

    #[test]
    fn bott_cofiber_readout() {
        let torus = m(&[free(0), free(1), free(1), free(2)]);
        let got: Vec<_> = (0..3).map(|d| torus.bott_cofiber_homotopy(d)).collect();
        assert_eq!(got, vec![FinAbGroup::free(1), FinAbGroup::free(2), FinAbGroup::free(1)]);
        let klein = m(&[free(0), free(1), md(0, 2)]);
        assert_eq!(klein.bott_cofiber_homotopy(0), FinAbGroup::new(1, [2]));
        assert_eq!(klein.bott_cofiber_homotopy(1), FinAbGroup::free(1));
        assert!(m(&[free(3)]).bott_cofiber_homotopy(2).is_zero());
    }

    #[test]
    fn summand_count_examples() {
        let klein = m(&[free(0), free(1), md(0, 2)]);
        assert_eq!(klein.summand_counts(), SummandCounts { r0: 1, r1: 1, t0: 1, t1: 0 });
        let cube = klein.smash(&klein).smash(&klein);
        assert_eq!(cube.summand_counts(), SummandCounts { r0: 4, r1: 4, t0: 14, t1: 14 });
        assert_eq!(cube.free_by_degree(), BTreeMap::from([(0, 1), (1, 3), (2, 3), (3, 1)]));
        assert_eq!(cube.mod_by_degree(2), BTreeMap::from([(0, 7), (1, 14), (2, 7)]));
        assert_eq!(KuModule::zero().summand_counts(), SummandCounts::default());
    }

    #[test]
    fn count_recurrence_matches_expansion() {
        let klein = m(&[free(0), free(1), md(0, 2)]);
        let genus2 = m(&[free(0), free(1), free(1), free(1), free(1), free(2)]);
        for (a, b) in [(&klein, &genus2), (&genus2, &klein), (&klein, &klein)] {
            assert_eq!(a.summand_counts().smash(&b.summand_counts()), a.smash(b).summand_counts());
        }
    }

    #[test]
    fn text_rendering() {
        let f3 = m(&[free(0), free(1), free(1), free(1)]);
        assert_eq!(f3.to_string(), "ku v S ku v S ku v S ku");
        assert_eq!(m(&[md(2, 2), free(0)]).to_string(), "ku v S^2 ku/2");
        assert_eq!(KuModule::zero().to_string(), "0");
    }

    #[test]
    fn json_schema() {
        let x = m(&[free(0), md(1, 2)]);
        let v = serde_json::to_value(&x).unwrap();
        assert_eq!(
            v,
            serde_json::json!([
                {"degree": 0, "kind": "free"},
                {"degree": 1, "kind": "mod", "modulus": 2},
            ])
        );
        assert_eq!(serde_json::from_value::<KuModule>(v).unwrap(), x);
        let bad = serde_json::json!([{"degree": 0, "kind": "mod", "modulus": 1}]);
        assert!(serde_json::from_value::<KuModule>(bad).is_err());
    }
}
