//! Finitely generated abelian groups and graded families of them.
//!
//! Groups are kept in a normal form made of a free rank and a multiset of
//! cyclic torsion orders. No invariant-factor chaining is done: `Z/2 + Z/3`
//! and `Z/6` are different normal forms. Everything the engines produce is
//! a sum of cyclic groups anyway, and the tensor/Tor rules stay bilinear on
//! that presentation.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A finitely generated abelian group `Z^r + Z/n_1 + ... + Z/n_k`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinAbGroup {
    free_rank: usize,
    /// torsion order -> multiplicity; every key is >= 2
    torsion: BTreeMap<u64, usize>,
}

impl FinAbGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { free_rank: rank, torsion: BTreeMap::new() }
    }

    /// `Z/n`. `n = 1` gives the zero group and `n = 0` gives `Z`.
    pub fn cyclic(n: u64) -> Self {
        Self::new(0, [n])
    }

    /// Builds a group from a free rank and a list of cyclic orders. Orders
    /// equal to 1 are dropped and orders equal to 0 count as free summands.
    pub fn new(free_rank: usize, torsion: impl IntoIterator<Item = u64>) -> Self {
        let mut g = Self::free(free_rank);
        for n in torsion {
            g.push_cyclic(n, 1);
        }
        g
    }

    fn push_cyclic(&mut self, n: u64, mult: usize) {
        match n {
            0 => self.free_rank += mult,
            1 => {}
            _ if mult > 0 => *self.torsion.entry(n).or_default() += mult,
            _ => {}
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Torsion orders, sorted ascending with repetition.
    pub fn torsion(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .flat_map(|(&n, &k)| std::iter::repeat_n(n, k))
            .collect()
    }

    /// Number of cyclic torsion summands.
    pub fn torsion_count(&self) -> usize {
        self.torsion.values().sum()
    }

    pub fn torsion_multiplicity(&self, order: u64) -> usize {
        self.torsion.get(&order).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u128 {
        self.torsion
            .iter()
            .map(|(&n, &k)| (n as u128).pow(k as u32))
            .product()
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut out = self.clone();
        out.free_rank += other.free_rank;
        for (&n, &k) in &other.torsion {
            out.push_cyclic(n, k);
        }
        out
    }

    /// Direct sum of `k` copies.
    pub fn power(&self, k: usize) -> FinAbGroup {
        let mut out = FinAbGroup::free(self.free_rank * k);
        for (&n, &m) in &self.torsion {
            out.push_cyclic(n, m * k);
        }
        out
    }

    pub fn tensor(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut out = FinAbGroup::free(self.free_rank * other.free_rank);
        for (&n, &k) in &other.torsion {
            out.push_cyclic(n, k * self.free_rank);
        }
        for (&n, &k) in &self.torsion {
            out.push_cyclic(n, k * other.free_rank);
        }
        for (&n, &k) in &self.torsion {
            for (&m, &l) in &other.torsion {
                out.push_cyclic(gcd(n, m), k * l);
            }
        }
        out
    }

    pub fn tor(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut out = FinAbGroup::zero();
        for (&n, &k) in &self.torsion {
            for (&m, &l) in &other.torsion {
                out.push_cyclic(gcd(n, m), k * l);
            }
        }
        out
    }

    /// Removes one free summand; `None` when the group has no free part.
    pub fn without_free_summand(&self) -> Option<FinAbGroup> {
        (self.free_rank > 0).then(|| FinAbGroup {
            free_rank: self.free_rank - 1,
            torsion: self.torsion.clone(),
        })
    }
}

impl std::ops::Add for &FinAbGroup {
    type Output = FinAbGroup;
    fn add(self, rhs: &FinAbGroup) -> FinAbGroup {
        self.direct_sum(rhs)
    }
}

impl std::iter::Sum for FinAbGroup {
    fn sum<I: Iterator<Item = FinAbGroup>>(iter: I) -> FinAbGroup {
        iter.fold(FinAbGroup::zero(), |acc, g| acc.direct_sum(&g))
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for (&n, &k) in &self.torsion {
            if k == 1 {
                parts.push(format!("Z/{n}"));
            } else {
                parts.push(format!("(Z/{n})^{k}"));
            }
        }
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl Serialize for FinAbGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupRepr { free_rank: self.free_rank, torsion: self.torsion() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinAbGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GroupRepr::deserialize(d)?;
        Ok(FinAbGroup::new(r.free_rank, r.torsion))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    Integer,
    Mod2,
}

/// A degree-indexed family of groups. Missing degrees are zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedGroup {
    grading: Grading,
    components: BTreeMap<u32, FinAbGroup>,
}

impl GradedGroup {
    pub fn zero(grading: Grading) -> Self {
        GradedGroup { grading, components: BTreeMap::new() }
    }

    /// Integer-graded group from `(degree, group)` pairs; repeated degrees are summed.
    pub fn integer(parts: impl IntoIterator<Item = (u32, FinAbGroup)>) -> Self {
        let mut g = Self::zero(Grading::Integer);
        for (d, a) in parts {
            g.add_at(d, &a);
        }
        g
    }

    /// Integer-graded group whose degree `i` is `parts[i]`.
    pub fn from_sequence(parts: impl IntoIterator<Item = FinAbGroup>) -> Self {
        Self::integer(parts.into_iter().enumerate().map(|(i, g)| (i as u32, g)))
    }

    pub fn mod2(even: FinAbGroup, odd: FinAbGroup) -> Self {
        let mut g = Self::zero(Grading::Mod2);
        g.add_at(0, &even);
        g.add_at(1, &odd);
        g
    }

    fn add_at(&mut self, degree: u32, a: &FinAbGroup) {
        if a.is_zero() {
            return;
        }
        let d = match self.grading {
            Grading::Integer => degree,
            Grading::Mod2 => degree % 2,
        };
        let slot = self.components.entry(d).or_default();
        *slot = slot.direct_sum(a);
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    /// Component in `degree`; for mod-2 gradings the degree is reduced mod 2.
    pub fn get(&self, degree: u32) -> FinAbGroup {
        let d = match self.grading {
            Grading::Integer => degree,
            Grading::Mod2 => degree % 2,
        };
        self.components.get(&d).cloned().unwrap_or_default()
    }

    /// Nonzero components in increasing degree.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &FinAbGroup)> {
        self.components.iter().map(|(&d, g)| (d, g))
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.components.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Reduced version: one free summand removed from degree 0, if present.
    pub fn reduced(&self) -> GradedGroup {
        let mut out = self.clone();
        if let Some(g0) = out.components.get(&0).and_then(FinAbGroup::without_free_summand) {
            if g0.is_zero() {
                out.components.remove(&0);
            } else {
                out.components.insert(0, g0);
            }
        }
        out
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = match self.grading {
            Grading::Integer => self.max_degree().unwrap_or(0),
            Grading::Mod2 => 1,
        };
        let parts: Vec<String> = (0..=top).map(|d| self.get(d).to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Integral Künneth formula: degree `n` collects `g_p (x) h_q` with
/// `p + q = n` and `Tor(g_p, h_q)` with `p + q = n + 1`.
pub fn kunneth_integer(g: &GradedGroup, h: &GradedGroup) -> Result<GradedGroup> {
    if g.grading != Grading::Integer || h.grading != Grading::Integer {
        return Err(Error::GradingMismatch("integral Künneth needs integer-graded inputs"));
    }
    let mut out = GradedGroup::zero(Grading::Integer);
    for (p, a) in g.iter() {
        for (q, b) in h.iter() {
            out.add_at(p + q, &a.tensor(b));
            if p + q >= 1 {
                out.add_at(p + q - 1, &a.tor(b));
            }
        }
    }
    Ok(out)
}

/// Künneth sequence for mod-2-graded theories: tensor terms in degree
/// `p + q`, Tor terms in degree `p + q + 1`, all mod 2.
pub fn kunneth_mod2(g: &GradedGroup, h: &GradedGroup) -> Result<GradedGroup> {
    if g.grading != Grading::Mod2 || h.grading != Grading::Mod2 {
        return Err(Error::GradingMismatch("mod-2 Künneth needs mod2-graded inputs"));
    }
    let mut out = GradedGroup::zero(Grading::Mod2);
    for (p, a) in g.iter() {
        for (q, b) in h.iter() {
            out.add_at(p + q, &a.tensor(b));
            out.add_at(p + q + 1, &a.tor(b));
        }
    }
    Ok(out)
}

/// Free rank in every degree where it is nonzero.
pub fn rational_ranks(g: &GradedGroup) -> BTreeMap<u32, usize> {
    g.iter()
        .filter(|(_, a)| a.free_rank() > 0)
        .map(|(d, a)| (d, a.free_rank()))
        .collect()
}

/// Number of cyclic torsion summands in even and in odd degrees.
pub fn torsion_f2_rank_by_parity(g: &GradedGroup) -> (usize, usize) {
    g.iter().fold((0, 0), |(even, odd), (d, a)| {
        if d % 2 == 0 {
            (even + a.torsion_count(), odd)
        } else {
            (even, odd + a.torsion_count())
        }
    })
}

#[derive(Serialize, Deserialize)]
struct GradedEntry {
    degree: u32,
    free_rank: usize,
    torsion: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grading: Option<Grading>,
}

impl Serialize for GradedGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let tag = (self.grading == Grading::Mod2).then_some(Grading::Mod2);
        let entries: Vec<GradedEntry> = self
            .iter()
            .map(|(degree, a)| GradedEntry {
                degree,
                free_rank: a.free_rank(),
                torsion: a.torsion(),
                grading: tag,
            })
            .collect();
        entries.serialize(s)
    }
}

/// A zero mod-2 group has no entries and reads back as integer-graded.
impl<'de> Deserialize<'de> for GradedGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let entries = Vec::<GradedEntry>::deserialize(d)?;
        let grading = if entries.iter().any(|e| e.grading == Some(Grading::Mod2)) {
            Grading::Mod2
        } else {
            Grading::Integer
        };
        let mut g = GradedGroup::zero(grading);
        for e in entries {
            if grading == Grading::Mod2 && e.degree > 1 {
                return Err(D::Error::custom(format!(
                    "mod2-graded entry has degree {}",
                    e.degree
                )));
            }
            g.add_at(e.degree, &FinAbGroup::new(e.free_rank, e.torsion));
        }
        Ok(g)
    }
}
