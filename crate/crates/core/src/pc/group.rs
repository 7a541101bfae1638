use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::pc::collector::Collector;
use crate::pc::element::{Exps, GroupElement};
use crate::pc::presentation::PcPresentation;
use crate::pc::MAX_RANK;
use crate::structure::cache::StructureCache;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// `g_k (g_j g_i)` against `(g_k g_j) g_i`, `k > j > i`.
    Associativity,
    /// `g_j^p g_i` against `g_j^{p-1} (g_j g_i)`.
    PowerLeft,
    /// `g_j g_i^p` against `(g_j g_i) g_i^{p-1}`.
    PowerRight,
    /// `g_i g_i^p` against `g_i^p g_i`.
    PowerSelf,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelationKind::Associativity => "associativity",
            RelationKind::PowerLeft => "power-left",
            RelationKind::PowerRight => "power-right",
            RelationKind::PowerSelf => "power-self",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyFailure {
    pub kind: RelationKind,
    /// 1-based generator indices involved (unused slots are 0).
    pub indices: (usize, usize, usize),
    pub left: GroupElement,
    pub right: GroupElement,
}

#[derive(Clone, Debug, Default)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub failures: Vec<ConsistencyFailure>,
}

/// Run every overlap test of the pc presentation.
pub fn check_consistency(pres: &PcPresentation) -> ConsistencyReport {
    let col = Collector::new(pres);
    let n = pres.rank;
    let p = pres.prime as u8;
    let gen = |k: usize| {
        let mut e = [0u8; MAX_RANK];
        e[k] = 1;
        e
    };
    let mul = |a: &Exps, b: &Exps| {
        let mut r = *a;
        col.mul_into(&mut r, b, 0);
        r
    };
    let mut failures = Vec::new();
    let mut record = |kind, indices, l: Exps, r: Exps| {
        if l != r {
            failures.push(ConsistencyFailure {
                kind,
                indices,
                left: GroupElement::from_raw(l, n),
                right: GroupElement::from_raw(r, n),
            });
        }
    };

    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                let l = mul(&gen(k), &mul(&gen(j), &gen(i)));
                let r = mul(&mul(&gen(k), &gen(j)), &gen(i));
                record(RelationKind::Associativity, (k + 1, j + 1, i + 1), l, r);
            }
        }
    }
    for j in 0..n {
        for i in 0..j {
            let mut gj_pm1 = [0u8; MAX_RANK];
            gj_pm1[j] = p - 1;
            let l = mul(&col.power_word(j), &gen(i));
            let r = mul(&gj_pm1, &mul(&gen(j), &gen(i)));
            record(RelationKind::PowerLeft, (j + 1, i + 1, 0), l, r);

            let mut gi_pm1 = [0u8; MAX_RANK];
            gi_pm1[i] = p - 1;
            let l = mul(&gen(j), &col.power_word(i));
            let r = mul(&mul(&gen(j), &gen(i)), &gi_pm1);
            record(RelationKind::PowerRight, (j + 1, i + 1, 0), l, r);
        }
    }
    for i in 0..n {
        let l = mul(&gen(i), &col.power_word(i));
        let r = mul(&col.power_word(i), &gen(i));
        record(RelationKind::PowerSelf, (i + 1, 0, 0), l, r);
    }
    ConsistencyReport {
        consistent: failures.is_empty(),
        failures,
    }
}

/// A finite p-group given by a validated (consistent) pc presentation.
///
/// Immutable after construction; derived structure is memoized behind
/// `OnceLock`s, so a `PcGroup` may be shared across threads.
pub struct PcGroup {
    pres: PcPresentation,
    col: Collector,
    pub(crate) cache: StructureCache,
    pub(crate) budget: u64,
    name: OnceLock<String>,
}

/// Default cap on the number of elements any enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

impl PcGroup {
    pub fn new(pres: PcPresentation) -> Result<Self> {
        let report = check_consistency(&pres);
        if !report.consistent {
            return Err(Error::Inconsistent(report.failures.len()));
        }
        let col = Collector::new(&pres);
        Ok(PcGroup {
            pres,
            col,
            cache: StructureCache::default(),
            budget: DEFAULT_BUDGET,
            name: OnceLock::new(),
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(PcPresentation::parse(text)?)
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_name(self, name: impl Into<String>) -> Self {
        let _ = self.name.set(name.into());
        self
    }

    pub fn name(&self) -> &str {
        self.name.get().map(String::as_str).unwrap_or("<anonymous>")
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn prime(&self) -> u32 {
        self.pres.prime
    }

    pub fn rank(&self) -> usize {
        self.pres.rank
    }

    pub fn order(&self) -> u128 {
        (self.pres.prime as u128).pow(self.pres.rank as u32)
    }

    /// Fail with `BudgetExceeded` unless `count` elements may be enumerated.
    pub fn ensure_budget(&self, count: u128) -> Result<()> {
        if count > self.budget as u128 {
            return Err(Error::BudgetExceeded {
                needed: count,
                cap: self.budget,
            });
        }
        Ok(())
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.rank())
    }

    /// The pc generator `g_k`, 1-based.
    pub fn generator(&self, k: usize) -> GroupElement {
        GroupElement::generator(self.rank(), k)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (1..=self.rank()).map(|k| self.generator(k)).collect()
    }

    /// Validate an exponent vector and wrap it as an element.
    pub fn element(&self, exps: &[u8]) -> Result<GroupElement> {
        if exps.len() != self.rank() {
            return Err(Error::precondition(format!(
                "exponent vector has length {}, rank is {}",
                exps.len(),
                self.rank()
            )));
        }
        if let Some(&x) = exps.iter().find(|&&x| x as u32 >= self.prime()) {
            return Err(Error::precondition(format!("exponent {} not below p", x)));
        }
        Ok(GroupElement::from_exponents(exps))
    }

    pub fn element_from_index(&self, idx: u64) -> GroupElement {
        GroupElement::from_index(idx, self.prime(), self.rank())
    }

    /// Collect an arbitrary word of `(generator index, exponent)` pairs.
    pub fn collect(&self, word: &[(usize, i64)]) -> Result<GroupElement> {
        let mut acc = self.identity();
        for &(k, e) in word {
            if k == 0 || k > self.rank() {
                return Err(Error::IndexOutOfRange {
                    index: k,
                    rank: self.rank(),
                });
            }
            acc = self.multiply(&acc, &self.power(&self.generator(k), e));
        }
        Ok(acc)
    }

    /// `e <- e * b` where `b` has zero exponents before `from`.
    #[inline]
    pub(crate) fn mul_raw(&self, e: &mut Exps, b: &Exps, from: usize) {
        self.col.mul_into(e, b, from);
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut r = a.e;
        self.col.mul_into(&mut r, &b.e, 0);
        GroupElement::from_raw(r, self.rank())
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        let p = self.prime();
        let mut cur = a.e;
        let mut inv = [0u8; MAX_RANK];
        for k in 0..self.rank() {
            if cur[k] != 0 {
                let c = (p - cur[k] as u32) as u8;
                self.col.mul_gen_power(&mut cur, k, c);
                inv[k] = c;
            }
        }
        GroupElement::from_raw(inv, self.rank())
    }

    /// `a^k` by square-and-multiply; negative `k` inverts first.
    pub fn power(&self, a: &GroupElement, k: i64) -> GroupElement {
        let base = if k < 0 { self.inverse(a) } else { *a };
        let mut e = k.unsigned_abs();
        let mut result = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                result = self.multiply(&result, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.multiply(&sq, &sq);
            }
        }
        result
    }

    /// `a^p`, the map every agemo/omega computation is built on.
    pub fn pth_power(&self, a: &GroupElement) -> GroupElement {
        self.power(a, self.prime() as i64)
    }

    /// `g^-1 a g`.
    pub fn conjugate(&self, a: &GroupElement, g: &GroupElement) -> GroupElement {
        let ag = self.multiply(a, g);
        self.multiply(&self.inverse(g), &ag)
    }

    /// `[a,b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let ab = self.multiply(a, b);
        let ba = self.multiply(b, a);
        self.multiply(&self.inverse(&ba), &ab)
    }

    /// Left-normed `[[...[base, t1], t2], ...]`.
    pub fn left_normed_commutator(&self, base: &GroupElement, tail: &[GroupElement]) -> GroupElement {
        tail.iter()
            .fold(*base, |acc, t| self.commutator(&acc, t))
    }

    /// Smallest `p^k` with `a^{p^k} = 1`.
    pub fn element_order(&self, a: &GroupElement) -> u128 {
        let mut order = 1u128;
        let mut cur = *a;
        while !cur.is_identity() {
            cur = self.pth_power(&cur);
            order *= self.prime() as u128;
        }
        order
    }

    /// Iterator over all elements in index order.
    pub fn elements(&self) -> Result<impl Iterator<Item = GroupElement> + '_> {
        self.ensure_budget(self.order())?;
        let total = self.order() as u64;
        Ok((0..total).map(move |i| self.element_from_index(i)))
    }
}

impl fmt::Debug for PcGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PcGroup({}, order {}^{})",
            self.name(),
            self.prime(),
            self.rank()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h5() -> PcGroup {
        PcGroup::parse("p 5\nn 3\ncomm 2 1 = g3\n").unwrap()
    }

    #[test]
    fn heisenberg_collects_ba() {
        let g = h5();
        let ba = g.collect(&[(2, 1), (1, 1)]).unwrap();
        assert_eq!(ba.exponents(), &[1, 1, 1]);
        assert!(g.collect(&[]).unwrap().is_identity());
        let g1g2_5: Vec<_> = (0..5).flat_map(|_| [(1, 1), (2, 1)]).collect();
        assert!(g.collect(&g1g2_5).unwrap().is_identity());
        assert!(g.collect(&[(4, 1)]).is_err());
    }

    #[test]
    fn heisenberg_basic_ops() {
        let g = h5();
        let (g1, g2, g3) = (g.generator(1), g.generator(2), g.generator(3));
        assert_eq!(g.commutator(&g2, &g1), g3);
        assert!(g.power(&g1, 5).is_identity());
        assert_eq!(g.element_order(&g1), 5);
        assert_eq!(g.element_order(&g.identity()), 1);
        assert_eq!(g.left_normed_commutator(&g2, &[g1]), g3);
        assert!(g.left_normed_commutator(&g2, &[g1, g1]).is_identity());
    }

    #[test]
    fn cyclic_tower_orders() {
        // C_25 x C_25: g1^5 = g3, g2^5 = g4.
        let g = PcGroup::parse("p 5\nn 4\npow 1 = g3\npow 2 = g4\n").unwrap();
        assert_eq!(g.element_order(&g.generator(1)), 25);
        assert_eq!(g.element_order(&g.generator(3)), 5);
        let x = g.element(&[2, 3, 4, 1]).unwrap();
        assert_eq!(g.element_order(&x), 25);
    }

    #[test]
    fn inconsistent_presentation_rejected() {
        // g1^3 = g2 with [g2, g1] = g3 cannot hold: g1 must commute with its own power.
        let pres = PcPresentation::parse("p 3\nn 3\npow 1 = g2\ncomm 2 1 = g3\n").unwrap();
        let report = check_consistency(&pres);
        assert!(!report.consistent);
        assert!(report
            .failures
            .iter()
            .any(|f| f.kind == RelationKind::PowerRight || f.kind == RelationKind::PowerSelf));
        assert!(matches!(PcGroup::new(pres), Err(Error::Inconsistent(_))));
    }
}
