use std::collections::{BTreeSet, HashMap};

use super::frattini::{dot, normalize_direction};
use super::subgroup::{Closure, Subgroup};
use crate::error::Result;
use crate::pc::{GroupElement, PcGroup};

/// Power structure gathered in a single pass over all elements.
#[derive(Clone, Debug)]
pub struct Census {
    /// `G^p`.
    pub agemo: Subgroup,
    /// `Omega_1(G)`, the subgroup generated by elements of order at most `p`.
    pub omega1: Subgroup,
    pub exponent: u128,
    /// Number of elements `a` with `a^p = 1`.
    pub order_at_most_p: u128,
    /// Normalized Frattini directions of elements of order `p` outside `Phi(G)`.
    pub order_p_directions: BTreeSet<Vec<u8>>,
    /// Normalized Frattini directions of elements of order `> p` outside `Phi(G)`.
    pub large_order_directions: BTreeSet<Vec<u8>>,
    /// Some element of `Phi(G)` has order `> p`.
    pub frattini_has_large_order: bool,
    /// Aligned with [`PcGroup::maximal_subgroups`]: the subgroup has exponent `p`.
    pub maximal_exponent_p: Vec<bool>,
}

impl Census {
    pub fn exponent_p_maximal_count(&self) -> usize {
        self.maximal_exponent_p.iter().filter(|&&b| b).count()
    }
}

struct Bitset(Vec<u64>);

impl Bitset {
    fn new(n: u64) -> Self {
        Bitset(vec![0; (n as usize).div_ceil(64)])
    }

    /// Set bit `i`; returns whether it was clear.
    fn insert(&mut self, i: u64) -> bool {
        let (w, b) = ((i / 64) as usize, i % 64);
        let fresh = self.0[w] & (1 << b) == 0;
        self.0[w] |= 1 << b;
        fresh
    }
}

impl PcGroup {
    /// Agemo, omega, exponent and exponent-`p` maximal subgroups by full
    /// enumeration; errors if `|G|` exceeds the budget.
    pub fn census(&self) -> Result<&Census> {
        if let Some(c) = self.cache.census.get() {
            return Ok(c);
        }
        self.ensure_budget(self.order())?;
        Ok(self.cache.census.get_or_init(|| self.compute_census()))
    }

    fn compute_census(&self) -> Census {
        let p = self.prime();
        let total = self.order() as u64;
        let d = self.generator_rank();
        let mut seen_power = Bitset::new(total);
        let mut agemo = Closure::new(self, Vec::new());
        let mut omega = Closure::new(self, Vec::new());
        let mut omega_full = false;
        let mut order_memo: HashMap<u64, u128> = HashMap::new();
        let mut exponent = 1u128;
        let mut count_p = 0u128;
        let dir_space = (p as u64).pow(d as u32) as usize;
        let mut dir_small = vec![false; dir_space];
        let mut dir_large = vec![false; dir_space];

        for idx in 0..total {
            let a = self.element_from_index(idx);
            let q = self.pth_power(&a);
            let coords = self.frattini_coords(&a);
            let cidx = coords.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize);
            if q.is_identity() {
                count_p += 1;
                if !a.is_identity() {
                    exponent = exponent.max(p as u128);
                }
                dir_small[cidx] = true;
                if !omega_full && !omega.contains(&a) {
                    omega.add(&a);
                    omega_full = omega.log_order() == self.rank();
                }
            } else {
                dir_large[cidx] = true;
                let qi = q.index(p);
                if seen_power.insert(qi) && !agemo.contains(&q) {
                    agemo.add(&q);
                }
                let oq = *order_memo
                    .entry(qi)
                    .or_insert_with(|| self.element_order(&q));
                exponent = exponent.max(p as u128 * oq);
            }
        }

        let decode = |mut i: usize| -> Vec<u8> {
            let mut v = vec![0u8; d];
            for x in v.iter_mut() {
                *x = (i % p as usize) as u8;
                i /= p as usize;
            }
            v
        };
        let frattini_has_large_order = dir_large[0];
        let collect = |flags: &[bool]| -> BTreeSet<Vec<u8>> {
            flags
                .iter()
                .enumerate()
                .skip(1)
                .filter(|(_, &f)| f)
                .map(|(i, _)| normalize_direction(&decode(i), p))
                .collect()
        };
        let order_p_directions = collect(&dir_small);
        let large_order_directions = collect(&dir_large);
        let maximal_exponent_p = self
            .maximal_subgroups()
            .iter()
            .map(|m| {
                !frattini_has_large_order
                    && large_order_directions
                        .iter()
                        .all(|v| dot(&m.functional, v, p) != 0)
            })
            .collect();
        Census {
            agemo: agemo.finish(),
            omega1: omega.finish(),
            exponent,
            order_at_most_p: count_p,
            order_p_directions,
            large_order_directions,
            frattini_has_large_order,
            maximal_exponent_p,
        }
    }

    /// `G^p`.
    pub fn agemo(&self) -> Result<Subgroup> {
        Ok(self.census()?.agemo.clone())
    }

    /// `Omega_1(G)`.
    pub fn omega1(&self) -> Result<Subgroup> {
        Ok(self.census()?.omega1.clone())
    }

    /// Largest element order in `h`, by enumerating `h`.
    pub fn exponent(&self, h: &Subgroup) -> Result<u128> {
        if h.log_order() == self.rank() {
            return Ok(self.census()?.exponent);
        }
        self.ensure_budget(h.order(self.prime()))?;
        let mut memo: HashMap<GroupElement, u128> = HashMap::new();
        let mut best = 1u128;
        h.for_each_element(self, |a| {
            let q = self.pth_power(a);
            let o = if q.is_identity() {
                if a.is_identity() {
                    1
                } else {
                    self.prime() as u128
                }
            } else {
                self.prime() as u128 * *memo.entry(q).or_insert_with(|| self.element_order(&q))
            };
            best = best.max(o);
        });
        Ok(best)
    }

    /// `H^p`, generated by the `p`-th powers of all elements of `h`.
    pub fn subgroup_agemo(&self, h: &Subgroup) -> Result<Subgroup> {
        self.ensure_budget(h.order(self.prime()))?;
        let mut c = Closure::new(self, Vec::new());
        let mut seen = std::collections::HashSet::new();
        h.for_each_element(self, |a| {
            let q = self.pth_power(a);
            if seen.insert(q) && !c.contains(&q) {
                c.add(&q);
            }
        });
        Ok(c.finish())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_census() {
        let g = PcGroup::parse("p 5\nn 3\ncomm 2 1 = g3\n").unwrap();
        let c = g.census().unwrap();
        assert!(c.agemo.is_trivial());
        assert_eq!(c.omega1.log_order(), 3);
        assert_eq!(c.exponent, 5);
        assert_eq!(c.exponent_p_maximal_count(), 6);
    }

    #[test]
    fn cyclic_square_census() {
        let g = PcGroup::parse("p 5\nn 4\npow 1 = g3\npow 2 = g4\n").unwrap();
        let c = g.census().unwrap();
        assert_eq!(c.agemo.order(5), 25);
        assert_eq!(c.omega1.order(5), 25);
        assert_eq!(c.exponent, 25);
        assert_eq!(c.exponent_p_maximal_count(), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let g = PcGroup::parse("p 5\nn 4\n").unwrap().with_budget(100);
        assert!(matches!(g.census(), Err(crate::Error::BudgetExceeded { .. })));
    }
}
