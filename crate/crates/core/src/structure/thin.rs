use std::collections::HashSet;

use super::subgroup::Subgroup;
use crate::error::Result;
use crate::pc::{GroupElement, PcGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThinWitness {
    /// Cyclic groups are excluded by definition.
    Cyclic,
    /// `|gamma_i : gamma_{i+1}| = p^width` with `width > 2` (1-based `layer`).
    WideLayer { layer: usize, width: usize },
    /// The normal closure of `element`, which lies in `gamma_layer` but not
    /// in `gamma_{layer+1}`, misses part of `gamma_{layer+1}`.
    NotSandwiched {
        layer: usize,
        element: GroupElement,
        closure: Subgroup,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThinReport {
    pub thin: bool,
    pub witness: Option<ThinWitness>,
}

impl PcGroup {
    pub fn is_cyclic(&self) -> bool {
        self.generator_rank() <= 1
    }

    /// Thinness with a witness on failure.
    ///
    /// Uses the sieve formulation: every normal subgroup is sandwiched iff
    /// for each `g` in `gamma_i \ gamma_{i+1}` the normal closure of `g`
    /// contains `gamma_{i+1}`. Whether it does depends only on `g` modulo
    /// `gamma_{i+2}`, so one transversal of `gamma_{i+2}` in `gamma_i` is
    /// tested per layer.
    pub fn thin_report(&self) -> &ThinReport {
        self.cache.thin.get_or_init(|| {
            let fail = |w| ThinReport {
                thin: false,
                witness: Some(w),
            };
            if self.is_cyclic() {
                return fail(ThinWitness::Cyclic);
            }
            let lcs = self.lower_central_series();
            if let Some((i, &w)) = lcs.widths.iter().enumerate().find(|(_, &w)| w > 2) {
                return fail(ThinWitness::WideLayer { layer: i + 1, width: w });
            }
            let c = lcs.widths.len();
            for i in 1..c {
                let gi = &lcs.terms[i - 1];
                let gi1 = &lcs.terms[i];
                let gi2 = self.gamma(i + 2);
                for t in gi2.transversal_in(self, gi) {
                    if gi1.contains(self, &t) {
                        continue;
                    }
                    let n = self.normal_closure(&[t]);
                    if !gi1.is_subgroup_of(self, &n) {
                        return fail(ThinWitness::NotSandwiched {
                            layer: i,
                            element: t,
                            closure: n,
                        });
                    }
                }
            }
            ThinReport {
                thin: true,
                witness: None,
            }
        })
    }

    pub fn is_thin(&self) -> bool {
        self.thin_report().thin
    }

    /// Every normal subgroup, found as joins of normal closures of single
    /// elements; sorted canonically.
    pub fn normal_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.ensure_budget(self.order())?;
        let mut found: HashSet<Subgroup> = HashSet::new();
        let mut cyclic: Vec<Subgroup> = Vec::new();
        found.insert(Subgroup::trivial(self.rank()));
        for idx in 1..self.order() as u64 {
            let x = self.element_from_index(idx);
            let n = self.normal_closure(&[x]);
            if found.insert(n.clone()) {
                cyclic.push(n);
            }
        }
        let mut all: Vec<Subgroup> = found.iter().cloned().collect();
        let mut frontier = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for b in &cyclic {
                    if b.is_subgroup_of(self, a) {
                        continue;
                    }
                    let j = self.join(a, b);
                    if found.insert(j.clone()) {
                        next.push(j.clone());
                        all.push(j);
                    }
                }
            }
            frontier = next;
        }
        all.sort();
        Ok(all)
    }

    /// The definitional test: every normal subgroup sits between two
    /// consecutive lower central terms and all widths are at most 2.
    pub fn is_thin_brute_force(&self) -> Result<bool> {
        if self.is_cyclic() {
            return Ok(false);
        }
        let lcs = self.lower_central_series();
        if lcs.widths.iter().any(|&w| w > 2) {
            return Ok(false);
        }
        let normals = self.normal_subgroups()?;
        Ok(normals.iter().all(|n| {
            lcs.terms
                .windows(2)
                .any(|w| w[1].is_subgroup_of(self, n) && n.is_subgroup_of(self, &w[0]))
        }))
    }
}
