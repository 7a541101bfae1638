use serde::Serialize;

use crate::error::{Error, Result};
use crate::pc::PcGroup;

/// Checks on the position of `G^p` in the lower central series.
#[derive(Clone, Debug, Serialize)]
pub struct PlaceOfAgemoReport {
    /// Largest `l` with `G^p <= gamma_l`; when `G^p = 1` this is `class + 1`.
    pub l: usize,
    pub l_in_range: bool,
    pub gamma_l1_cyclic: bool,
    pub gamma_l2_trivial: bool,
    pub derived_power_in_gamma_l1: bool,
    pub agemo_log_order: usize,
    pub agemo_at_most_p3: bool,
}

impl PlaceOfAgemoReport {
    pub fn all_pass(&self) -> bool {
        self.l_in_range
            && self.gamma_l1_cyclic
            && self.gamma_l2_trivial
            && self.derived_power_in_gamma_l1
            && self.agemo_at_most_p3
    }
}

impl PcGroup {
    /// `gamma_2(G)^p` for a metabelian group: `G'` is abelian, so the `p`-th
    /// powers of its basis generate it.
    pub fn derived_agemo(&self) -> Result<crate::structure::Subgroup> {
        if !self.is_metabelian() {
            return Err(Error::precondition("derived_agemo requires a metabelian group"));
        }
        let d = self.derived_subgroup();
        let pw: Vec<_> = d.basis().iter().map(|b| self.pth_power(b)).collect();
        Ok(self.generated_subgroup(&pw))
    }

    pub fn verify_place_of_agemo(&self) -> Result<PlaceOfAgemoReport> {
        if !self.is_metabelian() || !self.is_thin() {
            return Err(Error::precondition("requires a metabelian thin group"));
        }
        let agemo = self.agemo()?;
        let c = self.nilpotency_class();
        let l = (1..=c + 1)
            .rev()
            .find(|&i| agemo.is_subgroup_of(self, &self.gamma(i)))
            .unwrap_or(1);
        let gl1 = self.gamma(l + 1);
        let gamma_l1_cyclic = gl1.log_order() <= 1
            || gl1
                .basis()
                .first()
                .is_some_and(|b| self.element_order(b) == gl1.order(self.prime()));
        let derived_power = self.derived_agemo()?;
        Ok(PlaceOfAgemoReport {
            l,
            l_in_range: (3..=self.prime() as usize).contains(&l),
            gamma_l1_cyclic,
            gamma_l2_trivial: self.gamma(l + 2).is_trivial(),
            derived_power_in_gamma_l1: derived_power.is_subgroup_of(self, &gl1),
            agemo_log_order: agemo.log_order(),
            agemo_at_most_p3: agemo.log_order() <= 3,
        })
    }
}
