use super::subgroup::Subgroup;
use crate::error::{Error, Result};
use crate::pc::{GroupElement, PcGroup, PcPresentation, Word};

/// `G/N` with its induced pc presentation on the generators of `G` whose
/// depths are not leading depths of `N`.
pub struct Quotient {
    pub group: PcGroup,
    kept: Vec<usize>,
    kernel: Subgroup,
}

impl Quotient {
    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// Image of `x` in the quotient.
    pub fn image(&self, g: &PcGroup, x: &GroupElement) -> GroupElement {
        let r = self.kernel.reduce(g, x);
        let e: Vec<u8> = self.kept.iter().map(|&k| r.exponents()[k]).collect();
        GroupElement::from_exponents(&e)
    }

    /// The canonical preimage (coset representative) of a quotient element.
    pub fn preimage(&self, g: &PcGroup, y: &GroupElement) -> GroupElement {
        let mut e = vec![0u8; g.rank()];
        for (i, &k) in self.kept.iter().enumerate() {
            e[k] = y.exponents()[i];
        }
        GroupElement::from_exponents(&e)
    }
}

fn to_word(e: &[u8]) -> Word {
    Word::from_exponents(e)
}

impl PcGroup {
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if !self.is_normal(n) {
            return Err(Error::precondition("quotient by a non-normal subgroup"));
        }
        let kept: Vec<usize> = (0..self.rank()).filter(|&k| !n.has_lead(k)).collect();
        let m = kept.len();
        if m == 0 {
            return Err(Error::precondition("quotient by the whole group is trivial"));
        }
        let project = |x: &GroupElement| -> Vec<u8> {
            let r = n.reduce(self, x);
            kept.iter().map(|&k| r.exponents()[k]).collect()
        };
        let mut pres = PcPresentation::trivial_relators(self.prime(), m)?;
        for (a, &ka) in kept.iter().enumerate() {
            let ga = self.generator(ka + 1);
            pres.set_power(a + 1, to_word(&project(&self.pth_power(&ga))))?;
            for (b, &kb) in kept.iter().enumerate().skip(a + 1) {
                let gb = self.generator(kb + 1);
                pres.set_comm(b + 1, a + 1, to_word(&project(&self.commutator(&gb, &ga))))?;
            }
        }
        let group = PcGroup::new(pres)?.with_budget(self.budget());
        Ok(Quotient {
            group,
            kept,
            kernel: n.clone(),
        })
    }
}
