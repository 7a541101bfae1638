use serde::Serialize;

use super::formulas::{binomial_table, cij_mod, quadratic_nonresidues};
use crate::beauville::GeneratingTriple;
use crate::error::{Error, Result};
use crate::pc::{GroupElement, PcGroup};
use crate::structure::subgroup::mod_inverse;
use crate::structure::{MaximalSubgroup, Subgroup};

/// Generators `x`, `y` with `[y,x,x,x] = [y,x,y,y]^h` modulo `gamma_5`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticPairCertificate {
    #[serde(serialize_with = "crate::beauville::ser_elem")]
    pub x: GroupElement,
    #[serde(serialize_with = "crate::beauville::ser_elem")]
    pub y: GroupElement,
    pub h: u32,
    /// `[y, x, y, ..., y]` with `p - 2` copies of `y`.
    #[serde(serialize_with = "crate::beauville::ser_elem")]
    pub l: GroupElement,
    /// `[y, x, y, ..., y, x]` with `p - 3` copies of `y`.
    #[serde(serialize_with = "crate::beauville::ser_elem")]
    pub m: GroupElement,
    /// `(alpha, beta, gamma, delta)` with `x^p = l^alpha m^beta` and
    /// `y^p = l^gamma m^delta` modulo `gamma_{p+1}`; present when
    /// `l`, `m` span `gamma_p / gamma_{p+1}`.
    pub coefficients: Option<[u32; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollisionReport {
    pub t0: u32,
    pub matches: Vec<u32>,
    pub bound_satisfied: bool,
}

fn reduce_mod(e: u128, m: u128) -> i64 {
    (e % m) as i64
}

impl PcGroup {
    /// `<w> gamma_k` as a subgroup.
    fn cyclic_mod(&self, w: &GroupElement, k: usize) -> Subgroup {
        let mut gens = self.gamma(k).basis().to_vec();
        gens.push(*w);
        self.generated_subgroup(&gens)
    }

    fn congruent_mod(&self, a: &GroupElement, b: &GroupElement, n: &Subgroup) -> bool {
        n.contains(self, &self.multiply(&self.inverse(a), b))
    }

    /// Both sides of the expansion of `(xy)^p` in a metabelian group, with
    /// `sigma_1 = y`, `sigma_i = [sigma_{i-1}, x]` and integer exponents.
    pub fn miech_expansion(&self, x: &GroupElement, y: &GroupElement) -> Result<(GroupElement, GroupElement)> {
        if !self.is_metabelian() {
            return Err(Error::precondition("the expansion needs a metabelian group"));
        }
        let p = self.prime() as usize;
        let lhs = self.pth_power(&self.multiply(x, y));
        let mut sigma = vec![*y];
        for i in 1..p {
            sigma.push(self.commutator(&sigma[i - 1], x));
        }
        let mut rhs = self.multiply(&self.pth_power(x), &self.pth_power(y));
        let exact_power = |base: &GroupElement, e: &dyn Fn(u128) -> u128| -> Result<GroupElement> {
            let o = self.element_order(base);
            if o > i64::MAX as u128 {
                return Err(Error::precondition("element order too large for the expansion"));
            }
            Ok(self.power(base, reduce_mod(e(o), o)))
        };
        for (i, s) in sigma.iter().enumerate().skip(1) {
            let k = i + 1;
            let term = exact_power(s, &|o| binomial_table(p + 1, o)[p][k])?;
            rhs = self.multiply(&rhs, &term);
        }
        for i in 1..p {
            let mut c = sigma[i];
            for j in 1..p {
                c = self.commutator(&c, &sigma[0]);
                let term = exact_power(&c, &|o| cij_mod(i, j, p as u32, o))?;
                rhs = self.multiply(&rhs, &term);
            }
        }
        Ok((lhs, rhs))
    }

    pub fn miech_expansion_check(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        let (lhs, rhs) = self.miech_expansion(x, y)?;
        Ok(lhs == rhs)
    }

    /// `[y,x,x,x] = [y,x,y,y]^h` modulo `gamma_5`.
    pub fn satisfies_quadratic_relation(&self, x: &GroupElement, y: &GroupElement, h: u32) -> bool {
        let lhs = self.left_normed_commutator(y, &[*x, *x, *x]);
        let rhs = self.power(&self.left_normed_commutator(y, &[*x, *y, *y]), h as i64);
        self.congruent_mod(&lhs, &rhs, &self.gamma(5))
    }

    fn quadratic_pair_preconditions(&self, x: &GroupElement) -> Result<()> {
        if !self.is_metabelian() || !self.is_thin() {
            return Err(Error::precondition("quadratic pairs need a metabelian thin group"));
        }
        if self.is_maximal_class() {
            return Err(Error::precondition("quadratic pairs need a group not of maximal class"));
        }
        if self.nilpotency_class() < 4 {
            return Err(Error::precondition("quadratic pairs need class at least 4"));
        }
        if self.derived_subgroup().contains(self, x) {
            return Err(Error::precondition("x must lie outside the derived subgroup"));
        }
        Ok(())
    }

    fn quadratic_certificate(&self, x: GroupElement, y: GroupElement, h: u32) -> QuadraticPairCertificate {
        let p = self.prime() as usize;
        let mut tail = vec![x];
        tail.extend(std::iter::repeat(y).take(p - 2));
        let l = self.left_normed_commutator(&y, &tail);
        tail.pop();
        tail.push(x);
        let m = self.left_normed_commutator(&y, &tail);
        let coefficients = self.lm_coordinates(&l, &m, &[self.pth_power(&x), self.pth_power(&y)]);
        QuadraticPairCertificate {
            x,
            y,
            h,
            l,
            m,
            coefficients: coefficients.map(|c| [c[0].0, c[0].1, c[1].0, c[1].1]),
        }
    }

    /// Coordinates of each target in the basis `(l, m)` of
    /// `gamma_p / gamma_{p+1}`, when it is one.
    fn lm_coordinates(&self, l: &GroupElement, m: &GroupElement, targets: &[GroupElement]) -> Option<Vec<(u32, u32)>> {
        let p = self.prime();
        let gp = self.gamma(p as usize);
        let gp1 = self.gamma(p as usize + 1);
        if gp.log_order() != gp1.log_order() + 2 {
            return None;
        }
        targets
            .iter()
            .map(|w| {
                (0..p).flat_map(|a| (0..p).map(move |b| (a, b))).find(|&(a, b)| {
                    let c = self.multiply(&self.power(l, a as i64), &self.power(m, b as i64));
                    self.congruent_mod(w, &c, &gp1)
                })
            })
            .collect()
    }

    /// Every `(y, h)` with `y` a Frattini-coordinate representative not
    /// proportional to `x` and `h` a non-residue, in search order.
    pub fn find_quadratic_pairs(&self, x: &GroupElement) -> Result<Vec<QuadraticPairCertificate>> {
        self.quadratic_pair_preconditions(x)?;
        let p = self.prime();
        let hs = quadratic_nonresidues(p)?;
        let mut out = Vec::new();
        for a in 0..p as u8 {
            for b in 0..p as u8 {
                let y = self.frattini_lift(&[a, b]);
                if !self.is_generating_pair(x, &y) {
                    continue;
                }
                for &h in &hs {
                    if self.satisfies_quadratic_relation(x, &y, h) {
                        out.push(self.quadratic_certificate(*x, y, h));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn find_quadratic_pair(&self, x: &GroupElement) -> Result<QuadraticPairCertificate> {
        self.find_quadratic_pairs(x)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::precondition("no quadratic pair found: input is not a metabelian thin group in scope"))
    }

    fn require_derived_power_low(&self) -> Result<()> {
        let gp1 = self.gamma(self.prime() as usize + 1);
        if !self.derived_agemo()?.is_subgroup_of(self, &gp1) {
            return Err(Error::precondition("needs gamma_2^p <= gamma_{p+1}"));
        }
        Ok(())
    }

    /// Both sides of the `p`-th power congruence for `x^t y`.
    pub fn power_congruence_sides(&self, cert: &QuadraticPairCertificate, t: u32) -> Result<(GroupElement, GroupElement)> {
        self.require_derived_power_low()?;
        let p = self.prime();
        if t >= p {
            return Err(Error::precondition("t must lie in [0, p)"));
        }
        let (x, y) = (&cert.x, &cert.y);
        let lhs = self.pth_power(&self.multiply(&self.power(x, t as i64), y));
        let pm = p as u64;
        let q = cert.h as u64 * t as u64 % pm * t as u64 % pm;
        let inv = mod_inverse(((1 + pm - q) % pm) as u32, p) as u64;
        let el = (pm - 2 * t as u64 % pm) % pm * inv % pm;
        let em = 2 * (t as u64 * t as u64 % pm) % pm * inv % pm;
        let mut rhs = self.power(&self.pth_power(x), t as i64);
        rhs = self.multiply(&rhs, &self.pth_power(y));
        rhs = self.multiply(&rhs, &self.power(&cert.l, el as i64));
        rhs = self.multiply(&rhs, &self.power(&cert.m, em as i64));
        Ok((lhs, rhs))
    }

    pub fn power_congruence_check(&self, cert: &QuadraticPairCertificate, t: u32) -> Result<bool> {
        let (lhs, rhs) = self.power_congruence_sides(cert, t)?;
        Ok(self.congruent_mod(&lhs, &rhs, &self.gamma(self.prime() as usize + 1)))
    }

    pub fn collision_scan(&self, cert: &QuadraticPairCertificate, t0: u32) -> Result<CollisionReport> {
        let p = self.prime();
        if self.gamma(p as usize).log_order() < 2 {
            return Err(Error::precondition("collision scan needs |gamma_p| >= p^2"));
        }
        if t0 >= p {
            return Err(Error::precondition("t0 must lie in [0, p)"));
        }
        let k = p as usize + 1;
        let sub = |t: u32| {
            let w = self.pth_power(&self.multiply(&self.power(&cert.x, t as i64), &cert.y));
            self.cyclic_mod(&w, k)
        };
        let target = sub(t0);
        let matches: Vec<u32> = (0..p).filter(|&t| sub(t) == target).collect();
        Ok(CollisionReport {
            t0,
            bound_satisfied: matches.len() <= 3,
            matches,
        })
    }

    pub fn companion_check(&self, m: &MaximalSubgroup, a: &GroupElement, b: &GroupElement) -> Result<bool> {
        self.require_derived_power_low()?;
        let d = self.derived_subgroup();
        for u in [a, b] {
            if d.contains(self, u) || !m.subgroup.contains(self, u) {
                return Err(Error::precondition("a and b must lie in M outside the derived subgroup"));
            }
        }
        let k = self.prime() as usize + 1;
        Ok(self.cyclic_mod(&self.pth_power(a), k) == self.cyclic_mod(&self.pth_power(b), k))
    }

    /// For each maximal subgroup `M`, the number of other maximal subgroups
    /// `M'` with `M^p = M'^p` modulo `gamma_{p+1}`, computed exactly in
    /// `G / gamma_{p+1}`.
    pub fn coincidence_counts(&self) -> Result<Vec<usize>> {
        let p = self.prime() as usize;
        if self.gamma(p).log_order() < 2 {
            return Err(Error::precondition("needs |gamma_p| >= p^2"));
        }
        let q = self.quotient(&self.gamma(p + 1))?;
        let powers: Vec<Subgroup> = self
            .maximal_subgroups()
            .iter()
            .map(|m| {
                let gens: Vec<_> = m.subgroup.basis().iter().map(|b| q.image(self, b)).collect();
                q.group.subgroup_agemo(&q.group.generated_subgroup(&gens))
            })
            .collect::<Result<_>>()?;
        Ok(powers
            .iter()
            .enumerate()
            .map(|(i, a)| powers.iter().enumerate().filter(|&(j, b)| j != i && a == b).count())
            .collect())
    }

    /// A triple from a certificate, for use with the Beauville module.
    pub fn quadratic_triple(&self, cert: &QuadraticPairCertificate) -> Result<GeneratingTriple> {
        GeneratingTriple::new(self, cert.x, cert.y)
    }
}
