use serde::Serialize;

use super::linalg::left_nullspace;
use super::subgroup::Subgroup;
use crate::pc::{GroupElement, PcGroup};

/// A central series: descending for the lower series (`terms[0] = G`),
/// ascending for the upper series (`terms[0] = 1`).
#[derive(Clone, Debug)]
pub struct CentralSeries {
    pub terms: Vec<Subgroup>,
    /// `log_p |terms[i] : terms[i+1]|` (or the reverse for ascending series).
    pub widths: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SeriesSummary {
    pub orders: Vec<u32>,
    pub widths: Vec<usize>,
}

impl CentralSeries {
    fn new(terms: Vec<Subgroup>) -> Self {
        let widths = terms
            .windows(2)
            .map(|w| w[0].log_order().abs_diff(w[1].log_order()))
            .collect();
        CentralSeries { terms, widths }
    }

    /// `log_p` orders of the terms, in series order.
    pub fn log_orders(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.log_order()).collect()
    }
}

impl PcGroup {
    pub fn lower_central_series(&self) -> &CentralSeries {
        self.cache.lower.get_or_init(|| {
            let gens = self.generators();
            let mut terms = vec![Subgroup::whole(self)];
            loop {
                let last = terms.last().unwrap();
                if last.is_trivial() {
                    break;
                }
                let comms: Vec<GroupElement> = last
                    .basis()
                    .iter()
                    .flat_map(|u| gens.iter().map(move |t| (u, t)))
                    .map(|(u, t)| self.commutator(u, t))
                    .collect();
                let next = self.normal_closure(&comms);
                terms.push(next);
            }
            CentralSeries::new(terms)
        })
    }

    pub fn upper_central_series(&self) -> &CentralSeries {
        self.cache.upper.get_or_init(|| {
            let mut terms = vec![Subgroup::trivial(self.rank())];
            while terms.last().unwrap().log_order() < self.rank() {
                let next = self.centre_preimage(terms.last().unwrap());
                assert!(next.log_order() > terms.last().unwrap().log_order());
                terms.push(next);
            }
            CentralSeries::new(terms)
        })
    }

    /// `gamma_i(G)`, 1-based; trivial past the class.
    pub fn gamma(&self, i: usize) -> Subgroup {
        let lcs = self.lower_central_series();
        lcs.terms
            .get(i.max(1) - 1)
            .cloned()
            .unwrap_or_else(|| Subgroup::trivial(self.rank()))
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        self.gamma(2)
    }

    pub fn center(&self) -> Subgroup {
        self.upper_central_series().terms[1].clone()
    }

    pub fn nilpotency_class(&self) -> usize {
        self.lower_central_series().terms.len() - 1
    }

    /// Preimage of `Z(G/N)` for a normal subgroup `N`.
    ///
    /// Walks the central series `K_j = N G_j` from the top: `H` holds the
    /// elements whose commutators with `G` lie in `K_j`; passing to `K_{j+1}`
    /// is the kernel of the linear map `z -> ([z, g_k] mod K_{j+1})_k`.
    pub fn centre_preimage(&self, n: &Subgroup) -> Subgroup {
        let p = self.prime();
        let gens = self.generators();
        let mut h = Subgroup::whole(self);
        let mut k_next = self.join(n, &Subgroup::tail(self, 1));
        for j in 0..self.rank() {
            let k_cur = k_next;
            k_next = self.join(n, &Subgroup::tail(self, j + 2));
            if k_cur.log_order() == k_next.log_order() {
                continue;
            }
            let gj_neg: Vec<GroupElement> = (0..p)
                .map(|e| self.power(&self.generator(j + 1), -(e as i64)))
                .collect();
            let coord = |c: &GroupElement| -> u32 {
                (0..p)
                    .find(|&e| k_next.contains(self, &self.multiply(c, &gj_neg[e as usize])))
                    .expect("commutator escaped the current series term")
            };
            let rows: Vec<Vec<u32>> = h
                .basis()
                .iter()
                .map(|b| gens.iter().map(|t| coord(&self.commutator(b, t))).collect())
                .collect();
            let null = left_nullspace(&rows, p);
            let rank = h.log_order() - null.len();
            if rank == 0 {
                continue;
            }
            let basis = h.basis().to_vec();
            let mut seeds: Vec<GroupElement> = null
                .iter()
                .map(|c| {
                    basis
                        .iter()
                        .zip(c)
                        .fold(self.identity(), |acc, (b, &e)| self.multiply(&acc, &self.power(b, e as i64)))
                })
                .collect();
            for (i, a) in basis.iter().enumerate() {
                seeds.push(self.pth_power(a));
                for b in &basis[i + 1..] {
                    seeds.push(self.commutator(a, b));
                }
            }
            let expected = h.log_order() - rank;
            h = self.normal_closure_in(&h, &seeds);
            assert_eq!(h.log_order(), expected, "kernel has the wrong order");
        }
        h
    }

    /// True iff `G'` is abelian.
    pub fn is_metabelian(&self) -> bool {
        let d = self.derived_subgroup();
        let b = d.basis();
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| self.commutator(&b[i], &b[j]).is_identity()))
    }

    /// Class equals `log_p |G| - 1`; groups of order `p^2` (abelian) are
    /// reported as not of maximal class.
    pub fn is_maximal_class(&self) -> bool {
        self.rank() >= 3 && self.nilpotency_class() == self.rank() - 1
    }

    pub fn lower_summary(&self) -> SeriesSummary {
        let s = self.lower_central_series();
        SeriesSummary {
            orders: s.log_orders().iter().map(|&x| x as u32).collect(),
            widths: s.widths.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_series() {
        let g = PcGroup::parse("p 5\nn 3\ncomm 2 1 = g3\n").unwrap();
        assert_eq!(g.lower_central_series().log_orders(), vec![3, 1, 0]);
        assert_eq!(g.nilpotency_class(), 2);
        assert_eq!(g.center().order(5), 5);
        assert_eq!(g.upper_central_series().log_orders(), vec![0, 1, 3]);
        assert!(g.is_metabelian());
        assert!(g.is_maximal_class());
    }

    #[test]
    fn elementary_abelian_series() {
        let g = PcGroup::parse("p 5\nn 2\n").unwrap();
        assert_eq!(g.lower_central_series().log_orders(), vec![2, 0]);
        assert_eq!(g.nilpotency_class(), 1);
        assert_eq!(g.center().order(5), 25);
        assert!(!g.is_maximal_class());
    }
}
