use super::subgroup::Subgroup;
use crate::pc::element::Exps;
use crate::pc::{GroupElement, PcGroup};

pub(crate) struct FrattiniData {
    pub phi: Subgroup,
    /// 0-based pc positions that are not leading depths of `phi`; the
    /// corresponding generators form a basis of `G/phi`.
    pub free: Vec<usize>,
    /// `phi = G_{d+1}`, so coordinates are the first `d` exponents.
    pub is_tail: bool,
    /// `g_k^-e` for free positions.
    neg_gen: Vec<Vec<Exps>>,
}

/// A maximal subgroup, the kernel of a linear functional on `G/Phi(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalSubgroup {
    /// Normalized functional (first nonzero entry 1).
    pub functional: Vec<u8>,
    pub subgroup: Subgroup,
}

impl MaximalSubgroup {
    /// Whether an element with Frattini coordinates `coords` lies in it.
    pub fn contains_coords(&self, coords: &[u8], p: u32) -> bool {
        dot(&self.functional, coords, p) == 0
    }
}

pub(crate) fn dot(a: &[u8], b: &[u8], p: u32) -> u32 {
    a.iter().zip(b).map(|(&x, &y)| x as u32 * y as u32).sum::<u32>() % p
}

/// Scale so that the first nonzero entry is 1; the zero vector is unchanged.
pub fn normalize_direction(v: &[u8], p: u32) -> Vec<u8> {
    match v.iter().find(|&&x| x != 0) {
        None => v.to_vec(),
        Some(&lead) => {
            let inv = super::subgroup::mod_inverse(lead as u32, p);
            v.iter().map(|&x| (x as u32 * inv % p) as u8).collect()
        }
    }
}

/// All normalized nonzero vectors of `F_p^d` in lexicographic order.
pub fn projective_points(d: usize, p: u32) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let total = (p as u64).pow(d as u32);
    for idx in 1..total {
        let mut v = vec![0u8; d];
        let mut r = idx;
        for i in (0..d).rev() {
            v[i] = (r % p as u64) as u8;
            r /= p as u64;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

impl PcGroup {
    pub(crate) fn frattini_data(&self) -> &FrattiniData {
        self.cache.frattini.get_or_init(|| {
            let mut seeds = Vec::new();
            let gens = self.generators();
            for (i, a) in gens.iter().enumerate() {
                seeds.push(self.pth_power(a));
                for b in &gens[i + 1..] {
                    seeds.push(self.commutator(a, b));
                }
            }
            let phi = self.normal_closure(&seeds);
            let free: Vec<usize> = (0..self.rank()).filter(|&k| !phi.has_lead(k)).collect();
            let d = free.len();
            let is_tail = free.iter().enumerate().all(|(i, &k)| i == k)
                && phi.log_order() == self.rank() - d;
            let neg_gen = free
                .iter()
                .map(|&k| {
                    (1..self.prime())
                        .map(|e| self.power(&self.generator(k + 1), -(e as i64)).e)
                        .collect()
                })
                .collect();
            FrattiniData {
                phi,
                free,
                is_tail,
                neg_gen,
            }
        })
    }

    /// `Phi(G) = G^p G'`.
    pub fn frattini(&self) -> Subgroup {
        self.frattini_data().phi.clone()
    }

    /// Minimal number of generators, `log_p |G : Phi(G)|`.
    pub fn generator_rank(&self) -> usize {
        self.frattini_data().free.len()
    }

    /// Coordinates of `x Phi(G)` in the basis given by the free pc generators.
    pub fn frattini_coords(&self, x: &GroupElement) -> Vec<u8> {
        let fd = self.frattini_data();
        let d = fd.free.len();
        if fd.is_tail {
            return x.exponents()[..d].to_vec();
        }
        let mut out = vec![0u8; d];
        let mut e = x.e;
        let mut fi = 0;
        for k in 0..self.rank() {
            let c = e[k];
            let is_free = fi < d && fd.free[fi] == k;
            if c != 0 {
                if is_free {
                    out[fi] = c;
                    self.mul_raw(&mut e, &fd.neg_gen[fi][c as usize - 1], k);
                } else {
                    fd.phi.clear_lead(self, &mut e, k);
                }
            }
            if is_free {
                fi += 1;
            }
        }
        out
    }

    /// An element with the given Frattini coordinates.
    pub fn frattini_lift(&self, coords: &[u8]) -> GroupElement {
        let fd = self.frattini_data();
        let mut acc = self.identity();
        for (&k, &c) in fd.free.iter().zip(coords) {
            if c != 0 {
                acc = self.multiply(&acc, &self.power(&self.generator(k + 1), c as i64));
            }
        }
        acc
    }

    /// Maximal subgroups, sorted lexicographically by echelon basis.
    pub fn maximal_subgroups(&self) -> &[MaximalSubgroup] {
        self.cache.maximal.get_or_init(|| {
            let p = self.prime();
            let d = self.generator_rank();
            let phi = self.frattini();
            let mut out: Vec<MaximalSubgroup> = projective_points(d, p)
                .into_iter()
                .map(|lambda| {
                    let i0 = lambda.iter().position(|&x| x != 0).unwrap();
                    let mut gens = phi.basis().to_vec();
                    for i in (0..d).filter(|&i| i != i0) {
                        let mut v = vec![0u8; d];
                        v[i] = 1;
                        v[i0] = ((p - lambda[i] as u32) % p) as u8;
                        gens.push(self.frattini_lift(&v));
                    }
                    MaximalSubgroup {
                        functional: lambda,
                        subgroup: self.generated_subgroup(&gens),
                    }
                })
                .collect();
            out.sort_by(|a, b| a.subgroup.cmp(&b.subgroup));
            out
        })
    }

    /// For a 2-generator group: the normalized direction of `x Phi(G)`,
    /// or `None` for elements of `Phi(G)`.
    pub fn frattini_direction(&self, x: &GroupElement) -> Option<Vec<u8>> {
        let c = self.frattini_coords(x);
        if c.iter().all(|&v| v == 0) {
            None
        } else {
            Some(normalize_direction(&c, self.prime()))
        }
    }

    /// Whether `x` and `y` generate `G`.
    pub fn is_generating_pair(&self, x: &GroupElement, y: &GroupElement) -> bool {
        let p = self.prime();
        let cx: Vec<u32> = self.frattini_coords(x).iter().map(|&v| v as u32).collect();
        let cy: Vec<u32> = self.frattini_coords(y).iter().map(|&v| v as u32).collect();
        super::linalg::rank(&[cx, cy], p) == self.generator_rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_maximal_subgroups() {
        let g = PcGroup::parse("p 5\nn 3\ncomm 2 1 = g3\n").unwrap();
        assert_eq!(g.frattini().order(5), 5);
        let ms = g.maximal_subgroups();
        assert_eq!(ms.len(), 6);
        assert!(ms.iter().all(|m| m.subgroup.order(5) == 25));
        let mut sorted = ms.to_vec();
        sorted.sort_by(|a, b| a.subgroup.cmp(&b.subgroup));
        assert_eq!(sorted, ms);
    }

    #[test]
    fn coords_without_tail_shortcut() {
        // Phi = <g2> but g3 is free.
        let g = PcGroup::parse("p 3\nn 3\npow 1 = g2\n").unwrap();
        assert_eq!(g.generator_rank(), 2);
        let x = g.element(&[1, 2, 2]).unwrap();
        assert_eq!(g.frattini_coords(&x), vec![1, 2]);
        for idx in 0..27 {
            let x = g.element_from_index(idx);
            let back = g.frattini_lift(&g.frattini_coords(&x));
            assert!(g.frattini().contains(&g, &g.multiply(&g.inverse(&back), &x)));
        }
    }

    #[test]
    fn generating_pairs() {
        let g = PcGroup::parse("p 5\nn 3\ncomm 2 1 = g3\n").unwrap();
        assert!(g.is_generating_pair(&g.generator(1), &g.generator(2)));
        let g1g3 = g.element(&[1, 0, 1]).unwrap();
        assert!(!g.is_generating_pair(&g.generator(1), &g1g3));
        assert!(!g.is_generating_pair(&g.generator(3), &g.generator(2)));
    }

    #[test]
    fn projective_point_count() {
        assert_eq!(projective_points(2, 5).len(), 6);
        assert_eq!(projective_points(3, 3).len(), 13);
    }
}
