use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pc::{GroupElement, PcGroup};
use crate::structure::subgroup::mod_inverse;

/// A generating pair together with its product and the three orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratingTriple {
    #[serde(serialize_with = "ser_elem")]
    pub x: GroupElement,
    #[serde(serialize_with = "ser_elem")]
    pub y: GroupElement,
    #[serde(serialize_with = "ser_elem")]
    pub xy: GroupElement,
    pub orders: [u128; 3],
}

pub(crate) fn ser_elem<S: serde::Serializer>(e: &GroupElement, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(e.exponents().iter())
}

impl GeneratingTriple {
    pub fn new(g: &PcGroup, x: GroupElement, y: GroupElement) -> Result<Self> {
        if !g.is_generating_pair(&x, &y) {
            return Err(Error::precondition(format!("({}, {}) does not generate the group", x, y)));
        }
        let xy = g.multiply(&x, &y);
        let orders = [g.element_order(&x), g.element_order(&y), g.element_order(&xy)];
        Ok(GeneratingTriple { x, y, xy, orders })
    }

    pub fn members(&self) -> [GroupElement; 3] {
        [self.x, self.y, self.xy]
    }
}

/// The order-`p` subgroups that are socles of conjugates of `<x>`, `<y>`
/// and `<xy>`, each stored by its generator with leading exponent 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaFingerprint {
    #[serde(skip)]
    pub socles: Vec<GroupElement>,
    pub size: usize,
}

impl SigmaFingerprint {
    pub fn is_disjoint(&self, other: &SigmaFingerprint) -> bool {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.socles, &other.socles);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }
}

impl PcGroup {
    /// Generator of `<z>` with leading exponent 1.
    pub fn normalize_cyclic(&self, z: &GroupElement) -> GroupElement {
        let lead = z.leading_exponent();
        if lead <= 1 {
            return *z;
        }
        self.power(z, mod_inverse(lead as u32, self.prime()) as i64)
    }

    /// The unique order-`p` subgroup of `<u>`, normalized.
    pub fn socle_generator(&self, u: &GroupElement) -> Result<GroupElement> {
        if u.is_identity() {
            return Err(Error::precondition("the identity has no socle"));
        }
        let o = self.element_order(u);
        let z = self.power(u, (o / self.prime() as u128) as i64);
        Ok(self.normalize_cyclic(&z))
    }

    /// A minimal generating set (lifts of a basis of `G/Phi(G)`).
    pub fn minimal_generators(&self) -> Vec<GroupElement> {
        let d = self.generator_rank();
        (0..d)
            .map(|i| {
                let mut v = vec![0u8; d];
                v[i] = 1;
                self.frattini_lift(&v)
            })
            .collect()
    }

    /// Conjugates of the order-`p` subgroup generated by `z`, normalized.
    pub fn socle_orbit(&self, z: &GroupElement) -> Vec<GroupElement> {
        let gens = self.minimal_generators();
        let start = self.normalize_cyclic(z);
        let mut seen = vec![start];
        let mut set: std::collections::HashSet<GroupElement> = [start].into_iter().collect();
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for t in &gens {
                let d = self.normalize_cyclic(&self.conjugate(&c, t));
                if set.insert(d) {
                    seen.push(d);
                    queue.push_back(d);
                }
            }
        }
        seen.sort();
        seen
    }

    pub fn sigma_fingerprint(&self, x: &GroupElement, y: &GroupElement) -> Result<SigmaFingerprint> {
        let xy = self.multiply(x, y);
        let mut socles = Vec::new();
        for u in [x, y, &xy] {
            let z = self.socle_generator(u)?;
            socles.extend(self.socle_orbit(&z));
        }
        socles.sort();
        socles.dedup();
        Ok(SigmaFingerprint {
            size: socles.len(),
            socles,
        })
    }

    /// `Sigma(x, y)` as an element set, indexed by [`GroupElement::index`].
    pub fn sigma_element_set(&self, x: &GroupElement, y: &GroupElement) -> Result<Vec<bool>> {
        self.ensure_budget(self.order())?;
        let p = self.prime();
        let mut set = vec![false; self.order() as usize];
        let gens = self.minimal_generators();
        let xy = self.multiply(x, y);
        for u in [*x, *y, xy] {
            let mut conj: std::collections::HashSet<GroupElement> = [u].into_iter().collect();
            let mut queue = VecDeque::from([u]);
            while let Some(c) = queue.pop_front() {
                let mut pw = self.identity();
                loop {
                    set[pw.index(p) as usize] = true;
                    pw = self.multiply(&pw, &c);
                    if pw.is_identity() {
                        break;
                    }
                }
                for t in &gens {
                    let d = self.conjugate(&c, t);
                    if conj.insert(d) {
                        queue.push_back(d);
                    }
                }
            }
        }
        Ok(set)
    }

    /// Oracle for condition (2): the two `Sigma` sets meet only in 1.
    pub fn sigma_sets_meet_trivially(&self, t1: (&GroupElement, &GroupElement), t2: (&GroupElement, &GroupElement)) -> Result<bool> {
        let a = self.sigma_element_set(t1.0, t1.1)?;
        let b = self.sigma_element_set(t2.0, t2.1)?;
        Ok(a.iter().zip(&b).skip(1).all(|(&u, &v)| !(u && v)))
    }

    /// Condition (2) for two generating triples, by socle disjointness.
    pub fn is_beauville_pair(&self, t1: &GeneratingTriple, t2: &GeneratingTriple) -> Result<bool> {
        for t in [t1, t2] {
            if !self.is_generating_pair(&t.x, &t.y) {
                return Err(Error::precondition("triple does not generate the group"));
            }
        }
        let f1 = self.sigma_fingerprint(&t1.x, &t1.y)?;
        let f2 = self.sigma_fingerprint(&t2.x, &t2.y)?;
        Ok(f1.is_disjoint(&f2))
    }
}

/// Memoized map from order-`p` subgroups to conjugacy-class ids.
pub(crate) struct SocleClasses<'a> {
    g: &'a PcGroup,
    class_of: HashMap<GroupElement, u32>,
    pub(crate) sizes: Vec<usize>,
}

impl<'a> SocleClasses<'a> {
    pub(crate) fn new(g: &'a PcGroup) -> Self {
        SocleClasses {
            g,
            class_of: HashMap::new(),
            sizes: Vec::new(),
        }
    }

    /// Class id of the socle of `<u>`, for nontrivial `u`.
    pub(crate) fn class_of_element(&mut self, u: &GroupElement) -> u32 {
        let z = self.g.socle_generator(u).expect("nontrivial element");
        self.class_of_socle(&z)
    }

    pub(crate) fn class_of_socle(&mut self, z: &GroupElement) -> u32 {
        if let Some(&c) = self.class_of.get(z) {
            return c;
        }
        let orbit = self.g.socle_orbit(z);
        let id = self.sizes.len() as u32;
        self.sizes.push(orbit.len());
        for s in orbit {
            self.class_of.insert(s, id);
        }
        id
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_fingerprint_is_three_directions() {
        let g = PcGroup::parse("p 5\nn 2\n").unwrap();
        let x = g.element(&[1, 0]).unwrap();
        let y = g.element(&[0, 1]).unwrap();
        let f = g.sigma_fingerprint(&x, &y).unwrap();
        assert_eq!(f.size, 3);
        let x2 = g.power(&x, 2);
        let y2 = g.power(&y, 2);
        let f2 = g.sigma_fingerprint(&x2, &y2).unwrap();
        assert!(!f.is_disjoint(&f2));
    }

    #[test]
    fn abelian_beauville_pair() {
        let g = PcGroup::parse("p 5\nn 2\n").unwrap();
        let e = |a, b| g.element(&[a, b]).unwrap();
        let t1 = GeneratingTriple::new(&g, e(1, 0), e(0, 1)).unwrap();
        let t2 = GeneratingTriple::new(&g, e(1, 2), e(1, 3)).unwrap();
        assert_eq!(t2.xy, e(2, 0));
        // (2,0) spans the same line as (1,0).
        assert!(!g.is_beauville_pair(&t1, &t2).unwrap());
        let t3 = GeneratingTriple::new(&g, e(1, 2), e(1, 4)).unwrap();
        assert!(g.is_beauville_pair(&t1, &t3).unwrap());
        assert!(!g.is_beauville_pair(&t1, &t1).unwrap());
    }

    #[test]
    fn identity_has_no_socle() {
        let g = PcGroup::parse("p 5\nn 2\n").unwrap();
        assert!(g.sigma_fingerprint(&g.identity(), &g.generator(1)).is_err());
    }
}
