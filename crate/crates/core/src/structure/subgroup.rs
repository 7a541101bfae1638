use std::cmp::Ordering;
use std::fmt;

use crate::pc::element::Exps;
use crate::pc::{GroupElement, PcGroup, MAX_RANK};

const NO_LEAD: u8 = u8::MAX;

/// A subgroup stored by its canonical induced generating sequence.
///
/// Basis elements have strictly increasing depths, leading exponent 1, and
/// every basis element has exponent 0 at the depth of every other basis
/// element. Equal subgroups therefore have identical bases.
#[derive(Clone)]
pub struct Subgroup {
    basis: Vec<GroupElement>,
    slot: [u8; MAX_RANK],
    /// `neg[i][e-1] = basis[i]^-e` for `1 <= e < p`.
    neg: Vec<Vec<Exps>>,
    rank: usize,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for Subgroup {}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    /// Lexicographic on echelon bases.
    fn cmp(&self, other: &Self) -> Ordering {
        self.basis
            .iter()
            .map(|b| b.exponents())
            .cmp(other.basis.iter().map(|b| b.exponents()))
    }
}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.basis.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.basis.iter()).finish()
    }
}

impl Subgroup {
    pub fn trivial(rank: usize) -> Self {
        Subgroup {
            basis: Vec::new(),
            slot: [NO_LEAD; MAX_RANK],
            neg: Vec::new(),
            rank,
        }
    }

    /// `G_k = <g_k, ..., g_n>` (1-based `k`; `k = n+1` gives the trivial group).
    pub fn tail(g: &PcGroup, k: usize) -> Self {
        let gens: Vec<_> = (k..=g.rank()).map(|i| g.generator(i)).collect();
        Self::from_echelon(g, gens)
    }

    pub fn whole(g: &PcGroup) -> Self {
        Self::tail(g, 1)
    }

    fn from_echelon(g: &PcGroup, basis: Vec<GroupElement>) -> Self {
        let mut slot = [NO_LEAD; MAX_RANK];
        for (i, b) in basis.iter().enumerate() {
            slot[b.depth()] = i as u8;
        }
        let neg = basis
            .iter()
            .map(|b| {
                let inv = g.inverse(b);
                let mut out = Vec::with_capacity(g.prime() as usize - 1);
                let mut acc = inv;
                for _ in 1..g.prime() {
                    out.push(acc.e);
                    acc = g.multiply(&acc, &inv);
                }
                out
            })
            .collect();
        Subgroup {
            basis,
            slot,
            neg,
            rank: g.rank(),
        }
    }

    pub fn basis(&self) -> &[GroupElement] {
        &self.basis
    }

    /// `log_p` of the order.
    pub fn log_order(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self, p: u32) -> u128 {
        (p as u128).pow(self.basis.len() as u32)
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    /// 0-based depths of the basis elements.
    pub fn leads(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.depth()).collect()
    }

    pub fn has_lead(&self, depth: usize) -> bool {
        self.slot[depth] != NO_LEAD
    }

    /// Divide `x` on the right by basis elements until its depth is not a
    /// leading depth; the identity is returned iff `x` is a member.
    pub fn sift(&self, g: &PcGroup, x: &GroupElement) -> GroupElement {
        let mut e = x.e;
        self.sift_raw(g, &mut e, 0);
        GroupElement::from_raw(e, self.rank)
    }

    pub(crate) fn sift_raw(&self, g: &PcGroup, e: &mut Exps, from: usize) {
        for k in from..self.rank {
            let c = e[k];
            if c == 0 {
                continue;
            }
            let s = self.slot[k];
            if s == NO_LEAD {
                return;
            }
            let f = &self.neg[s as usize][c as usize - 1];
            g.mul_raw(e, f, k);
        }
    }

    /// Clear the exponent at leading depth `k` of `e` (zero before `k`).
    pub(crate) fn clear_lead(&self, g: &PcGroup, e: &mut Exps, k: usize) {
        let c = e[k];
        if c != 0 {
            let s = self.slot[k];
            debug_assert!(s != NO_LEAD);
            g.mul_raw(e, &self.neg[s as usize][c as usize - 1], k);
        }
    }

    /// Like [`sift`](Self::sift) but keeps going past missing leads, so the
    /// result has zero exponent at every leading depth.
    pub fn reduce(&self, g: &PcGroup, x: &GroupElement) -> GroupElement {
        let mut e = x.e;
        for k in 0..self.rank {
            let c = e[k];
            if c == 0 {
                continue;
            }
            let s = self.slot[k];
            if s != NO_LEAD {
                let f = &self.neg[s as usize][c as usize - 1];
                g.mul_raw(&mut e, f, k);
            }
        }
        GroupElement::from_raw(e, self.rank)
    }

    pub fn contains(&self, g: &PcGroup, x: &GroupElement) -> bool {
        self.sift(g, x).is_identity()
    }

    pub fn is_subgroup_of(&self, g: &PcGroup, other: &Subgroup) -> bool {
        self.basis.len() <= other.basis.len() && self.basis.iter().all(|b| other.contains(g, b))
    }

    /// Visit every element exactly once, as products `b_1^{c_1} ... b_m^{c_m}`.
    pub fn for_each_element(&self, g: &PcGroup, mut f: impl FnMut(&GroupElement)) {
        fn rec(
            s: &Subgroup,
            g: &PcGroup,
            i: usize,
            acc: GroupElement,
            f: &mut dyn FnMut(&GroupElement),
        ) {
            if i == s.basis.len() {
                f(&acc);
                return;
            }
            let mut cur = acc;
            for c in 0..g.prime() {
                if c > 0 {
                    cur = g.multiply(&cur, &s.basis[i]);
                }
                rec(s, g, i + 1, cur, f);
            }
        }
        rec(self, g, 0, g.identity(), &mut f);
    }

    pub fn elements(&self, g: &PcGroup) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.order(g.prime()) as usize);
        self.for_each_element(g, |x| out.push(*x));
        out
    }

    /// Elements of a transversal of `self` in `sup` (which must contain
    /// `self`): products of the `sup` basis elements whose depths are not
    /// leading depths of `self`.
    pub fn transversal_in(&self, g: &PcGroup, sup: &Subgroup) -> Vec<GroupElement> {
        let free: Vec<GroupElement> = sup
            .basis
            .iter()
            .filter(|b| !self.has_lead(b.depth()))
            .copied()
            .collect();
        let mut out = vec![g.identity()];
        for b in free.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * g.prime() as usize);
            let mut pw = g.identity();
            for c in 0..g.prime() {
                if c > 0 {
                    pw = g.multiply(&pw, b);
                }
                for t in &out {
                    next.push(g.multiply(&pw, t));
                }
            }
            out = next;
        }
        out
    }
}

/// Incremental closure: members are added by sifting, and every new basis
/// element schedules its `p`-th power and its commutators with the current
/// basis and with `extra` (conjugating elements for normal closures).
pub(crate) struct Closure<'a> {
    g: &'a PcGroup,
    elems: Vec<Option<(Exps, Vec<Exps>)>>,
    queue: Vec<GroupElement>,
    extra: Vec<GroupElement>,
    count: usize,
}

impl<'a> Closure<'a> {
    pub(crate) fn new(g: &'a PcGroup, extra: Vec<GroupElement>) -> Self {
        Closure {
            g,
            elems: vec![None; g.rank()],
            queue: Vec::new(),
            extra,
            count: 0,
        }
    }

    pub(crate) fn from_subgroup(g: &'a PcGroup, h: &Subgroup, extra: Vec<GroupElement>) -> Self {
        let mut c = Self::new(g, extra);
        for (i, b) in h.basis.iter().enumerate() {
            c.elems[b.depth()] = Some((b.e, h.neg[i].clone()));
            c.count += 1;
        }
        c
    }

    pub(crate) fn log_order(&self) -> usize {
        self.count
    }

    fn sift(&self, e: &mut Exps) -> Option<usize> {
        for k in 0..self.g.rank() {
            let c = e[k];
            if c == 0 {
                continue;
            }
            match &self.elems[k] {
                Some((_, neg)) => self.g.mul_raw(e, &neg[c as usize - 1], k),
                None => return Some(k),
            }
        }
        None
    }

    pub(crate) fn contains(&self, x: &GroupElement) -> bool {
        let mut e = x.e;
        self.sift(&mut e).is_none()
    }

    /// Add `x`; returns whether the subgroup grew.
    pub(crate) fn add(&mut self, x: &GroupElement) -> bool {
        let before = self.count;
        self.queue.push(*x);
        self.run();
        self.count > before
    }

    pub(crate) fn add_all(&mut self, xs: &[GroupElement]) {
        self.queue.extend_from_slice(xs);
        self.run();
    }

    fn run(&mut self) {
        let g = self.g;
        let p = g.prime();
        let n = g.rank();
        while let Some(x) = self.queue.pop() {
            let mut e = x.e;
            let Some(k) = self.sift(&mut e) else { continue };
            let r = GroupElement::from_raw(e, n);
            let lead = r.e[k] as u32;
            let inv = mod_inverse(lead, p);
            let r = g.power(&r, inv as i64);
            let ri = g.inverse(&r);
            let mut neg = Vec::with_capacity(p as usize - 1);
            let mut acc = ri;
            for _ in 1..p {
                neg.push(acc.e);
                acc = g.multiply(&acc, &ri);
            }
            self.elems[k] = Some((r.e, neg));
            self.count += 1;
            self.queue.push(g.pth_power(&r));
            for other in self.elems.iter().flatten() {
                let b = GroupElement::from_raw(other.0, n);
                self.queue.push(g.commutator(&r, &b));
            }
            for t in &self.extra {
                self.queue.push(g.commutator(&r, t));
            }
        }
    }

    pub(crate) fn finish(self) -> Subgroup {
        let g = self.g;
        let n = g.rank();
        let mut basis: Vec<GroupElement> = self
            .elems
            .iter()
            .flatten()
            .map(|(e, _)| GroupElement::from_raw(*e, n))
            .collect();
        // Clear each later leading depth from every earlier basis element.
        for j in 0..basis.len() {
            let dj = basis[j].depth();
            let bj = basis[j];
            for i in 0..j {
                let c = basis[i].e[dj];
                if c != 0 {
                    let f = g.power(&bj, -(c as i64));
                    basis[i] = g.multiply(&basis[i], &f);
                }
            }
        }
        Subgroup::from_echelon(g, basis)
    }
}

pub(crate) fn mod_inverse(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

impl PcGroup {
    /// The canonical subgroup `<gens>`.
    pub fn generated_subgroup(&self, gens: &[GroupElement]) -> Subgroup {
        let mut c = Closure::new(self, Vec::new());
        c.add_all(gens);
        c.finish()
    }

    /// The smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[GroupElement]) -> Subgroup {
        let mut c = Closure::new(self, self.generators());
        c.add_all(gens);
        c.finish()
    }

    /// Normal closure of `gens` inside `h` (the conjugators are `h`'s basis).
    pub fn normal_closure_in(&self, h: &Subgroup, gens: &[GroupElement]) -> Subgroup {
        let mut c = Closure::new(self, h.basis().to_vec());
        c.add_all(gens);
        c.finish()
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut c = Closure::from_subgroup(self, a, Vec::new());
        c.add_all(b.basis());
        c.finish()
    }

    /// Whether `h` is normalized by every pc generator.
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        h.basis().iter().all(|b| {
            self.generators()
                .iter()
                .all(|t| h.contains(self, &self.conjugate(b, t)))
        })
    }
}
