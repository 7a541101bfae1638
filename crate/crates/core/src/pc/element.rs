use std::fmt;

use crate::pc::MAX_RANK;

pub(crate) type Exps = [u8; MAX_RANK];

/// An element in normal form `g_1^{e_1} ... g_n^{e_n}`, `0 <= e_i < p`.
///
/// Two elements of the same group are equal iff their exponent vectors are.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub(crate) e: Exps,
    pub(crate) rank: u8,
}

impl GroupElement {
    pub fn identity(rank: usize) -> Self {
        GroupElement {
            e: [0; MAX_RANK],
            rank: rank as u8,
        }
    }

    pub(crate) fn from_raw(e: Exps, rank: usize) -> Self {
        GroupElement { e, rank: rank as u8 }
    }

    /// Build from an exponent slice; entries must already lie in `[0, p)`.
    pub fn from_exponents(exps: &[u8]) -> Self {
        let mut e = [0; MAX_RANK];
        e[..exps.len()].copy_from_slice(exps);
        GroupElement {
            e,
            rank: exps.len() as u8,
        }
    }

    /// The generator `g_k`, 1-based.
    pub fn generator(rank: usize, k: usize) -> Self {
        let mut g = Self::identity(rank);
        g.e[k - 1] = 1;
        g
    }

    pub fn exponents(&self) -> &[u8] {
        &self.e[..self.rank as usize]
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn is_identity(&self) -> bool {
        self.exponents().iter().all(|&x| x == 0)
    }

    /// 0-based index of the first nonzero exponent; `rank` for the identity.
    pub fn depth(&self) -> usize {
        self.exponents()
            .iter()
            .position(|&x| x != 0)
            .unwrap_or(self.rank as usize)
    }

    pub fn leading_exponent(&self) -> u8 {
        let d = self.depth();
        if d < self.rank as usize {
            self.e[d]
        } else {
            0
        }
    }

    /// Mixed-radix index `sum e_i p^i`; a bijection onto `[0, p^n)`.
    pub fn index(&self, p: u32) -> u64 {
        self.exponents()
            .iter()
            .rev()
            .fold(0u64, |acc, &x| acc * p as u64 + x as u64)
    }

    pub fn from_index(mut idx: u64, p: u32, rank: usize) -> Self {
        let mut g = Self::identity(rank);
        for i in 0..rank {
            g.e[i] = (idx % p as u64) as u8;
            idx /= p as u64;
        }
        g
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.exponents().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        for idx in 0..125 {
            let g = GroupElement::from_index(idx, 5, 3);
            assert_eq!(g.index(5), idx);
        }
    }

    #[test]
    fn depth_and_lead() {
        let g = GroupElement::from_exponents(&[0, 0, 3, 1]);
        assert_eq!(g.depth(), 2);
        assert_eq!(g.leading_exponent(), 3);
        assert_eq!(GroupElement::identity(4).depth(), 4);
    }
}
