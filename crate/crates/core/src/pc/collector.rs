//! Collection from the left over precomputed conjugation tables.
//!
//! For `j > k` the tables hold `(g_j^(g_k^c))^t` in normal form. Because
//! `[g_j, g_i]` only involves generators after `g_j`, every `G_k = <g_k..g_n>`
//! is normal and `G_k / G_{k+1}` is central, so multiplying a normal form by
//! `g_k^c` only rewrites the tail after position `k`. The longest abelian
//! tail `G_m` is handled by vector addition with carries.

use crate::pc::element::Exps;
use crate::pc::presentation::PcPresentation;
use crate::pc::MAX_RANK;

pub(crate) struct Collector {
    p: u32,
    n: usize,
    abelian_from: usize,
    power: Vec<Exps>,
    trivial_action: Vec<bool>,
    conj: Vec<Exps>,
}

fn dense(w: &crate::pc::presentation::Word) -> Exps {
    let mut e = [0u8; MAX_RANK];
    for &(k, x) in &w.terms {
        e[k - 1] = x as u8;
    }
    e
}

impl Collector {
    pub(crate) fn new(pres: &PcPresentation) -> Self {
        let n = pres.rank;
        let p = pres.prime;
        let power: Vec<Exps> = pres.power.iter().map(dense).collect();
        let comm: Vec<Vec<Exps>> = pres
            .comm
            .iter()
            .map(|row| row.iter().map(dense).collect())
            .collect();

        let trivial_action: Vec<bool> = (0..n)
            .map(|k| (k + 1..n).all(|j| comm[j][k].iter().all(|&x| x == 0)))
            .collect();
        let mut abelian_from = n;
        while abelian_from > 0 && trivial_action[abelian_from - 1] {
            abelian_from -= 1;
        }

        let q = (p - 1) as usize;
        let mut col = Collector {
            p,
            n,
            abelian_from,
            power,
            trivial_action,
            conj: vec![[0u8; MAX_RANK]; abelian_from * n * q * q],
        };

        for k in (0..abelian_from).rev() {
            if col.trivial_action[k] {
                continue;
            }
            for j in k + 1..n {
                let mut v = comm[j][k];
                v[j] = 1;
                col.set(k, 1, j, 1, v);
            }
            col.fill_powers(k, 1);
            for c in 2..p as u8 {
                for j in k + 1..n {
                    let u = col.get(k, c - 1, j, 1);
                    let mut acc = [0u8; MAX_RANK];
                    for i in k + 1..n {
                        if u[i] != 0 {
                            let f = col.get(k, 1, i, u[i]);
                            col.mul_into(&mut acc, &f, i);
                        }
                    }
                    col.set(k, c, j, 1, acc);
                }
                col.fill_powers(k, c);
            }
        }
        col
    }

    #[inline]
    fn slot(&self, k: usize, c: u8, j: usize, t: u8) -> usize {
        let q = (self.p - 1) as usize;
        ((k * self.n + j) * q + (c as usize - 1)) * q + (t as usize - 1)
    }

    #[inline]
    fn get(&self, k: usize, c: u8, j: usize, t: u8) -> Exps {
        self.conj[self.slot(k, c, j, t)]
    }

    fn set(&mut self, k: usize, c: u8, j: usize, t: u8, v: Exps) {
        let s = self.slot(k, c, j, t);
        self.conj[s] = v;
    }

    fn fill_powers(&mut self, k: usize, c: u8) {
        for j in k + 1..self.n {
            let base = self.get(k, c, j, 1);
            let mut v = base;
            for t in 2..self.p as u8 {
                self.mul_into(&mut v, &base, j);
                self.set(k, c, j, t, v);
            }
        }
    }

    pub(crate) fn power_word(&self, k: usize) -> Exps {
        self.power[k]
    }

    /// `e <- e * b`, where `b` is zero before position `from`.
    pub(crate) fn mul_into(&self, e: &mut Exps, b: &Exps, from: usize) {
        for k in from..self.n {
            let c = b[k];
            if c == 0 {
                continue;
            }
            if k >= self.abelian_from {
                self.abelian_add(e, b, k);
                return;
            }
            self.mul_gen_power(e, k, c);
        }
    }

    /// `e <- e * g_k^c` for `0 < c < p`.
    pub(crate) fn mul_gen_power(&self, e: &mut Exps, k: usize, c: u8) {
        let n = self.n;
        if k >= self.abelian_from {
            let mut b = [0u8; MAX_RANK];
            b[k] = c;
            self.abelian_add(e, &b, k);
            return;
        }
        let mut tail = [0u8; MAX_RANK];
        let mut tail_nonzero = false;
        for j in k + 1..n {
            tail[j] = e[j];
            tail_nonzero |= e[j] != 0;
            e[j] = 0;
        }
        let s = e[k] as u32 + c as u32;
        let overflow = s >= self.p;
        e[k] = (s % self.p) as u8;

        if self.trivial_action[k] || !tail_nonzero {
            if overflow {
                let mut acc = self.power[k];
                if tail_nonzero {
                    self.mul_into(&mut acc, &tail, k + 1);
                }
                e[k + 1..n].copy_from_slice(&acc[k + 1..n]);
            } else {
                e[k + 1..n].copy_from_slice(&tail[k + 1..n]);
            }
            return;
        }

        let mut acc = if overflow {
            self.power[k]
        } else {
            [0u8; MAX_RANK]
        };
        let m = self.abelian_from;
        for j in k + 1..m.min(n) {
            if tail[j] != 0 {
                let f = self.get(k, c, j, tail[j]);
                self.mul_into(&mut acc, &f, j);
            }
        }
        let start = m.max(k + 1);
        if (start..n).any(|j| tail[j] != 0) {
            let mut sum = [0u32; MAX_RANK];
            for j in start..n {
                sum[j] = acc[j] as u32;
            }
            for j in start..n {
                if tail[j] != 0 {
                    let f = self.get(k, c, j, tail[j]);
                    for i in j..n {
                        sum[i] += f[i] as u32;
                    }
                }
            }
            self.carry(&mut acc, &mut sum, start);
        }
        e[k + 1..n].copy_from_slice(&acc[k + 1..n]);
    }

    /// Product inside the abelian tail: positions `>= from` of `e` and `b`
    /// both lie in `G_m`.
    fn abelian_add(&self, e: &mut Exps, b: &Exps, from: usize) {
        let mut sum = [0u32; MAX_RANK];
        for j in from..self.n {
            sum[j] = e[j] as u32 + b[j] as u32;
        }
        self.carry(e, &mut sum, from);
    }

    fn carry(&self, e: &mut Exps, sum: &mut [u32; MAX_RANK], from: usize) {
        let p = self.p;
        for j in from..self.n {
            let s = sum[j];
            let q = s / p;
            e[j] = (s % p) as u8;
            if q > 0 {
                let w = &self.power[j];
                for i in j + 1..self.n {
                    sum[i] += q * w[i] as u32;
                }
            }
        }
    }
}
