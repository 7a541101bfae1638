use std::fmt;

use crate::error::{Error, Result};
use crate::pc::MAX_RANK;

/// A normal-form word `g_{k1}^{e1} g_{k2}^{e2} ...` with strictly increasing
/// generator indices. Indices are 1-based, as in the file format.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    pub terms: Vec<(usize, u32)>,
}

impl Word {
    pub fn identity() -> Self {
        Word { terms: Vec::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.terms.iter().all(|&(_, e)| e == 0)
    }

    /// Smallest generator index carrying a nonzero exponent.
    pub fn min_index(&self) -> Option<usize> {
        self.terms.iter().filter(|&&(_, e)| e != 0).map(|&(k, _)| k).min()
    }

    /// Dense exponent vector of length `rank` (0-based positions).
    pub fn to_exponents(&self, rank: usize) -> Vec<u8> {
        let mut v = vec![0u8; rank];
        for &(k, e) in &self.terms {
            v[k - 1] = e as u8;
        }
        v
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        Word {
            terms: exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| (i + 1, e as u32))
                .collect(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<_> = self.terms.iter().filter(|&&(_, e)| e != 0).collect();
        if nz.is_empty() {
            return write!(f, "1");
        }
        for (i, (k, e)) in nz.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "g{}^{}", k, e)?;
        }
        Ok(())
    }
}

/// Power-commutator presentation of a group of order `p^rank`.
///
/// `power[i]` is the right-hand side of `g_{i+1}^p`, and `comm[j][i]` (for
/// `j > i`, 0-based) the right-hand side of `[g_{j+1}, g_{i+1}]`.
/// Commutators follow `[a,b] = a^-1 b^-1 a b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    pub prime: u32,
    pub rank: usize,
    pub power: Vec<Word>,
    pub comm: Vec<Vec<Word>>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PcPresentation {
    /// Presentation with every relator trivial: the elementary abelian group of order `p^rank`.
    pub fn trivial_relators(prime: u32, rank: usize) -> Result<Self> {
        if !is_prime(prime as u64) || prime == 2 {
            return Err(Error::NonPrimeModulus(prime as u64));
        }
        if rank > MAX_RANK {
            return Err(Error::RankTooLarge(rank));
        }
        Ok(PcPresentation {
            prime,
            rank,
            power: vec![Word::identity(); rank],
            comm: (0..rank).map(|j| vec![Word::identity(); j]).collect(),
        })
    }

    /// Set `g_i^p = w` (1-based `i`), checking the index constraint.
    pub fn set_power(&mut self, i: usize, w: Word) -> Result<()> {
        self.check_index(i)?;
        let w = self.normalize_word(w)?;
        if let Some(k) = w.min_index() {
            if k <= i {
                return Err(Error::WordIndexNotAboveBase(format!("pow {} = {}", i, w)));
            }
        }
        self.power[i - 1] = w;
        Ok(())
    }

    /// Set `[g_j, g_i] = w` (1-based, `j > i`).
    pub fn set_comm(&mut self, j: usize, i: usize, w: Word) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if j <= i {
            return Err(Error::WordIndexNotAboveBase(format!(
                "comm {} {} requires j > i",
                j, i
            )));
        }
        let w = self.normalize_word(w)?;
        if let Some(k) = w.min_index() {
            if k <= j {
                return Err(Error::WordIndexNotAboveBase(format!(
                    "comm {} {} = {}",
                    j, i, w
                )));
            }
        }
        self.comm[j - 1][i - 1] = w;
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank,
            });
        }
        Ok(())
    }

    fn normalize_word(&self, w: Word) -> Result<Word> {
        let mut last = 0;
        let mut terms = Vec::with_capacity(w.terms.len());
        for (k, e) in w.terms {
            self.check_index(k)?;
            if k <= last {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("word indices must be strictly increasing (g{} after g{})", k, last),
                });
            }
            last = k;
            let e = e % self.prime;
            if e != 0 {
                terms.push((k, e));
            }
        }
        Ok(Word { terms })
    }

    /// Parse the text presentation format:
    ///
    /// ```text
    /// # comment
    /// p 5
    /// n 3
    /// pow 1 = 1
    /// comm 2 1 = g3^1
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut prime: Option<u64> = None;
        let mut rank: Option<usize> = None;
        let mut pres: Option<PcPresentation> = None;
        let mut seen_pow = Vec::new();
        let mut seen_comm = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: line_no, msg };
            let mut toks = line.split_whitespace();
            let head = toks.next().unwrap_or_default();
            match head {
                "p" => {
                    if prime.is_some() {
                        return Err(perr("duplicate 'p' line".into()));
                    }
                    let v: u64 = toks
                        .next()
                        .ok_or_else(|| perr("missing prime".into()))?
                        .parse()
                        .map_err(|_| perr("prime is not an integer".into()))?;
                    if !is_prime(v) || v == 2 {
                        return Err(Error::NonPrimeModulus(v));
                    }
                    if v > 251 {
                        return Err(perr(format!("prime {} too large (max 251)", v)));
                    }
                    prime = Some(v);
                }
                "n" => {
                    if prime.is_none() {
                        return Err(perr("'n' must follow 'p'".into()));
                    }
                    if rank.is_some() {
                        return Err(perr("duplicate 'n' line".into()));
                    }
                    let v: usize = toks
                        .next()
                        .ok_or_else(|| perr("missing rank".into()))?
                        .parse()
                        .map_err(|_| perr("rank is not an integer".into()))?;
                    if v == 0 {
                        return Err(perr("rank must be at least 1".into()));
                    }
                    rank = Some(v);
                    pres = Some(PcPresentation::trivial_relators(prime.unwrap() as u32, v)?);
                    seen_pow = vec![false; v];
                    seen_comm = vec![false; v * v];
                }
                "pow" | "comm" => {
                    let pr = pres
                        .as_mut()
                        .ok_or_else(|| perr("relator before 'p'/'n' header".into()))?;
                    let rest: Vec<&str> = toks.collect();
                    let eq = rest
                        .iter()
                        .position(|&t| t == "=")
                        .ok_or_else(|| perr("missing '='".into()))?;
                    let idx: Vec<usize> = rest[..eq]
                        .iter()
                        .map(|t| t.parse::<usize>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| perr("bad generator index".into()))?;
                    let word = parse_word(&rest[eq + 1..], pr.prime).map_err(perr)?;
                    let located = |e: Error| match e {
                        Error::Parse { msg, .. } => Error::Parse { line: line_no, msg },
                        other => other,
                    };
                    if head == "pow" {
                        if idx.len() != 1 {
                            return Err(perr("'pow' takes one index".into()));
                        }
                        pr.set_power(idx[0], word).map_err(located)?;
                        if std::mem::replace(&mut seen_pow[idx[0] - 1], true) {
                            return Err(perr(format!("duplicate relator pow {}", idx[0])));
                        }
                    } else {
                        if idx.len() != 2 {
                            return Err(perr("'comm' takes two indices".into()));
                        }
                        pr.set_comm(idx[0], idx[1], word).map_err(located)?;
                        let slot = (idx[0] - 1) * pr.rank + idx[1] - 1;
                        if std::mem::replace(&mut seen_comm[slot], true) {
                            return Err(perr(format!(
                                "duplicate relator comm {} {}",
                                idx[0], idx[1]
                            )));
                        }
                    }
                }
                other => return Err(perr(format!("unknown directive '{}'", other))),
            }
        }
        pres.ok_or(Error::Parse {
            line: text.lines().count(),
            msg: "missing 'p'/'n' header".into(),
        })
    }

    /// Render in the text format accepted by [`PcPresentation::parse`]; only
    /// nontrivial relators are written.
    pub fn to_text(&self) -> String {
        let mut s = format!("p {}\nn {}\n", self.prime, self.rank);
        for (i, w) in self.power.iter().enumerate() {
            if !w.is_identity() {
                s.push_str(&format!("pow {} = {}\n", i + 1, w));
            }
        }
        for j in 0..self.rank {
            for i in 0..j {
                let w = &self.comm[j][i];
                if !w.is_identity() {
                    s.push_str(&format!("comm {} {} = {}\n", j + 1, i + 1, w));
                }
            }
        }
        s
    }
}

fn parse_word(toks: &[&str], prime: u32) -> std::result::Result<Word, String> {
    if toks.is_empty() {
        return Err("empty word (use 1 for the identity)".into());
    }
    if toks.len() == 1 && toks[0] == "1" {
        return Ok(Word::identity());
    }
    let mut terms = Vec::new();
    for t in toks {
        let body = t
            .strip_prefix('g')
            .ok_or_else(|| format!("bad factor '{}'", t))?;
        let (k, e) = match body.split_once('^') {
            Some((k, e)) => (k, e.parse::<i64>().map_err(|_| format!("bad exponent in '{}'", t))?),
            None => (body, 1),
        };
        let k: usize = k.parse().map_err(|_| format!("bad generator in '{}'", t))?;
        terms.push((k, e.rem_euclid(prime as i64) as u32));
    }
    Ok(Word { terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    const H5: &str = "# Heisenberg\np 5\nn 3\ncomm 2 1 = g3^1\n";

    #[test]
    fn parses_heisenberg() {
        let p = PcPresentation::parse(H5).unwrap();
        assert_eq!(p.prime, 5);
        assert_eq!(p.rank, 3);
        assert_eq!(p.comm[1][0], Word { terms: vec![(3, 1)] });
        assert!(p.power.iter().all(Word::is_identity));
    }

    #[test]
    fn rejects_composite_and_even_moduli() {
        assert!(matches!(
            PcPresentation::parse("p 4\nn 2\n"),
            Err(Error::NonPrimeModulus(4))
        ));
        assert!(matches!(
            PcPresentation::parse("p 2\nn 2\n"),
            Err(Error::NonPrimeModulus(2))
        ));
        let msg = PcPresentation::parse("p 9\nn 1\n").unwrap_err().to_string();
        assert!(msg.contains("non-prime modulus"));
    }

    #[test]
    fn rejects_power_word_not_above_base() {
        let e = PcPresentation::parse("p 5\nn 2\npow 1 = g1^1\n").unwrap_err();
        assert!(e.to_string().contains("word index not above base"), "{e}");
        let e = PcPresentation::parse("p 5\nn 3\ncomm 3 1 = g2^1\n").unwrap_err();
        assert!(matches!(e, Error::WordIndexNotAboveBase(_)));
    }

    #[test]
    fn rejects_out_of_range_and_malformed() {
        assert!(matches!(
            PcPresentation::parse("p 5\nn 2\npow 3 = 1\n"),
            Err(Error::IndexOutOfRange { index: 3, rank: 2 })
        ));
        assert!(matches!(
            PcPresentation::parse("p 5\nn 3\ncomm 2 1 = g3^1 g3^1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(PcPresentation::parse("p 5\n").is_err());
        assert!(PcPresentation::parse("n 3\n").is_err());
        assert!(PcPresentation::parse("p 5\nn 3\ncomm 2 1 g3\n").is_err());
        assert!(PcPresentation::parse("p 5\nn 3\nfoo 1\n").is_err());
    }

    #[test]
    fn exponents_reduce_mod_p() {
        let p = PcPresentation::parse("p 5\nn 3\npow 1 = g2^7 g3^-1\n").unwrap();
        assert_eq!(p.power[0], Word { terms: vec![(2, 2), (3, 4)] });
    }

    #[test]
    fn text_round_trip() {
        let p = PcPresentation::parse("p 3\nn 4\npow 1 = g3^2\ncomm 2 1 = g3 g4^2\ncomm 3 1 = g4\n")
            .unwrap();
        assert_eq!(PcPresentation::parse(&p.to_text()).unwrap(), p);
    }
}
