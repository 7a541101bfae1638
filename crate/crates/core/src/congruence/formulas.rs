use serde::Serialize;

use crate::error::{Error, Result};
use crate::pc::presentation::is_prime;
use crate::structure::subgroup::mod_inverse;

/// Outcome of checking one identity over a finite parameter grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub p: u32,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn require_odd_prime(p: u32) -> Result<()> {
    if p == 2 || !is_prime(p as u64) {
        return Err(Error::precondition(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// Pascal's triangle `binom[n][k]` for `n < rows`, reduced modulo `m`.
pub fn binomial_table(rows: usize, m: u128) -> Vec<Vec<u128>> {
    let mut t: Vec<Vec<u128>> = Vec::with_capacity(rows);
    for n in 0..rows {
        let mut row = vec![0u128; n + 1];
        row[0] = 1 % m;
        row[n] = 1 % m;
        for k in 1..n {
            row[k] = (t[n - 1][k - 1] + t[n - 1][k]) % m;
        }
        t.push(row);
    }
    t
}

fn binom(t: &[Vec<u128>], n: usize, k: usize) -> u128 {
    if k > n {
        0
    } else {
        t[n][k]
    }
}

/// `C(i, j) = sum_{k=1}^{p-1} binom(k, i) binom(k, j)` reduced modulo `m`.
pub fn cij_mod(i: usize, j: usize, p: u32, m: u128) -> u128 {
    let t = binomial_table(p as usize, m);
    (1..p as usize).fold(0u128, |acc, k| (acc + binom(&t, k, i) * binom(&t, k, j) % m) % m)
}

/// `C(i, j)` modulo `p`.
pub fn cij(i: usize, j: usize, p: u32) -> u32 {
    cij_mod(i, j, p, p as u128) as u32
}

/// `C(i, j)` against `0` for `i + j < p - 1` and `(-1)^i` for `i + j = p - 1`.
pub fn cij_closed_form_check(p: u32) -> Result<IdentityReport> {
    require_odd_prime(p)?;
    let mut report = IdentityReport {
        name: "cij-closed-form".into(),
        p,
        cases: 0,
        failures: Vec::new(),
    };
    let top = p as usize - 1;
    for i in 1..top {
        for j in 1..=top - i {
            let expected = if i + j < top {
                0
            } else if i % 2 == 0 {
                1
            } else {
                p - 1
            };
            let got = cij(i, j, p);
            report.cases += 1;
            if got != expected {
                report.failures.push(format!("C({i},{j}) = {got}, expected {expected}"));
            }
        }
    }
    Ok(report)
}

/// The quadratic non-residues modulo `p`, ascending.
pub fn quadratic_nonresidues(p: u32) -> Result<Vec<u32>> {
    require_odd_prime(p)?;
    let mut square = vec![false; p as usize];
    for a in 1..p as u64 {
        square[(a * a % p as u64) as usize] = true;
    }
    Ok((1..p).filter(|&r| !square[r as usize]).collect())
}

/// `sum_{s=1}^{(p-1)/2} (h t^2)^{s-1} = 2 / (1 - h t^2)` for every
/// non-residue `h` and every `t` in `[1, p)`.
pub fn geometric_sum_check(p: u32) -> Result<IdentityReport> {
    let mut report = IdentityReport {
        name: "geometric-sum".into(),
        p,
        cases: 0,
        failures: Vec::new(),
    };
    let pm = p as u64;
    for h in quadratic_nonresidues(p)? {
        for t in 1..pm {
            report.cases += 1;
            let q = h as u64 * t % pm * t % pm;
            let denom = (1 + pm - q) % pm;
            if denom == 0 {
                report.failures.push(format!("h={h}, t={t}: 1 - h t^2 = 0"));
                continue;
            }
            let mut sum = 0;
            let mut term = 1;
            for _ in 0..(p - 1) / 2 {
                sum = (sum + term) % pm;
                term = term * q % pm;
            }
            let rhs = 2 * mod_inverse(denom as u32, p) as u64 % pm;
            if sum != rhs {
                report.failures.push(format!("h={h}, t={t}: sum {sum} != {rhs}"));
            }
        }
    }
    Ok(report)
}

/// `C(i, j)` is the coefficient of `u^i v^j` in `((u + v) + uv)^{p-1}`
/// modulo `p`, for `i + j > 0` and `i, j < p`.
pub fn cij_generating_function_check(p: u32) -> Result<IdentityReport> {
    require_odd_prime(p)?;
    let mut report = IdentityReport {
        name: "cij-generating-function".into(),
        p,
        cases: 0,
        failures: Vec::new(),
    };
    let n = p as usize - 1;
    let pm = p as u128;
    let t = binomial_table(p as usize + n, pm);
    // ((u+v)+uv)^n = sum_r binom(n,r) (u+v)^{n-r} (uv)^r.
    let coeff = |i: usize, j: usize| -> u128 {
        let mut c = 0;
        for r in 0..=n {
            if i < r || j < r || (i - r) + (j - r) != n - r {
                continue;
            }
            c = (c + binom(&t, n, r) * binom(&t, n - r, i - r)) % pm;
        }
        c
    };
    for i in 0..p as usize {
        for j in 0..p as usize {
            if i + j == 0 {
                continue;
            }
            report.cases += 1;
            let (a, b) = (cij(i, j, p) as u128, coeff(i, j));
            if a != b {
                report.failures.push(format!("C({i},{j}) = {a}, coefficient {b}"));
            }
        }
    }
    Ok(report)
}

/// Every identity of this module at `p`.
pub fn formula_table(p: u32) -> Result<Vec<IdentityReport>> {
    Ok(vec![
        cij_closed_form_check(p)?,
        cij_generating_function_check(p)?,
        geometric_sum_check(p)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(cij(1, 2, 5), 0);
        assert_eq!(cij(1, 3, 5), 4);
        assert_eq!(cij(3, 3, 7), 6);
        assert_eq!(cij_mod(1, 3, 5, 1 << 40), 19);
        assert_eq!(quadratic_nonresidues(5).unwrap(), vec![2, 3]);
        assert_eq!(quadratic_nonresidues(3).unwrap(), vec![2]);
    }

    #[test]
    fn closed_form_ranges() {
        assert_eq!(cij_closed_form_check(5).unwrap().cases, 6);
        let r3 = cij_closed_form_check(3).unwrap();
        assert_eq!(r3.cases, 1);
        assert!(r3.passed());
        assert!(cij_closed_form_check(9).is_err());
    }

    #[test]
    fn tables_pass() {
        for p in [3, 5, 7, 11, 13] {
            for r in formula_table(p).unwrap() {
                assert!(r.passed(), "{:?}", r);
            }
        }
    }
}
