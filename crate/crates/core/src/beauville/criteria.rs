use serde::Serialize;

use super::search::{BeauvilleCertificate, SearchMode};
use super::sigma::GeneratingTriple;
use crate::error::{Error, Result};
use crate::pc::PcGroup;
use crate::structure::Subgroup;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `C_n x C_n` is Beauville iff `n > 1` and `gcd(n, 6) = 1`.
pub fn catanese_check(n: u64) -> bool {
    n > 1 && gcd(n, 6) == 1
}

/// Exhaustive search on an abelian 2-generator group.
pub fn brute_force_abelian(g: &PcGroup) -> Result<BeauvilleCertificate> {
    if g.nilpotency_class() > 1 {
        return Err(Error::precondition("brute_force_abelian requires an abelian group"));
    }
    g.find_beauville_structure(SearchMode::Exhaustive)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    A1,
    A2,
    A3,
    A4,
    #[serde(rename = "out-of-scope")]
    OutOfScope,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::A1 => "A1",
            CaseTag::A2 => "A2",
            CaseTag::A3 => "A3",
            CaseTag::A4 => "A4",
            CaseTag::OutOfScope => "out-of-scope",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremACase {
    pub tag: CaseTag,
    pub predicted_beauville: Option<bool>,
    /// Only for A4.
    pub exponent_p_maximal: Option<usize>,
    pub reason: Option<String>,
}

impl TheoremACase {
    fn out(reason: impl Into<String>) -> Self {
        TheoremACase {
            tag: CaseTag::OutOfScope,
            predicted_beauville: None,
            exponent_p_maximal: None,
            reason: Some(reason.into()),
        }
    }

    fn case(tag: CaseTag, predicted: bool) -> Self {
        TheoremACase {
            tag,
            predicted_beauville: Some(predicted),
            exponent_p_maximal: None,
            reason: None,
        }
    }
}

impl PcGroup {
    /// Lifting test: the quotient triples must already form a Beauville
    /// structure of `G/N`; returns whether `x_1`, `y_1`, `x_1 y_1` keep
    /// their orders modulo `N`, and in that case re-verifies the structure
    /// in `G` directly.
    pub fn lift_check(&self, n: &Subgroup, t1: &GeneratingTriple, t2: &GeneratingTriple) -> Result<bool> {
        if !self.is_normal(n) {
            return Err(Error::precondition("lift_check needs a normal subgroup"));
        }
        let q = self.quotient(n)?;
        let image = |t: &GeneratingTriple| GeneratingTriple::new(&q.group, q.image(self, &t.x), q.image(self, &t.y));
        let (q1, q2) = (image(t1)?, image(t2)?);
        if !q.group.is_beauville_pair(&q1, &q2)? {
            return Err(Error::precondition("the quotient triples are not a Beauville structure"));
        }
        let preserved = t1.orders == q1.orders;
        if preserved && !self.is_beauville_pair(t1, t2)? {
            return Err(Error::precondition("lifted pairs fail the direct check"));
        }
        Ok(preserved)
    }

    /// Case analysis for metabelian thin groups of class `p` or `p + 1`.
    pub fn classify_theorem_a(&self) -> Result<TheoremACase> {
        let p = self.prime() as usize;
        if p < 5 {
            return Ok(TheoremACase::out("needs p >= 5"));
        }
        if !self.is_metabelian() || !self.is_thin() {
            return Ok(TheoremACase::out("needs a metabelian thin group"));
        }
        if self.is_maximal_class() {
            return Ok(TheoremACase::out("group has maximal class"));
        }
        let c = self.nilpotency_class();
        if c < p {
            return Ok(TheoremACase::out(format!(
                "class {c} < p: the group is regular and the criterion for regular groups applies"
            )));
        }
        if c > p + 1 {
            return Ok(TheoremACase::out(format!("class {c} exceeds p + 1")));
        }
        if c == p + 1 {
            return Ok(TheoremACase::case(CaseTag::A2, true));
        }
        let gp = self.gamma(p);
        if gp.log_order() == 2 {
            return Ok(TheoremACase::case(CaseTag::A1, true));
        }
        let agemo = self.agemo()?;
        if agemo == self.gamma(p - 1) {
            return Ok(TheoremACase::case(CaseTag::A3, true));
        }
        if agemo == gp {
            let k = self.census()?.exponent_p_maximal_count();
            return Ok(TheoremACase {
                tag: CaseTag::A4,
                predicted_beauville: Some(k >= 3),
                exponent_p_maximal: Some(k),
                reason: None,
            });
        }
        Ok(TheoremACase::out("G^p is neither gamma_{p-1} nor gamma_p"))
    }
}
