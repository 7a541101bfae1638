use std::fmt::Write as _;

use serde::Serialize;

use crate::beauville::{BeauvilleCertificate, SearchMode, TheoremACase};
use crate::error::Result;
use crate::pc::PcGroup;

/// Everything `analyze` reports; fields whose computation failed (budget,
/// preconditions) are `None`.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub id: String,
    pub prime: u32,
    pub order: u128,
    pub class: usize,
    pub widths: Vec<usize>,
    pub generator_rank: usize,
    pub center_order: u128,
    pub metabelian: bool,
    pub maximal_class: bool,
    pub thin: bool,
    pub agemo_order: Option<u128>,
    /// Largest `l` with `G^p <= gamma_l`.
    pub l: Option<usize>,
    pub lattice: Option<String>,
    pub exponent_p_maximal: Option<usize>,
    /// Per maximal subgroup `M`, how many others share `M^p` modulo
    /// `gamma_{p+1}`; only when `|gamma_p| >= p^2`.
    pub power_coincidences: Option<Vec<usize>>,
    pub theorem_a: Option<TheoremACase>,
    pub beauville: Option<BeauvilleSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BeauvilleSummary {
    pub outcome: String,
    pub certificate: Option<BeauvilleCertificate>,
    pub error: Option<String>,
}

/// Builds the report; `search` selects the Beauville search mode, `None`
/// skips it.
pub fn analyze(id: &str, g: &PcGroup, search: Option<SearchMode>) -> Result<AnalysisReport> {
    let p = g.prime();
    let census = g.census().ok();
    let agemo = census.map(|c| c.agemo.clone());
    let class = g.nilpotency_class();
    let l = agemo.as_ref().map(|a| {
        (1..=class + 1)
            .rev()
            .find(|&i| a.is_subgroup_of(g, &g.gamma(i)))
            .unwrap_or(1)
    });
    let lattice = if g.is_cyclic() {
        None
    } else {
        g.lattice_profile().ok().map(|lp| lp.shape_word())
    };
    let beauville = search.map(|mode| match g.find_beauville_structure(mode) {
        Ok(cert) => BeauvilleSummary {
            outcome: cert.outcome.as_str().to_string(),
            certificate: Some(cert),
            error: None,
        },
        Err(e) => BeauvilleSummary {
            outcome: "not-applicable".into(),
            certificate: None,
            error: Some(e.to_string()),
        },
    });
    Ok(AnalysisReport {
        id: id.to_string(),
        prime: p,
        order: g.order(),
        class,
        widths: g.lower_central_series().widths.clone(),
        generator_rank: g.generator_rank(),
        center_order: g.center().order(p),
        metabelian: g.is_metabelian(),
        maximal_class: g.is_maximal_class(),
        thin: g.is_thin(),
        agemo_order: agemo.map(|a| a.order(p)),
        l,
        lattice,
        exponent_p_maximal: census.map(|c| c.exponent_p_maximal_count()),
        power_coincidences: if g.is_metabelian() && !g.is_cyclic() {
            g.coincidence_counts().ok()
        } else {
            None
        },
        theorem_a: g.classify_theorem_a().ok(),
        beauville,
    })
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "n/a".to_string(), T::to_string)
}

fn list(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// Flat `key: value` lines describing a certificate.
pub fn certificate_text(cert: &BeauvilleCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "beauville: {}", cert.outcome.as_str());
    let _ = writeln!(out, "beauville.mode: {}", cert.stats.mode);
    if let Some(r) = cert.reason {
        let _ = writeln!(out, "beauville.reason: {}", r.as_str());
    }
    if let Some(note) = &cert.note {
        let _ = writeln!(out, "beauville.note: {note}");
    }
    if let (Some(triples), Some(fps)) = (&cert.triples, &cert.fingerprints) {
        for (i, (t, f)) in triples.iter().zip(fps).enumerate() {
            let k = i + 1;
            let _ = writeln!(out, "triple{k}.x: {}", t.x);
            let _ = writeln!(out, "triple{k}.y: {}", t.y);
            let _ = writeln!(out, "triple{k}.xy: {}", t.xy);
            let [a, b, c] = t.orders;
            let _ = writeln!(out, "triple{k}.orders: [{a},{b},{c}]");
            let _ = writeln!(out, "triple{k}.fingerprint_size: {}", f.size);
        }
    }
    let _ = writeln!(out, "beauville.pairs_examined: {}", cert.stats.pairs_examined);
    let _ = writeln!(out, "beauville.distinct_fingerprints: {}", cert.stats.distinct_fingerprints);
    out
}

impl AnalysisReport {
    /// Flat `key: value` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "id: {}", self.id);
        let _ = writeln!(out, "p: {}", self.prime);
        let _ = writeln!(out, "order: {}", self.order);
        let _ = writeln!(out, "class: {}", self.class);
        let _ = writeln!(out, "widths: {}", list(&self.widths));
        let _ = writeln!(out, "generator_rank: {}", self.generator_rank);
        let _ = writeln!(out, "center_order: {}", self.center_order);
        let _ = writeln!(out, "metabelian: {}", self.metabelian);
        let _ = writeln!(out, "maximal_class: {}", self.maximal_class);
        let _ = writeln!(out, "thin: {}", self.thin);
        let _ = writeln!(out, "agemo_order: {}", opt(&self.agemo_order));
        let _ = writeln!(out, "l: {}", opt(&self.l));
        let _ = writeln!(out, "lattice: {}", opt(&self.lattice));
        let _ = writeln!(out, "exponent_p_maximal: {}", opt(&self.exponent_p_maximal));
        match &self.power_coincidences {
            Some(c) => {
                let _ = writeln!(out, "power_coincidences: {}", list(c));
            }
            None => {
                let _ = writeln!(out, "power_coincidences: n/a");
            }
        }
        match &self.theorem_a {
            Some(case) => {
                let _ = writeln!(out, "theorem_a: {}", case.tag.as_str());
                if let Some(pred) = case.predicted_beauville {
                    let _ = writeln!(out, "theorem_a.predicted_beauville: {pred}");
                }
                if let Some(reason) = &case.reason {
                    let _ = writeln!(out, "theorem_a.reason: {reason}");
                }
            }
            None => {
                let _ = writeln!(out, "theorem_a: n/a");
            }
        }
        if let Some(b) = &self.beauville {
            match (&b.certificate, &b.error) {
                (Some(cert), _) => out.push_str(&certificate_text(cert)),
                (None, err) => {
                    let _ = writeln!(out, "beauville: {}", b.outcome);
                    if let Some(e) = err {
                        let _ = writeln!(out, "beauville.note: {e}");
                    }
                }
            }
        }
        out
    }
}
