//! Builtin groups, catalog files with provenance headers, analysis reports
//! and the theorem-reproduction suites.

mod report;
mod suites;

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;

pub use report::{analyze, certificate_text, AnalysisReport, BeauvilleSummary};
pub use suites::{verify_formulas, verify_p3, verify_p5, Status, SuiteLine, SuiteReport};

use crate::error::{Error, Result};
use crate::pc::{PcGroup, PcPresentation, Word, DEFAULT_BUDGET};

/// Environment variable overriding the enumeration budget.
pub const BUDGET_ENV: &str = "THINVILLE_BUDGET";
/// Environment variable overriding the catalog directory.
pub const CATALOG_ENV: &str = "THINVILLE_CATALOG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Provenance {
    Paper,
    Derived,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expectation {
    pub property: String,
    pub value: String,
    pub tag: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Builtin,
    File(PathBuf),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub source: Source,
    pub provenance: Option<String>,
    pub expectations: Vec<Expectation>,
    pub presentation: PcPresentation,
}

impl CatalogEntry {
    /// The group with the given enumeration budget.
    pub fn group(&self, budget: u64) -> Result<PcGroup> {
        Ok(PcGroup::new(self.presentation.clone())?
            .with_budget(budget)
            .with_name(self.id.clone()))
    }

    pub fn expected(&self, property: &str) -> Option<&str> {
        self.expectations
            .iter()
            .find(|e| e.property == property)
            .map(|e| e.value.as_str())
    }

    /// Checks the expectations that need no search: order, class, centre
    /// order, metabelian, thin, maximal class.
    pub fn check_structural(&self, g: &PcGroup) -> Result<()> {
        for e in &self.expectations {
            let actual = match e.property.as_str() {
                "order" => g.order().to_string(),
                "class" => g.nilpotency_class().to_string(),
                "center" => g.center().order(g.prime()).to_string(),
                "metabelian" => g.is_metabelian().to_string(),
                "thin" => g.is_thin().to_string(),
                "maximal-class" => g.is_maximal_class().to_string(),
                _ => continue,
            };
            if actual != e.value {
                return Err(Error::ExpectationMismatch {
                    id: self.id.clone(),
                    property: e.property.clone(),
                    expected: e.value.clone(),
                    actual,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)
    }
}

fn word(terms: &[(usize, u32)]) -> Word {
    Word { terms: terms.to_vec() }
}

/// `C_{p^k} x C_{p^k}` on generators `a_1, b_1, ..., a_k, b_k` with
/// `a_i^p = a_{i+1}` and `b_i^p = b_{i+1}`.
fn homocyclic(p: u32, k: usize) -> Result<PcPresentation> {
    let mut pres = PcPresentation::trivial_relators(p, 2 * k)?;
    for i in 1..=2 * (k - 1) {
        pres.set_power(i, word(&[(i + 2, 1)]))?;
    }
    Ok(pres)
}

fn cyclic(p: u32, k: usize) -> Result<PcPresentation> {
    let mut pres = PcPresentation::trivial_relators(p, k)?;
    for i in 1..k {
        pres.set_power(i, word(&[(i + 1, 1)]))?;
    }
    Ok(pres)
}

fn heisenberg(p: u32) -> Result<PcPresentation> {
    let mut pres = PcPresentation::trivial_relators(p, 3)?;
    pres.set_comm(2, 1, word(&[(3, 1)]))?;
    Ok(pres)
}

/// Builtin presentations: `elab-<p>` (`C_p x C_p`), `elab-<p>-<r>`
/// (`C_p^r`), `cpk2-<p>-<k>` (`C_{p^k} x C_{p^k}`), `heisenberg-<p>`,
/// `cyclic-<p>-<k>` (`C_{p^k}`).
pub fn builtin(id: &str) -> Result<PcPresentation> {
    let unknown = || Error::UnknownTarget(id.to_string());
    let mut parts = id.split('-');
    let kind = parts.next().ok_or_else(unknown)?;
    let nums: Vec<usize> = parts
        .map(|s| s.parse::<usize>().map_err(|_| unknown()))
        .collect::<Result<_>>()?;
    let p = *nums.first().ok_or_else(unknown)? as u32;
    if p > 251 || p == 2 || !crate::pc::presentation::is_prime(p as u64) {
        return Err(unknown());
    }
    let at_least_one = |k: usize| if k >= 1 { Ok(k) } else { Err(unknown()) };
    match (kind, nums.as_slice()) {
        ("elab", [_]) => PcPresentation::trivial_relators(p, 2),
        ("elab", [_, r]) => PcPresentation::trivial_relators(p, at_least_one(*r)?),
        ("cpk2", [_, k]) => homocyclic(p, at_least_one(*k)?),
        ("heisenberg", [_]) => heisenberg(p),
        ("cyclic", [_, k]) => cyclic(p, at_least_one(*k)?),
        _ => Err(unknown()),
    }
}

fn builtin_entry(id: &str) -> Result<CatalogEntry> {
    Ok(CatalogEntry {
        id: id.to_string(),
        source: Source::Builtin,
        provenance: Some("builtin construction".into()),
        expectations: Vec::new(),
        presentation: builtin(id)?,
    })
}

fn parse_expectation(line: usize, rest: &str) -> Result<Expectation> {
    let err = |msg: &str| Error::Parse {
        line,
        msg: format!("bad expectation header: {msg}"),
    };
    let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err("missing '='"))?;
    let rhs = rhs.trim();
    let (value, tag) = match rhs.rsplit_once(' ') {
        Some((v, t)) if t.starts_with('[') => (v.trim(), t),
        _ => return Err(err("missing provenance tag")),
    };
    let tag = match tag {
        "[PAPER]" => Provenance::Paper,
        "[DERIVED]" => Provenance::Derived,
        "[TRIVIAL]" => Provenance::Trivial,
        _ => return Err(err("unknown provenance tag")),
    };
    Ok(Expectation {
        property: lhs.trim().to_string(),
        value: value.to_string(),
        tag,
    })
}

/// Parses a catalog file and checks its structural expectations.
pub fn ingest(path: &Path) -> Result<CatalogEntry> {
    let text = std::fs::read_to_string(path)?;
    let entry = parse_entry(&text, path)?;
    let g = entry.group(DEFAULT_BUDGET)?;
    entry.check_structural(&g)?;
    Ok(entry)
}

fn parse_entry(text: &str, path: &Path) -> Result<CatalogEntry> {
    let mut id = None;
    let mut provenance = None;
    let mut expectations = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let Some(comment) = raw.trim().strip_prefix('#') else {
            continue;
        };
        let comment = comment.trim();
        if let Some(rest) = comment.strip_prefix("id:").or_else(|| comment.strip_prefix("id ")) {
            id = Some(rest.trim().to_string());
        } else if let Some(rest) = comment.strip_prefix("provenance:") {
            provenance = Some(rest.trim().to_string());
        } else if let Some(rest) = comment.strip_prefix("expect ") {
            expectations.push(parse_expectation(i + 1, rest)?);
        }
    }
    let id = id.unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    });
    Ok(CatalogEntry {
        id,
        source: Source::File(path.to_path_buf()),
        provenance,
        expectations,
        presentation: PcPresentation::parse(text)?,
    })
}

/// The catalog directory: `$THINVILLE_CATALOG` or the one shipped with the
/// crate.
pub fn catalog_dir() -> PathBuf {
    std::env::var_os(CATALOG_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/catalog")))
}

/// Every `.pc` file in `dir`, ingested, sorted by id.
pub fn load_catalog(dir: &Path) -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    for item in std::fs::read_dir(dir)? {
        let path = item?.path();
        if path.extension().is_some_and(|e| e == "pc") {
            entries.push(ingest(&path)?);
        }
    }
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(entries)
}

/// A file path, a catalog id, or a builtin id.
pub fn resolve(target: &str) -> Result<CatalogEntry> {
    let path = Path::new(target);
    if path.is_file() {
        return ingest(path);
    }
    let in_catalog = catalog_dir().join(format!("{target}.pc"));
    if in_catalog.is_file() {
        return ingest(&in_catalog);
    }
    builtin_entry(target)
}

/// The budget from `$THINVILLE_BUDGET`, or the default.
pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        let g = PcGroup::new(builtin("elab-5").unwrap()).unwrap();
        assert_eq!(g.order(), 25);
        let h = PcGroup::new(builtin("heisenberg-5").unwrap()).unwrap();
        assert_eq!((h.order(), h.nilpotency_class()), (125, 2));
        let c = PcGroup::new(builtin("cpk2-5-2").unwrap()).unwrap();
        assert_eq!(c.order(), 625);
        assert_eq!(c.element_order(&c.generator(1)), 25);
        let z = PcGroup::new(builtin("cyclic-3-3").unwrap()).unwrap();
        assert!(z.is_cyclic());
        assert_eq!(PcGroup::new(builtin("elab-3-4").unwrap()).unwrap().rank(), 4);
        for bad in ["elab-4", "heisenberg", "cpk2-5-0", "nope-5", "elab-x"] {
            assert!(matches!(builtin(bad), Err(Error::UnknownTarget(_))), "{bad}");
        }
    }

    #[test]
    fn expectation_headers() {
        let text = "# id demo\n# provenance: hand\n# expect order = 125 [DERIVED]\n# expect class = 3 [DERIVED]\np 5\nn 3\ncomm 2 1 = g3\n";
        let entry = parse_entry(text, Path::new("demo.pc")).unwrap();
        assert_eq!(entry.id, "demo");
        assert_eq!(entry.expected("order"), Some("125"));
        let g = entry.group(DEFAULT_BUDGET).unwrap();
        let err = entry.check_structural(&g).unwrap_err();
        assert!(matches!(err, Error::ExpectationMismatch { ref property, .. } if property == "class"));
        assert!(parse_entry("# expect order = 5\np 5\nn 1\n", Path::new("x.pc")).is_err());
    }
}
