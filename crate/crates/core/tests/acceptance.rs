//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs with `cargo test --test acceptance`; exits nonzero if any criterion
//! fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thinville::beauville::{brute_force_abelian, catanese_check, Outcome, RefutationReason, SearchMode};
use thinville::catalog::{self, CatalogEntry};
use thinville::congruence::{cij_closed_form_check, geometric_sum_check, QuadraticPairCertificate};
use thinville::pc::{GroupElement, PcGroup, DEFAULT_BUDGET};
use thinville::structure::Subgroup;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalog_entries() -> Vec<CatalogEntry> {
    catalog::load_catalog(&catalog::catalog_dir()).expect("catalog loads")
}

fn group(entry: &CatalogEntry) -> PcGroup {
    entry.group(DEFAULT_BUDGET).expect("consistent presentation")
}

fn builtin(id: &str) -> PcGroup {
    PcGroup::new(catalog::builtin(id).unwrap()).unwrap().with_name(id)
}

fn random_element(g: &PcGroup, rng: &mut ChaCha8Rng) -> GroupElement {
    let exps: Vec<u8> = (0..g.rank()).map(|_| rng.gen_range(0..g.prime()) as u8).collect();
    g.element(&exps).unwrap()
}

/// A product of random powers of the basis of `h`.
fn random_in(g: &PcGroup, h: &Subgroup, rng: &mut ChaCha8Rng) -> GroupElement {
    h.basis().iter().fold(g.identity(), |acc, b| {
        let k = rng.gen_range(0..g.prime()) as i64;
        g.multiply(&acc, &g.power(b, k))
    })
}

fn random_generating_pair(g: &PcGroup, rng: &mut ChaCha8Rng) -> (GroupElement, GroupElement) {
    loop {
        let x = random_element(g, rng);
        let y = random_element(g, rng);
        if g.is_generating_pair(&x, &y) {
            return (x, y);
        }
    }
}

fn metabelian_thin(g: &PcGroup) -> bool {
    g.is_metabelian() && g.is_thin()
}

/// Every quadratic-pair certificate with `x` a Frattini lift, or `None` when
/// the group is outside the scope of the quadratic relation.
fn all_quadratic_pairs(g: &PcGroup) -> Option<Vec<QuadraticPairCertificate>> {
    let p = g.prime() as u8;
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            if (a, b) == (0, 0) {
                continue;
            }
            let x = g.frattini_lift(&[a, b]);
            match g.find_quadratic_pairs(&x) {
                Ok(certs) => out.extend(certs),
                Err(_) => return None,
            }
        }
    }
    Some(out)
}

fn criterion_1() -> Check {
    let beauville_ids = ["sg-3_5-3", "sg-3_6-34", "sg-3_6-37"];
    let mut refuted = 0;
    for entry in catalog_entries().iter().filter(|e| e.presentation.prime == 3) {
        let g = group(entry);
        let cert = g.find_beauville_structure(SearchMode::Exhaustive).map_err(|e| e.to_string())?;
        let id = entry.id.as_str();
        if id == "sg-3_6-40" {
            ensure(!g.is_thin() && g.center().order(3) == 9, || format!("{id}: expected not thin with |Z| = 9"))?;
            continue;
        }
        if !metabelian_thin(&g) {
            continue;
        }
        if beauville_ids.contains(&id) {
            ensure(cert.outcome == Outcome::Found, || format!("{id}: {}", cert.outcome.as_str()))?;
            ensure(cert.verify(&g).unwrap(), || format!("{id}: certificate fails re-verification"))?;
        } else {
            ensure(
                cert.outcome == Outcome::Refuted && cert.reason == Some(RefutationReason::Exhausted),
                || format!("{id}: {} instead of an exhaustive refutation", cert.outcome.as_str()),
            )?;
            refuted += 1;
        }
    }
    for id in beauville_ids {
        let entry = catalog::resolve(id).map_err(|e| e.to_string())?;
        let g = group(&entry);
        ensure(metabelian_thin(&g), || format!("{id}: not metabelian thin"))?;
    }
    Ok(format!("3 found, sg-3_6-40 not thin, {refuted} refuted exhaustively"))
}

fn criterion_2() -> Check {
    let mut cases = 0;
    for p in [3, 5, 7, 11, 13] {
        let r = cij_closed_form_check(p).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("p={p}: {:?}", r.failures))?;
        cases += r.cases;
    }
    Ok(format!("{cases} (i,j) cases"))
}

fn criterion_3() -> Check {
    let mut cases = 0;
    for p in [5, 7, 11, 13] {
        let r = geometric_sum_check(p).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("p={p}: {:?}", r.failures))?;
        cases += r.cases;
    }
    Ok(format!("{cases} (h,t) cases"))
}

fn criterion_4() -> Check {
    let mut groups: Vec<PcGroup> = vec![builtin("heisenberg-5"), builtin("cpk2-5-2")];
    groups.extend(catalog_entries().iter().map(group).filter(|g| g.is_metabelian()));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for g in &groups {
        for _ in 0..200 {
            let x = random_element(g, &mut rng);
            let y = random_element(g, &mut rng);
            ensure(g.miech_expansion_check(&x, &y).unwrap(), || format!("{}: x={x} y={y}", g.name()))?;
        }
    }
    Ok(format!("{} groups x 200 pairs", groups.len()))
}

fn criterion_5() -> Check {
    let (mut groups, mut certs) = (0, 0);
    for entry in catalog_entries() {
        let g = group(&entry);
        let Some(pairs) = all_quadratic_pairs(&g) else {
            continue;
        };
        let low = g
            .derived_agemo()
            .is_ok_and(|d| d.is_subgroup_of(&g, &g.gamma(g.prime() as usize + 1)));
        if !low {
            continue;
        }
        groups += 1;
        for cert in &pairs {
            for t in 0..g.prime() {
                ensure(g.power_congruence_check(cert, t).unwrap(), || {
                    format!("{}: x={} y={} h={} t={t}", entry.id, cert.x, cert.y, cert.h)
                })?;
            }
            certs += 1;
        }
    }
    ensure(certs > 0, || "no quadratic-pair certificates".into())?;
    Ok(format!("{groups} groups, {certs} certificates, all t"))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut groups, mut scans) = (0, 0);
    for entry in catalog_entries() {
        let g = group(&entry);
        let p = g.prime();
        if !metabelian_thin(&g) || g.gamma(p as usize).log_order() < 2 {
            continue;
        }
        groups += 1;
        let pairs = all_quadratic_pairs(&g).unwrap_or_default();
        for cert in &pairs {
            for t0 in 0..p {
                let r = g.collision_scan(cert, t0).unwrap();
                ensure(r.bound_satisfied, || format!("{}: t0={t0} matches {:?}", entry.id, r.matches))?;
                scans += 1;
            }
        }
        let d = g.derived_subgroup();
        for m in g.maximal_subgroups() {
            for _ in 0..100 {
                let a = loop {
                    let a = random_in(&g, &m.subgroup, &mut rng);
                    if !d.contains(&g, &a) {
                        break a;
                    }
                };
                let i = rng.gen_range(1..p) as i64;
                let b = g.multiply(&g.power(&a, i), &random_in(&g, &d, &mut rng));
                ensure(g.companion_check(m, &a, &b).unwrap(), || format!("{}: a={a} b={b}", entry.id))?;
            }
        }
        let counts = g.coincidence_counts().unwrap();
        ensure(counts.iter().all(|&c| c <= 2), || format!("{}: coincidences {counts:?}", entry.id))?;
    }
    ensure(groups > 0, || "no groups with |gamma_p| >= p^2".into())?;
    Ok(format!("{groups} groups, {scans} collision scans"))
}

fn criterion_7() -> Check {
    let entries: Vec<_> = catalog_entries().into_iter().filter(|e| e.presentation.prime == 5).collect();
    let report = catalog::verify_p5(&entries, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(report.passed(), || report.to_text())?;
    let mut seen = Vec::new();
    for entry in &entries {
        let g = group(entry);
        let case = g.classify_theorem_a().unwrap();
        let key = match (case.tag.as_str(), case.exponent_p_maximal) {
            ("A4", Some(k)) if k >= 3 => "A4+".to_string(),
            ("A4", Some(_)) => "A4-".to_string(),
            (tag, _) => tag.to_string(),
        };
        if key == "A4-" {
            let cert = g.find_beauville_structure(SearchMode::Guided).unwrap();
            ensure(cert.reason == Some(RefutationReason::OmegaCriterion), || format!("{}: not refuted via omega", entry.id))?;
        }
        seen.push(key);
    }
    for key in ["A1", "A2", "A3", "A4+", "A4-"] {
        ensure(seen.iter().any(|s| s == key), || format!("no representative for {key}"))?;
    }
    Ok(format!("{} entries agree; A1, A2, A3, A4+, A4- covered", entries.len()))
}

fn criterion_8() -> Check {
    for (id, n) in [("elab-3", 3), ("elab-5", 5), ("elab-7", 7), ("cpk2-3-2", 9), ("cpk2-5-2", 25)] {
        let g = builtin(id);
        let cert = brute_force_abelian(&g).map_err(|e| e.to_string())?;
        ensure(cert.outcome != Outcome::Inconclusive, || format!("{id}: inconclusive"))?;
        let found = cert.outcome == Outcome::Found;
        ensure(found == catanese_check(n), || format!("C_{n} x C_{n}: search says {found}"))?;
        ensure(cert.verify(&g).unwrap(), || format!("{id}: certificate fails re-verification"))?;
    }
    Ok("C3, C5, C7, C9, C25 squares agree".into())
}

/// Every lemma on every nonabelian metabelian thin entry; all violations
/// are collected before reporting.
fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut violations: Vec<(&str, String)> = Vec::new();
    let mut checked = 0;
    for entry in catalog_entries() {
        let g = group(&entry);
        if !metabelian_thin(&g) || g.nilpotency_class() < 2 {
            continue;
        }
        checked += 1;
        let id = entry.id.clone();
        let p = g.prime() as usize;
        let agemo = g.agemo().unwrap();
        if !g.gamma(p).is_subgroup_of(&g, &agemo) {
            violations.push(("gamma_p <= G^p", id.clone()));
        }
        let c = g.nilpotency_class();
        let gens = g.generators();
        'layers: for i in 1..c {
            let (gi, gi1, gi2) = (g.gamma(i), g.gamma(i + 1), g.gamma(i + 2));
            for _ in 0..20 {
                let x = random_in(&g, &gi, &mut rng);
                if gi1.contains(&g, &x) {
                    continue;
                }
                let comms: Vec<_> = gens.iter().map(|h| g.commutator(&x, h)).collect();
                if g.join(&g.generated_subgroup(&comms), &gi2) != gi1 {
                    violations.push(("covering property", format!("{id} layer {i}")));
                    break 'layers;
                }
            }
        }
        if agemo.log_order() > 3 {
            violations.push(("|G^p| <= p^3", id.clone()));
        }
        let lattice = g.lattice_profile().unwrap();
        if lattice.ends_with_chain && agemo.log_order() == 2 {
            violations.push(("chain at the bottom => |G^p| != p^2", id.clone()));
        }
        match g.verify_place_of_agemo() {
            Ok(place) if place.all_pass() => {}
            Ok(place) => violations.push(("place of G^p", format!("{id} {place:?}"))),
            Err(e) => violations.push(("place of G^p", format!("{id} ({e})"))),
        }
        if !lattice.matches_thin_grammar(p as u32) {
            violations.push(("lattice grammar", format!("{id} {}", lattice.shape_word())));
        }
    }
    if violations.is_empty() {
        return Ok(format!("{checked} entries"));
    }
    let mut by_lemma: Vec<(&str, Vec<String>)> = Vec::new();
    for (lemma, what) in violations {
        match by_lemma.iter_mut().find(|(l, _)| *l == lemma) {
            Some((_, v)) => v.push(what),
            None => by_lemma.push((lemma, vec![what])),
        }
    }
    let parts: Vec<String> = by_lemma
        .iter()
        .map(|(l, v)| {
            let ids: Vec<&str> = v.iter().map(|s| s.split(' ').next().unwrap()).collect();
            format!("{l} fails on {}", ids.join(","))
        })
        .collect();
    Err(format!("{checked} entries; {}", parts.join("; ")))
}

fn criterion_10() -> Check {
    let mut groups: Vec<PcGroup> = catalog_entries()
        .iter()
        .map(group)
        .filter(|g| g.order() <= 729)
        .collect();
    for id in ["heisenberg-5", "heisenberg-3", "elab-3", "elab-3-3", "cpk2-3-2", "cpk2-3-3", "cyclic-3-4"] {
        groups.push(builtin(id));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut pairs = 0;
    for g in &groups {
        let brute = g.is_thin_brute_force().unwrap();
        ensure(brute == g.is_thin(), || format!("{}: fast {} brute {brute}", g.name(), g.is_thin()))?;
        if g.generator_rank() != 2 {
            continue;
        }
        for _ in 0..100 {
            let (x1, y1) = random_generating_pair(g, &mut rng);
            let (x2, y2) = random_generating_pair(g, &mut rng);
            let f1 = g.sigma_fingerprint(&x1, &y1).unwrap();
            let f2 = g.sigma_fingerprint(&x2, &y2).unwrap();
            let oracle = g.sigma_sets_meet_trivially((&x1, &y1), (&x2, &y2)).unwrap();
            ensure(f1.is_disjoint(&f2) == oracle, || format!("{}: ({x1},{y1}) vs ({x2},{y2})", g.name()))?;
            pairs += 1;
        }
    }
    Ok(format!("{} groups, {pairs} triple pairs", groups.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("p=3 classification", criterion_1),
        ("C(i,j) closed form", criterion_2),
        ("geometric-sum identity", criterion_3),
        ("p-th power expansion", criterion_4),
        ("power congruence modulo gamma_{p+1}", criterion_5),
        ("collision and companion lemmas", criterion_6),
        ("case classification vs search on 5-groups", criterion_7),
        ("Catanese cross-check", criterion_8),
        ("structural lemmas", criterion_9),
        ("oracle equivalences", criterion_10),
    ];
    let mut failures = 0;
    let mut total = Duration::ZERO;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        total += elapsed;
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({detail}) [{:.2?}]", i + 1, elapsed),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{:.2?}]", i + 1, elapsed);
            }
        }
    }
    println!("acceptance: {}/10 passed in {:.2?}", 10 - failures, total);
    if failures > 0 {
        std::process::exit(1);
    }
}
