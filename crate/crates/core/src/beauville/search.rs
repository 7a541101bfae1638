use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::sigma::{GeneratingTriple, SigmaFingerprint, SocleClasses};
use crate::error::{Error, Result};
use crate::pc::{GroupElement, PcGroup};
use crate::structure::frattini::projective_points;

const GUIDED_SEED: u64 = 0x7468_696e_7669_6c6c;
const RANDOM_PHI_SAMPLES: usize = 4;
const RANDOM_FALLBACK_PAIRS: u64 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Guided,
    /// Exhaustive with the given work cap, then guided with at most that
    /// many random samples.
    Budgeted(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Found,
    Refuted,
    Inconclusive,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Found => "found",
            Outcome::Refuted => "refuted",
            Outcome::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RefutationReason {
    OmegaCriterion,
    Exhausted,
}

impl RefutationReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            RefutationReason::OmegaCriterion => "omega-criterion",
            RefutationReason::Exhausted => "exhausted",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub mode: String,
    pub pairs_examined: u64,
    pub distinct_fingerprints: usize,
    /// Conjugacy classes used as representatives for `x` (exhaustive mode).
    pub x_representatives: usize,
    /// Estimated pair count of a full exhaustive scan.
    pub exhaustive_work: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BeauvilleCertificate {
    pub outcome: Outcome,
    pub triples: Option<[GeneratingTriple; 2]>,
    pub fingerprints: Option<[SigmaFingerprint; 2]>,
    pub reason: Option<RefutationReason>,
    pub note: Option<String>,
    pub stats: SearchStats,
}

impl BeauvilleCertificate {
    fn found(g: &PcGroup, a: (GroupElement, GroupElement), b: (GroupElement, GroupElement), stats: SearchStats) -> Result<Self> {
        let t1 = GeneratingTriple::new(g, a.0, a.1)?;
        let t2 = GeneratingTriple::new(g, b.0, b.1)?;
        let f1 = g.sigma_fingerprint(&t1.x, &t1.y)?;
        let f2 = g.sigma_fingerprint(&t2.x, &t2.y)?;
        Ok(BeauvilleCertificate {
            outcome: Outcome::Found,
            triples: Some([t1, t2]),
            fingerprints: Some([f1, f2]),
            reason: None,
            note: None,
            stats,
        })
    }

    fn refuted(reason: RefutationReason, stats: SearchStats) -> Self {
        BeauvilleCertificate {
            outcome: Outcome::Refuted,
            triples: None,
            fingerprints: None,
            reason: Some(reason),
            note: None,
            stats,
        }
    }

    fn inconclusive(note: impl Into<String>, stats: SearchStats) -> Self {
        BeauvilleCertificate {
            outcome: Outcome::Inconclusive,
            triples: None,
            fingerprints: None,
            reason: None,
            note: Some(note.into()),
            stats,
        }
    }

    /// Re-checks a found certificate from scratch; other outcomes carry no
    /// witness and verify trivially.
    pub fn verify(&self, g: &PcGroup) -> Result<bool> {
        let Some([t1, t2]) = &self.triples else {
            return Ok(self.outcome != Outcome::Found);
        };
        let fresh1 = GeneratingTriple::new(g, t1.x, t1.y)?;
        let fresh2 = GeneratingTriple::new(g, t2.x, t2.y)?;
        Ok(&fresh1 == t1 && &fresh2 == t2 && g.is_beauville_pair(&fresh1, &fresh2)?)
    }
}

/// Class ids of the socles of `x`, `y`, `xy`, sorted and deduplicated;
/// unused slots hold `u32::MAX`.
type ClassKey = [u32; 3];

fn class_key(mut ids: [u32; 3]) -> ClassKey {
    ids.sort_unstable();
    if ids[2] == ids[1] {
        ids[2] = u32::MAX;
    }
    if ids[1] == ids[0] {
        ids[1] = ids[2];
        ids[2] = u32::MAX;
    }
    ids
}

fn keys_disjoint(a: &ClassKey, b: &ClassKey) -> bool {
    a.iter()
        .filter(|&&x| x != u32::MAX)
        .all(|x| !b.contains(x))
}

/// Distinct class keys in discovery order, each with its first witness.
#[derive(Default)]
struct KeyTable {
    index: HashMap<ClassKey, usize>,
    keys: Vec<(ClassKey, (GroupElement, GroupElement))>,
}

impl KeyTable {
    /// Records `key`; when new, returns the first earlier key disjoint from it.
    fn insert(&mut self, key: ClassKey, witness: (GroupElement, GroupElement)) -> Option<(GroupElement, GroupElement)> {
        if self.index.contains_key(&key) {
            return None;
        }
        let hit = self
            .keys
            .iter()
            .find(|(k, _)| keys_disjoint(k, &key))
            .map(|(_, w)| *w);
        self.index.insert(key, self.keys.len());
        self.keys.push((key, witness));
        hit
    }
}

impl PcGroup {
    fn require_two_generator(&self) -> Result<()> {
        if self.generator_rank() != 2 {
            return Err(Error::precondition(format!(
                "Beauville search needs a 2-generator group (generator rank {})",
                self.generator_rank()
            )));
        }
        Ok(())
    }

    /// Number of conjugacy classes, by full enumeration.
    pub fn conjugacy_class_count(&self) -> Result<usize> {
        let labels = self.conjugacy_labels()?;
        Ok(labels.iter().enumerate().filter(|&(i, &l)| l as usize == i).count())
    }

    /// Labels every element by a representative of its conjugacy class.
    fn conjugacy_labels(&self) -> Result<Vec<u32>> {
        self.ensure_budget(self.order())?;
        let p = self.prime();
        let n = self.order() as usize;
        let gens = self.minimal_generators();
        let mut label = vec![u32::MAX; n];
        for start in 0..n {
            if label[start] != u32::MAX {
                continue;
            }
            label[start] = start as u32;
            let mut stack = vec![self.element_from_index(start as u64)];
            while let Some(c) = stack.pop() {
                for t in &gens {
                    let d = self.conjugate(&c, t);
                    let i = d.index(p) as usize;
                    if label[i] == u32::MAX {
                        label[i] = start as u32;
                        stack.push(d);
                    }
                }
            }
        }
        Ok(label)
    }

    pub fn find_beauville_structure(&self, mode: SearchMode) -> Result<BeauvilleCertificate> {
        self.require_two_generator()?;
        match mode {
            SearchMode::Exhaustive => self.exhaustive_search(self.budget() as u128),
            SearchMode::Guided => self.guided_search(RANDOM_FALLBACK_PAIRS),
            SearchMode::Budgeted(n) => {
                let cert = self.exhaustive_search(n as u128)?;
                if cert.outcome != Outcome::Inconclusive {
                    return Ok(cert);
                }
                let mut guided = self.guided_search(n)?;
                guided.stats.exhaustive_work = cert.stats.exhaustive_work;
                guided.stats.mode = "budgeted".into();
                Ok(guided)
            }
        }
    }

    /// Scans all generating pairs with `x` running over conjugacy-class
    /// representatives; `Sigma` is conjugation invariant so nothing is lost.
    fn exhaustive_search(&self, cap: u128) -> Result<BeauvilleCertificate> {
        let mut stats = SearchStats {
            mode: "exhaustive".into(),
            ..Default::default()
        };
        let n = self.order();
        if n > self.budget() as u128 || n > cap {
            stats.exhaustive_work = n * n;
            return Ok(BeauvilleCertificate::inconclusive("group exceeds the enumeration budget", stats));
        }
        let p = self.prime();
        // Conjugacy classes lie in cosets of G', which bounds their number.
        let outside_phi = n - self.frattini().order(p);
        let min_reps = outside_phi.div_ceil(self.derived_subgroup().order(p));
        if min_reps * n > cap {
            stats.exhaustive_work = min_reps * n;
            return Ok(BeauvilleCertificate::inconclusive(
                format!("exhaustive scan needs at least {} pairs, cap is {}", min_reps * n, cap),
                stats,
            ));
        }
        let elements: Vec<GroupElement> = (0..n as u64).map(|i| self.element_from_index(i)).collect();
        let coords: Vec<Option<Vec<u8>>> = elements.iter().map(|x| self.frattini_direction(x)).collect();
        let labels = self.conjugacy_labels()?;
        let reps: Vec<usize> = (0..n as usize)
            .filter(|&i| labels[i] == i as u32 && coords[i].is_some())
            .collect();
        stats.x_representatives = reps.len();
        stats.exhaustive_work = reps.len() as u128 * n;
        if stats.exhaustive_work > cap {
            return Ok(BeauvilleCertificate::inconclusive(
                format!("exhaustive scan needs {} pairs, cap is {}", stats.exhaustive_work, cap),
                stats,
            ));
        }
        let mut classes = SocleClasses::new(self);
        let mut class_of = vec![u32::MAX; n as usize];
        let mut lookup = |i: usize, x: &GroupElement, classes: &mut SocleClasses| -> u32 {
            if class_of[i] == u32::MAX {
                class_of[i] = classes.class_of_element(x);
            }
            class_of[i]
        };
        let mut table = KeyTable::default();
        let mut hit = None;
        'outer: for &xi in &reps {
            let x = elements[xi];
            let cx = lookup(xi, &x, &mut classes);
            let dx = coords[xi].as_ref().unwrap();
            for (yi, y) in elements.iter().enumerate() {
                match &coords[yi] {
                    Some(dy) if dy != dx => {}
                    _ => continue,
                }
                stats.pairs_examined += 1;
                let xy = self.multiply(&x, y);
                let cy = lookup(yi, y, &mut classes);
                let cxy = lookup(xy.index(p) as usize, &xy, &mut classes);
                if let Some(w) = table.insert(class_key([cx, cy, cxy]), (x, *y)) {
                    hit = Some((w, (x, *y)));
                    break 'outer;
                }
            }
        }
        stats.distinct_fingerprints = table.keys.len();
        match hit {
            Some((a, b)) => BeauvilleCertificate::found(self, a, b, stats),
            None => Ok(BeauvilleCertificate::refuted(RefutationReason::Exhausted, stats)),
        }
    }

    /// Direction-by-direction construction: elements `u_v^k f` with `u_v` a
    /// lift of the direction `v` and `f` from a sample of `Phi(G)`.
    fn guided_search(&self, random_pairs: u64) -> Result<BeauvilleCertificate> {
        let mut stats = SearchStats {
            mode: "guided".into(),
            ..Default::default()
        };
        if let Ok(c) = self.census() {
            if c.agemo.log_order() == 1 && self.omega_negative_test()? {
                return Ok(BeauvilleCertificate::refuted(RefutationReason::OmegaCriterion, stats));
            }
        }
        let p = self.prime();
        let mut rng = ChaCha8Rng::seed_from_u64(GUIDED_SEED);
        let phi = self.frattini();
        let mut shifts = vec![self.identity()];
        shifts.extend_from_slice(phi.basis());
        for _ in 0..RANDOM_PHI_SAMPLES {
            let mut f = self.identity();
            for b in phi.basis() {
                f = self.multiply(&f, &self.power(b, rng.gen_range(0..p) as i64));
            }
            shifts.push(f);
        }
        let pools: Vec<Vec<GroupElement>> = projective_points(2, p)
            .iter()
            .map(|v| {
                let u = self.frattini_lift(v);
                let mut pool = Vec::new();
                for k in 1..p {
                    let uk = self.power(&u, k as i64);
                    for f in &shifts {
                        pool.push(self.multiply(&uk, f));
                    }
                }
                pool
            })
            .collect();
        let mut classes = SocleClasses::new(self);
        let mut table = KeyTable::default();
        let mut probe = |x: GroupElement, y: GroupElement, stats: &mut SearchStats| {
            stats.pairs_examined += 1;
            let xy = self.multiply(&x, &y);
            let key = class_key([
                classes.class_of_element(&x),
                classes.class_of_element(&y),
                classes.class_of_element(&xy),
            ]);
            table.insert(key, (x, y)).map(|w| (w, (x, y)))
        };
        for (a, pa) in pools.iter().enumerate() {
            for (b, pb) in pools.iter().enumerate() {
                if a == b {
                    continue;
                }
                for &x in pa {
                    for &y in pb {
                        if let Some((w1, w2)) = probe(x, y, &mut stats) {
                            stats.distinct_fingerprints = table.keys.len();
                            return BeauvilleCertificate::found(self, w1, w2, stats);
                        }
                    }
                }
            }
        }
        let n = self.order();
        for _ in 0..random_pairs {
            let x = self.element_from_index(rng.gen_range(0..n) as u64);
            let y = self.element_from_index(rng.gen_range(0..n) as u64);
            if !self.is_generating_pair(&x, &y) {
                continue;
            }
            if let Some((w1, w2)) = probe(x, y, &mut stats) {
                stats.distinct_fingerprints = table.keys.len();
                return BeauvilleCertificate::found(self, w1, w2, stats);
            }
        }
        stats.distinct_fingerprints = table.keys.len();
        Ok(BeauvilleCertificate::inconclusive("guided and random search found no structure", stats))
    }

    /// True when the elements of order at most `p` lie in the union of two
    /// maximal subgroups, which with `|G^p| = p` rules out a Beauville
    /// structure.
    pub fn omega_negative_test(&self) -> Result<bool> {
        let census = self.census()?;
        if census.agemo.log_order() != 1 {
            return Err(Error::precondition(format!(
                "omega test needs |G^p| = p, found p^{}",
                census.agemo.log_order()
            )));
        }
        let p = self.prime();
        let maxes = self.maximal_subgroups();
        let dirs = &census.order_p_directions;
        for (i, a) in maxes.iter().enumerate() {
            for b in &maxes[i..] {
                if dirs
                    .iter()
                    .all(|v| a.contains_coords(v, p) || b.contains_coords(v, p))
                {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}
