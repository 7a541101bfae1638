use std::sync::OnceLock;

use proptest::prelude::*;

use thinville::catalog;
use thinville::congruence::{cij, cij_mod};
use thinville::pc::{GroupElement, PcGroup, DEFAULT_BUDGET};

const IDS: [&str; 5] = ["heisenberg-5", "cpk2-5-2", "sg-3_5-3", "sg-3_6-95", "thin5-c5-A3"];

fn groups() -> &'static Vec<PcGroup> {
    static GROUPS: OnceLock<Vec<PcGroup>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        IDS.iter()
            .map(|id| catalog::resolve(id).unwrap().group(DEFAULT_BUDGET).unwrap())
            .collect()
    })
}

fn elem(g: &PcGroup, raw: &[u8]) -> GroupElement {
    let p = g.prime() as u8;
    let exps: Vec<u8> = raw.iter().take(g.rank()).map(|e| e % p).collect();
    g.element(&exps).unwrap()
}

fn raw() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(any::<u8>(), 12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(gi in 0..IDS.len(), a in raw(), b in raw(), c in raw()) {
        let g = &groups()[gi];
        let (a, b, c) = (elem(g, &a), elem(g, &b), elem(g, &c));
        prop_assert_eq!(g.multiply(&g.multiply(&a, &b), &c), g.multiply(&a, &g.multiply(&b, &c)));
    }

    #[test]
    fn collecting_a_word_matches_multiplying_its_letters(gi in 0..IDS.len(), word in prop::collection::vec((0usize..12, -6i64..6), 0..10)) {
        let g = &groups()[gi];
        let word: Vec<(usize, i64)> = word.into_iter().map(|(k, e)| (k % g.rank() + 1, e)).collect();
        let collected = g.collect(&word).unwrap();
        let product = word.iter().fold(g.identity(), |acc, &(k, e)| g.multiply(&acc, &g.power(&g.generator(k), e)));
        prop_assert_eq!(collected, product);
    }

    #[test]
    fn inverses_and_identity(gi in 0..IDS.len(), a in raw()) {
        let g = &groups()[gi];
        let a = elem(g, &a);
        let e = g.identity();
        prop_assert_eq!(g.multiply(&a, &g.inverse(&a)), e.clone());
        prop_assert_eq!(g.multiply(&g.inverse(&a), &a), e.clone());
        prop_assert_eq!(g.multiply(&a, &e), a.clone());
        prop_assert_eq!(g.multiply(&e, &a), a);
    }

    #[test]
    fn powers_add(gi in 0..IDS.len(), a in raw(), m in -30i64..30, n in -30i64..30) {
        let g = &groups()[gi];
        let a = elem(g, &a);
        prop_assert_eq!(g.power(&a, m + n), g.multiply(&g.power(&a, m), &g.power(&a, n)));
        prop_assert_eq!(g.pth_power(&a), g.power(&a, g.prime() as i64));
    }

    #[test]
    fn element_order_is_the_least_annihilating_power(gi in 0..IDS.len(), a in raw()) {
        let g = &groups()[gi];
        let a = elem(g, &a);
        let o = g.element_order(&a);
        prop_assert!(g.power(&a, o as i64).is_identity());
        prop_assert_eq!(g.order() % o, 0);
        if o > 1 {
            prop_assert!(!g.power(&a, (o / g.prime() as u128) as i64).is_identity());
        }
    }

    #[test]
    fn commutator_identity(gi in 0..IDS.len(), a in raw(), b in raw()) {
        let g = &groups()[gi];
        let (a, b) = (elem(g, &a), elem(g, &b));
        // ab = ba[a,b]
        prop_assert_eq!(g.multiply(&a, &b), g.multiply(&g.multiply(&b, &a), &g.commutator(&a, &b)));
    }

    #[test]
    fn index_round_trip(gi in 0..IDS.len(), a in raw()) {
        let g = &groups()[gi];
        let a = elem(g, &a);
        prop_assert_eq!(g.element_from_index(a.index(g.prime())), a);
    }

    #[test]
    fn fingerprint_is_conjugation_invariant(gi in 0..IDS.len(), a in raw(), b in raw(), c in raw()) {
        let g = &groups()[gi];
        let (x, y, t) = (elem(g, &a), elem(g, &b), elem(g, &c));
        prop_assume!(!x.is_identity() && !y.is_identity() && !g.multiply(&x, &y).is_identity());
        let f = g.sigma_fingerprint(&x, &y).unwrap();
        let h = g.sigma_fingerprint(&g.conjugate(&x, &t), &g.conjugate(&y, &t)).unwrap();
        let mut fs = f.socles.clone();
        let mut hs = h.socles.clone();
        fs.sort_by_key(|z| z.index(g.prime()));
        hs.sort_by_key(|z| z.index(g.prime()));
        prop_assert_eq!(fs, hs);
    }

    #[test]
    fn cij_is_the_reduction_of_the_exact_value(i in 0usize..12, j in 0usize..12, pi in 0usize..5) {
        let p = [3u32, 5, 7, 11, 13][pi];
        prop_assert_eq!(cij(i, j, p) as u128, cij_mod(i, j, p, 1 << 60) % p as u128);
    }
}
