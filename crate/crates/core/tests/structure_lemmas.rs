use thinville::catalog;
use thinville::pc::{PcGroup, DEFAULT_BUDGET};

fn entries() -> Vec<(String, PcGroup)> {
    catalog::load_catalog(&catalog::catalog_dir())
        .unwrap()
        .into_iter()
        .map(|e| {
            let g = e.group(DEFAULT_BUDGET).unwrap();
            (e.id, g)
        })
        .collect()
}

fn nonabelian_metabelian_thin(g: &PcGroup) -> bool {
    g.nilpotency_class() >= 2 && g.is_metabelian() && g.is_thin()
}

#[test]
fn place_of_agemo_and_lattice_shape_off_maximal_class() {
    let mut n = 0;
    for (id, g) in entries() {
        if !nonabelian_metabelian_thin(&g) || g.is_maximal_class() {
            continue;
        }
        n += 1;
        let place = g.verify_place_of_agemo().unwrap();
        assert!(place.all_pass(), "{id}: {place:?}");
        let lattice = g.lattice_profile().unwrap();
        assert!(lattice.matches_thin_grammar(g.prime()), "{id}: {}", lattice.shape_word());
        let agemo = g.agemo().unwrap();
        if lattice.ends_with_chain {
            assert_ne!(agemo.log_order(), 2, "{id}");
        }
    }
    assert_eq!(n, 24);
}

#[test]
fn agemo_contains_gamma_p_on_every_thin_entry() {
    for (id, g) in entries() {
        if !nonabelian_metabelian_thin(&g) {
            continue;
        }
        let agemo = g.agemo().unwrap();
        assert!(g.gamma(g.prime() as usize).is_subgroup_of(&g, &agemo), "{id}");
        assert!(agemo.log_order() <= 3, "{id}");
    }
}

/// Maximal-class thin 3-groups where the statements above fail; the agemo
/// orders agree with GAP's `Agemo(SmallGroup(3^5, k), 3)`.
#[test]
fn maximal_class_three_groups_break_the_agemo_lemmas() {
    let all = entries();
    let get = |id: &str| &all.iter().find(|(i, _)| i == id).unwrap().1;
    for k in 25..=30 {
        let g = get(&format!("sg-3_5-{k}"));
        assert!(g.is_maximal_class() && g.is_thin() && g.is_metabelian());
        let lattice = g.lattice_profile().unwrap();
        assert!(lattice.ends_with_chain);
        assert_eq!(g.agemo().unwrap().order(3), 9);
        assert_eq!(lattice.shape_word(), "DCCC");
    }
    for k in 95..=101 {
        let g = get(&format!("sg-3_6-{k}"));
        let place = g.verify_place_of_agemo().unwrap();
        assert_eq!(place.l, 3);
        assert!(!place.gamma_l2_trivial);
    }
    let g = get("sg-3_3-4");
    assert_eq!(g.verify_place_of_agemo().unwrap().l, 2);
}

#[test]
fn covering_property_on_every_layer() {
    for (id, g) in entries() {
        if !nonabelian_metabelian_thin(&g) || g.order() > 729 {
            continue;
        }
        let gens = g.generators();
        for i in 1..g.nilpotency_class() {
            let (gi, gi1, gi2) = (g.gamma(i), g.gamma(i + 1), g.gamma(i + 2));
            for x in gi.elements(&g) {
                if gi1.contains(&g, &x) {
                    continue;
                }
                let comms: Vec<_> = gens.iter().map(|h| g.commutator(&x, h)).collect();
                let cover = g.join(&g.generated_subgroup(&comms), &gi2);
                assert_eq!(cover, gi1, "{id} layer {i} element {x}");
            }
        }
    }
}
