//! Cross-checks against values computed independently in GAP 4.15.1
//! (NormalSubgroups, ConjugacyClasses, Exponent, Agemo, Omega on
//! SmallGroup(3^n, k)) and against brute-force recomputation.

use thinville::catalog;
use thinville::pc::{PcGroup, DEFAULT_BUDGET};

/// (id, normal subgroups, conjugacy classes, exponent, |G^3|, |Omega_1|).
const GAP_TABLE: &[(&str, usize, usize, u128, u128, u128)] = &[
    ("sg-3_2-2", 6, 9, 3, 1, 9),
    ("sg-3_3-3", 7, 11, 3, 1, 27),
    ("sg-3_3-4", 7, 11, 9, 3, 9),
    ("sg-3_4-10", 8, 17, 9, 3, 9),
    ("sg-3_4-7", 8, 17, 9, 3, 81),
    ("sg-3_4-8", 8, 17, 9, 3, 27),
    ("sg-3_4-9", 8, 17, 9, 3, 81),
    ("sg-3_5-25", 9, 35, 9, 9, 81),
    ("sg-3_5-26", 9, 35, 9, 9, 243),
    ("sg-3_5-27", 9, 35, 9, 9, 9),
    ("sg-3_5-28", 9, 19, 9, 9, 243),
    ("sg-3_5-29", 9, 19, 9, 9, 9),
    ("sg-3_5-3", 12, 35, 9, 9, 243),
    ("sg-3_5-30", 9, 19, 9, 9, 81),
    ("sg-3_5-4", 12, 35, 9, 9, 81),
    ("sg-3_5-5", 12, 35, 9, 9, 27),
    ("sg-3_5-6", 12, 35, 9, 9, 81),
    ("sg-3_5-7", 12, 35, 9, 9, 27),
    ("sg-3_5-8", 12, 35, 9, 9, 27),
    ("sg-3_5-9", 12, 35, 9, 9, 27),
    ("sg-3_6-100", 10, 41, 27, 27, 729),
    ("sg-3_6-101", 10, 41, 27, 27, 9),
    ("sg-3_6-34", 13, 41, 9, 27, 729),
    ("sg-3_6-35", 13, 41, 9, 27, 243),
    ("sg-3_6-36", 13, 41, 9, 27, 81),
    ("sg-3_6-37", 13, 41, 9, 27, 729),
    ("sg-3_6-38", 13, 41, 9, 27, 243),
    ("sg-3_6-39", 13, 41, 9, 27, 27),
    ("sg-3_6-40", 16, 57, 9, 27, 729),
    ("sg-3_6-44", 13, 41, 9, 27, 243),
    ("sg-3_6-45", 13, 41, 9, 27, 243),
    ("sg-3_6-46", 13, 41, 9, 27, 27),
    ("sg-3_6-47", 13, 41, 9, 27, 27),
    ("sg-3_6-56", 13, 41, 9, 27, 81),
    ("sg-3_6-57", 13, 41, 9, 27, 81),
    ("sg-3_6-95", 10, 89, 27, 27, 729),
    ("sg-3_6-96", 10, 89, 27, 27, 9),
    ("sg-3_6-97", 10, 89, 27, 27, 243),
    ("sg-3_6-98", 10, 89, 27, 27, 243),
    ("sg-3_6-99", 10, 41, 27, 27, 243),
];

fn load(id: &str) -> PcGroup {
    catalog::resolve(id).unwrap().group(DEFAULT_BUDGET).unwrap()
}

#[test]
fn invariants_match_gap_on_every_three_group_entry() {
    for &(id, normals, classes, exponent, agemo, omega) in GAP_TABLE {
        let g = load(id);
        assert_eq!(g.normal_subgroups().unwrap().len(), normals, "{id} normal subgroups");
        assert_eq!(g.conjugacy_class_count().unwrap(), classes, "{id} classes");
        let census = g.census().unwrap();
        assert_eq!(census.exponent, exponent, "{id} exponent");
        assert_eq!(census.agemo.order(3), agemo, "{id} agemo");
        assert_eq!(census.omega1.order(3), omega, "{id} omega");
    }
}

#[test]
fn gap_table_covers_the_catalog() {
    let dir = catalog::catalog_dir();
    let entries = catalog::load_catalog(&dir).unwrap();
    let threes: Vec<_> = entries.iter().filter(|e| e.presentation.prime == 3).map(|e| e.id.as_str()).collect();
    let table: Vec<_> = GAP_TABLE.iter().map(|r| r.0).collect();
    assert_eq!(threes, table);
}

#[test]
fn element_orders_match_repeated_multiplication() {
    for id in ["sg-3_6-95", "sg-3_5-3", "heisenberg-5", "cpk2-5-2"] {
        let g = load(id);
        for idx in (0..g.order() as u64).step_by(7) {
            let a = g.element_from_index(idx);
            let mut acc = a;
            let mut k = 1u128;
            while !acc.is_identity() {
                acc = g.multiply(&acc, &a);
                k += 1;
            }
            assert_eq!(g.element_order(&a), k, "{id} {a}");
        }
    }
}

#[test]
fn thin_fast_path_matches_enumeration_on_builtins() {
    for id in ["elab-3", "elab-5", "elab-3-3", "heisenberg-3", "heisenberg-5", "cpk2-3-2", "cyclic-5-2"] {
        let g = load(id);
        assert_eq!(g.is_thin(), g.is_thin_brute_force().unwrap(), "{id}");
    }
    assert!(load("heisenberg-5").is_thin());
    assert!(!load("cpk2-3-2").is_thin());
    assert!(!load("elab-3-3").is_thin());
}

#[test]
fn center_order_of_sg_3_6_40_is_nine() {
    let g = load("sg-3_6-40");
    assert_eq!(g.center().order(3), 9);
    assert!(!g.is_thin());
}
