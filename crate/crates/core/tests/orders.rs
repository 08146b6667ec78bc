mod common;

use common::classical_order;
use solvrad::spec::{realize, GroupSpec};

fn realized_order(spec: &str) -> u128 {
    let g = realize(&spec.parse::<GroupSpec>().unwrap()).unwrap();
    g.order_u64() as u128
}

#[test]
fn classical_orders_match_formulas() {
    let cases: &[(&str, u32, u128)] = &[
        ("SL", 2, 3),
        ("SL", 2, 4),
        ("SL", 3, 2),
        ("GL", 2, 3),
        ("GL", 3, 2),
        ("PGL", 2, 5),
        ("PSL", 2, 7),
        ("PSL", 2, 8),
        ("PSL", 2, 9),
        ("PSL", 3, 2),
        ("PSL", 3, 3),
        ("PSL", 3, 4),
        ("PSL", 4, 2),
        ("SU", 3, 2),
        ("SU", 3, 3),
        ("PSU", 3, 3),
        ("SU", 4, 2),
        ("PSU", 4, 2),
        ("Sp", 4, 2),
        ("Sp", 4, 3),
        ("PSp", 4, 3),
        ("Sp", 6, 2),
        ("OmegaPlus", 4, 3),
        ("OmegaMinus", 4, 3),
        ("OmegaMinus", 4, 2),
        ("OmegaPlus", 6, 2),
        ("OmegaMinus", 6, 2),
        ("Omega", 3, 3),
        ("Omega", 3, 5),
        ("Omega", 5, 3),
    ];
    for &(family, n, q) in cases {
        let spec = format!("{family}({n},{q})");
        assert_eq!(
            realized_order(&spec),
            classical_order(family, n, q),
            "order of {spec}"
        );
    }
}
