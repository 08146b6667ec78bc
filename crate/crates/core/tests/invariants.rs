use proptest::prelude::*;
use solvrad::group::DEFAULT_CAP;
use solvrad::radical::{is_k_radical, SearchMode, Verdict};
use solvrad::spec::{realize, GroupSpec};
use solvrad::structure::{conjugacy_classes, conjugacy_orbit, is_solvable};
use solvrad::{PermGroup, Permutation, RngState};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u16).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn group(s: &str) -> PermGroup {
    realize(&GroupSpec::parse(s).unwrap()).unwrap()
}

proptest! {
    #[test]
    fn product_is_associative(a in perm(9), b in perm(9), c in perm(9)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn inverse_and_order(a in perm(9)) {
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert!(a.pow(a.order()).is_identity());
        let cycle_lcm = a.cycles().iter().fold(1u64, |l, c| num_integer::lcm(l, c.len() as u64));
        prop_assert_eq!(a.order(), cycle_lcm);
    }

    #[test]
    fn conjugation_is_a_homomorphism(a in perm(7), b in perm(7), x in perm(7)) {
        prop_assert_eq!(a.mul(&b).conjugate_by(&x), a.conjugate_by(&x).mul(&b.conjugate_by(&x)));
        prop_assert_eq!(a.conjugate_by(&x).order(), a.order());
    }

    #[test]
    fn parity_membership(a in perm(7)) {
        let an = group("A(7)");
        prop_assert_eq!(an.is_member(&a), a.is_even());
    }

    #[test]
    fn random_elements_are_members(seed in any::<u64>()) {
        let g = group("PSL(3,2)");
        let mut rng = RngState::new(seed);
        let x = g.random_uniform(&mut rng);
        let y = g.random_element(&mut rng);
        prop_assert!(g.is_member(&x) && g.is_member(&y) && g.is_member(&x.mul(&y)));
    }

    #[test]
    fn rank_enumeration_is_a_bijection(seed in any::<u64>()) {
        let g = group("S(5)");
        let mut rng = RngState::new(seed);
        let x = g.random_uniform(&mut rng);
        let all = g.elements(DEFAULT_CAP).unwrap();
        prop_assert_eq!(all.len(), 120);
        prop_assert_eq!(all.iter().filter(|e| **e == x).count(), 1);
    }

    #[test]
    fn conjugates_share_class_and_verdict(seed in any::<u64>()) {
        let g = group("S(5)");
        let mut rng = RngState::new(seed);
        let x = g.random_uniform(&mut rng);
        let y = x.conjugate_by(&g.random_uniform(&mut rng));
        let ox = conjugacy_orbit(&g, &x, DEFAULT_CAP).unwrap();
        prop_assert!(ox.position(&g, &y).is_some());
        let vx = is_k_radical(&g, &x, 2, SearchMode::Exhaustive, DEFAULT_CAP, &mut rng).unwrap();
        let vy = is_k_radical(&g, &y, 2, SearchMode::Exhaustive, DEFAULT_CAP, &mut rng).unwrap();
        prop_assert_eq!(vx.is_radical(), vy.is_radical());
    }

    #[test]
    fn k_radical_is_monotone(seed in any::<u64>()) {
        let g = group("S(5)");
        let mut rng = RngState::new(seed);
        let x = g.random_uniform(&mut rng);
        let mut previous = true;
        for k in 1..=3 {
            let v = is_k_radical(&g, &x, k, SearchMode::Exhaustive, DEFAULT_CAP, &mut rng).unwrap();
            prop_assert!(previous || !v.is_radical());
            previous = v.is_radical();
            if let Verdict::NotRadical { witness, .. } = &v.verdict {
                prop_assert_eq!(witness.len(), k);
            }
        }
    }
}

#[test]
fn class_sizes_divide_and_sum_to_order() {
    for s in ["S(6)", "PSL(2,7)", "A(4) wr C2", "SL(2,5)"] {
        let g = group(s);
        let n = g.order_u64();
        let classes = conjugacy_classes(&g, DEFAULT_CAP).unwrap();
        assert_eq!(classes.iter().map(|c| c.class_size).sum::<u64>(), n, "{s}");
        for c in &classes {
            assert_eq!(c.class_size * c.centralizer_order, n, "{s}");
            assert_eq!(c.representative.order(), c.element_order, "{s}");
        }
        assert_eq!(classes.iter().filter(|c| c.element_order == 1).count(), 1, "{s}");
    }
}

#[test]
fn solvability_certificates_verify() {
    let mut rng = RngState::new(5);
    for (s, solvable) in [("S(4)", true), ("A(4) wr C2", true), ("A(5)", false), ("SL(2,5)", false)] {
        let g = group(s);
        let cert = is_solvable(&g, &mut rng);
        assert_eq!(cert.is_solvable(), solvable, "{s}");
        assert!(cert.verify(&g), "{s}");
    }
}
