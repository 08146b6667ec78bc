//! Acceptance suite: one PASS/FAIL line per criterion.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigUint;
use solvrad::group::DEFAULT_CAP;
use solvrad::radical::*;
use solvrad::rootsys::{supported_types, CoxeterConvention, RootSystem, RootType};
use solvrad::spec::{realize, GroupSpec};
use solvrad::structure::{conjugacy_classes, is_solvable, ConjugacyClass};
use solvrad::{PermGroup, Permutation, RngState};
use solvrad_cli::commands::{golden, table1_row, Settings};
use solvrad_cli::report::{RowStatus, Table1Row};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group(s: &str) -> PermGroup {
    realize(&GroupSpec::parse(s).unwrap()).unwrap()
}

fn classes(g: &PermGroup) -> Vec<ConjugacyClass> {
    conjugacy_classes(g, DEFAULT_CAP).unwrap()
}

const SEED: u64 = 2024;

fn settings() -> Settings {
    Settings {
        seed: SEED,
        cap: DEFAULT_CAP,
    }
}

/// Required rows: order at most 2·10⁶ with a realization.
const REQUIRED: &[(&str, &str)] = &[
    ("A2(2)", "PSL(3,2)"),
    ("A2(3)", "PSL(3,3)"),
    ("2A2(3)", "PSU(3,3)"),
    ("2G2(3)'", "PSL(2,8)"),
    ("B2(3)", "PSp(4,3)"),
    ("2A3(2)", "PSU(4,2)"),
    ("A3(2)", "PSL(4,2)"),
    ("B3(2)", "Sp(6,2)"),
];

fn table_rows() -> Vec<Table1Row> {
    let golden = golden();
    REQUIRED
        .iter()
        .map(|(label, spec)| {
            let (i, row) = golden
                .rows
                .iter()
                .enumerate()
                .find(|(_, r)| r.label == *label)
                .unwrap_or_else(|| panic!("golden row {label} missing"));
            assert_eq!(row.realization.as_deref(), Some(*spec));
            table1_row(row, i, 2_000_000, &settings()).unwrap()
        })
        .collect()
}

fn criterion_1(rows: &[Table1Row]) -> Outcome {
    let mut seen = Vec::new();
    for r in rows {
        let label = &r.golden.label;
        ensure(r.status == RowStatus::Match, || {
            format!("{label}: expected {:?}, observed {:?}", r.golden.expected, r.observed)
        })?;
        let v = r.verdicts.as_ref().unwrap();
        ensure(v.unknown_count == 0, || format!("{label}: undecided classes"))?;
        let g = realize(&GroupSpec::parse(r.golden.realization.as_deref().unwrap()).unwrap()).unwrap();
        for c in &v.classes {
            if let Verdict::NotRadical { witness, triple } = &c.verdict.verdict {
                ensure(verify_commutator_witness(&g, &c.verdict.subject, witness, triple), || {
                    format!("{label}: class {} witness fails", c.class_index)
                })?;
            }
        }
        let obs = r.observed.as_ref().unwrap();
        seen.push(format!("{label}={}{:?}", obs.count, obs.orders));
    }
    // Expected row values, restated independently of the shipped data.
    let expect: Vec<(usize, Vec<u64>)> = vec![
        (0, vec![]),
        (0, vec![]),
        (0, vec![]),
        (0, vec![]),
        (3, vec![2, 3, 3]),
        (3, vec![2, 3, 3]),
        (0, vec![]),
        (1, vec![2]),
    ];
    for (r, (n, o)) in rows.iter().zip(expect) {
        let obs = r.observed.as_ref().unwrap();
        ensure(obs.count == n && obs.orders == o, || format!("{} differs", r.golden.label))?;
    }
    Ok(seen.join(" "))
}

fn criterion_2(rows: &[Table1Row]) -> Outcome {
    let mut refuted = 0;
    for r in rows {
        let g = realize(&GroupSpec::parse(r.golden.realization.as_deref().unwrap()).unwrap()).unwrap();
        let v = r.verdicts.as_ref().unwrap();
        let radical = v.classes.iter().filter(|c| c.verdict.is_radical()).count();
        ensure(r.three_verdicts.len() == radical, || format!("{}: missing 3-searches", r.golden.label))?;
        for t in &r.three_verdicts {
            let Verdict::NotRadical { witness, triple } = &t.verdict else {
                return Err(format!("{}: no 3-witness for {}", r.golden.label, t.subject));
            };
            ensure(
                t.stats.random_tuples <= 10_000 && t.stats.swept_tuples == 0,
                || format!("{}: 3-witness not found by random search", r.golden.label),
            )?;
            ensure(verify_commutator_witness(&g, &t.subject, witness, triple), || {
                format!("{}: 3-witness fails", r.golden.label)
            })?;
            refuted += 1;
        }
        // Every other nontrivial class already has a 2-witness, which extends
        // to a 3-witness by repetition.
        for c in v.classes.iter().filter(|c| !c.verdict.is_radical()) {
            if let Verdict::NotRadical { witness, triple } = &c.verdict.verdict {
                let mut w3 = witness.clone();
                w3.push(witness[0].clone());
                ensure(verify_commutator_witness(&g, &c.verdict.subject, &w3, triple), || {
                    format!("{}: extended witness fails", r.golden.label)
                })?;
            }
        }
    }
    Ok(format!("{refuted} 2-radical classes refuted at k=3; 3-radical sets are trivial"))
}

fn criterion_3() -> Outcome {
    let rng = RngState::new(SEED);
    for n in 5..=9 {
        let g = group(&format!("A({n})"));
        let cls = classes(&g);
        let k = kappa_group(&g, &cls, KAPPA_CAP, DEFAULT_CAP, &rng).map_err(|e| e.to_string())?;
        ensure(k.kappa == Some(2), || format!("kappa(A{n}) = {:?}", k.kappa))?;
        for c in &k.classes {
            match &c.kappa {
                Kappa::InRadical => ensure(c.element_order == 1, || format!("A{n}: nontrivial class in radical"))?,
                Kappa::Degree { n: d, witness, triple } => {
                    ensure(*d == 2, || format!("A{n}: class {} has degree {d}", c.class_index))?;
                    ensure(verify_commutator_witness(&g, &c.representative, witness, triple), || {
                        format!("A{n}: witness fails")
                    })?;
                }
            }
        }
    }
    Ok("kappa(A5..A9) = 2 with verified 2-witnesses".into())
}

fn criterion_4() -> Outcome {
    let g = group("S(5)");
    let t = Permutation::parse_cycles(5, "(0 1)").unwrap();
    let mut rng = RngState::new(SEED);
    let v = is_k_radical(&g, &t, 2, SearchMode::Exhaustive, DEFAULT_CAP, &mut rng).map_err(|e| e.to_string())?;
    ensure(v.is_radical(), || "transposition refuted at k=2".into())?;
    ensure(v.stats.slot_values == 10 && v.stats.swept_tuples <= 100, || {
        format!("unexpected search size {:?}", v.stats)
    })?;
    let Kappa::Degree { n, witness, triple } =
        kappa_element(&g, &t, KAPPA_CAP, DEFAULT_CAP, &mut rng).map_err(|e| e.to_string())?
    else {
        return Err("transposition reported in the radical".into());
    };
    ensure(n == 3 && verify_commutator_witness(&g, &t, &witness, &triple), || {
        format!("kappa(transposition) = {n}")
    })?;
    let k = kappa_group(&g, &classes(&g), KAPPA_CAP, DEFAULT_CAP, &rng).map_err(|e| e.to_string())?;
    ensure(k.kappa == Some(3), || format!("kappa(S5) = {:?}", k.kappa))?;
    Ok(format!("kappa(S5) = 3; k=2 sweep covered {} tuples", v.stats.swept_tuples))
}

fn criterion_5() -> Outcome {
    let mut rng = RngState::new(SEED);
    let mut counts = Vec::new();
    for n in 5..=8 {
        let scan = transposition_triples_solvable(n, &mut rng).map_err(|e| e.to_string())?;
        ensure(scan.all_solvable, || format!("S{n}: {} nonsolvable triples", scan.exceptions.len()))?;
        counts.push(scan.triples_tested);
    }
    let a5 = group("A(5)");
    let c = Permutation::parse_cycles(5, "(0 1 2)").unwrap();
    let sanity = class_triples_solvable(&a5, &c, DEFAULT_CAP, &mut rng).map_err(|e| e.to_string())?;
    ensure(!sanity.all_solvable, || "3-cycle triples in A5 all solvable".into())?;
    Ok(format!("triples up to conjugacy for n=5..8: {counts:?}; 3-cycle control finds nonsolvable triples"))
}

fn criterion_6() -> Outcome {
    let rng = RngState::new(SEED);
    let sp = group("Sp(6,2)");
    let transvections: Vec<ConjugacyClass> = classes(&sp)
        .into_iter()
        .filter(|c| c.element_order == 2 && c.class_size == 63)
        .collect();
    ensure(transvections.len() == 1, || "transvection class not unique".into())?;
    let check = three_transposition_class_check(&sp, &transvections[0].representative, DEFAULT_CAP, &rng)
        .map_err(|e| e.to_string())?;
    ensure(check.passed && check.elements_checked == 63, || format!("Sp(6,2): {check:?}"))?;
    for n in 5..=8 {
        let g = group(&format!("S({n})"));
        let t = Permutation::parse_cycles(n, "(0 1)").unwrap();
        let c = three_transposition_class_check(&g, &t, DEFAULT_CAP, &rng).map_err(|e| e.to_string())?;
        ensure(c.passed && c.elements_checked == n * (n - 1) / 2, || format!("S{n} fails"))?;
    }
    Ok("transvections of Sp(6,2) and transpositions of S5..S8 are 2-radical 3-transposition classes".into())
}

fn sl23_regular() -> PermGroup {
    group("SL(2,3)").regular_action().unwrap()
}

fn criterion_7() -> Outcome {
    let rng = RngState::new(SEED);
    let corpus: Vec<(&str, PermGroup, u64)> = vec![
        ("S(4)", group("S(4)"), 24),
        ("S(6)", group("S(6)"), 1),
        ("SL(2,3) regular", sl23_regular(), 24),
        ("S(4) x A(5)", group("S(4) x A(5)"), 24),
        ("C(3) x A(5)", group("C(3) x A(5)"), 3),
        ("A(4) wr C2", group("A(4) wr C2"), 288),
    ];
    let mut out = Vec::new();
    for (name, g, expected) in corpus {
        let cls = classes(&g);
        let err = |e: solvrad::Error| format!("{name}: {e}");
        let nc = solvable_radical_nc(&g, &cls).map_err(err)?;
        let two = solvable_radical_2gen(&g, &cls, DEFAULT_CAP, &rng).map_err(err)?;
        let comm = radical_commutators(&g, &cls, 3, DEFAULT_CAP, &rng).map_err(err)?;
        ensure(nc.group.order_u64() == expected, || format!("{name}: |R| = {}", nc.order()))?;
        ensure(
            nc.group.same_group(&two.group)
                && nc.group.same_group(&comm.radical.group)
                && nc.member_classes == two.member_classes
                && nc.member_classes == comm.radical.member_classes,
            || format!("{name}: methods disagree"),
        )?;
        let q = quotient_by_normal(&g, &nc.group, DEFAULT_CAP).map_err(err)?;
        ensure(q.order() * nc.order() == g.order(), || format!("{name}: quotient order"))?;
        let qr = solvable_radical_nc(&q, &classes(&q)).map_err(err)?;
        ensure(qr.group.is_trivial(), || format!("{name}: R(G/R(G)) = {}", qr.order()))?;
        out.push(format!("{name}:{expected}"));
    }
    Ok(format!("|R(G)|: {}", out.join(", ")))
}

fn criterion_8() -> Outcome {
    let rng = RngState::new(SEED);
    let mut info = Vec::new();
    for name in ["A(5)", "A(6)", "PSL(2,7)", "A(5) x A(5)", "A(5) wr C2", "S(4) x A(5)"] {
        let g = group(name);
        let cls = classes(&g);
        let err = |e: solvrad::Error| format!("{name}: {e}");
        let nc = solvable_radical_nc(&g, &cls).map_err(err)?;
        let res = suitable_elements(&g, &cls, 7, DEFAULT_CAP, &rng).map_err(err)?;
        let suitable: Vec<usize> = res.iter().filter(|r| r.is_suitable()).map(|r| r.class_index).collect();
        ensure(res.iter().all(|r| r.verdict != SuitabilityVerdict::Unknown), || {
            format!("{name}: undecided classes")
        })?;
        ensure(suitable == nc.member_classes, || {
            format!("{name}: suitable {suitable:?} vs radical {:?}", nc.member_classes)
        })?;
        for r in &res {
            if let SuitabilityVerdict::NotSuitable { conjugators, triple } = &r.verdict {
                ensure(
                    conjugators.len() == 7 && verify_conjugate_witness(&g, &r.representative, conjugators, triple),
                    || format!("{name}: class {} witness fails", r.class_index),
                )?;
            }
        }
        let three = suitable_elements(&g, &cls, 3, DEFAULT_CAP, &rng).map_err(err)?;
        let refuted3 = three
            .iter()
            .filter(|r| matches!(r.verdict, SuitabilityVerdict::NotSuitable { .. }))
            .count();
        info.push(format!("{name}: {}/{} non-radical classes refuted with 3 conjugates", refuted3, cls.len() - suitable.len()));
    }
    println!("    informational: {}", info.join("; "));
    Ok("suitable classes = classes of R(G) on all six groups".into())
}

fn criterion_9() -> Outcome {
    let expected = [
        (RootType::B, vec![1, 2], vec![1, 1]),
        (RootType::C, vec![1, 1], vec![2, 1]),
        (RootType::G, vec![2, 1], vec![3, 2]),
    ];
    for (kind, a1, a2) in expected {
        let r = RootSystem::new(kind, 2)
            .and_then(|s| s.lemma_positive_check(CoxeterConvention::Product))
            .map_err(|e| e.to_string())?;
        ensure(r.w_alpha1 == a1 && r.w_inv_alpha2 == a2, || format!("{kind}2: {r:?}"))?;
    }
    let mut n = 0;
    for (kind, rank) in supported_types().into_iter().filter(|&(_, r)| r >= 3) {
        RootSystem::new(kind, rank)
            .and_then(|s| s.lemma_positive_check(CoxeterConvention::Product))
            .map_err(|e| e.to_string())?;
        n += 1;
    }
    Ok(format!("B2/C2/G2 identities exact; {n} types of rank 3..8 positive and non-simple"))
}

fn criterion_10() -> Outcome {
    let classical: &[(&str, &str, u32, u128)] = &[
        ("PSL(3,2)", "PSL", 3, 2),
        ("PSL(3,3)", "PSL", 3, 3),
        ("PSU(3,3)", "PSU", 3, 3),
        ("PSL(2,8)", "PSL", 2, 8),
        ("PSp(4,3)", "PSp", 4, 3),
        ("PSU(4,2)", "PSU", 4, 2),
        ("PSL(4,2)", "PSL", 4, 2),
        ("Sp(6,2)", "Sp", 6, 2),
        ("Sp(4,2)", "Sp", 4, 2),
        ("SL(2,3)", "SL", 2, 3),
        ("PSL(2,7)", "PSL", 2, 7),
    ];
    for (spec, fam, n, q) in classical {
        let g = group(spec);
        ensure(g.order_u64() as u128 == common::classical_order(fam, *n, *q), || {
            format!("{spec}: order {}", g.order())
        })?;
    }
    let corpus = [
        "PSL(3,2)", "PSL(3,3)", "PSU(3,3)", "PSL(2,8)", "PSp(4,3)", "PSU(4,2)", "PSL(4,2)", "Sp(6,2)",
        "A(5)", "A(6)", "A(7)", "A(8)", "A(9)", "S(4)", "S(5)", "S(6)", "S(7)", "S(8)", "PSL(2,7)",
        "S(4) x A(5)", "C(3) x A(5)", "A(4) wr C2", "A(5) x A(5)", "A(5) wr C2",
    ];
    let mut rng = RngState::new(SEED);
    let mut triples = 0;
    for spec in corpus {
        let g = group(spec);
        let sizes: u64 = classes(&g).iter().map(|c| c.class_size).sum();
        ensure(BigUint::from(sizes) == g.order(), || format!("{spec}: class sizes sum to {sizes}"))?;
        let cert = is_solvable(&g, &mut rng);
        ensure(cert.verify(&g), || format!("{spec}: certificate fails"))?;
        if !cert.is_solvable() {
            triples += 1;
        }
    }
    let regular = sl23_regular();
    let sizes: u64 = classes(&regular).iter().map(|c| c.class_size).sum();
    ensure(sizes == 24, || "SL(2,3) regular: class sizes".into())?;
    Ok(format!("classical orders exact; class sums exact; {triples} nonsolvable verdicts with verified Hall-Thompson triples"))
}

fn main() {
    let start = Instant::now();
    let rows = catch_unwind(table_rows).ok();
    let rows_ref = rows.as_deref();
    let missing = || Err::<String, String>("2-radical table run failed".into());
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 2-radical table reproduction", Box::new(|| rows_ref.map_or_else(missing, criterion_1))),
        ("2 no nontrivial 3-radical elements", Box::new(|| rows_ref.map_or_else(missing, criterion_2))),
        ("3 kappa(An) = 2, n = 5..9", Box::new(criterion_3)),
        ("4 kappa(S5) = 3", Box::new(criterion_4)),
        ("5 transposition triples", Box::new(criterion_5)),
        ("6 3-transposition classes", Box::new(criterion_6)),
        ("7 radical method agreement", Box::new(criterion_7)),
        ("8 suitability with 7 conjugates", Box::new(criterion_8)),
        ("9 Coxeter-element identities", Box::new(criterion_9)),
        ("10 engine soundness", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (name, f) in &criteria {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name} ({secs:.1}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name} ({secs:.1}s): {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
