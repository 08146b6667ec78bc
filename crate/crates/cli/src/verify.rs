//! Re-checks every certificate and witness embedded in a report.

use num_bigint::BigUint;
use solvrad::error::{Error, Result};
use solvrad::radical::{
    verify_commutator_witness, verify_conjugate_witness, Kappa, KRadicalVerdict, RadicalElements,
    SuitabilityVerdict, Verdict,
};
use solvrad::spec::{realize, GroupSpec};
use solvrad::structure::{conjugacy_orbit, is_solvable_group, normal_closure};
use solvrad::{PermGroup, Permutation};

use crate::commands::{self, realize_row, Settings};
use crate::report::*;

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, ok: bool) {
        self.0.push(Check {
            name: name.into(),
            ok,
        });
    }
}

fn same_group_info(g: &PermGroup, info: &GroupInfo) -> bool {
    g.degree() == info.degree && g.order().to_string() == info.order && g.generators() == info.generators
}

fn realize_report_group(report: &Report) -> Result<PermGroup> {
    let spec = report
        .spec
        .as_deref()
        .ok_or_else(|| Error::BadParameters("report has no group spec".into()))?;
    realize(&GroupSpec::parse(spec)?)
}

fn check_verdict(c: &mut Checks, g: &PermGroup, v: &KRadicalVerdict, label: &str) {
    if let Verdict::NotRadical { witness, triple } = &v.verdict {
        c.push(
            format!("{label}: k={} witness for {}", v.k, v.subject),
            witness.len() == v.k && verify_commutator_witness(g, &v.subject, witness, triple),
        );
    }
}

fn check_radical_elements(c: &mut Checks, g: &PermGroup, r: &RadicalElements, label: &str) {
    for v in &r.classes {
        c.push(
            format!("{label}: class {} representative is a member", v.class_index),
            g.is_member(&v.verdict.subject) && v.verdict.subject.order() == v.element_order,
        );
        check_verdict(c, g, &v.verdict, label);
    }
    let mut orders: Vec<u64> = r
        .classes
        .iter()
        .filter(|v| v.verdict.is_radical())
        .map(|v| v.element_order)
        .collect();
    orders.sort_unstable();
    c.push(
        format!("{label}: radical class tally"),
        orders == r.radical_orders && orders.len() == r.radical_count,
    );
}

fn check_kappa(c: &mut Checks, g: &PermGroup, subject: &Permutation, k: &Kappa, label: &str) {
    match k {
        Kappa::Degree { n, witness, triple } => c.push(
            format!("{label}: kappa {n} witness for {subject}"),
            *n >= 2 && witness.len() == *n && verify_commutator_witness(g, subject, witness, triple),
        ),
        Kappa::InRadical => c.push(
            format!("{label}: {subject} has solvable normal closure"),
            is_solvable_group(&normal_closure(g, std::slice::from_ref(subject))),
        ),
    }
}

fn check_radical_subgroup(c: &mut Checks, g: &PermGroup, m: &MethodDoc) {
    let r = normal_closure(g, &m.generators);
    c.push(
        format!("{}: generators lie in the group", m.method),
        m.generators.iter().all(|x| g.is_member(x)),
    );
    c.push(
        format!("{}: subgroup is normal of the stated order", m.method),
        r.order().to_string() == m.order
            && PermGroup::new(m.generators.clone(), g.degree()).map_or(false, |h| h.same_group(&r)),
    );
    c.push(format!("{}: subgroup is solvable", m.method), is_solvable_group(&r));
}

/// Verifies `report`, returning one entry per check.
pub fn verify(report: &Report, settings: &Settings) -> Result<VerifyDoc> {
    let mut c = Checks(Vec::new());
    c.push("tool name", report.tool == TOOL);
    let group = match (&report.spec, &report.group) {
        (Some(_), Some(info)) => {
            let g = realize_report_group(report)?;
            c.push("group matches spec", same_group_info(&g, info));
            Some(g)
        }
        _ => None,
    };
    let need = || group.as_ref().ok_or_else(|| Error::BadParameters("report lacks its group".into()));
    match &report.payload {
        Payload::Group => {
            need()?;
        }
        Payload::Classes(doc) => {
            let g = need()?;
            c.push(
                "class sizes sum to the group order",
                BigUint::from(doc.classes.iter().map(|x| x.class_size).sum::<u64>()) == g.order()
                    && doc.total_size.to_string() == g.order().to_string()
                    && doc.count == doc.classes.len(),
            );
            for (i, cl) in doc.classes.iter().enumerate() {
                let size = conjugacy_orbit(g, &cl.representative, settings.cap).map(|o| o.len() as u64);
                c.push(
                    format!("class {i}: size and order"),
                    size == Ok(cl.class_size)
                        && cl.representative.order() == cl.element_order
                        && BigUint::from(cl.class_size * cl.centralizer_order) == g.order(),
                );
            }
        }
        Payload::Solvable(doc) => {
            let g = need()?;
            let series: Vec<BigUint> = doc.series.iter().filter_map(|s| s.parse().ok()).collect();
            let chain_ok = series.len() == doc.series.len()
                && series.first() == Some(&g.order())
                && series.windows(2).all(|w| w[1] < w[0] && (&w[0] % &w[1]) == BigUint::from(0u32));
            c.push("derived series is a strictly decreasing divisor chain", chain_ok);
            c.push("solvability verdict", doc.solvable == is_solvable_group(g));
            if let Some(t) = &doc.triple {
                c.push(
                    "Hall-Thompson triple",
                    t.verify() && g.is_member(&t.a) && g.is_member(&t.b) && g.is_member(&t.c),
                );
            } else {
                c.push("nonsolvable verdict carries a triple", doc.solvable);
            }
        }
        Payload::Radical(doc) => {
            let g = need()?;
            for m in &doc.methods {
                check_radical_subgroup(&mut c, g, m);
            }
            let agree = doc.methods.windows(2).all(|w| w[0].member_classes == w[1].member_classes);
            c.push("method agreement flag", agree == doc.methods_agree);
            let mut kappa: Option<usize> = None;
            for cl in &doc.classes {
                check_kappa(&mut c, g, &cl.representative, &cl.kappa, &format!("class {}", cl.class_index));
                if let Some(n) = cl.kappa.degree() {
                    kappa = kappa.max(Some(n));
                }
                for v in &cl.k_verdicts {
                    check_verdict(&mut c, g, v, &format!("class {}", cl.class_index));
                }
            }
            c.push("kappa is the maximum over classes", kappa == doc.kappa);
        }
        Payload::Kradical(r) => {
            let g = need()?;
            check_radical_elements(&mut c, g, r, "kradical");
        }
        Payload::Kappa(k) => {
            let g = need()?;
            let mut max: Option<usize> = None;
            for cl in &k.classes {
                check_kappa(&mut c, g, &cl.representative, &cl.kappa, &format!("class {}", cl.class_index));
                if let Some(n) = cl.kappa.degree() {
                    max = max.max(Some(n));
                }
            }
            c.push("kappa is the maximum over classes", max == k.kappa);
        }
        Payload::Suitable(doc) => {
            let g = need()?;
            for v in &doc.classes {
                if let SuitabilityVerdict::NotSuitable { conjugators, triple } = &v.verdict {
                    c.push(
                        format!("class {}: conjugate witness", v.class_index),
                        conjugators.len() == doc.k
                            && verify_conjugate_witness(g, &v.representative, conjugators, triple),
                    );
                }
            }
            c.push(
                "suitable classes match the radical classes",
                doc.matches_radical == (doc.suitable_classes == doc.radical_classes),
            );
        }
        Payload::Table1(doc) => {
            let golden = commands::golden();
            for row in &doc.rows {
                let label = row.golden.label.clone();
                c.push(
                    format!("{label}: golden entry is the shipped one"),
                    golden.rows.iter().any(|r| *r == row.golden),
                );
                let (Some(info), Some(verdicts), Some(observed)) = (&row.group, &row.verdicts, &row.observed)
                else {
                    continue;
                };
                let Some(g) = realize_row(&row.golden)? else {
                    c.push(format!("{label}: realizable"), false);
                    continue;
                };
                c.push(format!("{label}: group matches"), same_group_info(&g, info));
                check_radical_elements(&mut c, &g, verdicts, &label);
                c.push(
                    format!("{label}: observed entry"),
                    observed.count == verdicts.radical_count && observed.orders == verdicts.radical_orders,
                );
                c.push(
                    format!("{label}: status"),
                    (row.status == RowStatus::Match) == (*observed == row.golden.expected),
                );
                for v in &row.three_verdicts {
                    check_verdict(&mut c, &g, v, &label);
                }
            }
        }
        Payload::Sharpness(doc) => {
            let (p, _) = commands::sharpness(doc.n, settings)?;
            let Payload::Sharpness(fresh) = p else { unreachable!() };
            c.push("transposition triple scan reproduces", fresh.scan == doc.scan);
        }
        Payload::Rootcheck(doc) => {
            for row in &doc.rows {
                let fresh = commands::root_row(row.kind, row.rank, doc.convention)?;
                c.push(format!("{}{} reproduces", row.kind, row.rank), fresh == *row);
            }
        }
        Payload::Verify(doc) => {
            c.push("nested verification", doc.all_ok && doc.checks.iter().all(|x| x.ok));
        }
    }
    let all_ok = c.0.iter().all(|x| x.ok);
    Ok(VerifyDoc {
        source_command: report.command.clone(),
        checks: c.0,
        all_ok,
    })
}
