//! One function per subcommand; each returns the payload and its pass flag.

use solvrad::error::{Error, Result};
use solvrad::radical::{
    is_k_radical, kappa_group, quotient_by_normal, radical_commutators, radical_elements,
    solvable_radical_2gen, solvable_radical_nc, suitable_elements, transposition_triples_solvable,
    KRadicalVerdict, RadicalSubgroup, SearchMode, SuitabilityVerdict, KAPPA_CAP,
};
use solvrad::rootsys::{supported_types, CoxeterConvention, RootSystem, RootType};
use solvrad::spec::{realize, GroupSpec};
use solvrad::structure::{
    conjugacy_classes, derived_subgroup, is_solvable_with_budget, SolvabilityCertificate,
    HALL_THOMPSON_BUDGET,
};
use solvrad::{PermGroup, RngState};

use crate::report::*;

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub seed: u64,
    pub cap: u64,
}

impl Settings {
    pub fn rng(&self) -> RngState {
        RngState::new(self.seed)
    }
}

pub fn classes(g: &PermGroup, s: &Settings) -> Result<(Payload, bool)> {
    let classes = conjugacy_classes(g, s.cap)?;
    let total_size = classes.iter().map(|c| c.class_size).sum();
    Ok((
        Payload::Classes(ClassesDoc {
            count: classes.len(),
            total_size,
            classes,
        }),
        true,
    ))
}

pub fn solvable(g: &PermGroup, s: &Settings) -> Result<(Payload, bool)> {
    let cert = is_solvable_with_budget(g, &mut s.rng(), HALL_THOMPSON_BUDGET, s.cap);
    let doc = SolvableDoc {
        solvable: cert.is_solvable(),
        series: cert.series().iter().map(|o| o.to_string()).collect(),
        triple: match &cert {
            SolvabilityCertificate::Nonsolvable { triple, .. } => triple.clone(),
            SolvabilityCertificate::Solvable { .. } => None,
        },
    };
    let ok = doc.solvable || doc.triple.is_some();
    Ok((Payload::Solvable(doc), ok))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    NormalClosure,
    TwoGeneration,
    Commutator,
}

impl Method {
    pub fn parse_list(s: &str) -> Result<Vec<Method>> {
        s.split(',')
            .map(|m| match m.trim() {
                "nc" => Ok(Method::NormalClosure),
                "2gen" => Ok(Method::TwoGeneration),
                "comm" => Ok(Method::Commutator),
                other => Err(Error::BadParameters(format!("unknown radical method `{other}`"))),
            })
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::NormalClosure => "nc",
            Method::TwoGeneration => "2gen",
            Method::Commutator => "comm",
        }
    }
}

fn method_doc(method: Method, r: &RadicalSubgroup) -> MethodDoc {
    MethodDoc {
        method: method.name().into(),
        order: r.order().to_string(),
        generators: r.group.generators().to_vec(),
        member_classes: r.member_classes.clone(),
    }
}

pub fn radical(
    g: &PermGroup,
    methods: &[Method],
    n_max: usize,
    ks: &[usize],
    s: &Settings,
) -> Result<(Payload, bool)> {
    if n_max < 3 {
        return Err(Error::BadParameters("--nmax must be at least 3".into()));
    }
    let rng = s.rng();
    let classes = conjugacy_classes(g, s.cap)?;
    let nc = solvable_radical_nc(g, &classes)?;
    let mut results: Vec<(Method, RadicalSubgroup)> = Vec::new();
    let mut commutator_degrees = vec![None; classes.len()];
    for &m in methods {
        let r = match m {
            Method::NormalClosure => nc.clone(),
            Method::TwoGeneration => solvable_radical_2gen(g, &classes, s.cap, &rng)?,
            Method::Commutator => {
                let c = radical_commutators(g, &classes, n_max, s.cap, &rng)?;
                commutator_degrees = c.degrees;
                c.radical
            }
        };
        results.push((m, r));
    }
    let methods_agree = results
        .windows(2)
        .all(|w| w[0].1.member_classes == w[1].1.member_classes && w[0].1.group.same_group(&w[1].1.group));
    let kappa = kappa_group(g, &classes, KAPPA_CAP.max(n_max), s.cap, &rng)?;
    let mut classes_doc = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        let k_verdicts = ks
            .iter()
            .map(|&k| {
                let mut r = rng.split(i as u64);
                is_k_radical(g, &c.representative, k, SearchMode::Exhaustive, s.cap, &mut r)
            })
            .collect::<Result<Vec<KRadicalVerdict>>>()?;
        classes_doc.push(RadicalClassDoc {
            class_index: i,
            representative: c.representative.clone(),
            element_order: c.element_order,
            class_size: c.class_size,
            in_radical: results.iter().map(|(_, r)| r.member_classes.contains(&i)).collect(),
            commutator_degree: commutator_degrees[i],
            kappa: kappa.classes[i].kappa.clone(),
            k_verdicts,
        });
    }
    let quotient_radical_order = if nc.group.is_trivial() {
        Some("1".to_string())
    } else {
        match quotient_by_normal(g, &nc.group, s.cap) {
            Ok(q) => {
                let qc = conjugacy_classes(&q, s.cap)?;
                Some(solvable_radical_nc(&q, &qc)?.order().to_string())
            }
            Err(Error::DegreeTooLarge(_)) => None,
            Err(e) => return Err(e),
        }
    };
    let ok = methods_agree && quotient_radical_order.as_deref().map_or(true, |o| o == "1");
    Ok((
        Payload::Radical(RadicalDoc {
            n_max,
            methods: results.iter().map(|(m, r)| method_doc(*m, r)).collect(),
            methods_agree,
            classes: classes_doc,
            kappa: kappa.kappa,
            kappa_class: kappa.witnessing_class,
            quotient_radical_order,
        }),
        ok,
    ))
}

pub fn kradical(g: &PermGroup, k: usize, exhaustive: bool, s: &Settings) -> Result<(Payload, bool)> {
    let classes = conjugacy_classes(g, s.cap)?;
    let mode = if exhaustive {
        SearchMode::Exhaustive
    } else {
        SearchMode::RefuteOnly
    };
    let r = radical_elements(g, &classes, k, mode, s.cap, &s.rng())?;
    Ok((Payload::Kradical(r), true))
}

pub fn kappa(g: &PermGroup, s: &Settings) -> Result<(Payload, bool)> {
    let classes = conjugacy_classes(g, s.cap)?;
    let k = kappa_group(g, &classes, KAPPA_CAP, s.cap, &s.rng())?;
    Ok((Payload::Kappa(k), true))
}

pub fn suitable(g: &PermGroup, k: usize, s: &Settings) -> Result<(Payload, bool)> {
    let classes = conjugacy_classes(g, s.cap)?;
    let rng = s.rng();
    let verdicts = suitable_elements(g, &classes, k, s.cap, &rng)?;
    let radical = solvable_radical_nc(g, &classes)?;
    let suitable_classes: Vec<usize> = verdicts
        .iter()
        .filter(|v| v.is_suitable())
        .map(|v| v.class_index)
        .collect();
    let unknown_classes: Vec<usize> = verdicts
        .iter()
        .filter(|v| v.verdict == SuitabilityVerdict::Unknown)
        .map(|v| v.class_index)
        .collect();
    let refuted_with_three = if k > 3 {
        let three = suitable_elements(g, &classes, 3, s.cap, &rng)?;
        Some(
            three
                .iter()
                .map(|v| match v.verdict {
                    SuitabilityVerdict::NotSuitable { .. } => Some(true),
                    SuitabilityVerdict::Suitable { .. } => Some(false),
                    SuitabilityVerdict::Unknown => None,
                })
                .collect(),
        )
    } else {
        None
    };
    let matches_radical = suitable_classes == radical.member_classes;
    Ok((
        Payload::Suitable(SuitableDoc {
            k,
            classes: verdicts,
            radical_classes: radical.member_classes,
            suitable_classes,
            unknown_classes,
            matches_radical,
            refuted_with_three,
        }),
        matches_radical,
    ))
}

pub fn golden() -> Golden {
    serde_json::from_str(include_str!("../data/table1.json")).expect("shipped golden data parses")
}

/// Realizes a table row, taking the derived subgroup when the row asks for it.
pub fn realize_row(row: &GoldenRow) -> Result<Option<PermGroup>> {
    let Some(spec) = &row.realization else {
        return Ok(None);
    };
    let g = realize(&GroupSpec::parse(spec)?)?;
    Ok(Some(if row.derived { derived_subgroup(&g) } else { g }))
}

pub fn table1_row(row: &GoldenRow, index: usize, max_order: u64, s: &Settings) -> Result<Table1Row> {
    let mut out = Table1Row {
        golden: row.clone(),
        status: RowStatus::SkippedOrder,
        observed: None,
        group: None,
        verdicts: None,
        three_verdicts: Vec::new(),
    };
    if row.realization.is_none() {
        out.status = RowStatus::Unrealizable;
        return Ok(out);
    }
    if row.order > max_order {
        return Ok(out);
    }
    let g = realize_row(row)?.expect("realization present");
    let rng = s.rng().split(1_000_000 + index as u64);
    let classes = conjugacy_classes(&g, s.cap)?;
    let verdicts = radical_elements(&g, &classes, 2, SearchMode::Exhaustive, s.cap, &rng)?;
    for v in verdicts.classes.iter().filter(|v| v.verdict.is_radical()) {
        let mut r = rng.split(10_000 + v.class_index as u64);
        out.three_verdicts.push(is_k_radical(
            &g,
            &v.verdict.subject,
            3,
            SearchMode::RefuteOnly,
            s.cap,
            &mut r,
        )?);
    }
    let observed = Entry {
        count: verdicts.radical_count,
        orders: verdicts.radical_orders.clone(),
    };
    let order_ok = g.order_u64() == row.order;
    out.status = if observed == row.expected && order_ok && verdicts.unknown_count == 0 {
        RowStatus::Match
    } else {
        RowStatus::Mismatch
    };
    out.observed = Some(observed);
    out.group = Some(GroupInfo::of(&g));
    out.verdicts = Some(verdicts);
    Ok(out)
}

pub fn table1(max_order: u64, s: &Settings) -> Result<(Payload, bool)> {
    let golden = golden();
    let rows = golden
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| table1_row(row, i, max_order, s))
        .collect::<Result<Vec<_>>>()?;
    let ok = rows.iter().all(|r| r.status != RowStatus::Mismatch);
    Ok((
        Payload::Table1(Table1Doc {
            golden_version: golden.version,
            max_order,
            diff: if ok { "match".into() } else { "mismatch".into() },
            rows,
        }),
        ok,
    ))
}

pub fn sharpness(n: usize, s: &Settings) -> Result<(Payload, bool)> {
    if !(5..=10).contains(&n) {
        return Err(Error::BadParameters(format!("--n must lie in 5..=10, got {n}")));
    }
    let scan = transposition_triples_solvable(n, &mut s.rng())?;
    let ok = scan.all_solvable;
    Ok((Payload::Sharpness(SharpnessDoc { n, scan }), ok))
}

pub fn root_row(kind: RootType, rank: usize, convention: CoxeterConvention) -> Result<RootRow> {
    let sys = RootSystem::new(kind, rank)?;
    let word = sys.coxeter_word(convention)?.0;
    Ok(match sys.lemma_positive_check(convention) {
        Ok(r) => RootRow {
            kind,
            rank,
            word,
            pass: true,
            w_alpha1: Some(r.w_alpha1),
            w_inv_alpha2: Some(r.w_inv_alpha2),
            failure: None,
        },
        Err(Error::CheckFailed(msg)) => RootRow {
            kind,
            rank,
            word,
            pass: false,
            w_alpha1: None,
            w_inv_alpha2: None,
            failure: Some(msg),
        },
        Err(e) => return Err(e),
    })
}

pub fn rootcheck(
    only: Option<(RootType, usize)>,
    convention: CoxeterConvention,
) -> Result<(Payload, bool)> {
    let types = match only {
        Some(t) => vec![t],
        None => supported_types(),
    };
    let rows = types
        .into_iter()
        .map(|(k, r)| root_row(k, r, convention))
        .collect::<Result<Vec<_>>>()?;
    let all_pass = rows.iter().all(|r| r.pass);
    Ok((
        Payload::Rootcheck(RootCheckDoc {
            convention,
            rows,
            all_pass,
        }),
        all_pass,
    ))
}
