//! k-radical elements, radical degree, the solvable radical by three
//! independent routes, suitability under conjugate generation, and the
//! transposition-type checks.
//!
//! Commutators are `[a, g] = a g a⁻¹ g⁻¹`. Since `[a, g]` only depends on the
//! coset `a·C_G(g)`, a tuple slot ranges over the class-size-many values
//! `h g⁻¹` with `h` in the class of `g`. Tuples are further reduced by
//! simultaneous `C_G(g)`-conjugation (the first slot runs over orbit
//! representatives) and by symmetry in the remaining slots.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::rng::RngState;
use crate::structure::{
    centralizer_from_orbit, conjugacy_orbit, generated_is_solvable, is_solvable, is_solvable_group,
    normal_closure, ConjugacyClass, ConjugacyOrbit, HallThompsonTriple, SolvabilityCertificate,
};

/// Random tuples tried before the deterministic sweep.
pub const RANDOM_TUPLES: u64 = 10_000;
/// Sweep bound in refute-only mode.
pub const SWEEP_BUDGET: u64 = 5_000_000;
/// Default cap for the radical-degree search.
pub const KAPPA_CAP: usize = 4;
const MEMO_LIMIT: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    RefuteOnly,
    Exhaustive,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub random_tuples: u64,
    pub swept_tuples: u64,
    pub solvability_checks: u64,
    pub memo_hits: u64,
    /// Number of distinct slot values (the class size of the subject).
    pub slot_values: u64,
    /// `C_G(g)`-orbits on slot values; the first slot only visits one per orbit.
    pub first_slot_orbits: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.random_tuples += other.random_tuples;
        self.swept_tuples += other.swept_tuples;
        self.solvability_checks += other.solvability_checks;
        self.memo_hits += other.memo_hits;
        self.slot_values = self.slot_values.max(other.slot_values);
        self.first_slot_orbits = self.first_slot_orbits.max(other.first_slot_orbits);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// The whole reduced tuple space was covered.
    Radical,
    /// `⟨[x₁,g],…,[x_k,g]⟩` is nonsolvable; the triple lies in that subgroup.
    NotRadical {
        witness: Vec<Permutation>,
        triple: HallThompsonTriple,
    },
    /// Refute-only budget ran out.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KRadicalVerdict {
    pub subject: Permutation,
    pub k: usize,
    pub verdict: Verdict,
    pub stats: SearchStats,
}

impl KRadicalVerdict {
    pub fn is_radical(&self) -> bool {
        matches!(self.verdict, Verdict::Radical)
    }
}

/// `[x, g]` for each `x`.
pub fn commutators_with(g: &Permutation, xs: &[Permutation]) -> Vec<Permutation> {
    xs.iter().map(|x| Permutation::commutator(x, g)).collect()
}

/// `g` together with `a g a⁻¹` for each `a`.
pub fn with_conjugates(g: &Permutation, conjugators: &[Permutation]) -> Vec<Permutation> {
    std::iter::once(g.clone())
        .chain(conjugators.iter().map(|a| g.conjugate_by(a)))
        .collect()
}

/// A verified Hall–Thompson triple inside `⟨gens⟩`, which must be nonsolvable.
pub fn nonsolvability_triple(
    gens: &[Permutation],
    degree: usize,
    rng: &mut RngState,
) -> Result<HallThompsonTriple> {
    let h = PermGroup::new(gens.to_vec(), degree)?;
    match is_solvable(&h, rng) {
        SolvabilityCertificate::Nonsolvable {
            triple: Some(t), ..
        } => Ok(t),
        SolvabilityCertificate::Nonsolvable { triple: None, .. } => {
            Err(Error::WitnessSearchExhausted(crate::structure::HALL_THOMPSON_BUDGET))
        }
        SolvabilityCertificate::Solvable { .. } => Err(Error::Inconsistent(
            "witness subgroup turned out solvable".into(),
        )),
    }
}

/// True when `triple` is a valid Hall–Thompson triple inside `⟨gens⟩`.
pub fn triple_certifies(gens: &[Permutation], degree: usize, triple: &HallThompsonTriple) -> bool {
    let Ok(h) = PermGroup::new(gens.to_vec(), degree) else {
        return false;
    };
    triple.verify() && h.is_member(&triple.a) && h.is_member(&triple.b) && h.is_member(&triple.c)
}

/// Re-checks a commutator witness from scratch.
pub fn verify_commutator_witness(
    g: &PermGroup,
    subject: &Permutation,
    witness: &[Permutation],
    triple: &HallThompsonTriple,
) -> bool {
    g.is_member(subject)
        && witness.iter().all(|x| g.is_member(x))
        && triple_certifies(&commutators_with(subject, witness), g.degree(), triple)
}

/// Re-checks a conjugate-generation witness from scratch.
pub fn verify_conjugate_witness(
    g: &PermGroup,
    subject: &Permutation,
    conjugators: &[Permutation],
    triple: &HallThompsonTriple,
) -> bool {
    g.is_member(subject)
        && conjugators.iter().all(|x| g.is_member(x))
        && triple_certifies(&with_conjugates(subject, conjugators), g.degree(), triple)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SlotKind {
    /// Slot `j` contributes `h_j g⁻¹`.
    Commutator,
    /// Slot `j` contributes `h_j`, and `g` itself is always present.
    Conjugate,
}

/// Class of the subject with its slot values and first-slot reduction.
struct TupleSpace<'a> {
    group: &'a PermGroup,
    subject: Permutation,
    kind: SlotKind,
    orbit: ConjugacyOrbit,
    values: Vec<Permutation>,
    first_slot: Vec<u32>,
    memo: HashMap<Vec<u32>, bool>,
    stats: SearchStats,
}

enum Outcome {
    Witness(Vec<Permutation>),
    Covered,
    OutOfBudget,
}

impl<'a> TupleSpace<'a> {
    fn new(group: &'a PermGroup, subject: &Permutation, kind: SlotKind, cap: u64) -> Result<Self> {
        let orbit = conjugacy_orbit(group, subject, cap)?;
        let values = match kind {
            SlotKind::Commutator => {
                let inv = subject.inverse();
                orbit.elements.iter().map(|h| h.mul(&inv)).collect()
            }
            SlotKind::Conjugate => orbit.elements.clone(),
        };
        let cent = centralizer_from_orbit(group, &orbit);
        let s = orbit.len();
        let actions: Vec<Vec<u32>> = cent
            .generators()
            .iter()
            .map(|c| {
                orbit
                    .elements
                    .iter()
                    .map(|h| orbit.position(group, &h.conjugate_by(c)).expect("closed") as u32)
                    .collect()
            })
            .collect();
        let mut seen = vec![false; s];
        let mut first_slot = Vec::new();
        let mut stack = Vec::new();
        for start in 0..s {
            if seen[start] {
                continue;
            }
            first_slot.push(start as u32);
            seen[start] = true;
            stack.push(start as u32);
            while let Some(i) = stack.pop() {
                for act in &actions {
                    let j = act[i as usize];
                    if !seen[j as usize] {
                        seen[j as usize] = true;
                        stack.push(j);
                    }
                }
            }
        }
        let stats = SearchStats {
            slot_values: s as u64,
            first_slot_orbits: first_slot.len() as u64,
            ..SearchStats::default()
        };
        Ok(TupleSpace {
            group,
            subject: subject.clone(),
            kind,
            orbit,
            values,
            first_slot,
            memo: HashMap::new(),
            stats,
        })
    }

    fn size(&self) -> usize {
        self.values.len()
    }

    /// Index 0 holds `g` itself: a trivial commutator, or a repeat of `g`.
    fn key(idx: &[u32]) -> Vec<u32> {
        let set: BTreeSet<u32> = idx.iter().copied().filter(|&j| j != 0).collect();
        set.into_iter().collect()
    }

    fn generators(&self, key: &[u32]) -> Vec<Permutation> {
        let mut gens: Vec<Permutation> = key.iter().map(|&j| self.values[j as usize].clone()).collect();
        if self.kind == SlotKind::Conjugate {
            gens.push(self.subject.clone());
        }
        gens
    }

    fn solvable(&mut self, idx: &[u32], rng: &mut RngState) -> bool {
        let key = Self::key(idx);
        let extra = usize::from(self.kind == SlotKind::Conjugate);
        if key.len() + extra <= 1 {
            return true;
        }
        if let Some(&v) = self.memo.get(&key) {
            self.stats.memo_hits += 1;
            return v;
        }
        self.stats.solvability_checks += 1;
        let v = generated_is_solvable(&self.generators(&key), self.group.degree(), rng);
        if self.memo.len() >= MEMO_LIMIT {
            self.memo.clear();
        }
        self.memo.insert(key, v);
        v
    }

    /// Random conjugators; returns the conjugators themselves as a witness.
    fn random_phase(&mut self, k: usize, samples: u64, rng: &mut RngState) -> Option<Vec<Permutation>> {
        let mut idx = vec![0u32; k];
        for _ in 0..samples {
            self.stats.random_tuples += 1;
            let xs: Vec<Permutation> = (0..k).map(|_| self.group.random_uniform(rng)).collect();
            for (slot, x) in idx.iter_mut().zip(&xs) {
                let h = self.subject.conjugate_by(x);
                *slot = self.orbit.position(self.group, &h).expect("member") as u32;
            }
            if !self.solvable(&idx, rng) {
                return Some(xs);
            }
        }
        None
    }

    /// First slot over orbit representatives, remaining slots nondecreasing,
    /// in lexicographic order.
    fn sweep(&mut self, k: usize, budget: Option<u64>, rng: &mut RngState) -> Outcome {
        let s = self.size() as u32;
        let reps = self.first_slot.clone();
        let mut tested = 0u64;
        for &r in &reps {
            let mut rest = vec![0u32; k.saturating_sub(1)];
            loop {
                if budget.is_some_and(|b| tested >= b) {
                    return Outcome::OutOfBudget;
                }
                tested += 1;
                self.stats.swept_tuples += 1;
                let mut idx = Vec::with_capacity(k);
                idx.push(r);
                idx.extend_from_slice(&rest);
                if !self.solvable(&idx, rng) {
                    let xs = idx
                        .iter()
                        .map(|&j| self.orbit.conjugators[j as usize].clone())
                        .collect();
                    return Outcome::Witness(xs);
                }
                if !advance_multiset(&mut rest, s) {
                    break;
                }
            }
        }
        Outcome::Covered
    }

    /// Random phase, then the sweep; `budget` bounds the sweep.
    fn search(
        &mut self,
        k: usize,
        random: u64,
        budget: Option<u64>,
        rng: &mut RngState,
    ) -> Outcome {
        if let Some(xs) = self.random_phase(k, random, rng) {
            return Outcome::Witness(xs);
        }
        self.sweep(k, budget, rng)
    }

    fn witness_gens(&self, xs: &[Permutation]) -> Vec<Permutation> {
        match self.kind {
            SlotKind::Commutator => commutators_with(&self.subject, xs),
            SlotKind::Conjugate => with_conjugates(&self.subject, xs),
        }
    }
}

/// Next nondecreasing tuple over `0..s`; false after the last one.
fn advance_multiset(t: &mut [u32], s: u32) -> bool {
    let n = t.len();
    for i in (0..n).rev() {
        if t[i] + 1 < s {
            let v = t[i] + 1;
            for x in &mut t[i..] {
                *x = v;
            }
            return true;
        }
    }
    false
}

fn k_radical_in_space(
    space: &mut TupleSpace<'_>,
    k: usize,
    mode: SearchMode,
    rng: &mut RngState,
) -> Result<KRadicalVerdict> {
    let before = space.stats.clone();
    let budget = match mode {
        SearchMode::RefuteOnly => Some(SWEEP_BUDGET),
        SearchMode::Exhaustive => None,
    };
    let verdict = match space.search(k, RANDOM_TUPLES, budget, rng) {
        Outcome::Witness(xs) => {
            let triple = nonsolvability_triple(&space.witness_gens(&xs), space.group.degree(), rng)?;
            Verdict::NotRadical { witness: xs, triple }
        }
        Outcome::Covered => Verdict::Radical,
        Outcome::OutOfBudget => Verdict::Unknown,
    };
    let mut stats = space.stats.clone();
    stats.random_tuples -= before.random_tuples;
    stats.swept_tuples -= before.swept_tuples;
    stats.solvability_checks -= before.solvability_checks;
    stats.memo_hits -= before.memo_hits;
    Ok(KRadicalVerdict {
        subject: space.subject.clone(),
        k,
        verdict,
        stats,
    })
}

/// Decides whether every `⟨[a₁,g],…,[a_k,g]⟩` is solvable.
pub fn is_k_radical(
    group: &PermGroup,
    g: &Permutation,
    k: usize,
    mode: SearchMode,
    cap: u64,
    rng: &mut RngState,
) -> Result<KRadicalVerdict> {
    if !group.contains(g)? {
        return Err(Error::NotMember);
    }
    if g.is_identity() || k <= 1 {
        return Ok(KRadicalVerdict {
            subject: g.clone(),
            k,
            verdict: Verdict::Radical,
            stats: SearchStats::default(),
        });
    }
    let mut space = TupleSpace::new(group, g, SlotKind::Commutator, cap)?;
    k_radical_in_space(&mut space, k, mode, rng)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassVerdict {
    pub class_index: usize,
    pub element_order: u64,
    pub class_size: u64,
    pub verdict: KRadicalVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalElements {
    pub k: usize,
    pub classes: Vec<ClassVerdict>,
    /// Nontrivial classes certified k-radical.
    pub radical_count: usize,
    /// Element orders of those classes, sorted.
    pub radical_orders: Vec<u64>,
    pub unknown_count: usize,
}

/// k-radical verdicts for every nontrivial class. In exhaustive mode each is
/// certified by a witness or by full coverage. Class `i` uses the random
/// stream `rng.split(i)`.
pub fn radical_elements(
    group: &PermGroup,
    classes: &[ConjugacyClass],
    k: usize,
    mode: SearchMode,
    cap: u64,
    rng: &RngState,
) -> Result<RadicalElements> {
    let verdicts: Vec<ClassVerdict> = classes
        .par_iter()
        .enumerate()
        .filter(|(_, c)| !c.representative.is_identity())
        .map(|(i, c)| {
            let mut r = rng.split(i as u64);
            let verdict = is_k_radical(group, &c.representative, k, mode, cap, &mut r)?;
            Ok(ClassVerdict {
                class_index: i,
                element_order: c.element_order,
                class_size: c.class_size,
                verdict,
            })
        })
        .collect::<Result<_>>()?;
    let mut radical_orders: Vec<u64> = verdicts
        .iter()
        .filter(|v| v.verdict.is_radical())
        .map(|v| v.element_order)
        .collect();
    radical_orders.sort_unstable();
    let unknown_count = verdicts
        .iter()
        .filter(|v| v.verdict.verdict == Verdict::Unknown)
        .count();
    Ok(RadicalElements {
        k,
        radical_count: radical_orders.len(),
        radical_orders,
        unknown_count,
        classes: verdicts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Kappa {
    /// The normal closure of the element is solvable.
    InRadical,
    /// Least `n` with a nonsolvable `⟨[g,x₁],…,[g,xₙ]⟩`; smaller `n` were
    /// covered exhaustively.
    Degree {
        n: usize,
        witness: Vec<Permutation>,
        triple: HallThompsonTriple,
    },
}

impl Kappa {
    pub fn degree(&self) -> Option<usize> {
        match self {
            Kappa::InRadical => None,
            Kappa::Degree { n, .. } => Some(*n),
        }
    }
}

/// Least `n ≤ n_max` admitting a witness, or `None` once `n_max` is
/// exhaustively covered.
fn least_witness(
    space: &mut TupleSpace<'_>,
    n_max: usize,
    rng: &mut RngState,
) -> Result<Option<(usize, Vec<Permutation>, HallThompsonTriple)>> {
    for n in 2..=n_max {
        let v = k_radical_in_space(space, n, SearchMode::Exhaustive, rng)?;
        if let Verdict::NotRadical { witness, triple } = v.verdict {
            return Ok(Some((n, witness, triple)));
        }
    }
    Ok(None)
}

/// Radical degree of a single element.
pub fn kappa_element(
    group: &PermGroup,
    g: &Permutation,
    n_max: usize,
    cap: u64,
    rng: &mut RngState,
) -> Result<Kappa> {
    if !group.contains(g)? {
        return Err(Error::NotMember);
    }
    if is_solvable_group(&normal_closure(group, std::slice::from_ref(g))) {
        return Ok(Kappa::InRadical);
    }
    let mut space = TupleSpace::new(group, g, SlotKind::Commutator, cap)?;
    match least_witness(&mut space, n_max, rng)? {
        Some((n, witness, triple)) => Ok(Kappa::Degree { n, witness, triple }),
        None => Err(Error::InconclusiveAtCap {
            n_max,
            order: g.order(),
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassKappa {
    pub class_index: usize,
    pub representative: Permutation,
    pub element_order: u64,
    pub class_size: u64,
    pub kappa: Kappa,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupKappa {
    pub classes: Vec<ClassKappa>,
    /// `None` for solvable groups (no class outside the radical).
    pub kappa: Option<usize>,
    /// First class attaining the maximum.
    pub witnessing_class: Option<usize>,
}

/// Radical degree of the group: maximum over the classes outside the radical.
pub fn kappa_group(
    group: &PermGroup,
    classes: &[ConjugacyClass],
    n_max: usize,
    cap: u64,
    rng: &RngState,
) -> Result<GroupKappa> {
    let per: Vec<ClassKappa> = classes
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let mut r = rng.split(i as u64);
            Ok(ClassKappa {
                class_index: i,
                representative: c.representative.clone(),
                element_order: c.element_order,
                class_size: c.class_size,
                kappa: kappa_element(group, &c.representative, n_max, cap, &mut r)?,
            })
        })
        .collect::<Result<_>>()?;
    let mut kappa = None;
    let mut witnessing_class = None;
    for c in &per {
        if let Some(n) = c.kappa.degree() {
            if kappa.map_or(true, |m| n > m) {
                kappa = Some(n);
                witnessing_class = Some(c.class_index);
            }
        }
    }
    Ok(GroupKappa {
        classes: per,
        kappa,
        witnessing_class,
    })
}

/// A normal subgroup given as a union of conjugacy classes.
#[derive(Clone, Debug)]
pub struct RadicalSubgroup {
    pub group: PermGroup,
    /// Indices of the classes contained in the subgroup.
    pub member_classes: Vec<usize>,
}

impl RadicalSubgroup {
    pub fn order(&self) -> BigUint {
        self.group.order()
    }
}

/// Normal closure of the member representatives, checked to be solvable and
/// to consist of exactly the member classes.
fn assemble(
    group: &PermGroup,
    classes: &[ConjugacyClass],
    members: Vec<usize>,
    route: &str,
) -> Result<RadicalSubgroup> {
    let reps: Vec<Permutation> = members
        .iter()
        .map(|&i| classes[i].representative.clone())
        .filter(|x| !x.is_identity())
        .collect();
    let r = normal_closure(group, &reps);
    if !is_solvable_group(&r) {
        return Err(Error::Inconsistent(format!("{route}: radical candidate is not solvable")));
    }
    let total: u64 = members.iter().map(|&i| classes[i].class_size).sum();
    if BigUint::from(total) != r.order() {
        return Err(Error::Inconsistent(format!(
            "{route}: member classes cover {total} elements, subgroup has {}",
            r.order()
        )));
    }
    Ok(RadicalSubgroup {
        group: r,
        member_classes: members,
    })
}

/// `g ∈ R(G)` iff the normal closure of `g` is solvable.
pub fn solvable_radical_nc(group: &PermGroup, classes: &[ConjugacyClass]) -> Result<RadicalSubgroup> {
    let members: Vec<usize> = classes
        .par_iter()
        .enumerate()
        .filter(|(_, c)| {
            c.representative.is_identity()
                || is_solvable_group(&normal_closure(group, std::slice::from_ref(&c.representative)))
        })
        .map(|(i, _)| i)
        .collect();
    assemble(group, classes, members, "normal closure")
}

/// Random partners tried before the exhaustive partner sweep.
const TWO_GEN_RANDOM: u64 = 64;

/// Whether `⟨g, a⟩` is solvable for every `a`, with `a` reduced to
/// `C_G(g)`-conjugacy representatives. Returns a nonsolvable partner if any.
fn two_generation_partner(
    group: &PermGroup,
    g: &Permutation,
    cap: u64,
    rng: &mut RngState,
) -> Result<Option<Permutation>> {
    let deg = group.degree();
    for _ in 0..TWO_GEN_RANDOM {
        let a = group.random_uniform(rng);
        if !generated_is_solvable(&[g.clone(), a.clone()], deg, rng) {
            return Ok(Some(a));
        }
    }
    let chain = group.chain();
    let n = match chain.order_u64() {
        Some(n) if n <= cap => n,
        _ => {
            return Err(Error::OrderCapExceeded {
                order: group.order().to_string(),
                cap,
            })
        }
    };
    let orbit = conjugacy_orbit(group, g, cap)?;
    let cent = centralizer_from_orbit(group, &orbit);
    let mut visited = vec![false; n as usize];
    let mut stack = Vec::new();
    for r in 0..n {
        if visited[r as usize] {
            continue;
        }
        visited[r as usize] = true;
        let a = chain.unrank(r);
        stack.push(a.clone());
        while let Some(b) = stack.pop() {
            for c in cent.generators() {
                let d = b.conjugate_by(c);
                let j = chain.rank_unchecked(&d).expect("member") as usize;
                if !visited[j] {
                    visited[j] = true;
                    stack.push(d);
                }
            }
        }
        if !generated_is_solvable(&[g.clone(), a.clone()], deg, rng) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// `R(G) = { g : ⟨g, a⟩ is solvable for all a }`.
pub fn solvable_radical_2gen(
    group: &PermGroup,
    classes: &[ConjugacyClass],
    cap: u64,
    rng: &RngState,
) -> Result<RadicalSubgroup> {
    let flags: Vec<bool> = classes
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            if c.representative.is_identity() {
                return Ok(true);
            }
            let mut r = rng.split(i as u64);
            Ok(two_generation_partner(group, &c.representative, cap, &mut r)?.is_none())
        })
        .collect::<Result<_>>()?;
    let members = (0..classes.len()).filter(|&i| flags[i]).collect();
    assemble(group, classes, members, "two-generation")
}

#[derive(Clone, Debug)]
pub struct CommutatorRadical {
    pub radical: RadicalSubgroup,
    /// Per class: least `n ≤ n_max` with a witness, `None` for members.
    pub degrees: Vec<Option<usize>>,
}

/// Members are the classes with no commutator witness up to `n_max`
/// (exhaustively). A member whose normal closure is nonsolvable makes the
/// result inconclusive.
pub fn radical_commutators(
    group: &PermGroup,
    classes: &[ConjugacyClass],
    n_max: usize,
    cap: u64,
    rng: &RngState,
) -> Result<CommutatorRadical> {
    let degrees: Vec<Option<usize>> = classes
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            if c.representative.is_identity() {
                return Ok(None);
            }
            let mut r = rng.split(i as u64);
            let mut space = TupleSpace::new(group, &c.representative, SlotKind::Commutator, cap)?;
            Ok(least_witness(&mut space, n_max, &mut r)?.map(|(n, _, _)| n))
        })
        .collect::<Result<_>>()?;
    let members: Vec<usize> = (0..classes.len()).filter(|&i| degrees[i].is_none()).collect();
    for &i in &members {
        let x = &classes[i].representative;
        if !x.is_identity() && !is_solvable_group(&normal_closure(group, std::slice::from_ref(x))) {
            return Err(Error::InconclusiveAtCap {
                n_max,
                order: classes[i].element_order,
            });
        }
    }
    Ok(CommutatorRadical {
        radical: assemble(group, classes, members, "commutator")?,
        degrees,
    })
}

/// Action of `group` on the cosets of the normal subgroup `normal`.
pub fn quotient_by_normal(group: &PermGroup, normal: &PermGroup, cap: u64) -> Result<PermGroup> {
    let members = normal.elements(cap)?;
    let canon = |x: &Permutation| -> Permutation {
        members.iter().map(|n| x.mul(n)).min().expect("nonempty")
    };
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    let mut reps = vec![canon(&group.identity())];
    index.insert(reps[0].clone(), 0);
    let mut images: Vec<Vec<usize>> = vec![Vec::new(); group.generators().len()];
    let mut head = 0;
    while head < reps.len() {
        for (gi, y) in group.generators().iter().enumerate() {
            let c = canon(&y.mul(&reps[head]));
            let next = index.len();
            let j = *index.entry(c.clone()).or_insert_with(|| {
                reps.push(c);
                next
            });
            if reps.len() > crate::perm::MAX_DEGREE {
                return Err(Error::DegreeTooLarge(reps.len()));
            }
            images[gi].push(j);
        }
        head += 1;
    }
    let degree = reps.len();
    let gens = images
        .iter()
        .map(|im| Permutation::from_usize_images(im))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(gens, degree)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuitableBy {
    /// The normal closure of `g` is solvable and contains every such subgroup.
    SolvableClosure,
    /// Every reduced tuple of conjugates was tested.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SuitabilityVerdict {
    Suitable { by: SuitableBy },
    NotSuitable {
        conjugators: Vec<Permutation>,
        triple: HallThompsonTriple,
    },
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSuitability {
    pub class_index: usize,
    pub representative: Permutation,
    pub element_order: u64,
    pub class_size: u64,
    pub k: usize,
    pub verdict: SuitabilityVerdict,
    pub stats: SearchStats,
}

impl ClassSuitability {
    pub fn is_suitable(&self) -> bool {
        matches!(self.verdict, SuitabilityVerdict::Suitable { .. })
    }
}

/// Whether `⟨g, a₁ga₁⁻¹, …, a_k g a_k⁻¹⟩` is solvable for all `aᵢ`.
pub fn suitability(
    group: &PermGroup,
    g: &Permutation,
    k: usize,
    cap: u64,
    rng: &mut RngState,
) -> Result<(SuitabilityVerdict, SearchStats)> {
    if g.is_identity()
        || is_solvable_group(&normal_closure(group, std::slice::from_ref(g)))
    {
        return Ok((
            SuitabilityVerdict::Suitable {
                by: SuitableBy::SolvableClosure,
            },
            SearchStats::default(),
        ));
    }
    let mut space = TupleSpace::new(group, g, SlotKind::Conjugate, cap)?;
    let verdict = match space.search(k, RANDOM_TUPLES, Some(SWEEP_BUDGET), rng) {
        Outcome::Witness(xs) => {
            let triple = nonsolvability_triple(&space.witness_gens(&xs), group.degree(), rng)?;
            SuitabilityVerdict::NotSuitable {
                conjugators: xs,
                triple,
            }
        }
        Outcome::Covered => SuitabilityVerdict::Suitable {
            by: SuitableBy::Exhaustive,
        },
        Outcome::OutOfBudget => SuitabilityVerdict::Unknown,
    };
    Ok((verdict, space.stats))
}

/// Suitability verdict for every class.
pub fn suitable_elements(
    group: &PermGroup,
    classes: &[ConjugacyClass],
    k: usize,
    cap: u64,
    rng: &RngState,
) -> Result<Vec<ClassSuitability>> {
    classes
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let mut r = rng.split(i as u64);
            let (verdict, stats) = suitability(group, &c.representative, k, cap, &mut r)?;
            Ok(ClassSuitability {
                class_index: i,
                representative: c.representative.clone(),
                element_order: c.element_order,
                class_size: c.class_size,
                k,
                verdict,
                stats,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleScan {
    pub triples_tested: u64,
    pub all_solvable: bool,
    pub exceptions: Vec<[Permutation; 3]>,
}

/// Triples of transpositions of `Sₙ` up to simultaneous conjugacy.
///
/// Three transpositions move at most six points, so it suffices to relabel
/// each triple on `0..min(n, 6)` by order of first appearance.
pub fn transposition_triples_solvable(n: usize, rng: &mut RngState) -> Result<TripleScan> {
    if !(2..=crate::perm::MAX_DEGREE).contains(&n) {
        return Err(Error::BadParameters(format!("degree {n} out of range")));
    }
    let m = n.min(6);
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let mut canonical: BTreeSet<[(usize, usize); 3]> = BTreeSet::new();
    for &a in &pairs {
        for &b in &pairs {
            for &c in &pairs {
                canonical.insert(relabel([a, b, c]));
            }
        }
    }
    let mut scan = TripleScan {
        triples_tested: 0,
        all_solvable: true,
        exceptions: Vec::new(),
    };
    for t in canonical {
        let perms: Vec<Permutation> = t
            .iter()
            .map(|&(i, j)| Permutation::from_cycles(n, &[vec![i, j]]))
            .collect::<Result<_>>()?;
        scan.triples_tested += 1;
        if !generated_is_solvable(&perms, n, rng) {
            scan.all_solvable = false;
            scan.exceptions.push([perms[0].clone(), perms[1].clone(), perms[2].clone()]);
        }
    }
    Ok(scan)
}

fn relabel(t: [(usize, usize); 3]) -> [(usize, usize); 3] {
    let mut map: HashMap<usize, usize> = HashMap::new();
    let mut label = |p: usize| {
        let next = map.len();
        *map.entry(p).or_insert(next)
    };
    let mut out = [(0, 0); 3];
    for (slot, (a, b)) in out.iter_mut().zip(t) {
        let (x, y) = (label(a), label(b));
        *slot = (x.min(y), x.max(y));
    }
    out
}

/// Triples `(x, h₁, h₂)` with `h₁, h₂` in the class of `x`: the first slot is
/// fixed to `x` by conjugacy and the other two run over unordered pairs.
pub fn class_triples_solvable(
    group: &PermGroup,
    x: &Permutation,
    cap: u64,
    rng: &mut RngState,
) -> Result<TripleScan> {
    let orbit = conjugacy_orbit(group, x, cap)?;
    let s = orbit.len();
    let mut scan = TripleScan {
        triples_tested: 0,
        all_solvable: true,
        exceptions: Vec::new(),
    };
    for i in 0..s {
        for j in i..s {
            scan.triples_tested += 1;
            let gens = [x.clone(), orbit.elements[i].clone(), orbit.elements[j].clone()];
            if !generated_is_solvable(&gens, group.degree(), rng) {
                scan.all_solvable = false;
                scan.exceptions.push(gens);
            }
        }
    }
    Ok(scan)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeTranspositionCheck {
    pub class_size: u64,
    pub involutions: bool,
    /// Distinct orders of products of two class elements.
    pub product_orders: Vec<u64>,
    pub elements_checked: usize,
    /// First class element found not to be 2-radical.
    pub failure: Option<KRadicalVerdict>,
    pub passed: bool,
}

/// Checks that products of two class elements have order 1, 2 or 3, and that
/// every element of the class is 2-radical by exhaustive search.
pub fn three_transposition_class_check(
    group: &PermGroup,
    x: &Permutation,
    cap: u64,
    rng: &RngState,
) -> Result<ThreeTranspositionCheck> {
    let orbit = conjugacy_orbit(group, x, cap)?;
    let elems = &orbit.elements;
    let involutions = x.order() == 2;
    let mut orders = BTreeSet::new();
    for i in 0..elems.len() {
        for j in i..elems.len() {
            orders.insert(elems[i].mul(&elems[j]).order());
        }
    }
    let product_orders: Vec<u64> = orders.into_iter().collect();
    let property = involutions && product_orders.iter().all(|&o| o <= 3);
    let mut out = ThreeTranspositionCheck {
        class_size: elems.len() as u64,
        involutions,
        product_orders,
        elements_checked: 0,
        failure: None,
        passed: false,
    };
    if !property {
        return Ok(out);
    }
    let verdicts: Vec<KRadicalVerdict> = elems
        .par_iter()
        .enumerate()
        .map(|(i, h)| {
            let mut r = rng.split(i as u64);
            is_k_radical(group, h, 2, SearchMode::Exhaustive, cap, &mut r)
        })
        .collect::<Result<_>>()?;
    out.elements_checked = verdicts.len();
    out.failure = verdicts.into_iter().find(|v| !v.is_radical());
    out.passed = out.failure.is_none();
    Ok(out)
}

/// Total search statistics over a set of verdicts.
pub fn total_stats<'a>(verdicts: impl IntoIterator<Item = &'a KRadicalVerdict>) -> SearchStats {
    let mut total = SearchStats::default();
    for v in verdicts {
        total.absorb(&v.stats);
    }
    total
}
