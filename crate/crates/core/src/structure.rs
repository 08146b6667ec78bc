//! Derived series, solvability certificates, normal closures, centralizers,
//! centers and conjugacy classes.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::chain::StabilizerChain;
use crate::error::{Error, Result};
use crate::group::{PermGroup, ProductReplacement};
use crate::perm::Permutation;
use crate::rng::RngState;

/// Random samples tried before the structured Hall–Thompson search.
pub const HALL_THOMPSON_BUDGET: u64 = 1_000_000;

/// Smallest normal subgroup of `g` containing `elements`.
pub fn normal_closure(g: &PermGroup, elements: &[Permutation]) -> PermGroup {
    let mut chain = StabilizerChain::trivial(g.degree());
    let mut gens: Vec<Permutation> = Vec::new();
    let mut queue: VecDeque<Permutation> = elements.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        if chain.is_member(&x) {
            continue;
        }
        chain.add_generator(&x).expect("degree checked by caller");
        for y in g.generators() {
            queue.push_back(x.conjugate_by(y));
        }
        gens.push(x);
    }
    PermGroup::from_chain(gens, chain)
}

/// The commutator subgroup: normal closure of the generator commutators.
pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let c = Permutation::commutator(&gens[i], &gens[j]);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure(g, &comms)
}

/// `G = G⁽⁰⁾ ≥ G⁽¹⁾ ≥ …` until the series stabilizes (at 1 or a perfect group).
pub fn derived_series(g: &PermGroup) -> Vec<PermGroup> {
    let mut series = vec![g.clone()];
    loop {
        let cur = series.last().expect("nonempty");
        if cur.is_trivial() {
            break;
        }
        let next = if cur.is_abelian() {
            PermGroup::trivial(g.degree())
        } else {
            derived_subgroup(cur)
        };
        if next.order() == cur.order() {
            break;
        }
        series.push(next);
    }
    series
}

/// Solvability test by derived series.
pub fn is_solvable_group(g: &PermGroup) -> bool {
    derived_series(g).last().expect("nonempty").is_trivial()
}

/// Three nonidentity elements of pairwise coprime orders whose product is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallThompsonTriple {
    pub a: Permutation,
    pub b: Permutation,
    pub c: Permutation,
}

impl HallThompsonTriple {
    /// Checks orders, coprimality and `a·b·c = 1`.
    pub fn verify(&self) -> bool {
        let orders = self.orders();
        orders.iter().all(|&o| o > 1)
            && orders[0].gcd(&orders[1]) == 1
            && orders[0].gcd(&orders[2]) == 1
            && orders[1].gcd(&orders[2]) == 1
            && self.a.degree() == self.b.degree()
            && self.b.degree() == self.c.degree()
            && self.a.mul(&self.b).mul(&self.c).is_identity()
    }

    pub fn orders(&self) -> [u64; 3] {
        [self.a.order(), self.b.order(), self.c.order()]
    }

    /// Completes `(a, b)` with `c = (ab)⁻¹` if that is a valid triple.
    pub fn from_pair(a: &Permutation, b: &Permutation) -> Option<Self> {
        let oa = a.order();
        let ob = b.order();
        if oa == 1 || ob == 1 || oa.gcd(&ob) != 1 {
            return None;
        }
        let c = a.mul(b).inverse();
        let oc = c.order();
        (oc > 1 && oa.gcd(&oc) == 1 && ob.gcd(&oc) == 1).then(|| HallThompsonTriple {
            a: a.clone(),
            b: b.clone(),
            c,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolvabilityCertificate {
    /// Orders of the derived series, ending at 1.
    Solvable { series: Vec<BigUint> },
    /// Orders of the derived series down to the perfect term, and a
    /// Hall–Thompson triple unless the witness search was exhausted.
    Nonsolvable {
        series: Vec<BigUint>,
        triple: Option<HallThompsonTriple>,
    },
}

impl SolvabilityCertificate {
    pub fn is_solvable(&self) -> bool {
        matches!(self, SolvabilityCertificate::Solvable { .. })
    }

    pub fn series(&self) -> &[BigUint] {
        match self {
            SolvabilityCertificate::Solvable { series }
            | SolvabilityCertificate::Nonsolvable { series, .. } => series,
        }
    }

    /// Re-checks the certificate against `g`: strictly decreasing divisor chain
    /// ending at 1, or a valid triple of members.
    pub fn verify(&self, g: &PermGroup) -> bool {
        let series = self.series();
        let chain_ok = series.first() == Some(&g.order())
            && series
                .windows(2)
                .all(|w| w[1] < w[0] && (&w[0] % &w[1]) == BigUint::from(0u32));
        match self {
            SolvabilityCertificate::Solvable { .. } => {
                chain_ok && series.last() == Some(&BigUint::from(1u32))
            }
            SolvabilityCertificate::Nonsolvable { triple, .. } => {
                chain_ok
                    && triple.as_ref().is_some_and(|t| {
                        t.verify() && g.is_member(&t.a) && g.is_member(&t.b) && g.is_member(&t.c)
                    })
            }
        }
    }

    /// The triple, or [`Error::WitnessSearchExhausted`] for a series-only certificate.
    pub fn require_triple(&self) -> Result<Option<&HallThompsonTriple>> {
        match self {
            SolvabilityCertificate::Solvable { .. } => Ok(None),
            SolvabilityCertificate::Nonsolvable { triple: Some(t), .. } => Ok(Some(t)),
            SolvabilityCertificate::Nonsolvable { triple: None, .. } => {
                Err(Error::WitnessSearchExhausted(HALL_THOMPSON_BUDGET))
            }
        }
    }
}

/// Derived series verdict; nonsolvable groups also get a verified Hall–Thompson triple.
pub fn is_solvable(g: &PermGroup, rng: &mut RngState) -> SolvabilityCertificate {
    is_solvable_with_budget(g, rng, HALL_THOMPSON_BUDGET, crate::group::DEFAULT_CAP)
}

pub fn is_solvable_with_budget(
    g: &PermGroup,
    rng: &mut RngState,
    samples: u64,
    cap: u64,
) -> SolvabilityCertificate {
    let series_groups = derived_series(g);
    let series: Vec<BigUint> = series_groups.iter().map(PermGroup::order).collect();
    let last = series_groups.last().expect("nonempty");
    if last.is_trivial() {
        return SolvabilityCertificate::Solvable { series };
    }
    // Search in the perfect core, where triples are densest.
    let triple = hall_thompson_search(last, rng, samples, cap);
    SolvabilityCertificate::Nonsolvable { series, triple }
}

/// Random pairs `(a, b)` with `c = (ab)⁻¹`, then a structured sweep over
/// class representatives `a` and all `b` when the group is enumerable.
pub fn hall_thompson_search(
    g: &PermGroup,
    rng: &mut RngState,
    samples: u64,
    cap: u64,
) -> Option<HallThompsonTriple> {
    for _ in 0..samples {
        let a = g.random_uniform(rng);
        let b = g.random_uniform(rng);
        if let Some(t) = HallThompsonTriple::from_pair(&a, &b) {
            return Some(t);
        }
    }
    let classes = conjugacy_classes(g, cap).ok()?;
    let elements = g.elements(cap).ok()?;
    for class in &classes {
        for b in &elements {
            if let Some(t) = HallThompsonTriple::from_pair(&class.representative, b) {
                return Some(t);
            }
        }
    }
    None
}

/// Fast solvability decision for `⟨gens⟩`: cheap Hall–Thompson probes first,
/// then the derived series. Both outcomes are certain.
pub fn generated_is_solvable(gens: &[Permutation], degree: usize, rng: &mut RngState) -> bool {
    let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    if gens.len() <= 1 {
        return true;
    }
    if (0..gens.len()).all(|i| (i + 1..gens.len()).all(|j| gens[i].commutes_with(&gens[j]))) {
        return true;
    }
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            if i != j && HallThompsonTriple::from_pair(&gens[i], &gens[j]).is_some() {
                return false;
            }
        }
    }
    let mut pr = ProductReplacement::with_warmup(&gens, degree, rng, 8);
    let mut prev = pr.next(rng);
    for _ in 0..24 {
        let x = pr.next(rng);
        if HallThompsonTriple::from_pair(&prev, &x).is_some() {
            return false;
        }
        prev = x;
    }
    let h = PermGroup::new(gens, degree).expect("degrees agree");
    is_solvable_group(&h)
}

/// Conjugation orbit of an element with a conjugator for each orbit point.
#[derive(Clone, Debug)]
pub struct ConjugacyOrbit {
    /// `elements[0]` is the seed element.
    pub elements: Vec<Permutation>,
    /// `conjugators[i] · elements[0] · conjugators[i]⁻¹ = elements[i]`.
    pub conjugators: Vec<Permutation>,
    index: HashMap<u64, u32>,
}

impl ConjugacyOrbit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Position of `h` in the orbit; `h` must be a member of the ambient group.
    pub fn position(&self, g: &PermGroup, h: &Permutation) -> Option<usize> {
        let r = g.chain().rank_unchecked(h)?;
        self.index.get(&r).map(|&i| i as usize)
    }
}

/// Orbit of `x` under conjugation by `g`, by breadth-first search on the generators.
pub fn conjugacy_orbit(g: &PermGroup, x: &Permutation, cap: u64) -> Result<ConjugacyOrbit> {
    if !g.contains(x)? {
        return Err(Error::NotMember);
    }
    let chain = g.chain();
    let mut index = HashMap::new();
    index.insert(chain.rank_unchecked(x).expect("member"), 0u32);
    let mut elements = vec![x.clone()];
    let mut conjugators = vec![g.identity()];
    let mut head = 0;
    while head < elements.len() {
        for y in g.generators() {
            let h = elements[head].conjugate_by(y);
            let r = chain.rank_unchecked(&h).expect("member");
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(r) {
                if elements.len() as u64 >= cap {
                    return Err(Error::OrderCapExceeded {
                        order: format!(">{}", elements.len()),
                        cap,
                    });
                }
                e.insert(elements.len() as u32);
                conjugators.push(y.mul(&conjugators[head]));
                elements.push(h);
            }
        }
        head += 1;
    }
    Ok(ConjugacyOrbit {
        elements,
        conjugators,
        index,
    })
}

/// `C_G(x)` from the Schreier generators of the conjugation action on the class of `x`.
pub fn centralizer(g: &PermGroup, x: &Permutation, cap: u64) -> Result<PermGroup> {
    let orbit = conjugacy_orbit(g, x, cap)?;
    Ok(centralizer_from_orbit(g, &orbit))
}

pub fn centralizer_from_orbit(g: &PermGroup, orbit: &ConjugacyOrbit) -> PermGroup {
    let target = g.order() / BigUint::from(orbit.len());
    let mut chain = StabilizerChain::trivial(g.degree());
    let mut gens = Vec::new();
    'outer: for (i, h) in orbit.elements.iter().enumerate() {
        for y in g.generators() {
            if chain.order() == target {
                break 'outer;
            }
            let j = orbit.position(g, &h.conjugate_by(y)).expect("orbit is closed");
            let s = orbit.conjugators[j]
                .inverse()
                .mul(y)
                .mul(&orbit.conjugators[i]);
            if chain.add_generator(&s).expect("degree") {
                gens.push(s);
            }
        }
    }
    debug_assert_eq!(chain.order(), target);
    PermGroup::from_chain(gens, chain)
}

/// Elements commuting with every generator.
pub fn center(g: &PermGroup, cap: u64) -> Result<PermGroup> {
    if g.is_abelian() {
        return Ok(g.clone());
    }
    // Z(G) lies in the smallest generator centralizer.
    let mut best: Option<PermGroup> = None;
    for y in g.generators() {
        let c = centralizer(g, y, cap)?;
        if best.as_ref().map_or(true, |b| c.order() < b.order()) {
            best = Some(c);
        }
    }
    let c = best.expect("nonabelian group has generators");
    let mut chain = StabilizerChain::trivial(g.degree());
    let mut gens = Vec::new();
    for z in c.chain().enumerate(cap)? {
        if g.generators().iter().all(|y| y.commutes_with(&z)) && chain.add_generator(&z)? {
            gens.push(z);
        }
    }
    Ok(PermGroup::from_chain(gens, chain))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub element_order: u64,
    pub class_size: u64,
    pub centralizer_order: u64,
    /// Lexicographically least element of the class (full enumeration), or
    /// first discovered (random mode).
    pub canonical_representative: bool,
}

/// All conjugacy classes by full enumeration, sorted by (element order, size,
/// representative); representatives are lexicographically least in their class.
pub fn conjugacy_classes(g: &PermGroup, cap: u64) -> Result<Vec<ConjugacyClass>> {
    let order = g.order();
    let n = match g.chain().order_u64() {
        Some(n) if n <= cap => n,
        _ => {
            return Err(Error::OrderCapExceeded {
                order: order.to_string(),
                cap,
            })
        }
    };
    let chain = g.chain();
    let mut visited = vec![false; n as usize];
    let mut classes = Vec::new();
    let mut queue: Vec<Permutation> = Vec::new();
    for r in 0..n {
        if visited[r as usize] {
            continue;
        }
        visited[r as usize] = true;
        let x = chain.unrank(r);
        let mut least = x.clone();
        queue.clear();
        queue.push(x);
        let mut head = 0;
        while head < queue.len() {
            for y in g.generators() {
                let h = queue[head].conjugate_by(y);
                let k = chain.rank_unchecked(&h).expect("member") as usize;
                if !visited[k] {
                    visited[k] = true;
                    if h < least {
                        least = h.clone();
                    }
                    queue.push(h);
                }
            }
            head += 1;
        }
        let size = queue.len() as u64;
        classes.push(ConjugacyClass {
            element_order: least.order(),
            representative: least,
            class_size: size,
            centralizer_order: n / size,
            canonical_representative: true,
        });
    }
    sort_classes(&mut classes);
    Ok(classes)
}

fn sort_classes(classes: &mut [ConjugacyClass]) {
    classes.sort_by(|a, b| {
        (a.element_order, a.class_size, &a.representative).cmp(&(
            b.element_order,
            b.class_size,
            &b.representative,
        ))
    });
}

/// Classes discovered from random elements; each class orbit is enumerated
/// (up to `cap`) and the search stops once the sizes sum to `|G|`.
pub fn conjugacy_classes_random(
    g: &PermGroup,
    rng: &mut RngState,
    samples: u64,
    cap: u64,
) -> Result<Vec<ConjugacyClass>> {
    let order = g.order();
    let n = g.chain().order_u64().ok_or(Error::OrderCapExceeded {
        order: order.to_string(),
        cap,
    })?;
    let mut seen: HashMap<u64, usize> = HashMap::new();
    let mut classes = Vec::new();
    let mut total = 0u64;
    let mut candidates = vec![g.identity()];
    let mut drawn = 0;
    while total < n {
        let x = match candidates.pop() {
            Some(x) => x,
            None if drawn < samples => {
                drawn += 1;
                g.random_uniform(rng)
            }
            None => {
                return Err(Error::ClassSearchIncomplete {
                    found: total.to_string(),
                    order: n.to_string(),
                })
            }
        };
        let r = g.chain().rank_unchecked(&x).expect("member");
        if seen.contains_key(&r) {
            continue;
        }
        let orbit = conjugacy_orbit(g, &x, cap)?;
        for h in &orbit.elements {
            seen.insert(g.chain().rank_unchecked(h).expect("member"), classes.len());
        }
        // Powers of new representatives are cheap class candidates.
        let o = x.order();
        for d in 2..o {
            if o % d == 0 {
                candidates.push(x.pow(d));
            }
        }
        let size = orbit.len() as u64;
        total += size;
        classes.push(ConjugacyClass {
            element_order: o,
            representative: x,
            class_size: size,
            centralizer_order: n / size,
            canonical_representative: false,
        });
    }
    sort_classes(&mut classes);
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    fn sym(n: usize) -> PermGroup {
        let long: Vec<Vec<usize>> = vec![(0..n).collect()];
        PermGroup::new(
            vec![Permutation::from_cycles(n, &long).unwrap(), cyc(n, "(0 1)")],
            n,
        )
        .unwrap()
    }

    fn alt5() -> PermGroup {
        PermGroup::new(vec![cyc(5, "(0 1 2)"), cyc(5, "(0 1 2 3 4)")], 5).unwrap()
    }

    #[test]
    fn derived_subgroups() {
        assert_eq!(derived_subgroup(&sym(4)).order_u64(), 12);
        assert_eq!(derived_subgroup(&alt5()).order_u64(), 60);
        let c6 = PermGroup::new(vec![cyc(6, "(0 1 2 3 4 5)")], 6).unwrap();
        assert!(derived_subgroup(&c6).is_trivial());
    }

    #[test]
    fn s4_is_solvable_with_textbook_series() {
        let mut rng = RngState::new(1);
        let cert = is_solvable(&sym(4), &mut rng);
        let orders: Vec<u64> = cert.series().iter().map(|o| o.try_into().unwrap()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert!(cert.verify(&sym(4)));
    }

    #[test]
    fn a5_certificate_has_coprime_triple() {
        let mut rng = RngState::new(1);
        let cert = is_solvable(&alt5(), &mut rng);
        let t = cert.require_triple().unwrap().unwrap();
        let mut orders = t.orders();
        orders.sort();
        assert!(orders.iter().all(|o| [2, 3, 5].contains(o)));
        assert!(cert.verify(&alt5()));
    }

    #[test]
    fn trivial_group_is_solvable() {
        let mut rng = RngState::new(1);
        let cert = is_solvable(&PermGroup::trivial(3), &mut rng);
        assert_eq!(cert, SolvabilityCertificate::Solvable { series: vec![BigUint::from(1u32)] });
    }

    #[test]
    fn normal_closures() {
        let s5 = sym(5);
        assert_eq!(normal_closure(&s5, &[cyc(5, "(0 1 2)")]).order_u64(), 60);
        assert_eq!(normal_closure(&alt5(), &[cyc(5, "(0 1)(2 3)")]).order_u64(), 60);
        let c4 = PermGroup::new(vec![cyc(4, "(0 1 2 3)")], 4).unwrap();
        assert_eq!(normal_closure(&c4, &[cyc(4, "(0 2)(1 3)")]).order_u64(), 2);
    }

    #[test]
    fn centralizers() {
        let s4 = sym(4);
        assert_eq!(centralizer(&s4, &cyc(4, "(0 1)(2 3)"), 100).unwrap().order_u64(), 8);
        assert_eq!(centralizer(&s4, &s4.identity(), 100).unwrap().order_u64(), 24);
    }

    #[test]
    fn class_sizes_of_s4_and_a5() {
        let sizes = |g: &PermGroup| {
            let mut v: Vec<u64> = conjugacy_classes(g, 1000).unwrap().iter().map(|c| c.class_size).collect();
            v.sort();
            v
        };
        assert_eq!(sizes(&sym(4)), vec![1, 3, 6, 6, 8]);
        assert_eq!(sizes(&alt5()), vec![1, 12, 12, 15, 20]);
    }

    #[test]
    fn representatives_are_lexicographically_least() {
        for c in conjugacy_classes(&sym(4), 1000).unwrap() {
            let orbit = conjugacy_orbit(&sym(4), &c.representative, 100).unwrap();
            assert!(orbit.elements.iter().all(|h| c.representative <= *h));
        }
    }

    #[test]
    fn random_class_search_agrees() {
        let mut rng = RngState::new(5);
        let a = conjugacy_classes_random(&sym(5), &mut rng, 1000, 1000).unwrap();
        let b = conjugacy_classes(&sym(5), 1000).unwrap();
        let key = |v: &[ConjugacyClass]| {
            let mut k: Vec<(u64, u64)> = v.iter().map(|c| (c.element_order, c.class_size)).collect();
            k.sort();
            k
        };
        assert_eq!(key(&a), key(&b));
    }

    #[test]
    fn centers() {
        assert!(center(&sym(4), 1000).unwrap().is_trivial());
        let c5 = PermGroup::new(vec![cyc(5, "(0 1 2 3 4)")], 5).unwrap();
        assert_eq!(center(&c5, 1000).unwrap().order_u64(), 5);
    }

    #[test]
    fn generated_solvability_fast_path() {
        let mut rng = RngState::new(3);
        assert!(!generated_is_solvable(&[cyc(5, "(0 1 2)"), cyc(5, "(0 1 2 3 4)")], 5, &mut rng));
        assert!(generated_is_solvable(&[cyc(4, "(0 1 2 3)"), cyc(4, "(0 1)")], 4, &mut rng));
        assert!(generated_is_solvable(&[], 4, &mut rng));
    }
}
