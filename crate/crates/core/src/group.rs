//! Permutation groups given by generators together with their stabilizer chain.

use num_bigint::BigUint;

use crate::chain::StabilizerChain;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rng::RngState;

/// Default enumeration cap: the acceptance corpus stays below 2·10⁶ elements.
pub const DEFAULT_CAP: u64 = 2_000_000;

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabilizerChain,
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>, degree: usize) -> Result<Self> {
        let chain = StabilizerChain::build(&generators, degree)?;
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup {
            degree,
            generators,
            chain,
        })
    }

    /// Wraps an existing chain; `generators` must generate the same group.
    pub fn from_chain(generators: Vec<Permutation>, chain: StabilizerChain) -> Self {
        PermGroup {
            degree: chain.degree(),
            generators: generators.into_iter().filter(|g| !g.is_identity()).collect(),
            chain,
        }
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            chain: StabilizerChain::trivial(degree),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        &self.chain
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    /// Order as `u64`; every group this crate realizes fits.
    pub fn order_u64(&self) -> u64 {
        self.chain.order_u64().expect("group order exceeds 64 bits")
    }

    pub fn is_trivial(&self) -> bool {
        self.chain.is_trivial()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        self.chain.contains(g)
    }

    pub fn is_member(&self, g: &Permutation) -> bool {
        self.chain.is_member(g)
    }

    /// Subgroup generated by `gens`, which must all be members.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        for g in &gens {
            if !self.chain.contains(g)? {
                return Err(Error::NotMember);
            }
        }
        PermGroup::new(gens, self.degree)
    }

    /// Subgroup containment of `other` in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.generators.iter().all(|g| self.is_member(g))
    }

    /// Equality as sets of permutations.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.contains_group(other)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].commutes_with(&g[j])))
    }

    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        Ok(self.chain.enumerate(cap)?.collect())
    }

    pub fn random_uniform(&self, rng: &mut RngState) -> Permutation {
        self.chain.random_uniform(rng)
    }

    /// Left regular action on the elements, listed in rank order.
    pub fn regular_action(&self) -> Result<PermGroup> {
        let n = self.chain.order_u64().filter(|&n| n as usize <= crate::perm::MAX_DEGREE);
        let n = n.ok_or_else(|| Error::DegreeTooLarge(self.chain.order_u64().unwrap_or(u64::MAX) as usize))?;
        let elements: Vec<Permutation> = (0..n).map(|r| self.chain.unrank(r)).collect();
        let gens = self
            .generators
            .iter()
            .map(|y| {
                let images: Vec<usize> = elements
                    .iter()
                    .map(|e| self.chain.rank_unchecked(&y.mul(e)).expect("member") as usize)
                    .collect();
                Permutation::from_usize_images(&images)
            })
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(gens, n as usize)
    }

    /// Product-replacement random element; see [`ProductReplacement`].
    pub fn random_element(&self, rng: &mut RngState) -> Permutation {
        ProductReplacement::new(&self.generators, self.degree, rng).next(rng)
    }
}

/// Product-replacement generator (with accumulator) over a generating set.
///
/// Uses [`ProductReplacement::SLOTS`] slots seeded cyclically from the
/// generators and [`ProductReplacement::WARMUP`] discarded steps.
#[derive(Clone, Debug)]
pub struct ProductReplacement {
    slots: Vec<Permutation>,
    accumulator: Permutation,
}

impl ProductReplacement {
    pub const SLOTS: usize = 10;
    pub const WARMUP: usize = 50;

    pub fn new(generators: &[Permutation], degree: usize, rng: &mut RngState) -> Self {
        Self::with_warmup(generators, degree, rng, Self::WARMUP)
    }

    pub fn with_warmup(
        generators: &[Permutation],
        degree: usize,
        rng: &mut RngState,
        warmup: usize,
    ) -> Self {
        let identity = Permutation::identity(degree);
        let gens: Vec<&Permutation> = generators.iter().filter(|g| !g.is_identity()).collect();
        let n = Self::SLOTS.max(gens.len());
        let slots = if gens.is_empty() {
            vec![identity.clone(); n]
        } else {
            (0..n).map(|i| gens[i % gens.len()].clone()).collect()
        };
        let mut pr = ProductReplacement {
            slots,
            accumulator: identity,
        };
        for _ in 0..warmup {
            pr.step(rng);
        }
        pr
    }

    fn step(&mut self, rng: &mut RngState) {
        let n = self.slots.len();
        let s = rng.below(n);
        let mut t = rng.below(n - 1);
        if t >= s {
            t += 1;
        }
        let other = if rng.coin() {
            self.slots[t].clone()
        } else {
            self.slots[t].inverse()
        };
        self.slots[s] = if rng.coin() {
            self.slots[s].mul(&other)
        } else {
            other.mul(&self.slots[s])
        };
        self.accumulator = self.accumulator.mul(&self.slots[s]);
    }

    pub fn next(&mut self, rng: &mut RngState) -> Permutation {
        self.step(rng);
        self.accumulator.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn regular_action_is_faithful_and_transitive() {
        let g = PermGroup::new(vec![cyc(4, "(0 1 2 3)"), cyc(4, "(0 1)")], 4).unwrap();
        let r = g.regular_action().unwrap();
        assert_eq!(r.degree(), 24);
        assert_eq!(r.order_u64(), 24);
        let x = r.random_uniform(&mut RngState::new(1));
        assert!(x.is_identity() || (0..24).all(|i| x.image(i) != i));
    }

    #[test]
    fn random_elements_are_members_and_replayable() {
        let g = PermGroup::new(vec![cyc(7, "(0 1 2 3 4 5 6)"), cyc(7, "(0 1 2)")], 7).unwrap();
        let mut a = RngState::new(42);
        let mut b = RngState::new(42);
        for _ in 0..20 {
            let x = g.random_element(&mut a);
            assert!(g.is_member(&x));
            assert_eq!(x, g.random_element(&mut b));
        }
    }

    #[test]
    fn trivial_group_random_is_identity() {
        let g = PermGroup::trivial(5);
        let mut rng = RngState::new(1);
        assert!(g.random_element(&mut rng).is_identity());
        assert!(g.random_uniform(&mut rng).is_identity());
    }
}
