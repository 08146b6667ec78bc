//! Base and strong generating set via deterministic Schreier–Sims.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::perm::{Permutation, MAX_DEGREE};
use crate::rng::RngState;

const NOT_IN_ORBIT: u32 = u32::MAX;

/// One stabilizer level: the fundamental orbit of `base_point` under the
/// generators of the pointwise stabilizer of all earlier base points.
#[derive(Clone, Debug)]
pub struct Level {
    base_point: u16,
    gens: Vec<Permutation>,
    orbit: Vec<u16>,
    position: Vec<u32>,
    transversal: Vec<Permutation>,
    inv_transversal: Vec<Permutation>,
    // For orbit index j: generators [0, tested[j]) have had their Schreier
    // generator sifted already.
    tested: Vec<usize>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut position = vec![NOT_IN_ORBIT; degree];
        position[base_point] = 0;
        Level {
            base_point: base_point as u16,
            gens: Vec::new(),
            orbit: vec![base_point as u16],
            position,
            transversal: vec![Permutation::identity(degree)],
            inv_transversal: vec![Permutation::identity(degree)],
            tested: vec![0],
        }
    }

    pub fn base_point(&self) -> usize {
        self.base_point as usize
    }

    pub fn orbit(&self) -> &[u16] {
        &self.orbit
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    /// Coset representative mapping the base point to `point`, if `point` is in the orbit.
    pub fn representative(&self, point: usize) -> Option<&Permutation> {
        match self.position[point] {
            NOT_IN_ORBIT => None,
            j => Some(&self.transversal[j as usize]),
        }
    }

    pub fn representative_at(&self, index: usize) -> &Permutation {
        &self.transversal[index]
    }

    pub fn inverse_representative_at(&self, index: usize) -> &Permutation {
        &self.inv_transversal[index]
    }

    pub fn orbit_index(&self, point: usize) -> Option<usize> {
        match self.position[point] {
            NOT_IN_ORBIT => None,
            j => Some(j as usize),
        }
    }

    fn push_generator(&mut self, g: Permutation) {
        let first_new = self.gens.len();
        self.gens.push(g);
        let old_len = self.orbit.len();
        let mut j = 0;
        while j < self.orbit.len() {
            let start = if j < old_len { first_new } else { 0 };
            for s in start..self.gens.len() {
                let p = self.orbit[j] as usize;
                let img = self.gens[s].image(p);
                if self.position[img] == NOT_IN_ORBIT {
                    self.position[img] = self.orbit.len() as u32;
                    self.orbit.push(img as u16);
                    let t = self.gens[s].mul(&self.transversal[j]);
                    self.inv_transversal.push(t.inverse());
                    self.transversal.push(t);
                    self.tested.push(0);
                }
            }
            j += 1;
        }
    }
}

/// Base, strong generators and transversals of a permutation group.
///
/// Immutable once built except through [`add_generator`](Self::add_generator),
/// which only ever enlarges the group.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// The trivial group of the given degree.
    pub fn trivial(degree: usize) -> Self {
        StabilizerChain {
            degree,
            levels: Vec::new(),
        }
    }

    /// Deterministic Schreier–Sims on `generators`.
    pub fn build(generators: &[Permutation], degree: usize) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(degree));
        }
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut chain = StabilizerChain::trivial(degree);
        let gens: Vec<&Permutation> = generators.iter().filter(|g| !g.is_identity()).collect();
        // Initial base: each generator must move some base point.
        for g in &gens {
            if chain.levels.iter().all(|l| g.image(l.base_point()) == l.base_point()) {
                let b = g.smallest_moved_point().expect("non-identity");
                chain.levels.push(Level::new(b, degree));
            }
        }
        for g in &gens {
            for l in 0..chain.levels.len() {
                chain.levels[l].push_generator((*g).clone());
                let b = chain.levels[l].base_point();
                if g.image(b) != b {
                    break;
                }
            }
        }
        if !chain.levels.is_empty() {
            chain.complete(chain.levels.len() - 1);
        }
        Ok(chain)
    }

    /// Schreier–Sims closure, assuming levels deeper than `start` are complete.
    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            let li = i as usize;
            let mut restart_at = None;
            let mut j = 0;
            'scan: while j < self.levels[li].orbit.len() {
                while self.levels[li].tested[j] < self.levels[li].gens.len() {
                    let level = &self.levels[li];
                    let s = &level.gens[level.tested[j]];
                    let p = level.orbit[j] as usize;
                    let k = level.position[s.image(p)] as usize;
                    let schreier = level.inv_transversal[k].mul(s).mul(&level.transversal[j]);
                    self.levels[li].tested[j] += 1;
                    let (residue, depth) = self.strip_from(schreier, li + 1);
                    if !residue.is_identity() {
                        if depth == self.levels.len() {
                            let b = residue.smallest_moved_point().expect("non-identity");
                            self.levels.push(Level::new(b, self.degree));
                        }
                        for l in li + 1..=depth {
                            self.levels[l].push_generator(residue.clone());
                        }
                        restart_at = Some(depth);
                        break 'scan;
                    }
                }
                j += 1;
            }
            match restart_at {
                Some(d) => i = d as isize,
                None => i -= 1,
            }
        }
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level where sifting stopped.
    fn strip_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let x = g.image(level.base_point());
            match level.position[x] {
                NOT_IN_ORBIT => return (g, l),
                k => g = level.inv_transversal[k as usize].mul(&g),
            }
        }
        (g, self.levels.len())
    }

    /// Sift residue of `g`; the identity exactly when `g` is a member.
    pub fn sift(&self, g: &Permutation) -> Result<Permutation> {
        self.check(g)?;
        Ok(self.strip_from(g.clone(), 0).0)
    }

    fn check(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        self.check(g)?;
        Ok(self.is_member(g))
    }

    /// Unchecked membership; panics on a degree mismatch.
    pub fn is_member(&self, g: &Permutation) -> bool {
        let (res, depth) = self.strip_from(g.clone(), 0);
        depth == self.levels.len() && res.is_identity()
    }

    /// Adds `g` to the group; returns `false` if it was already a member.
    pub fn add_generator(&mut self, g: &Permutation) -> Result<bool> {
        self.check(g)?;
        let (residue, depth) = self.strip_from(g.clone(), 0);
        if residue.is_identity() {
            return Ok(false);
        }
        if depth == self.levels.len() {
            let b = residue.smallest_moved_point().expect("non-identity");
            self.levels.push(Level::new(b, self.degree));
        }
        for l in 0..=depth {
            self.levels[l].push_generator(residue.clone());
        }
        self.complete(depth);
        Ok(true)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(Level::base_point).collect()
    }

    /// All strong generators, deduplicated, in level order.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// The order if it fits in 64 bits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    /// Uniformly distributed member: one random coset representative per level.
    pub fn random_uniform(&self, rng: &mut RngState) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for l in &self.levels {
            let j = rng.below(l.orbit.len());
            g = g.mul(&l.transversal[j]);
        }
        g
    }

    /// Mixed-radix index of a member, level 0 most significant.
    ///
    /// Returns `None` for non-members.
    pub fn rank(&self, g: &Permutation) -> Option<u64> {
        let idx = self.rank_unchecked(g)?;
        if self.unrank(idx) == *g {
            Some(idx)
        } else {
            None
        }
    }

    /// Rank by tracking base images only; valid only for members.
    pub fn rank_unchecked(&self, g: &Permutation) -> Option<u64> {
        let mut digits: Vec<usize> = Vec::with_capacity(self.levels.len());
        let mut idx: u64 = 0;
        for level in &self.levels {
            let mut x = g.image(level.base_point());
            for (m, &d) in digits.iter().enumerate() {
                x = self.levels[m].inv_transversal[d].image(x);
            }
            let j = level.position[x];
            if j == NOT_IN_ORBIT {
                return None;
            }
            digits.push(j as usize);
            idx = idx * level.orbit.len() as u64 + j as u64;
        }
        Some(idx)
    }

    /// Inverse of [`rank`](Self::rank).
    pub fn unrank(&self, mut idx: u64) -> Permutation {
        let mut digits = vec![0usize; self.levels.len()];
        for (l, level) in self.levels.iter().enumerate().rev() {
            let n = level.orbit.len() as u64;
            digits[l] = (idx % n) as usize;
            idx /= n;
        }
        let mut g = Permutation::identity(self.degree);
        for (l, level) in self.levels.iter().enumerate() {
            g = g.mul(&level.transversal[digits[l]]);
        }
        g
    }

    /// Every element exactly once, in mixed-radix order of transversal products.
    pub fn enumerate(&self, cap: u64) -> Result<Elements<'_>> {
        let order = self.order();
        match order.to_u64() {
            Some(n) if n <= cap => Ok(Elements::new(self, n)),
            _ => Err(Error::OrderCapExceeded {
                order: order.to_string(),
                cap,
            }),
        }
    }
}

/// Iterator over all group elements; see [`StabilizerChain::enumerate`].
pub struct Elements<'a> {
    chain: &'a StabilizerChain,
    digits: Vec<usize>,
    prefix: Vec<Permutation>,
    remaining: u64,
    started: bool,
}

impl<'a> Elements<'a> {
    fn new(chain: &'a StabilizerChain, order: u64) -> Self {
        let m = chain.levels.len();
        let mut prefix = Vec::with_capacity(m + 1);
        prefix.push(Permutation::identity(chain.degree));
        for l in 0..m {
            let next = prefix[l].mul(&chain.levels[l].transversal[0]);
            prefix.push(next);
        }
        Elements {
            chain,
            digits: vec![0; m],
            prefix,
            remaining: order,
            started: false,
        }
    }
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.remaining == 0 {
            return None;
        }
        if self.started {
            let levels = &self.chain.levels;
            let mut l = levels.len();
            loop {
                l -= 1;
                self.digits[l] += 1;
                if self.digits[l] < levels[l].orbit.len() {
                    break;
                }
                self.digits[l] = 0;
            }
            for m in l..levels.len() {
                self.prefix[m + 1] = self.prefix[m].mul(&levels[m].transversal[self.digits[m]]);
            }
        }
        self.started = true;
        self.remaining -= 1;
        Some(self.prefix[self.chain.levels.len()].clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.remaining as usize;
        (n, Some(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn symmetric_group_order() {
        let c = StabilizerChain::build(&[cyc(5, "(0 1 2 3 4)"), cyc(5, "(0 1)")], 5).unwrap();
        assert_eq!(c.order_u64(), Some(120));
    }

    #[test]
    fn empty_generating_set_is_trivial() {
        let c = StabilizerChain::build(&[], 4).unwrap();
        assert_eq!(c.order_u64(), Some(1));
        assert!(c.is_member(&Permutation::identity(4)));
        assert_eq!(c.enumerate(10).unwrap().count(), 1);
    }

    #[test]
    fn membership_by_parity() {
        let a5 = StabilizerChain::build(&[cyc(5, "(0 1 2)"), cyc(5, "(0 1 2 3 4)")], 5).unwrap();
        assert_eq!(a5.order_u64(), Some(60));
        assert!(a5.contains(&Permutation::identity(5)).unwrap());
        assert!(a5.contains(&cyc(5, "(0 1 2)")).unwrap());
        assert!(!a5.contains(&cyc(5, "(0 1)")).unwrap());
        assert!(a5.contains(&Permutation::identity(6)).is_err());
    }

    #[test]
    fn enumeration_is_exact_and_ranked() {
        let s4 = StabilizerChain::build(&[cyc(4, "(0 1 2 3)"), cyc(4, "(0 1)")], 4).unwrap();
        let all: Vec<_> = s4.enumerate(100).unwrap().collect();
        assert_eq!(all.len(), 24);
        let set: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), 24);
        for (i, g) in all.iter().enumerate() {
            assert_eq!(s4.rank(g), Some(i as u64));
            assert_eq!(&s4.unrank(i as u64), g);
        }
        assert!(s4.enumerate(23).is_err());
    }

    #[test]
    fn incremental_generators_grow_the_group() {
        let mut c = StabilizerChain::build(&[cyc(6, "(0 1 2)")], 6).unwrap();
        assert_eq!(c.order_u64(), Some(3));
        assert!(!c.add_generator(&cyc(6, "(0 2 1)")).unwrap());
        assert!(c.add_generator(&cyc(6, "(0 1 2 3 4)")).unwrap());
        assert_eq!(c.order_u64(), Some(60));
        assert!(c.add_generator(&cyc(6, "(4 5)")).unwrap());
        assert_eq!(c.order_u64(), Some(720));
    }

    #[test]
    fn transversal_labels_its_orbit_point() {
        let c = StabilizerChain::build(&[cyc(7, "(0 1 2 3 4 5 6)"), cyc(7, "(1 2 4)(3 6 5)")], 7)
            .unwrap();
        for level in c.levels() {
            for &p in level.orbit() {
                let t = level.representative(p as usize).unwrap();
                assert_eq!(t.image(level.base_point()), p as usize);
            }
        }
        assert_eq!(c.order_u64(), Some(21));
    }
}
