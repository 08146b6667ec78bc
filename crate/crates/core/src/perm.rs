//! Permutations of `{0, …, n-1}` stored as image arrays.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported degree. Points are stored as `u16`.
pub const MAX_DEGREE: usize = 2048;

/// A bijection of `{0, …, n-1}`; entry `i` of the image array is the image of `i`.
///
/// Products read right to left: `p.mul(&q)` applies `q` first, then `p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u16>", into = "Vec<u16>")]
pub struct Permutation {
    images: Vec<u16>,
}

impl TryFrom<Vec<u16>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<u16>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<u16> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} too large");
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Validates that `images` is a bijection.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "image array of length {n} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn from_usize_images(images: &[usize]) -> Result<Self> {
        if images.iter().any(|&x| x > u16::MAX as usize) {
            return Err(Error::InvalidPermutation("point out of range".into()));
        }
        Self::from_images(images.iter().map(|&x| x as u16).collect())
    }

    /// Builds a permutation from disjoint cycles, e.g. `[[0, 1, 2], [3, 4]]`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(degree));
        }
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a >= degree || b >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} out of range for degree {degree}",
                        a.max(b)
                    )));
                }
                if touched[a] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {a} appears twice in cycle notation"
                    )));
                }
                touched[a] = true;
                images[a] = b as u16;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `"(0 1 2)(3 4)"` or `"(0,1)"`; `"()"` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(stripped) = rest.strip_prefix('(') else {
                return Err(Error::InvalidPermutation(format!("bad cycle notation `{text}`")));
            };
            let Some(end) = stripped.find(')') else {
                return Err(Error::InvalidPermutation(format!("unclosed cycle in `{text}`")));
            };
            let body = &stripped[..end];
            let cycle = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad point `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = stripped[end + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u16] {
        &self.images
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(())
    }

    /// `self · other`: apply `other` first, then `self`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        Ok(self.mul(other))
    }

    /// Unchecked variant of [`product`](Self::product); panics on degree mismatch.
    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    /// `x · self · x⁻¹`.
    pub fn conjugate_by(&self, x: &Self) -> Self {
        // (x g x^-1)(x(i)) = x(g(i))
        let mut out = vec![0u16; self.degree()];
        for (i, &gi) in self.images.iter().enumerate() {
            out[x.images[i] as usize] = x.images[gi as usize];
        }
        Permutation { images: out }
    }

    /// The commutator `[x, y] = x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &Self, y: &Self) -> Self {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least `m ≥ 1` with `selfᵐ = 1`, as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image(x);
                len += 1;
            }
            ord = ord.lcm(&len);
        }
        ord
    }

    /// `true` for even permutations.
    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x as usize)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&a, &b)| self.images[b as usize] == other.images[a as usize])
    }

    /// Extends to a larger degree, fixing the new points, after shifting all points by `offset`.
    pub fn embed(&self, degree: usize, offset: usize) -> Self {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u16;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn product_applies_right_factor_first() {
        let p = cyc(3, "(0 1)");
        let q = cyc(3, "(1 2)");
        assert_eq!(p.product(&q).unwrap().images(), &[1, 2, 0]);
    }

    #[test]
    fn identity_and_inverse_laws() {
        let q = cyc(5, "(0 3 1)(2 4)");
        let e = Permutation::identity(5);
        assert_eq!(e.product(&q).unwrap(), q);
        assert!(q.inverse().product(&q).unwrap().is_identity());
    }

    #[test]
    fn mixed_degrees_are_rejected() {
        let err = Permutation::identity(3).product(&Permutation::identity(4));
        assert_eq!(err, Err(Error::DegreeMismatch { expected: 3, found: 4 }));
    }

    #[test]
    fn element_orders() {
        assert_eq!(cyc(5, "(0 1 2 3 4)").order(), 5);
        assert_eq!(Permutation::identity(7).order(), 1);
        assert_eq!(cyc(5, "(0 1)(2 3 4)").order(), 6);
    }

    #[test]
    fn non_bijections_are_rejected() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::parse_cycles(3, "(0 1)(1 2)").is_err());
        assert!(Permutation::parse_cycles(3, "(0 5)").is_err());
    }

    #[test]
    fn conjugation_matches_products() {
        let g = cyc(6, "(0 1 2)(4 5)");
        let x = cyc(6, "(0 3)(1 4 5)");
        assert_eq!(g.conjugate_by(&x), x.mul(&g).mul(&x.inverse()));
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = cyc(6, "(0,4,2)(1 5)");
        assert_eq!(p.to_string(), "(0 4 2)(1 5)");
        assert_eq!(cyc(6, &p.to_string()), p);
        assert_eq!(cyc(4, "()"), Permutation::identity(4));
    }
}
