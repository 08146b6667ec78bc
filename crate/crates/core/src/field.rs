//! Finite fields of order at most 2¹⁶ with log/antilog tables.
//!
//! An element of GF(p^k) is encoded as the integer `Σ cᵢ pⁱ`, where `cᵢ` is
//! the coefficient of `xⁱ` in its residue modulo the defining polynomial.
//! Zero is code 0 and one is code 1.

use crate::error::{Error, Result};

pub type Elt = u16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTable {
    p: u32,
    k: u32,
    q: u32,
    /// Defining polynomial coefficients `c₀ … c_{k-1}` (monic, leading 1 omitted).
    poly: Vec<u32>,
    /// `exp[i] = αⁱ` for `0 ≤ i < 2(q-1)`.
    exp: Vec<Elt>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, k)` with `q = pᵏ`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl FieldTable {
    /// GF(pᵏ) defined by the least primitive polynomial, ordering monic
    /// polynomials by their coefficient vector read from `x^{k-1}` down to `x⁰`.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::BadParameters("extension degree must be positive".into()));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= 1 << 16);
        let q = match q {
            Some(q) => q as u32,
            None => {
                return Err(Error::FieldTooLarge(
                    (p as u64).saturating_pow(k.min(64)),
                ))
            }
        };
        for code in 0..q {
            let poly = digits(code, p, k as usize);
            if let Some(table) = Self::try_poly(p, k, q, poly) {
                return Ok(table);
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    pub fn of_order(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::BadParameters(format!("{q} is not a prime power")))?;
        Self::new(p, k)
    }

    fn try_poly(p: u32, k: u32, q: u32, poly: Vec<u32>) -> Option<Self> {
        let n = q as usize - 1;
        let mut exp = vec![0 as Elt; 2 * n];
        let mut log = vec![0u32; q as usize];
        let mut seen = vec![false; q as usize];
        // α is x for k ≥ 2 and the root -c₀ for k = 1.
        let alpha: Vec<u32> = if k == 1 {
            vec![(p - poly[0]) % p]
        } else {
            let mut v = vec![0; k as usize];
            v[1] = 1;
            v
        };
        let mut cur = vec![0u32; k as usize];
        cur[0] = 1;
        for i in 0..n {
            let code = encode(&cur, p);
            if seen[code as usize] || code == 0 {
                return None;
            }
            seen[code as usize] = true;
            exp[i] = code as Elt;
            log[code as usize] = i as u32;
            cur = poly_mul_mod(&cur, &alpha, &poly, p);
        }
        if encode(&cur, p) != 1 {
            return None;
        }
        for i in 0..n {
            exp[n + i] = exp[i];
        }
        Some(FieldTable {
            p,
            k,
            q,
            poly,
            exp,
            log,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn defining_polynomial(&self) -> &[u32] {
        &self.poly
    }

    pub fn zero(&self) -> Elt {
        0
    }

    pub fn one(&self) -> Elt {
        1
    }

    /// The primitive element α (root of the defining polynomial).
    pub fn primitive(&self) -> Elt {
        self.exp(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        0..self.q as Elt
    }

    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        if self.p == 2 {
            return a ^ b;
        }
        if self.k == 1 {
            return ((a as u32 + b as u32) % self.p) as Elt;
        }
        let (mut a, mut b) = (a as u32, b as u32);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out as Elt
    }

    pub fn neg(&self, a: Elt) -> Elt {
        if self.p == 2 {
            return a;
        }
        let mut a = a as u32;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out as Elt
    }

    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Elt) -> Elt {
        assert!(a != 0, "inverse of zero");
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    pub fn div(&self, a: Elt, b: Elt) -> Elt {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elt, e: u64) -> Elt {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// `αⁱ`.
    pub fn exp(&self, i: u64) -> Elt {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    /// Discrete log base α; `None` for zero.
    pub fn log(&self, a: Elt) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `a ↦ aᵖ`.
    pub fn frobenius(&self, a: Elt) -> Elt {
        self.pow(a, self.p as u64)
    }

    /// Elements of the prime subfield, in code order.
    pub fn prime_subfield(&self) -> Vec<Elt> {
        (0..self.p as Elt).collect()
    }

    pub fn is_square(&self, a: Elt) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize] % 2 == 0
    }
}

fn digits(mut code: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = code % p;
        code /= p;
    }
    out
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two residues modulo the monic polynomial `x^k + Σ poly[i] xⁱ`.
fn poly_mul_mod(a: &[u32], b: &[u32], poly: &[u32], p: u32) -> Vec<u32> {
    let k = poly.len();
    let mut prod = vec![0u32; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (k..2 * k).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for i in 0..k {
            prod[d - k + i] = (prod[d - k + i] + (p - c) * poly[i]) % p;
        }
    }
    prod.truncate(k);
    prod
}
