//! Exact root systems, simple reflections and Weyl-word evaluation.
//!
//! Roots live in the standard Euclidean realizations with rational
//! coordinates. Simple roots follow Bourbaki numbering, except that for the
//! E types the labels of α₂ and α₃ are interchanged. Labels are 1-based.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vector = Vec<Rational64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl RootType {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "A" => RootType::A,
            "B" => RootType::B,
            "C" => RootType::C,
            "D" => RootType::D,
            "E" => RootType::E,
            "F" => RootType::F,
            "G" => RootType::G,
            other => return Err(Error::BadType(other.to_string())),
        })
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A root with its coordinates in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub coords: Vector,
    pub simple: Vec<i64>,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.simple.iter().all(|&c| c >= 0)
    }

    pub fn is_simple(&self) -> bool {
        self.simple.iter().filter(|&&c| c != 0).count() == 1 && self.simple.iter().sum::<i64>() == 1
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: RootType,
    rank: usize,
    simple: Vec<Root>,
    roots: Vec<Root>,
}

fn int(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn half(n: i64) -> Rational64 {
    Rational64::new(n, 2)
}

pub fn dot(a: &[Rational64], b: &[Rational64]) -> Rational64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `⟨β, α∨⟩ = 2(β·α)/(α·α)`.
pub fn pairing(beta: &[Rational64], alpha: &[Rational64]) -> Rational64 {
    int(2) * dot(beta, alpha) / dot(alpha, alpha)
}

/// `v − ⟨v, α∨⟩ α`.
pub fn reflect(alpha: &[Rational64], v: &[Rational64]) -> Vector {
    let c = pairing(v, alpha);
    v.iter().zip(alpha).map(|(x, a)| x - c * a).collect()
}

fn unit(dim: usize, i: usize, scale: i64) -> Vector {
    let mut v = vec![int(0); dim];
    v[i] = int(scale);
    v
}

fn diff(dim: usize, i: usize, j: usize) -> Vector {
    let mut v = vec![int(0); dim];
    v[i] = int(1);
    v[j] = int(-1);
    v
}

/// Bourbaki simple roots of E₈ in ℝ⁸.
fn e8_simple() -> Vec<Vector> {
    let mut out = vec![vec![half(1), half(-1), half(-1), half(-1), half(-1), half(-1), half(-1), half(1)]];
    let mut a2 = vec![int(0); 8];
    a2[0] = int(1);
    a2[1] = int(1);
    out.push(a2);
    for i in 0..6 {
        out.push(diff(8, i + 1, i));
    }
    out
}

fn simple_roots(kind: RootType, rank: usize) -> Result<Vec<Vector>> {
    let bad = || Error::BadType(format!("{kind}{rank}"));
    let r = rank;
    Ok(match kind {
        RootType::A if r >= 1 => (0..r).map(|i| diff(r + 1, i, i + 1)).collect(),
        RootType::B if r >= 2 => {
            let mut s: Vec<Vector> = (0..r - 1).map(|i| diff(r, i, i + 1)).collect();
            s.push(unit(r, r - 1, 1));
            s
        }
        RootType::C if r >= 2 => {
            let mut s: Vec<Vector> = (0..r - 1).map(|i| diff(r, i, i + 1)).collect();
            s.push(unit(r, r - 1, 2));
            s
        }
        RootType::D if r >= 4 => {
            let mut s: Vec<Vector> = (0..r - 1).map(|i| diff(r, i, i + 1)).collect();
            let mut last = vec![int(0); r];
            last[r - 2] = int(1);
            last[r - 1] = int(1);
            s.push(last);
            s
        }
        RootType::E if (6..=8).contains(&r) => e8_simple().into_iter().take(r).collect(),
        RootType::F if r == 4 => vec![
            diff(4, 1, 2),
            diff(4, 2, 3),
            unit(4, 3, 1),
            vec![half(1), half(-1), half(-1), half(-1)],
        ],
        RootType::G if r == 2 => vec![
            diff(3, 0, 1),
            vec![int(-2), int(1), int(1)],
        ],
        _ => return Err(bad()),
    })
}

impl RootSystem {
    pub fn new(kind: RootType, rank: usize) -> Result<Self> {
        let vectors = simple_roots(kind, rank)?;
        let simple: Vec<Root> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut c = vec![0; rank];
                c[i] = 1;
                Root {
                    coords: v.clone(),
                    simple: c,
                }
            })
            .collect();
        // All roots are the Weyl orbit of the simple roots.
        let mut seen: HashMap<Vector, Root> = HashMap::new();
        let mut queue: VecDeque<Root> = simple.iter().cloned().collect();
        for s in &simple {
            seen.insert(s.coords.clone(), s.clone());
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..rank {
                let image = reflect_root(&simple, i, &beta);
                if !seen.contains_key(&image.coords) {
                    seen.insert(image.coords.clone(), image.clone());
                    queue.push_back(image);
                }
            }
        }
        let mut roots: Vec<Root> = seen.into_values().collect();
        roots.sort_by(|a, b| a.coords.cmp(&b.coords));
        let mut rs = RootSystem {
            kind,
            rank,
            simple,
            roots,
        };
        if kind == RootType::E {
            rs.simple.swap(1, 2);
            for root in rs.simple.iter_mut().chain(rs.roots.iter_mut()) {
                root.simple.swap(1, 2);
            }
        }
        Ok(rs)
    }

    pub fn kind(&self) -> RootType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Simple roots; index 0 is α₁.
    pub fn simple_roots(&self) -> &[Root] {
        &self.simple
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_positive())
    }

    /// Simple reflection `w_{α_label}` (1-based label) applied to a root.
    pub fn reflect_simple(&self, label: usize, beta: &Root) -> Root {
        reflect_root(&self.simple, label - 1, beta)
    }

    pub fn find(&self, coords: &[Rational64]) -> Option<&Root> {
        self.roots
            .binary_search_by(|r| r.coords.as_slice().cmp(coords))
            .ok()
            .map(|i| &self.roots[i])
    }

    /// Applies `word`, rightmost reflection first.
    pub fn apply(&self, word: &WeylWord, beta: &Root) -> Root {
        word.0
            .iter()
            .rev()
            .fold(beta.clone(), |acc, &label| self.reflect_simple(label, &acc))
    }

    /// The word `w_{α₁} w_{α₃} ⋯ w_{α_r} w_{α₂}`; for rank 2 this is `w_{α₁} w_{α₂}`.
    pub fn coxeter_word(&self, convention: CoxeterConvention) -> Result<WeylWord> {
        if self.rank < 2 || (self.kind == RootType::A && self.rank == 2) {
            return Err(Error::BadType(format!(
                "{}{}: needs rank ≥ 2 and not A2",
                self.kind, self.rank
            )));
        }
        let mut word = vec![1];
        match convention {
            CoxeterConvention::Product => word.extend(3..=self.rank),
            CoxeterConvention::Literal if self.rank >= 3 => word.extend(2..=self.rank),
            CoxeterConvention::Literal => {}
        }
        word.push(2);
        Ok(WeylWord(word))
    }

    /// Evaluates `w_c(α₁)` and `w_c⁻¹(α₂)`; both must be positive and non-simple.
    pub fn lemma_positive_check(&self, convention: CoxeterConvention) -> Result<LemmaReport> {
        let word = self.coxeter_word(convention)?;
        let image_alpha1 = self.apply(&word, &self.simple[0]);
        let image_alpha2 = self.apply(&word.inverse(), &self.simple[1]);
        let report = LemmaReport {
            kind: self.kind,
            rank: self.rank,
            word: word.0.clone(),
            w_alpha1: image_alpha1.simple.clone(),
            w_inv_alpha2: image_alpha2.simple.clone(),
        };
        for (name, img) in [("w_c(a1)", &image_alpha1), ("w_c^-1(a2)", &image_alpha2)] {
            if !img.is_positive() || img.is_simple() {
                return Err(Error::CheckFailed(format!(
                    "{}{}: {name} = {:?} is {}",
                    self.kind,
                    self.rank,
                    img.simple,
                    if img.is_positive() { "simple" } else { "negative" }
                )));
            }
        }
        Ok(report)
    }
}

fn reflect_root(simple: &[Root], i: usize, beta: &Root) -> Root {
    let alpha = &simple[i];
    let c = pairing(&beta.coords, &alpha.coords);
    debug_assert!(c.is_integer());
    let ci = c.to_integer();
    let coords = beta
        .coords
        .iter()
        .zip(&alpha.coords)
        .map(|(x, a)| x - c * a)
        .collect();
    let mut s = beta.simple.clone();
    s[i] -= ci;
    Root { coords, simple: s }
}

/// Which reading of `w_{α₁}⋯w_{α_r}w_{α₂}` to use for rank ≥ 3.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoxeterConvention {
    /// `(1, 3, 4, …, r, 2)`: every simple reflection exactly once.
    #[default]
    Product,
    /// `(1, 2, …, r, 2)` read character by character.
    Literal,
}

/// A word in simple reflections (1-based labels), evaluated rightmost first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn inverse(&self) -> WeylWord {
        WeylWord(self.0.iter().rev().copied().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub kind: RootType,
    pub rank: usize,
    pub word: Vec<usize>,
    /// `w_c(α₁)` in simple-root coordinates.
    pub w_alpha1: Vec<i64>,
    /// `w_c⁻¹(α₂)` in simple-root coordinates.
    pub w_inv_alpha2: Vec<i64>,
}

/// Every (type, rank) with rank 2..=8 covered by the Coxeter-element check.
pub fn supported_types() -> Vec<(RootType, usize)> {
    let mut out = vec![(RootType::B, 2), (RootType::C, 2), (RootType::G, 2)];
    for r in 3..=8 {
        out.push((RootType::A, r));
        out.push((RootType::B, r));
        out.push((RootType::C, r));
        if r >= 4 {
            out.push((RootType::D, r));
        }
    }
    out.extend([(RootType::E, 6), (RootType::E, 7), (RootType::E, 8), (RootType::F, 4)]);
    out
}

/// Simple-root coordinates of an arbitrary vector in the root span, if integral.
pub fn is_zero_vector(v: &[Rational64]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn norm_sq(v: &[Rational64]) -> Rational64 {
    dot(v, v).abs()
}
