//! Group-spec grammar and faithful permutation realizations.
//!
//! ```text
//! S(n)  A(n)  C(n)  Dih(n)
//! SL(n,q) PSL(n,q) GL(n,q) PGL(n,q) SU(n,q) PSU(n,q) Sp(n,q) PSp(n,q)
//! OmegaPlus(n,q) OmegaMinus(n,q) Omega(n,q)
//! spec x spec      spec wr C2      file:<path>      ( spec )
//! ```
//!
//! Unitary groups take the subfield size: `SU(3,3)` is built over GF(9).

use std::fmt;
use std::path::PathBuf;

use serde_json::Value;

use crate::chain::StabilizerChain;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::matrix::{classical_generators, projective_action, vector_action, Classical};
use crate::perm::{Permutation, MAX_DEGREE};
use crate::structure::derived_subgroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixFamily {
    SL,
    PSL,
    GL,
    PGL,
    SU,
    PSU,
    Sp,
    PSp,
    OmegaPlus,
    OmegaMinus,
    Omega,
}

impl MatrixFamily {
    fn name(self) -> &'static str {
        match self {
            MatrixFamily::SL => "SL",
            MatrixFamily::PSL => "PSL",
            MatrixFamily::GL => "GL",
            MatrixFamily::PGL => "PGL",
            MatrixFamily::SU => "SU",
            MatrixFamily::PSU => "PSU",
            MatrixFamily::Sp => "Sp",
            MatrixFamily::PSp => "PSp",
            MatrixFamily::OmegaPlus => "OmegaPlus",
            MatrixFamily::OmegaMinus => "OmegaMinus",
            MatrixFamily::Omega => "Omega",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "SL" => MatrixFamily::SL,
            "PSL" => MatrixFamily::PSL,
            "GL" => MatrixFamily::GL,
            "PGL" => MatrixFamily::PGL,
            "SU" => MatrixFamily::SU,
            "PSU" => MatrixFamily::PSU,
            "Sp" => MatrixFamily::Sp,
            "PSp" => MatrixFamily::PSp,
            "OmegaPlus" => MatrixFamily::OmegaPlus,
            "OmegaMinus" => MatrixFamily::OmegaMinus,
            "Omega" => MatrixFamily::Omega,
            _ => return None,
        })
    }

    /// Underlying linear family and whether the realization is projective.
    fn linear(self) -> (Classical, bool) {
        match self {
            MatrixFamily::SL => (Classical::SL, false),
            MatrixFamily::PSL => (Classical::SL, true),
            MatrixFamily::GL => (Classical::GL, false),
            MatrixFamily::PGL => (Classical::GL, true),
            MatrixFamily::SU => (Classical::SU, false),
            MatrixFamily::PSU => (Classical::SU, true),
            MatrixFamily::Sp => (Classical::Sp, false),
            MatrixFamily::PSp => (Classical::Sp, true),
            MatrixFamily::OmegaPlus => (Classical::OPlus, false),
            MatrixFamily::OmegaMinus => (Classical::OMinus, false),
            MatrixFamily::Omega => (Classical::OOdd, false),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    Dihedral(usize),
    Matrix { family: MatrixFamily, n: usize, q: u32 },
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    WreathC2(Box<GroupSpec>),
    FromFile(PathBuf),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Symmetric(n) => write!(f, "S({n})"),
            GroupSpec::Alternating(n) => write!(f, "A({n})"),
            GroupSpec::Cyclic(n) => write!(f, "C({n})"),
            GroupSpec::Dihedral(n) => write!(f, "Dih({n})"),
            GroupSpec::Matrix { family, n, q } => write!(f, "{}({n},{q})", family.name()),
            GroupSpec::DirectProduct(a, b) => {
                write_operand(f, a, false)?;
                write!(f, " x ")?;
                write_operand(f, b, true)
            }
            GroupSpec::WreathC2(a) => {
                write_operand(f, a, true)?;
                write!(f, " wr C2")
            }
            GroupSpec::FromFile(p) => write!(f, "file:{}", p.display()),
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, g: &GroupSpec, strict: bool) -> fmt::Result {
    let needs = match g {
        GroupSpec::DirectProduct(..) => strict,
        GroupSpec::FromFile(_) => true,
        _ => false,
    };
    if needs {
        write!(f, "({g})")
    } else {
        write!(f, "{g}")
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut p = Parser {
            input: s,
            tokens,
            pos: 0,
        };
        let spec = p.product()?;
        if p.pos != p.tokens.len() {
            return Err(p.error("trailing input"));
        }
        Ok(spec)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Number(u64),
    Path(String),
    Open,
    Close,
    Comma,
    Times,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let err = |reason: &str| Error::SpecSyntax {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '(' {
            out.push(Token::Open);
            i += 1;
        } else if c == ')' {
            out.push(Token::Close);
            i += 1;
        } else if c == ',' {
            out.push(Token::Comma);
            i += 1;
        } else if c == '×' || c == '*' {
            out.push(Token::Times);
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Number(text.parse().map_err(|_| err("number too large"))?));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if word == "file" && chars.get(i) == Some(&':') {
                i += 1;
                let start = i;
                while i < chars.len() && !chars[i].is_whitespace() && chars[i] != ')' {
                    i += 1;
                }
                let path: String = chars[start..i].iter().collect();
                if path.is_empty() {
                    return Err(err("empty file path"));
                }
                out.push(Token::Path(path));
            } else if word == "x" {
                out.push(Token::Times);
            } else if out.last() == Some(&Token::Close) && word.len() > 1 && word.starts_with('x') {
                // `S(4)xA(5)`
                out.push(Token::Times);
                out.push(Token::Ident(word[1..].to_string()));
            } else if out.last() == Some(&Token::Close) && word.len() > 2 && word.starts_with("wr") {
                // `A(5)wrC2`
                out.push(Token::Ident("wr".into()));
                out.push(Token::Ident(word[2..].to_string()));
            } else {
                out.push(Token::Ident(word));
            }
        } else {
            return Err(err(&format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    input: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

const UNSUPPORTED: &[&str] = &[
    "Sz", "Suz", "Ree", "R", "G2", "F4", "E6", "E7", "E8", "D4", "3D4", "2F4", "2B2", "2G2",
    "2E6", "Tits",
];

impl Parser<'_> {
    fn error(&self, reason: &str) -> Error {
        Error::SpecSyntax {
            input: self.input.to_string(),
            reason: reason.to_string(),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        if self.next() == Some(t.clone()) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {t:?}")))
        }
    }

    fn product(&mut self) -> Result<GroupSpec> {
        let mut left = self.wreath()?;
        while self.peek() == Some(&Token::Times) {
            self.pos += 1;
            let right = self.wreath()?;
            left = GroupSpec::DirectProduct(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn wreath(&mut self) -> Result<GroupSpec> {
        let mut g = self.atom()?;
        while self.peek() == Some(&Token::Ident("wr".into())) {
            self.pos += 1;
            match self.next() {
                Some(Token::Ident(w)) if w == "C2" => {}
                _ => return Err(self.error("only `wr C2` is supported")),
            }
            g = GroupSpec::WreathC2(Box::new(g));
        }
        Ok(g)
    }

    fn number(&mut self) -> Result<u64> {
        match self.next() {
            Some(Token::Number(n)) => Ok(n),
            _ => Err(self.error("expected a number")),
        }
    }

    fn atom(&mut self) -> Result<GroupSpec> {
        match self.next() {
            Some(Token::Open) => {
                let g = self.product()?;
                self.expect(Token::Close)?;
                Ok(g)
            }
            Some(Token::Path(p)) => Ok(GroupSpec::FromFile(PathBuf::from(p))),
            Some(Token::Ident(name)) => {
                if UNSUPPORTED.contains(&name.as_str()) {
                    return Err(Error::UnsupportedFamily(name));
                }
                self.expect(Token::Open)?;
                let a = self.number()?;
                let b = if self.peek() == Some(&Token::Comma) {
                    self.pos += 1;
                    Some(self.number()?)
                } else {
                    None
                };
                self.expect(Token::Close)?;
                let size = |x: u64| -> Result<usize> {
                    usize::try_from(x).map_err(|_| Error::BadParameters(format!("{x} too large")))
                };
                let simple = |ctor: fn(usize) -> GroupSpec| -> Result<GroupSpec> {
                    match b {
                        None => Ok(ctor(size(a)?)),
                        Some(_) => Err(Error::BadParameters(format!("{name} takes one parameter"))),
                    }
                };
                match name.as_str() {
                    "S" => simple(GroupSpec::Symmetric),
                    "A" => simple(GroupSpec::Alternating),
                    "C" => simple(GroupSpec::Cyclic),
                    "Dih" => simple(GroupSpec::Dihedral),
                    other => {
                        let family = MatrixFamily::from_name(other)
                            .ok_or_else(|| Error::UnsupportedFamily(other.to_string()))?;
                        let q = b.ok_or_else(|| {
                            Error::BadParameters(format!("{other} takes (n, q)"))
                        })?;
                        let q = u32::try_from(q)
                            .map_err(|_| Error::FieldTooLarge(q))?;
                        Ok(GroupSpec::Matrix {
                            family,
                            n: size(a)?,
                            q,
                        })
                    }
                }
            }
            _ => Err(self.error("expected a group")),
        }
    }
}

impl GroupSpec {
    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }
}

fn cycle(n: usize, points: impl Iterator<Item = usize>) -> Permutation {
    let c: Vec<usize> = points.collect();
    Permutation::from_cycles(n, &[c]).expect("valid cycle")
}

/// Faithful permutation realization of `spec`.
///
/// Natural action for S, A, C, Dih; nonzero vectors for SL, GL, SU, Sp and the
/// Omega groups; projective points for PSL, PGL, PSU, PSp; disjoint union for
/// direct products; the imprimitive action on two blocks for `wr C2`.
pub fn realize(spec: &GroupSpec) -> Result<PermGroup> {
    match spec {
        GroupSpec::Symmetric(n) => {
            let n = check_degree(*n)?;
            let mut gens = Vec::new();
            if n >= 2 {
                gens.push(cycle(n, 0..n));
                gens.push(cycle(n, 0..2));
            }
            PermGroup::new(gens, n)
        }
        GroupSpec::Alternating(n) => {
            let n = check_degree(*n)?;
            let mut gens = Vec::new();
            if n >= 3 {
                gens.push(cycle(n, 0..3));
                if n > 3 {
                    gens.push(if n % 2 == 1 { cycle(n, 0..n) } else { cycle(n, 1..n) });
                }
            }
            PermGroup::new(gens, n)
        }
        GroupSpec::Cyclic(n) => {
            let n = check_degree(*n)?;
            let gens = if n >= 2 { vec![cycle(n, 0..n)] } else { vec![] };
            PermGroup::new(gens, n)
        }
        GroupSpec::Dihedral(n) => {
            let n = check_degree(*n)?;
            if n < 3 {
                return Err(Error::BadParameters("Dih(n) needs n ≥ 3".into()));
            }
            let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
            PermGroup::new(
                vec![cycle(n, 0..n), Permutation::from_usize_images(&reflection)?],
                n,
            )
        }
        GroupSpec::Matrix { family, n, q } => realize_matrix(*family, *n, *q),
        GroupSpec::DirectProduct(a, b) => {
            let ga = realize(a)?;
            let gb = realize(b)?;
            let d = check_degree(ga.degree() + gb.degree())?;
            let gens = ga
                .generators()
                .iter()
                .map(|g| g.embed(d, 0))
                .chain(gb.generators().iter().map(|g| g.embed(d, ga.degree())))
                .collect();
            PermGroup::new(gens, d)
        }
        GroupSpec::WreathC2(a) => {
            let ga = realize(a)?;
            let m = ga.degree();
            let d = check_degree(2 * m)?;
            let mut gens: Vec<Permutation> = ga.generators().iter().map(|g| g.embed(d, 0)).collect();
            let swap: Vec<usize> = (0..d).map(|i| (i + m) % d).collect();
            if m > 0 {
                gens.push(Permutation::from_usize_images(&swap)?);
            }
            PermGroup::new(gens, d)
        }
        GroupSpec::FromFile(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.display().to_string(),
                reason: e.to_string(),
            })?;
            let (gens, degree) = parse_generator_file(&text)?;
            PermGroup::new(gens, degree)
        }
    }
}

fn check_degree(n: usize) -> Result<usize> {
    if n > MAX_DEGREE {
        Err(Error::DegreeTooLarge(n))
    } else {
        Ok(n.max(1))
    }
}

fn realize_matrix(family: MatrixFamily, n: usize, q: u32) -> Result<PermGroup> {
    let (linear, projective) = family.linear();
    let classical = classical_generators(linear, n, q)?;
    let (perms, degree) = if projective {
        projective_action(&classical.generators)?
    } else {
        vector_action(&classical.generators)?
    };
    let g = reduce_generators(perms, degree)?;
    match family {
        MatrixFamily::OmegaPlus | MatrixFamily::OmegaMinus | MatrixFamily::Omega => {
            Ok(derived_subgroup(&g))
        }
        _ => Ok(g),
    }
}

/// Keeps each candidate that is not already in the group generated by its predecessors.
pub fn reduce_generators(candidates: Vec<Permutation>, degree: usize) -> Result<PermGroup> {
    let mut chain = StabilizerChain::trivial(degree);
    let mut kept = Vec::new();
    for p in candidates {
        if chain.add_generator(&p)? {
            kept.push(p);
        }
    }
    Ok(PermGroup::from_chain(kept, chain))
}

/// Parses `{"degree": n, "generators": [[images…] | "(cycles)", …]}`.
pub fn parse_generator_file(text: &str) -> Result<(Vec<Permutation>, usize)> {
    let bad = |reason: String| Error::BadParameters(format!("generator file: {reason}"));
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let degree = v
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing integer field `degree`".into()))? as usize;
    if degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(degree));
    }
    let gens = v
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing list field `generators`".into()))?;
    let mut out = Vec::new();
    for g in gens {
        let p = match g {
            Value::String(s) => Permutation::parse_cycles(degree, s)?,
            Value::Array(xs) => {
                let images = xs
                    .iter()
                    .map(|x| x.as_u64().map(|x| x as usize))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| bad("image arrays must hold integers".into()))?;
                let p = Permutation::from_usize_images(&images)?;
                if p.degree() != degree {
                    return Err(Error::DegreeMismatch {
                        expected: degree,
                        found: p.degree(),
                    });
                }
                p
            }
            _ => return Err(bad("generator must be an image array or cycle string".into())),
        };
        out.push(p);
    }
    Ok((out, degree))
}

/// Serializes generators as image arrays.
pub fn generator_file(g: &PermGroup) -> Value {
    serde_json::json!({
        "degree": g.degree(),
        "generators": g.generators().iter().map(|p| p.images().to_vec()).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str) -> u64 {
        realize(&s.parse().unwrap()).unwrap().order_u64()
    }

    #[test]
    fn parse_and_echo() {
        for s in ["S(5)", "PSL(3,2)", "A(5) x A(5)", "A(5) wr C2", "S(4) x A(5)", "(A(4) x C(3)) wr C2"] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(
            "S(4)xA(5)".parse::<GroupSpec>().unwrap().to_string(),
            "S(4) x A(5)"
        );
        assert_eq!("A(5)wrC2".parse::<GroupSpec>().unwrap().to_string(), "A(5) wr C2");
        assert_eq!(
            "SU(3,3)".parse::<GroupSpec>().unwrap(),
            GroupSpec::Matrix { family: MatrixFamily::SU, n: 3, q: 3 }
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("Sz(8)".parse::<GroupSpec>(), Err(Error::UnsupportedFamily(_))));
        assert!(matches!("Foo(2,3)".parse::<GroupSpec>(), Err(Error::UnsupportedFamily(_))));
        assert!("S(5".parse::<GroupSpec>().is_err());
        assert!("A(5) wr C3".parse::<GroupSpec>().is_err());
        assert!("SL(2)".parse::<GroupSpec>().is_err());
        assert!(realize(&"SL(2,6)".parse().unwrap()).is_err());
    }

    #[test]
    fn small_orders() {
        assert_eq!(order("S(5)"), 120);
        assert_eq!(order("A(6)"), 360);
        assert_eq!(order("C(7)"), 7);
        assert_eq!(order("Dih(5)"), 10);
        assert_eq!(order("A(5) x A(5)"), 3600);
        assert_eq!(order("A(5) wr C2"), 7200);
        assert_eq!(order("PSL(2,7)"), 168);
    }

    #[test]
    fn direct_product_degree() {
        let g = realize(&"A(5) x A(5)".parse().unwrap()).unwrap();
        assert_eq!(g.degree(), 10);
    }

    #[test]
    fn generator_file_accepts_cycles_and_images() {
        let (gens, d) =
            parse_generator_file(r#"{"degree": 4, "generators": ["(0 1 2 3)", [1, 0, 2, 3]]}"#)
                .unwrap();
        assert_eq!(d, 4);
        assert_eq!(PermGroup::new(gens, d).unwrap().order_u64(), 24);
        assert!(parse_generator_file(r#"{"degree": 4, "generators": [[0, 1, 2]]}"#).is_err());
        assert!(parse_generator_file(r#"{"generators": []}"#).is_err());
    }
}
