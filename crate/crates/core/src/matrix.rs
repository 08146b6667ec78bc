//! Matrices over small finite fields, the classical groups, and their
//! permutation actions on vectors and projective points.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elt, FieldTable};
use crate::perm::{Permutation, MAX_DEGREE};

/// Square matrix over a [`FieldTable`], row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGF {
    field: Arc<FieldTable>,
    n: usize,
    entries: Vec<Elt>,
}

impl MatrixGF {
    pub fn identity(field: &Arc<FieldTable>, n: usize) -> Self {
        Self::scalar(field, n, 1)
    }

    pub fn scalar(field: &Arc<FieldTable>, n: usize, c: Elt) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = c;
        }
        MatrixGF {
            field: field.clone(),
            n,
            entries,
        }
    }

    pub fn from_rows(field: &Arc<FieldTable>, rows: &[Vec<Elt>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::BadParameters("matrix must be square".into()));
        }
        if rows.iter().flatten().any(|&x| x as u32 >= field.size()) {
            return Err(Error::BadParameters("entry outside the field".into()));
        }
        Ok(MatrixGF {
            field: field.clone(),
            n,
            entries: rows.concat(),
        })
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Elt {
        self.entries[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, x: Elt) {
        self.entries[i * self.n + j] = x;
    }

    pub fn mul(&self, other: &MatrixGF) -> MatrixGF {
        let f = &self.field;
        let n = self.n;
        let mut out = MatrixGF::scalar(f, n, 0);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc = f.add(acc, f.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn transpose(&self) -> MatrixGF {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(j, i));
            }
        }
        out
    }

    /// Entrywise `a ↦ a^e`, e.g. the unitary conjugation.
    pub fn map_power(&self, e: u64) -> MatrixGF {
        MatrixGF {
            field: self.field.clone(),
            n: self.n,
            entries: self.entries.iter().map(|&a| self.field.pow(a, e)).collect(),
        }
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Elt {
        let f = &self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = 1;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let p = a[col * n + col];
            det = f.mul(det, p);
            let pinv = f.inv(p);
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let v = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    a[r * n + j] = v;
                }
            }
        }
        det
    }

    pub fn apply(&self, v: &[Elt]) -> Vec<Elt> {
        let f = &self.field;
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(0, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j])))
            })
            .collect()
    }

    pub fn is_scalar(&self) -> bool {
        let c = self.get(0, 0);
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == if i == j { c } else { 0 }))
    }
}

/// The sesquilinear or quadratic form a classical group preserves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Form {
    /// `B(x, y) = xᵀ J y` with `J` alternating.
    Alternating(MatrixGF),
    /// `H(x, y) = xᵀ J ȳ`, where `ā = a^conj_exp`.
    Hermitian { gram: MatrixGF, conj_exp: u64 },
    /// `Q(x) = Σ_{i ≤ j} c_ij x_i x_j`, stored as the upper-triangular coefficient matrix.
    Quadratic(MatrixGF),
}

impl Form {
    /// Whether `m` preserves the form exactly.
    pub fn is_preserved_by(&self, m: &MatrixGF) -> bool {
        match self {
            Form::Alternating(j) => m.transpose().mul(j).mul(m) == *j,
            Form::Hermitian { gram, conj_exp } => {
                m.transpose().mul(gram).mul(&m.map_power(*conj_exp)) == *gram
            }
            Form::Quadratic(c) => {
                let b = polar_gram(c);
                let f = m.field();
                m.transpose().mul(&b).mul(m) == b
                    && (0..m.dim()).all(|i| {
                        let col: Vec<Elt> = (0..m.dim()).map(|r| m.get(r, i)).collect();
                        let mut e = vec![0; m.dim()];
                        e[i] = 1;
                        quadratic_value(f, c, &col) == quadratic_value(f, c, &e)
                    })
            }
        }
    }
}

/// Gram matrix of the polar form `B(x,y) = Q(x+y) - Q(x) - Q(y)`.
pub fn polar_gram(c: &MatrixGF) -> MatrixGF {
    let f = c.field().clone();
    let n = c.dim();
    let mut b = MatrixGF::scalar(&f, n, 0);
    for i in 0..n {
        for j in 0..n {
            let v = match i.cmp(&j) {
                std::cmp::Ordering::Less => c.get(i, j),
                std::cmp::Ordering::Greater => c.get(j, i),
                std::cmp::Ordering::Equal => f.add(c.get(i, i), c.get(i, i)),
            };
            b.set(i, j, v);
        }
    }
    b
}

pub fn quadratic_value(f: &FieldTable, c: &MatrixGF, x: &[Elt]) -> Elt {
    let n = x.len();
    let mut acc = 0;
    for i in 0..n {
        for j in i..n {
            acc = f.add(acc, f.mul(c.get(i, j), f.mul(x[i], x[j])));
        }
    }
    acc
}

/// Matrix families that have a natural linear representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classical {
    GL,
    SL,
    /// Special unitary group; the parameter `q` is the subfield size, built over GF(q²).
    SU,
    Sp,
    /// Full orthogonal group of plus type (hyperbolic form).
    OPlus,
    /// Full orthogonal group of minus type.
    OMinus,
    /// Full orthogonal group in odd dimension, odd characteristic.
    OOdd,
}

/// Generators of a classical matrix group together with its form.
#[derive(Clone, Debug)]
pub struct ClassicalGenerators {
    pub family: Classical,
    pub n: usize,
    pub q: u32,
    pub field: Arc<FieldTable>,
    pub form: Option<Form>,
    pub generators: Vec<MatrixGF>,
}

/// The fixed generator list for `family` in dimension `n` over the field of
/// size `q` (`q²` for unitary groups).
///
/// * GL, SL: elementary transvections `I + t·E_ij` for `t` in the power basis
///   of GF(q) over its prime field, plus `diag(α, 1, …)` for GL.
/// * Sp: all symplectic transvections `x ↦ x + a·B(x,v)·v` for `v` a projective
///   point and `a ∈ {1, ω}` with `ω` a non-square, preserving the antidiagonal form.
/// * SU: all unitary transvections for the identity Hermitian form, plus
///   `diag(λ, λ⁻¹, 1, …)` with `λ` of order `q+1` and signed adjacent swaps.
/// * Orthogonal: reflections (orthogonal transvections in characteristic 2)
///   in every nonsingular projective point.
///
/// Every generator is checked against the declared form.
pub fn classical_generators(family: Classical, n: usize, q: u32) -> Result<ClassicalGenerators> {
    if n == 0 {
        return Err(Error::BadParameters("dimension must be positive".into()));
    }
    let field_size = match family {
        Classical::SU => q.checked_mul(q).filter(|&s| s <= 1 << 16).ok_or(Error::FieldTooLarge(q as u64 * q as u64))?,
        _ => q,
    };
    let field = Arc::new(FieldTable::of_order(field_size)?);
    let f = &field;
    let (generators, form) = match family {
        Classical::GL | Classical::SL => {
            if family == Classical::SL && n < 2 {
                return Err(Error::BadParameters("SL needs dimension at least 2".into()));
            }
            let mut gens = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for e in 0..f.degree() {
                        let mut m = MatrixGF::identity(f, n);
                        m.set(i, j, f.exp(e as u64));
                        gens.push(m);
                    }
                }
            }
            if family == Classical::GL && f.size() > 2 {
                let mut d = MatrixGF::identity(f, n);
                d.set(0, 0, f.primitive());
                gens.push(d);
            }
            (gens, None)
        }
        Classical::Sp => {
            if n % 2 != 0 {
                return Err(Error::BadParameters(format!("Sp needs even dimension, got {n}")));
            }
            let j = antidiagonal_alternating(f, n);
            let mut scalars = vec![1];
            if f.characteristic() != 2 {
                scalars.push(f.primitive());
            }
            let mut gens = Vec::new();
            for v in projective_points(f, n) {
                let jv = j.apply(&v);
                for &a in &scalars {
                    gens.push(rank_one_update(f, &v, &jv, a));
                }
            }
            (gens, Some(Form::Alternating(j)))
        }
        Classical::SU => {
            if n < 2 {
                return Err(Error::BadParameters("SU needs dimension at least 2".into()));
            }
            let conj = q as u64;
            let gram = MatrixGF::identity(f, n);
            let a0 = f
                .elements()
                .find(|&a| a != 0 && f.add(a, f.pow(a, conj)) == 0)
                .expect("trace-zero elements exist");
            let mut gens = Vec::new();
            for v in projective_points(f, n) {
                let norm = v.iter().fold(0, |acc, &x| f.add(acc, f.mul(x, f.pow(x, conj))));
                if norm != 0 {
                    continue;
                }
                let vbar: Vec<Elt> = v.iter().map(|&x| f.pow(x, conj)).collect();
                gens.push(rank_one_update(f, &v, &vbar, a0));
            }
            let lambda = f.exp(q as u64 - 1);
            let mut d = MatrixGF::identity(f, n);
            d.set(0, 0, lambda);
            d.set(1, 1, f.inv(lambda));
            gens.push(d);
            for i in 0..n - 1 {
                let mut s = MatrixGF::scalar(f, n, 0);
                for k in 0..n {
                    if k != i && k != i + 1 {
                        s.set(k, k, 1);
                    }
                }
                s.set(i, i + 1, 1);
                s.set(i + 1, i, f.neg(1));
                gens.push(s);
            }
            // SU(3,2) is not generated by transvections and monomial matrices;
            // the 3×3 character-table matrix supplies the missing elements.
            if n >= 3 && (f.size() - 1) % 3 == 0 {
                let w = f.exp((f.size() as u64 - 1) / 3);
                let mut m = MatrixGF::identity(f, n);
                for i in 0..3 {
                    for j in 0..3 {
                        m.set(i, j, f.pow(w, (i * j) as u64));
                    }
                }
                let form = Form::Hermitian { gram: gram.clone(), conj_exp: conj };
                if m.det() != 0 && form.is_preserved_by(&m) {
                    let d = f.inv(m.det());
                    for j in 0..n {
                        m.set(0, j, f.mul(d, m.get(0, j)));
                    }
                    // Its conjugate by diag(w, 1, …) ∈ GU is another element of SU.
                    let mut twisted = m.clone();
                    for j in 0..n {
                        twisted.set(0, j, f.mul(w, twisted.get(0, j)));
                        twisted.set(j, 0, f.div(twisted.get(j, 0), w));
                    }
                    gens.push(m);
                    gens.push(twisted);
                }
            }
            (gens, Some(Form::Hermitian { gram, conj_exp: conj }))
        }
        Classical::OPlus | Classical::OMinus | Classical::OOdd => {
            let c = orthogonal_form(f, family, n)?;
            let b = polar_gram(&c);
            let mut gens = Vec::new();
            for v in projective_points(f, n) {
                let qv = quadratic_value(f, &c, &v);
                if qv == 0 {
                    continue;
                }
                let bv = b.apply(&v);
                gens.push(rank_one_update(f, &v, &bv, f.neg(f.inv(qv))));
            }
            (gens, Some(Form::Quadratic(c)))
        }
    };
    for g in &generators {
        if g.det() == 0 {
            return Err(Error::BadParameters("singular generator".into()));
        }
        if matches!(family, Classical::SL | Classical::SU | Classical::Sp) && g.det() != 1 {
            return Err(Error::BadParameters("generator with determinant ≠ 1".into()));
        }
        if let Some(form) = &form {
            if !form.is_preserved_by(g) {
                return Err(Error::DegenerateForm("generator does not preserve the form".into()));
            }
        }
    }
    Ok(ClassicalGenerators {
        family,
        n,
        q,
        field,
        form,
        generators,
    })
}

/// `I + a·v·wᵀ`, i.e. `x ↦ x + a·(wᵀx)·v`.
fn rank_one_update(f: &Arc<FieldTable>, v: &[Elt], w: &[Elt], a: Elt) -> MatrixGF {
    let n = v.len();
    let mut m = MatrixGF::identity(f, n);
    for i in 0..n {
        for j in 0..n {
            let x = f.add(m.get(i, j), f.mul(a, f.mul(v[i], w[j])));
            m.set(i, j, x);
        }
    }
    m
}

/// `J[i][n-1-i] = 1` for `i < n/2` and `-1` otherwise.
pub fn antidiagonal_alternating(f: &Arc<FieldTable>, n: usize) -> MatrixGF {
    let mut j = MatrixGF::scalar(f, n, 0);
    for i in 0..n {
        j.set(i, n - 1 - i, if i < n / 2 { 1 } else { f.neg(1) });
    }
    j
}

/// Upper-triangular coefficients of the standard quadratic form of each orthogonal type.
pub fn orthogonal_form(f: &Arc<FieldTable>, family: Classical, n: usize) -> Result<MatrixGF> {
    let mut c = MatrixGF::scalar(f, n, 0);
    match family {
        Classical::OPlus | Classical::OMinus => {
            if n < 2 || n % 2 != 0 {
                return Err(Error::BadParameters(format!(
                    "plus/minus type orthogonal groups need even dimension, got {n}"
                )));
            }
            let m = n / 2;
            let hyperbolic = if family == Classical::OPlus { m } else { m - 1 };
            for i in 0..hyperbolic {
                c.set(i, n - 1 - i, 1);
            }
            if family == Classical::OMinus {
                // x² + xy + νy², anisotropic for the least ν making t² + t + ν irreducible.
                let nu = f
                    .elements()
                    .find(|&nu| f.elements().all(|t| f.add(f.add(f.mul(t, t), t), nu) != 0))
                    .expect("an irreducible quadratic exists");
                c.set(m - 1, m - 1, 1);
                c.set(m - 1, m, 1);
                c.set(m, m, nu);
            }
        }
        Classical::OOdd => {
            if n % 2 != 1 {
                return Err(Error::BadParameters(format!(
                    "odd-dimensional orthogonal group needs odd dimension, got {n}"
                )));
            }
            if f.characteristic() == 2 {
                return Err(Error::DegenerateForm(
                    "odd-dimensional quadratic forms are degenerate in characteristic 2".into(),
                ));
            }
            let m = n / 2;
            for i in 0..m {
                c.set(i, n - 1 - i, 1);
            }
            c.set(m, m, 1);
        }
        _ => unreachable!("not an orthogonal family"),
    }
    Ok(c)
}

/// Big-endian base-q code of a vector; preserves lexicographic order.
fn vector_code(q: u64, v: &[Elt]) -> u64 {
    v.iter().fold(0, |acc, &x| acc * q + x as u64)
}

fn vector_from_code(q: u64, n: usize, mut code: u64) -> Vec<Elt> {
    let mut v = vec![0; n];
    for x in v.iter_mut().rev() {
        *x = (code % q) as Elt;
        code /= q;
    }
    v
}

/// Scales so that the first nonzero coordinate is 1.
fn normalize(f: &FieldTable, v: &mut [Elt]) {
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        let inv = f.inv(lead);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
    }
}

/// Normalized representatives of the projective points, in lexicographic order.
pub fn projective_points(f: &FieldTable, n: usize) -> Vec<Vec<Elt>> {
    let q = f.size() as u64;
    let mut out = Vec::new();
    // Normalized vectors: zeros, then 1, then anything.
    for lead in 0..n {
        let tail = n - lead - 1;
        for code in 0..q.pow(tail as u32) {
            let mut v = vec![0; n];
            v[lead] = 1;
            v[lead + 1..].copy_from_slice(&vector_from_code(q, tail, code));
            out.push(v);
        }
    }
    out.sort_by_key(|v| vector_code(q, v));
    out
}

fn common_field(gens: &[MatrixGF]) -> Result<(Arc<FieldTable>, usize)> {
    let first = gens
        .first()
        .ok_or_else(|| Error::BadParameters("no generators".into()))?;
    for g in gens {
        if g.dim() != first.dim() || g.field() != first.field() {
            return Err(Error::BadParameters("generators over different spaces".into()));
        }
    }
    Ok((first.field().clone(), first.dim()))
}

fn projective_size(q: u64, n: usize) -> u64 {
    (q.pow(n as u32) - 1) / (q - 1)
}

/// Action on projective points (first nonzero coordinate 1, lexicographic order).
///
/// The kernel is the group of scalar matrices.
pub fn projective_action(gens: &[MatrixGF]) -> Result<(Vec<Permutation>, usize)> {
    let (f, n) = common_field(gens)?;
    let q = f.size() as u64;
    let degree = q
        .checked_pow(n as u32)
        .map(|_| projective_size(q, n))
        .unwrap_or(u64::MAX);
    if degree > MAX_DEGREE as u64 {
        return Err(Error::DegreeTooLarge(degree.min(usize::MAX as u64) as usize));
    }
    let points = projective_points(&f, n);
    let index: HashMap<u64, u16> = points
        .iter()
        .enumerate()
        .map(|(i, v)| (vector_code(q, v), i as u16))
        .collect();
    let perms = gens
        .iter()
        .map(|m| {
            let images = points
                .iter()
                .map(|v| {
                    let mut w = m.apply(v);
                    normalize(&f, &mut w);
                    index[&vector_code(q, &w)]
                })
                .collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((perms, points.len()))
}

/// Action on the nonzero vectors of the natural module, in lexicographic
/// order; faithful for any group of invertible matrices.
pub fn vector_action(gens: &[MatrixGF]) -> Result<(Vec<Permutation>, usize)> {
    let (f, n) = common_field(gens)?;
    let q = f.size() as u64;
    let total = q.checked_pow(n as u32).unwrap_or(u64::MAX);
    if total - 1 > MAX_DEGREE as u64 {
        return Err(Error::DegreeTooLarge((total - 1).min(usize::MAX as u64) as usize));
    }
    let degree = (total - 1) as usize;
    let perms = gens
        .iter()
        .map(|m| {
            let images = (1..total)
                .map(|code| {
                    let w = m.apply(&vector_from_code(q, n, code));
                    (vector_code(q, &w) - 1) as u16
                })
                .collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((perms, degree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::StabilizerChain;

    fn order_of(perms: &[Permutation], degree: usize) -> u64 {
        StabilizerChain::build(perms, degree).unwrap().order_u64().unwrap()
    }

    #[test]
    fn sl23_generators_have_determinant_one() {
        let c = classical_generators(Classical::SL, 2, 3).unwrap();
        assert!(c.generators.iter().all(|g| g.det() == 1));
        let (perms, deg) = vector_action(&c.generators).unwrap();
        assert_eq!(deg, 8);
        assert_eq!(order_of(&perms, deg), 24);
    }

    #[test]
    fn sl23_projective_image_is_a4() {
        let c = classical_generators(Classical::SL, 2, 3).unwrap();
        let (perms, deg) = projective_action(&c.generators).unwrap();
        assert_eq!(deg, 4);
        assert_eq!(order_of(&perms, deg), 12);
    }

    #[test]
    fn scalar_matrix_acts_trivially_on_points() {
        let f = Arc::new(FieldTable::new(5, 1).unwrap());
        let s = MatrixGF::scalar(&f, 3, 2);
        let (perms, deg) = projective_action(&[s]).unwrap();
        assert_eq!(deg, 31);
        assert!(perms[0].is_identity());
    }

    #[test]
    fn sp43_orders() {
        let c = classical_generators(Classical::Sp, 4, 3).unwrap();
        let (perms, deg) = vector_action(&c.generators).unwrap();
        assert_eq!(order_of(&perms, deg), 51840);
        let (perms, deg) = projective_action(&c.generators).unwrap();
        assert_eq!(deg, 40);
        assert_eq!(order_of(&perms, deg), 25920);
    }

    #[test]
    fn su33_order() {
        let c = classical_generators(Classical::SU, 3, 3).unwrap();
        assert_eq!(c.field.size(), 9);
        let (perms, deg) = vector_action(&c.generators).unwrap();
        assert_eq!(order_of(&perms, deg), 6048);
    }

    #[test]
    fn determinant_and_forms() {
        let f = Arc::new(FieldTable::new(3, 1).unwrap());
        let m = MatrixGF::from_rows(&f, &[vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(m.det(), 2);
        let j = antidiagonal_alternating(&f, 2);
        // In dimension two, every determinant-one matrix is symplectic.
        let s = MatrixGF::from_rows(&f, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert!(Form::Alternating(j.clone()).is_preserved_by(&s));
        assert!(!Form::Alternating(j).is_preserved_by(&m));
    }

    #[test]
    fn projective_points_are_lexicographic() {
        let f = FieldTable::new(3, 1).unwrap();
        let pts = projective_points(&f, 2);
        assert_eq!(pts, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn odd_orthogonal_in_characteristic_two_is_rejected() {
        assert!(matches!(
            classical_generators(Classical::OOdd, 5, 4),
            Err(Error::DegenerateForm(_))
        ));
        assert!(classical_generators(Classical::Sp, 3, 3).is_err());
    }
}
