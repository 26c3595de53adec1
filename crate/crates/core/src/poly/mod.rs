//! Sparse homogeneous multivariate polynomials over a [`Field`].
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! descending graded-lex: iteration starts at the leading term, so printing
//! and comparison are deterministic.

mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::ScalarMatrix;

pub use parse::parse_poly;

/// Largest number of variables a polynomial may carry.
pub const MAX_VARS: usize = 8;

/// Dense exponent vector. Unused trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(i: usize) -> Monomial {
        let mut m = Monomial::default();
        m.exps[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Monomial> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                got: exps.len(),
                max: MAX_VARS,
            });
        }
        let mut m = Monomial::default();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u8::try_from(e).map_err(|_| Error::ExponentTooLarge(e as u64))?;
        }
        Ok(m)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = a
                .checked_add(*b)
                .ok_or(Error::ExponentTooLarge(*a as u64 + *b as u64))?;
        }
        Ok(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut m = *other;
        for (a, b) in m.exps.iter_mut().zip(self.exps.iter()) {
            *a -= b;
        }
        m
    }

    pub(crate) fn with_exponent(mut self, i: usize, e: u8) -> Monomial {
        self.exps[i] = e;
        self
    }

    /// Product of factorials of the exponents.
    pub fn factorial_weight(&self) -> u64 {
        self.exps
            .iter()
            .map(|&e| (1..=e as u64).product::<u64>())
            .product()
    }

    pub(crate) fn fmt_vars(&self, f: &mut fmt::Formatter<'_>, nvars: usize) -> fmt::Result {
        let mut first = true;
        for i in 0..nvars {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// All monomials of total degree `d` in `nvars` variables, in the same
/// (descending graded-lex) order the term maps use.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, nvars: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur.exps[i] = left as u8;
            out.push(*cur);
            cur.exps[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur.exps[i] = e as u8;
            rec(i + 1, nvars, left - e, cur, out);
        }
        cur.exps[i] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    rec(0, nvars, d, &mut Monomial::default(), &mut out);
    out
}

/// `C(d + nvars - 1, nvars - 1)`, the dimension of the degree-`d` piece.
pub fn count_monomials(nvars: usize, d: u32) -> usize {
    let (n, k) = (d as u128 + nvars as u128 - 1, nvars as u128 - 1);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r as usize
}

/// A homogeneous polynomial. The zero polynomial has no terms and no degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: Field, nvars: usize) -> MultiPoly {
        assert!((1..=MAX_VARS).contains(&nvars), "nvars out of range");
        MultiPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> MultiPoly {
        MultiPoly::monomial(field, nvars, Monomial::one(), c)
    }

    pub fn monomial(field: Field, nvars: usize, m: Monomial, c: Scalar) -> MultiPoly {
        let mut p = MultiPoly::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> MultiPoly {
        MultiPoly::monomial(field, nvars, Monomial::var(i), field.one())
    }

    /// The linear form `sum c_i x_i`.
    pub fn linear_form(field: Field, coeffs: &[Scalar]) -> MultiPoly {
        let mut p = MultiPoly::zero(field, coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var(i), c.clone());
            }
        }
        p
    }

    /// Builds a polynomial from terms, summing repeated monomials and
    /// checking homogeneity.
    pub fn from_terms(
        field: Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<MultiPoly> {
        if nvars == 0 || nvars > MAX_VARS {
            return Err(Error::TooManyVariables {
                got: nvars,
                max: MAX_VARS,
            });
        }
        let mut p = MultiPoly::zero(field, nvars);
        for (m, c) in terms {
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            if let Some(i) = (nvars..MAX_VARS).find(|&i| m.exps[i] != 0) {
                return Err(Error::VariableOutOfRange { index: i, nvars });
            }
            p.add_term(m, &c);
        }
        p.check_homogeneous()?;
        Ok(p)
    }

    fn check_homogeneous(&self) -> Result<()> {
        let mut it = self.terms.keys();
        if let Some(first) = it.next() {
            let d = first.degree();
            for m in it {
                if m.degree() != d {
                    return Err(Error::Inhomogeneous(d, m.degree()));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    /// Degree with the `-1` sentinel for zero.
    pub fn degree_or_neg(&self) -> i64 {
        self.degree().map_or(-1, |d| d as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next()
    }

    /// Bitmask of variables that occur.
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0;
        for m in self.terms.keys() {
            for i in 0..self.nvars {
                if m.exps[i] != 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    fn compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(other)?;
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            if a != b {
                return Err(Error::DegreeMismatch(a, b));
            }
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MultiPoly::zero(self.field, self.nvars));
        }
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb)?;
                let prod = ca * cb;
                acc.entry(m)
                    .and_modify(|v| *v += &prod)
                    .or_insert(prod);
            }
        }
        Ok(MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        assert_eq!(c.field(), self.field, "mixed-field scaling");
        if c.is_zero() {
            return MultiPoly::zero(self.field, self.nvars);
        }
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> MultiPoly {
        self.scale(&self.field.from_i64(c))
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.field, self.nvars, self.field.one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `d f / d x_i`.
    pub fn partial(&self, i: usize) -> Result<MultiPoly> {
        if i >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut out = MultiPoly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let nm = m.with_exponent(i, e - 1);
            out.add_term(nm, &(c * &self.field.from_i64(e as i64)));
        }
        Ok(out)
    }

    /// Applies the constant-coefficient operator `prod (d/dx_i)^{e_i}`.
    pub fn apply_operator(&self, op: &Monomial) -> MultiPoly {
        let mut out = self.clone();
        for i in 0..self.nvars {
            for _ in 0..op.exps[i] {
                out = out.partial(i).expect("index in range");
            }
        }
        out
    }

    /// `sum_i v_i d f / d x_i`.
    pub fn directional(&self, v: &[Scalar]) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field, self.nvars);
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            out = &out + &self.partial(i).expect("index in range").scale(vi);
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut sum = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exps[i];
                if e > 0 {
                    t = &t * &x.pow(e as u32);
                }
            }
            sum += &t;
        }
        Ok(sum)
    }

    /// Substitutes `x_j -> images[j]` where every image is a polynomial in a
    /// common (possibly different) set of variables.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let (field, nv) = (images[0].field, images[0].nvars);
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|im| vec![MultiPoly::constant(field, nv, field.one()), im.clone()])
            .collect();
        let mut out = MultiPoly::zero(field, nv);
        let mut seen_degree: Option<u32> = None;
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(field, nv, c.clone());
            for j in 0..self.nvars {
                let e = m.exps[j] as usize;
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e {
                    let next = &powers[j][powers[j].len() - 1] * &images[j];
                    powers[j].push(next);
                }
                t = &t * &powers[j][e];
            }
            if let (Some(d0), Some(d)) = (seen_degree, t.degree()) {
                if d0 != d {
                    return Err(Error::Inhomogeneous(d0, d));
                }
            }
            if t.degree().is_some() {
                seen_degree = t.degree();
            }
            for (mm, cc) in &t.terms {
                out.add_term(*mm, cc);
            }
        }
        Ok(out)
    }

    /// `x_j -> sum_k rows[j][k] y_k`; `rows` has one row per old variable.
    pub fn substitute_linear(&self, rows: &[Vec<Scalar>]) -> Result<MultiPoly> {
        let images: Vec<MultiPoly> = rows
            .iter()
            .map(|r| MultiPoly::linear_form(self.field, r))
            .collect();
        if let Some(r) = rows.first() {
            if rows.iter().any(|x| x.len() != r.len()) {
                return Err(Error::Dimension("ragged substitution matrix".into()));
            }
        }
        self.substitute(&images)
    }

    /// Places this polynomial into `nvars` variables, shifting its variables
    /// up by `offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Result<MultiPoly> {
        if offset + self.nvars > nvars || nvars > MAX_VARS {
            return Err(Error::Dimension(format!(
                "cannot embed {} variables at offset {offset} into {nvars}",
                self.nvars
            )));
        }
        let mut out = MultiPoly::zero(self.field, nvars);
        for (m, c) in &self.terms {
            let mut nm = Monomial::default();
            for i in 0..self.nvars {
                nm.exps[i + offset] = m.exps[i];
            }
            out.terms.insert(nm, c.clone());
        }
        Ok(out)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() || self.compatible(d).is_err() {
            return None;
        }
        let (dm, dc) = d.leading().map(|(m, c)| (*m, c.clone()))?;
        let dinv = dc.inv()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.field, self.nvars);
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            if !dm.divides(&rm) {
                return None;
            }
            let qm = dm.quotient_of(&rm);
            let qc = &rc * &dinv;
            quot.add_term(qm, &qc);
            let term = MultiPoly::monomial(self.field, self.nvars, qm, qc);
            rem = &rem - &(&term * d);
        }
        Some(quot)
    }

    /// Equality up to a nonzero scalar; returns `c` with `other = c * self`.
    pub fn proportional_to(&self, other: &MultiPoly) -> Option<Scalar> {
        if self.compatible(other).is_err() {
            return None;
        }
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let (m, a) = self.leading()?;
        let b = other.terms.get(m)?;
        let c = b.checked_div(a)?;
        if self.scale(&c) == *other {
            Some(c)
        } else {
            None
        }
    }

    pub fn map_coeffs(&self, field: Field, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(field, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(*m, &f(c)?);
        }
        Ok(out)
    }

    /// Reduces a rational polynomial into another field.
    pub fn to_field(&self, field: Field) -> Result<MultiPoly> {
        if field == self.field {
            return Ok(self.clone());
        }
        self.map_coeffs(field, |c| match c {
            Scalar::Rat(q) => field.from_rational(q),
            Scalar::Mod(..) => Err(Error::FieldMismatch),
        })
    }

    /// Canonical text form (the same grammar the parser accepts).
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_const = m.degree() == 0;
            if is_const {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                m.fmt_vars(f, self.nvars)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}; {}]({})", self.field, self.nvars, self)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.try_add(o).expect("incompatible polynomial addition")
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.try_sub(o).expect("incompatible polynomial subtraction")
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.try_mul(o).expect("incompatible polynomial multiplication")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

/// An invertible linear change of variables `x -> A x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    matrix: ScalarMatrix,
}

impl LinearChange {
    pub fn new(matrix: ScalarMatrix) -> Result<LinearChange> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::Dimension("linear change must be square".into()));
        }
        if matrix.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(LinearChange { matrix })
    }

    pub fn identity(field: Field, n: usize) -> LinearChange {
        LinearChange {
            matrix: ScalarMatrix::identity(field, n),
        }
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn det(&self) -> Scalar {
        self.matrix.det().expect("square")
    }

    pub fn inverse(&self) -> LinearChange {
        LinearChange {
            matrix: self.matrix.inverse().expect("invertible by construction"),
        }
    }
}

/// `f(A x)`.
pub fn change_coords(f: &MultiPoly, a: &LinearChange) -> Result<MultiPoly> {
    if a.size() != f.nvars() {
        return Err(Error::Dimension(format!(
            "{}x{} change for {} variables",
            a.size(),
            a.size(),
            f.nvars()
        )));
    }
    if a.matrix.field() != f.field() {
        return Err(Error::FieldMismatch);
    }
    f.substitute_linear(&a.matrix.to_rows())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(text: &str, n: usize) -> MultiPoly {
        parse_poly(text, n, Field::Rational).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = q("x0 + x1", 2);
        let b = q("x0 - x1", 2);
        assert_eq!(&a * &b, q("x0^2 - x1^2", 2));
    }

    #[test]
    fn multinomial_cube() {
        let c = q("(x0+x1+x2)^3", 3);
        assert_eq!(c.num_terms(), 10);
        let m = Monomial::from_exponents(&[1, 1, 1]).unwrap();
        assert_eq!(c.coeff(&m), Field::Rational.from_i64(6));
    }

    #[test]
    fn add_negation_is_zero() {
        let f = q("x0^3 + 2*x1^3 - x0*x1*x2", 3);
        let z = &f + &-&f;
        assert!(z.is_zero());
        assert_eq!(z.degree_or_neg(), -1);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = q("x0^2", 2);
        let b = q("x1^3", 2);
        assert_eq!(a.try_add(&b), Err(Error::DegreeMismatch(2, 3)));
        assert!(a.try_add(&q("x0", 3)).is_err());
    }

    #[test]
    fn partials() {
        assert_eq!(q("x0^3", 1).partial(0).unwrap(), q("3*x0^2", 1));
        let fermat = q("x0^3+x1^3+x2^3", 3);
        assert_eq!(fermat.partial(1).unwrap(), q("3*x1^2", 3));
        assert!(q("x0^3", 1).partial(0).unwrap().partial(0).unwrap().partial(0).unwrap().degree() == Some(0));
        assert!(fermat.partial(3).is_err());
    }

    #[test]
    fn swap_coordinates() {
        let f = q("x0^3 + 2*x1^3", 2);
        let swap = ScalarMatrix::from_i64_rows(Field::Rational, &[vec![0, 1], vec![1, 0]]);
        let a = LinearChange::new(swap).unwrap();
        assert_eq!(change_coords(&f, &a).unwrap(), q("2*x0^3 + x1^3", 2));
        let id = LinearChange::identity(Field::Rational, 2);
        assert_eq!(change_coords(&f, &id).unwrap(), f);
    }

    #[test]
    fn singular_change_refused() {
        let m = ScalarMatrix::from_i64_rows(Field::Rational, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(LinearChange::new(m), Err(Error::Singular));
    }

    #[test]
    fn exact_division() {
        let f = q("x0^3 - x1^3", 2);
        let l = q("x0 - x1", 2);
        assert_eq!(f.div_exact(&l).unwrap(), q("x0^2 + x0*x1 + x1^2", 2));
        assert!(f.div_exact(&q("x0 + x1", 2)).is_none());
    }

    #[test]
    fn monomial_enumeration_matches_count() {
        for n in 1..=6 {
            for d in 0..=5 {
                let ms = monomials_of_degree(n, d);
                assert_eq!(ms.len(), count_monomials(n, d));
                let mut sorted = ms.clone();
                sorted.sort();
                assert_eq!(sorted, ms);
            }
        }
    }

    #[test]
    fn printing() {
        let h = q("216*x0*x1*x2", 3);
        assert_eq!(h.to_string(), "216*x0*x1*x2");
        assert_eq!(q("-x0^2 + 1/2*x1^2", 2).to_string(), "-x0^2 + 1/2*x1^2");
        assert_eq!(q("x0 - 3*x1", 2).to_string(), "x0 - 3*x1");
    }
}
