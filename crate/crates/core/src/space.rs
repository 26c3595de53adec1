//! Projective points and linear subspaces of projective space.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::ScalarMatrix;
use crate::poly::MultiPoly;

/// A point of projective space, scaled so the first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint {
    coords: Vec<Scalar>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<ProjPoint> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(Error::ZeroPoint)?
            .clone();
        let field = lead.field();
        if coords.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let inv = lead.inv().expect("nonzero lead");
        Ok(ProjPoint {
            coords: coords.iter().map(|c| c * &inv).collect(),
        })
    }

    pub fn from_i64(field: Field, coords: &[i64]) -> Result<ProjPoint> {
        ProjPoint::new(coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    /// The coordinate point `e_i`.
    pub fn coordinate(field: Field, nvars: usize, i: usize) -> ProjPoint {
        let mut c = vec![field.zero(); nvars];
        c[i] = field.one();
        ProjPoint { coords: c }
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses `[a:b:c]` or `a,b,c` (entries may be `p/q`).
    pub fn parse(text: &str, field: Field) -> Result<ProjPoint> {
        let t = text.trim().trim_start_matches('[').trim_end_matches(']');
        let sep = if t.contains(':') { ':' } else { ',' };
        let coords = t
            .split(sep)
            .map(|s| field.parse_scalar(s.trim()))
            .collect::<Result<Vec<_>>>()?;
        ProjPoint::new(coords)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A linear subspace of P^n, held both as the span of independent points
/// and as the common zero set of independent linear forms.
#[derive(Clone, Debug)]
pub struct LinearSpace {
    nvars: usize,
    basis: Vec<ProjPoint>,
    forms: Vec<MultiPoly>,
}

impl LinearSpace {
    /// Span of the given points, which must be independent.
    pub fn from_points(points: Vec<ProjPoint>) -> Result<LinearSpace> {
        let first = points.first().ok_or(Error::DegenerateBasis)?;
        let (field, nvars) = (first.field(), first.len());
        if points.iter().any(|p| p.len() != nvars) {
            return Err(Error::Dimension("points of different lengths".into()));
        }
        let m = point_matrix(field, &points)?;
        let (rank, ker) = m.rank_kernel();
        if rank != points.len() {
            return Err(Error::DegenerateBasis);
        }
        let forms = ker.iter().map(|c| MultiPoly::linear_form(field, c)).collect();
        Ok(LinearSpace {
            nvars,
            basis: points,
            forms,
        })
    }

    /// Common zero set of the given linear forms, which must be independent
    /// and cut out a nonempty space.
    pub fn from_forms(field: Field, nvars: usize, forms: Vec<MultiPoly>) -> Result<LinearSpace> {
        let rows = forms
            .iter()
            .map(|l| linear_coeffs(l, nvars))
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Ok(LinearSpace::whole(field, nvars));
        }
        let m = ScalarMatrix::from_rows(field, rows)?;
        let (rank, ker) = m.rank_kernel();
        if rank != forms.len() {
            return Err(Error::Invalid("cutting forms are dependent".into()));
        }
        if ker.is_empty() {
            return Err(Error::Invalid("forms cut out the empty set".into()));
        }
        let basis = ker
            .into_iter()
            .map(ProjPoint::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearSpace {
            nvars,
            basis,
            forms,
        })
    }

    /// `V(x_i : i in vars)`.
    pub fn coordinate(field: Field, nvars: usize, vanishing: &[usize]) -> Result<LinearSpace> {
        let forms = vanishing
            .iter()
            .map(|&i| {
                if i >= nvars {
                    Err(Error::VariableOutOfRange { index: i, nvars })
                } else {
                    Ok(MultiPoly::var(field, nvars, i))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        LinearSpace::from_forms(field, nvars, forms)
    }

    pub fn whole(field: Field, nvars: usize) -> LinearSpace {
        LinearSpace {
            nvars,
            basis: (0..nvars)
                .map(|i| ProjPoint::coordinate(field, nvars, i))
                .collect(),
            forms: vec![],
        }
    }

    pub fn point(p: &ProjPoint) -> LinearSpace {
        LinearSpace::from_points(vec![p.clone()]).expect("a point is independent")
    }

    pub fn field(&self) -> Field {
        self.basis[0].field()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn basis(&self) -> &[ProjPoint] {
        &self.basis
    }

    pub fn forms(&self) -> &[MultiPoly] {
        &self.forms
    }

    pub fn contains_point(&self, p: &ProjPoint) -> bool {
        p.len() == self.nvars
            && self
                .forms
                .iter()
                .all(|l| l.eval(p.coords()).map(|v| v.is_zero()).unwrap_or(false))
    }

    pub fn contains(&self, other: &LinearSpace) -> bool {
        other.basis.iter().all(|p| self.contains_point(p))
    }

    pub fn same_as(&self, other: &LinearSpace) -> bool {
        self.nvars == other.nvars && self.dim() == other.dim() && self.contains(other)
    }

    /// Reduced echelon basis, independent of how the space was given.
    pub fn canonical_basis(&self) -> Vec<ProjPoint> {
        let m = point_matrix(self.field(), &self.basis).expect("consistent lengths");
        let r = m.rref();
        (0..r.rank())
            .map(|i| ProjPoint::new(r.matrix.row(i).to_vec()).expect("pivot row nonzero"))
            .collect()
    }

    /// Checks that both presentations describe the same space.
    pub fn check_consistent(&self) -> Result<()> {
        if self.basis.len() + self.forms.len() != self.nvars {
            return Err(Error::Inconsistent("basis and forms sizes".into()));
        }
        if !self.basis.iter().all(|p| self.contains_point(p)) {
            return Err(Error::Inconsistent("form does not vanish on basis".into()));
        }
        Ok(())
    }

    /// Smallest space containing both.
    pub fn join(&self, other: &LinearSpace) -> Result<LinearSpace> {
        let mut pts = self.canonical_basis();
        pts.extend(other.canonical_basis());
        let m = point_matrix(self.field(), &pts)?;
        let r = m.rref();
        let basis = (0..r.rank())
            .map(|i| ProjPoint::new(r.matrix.row(i).to_vec()))
            .collect::<Result<Vec<_>>>()?;
        LinearSpace::from_points(basis)
    }
}

impl fmt::Display for LinearSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.forms.is_empty() {
            return write!(f, "P^{}", self.dim());
        }
        write!(f, "V(")?;
        for (i, l) in self.forms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for LinearSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LinearSpace", 3)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("basis", &self.canonical_basis())?;
        let forms: Vec<String> = self.forms.iter().map(|l| l.to_string()).collect();
        st.serialize_field("forms", &forms)?;
        st.end()
    }
}

pub(crate) fn point_matrix(field: Field, points: &[ProjPoint]) -> Result<ScalarMatrix> {
    ScalarMatrix::from_rows(field, points.iter().map(|p| p.coords().to_vec()).collect())
}

/// Coefficient vector of a linear form.
pub fn linear_coeffs(l: &MultiPoly, nvars: usize) -> Result<Vec<Scalar>> {
    if l.nvars() != nvars {
        return Err(Error::NvarsMismatch(nvars, l.nvars()));
    }
    match l.degree() {
        Some(1) | None => {}
        Some(d) => {
            return Err(Error::WrongDegree {
                got: d,
                expected: "1".into(),
            })
        }
    }
    let mut v = vec![l.field().zero(); nvars];
    for (m, c) in l.terms() {
        let i = (0..nvars).find(|&i| m.exponent(i) == 1).expect("linear monomial");
        v[i] = c.clone();
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    const Q: Field = Field::Rational;

    #[test]
    fn normalization() {
        let p = ProjPoint::from_i64(Q, &[0, 2, -4]).unwrap();
        assert_eq!(p.to_string(), "[0:1:-2]");
        assert_eq!(p, ProjPoint::from_i64(Q, &[0, -1, 2]).unwrap());
        assert_eq!(ProjPoint::from_i64(Q, &[0, 0]), Err(Error::ZeroPoint));
        assert_eq!(ProjPoint::parse("[0:2:-4]", Q).unwrap(), p);
    }

    #[test]
    fn two_presentations_agree() {
        let l = LinearSpace::coordinate(Q, 3, &[0]).unwrap();
        assert_eq!(l.dim(), 1);
        l.check_consistent().unwrap();
        let by_points = LinearSpace::from_points(vec![
            ProjPoint::from_i64(Q, &[0, 1, 1]).unwrap(),
            ProjPoint::from_i64(Q, &[0, 1, -1]).unwrap(),
        ])
        .unwrap();
        by_points.check_consistent().unwrap();
        assert!(l.same_as(&by_points));
        assert_eq!(l.canonical_basis(), by_points.canonical_basis());
    }

    #[test]
    fn dependent_points_rejected() {
        let r = LinearSpace::from_points(vec![
            ProjPoint::from_i64(Q, &[1, 1, 0]).unwrap(),
            ProjPoint::from_i64(Q, &[2, 2, 0]).unwrap(),
        ]);
        assert!(matches!(r, Err(Error::DegenerateBasis)));
    }

    #[test]
    fn forms_with_fractions() {
        let l = parse_poly("x0 + 1/2*x1 - x2", 3, Q).unwrap();
        let s = LinearSpace::from_forms(Q, 3, vec![l]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains_point(&ProjPoint::from_i64(Q, &[1, 0, 1]).unwrap()));
        assert!(!s.contains_point(&ProjPoint::from_i64(Q, &[1, 0, 0]).unwrap()));
    }

    #[test]
    fn join_of_points() {
        let a = LinearSpace::point(&ProjPoint::coordinate(Q, 3, 0));
        let b = LinearSpace::point(&ProjPoint::coordinate(Q, 3, 1));
        let j = a.join(&b).unwrap();
        assert!(j.same_as(&LinearSpace::coordinate(Q, 3, &[2]).unwrap()));
    }
}
