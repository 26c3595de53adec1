//! Square matrices with polynomial entries and their exact determinants.

use std::collections::HashMap;

use crate::combin::combinations;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::ScalarMatrix;
use crate::poly::MultiPoly;
use crate::rng::{scalar_vec, seeded};

/// Largest size accepted by [`PolyMatrix::det`].
pub const MAX_DET_SIZE: usize = 8;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    field: Field,
    nvars: usize,
    size: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    /// Builds a square matrix, checking shared nvars/field and a common
    /// degree among the nonzero entries.
    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> Result<PolyMatrix> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::Dimension("empty polynomial matrix".into()));
        }
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::Dimension("polynomial matrix must be square".into()));
        }
        let (field, nvars) = (rows[0][0].field(), rows[0][0].nvars());
        let mut degree = None;
        for e in rows.iter().flatten() {
            if e.field() != field {
                return Err(Error::FieldMismatch);
            }
            if e.nvars() != nvars {
                return Err(Error::NvarsMismatch(nvars, e.nvars()));
            }
            match (degree, e.degree()) {
                (None, d) => degree = d,
                (Some(a), Some(b)) if a != b => return Err(Error::DegreeMismatch(a, b)),
                _ => {}
            }
        }
        Ok(PolyMatrix {
            field,
            nvars,
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.size + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Common degree of the nonzero entries, `None` for the zero matrix.
    pub fn entry_degree(&self) -> Option<u32> {
        self.entries.iter().find_map(|e| e.degree())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|i| (i + 1..self.size).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<PolyMatrix> {
        if rows.len() != cols.len() || rows.is_empty() {
            return Err(Error::Dimension("minor needs equal nonempty index sets".into()));
        }
        if rows.iter().chain(cols).any(|&i| i >= self.size) {
            return Err(Error::Dimension("minor index out of range".into()));
        }
        let out = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        PolyMatrix::from_rows(out)
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<MultiPoly> {
        self.submatrix(rows, cols)?.det()
    }

    /// Exact determinant by minor expansion along successive rows, memoized
    /// on the subset of columns already used.
    pub fn det(&self) -> Result<MultiPoly> {
        let m = self.size;
        if m > MAX_DET_SIZE {
            return Err(Error::ScopeExceeded {
                got: m,
                max: MAX_DET_SIZE,
            });
        }
        let zero = MultiPoly::zero(self.field, self.nvars);
        let mut level: HashMap<u32, MultiPoly> = HashMap::new();
        level.insert(0, MultiPoly::constant(self.field, self.nvars, self.field.one()));
        for row in 0..m {
            let mut next: HashMap<u32, MultiPoly> = HashMap::new();
            for (&mask, sub) in &level {
                for j in 0..m {
                    if mask & (1 << j) != 0 {
                        continue;
                    }
                    let e = self.get(row, j);
                    if e.is_zero() {
                        continue;
                    }
                    // inversions added by this row: chosen columns right of j
                    let right = (mask >> (j + 1)).count_ones();
                    let mut t = sub * e;
                    if right % 2 == 1 {
                        t = -&t;
                    }
                    let nm = mask | (1 << j);
                    match next.get_mut(&nm) {
                        Some(acc) => *acc = &*acc + &t,
                        None => {
                            next.insert(nm, t);
                        }
                    }
                }
            }
            next.retain(|_, v| !v.is_zero());
            level = next;
            if level.is_empty() {
                return Ok(zero);
            }
        }
        Ok(level.remove(&((1u32 << m) - 1)).unwrap_or(zero))
    }

    /// Determinant by cofactor expansion along row `i`; a consistency oracle
    /// for [`det`](Self::det).
    pub fn det_laplace_row(&self, i: usize) -> Result<MultiPoly> {
        let m = self.size;
        if m == 1 {
            return Ok(self.get(0, 0).clone());
        }
        let mut acc = MultiPoly::zero(self.field, self.nvars);
        let rows: Vec<usize> = (0..m).filter(|&r| r != i).collect();
        for j in 0..m {
            let e = self.get(i, j);
            if e.is_zero() {
                continue;
            }
            let cols: Vec<usize> = (0..m).filter(|&c| c != j).collect();
            let sub = self.submatrix(&rows, &cols)?.det_laplace_row(0)?;
            let mut t = e * &sub;
            if (i + j) % 2 == 1 {
                t = -&t;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<ScalarMatrix> {
        let rows = (0..self.size)
            .map(|i| {
                (0..self.size)
                    .map(|j| self.get(i, j).eval(point))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ScalarMatrix::from_rows(self.field, rows)
    }

    /// `M v` for a constant vector `v`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<MultiPoly>> {
        if v.len() != self.size {
            return Err(Error::Dimension(format!(
                "vector of length {} for size {}",
                v.len(),
                self.size
            )));
        }
        Ok((0..self.size)
            .map(|i| {
                let mut acc = MultiPoly::zero(self.field, self.nvars);
                for (j, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        acc = &acc + &self.get(i, j).scale(c);
                    }
                }
                acc
            })
            .collect())
    }

    /// `B^T M B`, where the columns of `b` are the new basis vectors.
    pub fn congruence(&self, b: &ScalarMatrix) -> Result<PolyMatrix> {
        if b.rows() != self.size || b.cols() != self.size {
            return Err(Error::Dimension("change of basis must match the size".into()));
        }
        let n = self.size;
        let zero = MultiPoly::zero(self.field, self.nvars);
        // first M B, then B^T (M B)
        let mut mb = vec![vec![zero.clone(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = zero.clone();
                for k in 0..n {
                    let c = b.get(k, j);
                    if !c.is_zero() && !self.get(i, k).is_zero() {
                        acc = &acc + &self.get(i, k).scale(c);
                    }
                }
                mb[i][j] = acc;
            }
        }
        let mut out = vec![vec![zero.clone(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = zero.clone();
                for k in 0..n {
                    let c = b.get(k, i);
                    if !c.is_zero() && !mb[k][j].is_zero() {
                        acc = &acc + &mb[k][j].scale(c);
                    }
                }
                out[i][j] = acc;
            }
        }
        PolyMatrix::from_rows(out)
    }

    /// Exact rank over the field of rational functions, with a witness minor
    /// of that size. Random evaluations give a lower bound; vanishing of all
    /// larger minors is then checked symbolically.
    pub fn generic_rank(&self, seed: u64) -> Result<GenericRank> {
        let n = self.size;
        let mut rng = seeded(seed);
        let mut best = GenericRank {
            rank: 0,
            rows: vec![],
            cols: vec![],
            minor: None,
        };
        for _ in 0..4 {
            let pt = scalar_vec(&mut rng, self.field, self.nvars, 1000);
            let m = self.eval(&pt)?;
            let r = m.rref();
            if r.rank() > best.rank {
                best.rank = r.rank();
                best.cols = r.pivots.clone();
                best.rows = m.transpose().rref().pivots;
            }
            if best.rank == n {
                break;
            }
        }
        'grow: while best.rank < n {
            let k = best.rank + 1;
            let sets = combinations(n, k);
            for rows in &sets {
                for cols in &sets {
                    if !self.minor(rows, cols)?.is_zero() {
                        best.rank = k;
                        best.rows = rows.clone();
                        best.cols = cols.clone();
                        continue 'grow;
                    }
                }
            }
            break;
        }
        if best.rank > 0 {
            let m = self.minor(&best.rows, &best.cols)?;
            if m.is_zero() {
                return Err(Error::Inconsistent("witness minor vanished".into()));
            }
            best.minor = Some(m);
        }
        Ok(best)
    }

    /// Block diagonal matrix `diag(a, b)`.
    pub fn block_diag(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
        if a.nvars != b.nvars || a.field != b.field {
            return Err(Error::NvarsMismatch(a.nvars, b.nvars));
        }
        let n = a.size + b.size;
        let zero = MultiPoly::zero(a.field, a.nvars);
        let mut rows = vec![vec![zero; n]; n];
        for i in 0..a.size {
            for j in 0..a.size {
                rows[i][j] = a.get(i, j).clone();
            }
        }
        for i in 0..b.size {
            for j in 0..b.size {
                rows[a.size + i][a.size + j] = b.get(i, j).clone();
            }
        }
        PolyMatrix::from_rows(rows)
    }

    pub fn map_entries(&self, f: impl Fn(&MultiPoly) -> Result<MultiPoly>) -> Result<PolyMatrix> {
        let rows = (0..self.size)
            .map(|i| (0..self.size).map(|j| f(self.get(i, j))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(rows)
    }
}

/// Result of [`PolyMatrix::generic_rank`].
#[derive(Clone, Debug)]
pub struct GenericRank {
    pub rank: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// The nonzero `rank x rank` minor on `rows x cols`.
    pub minor: Option<MultiPoly>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use proptest::prelude::*;

    fn pm(rows: &[&[&str]], n: usize) -> PolyMatrix {
        PolyMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|t| parse_poly(t, n, Field::Rational).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn diagonal_determinant() {
        let m = pm(&[&["6*x0", "0", "0"], &["0", "6*x1", "0"], &["0", "0", "6*x2"]], 3);
        assert_eq!(m.det().unwrap().to_string(), "216*x0*x1*x2");
    }

    #[test]
    fn zero_row_gives_zero() {
        let m = pm(&[&["x0", "x1"], &["0", "0"]], 2);
        assert!(m.det().unwrap().is_zero());
    }

    #[test]
    fn two_by_two() {
        let m = pm(&[&["2*x1", "2*x0"], &["2*x0", "0"]], 2);
        assert_eq!(m.det().unwrap(), parse_poly("-4*x0^2", 2, Field::Rational).unwrap());
    }

    #[test]
    fn generic_rank_of_singular_pencil() {
        // rank 1 everywhere: rows proportional
        let m = pm(&[&["x0", "x1"], &["2*x0", "2*x1"]], 2);
        let g = m.generic_rank(1).unwrap();
        assert_eq!(g.rank, 1);
        assert!(!g.minor.unwrap().is_zero());
        let d = pm(&[&["x0", "0"], &["0", "x1"]], 2);
        assert_eq!(d.generic_rank(1).unwrap().rank, 2);
    }

    #[test]
    fn scope_bound() {
        let z = MultiPoly::zero(Field::Rational, 1);
        let rows = vec![vec![z; 9]; 9];
        let m = PolyMatrix::from_rows(rows).unwrap();
        assert_eq!(
            m.det(),
            Err(Error::ScopeExceeded { got: 9, max: MAX_DET_SIZE })
        );
    }

    fn linear_matrix(m: usize) -> impl Strategy<Value = PolyMatrix> {
        prop::collection::vec(prop::collection::vec(-3i64..4, 3), m * m).prop_map(move |cs| {
            let f = Field::Rational;
            let rows = (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| {
                            let c = &cs[i * m + j];
                            MultiPoly::linear_form(f, &[f.from_i64(c[0]), f.from_i64(c[1]), f.from_i64(c[2])])
                        })
                        .collect()
                })
                .collect();
            PolyMatrix::from_rows(rows).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn laplace_rows_agree(m in linear_matrix(4), row in 0usize..4) {
            prop_assert_eq!(m.det().unwrap(), m.det_laplace_row(row).unwrap());
        }

        #[test]
        fn block_diagonal_is_multiplicative(a in linear_matrix(2), b in linear_matrix(3)) {
            let d = PolyMatrix::block_diag(&a, &b).unwrap().det().unwrap();
            prop_assert_eq!(d, &a.det().unwrap() * &b.det().unwrap());
        }

        #[test]
        fn eval_commutes_with_det(m in linear_matrix(4), pt in prop::collection::vec(-5i64..6, 3)) {
            let f = Field::Rational;
            let p: Vec<Scalar> = pt.iter().map(|&v| f.from_i64(v)).collect();
            let lhs = m.det().unwrap().eval(&p).unwrap();
            let rhs = m.eval(&p).unwrap().det().unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
