//! Dense exact linear algebra over [`Scalar`].
//!
//! Rational matrices are eliminated fraction-free (Bareiss, Jordan variant)
//! after clearing row denominators; prime-field matrices use ordinary
//! Gauss-Jordan on `u64` residues. Pivoting always takes the first nonzero
//! entry so echelon forms and kernel bases are reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{inv_mod, Field, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with the pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: ScalarMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl ScalarMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> ScalarMatrix {
        ScalarMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<ScalarMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        if data.iter().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(ScalarMatrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_i64_rows(field: Field, rows: &[Vec<i64>]) -> ScalarMatrix {
        let conv = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        ScalarMatrix::from_rows(field, conv).expect("rectangular input")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut t = ScalarMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ScalarMatrix {
        let mut s = ScalarMatrix::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                s.set(a, b, self.get(i, j).clone());
            }
        }
        s
    }

    pub fn mul(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ScalarMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.get(k, j);
                    out.data[i * other.cols + j] += &prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut s = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += &(a * b);
                    }
                }
                s
            })
            .collect())
    }

    /// Reduced row echelon form, pivots searched in every column.
    pub fn rref(&self) -> Rref {
        self.rref_limited(self.cols)
    }

    /// Reduced row echelon form with pivots restricted to the first
    /// `limit` columns; the remaining columns ride along (augmented systems).
    pub fn rref_limited(&self, limit: usize) -> Rref {
        match self.field {
            Field::Rational => {
                let (mut ints, _) = self.integer_rows();
                let (pivots, scale, _) = bareiss_jordan(&mut ints, limit);
                let scale = BigRational::from_integer(scale);
                let data = ints
                    .into_iter()
                    .flatten()
                    .map(|v| Scalar::Rat(BigRational::from_integer(v) / &scale))
                    .collect();
                Rref {
                    matrix: ScalarMatrix {
                        field: self.field,
                        rows: self.rows,
                        cols: self.cols,
                        data,
                    },
                    pivots,
                }
            }
            Field::Prime(p) => {
                let mut a = self.residues();
                let (pivots, _) = gauss_jordan_mod_p(&mut a, self.rows, self.cols, p, limit);
                Rref {
                    matrix: ScalarMatrix {
                        field: self.field,
                        rows: self.rows,
                        cols: self.cols,
                        data: a.into_iter().map(|v| Scalar::Mod(v, p)).collect(),
                    },
                    pivots,
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Rank of the reduction mod `p`, or `None` if some denominator
    /// vanishes mod `p`. Never exceeds the rational rank.
    pub fn rank_mod_p(&self, p: u64) -> Option<usize> {
        let mut a = Vec::with_capacity(self.data.len());
        for s in &self.data {
            a.push(s.reduce_mod(p)?);
        }
        Some(rank_mod_p_in_place(&mut a, self.rows, self.cols, p))
    }

    /// Exact rank, short-circuited by a full-rank reduction mod a prime.
    pub fn rank_fast(&self) -> usize {
        if let Field::Rational = self.field {
            let full = self.rows.min(self.cols);
            if self.rank_mod_p(crate::field::DEFAULT_PRIME) == Some(full) {
                return full;
            }
        }
        self.rank()
    }

    /// Rank and a basis of the right kernel. Basis vector `t` has a 1 in
    /// the `t`-th free column and zeros in the other free columns.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Scalar>>) {
        let r = self.rref();
        let kernel = kernel_from_rref(&r, self.cols);
        (r.rank(), kernel)
    }

    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        self.rank_kernel().1
    }

    /// Basis of `{w : w^T M = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<Scalar>> {
        self.transpose().kernel()
    }

    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.field.one());
        }
        match self.field {
            Field::Rational => {
                let (mut ints, scales) = self.integer_rows();
                let (pivots, last, swaps) = bareiss_jordan(&mut ints, n);
                if pivots.len() < n {
                    return Ok(self.field.zero());
                }
                let mut d = BigRational::from_integer(last);
                if swaps % 2 == 1 {
                    d = -d;
                }
                for s in scales {
                    d /= BigRational::from_integer(s);
                }
                Ok(Scalar::Rat(d))
            }
            Field::Prime(p) => {
                let mut a = self.residues();
                let (pivots, det) = gauss_jordan_mod_p(&mut a, n, n, p, n);
                if pivots.len() < n {
                    return Ok(self.field.zero());
                }
                Ok(Scalar::Mod(det, p))
            }
        }
    }

    pub fn inverse(&self) -> Result<ScalarMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = ScalarMatrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let r = aug.rref_limited(n);
        if r.rank() < n {
            return Err(Error::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.matrix.submatrix(&rows, &cols))
    }

    /// Solves `M x = b_t` for every column `b_t` of `rhs`; `None` marks an
    /// inconsistent target. Free variables are set to zero.
    pub fn solve_many(&self, rhs: &ScalarMatrix) -> Result<Vec<Option<Vec<Scalar>>>> {
        if rhs.rows != self.rows {
            return Err(Error::Dimension("right-hand side row count".into()));
        }
        let (n, t) = (self.cols, rhs.cols);
        let mut aug = ScalarMatrix::zeros(self.field, self.rows, n + t);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..t {
                aug.set(i, n + j, rhs.get(i, j).clone());
            }
        }
        let r = aug.rref_limited(n);
        let rank = r.rank();
        Ok((0..t)
            .map(|j| {
                let c = n + j;
                if (rank..self.rows).any(|i| !r.matrix.get(i, c).is_zero()) {
                    return None;
                }
                let mut x = vec![self.field.zero(); n];
                for (i, &pc) in r.pivots.iter().enumerate() {
                    x[pc] = r.matrix.get(i, c).clone();
                }
                Some(x)
            })
            .collect())
    }

    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        let rhs = ScalarMatrix::from_rows(self.field, b.iter().map(|v| vec![v.clone()]).collect())?;
        Ok(self.solve_many(&rhs)?.pop().flatten())
    }

    fn residues(&self) -> Vec<u64> {
        self.data
            .iter()
            .map(|s| match s {
                Scalar::Mod(v, _) => *v,
                Scalar::Rat(_) => unreachable!("prime-field matrix holds residues"),
            })
            .collect()
    }

    /// Rows scaled to integers; returns the scale of each row.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            let mut l = BigInt::one();
            for s in row {
                let q = s.as_rational().expect("rational matrix");
                if !q.denom().is_one() {
                    l = l.lcm(q.denom());
                }
            }
            out.push(
                row.iter()
                    .map(|s| {
                        let q = s.as_rational().expect("rational matrix");
                        q.numer() * (&l / q.denom())
                    })
                    .collect(),
            );
            scales.push(l);
        }
        (out, scales)
    }
}

/// Fraction-free Gauss-Jordan elimination in place. After return the first
/// `rank` rows are the pivot rows and every pivot entry equals the returned
/// scale, so dividing by it gives the reduced echelon form. Also returns the
/// number of row swaps.
fn bareiss_jordan(a: &mut [Vec<BigInt>], limit: usize) -> (Vec<usize>, BigInt, usize) {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..limit {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        if k != r {
            a.swap(k, r);
            swaps += 1;
        }
        let piv = a[r][c].clone();
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                let mut v = &piv * &*x;
                if !f.is_zero() && !y.is_zero() {
                    v -= &f * y;
                }
                if !prev.is_one() {
                    debug_assert!((&v % &prev).is_zero(), "inexact Bareiss division");
                    v /= &prev;
                }
                *x = v;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    (pivots, prev, swaps)
}

/// Gauss-Jordan over F_p in place with normalized pivots. Returns the pivot
/// columns and the determinant of the pivot block (product of pivots times
/// the swap sign).
pub(crate) fn gauss_jordan_mod_p(
    a: &mut [u64],
    rows: usize,
    cols: usize,
    p: u64,
    limit: usize,
) -> (Vec<usize>, u64) {
    let mut pivots = Vec::new();
    let mut det = 1u64;
    let mut r = 0;
    for c in 0..limit {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&k| a[k * cols + c] != 0) else {
            continue;
        };
        if k != r {
            for j in 0..cols {
                a.swap(k * cols + j, r * cols + j);
            }
            det = (p - det) % p;
        }
        let piv = a[r * cols + c];
        det = det * piv % p;
        let inv = inv_mod(piv, p).expect("nonzero pivot");
        for j in 0..cols {
            a[r * cols + j] = a[r * cols + j] * inv % p;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i * cols + c];
            if f == 0 {
                continue;
            }
            for j in 0..cols {
                let y = a[r * cols + j];
                if y != 0 {
                    a[i * cols + j] = (a[i * cols + j] + (p - f) * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, det)
}

/// Rank of a row-major residue matrix; clobbers the input.
pub fn rank_mod_p_in_place(a: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&k| a[k * cols + c] != 0) else {
            continue;
        };
        if k != r {
            for j in c..cols {
                a.swap(k * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(a[r * cols + c], p).expect("nonzero pivot");
        for i in r + 1..rows {
            let f = a[i * cols + c] * inv % p;
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let y = a[r * cols + j];
                if y != 0 {
                    a[i * cols + j] = (a[i * cols + j] + (p - f) * y) % p;
                }
            }
        }
        r += 1;
    }
    r
}

fn kernel_from_rref(r: &Rref, cols: usize) -> Vec<Vec<Scalar>> {
    let field = r.matrix.field;
    let mut is_pivot = vec![false; cols];
    for &c in &r.pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (i, &pc) in r.pivots.iter().enumerate() {
                v[pc] = -r.matrix.get(i, free);
            }
            v
        })
        .collect()
}

/// Dot product of two scalar vectors.
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let field = a.first().or(b.first()).map_or(Field::Rational, |s| s.field());
    let mut s = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &(x * y);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(rows: &[Vec<i64>]) -> ScalarMatrix {
        ScalarMatrix::from_i64_rows(Field::Rational, rows)
    }

    #[test]
    fn diagonal_kernel() {
        let m = q(&[vec![6, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]);
        let (rank, ker) = m.rank_kernel();
        assert_eq!(rank, 1);
        let f = Field::Rational;
        assert_eq!(
            ker,
            vec![
                vec![f.zero(), f.one(), f.zero()],
                vec![f.zero(), f.zero(), f.one()]
            ]
        );
    }

    #[test]
    fn full_rank_has_empty_kernel() {
        let m = q(&[vec![6, 0, 0], vec![0, 6, 0], vec![0, 0, 6]]);
        assert_eq!(m.rank_kernel(), (3, vec![]));
    }

    #[test]
    fn determinants_with_swaps() {
        assert_eq!(q(&[vec![0, 1], vec![1, 0]]).det().unwrap(), Field::Rational.from_i64(-1));
        assert_eq!(
            q(&[vec![2, 1, 3], vec![0, -1, 4], vec![5, 2, 0]]).det().unwrap(),
            Field::Rational.from_i64(2 * (0 - 8) - (0 - 20) + 3 * 5)
        );
        let fp = Field::prime(7).unwrap();
        let m = ScalarMatrix::from_i64_rows(fp, &[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det().unwrap(), fp.from_i64(-1));
    }

    #[test]
    fn fractional_entries() {
        let f = Field::Rational;
        let half = f.parse_scalar("1/2").unwrap();
        let m = ScalarMatrix::from_rows(
            f,
            vec![vec![half.clone(), f.one()], vec![f.one(), f.from_i64(3)]],
        )
        .unwrap();
        assert_eq!(m.det().unwrap(), f.parse_scalar("1/2").unwrap());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ScalarMatrix::identity(f, 2));
    }

    #[test]
    fn inconsistent_and_consistent_targets() {
        let m = q(&[vec![1, 1], vec![2, 2]]);
        let rhs = q(&[vec![1, 1], vec![2, 3]]);
        let sols = m.solve_many(&rhs).unwrap();
        let f = Field::Rational;
        assert_eq!(sols[0], Some(vec![f.one(), f.zero()]));
        assert_eq!(sols[1], None);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..4, c), r)
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate(rows in small_matrix()) {
            let m = q(&rows);
            let (rank, ker) = m.rank_kernel();
            prop_assert_eq!(rank + ker.len(), m.cols());
            for v in &ker {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(|s| s.is_zero()));
            }
            let p = 10007;
            prop_assert!(m.rank_mod_p(p).unwrap() <= rank);
            let fp = Field::prime(p).unwrap();
            let mp = ScalarMatrix::from_i64_rows(fp, &rows);
            prop_assert_eq!(mp.rank(), m.rank_mod_p(p).unwrap());
        }

        #[test]
        fn det_matches_cofactor_expansion(rows in (1usize..5).prop_flat_map(|n|
            prop::collection::vec(prop::collection::vec(-4i64..5, n), n))) {
            fn cof(m: &[Vec<i64>]) -> i64 {
                if m.len() == 1 { return m[0][0]; }
                (0..m.len()).map(|j| {
                    let minor: Vec<Vec<i64>> = m[1..].iter()
                        .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| *v).collect())
                        .collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * m[0][j] * cof(&minor)
                }).sum()
            }
            let m = q(&rows);
            prop_assert_eq!(m.det().unwrap(), Field::Rational.from_i64(cof(&rows)));
            let fp = Field::prime(101).unwrap();
            prop_assert_eq!(ScalarMatrix::from_i64_rows(fp, &rows).det().unwrap(), fp.from_i64(cof(&rows)));
        }

        #[test]
        fn solutions_satisfy_system(rows in small_matrix(), seed in 0i64..50) {
            let m = q(&rows);
            let x: Vec<Scalar> = (0..m.cols()).map(|j| Field::Rational.from_i64((j as i64 * seed) % 7 - 3)).collect();
            let b = m.mul_vec(&x).unwrap();
            let sol = m.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&sol).unwrap(), b);
        }
    }
}
