//! Recovering a cubic from its third-derivative tensor when the tensor has
//! the column proportionalities of a rank-six normal form, and comparing
//! Hessian polynomials up to scalars.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::hessian::DForm;
use crate::poly::{change_coords, LinearChange, Monomial, MultiPoly};

/// `T[i][j][k] = d^3 g / dx_i dx_j dx_k` for a cubic `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThirdTensor {
    field: Field,
    size: usize,
    entries: Vec<Scalar>,
}

impl ThirdTensor {
    pub fn zeros(field: Field, size: usize) -> ThirdTensor {
        ThirdTensor {
            field,
            size,
            entries: vec![field.zero(); size * size * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn field(&self) -> Field {
        self.field
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.size + j) * self.size + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.entries[self.idx(i, j, k)]
    }

    /// Sets one entry only; symmetry is the caller's business.
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let at = self.idx(i, j, k);
        self.entries[at] = v;
    }

    /// Sets an entry and all its permutations.
    pub fn set_sym(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        for (a, b, c) in [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
            self.set(a, b, c, v.clone());
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size;
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let v = self.get(i, j, k);
                    v == self.get(j, i, k) && v == self.get(i, k, j)
                })
            })
        })
    }

    /// The constant matrix `A_i` with `H_g = sum x_i A_i`.
    pub fn slice(&self, i: usize) -> Vec<Vec<Scalar>> {
        (0..self.size)
            .map(|j| (0..self.size).map(|k| self.get(i, j, k).clone()).collect())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let n = self.size;
        let entries: Vec<Vec<Vec<String>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.get(i, j, k).to_string()).collect())
                    .collect()
            })
            .collect();
        json!({ "field": self.field.to_string(), "size": n, "entries": entries })
    }

    /// Loads the JSON produced by [`ThirdTensor::to_json`] and checks shape
    /// and symmetry.
    pub fn from_json(v: &Value) -> Result<ThirdTensor> {
        let bad = |m: &str| Error::Invalid(format!("tensor json: {m}"));
        let field: Field = match v.get("field").and_then(Value::as_str) {
            Some(s) => s.parse()?,
            None => Field::Rational,
        };
        let rows = v.get("entries").and_then(Value::as_array).ok_or(bad("missing entries"))?;
        let n = rows.len();
        let mut t = ThirdTensor::zeros(field, n);
        for (i, plane) in rows.iter().enumerate() {
            let plane = plane.as_array().filter(|p| p.len() == n).ok_or(bad("ragged"))?;
            for (j, row) in plane.iter().enumerate() {
                let row = row.as_array().filter(|r| r.len() == n).ok_or(bad("ragged"))?;
                for (k, e) in row.iter().enumerate() {
                    let s = match e {
                        Value::String(s) => s.clone(),
                        Value::Number(x) => x.to_string(),
                        _ => return Err(bad("entries must be strings or integers")),
                    };
                    t.set(i, j, k, field.parse_scalar(&s)?);
                }
            }
        }
        if let Some(size) = v.get("size").and_then(Value::as_u64) {
            if size as usize != n {
                return Err(bad("size disagrees with entries"));
            }
        }
        if !t.is_symmetric() {
            return Err(bad("not symmetric"));
        }
        Ok(t)
    }
}

/// Third derivatives of a cubic.
pub fn tensor_of(g: &MultiPoly) -> Result<ThirdTensor> {
    if g.degree() != Some(3) && !g.is_zero() {
        return Err(Error::WrongDegree {
            got: g.degree().unwrap_or(0),
            expected: "3".into(),
        });
    }
    let n = g.nvars();
    let mut t = ThirdTensor::zeros(g.field(), n);
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let op = Monomial::var(i).checked_mul(&Monomial::var(j))?.checked_mul(&Monomial::var(k))?;
                let c = g.apply_operator(&op).coeff(&Monomial::one());
                t.set_sym(i, j, k, c);
            }
        }
    }
    Ok(t)
}

/// The cubic with third-derivative tensor `t`.
pub fn cubic_from_tensor(t: &ThirdTensor) -> Result<MultiPoly> {
    let n = t.size();
    let field = t.field();
    let mut g = MultiPoly::zero(field, n);
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let v = t.get(i, j, k);
                if v.is_zero() {
                    continue;
                }
                let m = Monomial::var(i).checked_mul(&Monomial::var(j))?.checked_mul(&Monomial::var(k))?;
                // d^3 (x^m) = prod of factorials of the exponents
                let w = field.from_i64(m.factorial_weight() as i64);
                let c = v.checked_div(&w).expect("nonzero weight");
                g = &g + &MultiPoly::monomial(field, n, m, c);
            }
        }
    }
    Ok(g)
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    /// `a_k T[i][r][j] != a_j T[i][r][k]`.
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub r: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TensorClass {
    /// All relations hold and some entry with distinct indices is nonzero.
    Consistent,
    /// All relations hold but every entry off the pure diagonal vanishes.
    TsDegenerate,
    Violated,
    Asymmetric,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub class: TensorClass,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.class == TensorClass::Consistent
    }
}

/// Checks `a_k A_i e_j = a_j A_i e_k` for all pairwise distinct `i, j, k`:
/// the columns of each slice restricted to the other indices are
/// proportional to `a`.
pub fn validate_relations(t: &ThirdTensor, a: &[Scalar]) -> Result<RelationReport> {
    let n = t.size();
    if a.len() != n {
        return Err(Error::Dimension(format!("a has length {}, tensor size {n}", a.len())));
    }
    if let Some(i) = a.iter().position(|c| c.is_zero()) {
        return Err(Error::Invalid(format!("a_{i} = 0")));
    }
    if !t.is_symmetric() {
        return Ok(RelationReport {
            class: TensorClass::Asymmetric,
            checked: 0,
            violations: vec![],
        });
    }
    let mut violations = Vec::new();
    let mut checked = 0;
    for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                if i == j || i == k {
                    continue;
                }
                for r in 0..n {
                    checked += 1;
                    let lhs = &a[k] * t.get(i, r, j);
                    let rhs = &a[j] * t.get(i, r, k);
                    if lhs != rhs {
                        violations.push(Violation {
                            i,
                            j,
                            k,
                            r,
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                    }
                }
            }
        }
    }
    let class = if !violations.is_empty() {
        TensorClass::Violated
    } else if mixed_entries(n).all(|(i, j, k)| t.get(i, j, k).is_zero()) {
        TensorClass::TsDegenerate
    } else {
        TensorClass::Consistent
    };
    Ok(RelationReport {
        class,
        checked,
        violations,
    })
}

/// Sorted index triples that are not all equal.
fn mixed_entries(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| {
        (i..n).flat_map(move |j| (j..n).filter(move |&k| !(i == j && j == k)).map(move |k| (i, j, k)))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ReconstructionResult {
    /// The sorted triple of distinct indices used to fix the scale.
    pub anchor: (usize, usize, usize),
    /// Scale read at the anchor: `T[a][b][c] = lambda a_a a_b a_c`.
    pub lambda: String,
    /// `b_i = (T[i][i][i] - lambda a_i^3) / 6`.
    pub b: Vec<String>,
    /// `sum b_i x_i^3 + (lambda / 6) L^3`, equal to the input cubic.
    pub g: String,
    /// `g / lambda`, which satisfies `6 g' = 6 sum (b_i / lambda) x_i^3 + L^3`.
    pub normalized: String,
    #[serde(skip)]
    g_poly: MultiPoly,
    #[serde(skip)]
    normalized_poly: MultiPoly,
}

impl ReconstructionResult {
    pub fn poly(&self) -> &MultiPoly {
        &self.g_poly
    }

    pub fn normalized_poly(&self) -> &MultiPoly {
        &self.normalized_poly
    }
}

/// Rebuilds `g` from the scale at one anchor entry, the proportionalities,
/// and the pure diagonal.
pub fn reconstruct_g(t: &ThirdTensor, a: &[Scalar]) -> Result<ReconstructionResult> {
    let report = validate_relations(t, a)?;
    match report.class {
        TensorClass::Consistent => {}
        TensorClass::TsDegenerate => {
            return Err(Error::Reconstruction(
                "every entry off the pure diagonal vanishes: a sum of cubes of coordinates".into(),
            ))
        }
        TensorClass::Violated => {
            let v = &report.violations[0];
            return Err(Error::Reconstruction(format!(
                "{} relation violations, first at slice {} columns {},{} row {}",
                report.violations.len(),
                v.i,
                v.j,
                v.k,
                v.r
            )));
        }
        TensorClass::Asymmetric => return Err(Error::Reconstruction("tensor is not symmetric".into())),
    }
    let n = t.size();
    let field = t.field();
    let anchor = (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
        .find(|&(i, j, k)| !t.get(i, j, k).is_zero())
        .ok_or(Error::Reconstruction("no nonzero entry with distinct indices".into()))?;
    let (p, q, r) = anchor;
    let lambda = t
        .get(p, q, r)
        .checked_div(&(&(&a[p] * &a[q]) * &a[r]))
        .expect("nonzero a");
    // every entry off the pure diagonal is forced by the relations
    for (i, j, k) in mixed_entries(n) {
        let want = &(&(&lambda * &a[i]) * &a[j]) * &a[k];
        if t.get(i, j, k) != &want {
            return Err(Error::Reconstruction(format!(
                "entry ({i},{j},{k}) is {} but the anchor predicts {want}",
                t.get(i, j, k)
            )));
        }
    }
    let six = field.from_i64(6);
    let b: Vec<Scalar> = (0..n)
        .map(|i| {
            let pure = t.get(i, i, i) - &(&lambda * &a[i].pow(3));
            pure.checked_div(&six).expect("six invertible")
        })
        .collect();
    let l = MultiPoly::linear_form(field, a);
    let cube_part = l.pow(3).scale(&lambda.checked_div(&six).expect("six invertible"));
    let mut g = cube_part;
    for (i, bi) in b.iter().enumerate() {
        g = &g + &MultiPoly::var(field, n, i).pow(3).scale(bi);
    }
    if tensor_of(&g)? != *t {
        return Err(Error::Inconsistent("reconstructed cubic does not reproduce the tensor".into()));
    }
    let inv = lambda.inv().expect("nonzero lambda");
    let normalized = g.scale(&inv);
    // 6 g' = 6 sum (b_i / lambda) x_i^3 + L^3
    let mut rhs = l.pow(3);
    for (i, bi) in b.iter().enumerate() {
        rhs = &rhs + &MultiPoly::var(field, n, i).pow(3).scale(&(&(bi * &inv) * &six));
    }
    if normalized.scale(&six) != rhs {
        return Err(Error::Inconsistent("normalized identity fails".into()));
    }
    Ok(ReconstructionResult {
        anchor,
        lambda: lambda.to_string(),
        b: b.iter().map(|x| x.to_string()).collect(),
        g: g.to_string(),
        normalized: normalized.to_string(),
        g_poly: g,
        normalized_poly: normalized,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum HessianComparison {
    /// `h_g = scalar * h_f`.
    EqualUpToScalar { scalar: String },
    Different,
}

/// Compares `h_f` and `h_g` up to a nonzero scalar.
pub fn hessian_equality_probe(f: &DForm, g: &DForm) -> Result<HessianComparison> {
    if f.nvars() != g.nvars() {
        return Err(Error::NvarsMismatch(f.nvars(), g.nvars()));
    }
    let (hf, hg) = (f.hessian_poly(), g.hessian_poly());
    if hf.is_zero() || hg.is_zero() {
        return Ok(if hf.is_zero() && hg.is_zero() {
            HessianComparison::EqualUpToScalar {
                scalar: "1".into(),
            }
        } else {
            HessianComparison::Different
        });
    }
    Ok(match hf.proportional_to(hg) {
        Some(c) => HessianComparison::EqualUpToScalar { scalar: c.to_string() },
        None => HessianComparison::Different,
    })
}

/// `h_{f o A} = det(A)^2 (h_f o A)`.
pub fn hessian_covariance_holds(f: &DForm, a: &LinearChange) -> Result<bool> {
    let g = DForm::new(change_coords(f.poly(), a)?)?;
    let rhs = change_coords(f.hessian_poly(), a)?.scale(&a.det().pow(2));
    Ok(g.hessian_poly() == &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_waring_normal, scalars};
    use crate::poly::parse_poly;

    const Q: Field = Field::Rational;

    #[test]
    fn fermat_tensor() {
        let g = parse_poly("x0^3+x1^3+x2^3", 3, Q).unwrap();
        let t = tensor_of(&g).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let want = if i == j && j == k { 6 } else { 0 };
                    assert_eq!(t.get(i, j, k), &Q.from_i64(want));
                }
            }
        }
        assert_eq!(cubic_from_tensor(&t).unwrap(), g);
        let r = validate_relations(&t, &scalars(Q, &[1, 1, 1])).unwrap();
        assert_eq!(r.class, TensorClass::TsDegenerate);
    }

    #[test]
    fn round_trip_and_readout() {
        let a = scalars(Q, &[1, 2, 1, 1, 3]);
        let w = gen_waring_normal(Q, &a).unwrap();
        let t = tensor_of(w.poly()).unwrap();
        let r = reconstruct_g(&t, &a).unwrap();
        assert_eq!(r.poly(), w.poly());
        assert_eq!(r.lambda, "6");
        assert_eq!(r.b, vec!["1"; 5]);
        assert_eq!(r.anchor, (0, 1, 2));
    }

    #[test]
    fn json_round_trip() {
        let a = scalars(Q, &[1, 1, 2, 1, 1]);
        let t = tensor_of(gen_waring_normal(Q, &a).unwrap().poly()).unwrap();
        let back = ThirdTensor::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        let mut bad = t.to_json();
        bad["entries"][0][1][2] = Value::String("5".into());
        assert!(ThirdTensor::from_json(&bad).is_err());
    }

    #[test]
    fn probe() {
        let f = DForm::parse("x0^3+x1^3+x2^3+(x0+x1+x2)^3", 3, Q).unwrap();
        let g = DForm::new(f.poly().scale_i64(2)).unwrap();
        assert_eq!(
            hessian_equality_probe(&f, &g).unwrap(),
            HessianComparison::EqualUpToScalar { scalar: "8".into() }
        );
        let h = DForm::new(f.poly() + &parse_poly("x0^3", 3, Q).unwrap()).unwrap();
        assert_eq!(hessian_equality_probe(&f, &h).unwrap(), HessianComparison::Different);
    }
}
