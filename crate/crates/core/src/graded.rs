//! Degreewise linear algebra in the Jacobian ring `S/J_f` and the apolar
//! ring of a form: Hilbert functions, ideal membership with certificates,
//! socle checks, the Hessian derivative identities, catalecticants.

use std::collections::HashMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar, DEFAULT_PRIME};
use crate::hessian::DForm;
use crate::linalg::{dot, ScalarMatrix};
use crate::poly::{count_monomials, monomials_of_degree, Monomial, MultiPoly};

/// The degree-`m` piece of the Jacobian ideal, spanned by `x^a * d_i f`.
#[derive(Clone, Debug)]
pub struct GradedSlice {
    field: Field,
    nvars: usize,
    degree: u32,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Generator labels `(x^a, i)` in column order.
    labels: Vec<(Monomial, usize)>,
    /// Sparse columns `(row, coefficient)`.
    columns: Vec<Vec<(usize, Scalar)>>,
}

impl GradedSlice {
    pub fn jacobian(f: &DForm, m: u32) -> GradedSlice {
        let nvars = f.nvars();
        let basis = monomials_of_degree(nvars, m);
        let index: HashMap<Monomial, usize> =
            basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let mut labels = Vec::new();
        let mut columns = Vec::new();
        if m + 1 >= f.degree() {
            let shifts = monomials_of_degree(nvars, m + 1 - f.degree());
            for (i, g) in f.gradient().iter().enumerate() {
                for a in &shifts {
                    let col: Vec<(usize, Scalar)> = g
                        .terms()
                        .map(|(mono, c)| {
                            let t = mono.checked_mul(a).expect("small exponents");
                            (index[&t], c.clone())
                        })
                        .collect();
                    labels.push((*a, i));
                    columns.push(col);
                }
            }
        }
        GradedSlice {
            field: f.field(),
            nvars,
            degree: m,
            basis,
            index,
            labels,
            columns,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_generators(&self) -> usize {
        self.columns.len()
    }

    /// Rows indexed by monomials, one column per generator.
    pub fn to_matrix(&self) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(self.field, self.basis.len(), self.columns.len());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col {
                m.set(*i, j, c.clone());
            }
        }
        m
    }

    pub fn coeff_vector(&self, p: &MultiPoly) -> Result<Vec<Scalar>> {
        let mut v = vec![self.field.zero(); self.basis.len()];
        if p.is_zero() {
            return Ok(v);
        }
        if p.degree() != Some(self.degree) {
            return Err(Error::DegreeMismatch(self.degree, p.degree().unwrap_or(0)));
        }
        for (m, c) in p.terms() {
            v[self.index[m]] = c.clone();
        }
        Ok(v)
    }

    fn rank_mod_p(&self, p: u64) -> Option<usize> {
        let (r, c) = (self.columns.len(), self.basis.len());
        // generators as rows: usually the shorter side after transposing
        let mut a = vec![0u64; r * c];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, s) in col {
                a[j * c + i] = s.reduce_mod(p)?;
            }
        }
        Some(crate::linalg::rank_mod_p_in_place(&mut a, r, c, p))
    }

    /// Exact rank of the spanning set, i.e. `dim (J_f)_m`.
    pub fn rank(&self) -> usize {
        let full = self.basis.len().min(self.columns.len());
        if full == 0 {
            return 0;
        }
        if let Field::Rational = self.field {
            if self.rank_mod_p(DEFAULT_PRIME) == Some(full) {
                return full;
            }
        }
        self.to_matrix().rank()
    }

    /// Whether the generators span the whole degree-`m` piece.
    pub fn fills(&self) -> bool {
        let dim = self.basis.len();
        if self.columns.len() < dim {
            return false;
        }
        match self.field {
            Field::Rational => {
                // rank mod p never exceeds the rational rank
                if self.rank_mod_p(DEFAULT_PRIME) == Some(dim) {
                    return true;
                }
                self.to_matrix().rank() == dim
            }
            Field::Prime(p) => self.rank_mod_p(p) == Some(dim),
        }
    }
}

/// Whether `(J_f)_m` equals the full degree-`m` piece.
pub fn jacobian_fills_degree(f: &DForm, m: u32) -> Result<bool> {
    Ok(GradedSlice::jacobian(f, m).fills())
}

/// `dim (S/J_f)_m` for `m = 0..=N+1`, where `N = (n+1)(d-2)`.
pub fn hilbert_function(f: &DForm) -> Vec<usize> {
    (0..=f.hessian_degree() + 1)
        .map(|m| {
            let s = GradedSlice::jacobian(f, m);
            s.ambient_dim() - s.rank()
        })
        .collect()
}

/// Coefficients of `((1 - t^(d-1)) / (1 - t))^(n+1)` up to `t^upto`.
pub fn complete_intersection_series(nvars: usize, d: u32, upto: u32) -> Vec<usize> {
    let mut series = vec![0i64; upto as usize + 1];
    series[0] = 1;
    for _ in 0..nvars {
        // multiply by 1 + t + ... + t^(d-2)
        let mut next = vec![0i64; series.len()];
        for (i, &c) in series.iter().enumerate() {
            for k in 0..=(d as usize - 2) {
                if i + k < next.len() {
                    next[i + k] += c;
                }
            }
        }
        series = next;
    }
    series.into_iter().map(|c| c as usize).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    Member,
    NonMember,
}

/// A linear functional on the degree-`m` piece, killing `(J_f)_m` but not
/// the target.
#[derive(Clone, Debug, Serialize)]
pub struct DualWitness {
    /// `(monomial, weight)` pairs with nonzero weight.
    pub weights: Vec<(String, String)>,
    /// Value of the functional on the target.
    pub pairing: String,
    #[serde(skip)]
    vector: Vec<Scalar>,
}

/// Proof that `target` lies in `J_f` (cofactors) or does not (dual witness).
#[derive(Clone, Debug, Serialize)]
pub struct MembershipCertificate {
    pub target: String,
    pub verdict: Membership,
    pub cofactors: Option<Vec<String>>,
    pub witness: Option<DualWitness>,
    pub hash: String,
    #[serde(skip)]
    target_poly: MultiPoly,
    #[serde(skip)]
    cofactor_polys: Vec<MultiPoly>,
}

impl MembershipCertificate {
    pub fn is_member(&self) -> bool {
        self.verdict == Membership::Member
    }

    pub fn cofactor_polys(&self) -> &[MultiPoly] {
        &self.cofactor_polys
    }

    /// Re-checks the certificate by direct arithmetic, independent of the
    /// solver that produced it.
    pub fn verify(&self, f: &DForm) -> Result<bool> {
        match self.verdict {
            Membership::Member => {
                let mut sum = MultiPoly::zero(f.field(), f.nvars());
                for (c, g) in self.cofactor_polys.iter().zip(f.gradient()) {
                    sum = sum.try_add(&c.try_mul(g)?)?;
                }
                Ok(sum == self.target_poly)
            }
            Membership::NonMember => {
                let w = &self.witness.as_ref().expect("non-member has witness").vector;
                let m = self
                    .target_poly
                    .degree()
                    .ok_or(Error::Inconsistent("zero target without cofactors".into()))?;
                let slice = GradedSlice::jacobian(f, m);
                for col in &slice.columns {
                    let mut s = f.field().zero();
                    for (i, c) in col {
                        s += &(c * &w[*i]);
                    }
                    if !s.is_zero() {
                        return Ok(false);
                    }
                }
                Ok(!dot(w, &slice.coeff_vector(&self.target_poly)?).is_zero())
            }
        }
    }
}

fn digest(parts: &[String]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn monomial_text(m: &Monomial, nvars: usize, field: Field) -> String {
    MultiPoly::monomial(field, nvars, *m, field.one()).to_string()
}

fn member_certificate(target: &MultiPoly, cofactors: Vec<MultiPoly>) -> MembershipCertificate {
    let texts: Vec<String> = cofactors.iter().map(|c| c.to_string()).collect();
    let mut parts = vec![target.to_string()];
    parts.extend(texts.iter().cloned());
    MembershipCertificate {
        target: target.to_string(),
        verdict: Membership::Member,
        cofactors: Some(texts),
        witness: None,
        hash: digest(&parts),
        target_poly: target.clone(),
        cofactor_polys: cofactors,
    }
}

fn witness_certificate(slice: &GradedSlice, target: &MultiPoly, w: Vec<Scalar>) -> Result<MembershipCertificate> {
    let pairing = dot(&w, &slice.coeff_vector(target)?);
    let weights: Vec<(String, String)> = slice
        .basis
        .iter()
        .zip(&w)
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (monomial_text(m, slice.nvars, slice.field), c.to_string()))
        .collect();
    let mut parts = vec![target.to_string()];
    parts.extend(weights.iter().map(|(m, c)| format!("{m}:{c}")));
    Ok(MembershipCertificate {
        target: target.to_string(),
        verdict: Membership::NonMember,
        cofactors: None,
        witness: Some(DualWitness {
            weights,
            pairing: pairing.to_string(),
            vector: w,
        }),
        hash: digest(&parts),
        target_poly: target.clone(),
        cofactor_polys: vec![],
    })
}

/// Decides `r in J_f` for one target.
pub fn ideal_membership(f: &DForm, r: &MultiPoly) -> Result<MembershipCertificate> {
    Ok(ideal_membership_many(f, std::slice::from_ref(r))?.remove(0))
}

/// Decides membership for several targets of one degree with a single
/// elimination. Every certificate is re-verified before it is returned.
pub fn ideal_membership_many(f: &DForm, targets: &[MultiPoly]) -> Result<Vec<MembershipCertificate>> {
    for t in targets {
        if t.nvars() != f.nvars() {
            return Err(Error::NvarsMismatch(f.nvars(), t.nvars()));
        }
        if t.field() != f.field() {
            return Err(Error::FieldMismatch);
        }
    }
    let degrees: Vec<u32> = targets.iter().filter_map(|t| t.degree()).collect();
    let Some(&m) = degrees.first() else {
        // all targets zero
        let zeros = vec![MultiPoly::zero(f.field(), f.nvars()); f.nvars()];
        return Ok(targets.iter().map(|t| member_certificate(t, zeros.clone())).collect());
    };
    if let Some(&other) = degrees.iter().find(|&&d| d != m) {
        return Err(Error::DegreeMismatch(m, other));
    }
    let slice = GradedSlice::jacobian(f, m);
    let mat = slice.to_matrix();
    let rhs_rows: Vec<Vec<Scalar>> = {
        let vs = targets
            .iter()
            .map(|t| slice.coeff_vector(t))
            .collect::<Result<Vec<_>>>()?;
        (0..slice.ambient_dim())
            .map(|i| vs.iter().map(|v| v[i].clone()).collect())
            .collect()
    };
    let rhs = ScalarMatrix::from_rows(f.field(), rhs_rows)?;
    let sols = mat.solve_many(&rhs)?;
    let mut left: Option<Vec<Vec<Scalar>>> = None;
    let mut out = Vec::with_capacity(targets.len());
    for (t, sol) in targets.iter().zip(sols) {
        let cert = match sol {
            Some(c) => {
                let mut cof = vec![MultiPoly::zero(f.field(), f.nvars()); f.nvars()];
                for ((a, i), v) in slice.labels.iter().zip(&c) {
                    if !v.is_zero() {
                        let term = MultiPoly::monomial(f.field(), f.nvars(), *a, v.clone());
                        cof[*i] = &cof[*i] + &term;
                    }
                }
                member_certificate(t, cof)
            }
            None => {
                let lk = left.get_or_insert_with(|| mat.left_kernel());
                let tv = slice.coeff_vector(t)?;
                let w = lk
                    .iter()
                    .find(|w| !dot(w, &tv).is_zero())
                    .ok_or(Error::Inconsistent("inconsistent system without witness".into()))?
                    .clone();
                witness_certificate(&slice, t, w)?
            }
        };
        if !cert.verify(f)? {
            return Err(Error::Inconsistent(format!(
                "certificate for {} failed re-verification",
                cert.target
            )));
        }
        out.push(cert);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SocleReport {
    pub socle_degree: u32,
    pub hilbert: Vec<usize>,
    pub socle_dim: usize,
    /// A monomial whose class spans the top degree.
    pub representative: String,
    /// `h_f` is congruent to this multiple of the representative.
    pub hessian_coefficient: String,
    pub hessian_certificate: MembershipCertificate,
    pub passed: bool,
}

/// Top-degree facts of the Jacobian ring of a smooth form: the socle degree
/// `N` piece is one-dimensional and `h_f` is not in `J_f`.
pub fn socle_check(f: &DForm) -> Result<SocleReport> {
    if !f.is_smooth()? {
        return Err(Error::Refused(
            "V(f) is singular; the socle statements need a smooth hypersurface".into(),
        ));
    }
    let n_top = f.hessian_degree();
    let hilbert = hilbert_function(f);
    let slice = GradedSlice::jacobian(f, n_top);
    let lk = slice.to_matrix().left_kernel();
    let h = f.hessian_poly();
    let hv = slice.coeff_vector(h)?;
    let cert = if let Some(w) = lk.iter().find(|w| !dot(w, &hv).is_zero()) {
        witness_certificate(&slice, h, w.clone())?
    } else {
        ideal_membership(f, h)?
    };
    if !cert.verify(f)? {
        return Err(Error::Inconsistent("socle certificate failed".into()));
    }
    let (representative, coefficient) = match lk.first() {
        Some(w) => {
            let (k, wk) = w
                .iter()
                .enumerate()
                .find(|(_, c)| !c.is_zero())
                .expect("kernel vector nonzero");
            let c = dot(w, &hv).checked_div(wk).expect("nonzero weight");
            (monomial_text(&slice.basis[k], f.nvars(), f.field()), c.to_string())
        }
        None => ("0".to_string(), "0".to_string()),
    };
    let passed = lk.len() == 1 && !cert.is_member() && hilbert.get(n_top as usize) == Some(&1);
    Ok(SocleReport {
        socle_degree: n_top,
        hilbert,
        socle_dim: lk.len(),
        representative,
        hessian_coefficient: coefficient,
        hessian_certificate: cert,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivativeCertificate {
    pub i: usize,
    pub j: usize,
    pub certificate: MembershipCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct HessianDerivativeReport {
    pub hessian: String,
    /// `h_f` is identically zero and the statement says nothing.
    pub vacuous: bool,
    pub certificates: Vec<DerivativeCertificate>,
    pub all_members: bool,
}

/// Certificates that `x_i d_j h_f - (d-2) delta_ij h_f` lies in `J_f` for
/// all `i, j`.
pub fn hessian_derivative_certificates(f: &DForm) -> Result<HessianDerivativeReport> {
    let h = f.hessian_poly();
    if h.is_zero() {
        return Ok(HessianDerivativeReport {
            hessian: "0".into(),
            vacuous: true,
            certificates: vec![],
            all_members: false,
        });
    }
    let n1 = f.nvars();
    let shift = f.field().from_i64(f.degree() as i64 - 2);
    let mut targets = Vec::with_capacity(n1 * n1);
    let mut idx = Vec::with_capacity(n1 * n1);
    for i in 0..n1 {
        let xi = MultiPoly::var(f.field(), n1, i);
        for j in 0..n1 {
            let mut t = &xi * &h.partial(j)?;
            if i == j {
                t = &t - &h.scale(&shift);
            }
            targets.push(t);
            idx.push((i, j));
        }
    }
    let certs = ideal_membership_many(f, &targets)?;
    let all_members = certs.iter().all(|c| c.is_member());
    Ok(HessianDerivativeReport {
        hessian: h.to_string(),
        vacuous: false,
        certificates: idx
            .into_iter()
            .zip(certs)
            .map(|((i, j), certificate)| DerivativeCertificate { i, j, certificate })
            .collect(),
        all_members,
    })
}

/// The operator `prod d_i^{e_i}` applied to `f`.
pub fn apolar_contract(op: &Monomial, f: &MultiPoly) -> MultiPoly {
    f.apply_operator(op)
}

/// Matrix of `L^k -> S^(d-k)`: column per operator monomial of degree `k`.
pub fn catalecticant(f: &MultiPoly, k: u32) -> Result<ScalarMatrix> {
    let d = f.degree().ok_or(Error::Invalid("the zero polynomial".into()))?;
    if k > d {
        return Err(Error::Invalid(format!("order {k} exceeds degree {d}")));
    }
    let n1 = f.nvars();
    let ops = monomials_of_degree(n1, k);
    let rows = monomials_of_degree(n1, d - k);
    let index: HashMap<Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut m = ScalarMatrix::zeros(f.field(), rows.len(), ops.len());
    for (j, op) in ops.iter().enumerate() {
        for (mono, c) in apolar_contract(op, f).terms() {
            m.set(index[mono], j, c.clone());
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnDims {
    /// `dim A_f^k` for `k = 0..=d`.
    pub dims: Vec<usize>,
    pub symmetric: bool,
    /// `dim A_f^1 < n + 1`: some derivative of `f` vanishes.
    pub cone: bool,
}

pub fn ann_dims(f: &MultiPoly) -> Result<AnnDims> {
    let d = f.degree().ok_or(Error::Invalid("the zero polynomial".into()))?;
    let dims = (0..=d)
        .map(|k| Ok(catalecticant(f, k)?.rank_fast()))
        .collect::<Result<Vec<_>>>()?;
    let symmetric = (0..dims.len()).all(|k| dims[k] == dims[dims.len() - 1 - k]);
    let cone = dims.get(1).copied().unwrap_or(0) < f.nvars();
    Ok(AnnDims {
        dims,
        symmetric,
        cone,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ApolarProduct {
    /// `d_x d_y f = 0`.
    pub contraction: bool,
    /// `H_f(x) y = 0`.
    pub matrix: bool,
    /// `H_f(y) x = 0`.
    pub swapped: bool,
}

/// Whether `xy = 0` in the apolar ring of a cubic, computed three ways that
/// must agree.
pub fn apolar_product_zero(f: &DForm, x: &[Scalar], y: &[Scalar]) -> Result<bool> {
    let r = apolar_product(f, x, y)?;
    if r.contraction != r.matrix || r.matrix != r.swapped {
        return Err(Error::Inconsistent(format!("apolar product disagreement: {r:?}")));
    }
    Ok(r.contraction)
}

pub fn apolar_product(f: &DForm, x: &[Scalar], y: &[Scalar]) -> Result<ApolarProduct> {
    f.require_cubic()?;
    let contraction = f.poly().directional(x).directional(y).is_zero();
    Ok(ApolarProduct {
        contraction,
        matrix: f.incidence(x, y)?,
        swapped: f.incidence(y, x)?,
    })
}

/// `y^T H_f(x) y = 2 (d_x f)(y)` as polynomials in `y`, for a cubic `f`.
pub fn quadratic_identity_holds(f: &DForm, x: &[Scalar]) -> Result<bool> {
    f.require_cubic()?;
    let h = f.hessian_at(x)?;
    let n1 = f.nvars();
    let field = f.field();
    let mut lhs = MultiPoly::zero(field, n1);
    for i in 0..n1 {
        for j in 0..n1 {
            let c = h.get(i, j);
            if c.is_zero() {
                continue;
            }
            let t = &MultiPoly::var(field, n1, i) * &MultiPoly::var(field, n1, j);
            lhs = &lhs + &t.scale(c);
        }
    }
    let rhs = f.poly().directional(x).scale_i64(2);
    Ok(lhs == rhs)
}

/// Size of the degree-`m` piece in `nvars` variables.
pub fn graded_dim(nvars: usize, m: u32) -> usize {
    count_monomials(nvars, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    const Q: Field = Field::Rational;

    fn form(t: &str, n: usize) -> DForm {
        DForm::parse(t, n, Q).unwrap()
    }

    /// Coefficients of (1 + t + ... + t^(d-2))^k by repeated convolution,
    /// written independently of the library helper.
    fn ci_oracle(k: usize, d: usize, len: usize) -> Vec<usize> {
        let mut s = vec![1usize];
        for _ in 0..k {
            let mut next = vec![0usize; s.len() + d - 2];
            for (i, c) in s.iter().enumerate() {
                for j in 0..=(d - 2) {
                    next[i + j] += c;
                }
            }
            s = next;
        }
        s.resize(len, 0);
        s
    }

    #[test]
    fn hilbert_of_smooth_cubic_surface() {
        let f = form("x0^3+x1^3+x2^3+x3^3 + (x0+2*x1-x2+3*x3)^3", 4);
        assert!(f.is_smooth().unwrap());
        assert_eq!(hilbert_function(&f), vec![1, 4, 6, 4, 1, 0]);
        assert_eq!(hilbert_function(&f), ci_oracle(4, 3, 6));
        assert_eq!(complete_intersection_series(4, 3, 5), ci_oracle(4, 3, 6));
    }

    #[test]
    fn hilbert_of_cone_never_vanishes() {
        let f = form("x0^3", 2);
        let h = hilbert_function(&f);
        assert!(*h.last().unwrap() > 0);
        assert!(!f.is_smooth().unwrap());
    }

    #[test]
    fn fermat_hessian_not_in_jacobian() {
        let f = form("x0^3+x1^3+x2^3", 3);
        let c = ideal_membership(&f, f.hessian_poly()).unwrap();
        assert_eq!(c.verdict, Membership::NonMember);
        assert!(c.verify(&f).unwrap());
    }

    #[test]
    fn binary_fermat_membership() {
        let f = form("x0^3+x1^3", 2);
        let h = f.hessian_poly();
        assert_eq!(h, &parse_poly("36*x0*x1", 2, Q).unwrap());
        let r = &MultiPoly::var(Q, 2, 0) * &h.partial(1).unwrap();
        assert_eq!(r, parse_poly("36*x0^2", 2, Q).unwrap());
        let c = ideal_membership(&f, &r).unwrap();
        assert!(c.is_member());
        assert_eq!(c.cofactors.unwrap(), vec!["12".to_string(), "0".to_string()]);
    }

    #[test]
    fn derivative_identities_binary_and_quartic() {
        let f = form("x0^3+x1^3", 2);
        let rep = hessian_derivative_certificates(&f).unwrap();
        assert!(rep.all_members);
        for c in &rep.certificates {
            if c.i == c.j {
                assert_eq!(c.certificate.target, "0");
            }
        }
        let q = form("x0^4+x1^4+x2^4", 3);
        let rep = hessian_derivative_certificates(&q).unwrap();
        assert_eq!(rep.certificates.len(), 9);
        assert!(rep.all_members);
    }

    #[test]
    fn vacuous_when_hessian_vanishes() {
        let f = form("x0^3+x1^3", 3);
        assert!(hessian_derivative_certificates(&f).unwrap().vacuous);
    }

    #[test]
    fn socle_of_fermat() {
        let f = form("x0^3+x1^3+x2^3", 3);
        let r = socle_check(&f).unwrap();
        assert!(r.passed);
        assert_eq!(r.socle_dim, 1);
        assert_eq!(r.representative, "x0*x1*x2");
        assert_eq!(r.hessian_coefficient, "216");
        let nodal = form("x0*x1*x2 + x3^3", 4);
        assert!(matches!(socle_check(&nodal), Err(Error::Refused(_))));
    }

    #[test]
    fn apolar_dims() {
        let f = parse_poly("x0^3+x1^3+x2^3", 3, Q).unwrap();
        let a = ann_dims(&f).unwrap();
        assert_eq!(a.dims, vec![1, 3, 3, 1]);
        assert!(a.symmetric && !a.cone);
        let c = ann_dims(&parse_poly("x0^3", 2, Q).unwrap()).unwrap();
        assert_eq!(c.dims[1], 1);
        assert!(c.cone);
    }

    #[test]
    fn fermat_products() {
        let f = form("x0^3+x1^3+x2^3", 3);
        let e = |i: usize| crate::space::ProjPoint::coordinate(Q, 3, i).coords().to_vec();
        assert!(apolar_product_zero(&f, &e(0), &e(1)).unwrap());
        assert!(!apolar_product_zero(&f, &e(0), &e(0)).unwrap());
        assert!(quadratic_identity_holds(&f, &e(2)).unwrap());
    }
}
