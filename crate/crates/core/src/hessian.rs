//! Hessian matrix and polynomial of a form, rank strata membership, the
//! kernel map, restrictions to linear spaces, smoothness and cone tests.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graded;
use crate::linalg::ScalarMatrix;
use crate::poly::{monomials_of_degree, MultiPoly};
use crate::polymatrix::PolyMatrix;
use crate::space::{LinearSpace, ProjPoint};

/// Seed for the internal random falsifiers; fixed so verdicts reproduce.
const FALSIFIER_SEED: u64 = 0x5eed;

/// A form of degree at least 3 with lazily computed gradient, Hessian
/// matrix and Hessian polynomial.
#[derive(Clone, Debug)]
pub struct DForm {
    f: MultiPoly,
    degree: u32,
    gradient: OnceLock<Vec<MultiPoly>>,
    hessian: OnceLock<PolyMatrix>,
    hpoly: OnceLock<MultiPoly>,
}

impl DForm {
    pub fn new(f: MultiPoly) -> Result<DForm> {
        let degree = f.degree().ok_or(Error::Invalid("the zero polynomial".into()))?;
        if degree < 3 {
            return Err(Error::WrongDegree {
                got: degree,
                expected: ">= 3".into(),
            });
        }
        if let Field::Prime(p) = f.field() {
            if p <= degree as u64 {
                return Err(Error::Invalid(format!(
                    "characteristic {p} must exceed the degree {degree}"
                )));
            }
        }
        Ok(DForm {
            f,
            degree,
            gradient: OnceLock::new(),
            hessian: OnceLock::new(),
            hpoly: OnceLock::new(),
        })
    }

    pub fn parse(text: &str, nvars: usize, field: Field) -> Result<DForm> {
        DForm::new(crate::poly::parse_poly(text, nvars, field)?)
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    /// Projective dimension of the ambient space.
    pub fn n(&self) -> usize {
        self.f.nvars() - 1
    }

    pub fn field(&self) -> Field {
        self.f.field()
    }

    pub fn is_cubic(&self) -> bool {
        self.degree == 3
    }

    /// Degree of the Hessian polynomial, `(n+1)(d-2)`.
    pub fn hessian_degree(&self) -> u32 {
        self.nvars() as u32 * (self.degree - 2)
    }

    pub fn gradient(&self) -> &[MultiPoly] {
        self.gradient.get_or_init(|| {
            (0..self.nvars())
                .map(|i| self.f.partial(i).expect("index in range"))
                .collect()
        })
    }

    pub fn hessian(&self) -> &PolyMatrix {
        self.hessian.get_or_init(|| {
            let g = self.gradient();
            let n = self.nvars();
            let mut rows = vec![vec![MultiPoly::zero(self.field(), n); n]; n];
            for i in 0..n {
                for j in i..n {
                    let e = g[i].partial(j).expect("index in range");
                    rows[j][i] = e.clone();
                    rows[i][j] = e;
                }
            }
            PolyMatrix::from_rows(rows).expect("second partials share a degree")
        })
    }

    pub fn hessian_poly(&self) -> &MultiPoly {
        self.hpoly
            .get_or_init(|| self.hessian().det().expect("size within scope"))
    }

    pub fn hessian_at(&self, p: &[Scalar]) -> Result<ScalarMatrix> {
        self.hessian().eval(p)
    }

    pub fn rank_at(&self, p: &ProjPoint) -> Result<usize> {
        Ok(self.hessian_at(p.coords())?.rank())
    }

    pub fn in_dk(&self, p: &ProjPoint, k: usize) -> Result<bool> {
        Ok(self.rank_at(p)? <= k)
    }

    /// Rank at `p`, cross-checked against the vanishing of `h_f(p)`.
    pub fn rank_at_checked(&self, p: &ProjPoint) -> Result<usize> {
        let r = self.rank_at(p)?;
        let on_hessian = self.hessian_poly().eval(p.coords())?.is_zero();
        if on_hessian != (r < self.nvars()) {
            return Err(Error::Inconsistent(format!(
                "rank {r} at {p} disagrees with h_f(p) = 0: {on_hessian}"
            )));
        }
        Ok(r)
    }

    /// `P(ker H_f(p))`.
    pub fn iota(&self, p: &ProjPoint) -> Result<LinearSpace> {
        let h = self.hessian_at(p.coords())?;
        let (_, ker) = h.rank_kernel();
        if ker.is_empty() {
            return Err(Error::EmptyKernel);
        }
        let pts = ker
            .into_iter()
            .map(ProjPoint::new)
            .collect::<Result<Vec<_>>>()?;
        LinearSpace::from_points(pts)
    }

    /// Whether `H_f(x) y = 0`.
    pub fn incidence(&self, x: &[Scalar], y: &[Scalar]) -> Result<bool> {
        Ok(self.hessian_at(x)?.mul_vec(y)?.iter().all(|v| v.is_zero()))
    }

    /// Hessian at the general point `sum lambda_i R_i` of `s`, as a matrix in
    /// fresh variables `lambda_0..lambda_k`.
    pub fn hessian_on_span(&self, s: &LinearSpace) -> Result<PolyMatrix> {
        if s.nvars() != self.nvars() {
            return Err(Error::NvarsMismatch(self.nvars(), s.nvars()));
        }
        let basis = s.basis();
        let rows: Vec<Vec<Scalar>> = (0..self.nvars())
            .map(|j| basis.iter().map(|r| r.coords()[j].clone()).collect())
            .collect();
        self.hessian()
            .map_entries(|e| e.substitute_linear(&rows))
    }

    /// Restriction to `s` written in a basis of the ambient space whose first
    /// vector is `p`. When `p` spans the kernel along `s` the first row and
    /// column vanish and the lower-right block is returned as well.
    pub fn span_block(&self, p: &ProjPoint, s: &LinearSpace) -> Result<SpanBlock> {
        let n1 = self.nvars();
        let field = self.field();
        let mut cols: Vec<Vec<Scalar>> = vec![p.coords().to_vec()];
        for i in 0..n1 {
            let mut trial = cols.clone();
            trial.push(ProjPoint::coordinate(field, n1, i).coords().to_vec());
            if ScalarMatrix::from_rows(field, trial.clone())?.rank() == trial.len() {
                cols = trial;
            }
            if cols.len() == n1 {
                break;
            }
        }
        let b = ScalarMatrix::from_rows(field, cols)?.transpose();
        let full = self.hessian_on_span(s)?.congruence(&b)?;
        let split = (0..n1).all(|j| full.get(0, j).is_zero());
        let (block, block_det) = if split && n1 > 1 {
            let idx: Vec<usize> = (1..n1).collect();
            let m = full.submatrix(&idx, &idx)?;
            let d = m.det()?;
            (Some(m), Some(d))
        } else {
            (None, None)
        };
        Ok(SpanBlock {
            basis: b,
            full,
            split,
            block,
            block_det,
        })
    }

    /// Whether the linear space lies in `D_k(f)`: all `(k+1)`-minors of the
    /// restricted Hessian vanish identically.
    pub fn verify_space_in_dk(&self, s: &LinearSpace, k: usize) -> Result<SpaceInDk> {
        let m = self.hessian_on_span(s)?;
        let g = m.generic_rank(FALSIFIER_SEED)?;
        let contained = g.rank <= k;
        let witness = if contained {
            None
        } else {
            Some(nonzero_minor_within(&m, &g.rows, &g.cols, k + 1)?)
        };
        Ok(SpaceInDk {
            k,
            dim: s.dim(),
            contained,
            generic_rank: g.rank,
            witness,
        })
    }

    /// Points `P` with `H_f(P) v = 0` for every `v` spanning `s`; cubics only,
    /// where the condition is linear in `P`.
    pub fn kernel_preimage(&self, s: &LinearSpace) -> Result<KernelPreimage> {
        self.require_cubic()?;
        let n1 = self.nvars();
        let field = self.field();
        // column i: the vectors A_i v stacked over the basis v of s
        let slopes: Vec<ScalarMatrix> = (0..n1)
            .map(|i| {
                let e = ProjPoint::coordinate(field, n1, i);
                self.hessian_at(e.coords())
            })
            .collect::<Result<_>>()?;
        let mut rows = Vec::new();
        for v in s.basis() {
            let images: Vec<Vec<Scalar>> = slopes
                .iter()
                .map(|a| a.mul_vec(v.coords()))
                .collect::<Result<_>>()?;
            for r in 0..n1 {
                rows.push((0..n1).map(|i| images[i][r].clone()).collect());
            }
        }
        let sys = ScalarMatrix::from_rows(field, rows)?;
        let ker = sys.kernel();
        if ker.is_empty() {
            return Ok(KernelPreimage {
                target_dim: s.dim(),
                solutions: None,
                points: vec![],
            });
        }
        let pts = ker
            .into_iter()
            .map(ProjPoint::new)
            .collect::<Result<Vec<_>>>()?;
        let sol = LinearSpace::from_points(pts)?;
        let mut points = Vec::new();
        for p in sol.canonical_basis() {
            let image = self.iota(&p)?;
            let equal = image.same_as(s);
            points.push(PreimagePoint {
                point: p,
                kernel_dim: image.dim(),
                equal,
            });
        }
        Ok(KernelPreimage {
            target_dim: s.dim(),
            solutions: Some(sol),
            points,
        })
    }

    /// Whether the kernel of `H_f` is `r` at the general point of `l` and
    /// contains `r` at every point of `l`.
    pub fn verify_constant_kernel(&self, l: &LinearSpace, r: &LinearSpace) -> Result<ConstantKernel> {
        if l.dim() == 0 {
            return Err(Error::Invalid("constant-kernel check needs a positive-dimensional source".into()));
        }
        let m = self.hessian_on_span(l)?;
        let mut annihilates = true;
        for v in r.basis() {
            if !m.mul_vec(v.coords())?.iter().all(|e| e.is_zero()) {
                annihilates = false;
            }
        }
        let g = m.generic_rank(FALSIFIER_SEED)?;
        let want = self
            .n()
            .checked_sub(r.dim())
            .ok_or(Error::Dimension(format!("kernel of dimension {} in P^{}", r.dim(), self.n())))?;
        let holds = annihilates && g.rank == want;
        let diagnostic = if holds {
            format!("kernel along the line is constantly {r}")
        } else if !annihilates {
            "the target line is not in the kernel at the general point".to_string()
        } else {
            format!(
                "generic rank along the source is {} (source in D_{}), expected {want}",
                g.rank, g.rank
            )
        };
        Ok(ConstantKernel {
            holds,
            annihilates,
            generic_rank: g.rank,
            diagnostic,
        })
    }

    /// `V(f)` is smooth iff the Jacobian ideal fills degree `N + 1`.
    pub fn is_smooth(&self) -> Result<bool> {
        graded::jacobian_fills_degree(self, self.hessian_degree() + 1)
    }

    pub(crate) fn require_cubic(&self) -> Result<()> {
        if self.degree != 3 {
            return Err(Error::WrongDegree {
                got: self.degree,
                expected: "3".into(),
            });
        }
        Ok(())
    }
}

/// A nonzero `size`-minor using only the given rows and columns, which must
/// carry a nonzero larger minor (one exists by Laplace expansion).
fn nonzero_minor_within(
    m: &PolyMatrix,
    rows: &[usize],
    cols: &[usize],
    size: usize,
) -> Result<MinorWitness> {
    let picks = crate::combin::combinations(rows.len(), size);
    for pr in &picks {
        let rr: Vec<usize> = pr.iter().map(|&i| rows[i]).collect();
        for pc in &picks {
            let cc: Vec<usize> = pc.iter().map(|&j| cols[j]).collect();
            let mn = m.minor(&rr, &cc)?;
            if !mn.is_zero() {
                return Ok(MinorWitness {
                    rows: rr,
                    cols: cc,
                    minor: mn.to_string(),
                });
            }
        }
    }
    Err(Error::Inconsistent("rank exceeds k but no nonzero minor".into()))
}

/// Vertex directions of the cone `V(g)`: the kernel of `v -> sum v_i d_i g`.
pub fn cone_check(g: &MultiPoly) -> Result<Option<LinearSpace>> {
    let d = g.degree().ok_or(Error::Invalid("the zero polynomial".into()))?;
    if d == 0 {
        return Err(Error::Invalid("constant polynomial".into()));
    }
    let n1 = g.nvars();
    let basis = monomials_of_degree(n1, d - 1);
    let index: std::collections::HashMap<_, _> =
        basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let field = g.field();
    let mut m = ScalarMatrix::zeros(field, basis.len(), n1);
    for i in 0..n1 {
        for (mono, c) in g.partial(i)?.terms() {
            m.set(index[mono], i, c.clone());
        }
    }
    let ker = m.kernel();
    if ker.is_empty() {
        return Ok(None);
    }
    let pts = ker
        .into_iter()
        .map(ProjPoint::new)
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(LinearSpace::from_points(pts)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub minor: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaceInDk {
    pub k: usize,
    pub dim: usize,
    pub contained: bool,
    pub generic_rank: usize,
    pub witness: Option<MinorWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PreimagePoint {
    pub point: ProjPoint,
    pub kernel_dim: usize,
    /// `iota(point)` equals the target rather than strictly containing it.
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelPreimage {
    pub target_dim: usize,
    pub solutions: Option<LinearSpace>,
    pub points: Vec<PreimagePoint>,
}

impl KernelPreimage {
    pub fn is_empty(&self) -> bool {
        self.solutions.is_none()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantKernel {
    pub holds: bool,
    pub annihilates: bool,
    pub generic_rank: usize,
    pub diagnostic: String,
}

#[derive(Clone, Debug)]
pub struct SpanBlock {
    /// Columns are the adapted basis; the first is the chosen point.
    pub basis: ScalarMatrix,
    pub full: PolyMatrix,
    pub split: bool,
    pub block: Option<PolyMatrix>,
    pub block_det: Option<MultiPoly>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    const Q: Field = Field::Rational;

    fn form(t: &str, n: usize) -> DForm {
        DForm::parse(t, n, Q).unwrap()
    }

    fn pm(rows: &[&[&str]], n: usize) -> PolyMatrix {
        PolyMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|t| parse_poly(t, n, Q).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn fermat_hessian() {
        let f = form("x0^3+x1^3+x2^3", 3);
        assert_eq!(
            f.hessian(),
            &pm(&[&["6*x0", "0", "0"], &["0", "6*x1", "0"], &["0", "0", "6*x2"]], 3)
        );
        assert_eq!(f.hessian_poly().to_string(), "216*x0*x1*x2");
        assert!(f.hessian().is_symmetric());
    }

    #[test]
    fn binary_cubic_hessian() {
        let f = form("x0^2*x1", 2);
        assert_eq!(f.hessian(), &pm(&[&["2*x1", "2*x0"], &["2*x0", "0"]], 2));
    }

    #[test]
    fn degree_gate() {
        assert!(matches!(
            DForm::parse("x0^2+x1^2", 2, Q),
            Err(Error::WrongDegree { .. })
        ));
        assert!(DForm::parse("x0^3", 1, Field::prime(3).unwrap()).is_err());
    }

    #[test]
    fn rank_and_kernel_at_coordinate_point() {
        let f = form("x0^3+x1^3+x2^3", 3);
        let p0 = ProjPoint::coordinate(Q, 3, 0);
        assert_eq!(f.rank_at_checked(&p0).unwrap(), 1);
        assert!(f.in_dk(&p0, 1).unwrap());
        let k = f.iota(&p0).unwrap();
        assert!(k.same_as(&LinearSpace::coordinate(Q, 3, &[0]).unwrap()));
        let gen = ProjPoint::from_i64(Q, &[1, 1, 1]).unwrap();
        assert_eq!(f.iota(&gen).unwrap_err(), Error::EmptyKernel);
    }

    #[test]
    fn coordinate_plane_in_fermat_hessian() {
        let f = form("x0^3+x1^3+x2^3+x3^3", 4);
        let s = LinearSpace::coordinate(Q, 4, &[0, 1]).unwrap();
        assert!(f.hessian_on_span(&s).unwrap().det().unwrap().is_zero());
        let r = f.verify_space_in_dk(&s, 3).unwrap();
        assert!(r.contained);
        assert_eq!(r.generic_rank, 2);
    }

    #[test]
    fn whole_space_in_top_stratum() {
        let f = form("x0^3+x1^3+x2^3", 3);
        let r = f.verify_space_in_dk(&LinearSpace::whole(Q, 3), 3).unwrap();
        assert!(r.contained);
        let r = f.verify_space_in_dk(&LinearSpace::whole(Q, 3), 2).unwrap();
        assert!(!r.contained);
        assert_eq!(r.witness.unwrap().minor, "216*x0*x1*x2");
    }

    #[test]
    fn fermat_kernel_preimage() {
        let f = form("x0^3+x1^3+x2^3", 3);
        let s = LinearSpace::coordinate(Q, 3, &[0]).unwrap();
        let kp = f.kernel_preimage(&s).unwrap();
        let sol = kp.solutions.unwrap();
        assert_eq!(sol.dim(), 0);
        assert_eq!(kp.points[0].point, ProjPoint::coordinate(Q, 3, 0));
        assert!(kp.points[0].equal);
    }

    #[test]
    fn smoothness() {
        assert!(form("x0^3+x1^3+x2^3", 3).is_smooth().unwrap());
        assert!(!form("x0^3", 3).is_smooth().unwrap());
        assert!(!form("x0*x1*x2 + x3^3", 4).is_smooth().unwrap());
    }

    #[test]
    fn cones() {
        let g = parse_poly("x0^3+x1^3", 3, Q).unwrap();
        let v = cone_check(&g).unwrap().unwrap();
        assert_eq!(v.dim(), 0);
        assert_eq!(v.basis()[0], ProjPoint::coordinate(Q, 3, 2));
        let h = parse_poly("216*x0*x1*x2", 3, Q).unwrap();
        assert!(cone_check(&h).unwrap().is_none());
    }

    #[test]
    fn cyclic_hessian_factors() {
        let f1 = form("x0^3 + x1^3 + x2^3 + (x0 - 2*x1 + 3*x2)^3", 3);
        let f = form("x0^3 + x1^3 + x2^3 + x3^3 + (x1 - 2*x2 + 3*x3)^3", 4);
        let lift = f1.hessian_poly().embed(4, 1).unwrap();
        let x0 = MultiPoly::var(Q, 4, 0).scale_i64(6);
        let q = f.hessian_poly().div_exact(&x0).expect("x0 divides");
        assert_eq!(q, lift);
    }

    #[test]
    fn degenerate_hessian_detected() {
        let f = form("x0*x3^2 + x1*x3*x4 + x2*x4^2", 5);
        assert!(f.hessian_poly().is_zero());
        assert!(cone_check(f.poly()).unwrap().is_none());
        let at = ProjPoint::from_i64(Q, &[1, 2, 3, 4, 5]).unwrap();
        assert!(f.hessian_at(at.coords()).unwrap().det().unwrap().is_zero());
    }
}
