//! Constructors and verifiers for special families of cubics: split
//! (Thom-Sebastiani) and cyclic forms, sums of cubes of linear forms and the
//! rank-six configuration, the plane-carrying linear system, and the
//! two-parameter family whose Hessian rank obstructs equal Hessians.

use rand::Rng;
use serde::Serialize;

use crate::combin::{combinations, complement};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graded::apolar_product_zero;
use crate::hessian::{DForm, SpaceInDk};
use crate::linalg::ScalarMatrix;
use crate::poly::{change_coords, monomials_of_degree, LinearChange, Monomial, MultiPoly, MAX_VARS};
use crate::polymatrix::PolyMatrix;
use crate::rng::{seeded, small_nonzero, Rng8};
use crate::space::{LinearSpace, ProjPoint};

/// Redraws allowed before a random generator gives up.
pub const MAX_REDRAWS: usize = 16;

/// A split form together with the certificate that the coordinate space of
/// its first block lies in the expected stratum.
#[derive(Clone, Debug, Serialize)]
pub struct TsForm {
    pub f: String,
    /// Index of the last variable of the first block.
    pub split: usize,
    pub block_in_stratum: SpaceInDk,
    #[serde(skip)]
    poly: MultiPoly,
}

impl TsForm {
    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }
}

/// `f1(x0..xk) + f2(x{k+1}..xn)` with `k + 1 = f1.nvars()`.
pub fn gen_ts(f1: &MultiPoly, f2: &MultiPoly) -> Result<TsForm> {
    if f1.field() != f2.field() {
        return Err(Error::FieldMismatch);
    }
    let total = f1.nvars() + f2.nvars();
    if total > MAX_VARS {
        return Err(Error::TooManyVariables {
            got: total,
            max: MAX_VARS,
        });
    }
    let f = f1.embed(total, 0)?.try_add(&f2.embed(total, f1.nvars())?)?;
    certify_split(f, f1.nvars() - 1)
}

/// Sum of two forms in the same variables whose supports are disjoint.
pub fn ts_sum(f1: &MultiPoly, f2: &MultiPoly) -> Result<MultiPoly> {
    if f1.support_mask() & f2.support_mask() != 0 {
        return Err(Error::Invalid("the two forms share a variable".into()));
    }
    f1.try_add(f2)
}

/// `x0^3 + f1(x1..xn)`.
pub fn gen_cyclic(f1: &MultiPoly) -> Result<TsForm> {
    let d = f1.degree().ok_or(Error::Invalid("the zero polynomial".into()))?;
    let cube = MultiPoly::var(f1.field(), 1, 0).pow(d);
    gen_ts(&cube, f1)
}

fn certify_split(f: MultiPoly, k: usize) -> Result<TsForm> {
    let nvars = f.nvars();
    let form = DForm::new(f.clone())?;
    let vanishing: Vec<usize> = (k + 1..nvars).collect();
    let space = LinearSpace::coordinate(f.field(), nvars, &vanishing)?;
    let block_in_stratum = form.verify_space_in_dk(&space, k + 1)?;
    Ok(TsForm {
        f: f.to_string(),
        split: k,
        block_in_stratum,
        poly: f,
    })
}

/// Whether `f(Ax)` has no monomial involving both `x0..xk` and the rest.
pub fn verify_ts_split(f: &MultiPoly, a: &LinearChange, k: usize) -> Result<bool> {
    if k + 1 >= f.nvars() {
        return Err(Error::Invalid(format!("split index {k} leaves an empty block")));
    }
    let g = change_coords(f, a)?;
    let low: u32 = (1u32 << (k + 1)) - 1;
    let nvars = f.nvars();
    let split = g.terms().all(|(m, _)| {
        let mask = (0..nvars).fold(0u32, |acc, i| if m.exponent(i) > 0 { acc | 1 << i } else { acc });
        mask & low == 0 || mask & !low == 0
    });
    Ok(split)
}

#[derive(Clone, Debug, Serialize)]
pub struct TsFalsifier {
    pub trials: usize,
    pub seed: u64,
    /// First `(trial, k)` at which a random change of coordinates split `f`.
    pub split_found: Option<(usize, usize)>,
}

impl TsFalsifier {
    pub fn passed(&self) -> bool {
        self.split_found.is_none()
    }
}

/// Random coordinate changes never splitting `f`; evidence, not proof, that
/// `f` is not split.
pub fn ts_falsifier(f: &MultiPoly, trials: usize, seed: u64) -> Result<TsFalsifier> {
    let mut rng = seeded(seed);
    let n1 = f.nvars();
    for t in 0..trials {
        let a = random_change(&mut rng, f.field(), n1)?;
        for k in 0..n1 - 1 {
            if verify_ts_split(f, &a, k)? {
                return Ok(TsFalsifier {
                    trials,
                    seed,
                    split_found: Some((t, k)),
                });
            }
        }
    }
    Ok(TsFalsifier {
        trials,
        seed,
        split_found: None,
    })
}

/// A random invertible matrix with small integer entries.
pub fn random_change(rng: &mut Rng8, field: Field, n: usize) -> Result<LinearChange> {
    for _ in 0..MAX_REDRAWS {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        if let Ok(a) = LinearChange::new(ScalarMatrix::from_i64_rows(field, &rows)) {
            return Ok(a);
        }
    }
    Err(Error::Invalid("no invertible matrix drawn".into()))
}

/// `f = sum L_i^3` for given linear forms.
#[derive(Clone, Debug)]
pub struct WaringForm {
    forms: Vec<Vec<Scalar>>,
    normal: Option<Vec<Scalar>>,
    f: MultiPoly,
}

impl WaringForm {
    pub fn from_forms(field: Field, forms: Vec<Vec<Scalar>>) -> Result<WaringForm> {
        let nvars = forms.first().map(|v| v.len()).ok_or(Error::Invalid("no linear forms".into()))?;
        let mut f = MultiPoly::zero(field, nvars);
        for l in &forms {
            if l.len() != nvars {
                return Err(Error::NvarsMismatch(nvars, l.len()));
            }
            f = f.try_add(&MultiPoly::linear_form(field, l).pow(3))?;
        }
        Ok(WaringForm {
            forms,
            normal: None,
            f,
        })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.f
    }

    pub fn forms(&self) -> &[Vec<Scalar>] {
        &self.forms
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    /// The vector `a` of the normal form, if built by [`gen_waring_normal`].
    pub fn normal_vector(&self) -> Option<&[Scalar]> {
        self.normal.as_deref()
    }

    pub fn dform(&self) -> Result<DForm> {
        DForm::new(self.f.clone())
    }

    /// Points cut out by `n` of the linear forms, with their index sets.
    pub fn vertices(&self) -> Result<Vec<(Vec<usize>, ProjPoint)>> {
        let n = self.nvars() - 1;
        combinations(self.forms.len(), n)
            .into_iter()
            .map(|idx| {
                let s = self.cut(&idx)?;
                if s.dim() != 0 {
                    return Err(Error::Invalid(format!("forms {idx:?} are dependent")));
                }
                Ok((idx, s.basis()[0].clone()))
            })
            .collect()
    }

    /// `V(L_i : i in idx)`.
    pub fn cut(&self, idx: &[usize]) -> Result<LinearSpace> {
        let field = self.f.field();
        let forms = idx
            .iter()
            .map(|&i| MultiPoly::linear_form(field, &self.forms[i]))
            .collect();
        LinearSpace::from_forms(field, self.nvars(), forms)
    }
}

/// `x0^3 + ... + xn^3 + (a0 x0 + ... + an xn)^3` with every `a_i` nonzero.
pub fn gen_waring_normal(field: Field, a: &[Scalar]) -> Result<WaringForm> {
    if let Some(i) = a.iter().position(|c| c.is_zero()) {
        return Err(Error::Refused(format!(
            "a_{i} = 0: the form splits off x_{i}^3 and is of split type"
        )));
    }
    let n1 = a.len();
    let mut forms: Vec<Vec<Scalar>> = (0..n1)
        .map(|i| ProjPoint::coordinate(field, n1, i).coords().to_vec())
        .collect();
    forms.push(a.to_vec());
    let mut w = WaringForm::from_forms(field, forms)?;
    w.normal = Some(a.to_vec());
    Ok(w)
}

/// Integers in `[1, 9]`, the range used for normal-form vectors.
pub fn random_normal_vector(rng: &mut Rng8, len: usize) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(1..=9)).collect()
}

pub fn scalars(field: Field, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| field.from_i64(x)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosedForms {
    /// `H_f = 6 (diag(x) + L a a^T)`.
    pub hessian_matrix: bool,
    /// `h_f = 6^(n+1) (prod x_i + L sum a_i^2 prod_{j != i} x_j)`.
    pub hessian_poly: bool,
    pub scalar: String,
}

impl ClosedForms {
    pub fn holds(&self) -> bool {
        self.hessian_matrix && self.hessian_poly
    }
}

pub fn closed_forms_check(w: &WaringForm) -> Result<ClosedForms> {
    let a = w
        .normal_vector()
        .ok_or(Error::Invalid("not a normal form".into()))?;
    let field = w.poly().field();
    let n1 = a.len();
    let f = w.dform()?;
    let l = MultiPoly::linear_form(field, a);
    let six = field.from_i64(6);
    let mut rows = Vec::with_capacity(n1);
    for i in 0..n1 {
        let mut row = Vec::with_capacity(n1);
        for j in 0..n1 {
            let mut e = l.scale(&(&a[i] * &a[j]));
            if i == j {
                e = &e + &MultiPoly::var(field, n1, i);
            }
            row.push(e.scale(&six));
        }
        rows.push(row);
    }
    let expected_matrix = PolyMatrix::from_rows(rows)?;
    let xs: Vec<MultiPoly> = (0..n1).map(|i| MultiPoly::var(field, n1, i)).collect();
    let product = |skip: Option<usize>| {
        xs.iter()
            .enumerate()
            .filter(|(j, _)| Some(*j) != skip)
            .fold(MultiPoly::constant(field, n1, field.one()), |acc, (_, x)| &acc * x)
    };
    let mut inner = product(None);
    for i in 0..n1 {
        inner = &inner + &(&l * &product(Some(i))).scale(&(&a[i] * &a[i]));
    }
    let scalar = six.pow(n1 as u32);
    Ok(ClosedForms {
        hessian_matrix: f.hessian() == &expected_matrix,
        hessian_poly: f.hessian_poly() == &inner.scale(&scalar),
        scalar: scalar.to_string(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigItem {
    /// Indices of the linear forms cutting the item out; `5` is `L`.
    pub index: Vec<usize>,
    pub space: LinearSpace,
}

/// Points, lines and planes cut out by four, three and two of the six forms
/// `x0, .., x4, L` of a rank-six normal form.
#[derive(Clone, Debug, Serialize)]
pub struct Rank6Config {
    pub points: Vec<ConfigItem>,
    pub lines: Vec<ConfigItem>,
    pub planes: Vec<ConfigItem>,
}

impl Rank6Config {
    fn find<'a>(items: &'a [ConfigItem], idx: &[usize]) -> &'a ConfigItem {
        items.iter().find(|c| c.index == idx).expect("complete configuration")
    }

    pub fn point(&self, idx: &[usize]) -> &ConfigItem {
        Self::find(&self.points, idx)
    }

    pub fn line(&self, idx: &[usize]) -> &ConfigItem {
        Self::find(&self.lines, idx)
    }

    pub fn plane(&self, idx: &[usize]) -> &ConfigItem {
        Self::find(&self.planes, idx)
    }
}

pub fn rank6_config(w: &WaringForm) -> Result<Rank6Config> {
    if w.nvars() != 5 || w.forms().len() != 6 {
        return Err(Error::Invalid("the configuration needs six forms in five variables".into()));
    }
    if let Some(a) = w.normal_vector() {
        if a.iter().any(|c| c.is_zero()) {
            return Err(Error::Refused("normal-form vector has a zero entry".into()));
        }
    }
    let build = |k: usize, dim: usize| -> Result<Vec<ConfigItem>> {
        let items = combinations(6, k)
            .into_iter()
            .map(|index| {
                let space = w.cut(&index)?;
                if space.dim() != dim {
                    return Err(Error::Invalid(format!(
                        "forms {index:?} cut out a space of dimension {}, expected {dim}",
                        space.dim()
                    )));
                }
                Ok(ConfigItem { index, space })
            })
            .collect::<Result<Vec<_>>>()?;
        for (i, x) in items.iter().enumerate() {
            if items[..i].iter().any(|y| y.space.same_as(&x.space)) {
                return Err(Error::Invalid(format!("coincident configuration item {:?}", x.index)));
            }
        }
        Ok(items)
    };
    Ok(Rank6Config {
        points: build(4, 0)?,
        lines: build(3, 1)?,
        planes: build(2, 2)?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigReport {
    pub lines_per_plane: Vec<usize>,
    pub points_per_plane: Vec<usize>,
    pub points_per_line: Vec<usize>,
    pub lines_per_point: Vec<usize>,
    pub planes_per_line: Vec<usize>,
    /// Geometric containment agrees with containment of index sets.
    pub incidence_matches_indices: bool,
    pub counts_hold: bool,
    pub point_ranks: Vec<usize>,
    /// Every line lies in `D_{n-1}`, the singular locus of `V(h_f)`.
    pub lines_in_singular_locus: bool,
    /// The kernel along each line is the line of the complementary forms.
    pub line_kernels: bool,
    /// The kernel at each point is the plane of the complementary forms.
    pub point_kernels: bool,
    /// The kernel at the general point of each plane is the complementary point.
    pub plane_kernels: bool,
    /// The only point whose kernel is a given plane is the complementary point.
    pub plane_preimages: bool,
}

impl ConfigReport {
    pub fn holds(&self) -> bool {
        self.incidence_matches_indices
            && self.counts_hold
            && self.point_ranks.iter().all(|&r| r == 2)
            && self.lines_in_singular_locus
            && self.line_kernels
            && self.point_kernels
            && self.plane_kernels
            && self.plane_preimages
    }
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

pub fn verify_config(f: &DForm, cfg: &Rank6Config) -> Result<ConfigReport> {
    let mut agree = true;
    // a space cut by more forms is contained in one cut by fewer
    let mut count = |outer: &[ConfigItem], inner: &[ConfigItem]| -> Vec<usize> {
        outer
            .iter()
            .map(|o| {
                inner
                    .iter()
                    .filter(|i| {
                        let geo = o.space.contains(&i.space);
                        agree &= geo == subset(&o.index, &i.index);
                        geo
                    })
                    .count()
            })
            .collect()
    };
    let lines_per_plane = count(&cfg.planes, &cfg.lines);
    let points_per_plane = count(&cfg.planes, &cfg.points);
    let points_per_line = count(&cfg.lines, &cfg.points);
    let planes_per_line: Vec<usize> = cfg
        .lines
        .iter()
        .map(|l| cfg.planes.iter().filter(|p| p.space.contains(&l.space)).count())
        .collect();
    let lines_per_point: Vec<usize> = cfg
        .points
        .iter()
        .map(|p| cfg.lines.iter().filter(|l| l.space.contains(&p.space)).count())
        .collect();
    let counts_hold = lines_per_plane.iter().all(|&c| c == 4)
        && points_per_plane.iter().all(|&c| c == 6)
        && points_per_line.iter().all(|&c| c == 3)
        && lines_per_point.iter().all(|&c| c == 4)
        && planes_per_line.iter().all(|&c| c == 3);

    let n = f.n();
    let mut lines_in_singular_locus = true;
    let mut line_kernels = true;
    for l in &cfg.lines {
        lines_in_singular_locus &= f.verify_space_in_dk(&l.space, n - 1)?.contained;
        let other = cfg.line(&complement(6, &l.index));
        line_kernels &= f.verify_constant_kernel(&l.space, &other.space)?.holds;
    }
    let mut point_ranks = Vec::new();
    let mut point_kernels = true;
    for p in &cfg.points {
        let pt = &p.space.basis()[0];
        point_ranks.push(f.rank_at_checked(pt)?);
        let plane = cfg.plane(&complement(6, &p.index));
        point_kernels &= f.iota(pt)?.same_as(&plane.space);
    }
    let mut plane_kernels = true;
    let mut plane_preimages = true;
    for pl in &cfg.planes {
        let pt = cfg.point(&complement(6, &pl.index));
        plane_kernels &= f.verify_constant_kernel(&pl.space, &pt.space)?.holds;
        let pre = f.kernel_preimage(&pl.space)?;
        plane_preimages &= match pre.solutions {
            Some(s) => s.same_as(&pt.space) && pre.points.iter().all(|q| q.equal),
            None => false,
        };
    }
    Ok(ConfigReport {
        lines_per_plane,
        points_per_plane,
        points_per_line,
        lines_per_point,
        planes_per_line,
        incidence_matches_indices: agree,
        counts_hold,
        point_ranks,
        lines_in_singular_locus,
        line_kernels,
        point_kernels,
        plane_kernels,
        plane_preimages,
    })
}

/// Monomials spanning the linear system of cubics in `x0..xn` that carry
/// the plane `V(x_{n-2}, x_n)` inside their Hessian hypersurface; `W` is
/// spanned by `x0..x_{n-3}`.
pub fn star_monomials(n: usize) -> Result<Vec<Monomial>> {
    if n < 3 {
        return Err(Error::Invalid(format!("the linear system needs n >= 3, got {n}")));
    }
    if n + 1 > MAX_VARS {
        return Err(Error::TooManyVariables {
            got: n + 1,
            max: MAX_VARS,
        });
    }
    let w = n - 2;
    let lift = |m: &Monomial| Monomial::from_exponents(&m.exponents(w));
    let mono = |pairs: &[(usize, u32)]| {
        let mut e = vec![0u32; n + 1];
        for &(i, k) in pairs {
            e[i] += k;
        }
        Monomial::from_exponents(&e)
    };
    let xn = Monomial::var(n);
    let mut out = Vec::new();
    for m in monomials_of_degree(w, 3) {
        out.push(lift(&m)?);
    }
    out.push(mono(&[(n - 2, 3)])?);
    for i in 0..n {
        out.push(mono(&[(n, 2), (i, 1)])?);
    }
    for m in monomials_of_degree(w, 2) {
        out.push(lift(&m)?.checked_mul(&xn)?);
    }
    out.push(mono(&[(n, 1), (n - 2, 2)])?);
    out.push(mono(&[(n, 1), (n - 1, 2)])?);
    out.push(mono(&[(n, 1), (n - 3, 1), (n - 2, 1)])?);
    Ok(out)
}

/// A member of the plane-carrying linear system.
#[derive(Clone, Debug, Serialize)]
pub struct StarForm {
    pub n: usize,
    pub seed: Option<u64>,
    pub attempts: usize,
    pub f: String,
    pub coefficients: Vec<(String, i64)>,
    #[serde(skip)]
    form: DForm,
}

impl StarForm {
    pub fn form(&self) -> &DForm {
        &self.form
    }

    /// Coefficient of a monomial of the system, or 0.
    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.form.poly().coeff(m)
    }
}

pub fn star_from_coeffs(n: usize, coeffs: &[i64]) -> Result<StarForm> {
    let monos = star_monomials(n)?;
    if coeffs.len() != monos.len() {
        return Err(Error::Dimension(format!(
            "{} coefficients for {} monomials",
            coeffs.len(),
            monos.len()
        )));
    }
    let field = Field::Rational;
    let mut f = MultiPoly::zero(field, n + 1);
    for (m, &c) in monos.iter().zip(coeffs) {
        f = &f + &MultiPoly::monomial(field, n + 1, *m, field.from_i64(c));
    }
    let coefficients = monos
        .iter()
        .zip(coeffs)
        .map(|(m, &c)| (MultiPoly::monomial(field, n + 1, *m, field.one()).to_string(), c))
        .collect();
    Ok(StarForm {
        n,
        seed: None,
        attempts: 1,
        f: f.to_string(),
        coefficients,
        form: DForm::new(f)?,
    })
}

/// A random smooth member, coefficients in `[-9, 9] \ {0}`.
pub fn gen_star(n: usize, seed: u64) -> Result<StarForm> {
    let len = star_monomials(n)?.len();
    let mut rng = seeded(seed);
    for attempt in 1..=MAX_REDRAWS {
        let coeffs: Vec<i64> = (0..len).map(|_| small_nonzero(&mut rng)).collect();
        let mut s = star_from_coeffs(n, &coeffs)?;
        if s.form.is_smooth()? {
            s.seed = Some(seed);
            s.attempts = attempt;
            return Ok(s);
        }
    }
    Err(Error::Invalid(format!(
        "no smooth member in {MAX_REDRAWS} draws from seed {seed}"
    )))
}

/// A form with every coefficient drawn from `[-bound, bound]`.
pub fn random_form(rng: &mut Rng8, field: Field, nvars: usize, degree: u32, bound: i64) -> MultiPoly {
    let mut f = MultiPoly::zero(field, nvars);
    for m in monomials_of_degree(nvars, degree) {
        let c = crate::rng::small(rng, bound);
        if c != 0 {
            f = &f + &MultiPoly::monomial(field, nvars, m, field.from_i64(c));
        }
    }
    f
}

/// A random smooth form over Q, redrawn until smooth.
pub fn gen_random_smooth(nvars: usize, degree: u32, seed: u64) -> Result<DForm> {
    let mut rng = seeded(seed);
    for _ in 0..MAX_REDRAWS {
        let f = random_form(&mut rng, Field::Rational, nvars, degree, 5);
        if f.is_zero() {
            continue;
        }
        let d = DForm::new(f)?;
        if d.is_smooth()? {
            return Ok(d);
        }
    }
    Err(Error::Invalid(format!(
        "no smooth form in {MAX_REDRAWS} draws from seed {seed}"
    )))
}

/// `V(x_{n-2}, x_n)`.
pub fn star_plane(n: usize) -> Result<LinearSpace> {
    LinearSpace::coordinate(Field::Rational, n + 1, &[n - 2, n])
}

#[derive(Clone, Debug, Serialize)]
pub struct StarReport {
    pub n: usize,
    pub plane: String,
    pub in_hessian: SpaceInDk,
    pub preimage_empty: bool,
    pub smooth: bool,
}

impl StarReport {
    pub fn holds(&self) -> bool {
        self.in_hessian.contained && self.preimage_empty && self.smooth
    }
}

/// The plane lies in the Hessian hypersurface yet is the kernel of no point.
pub fn verify_star(s: &StarForm) -> Result<StarReport> {
    let plane = star_plane(s.n)?;
    let f = s.form();
    Ok(StarReport {
        n: s.n,
        plane: plane.to_string(),
        in_hessian: f.verify_space_in_dk(&plane, s.n)?,
        preimage_empty: f.kernel_preimage(&plane)?.is_empty(),
        smooth: f.is_smooth()?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoLinesReport {
    /// Upper-left 2x2 determinant of the Hessian on the plane.
    pub p: String,
    pub minor_22: bool,
    pub minor_23: bool,
    pub minor_33: bool,
    pub p_nonzero: bool,
    pub discriminant: String,
    pub two_lines: bool,
    pub falsifier: TsFalsifier,
    pub diagnostics: Vec<String>,
}

impl TwoLinesReport {
    pub fn holds(&self) -> bool {
        self.minor_22 && self.minor_23 && self.minor_33 && self.p_nonzero && self.two_lines
    }
}

/// On the plane `V(x2, x4)` of a threefold member: the three 4x4 minors
/// that cut out its intersection with `D_3` factor through the quadric `p`
/// in `x0, x1`, and `p` is two distinct lines.
pub fn star_two_lines_check(s: &StarForm, falsifier_trials: usize) -> Result<TwoLinesReport> {
    if s.n != 4 {
        return Err(Error::Invalid("the two-lines check is for threefolds".into()));
    }
    let f = s.form();
    let field = f.field();
    let n1 = 5;
    let images: Vec<MultiPoly> = (0..n1)
        .map(|i| {
            if i == 2 || i == 4 {
                MultiPoly::zero(field, n1)
            } else {
                MultiPoly::var(field, n1, i)
            }
        })
        .collect();
    let h = f.hessian().map_entries(|e| e.substitute(&images))?;
    let without = |r: usize| -> Vec<usize> { (0..n1).filter(|&i| i != r).collect() };
    let p = h.minor(&[0, 1], &[0, 1])?;
    let x = |i: usize| MultiPoly::var(field, n1, i);
    let mono = |e: &[u32]| Monomial::from_exponents(e);
    // entries (3,4) and (2,4) predicted from the coefficients alone
    let c34 = s.coeff(&mono(&[0, 0, 0, 2, 1])?);
    let c24 = s.coeff(&mono(&[0, 1, 1, 0, 1])?);
    let e34 = x(3).scale(&(&c34 * &field.from_i64(2)));
    let e24 = x(1).scale(&c24);
    let minus_p = -&p;
    let minor_22 = h.minor(&without(2), &without(2))? == &(&e34 * &e34) * &minus_p;
    let minor_23 = h.minor(&without(2), &without(3))? == &(&e24 * &e34) * &minus_p;
    let minor_33 = h.minor(&without(3), &without(3))? == &(&e24 * &e24) * &minus_p;
    let pc = |e: &[u32]| -> Result<Scalar> { Ok(p.coeff(&mono(e)?)) };
    let (qa, qb, qc) = (pc(&[2, 0, 0, 0, 0])?, pc(&[1, 1, 0, 0, 0])?, pc(&[0, 2, 0, 0, 0])?);
    let binary = p.terms().all(|(m, _)| m.exponent(0) + m.exponent(1) == 2);
    let disc = &(&qb * &qb) - &(&field.from_i64(4) * &(&qa * &qc));
    let mut diagnostics = Vec::new();
    if c34.is_zero() {
        diagnostics.push("coefficient of x3^2*x4 vanishes: minor (2,2) is identically zero".into());
    }
    if c24.is_zero() {
        diagnostics.push("coefficient of x1*x2*x4 vanishes: minor (3,3) is identically zero".into());
    }
    if p.is_zero() {
        diagnostics.push("p vanishes identically: the plane lies in D_3, a split-type signature".into());
    }
    Ok(TwoLinesReport {
        p: p.to_string(),
        minor_22,
        minor_23,
        minor_33,
        p_nonzero: !p.is_zero(),
        discriminant: disc.to_string(),
        two_lines: binary && !p.is_zero() && !disc.is_zero(),
        falsifier: ts_falsifier(f.poly(), falsifier_trials, s.seed.unwrap_or(0))?,
        diagnostics,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Step2Report {
    pub g: String,
    pub point: ProjPoint,
    /// Minor on rows and columns `{0, 1, 4}` of `H_g` at the point.
    pub minor: String,
    /// `3 lambda^2 a0^2 a1^2 alpha0 a4` times `2^3` from the overall
    /// factor 2 of the Hessian.
    pub expected: String,
    pub matches: bool,
    pub rank: usize,
    /// `d_i d_j g = 0` for `0 <= i < j <= 3`.
    pub apolar_relations: bool,
}

impl Step2Report {
    pub fn holds(&self) -> bool {
        self.matches && self.rank > 2 && self.apolar_relations
    }
}

/// `g = sum alpha_k x_k^3 + lambda L x4^2` and its Hessian rank at
/// `[-a4 : 0 : 0 : 0 : a0]`.
pub fn step2_family(alpha: &[Scalar], lambda: &Scalar, a: &[Scalar]) -> Result<(MultiPoly, Step2Report)> {
    if alpha.len() != 5 || a.len() != 5 {
        return Err(Error::Dimension("five alphas and five a_i expected".into()));
    }
    if lambda.is_zero() {
        return Err(Error::Refused("lambda = 0 leaves a sum of cubes, a split form".into()));
    }
    if let Some(i) = a.iter().position(|c| c.is_zero()) {
        return Err(Error::Refused(format!("a_{i} = 0")));
    }
    if let Some(i) = alpha[..4].iter().position(|c| c.is_zero()) {
        return Err(Error::Refused(format!(
            "alpha_{i} = 0 makes the coordinate point P_{i} singular on V(g)"
        )));
    }
    let field = lambda.field();
    let x = |i: usize| MultiPoly::var(field, 5, i);
    let l = MultiPoly::linear_form(field, a);
    let mut g = (&l * &x(4).pow(2)).scale(lambda);
    for (k, al) in alpha.iter().enumerate() {
        g = &g + &x(k).pow(3).scale(al);
    }
    let form = DForm::new(g.clone())?;
    let coords = vec![-&a[4], field.zero(), field.zero(), field.zero(), a[0].clone()];
    let hm = form.hessian_at(&coords)?;
    let point = ProjPoint::new(coords)?;
    let minor = hm.submatrix(&[0, 1, 4], &[0, 1, 4]).det()?;
    let expected = &(&(&(&lambda.pow(2) * &a[0].pow(2)) * &a[1].pow(2)) * &(&alpha[0] * &a[4])) * &field.from_i64(24);
    let e = |i: usize| ProjPoint::coordinate(field, 5, i).coords().to_vec();
    let mut apolar_relations = true;
    for i in 0..4 {
        for j in i + 1..4 {
            apolar_relations &= apolar_product_zero(&form, &e(i), &e(j))?;
        }
    }
    let rank = hm.rank();
    Ok((
        g.clone(),
        Step2Report {
            g: g.to_string(),
            point,
            minor: minor.to_string(),
            expected: expected.to_string(),
            matches: minor == expected,
            rank,
            apolar_relations,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    const Q: Field = Field::Rational;

    fn p(t: &str, n: usize) -> MultiPoly {
        parse_poly(t, n, Q).unwrap()
    }

    #[test]
    fn cyclic_and_split_forms() {
        let g = p("x0^3+x1^3+x2^3+x3^3+(x0+2*x1+3*x2+4*x3)^3", 4);
        let c = gen_cyclic(&g).unwrap();
        assert_eq!(c.split, 0);
        assert!(c.block_in_stratum.contained);
        let t = gen_ts(&p("x0^3+x1^3+x2^3+(x0+x1+x2)^3", 3), &p("x0^3+x1^3+x2^3+(x0-x1+2*x2)^3", 3)).unwrap();
        assert_eq!(t.poly().nvars(), 6);
        assert!(t.block_in_stratum.contained);
        assert!(ts_sum(&p("x0^3", 3), &p("x0*x1^2", 3)).is_err());
        let id = LinearChange::identity(Q, 6);
        assert!(verify_ts_split(t.poly(), &id, 2).unwrap());
        assert!(!verify_ts_split(t.poly(), &id, 1).unwrap());
    }

    #[test]
    fn split_round_trip() {
        let fermat = p("x0^3+x1^3+x2^3+x3^3", 4);
        let mut rng = seeded(5);
        let a = random_change(&mut rng, Q, 4).unwrap();
        let g = change_coords(&fermat, &a.inverse()).unwrap();
        for k in 0..3 {
            assert!(verify_ts_split(&g, &a, k).unwrap());
        }
    }

    #[test]
    fn closed_forms() {
        for a in [[1, 1, 1, 1, 1], [1, 2, 3, 4, 5]] {
            let w = gen_waring_normal(Q, &scalars(Q, &a)).unwrap();
            let r = closed_forms_check(&w).unwrap();
            assert!(r.holds());
            assert_eq!(r.scalar, "7776");
        }
        assert!(matches!(
            gen_waring_normal(Q, &scalars(Q, &[1, 1, 1, 1, 0])),
            Err(Error::Refused(_))
        ));
    }

    #[test]
    fn star_monomial_count() {
        // n = 3: x0^3, x1^3, x3^2*{x0,x1,x2}, x3*x0^2, x3*{x1^2, x2^2, x0*x1}
        assert_eq!(star_monomials(3).unwrap().len(), 9);
        // n = 4: four cubics in x0, x1, then x2^3, four x4^2*x_i, three
        // x4*Sym^2 and x4*{x2^2, x3^2, x1*x2}
        assert_eq!(star_monomials(4).unwrap().len(), 15);
    }

    #[test]
    fn surface_member() {
        let s = gen_star(3, 1).unwrap();
        let r = verify_star(&s).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn step2_minor() {
        let one = scalars(Q, &[1, 1, 1, 1, 1]);
        let (_, r) = step2_family(&one, &Q.one(), &one).unwrap();
        assert_eq!(r.minor, "24");
        assert!(r.holds());
        assert!(matches!(step2_family(&one, &Q.zero(), &one), Err(Error::Refused(_))));
        let mut alpha = one.clone();
        alpha[0] = Q.zero();
        assert!(matches!(step2_family(&alpha, &Q.one(), &one), Err(Error::Refused(_))));
    }
}
