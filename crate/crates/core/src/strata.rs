//! Point counts of rank strata and of the singular locus of the Hessian
//! hypersurface over prime fields, and dimension estimates fitted from
//! counts at two primes.
//!
//! Counts over `F_p` only see points rational over `F_p`; they are evidence
//! about the geometry, never a proof of it.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{inv_mod, Field};
use crate::hessian::DForm;
use crate::linalg::rank_mod_p_in_place;
use crate::poly::MultiPoly;
use crate::rng::seeded;
use crate::space::ProjPoint;

/// Largest projective space size enumerated point by point.
pub const FULL_ENUMERATION_BOUND: u64 = 2_000_000;

/// Points listed in a report; larger strata report the count only.
pub const LIST_LIMIT: usize = 2_000;

const CHUNK: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stratum {
    /// Points where the Hessian matrix has rank at most `k`.
    Rank(usize),
    /// Singular points of the Hessian hypersurface `V(h_f)`.
    HessianSingular,
}

impl std::fmt::Display for Stratum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Stratum::Rank(k) => write!(f, "D_{k}"),
            Stratum::HessianSingular => write!(f, "Sing(V(h_f))"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Mode {
    Full,
    Sampled { trials: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct Sampling {
    pub trials: u64,
    pub hits: u64,
    /// `hits / trials` scaled to the number of points of `P^n(F_p)`.
    pub estimated_count: f64,
    /// One binomial standard error of the estimate.
    pub std_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrataReport {
    pub prime: u64,
    pub stratum: Stratum,
    pub mode: Mode,
    pub seed: u64,
    /// Exact in full mode; hits in sampled mode.
    pub count: u64,
    pub points: Option<Vec<String>>,
    pub sampling: Option<Sampling>,
    pub warning: Option<String>,
}

impl StrataReport {
    pub fn point_list(&self) -> &[String] {
        self.points.as_deref().unwrap_or(&[])
    }
}

/// A polynomial compiled for evaluation over `F_p`.
#[derive(Clone, Debug)]
struct ModPoly {
    terms: Vec<(u64, [u8; 8])>,
}

impl ModPoly {
    fn new(f: &MultiPoly, p: u64) -> Result<ModPoly> {
        let terms = f
            .terms()
            .filter_map(|(m, c)| {
                let c = c.reduce_mod(p);
                match c {
                    Some(0) => None,
                    Some(c) => {
                        let mut e = [0u8; 8];
                        for (i, slot) in e.iter_mut().enumerate().take(f.nvars()) {
                            *slot = m.exponent(i) as u8;
                        }
                        Some(Ok((c, e)))
                    }
                    None => Some(Err(Error::BadPrime(p))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ModPoly { terms })
    }

    /// `powers[i * stride + e]` holds `x_i^e`.
    fn eval(&self, powers: &[u64], stride: usize, p: u64) -> u64 {
        let mut acc = 0u64;
        for (c, e) in &self.terms {
            let mut t = *c;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t * powers[i * stride + k as usize] % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }
}

fn fill_powers(x: &[u64], stride: usize, p: u64, out: &mut Vec<u64>) {
    out.clear();
    for &v in x {
        let mut acc = 1u64;
        for _ in 0..stride {
            out.push(acc);
            acc = acc * v % p;
        }
    }
}

/// Per-thread buffers reused across points.
#[derive(Default)]
struct Scratch {
    powers: Vec<u64>,
    mat: Vec<u64>,
}

/// Everything needed to test one point, compiled once per prime.
struct Probe {
    p: u64,
    nvars: usize,
    stride: usize,
    stratum: Stratum,
    entries: Vec<ModPoly>,
    hess_grad: Vec<ModPoly>,
}

impl Probe {
    fn new(f: &DForm, p: u64, stratum: Stratum) -> Result<Probe> {
        let nvars = f.nvars();
        let h = f.hessian();
        let entries = (0..nvars)
            .flat_map(|i| (0..nvars).map(move |j| (i, j)))
            .map(|(i, j)| ModPoly::new(h.get(i, j), p))
            .collect::<Result<Vec<_>>>()?;
        let hess_grad = match stratum {
            Stratum::Rank(_) => vec![],
            Stratum::HessianSingular => {
                let hp = f.hessian_poly();
                (0..nvars)
                    .map(|i| ModPoly::new(&hp.partial(i)?, p))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Ok(Probe {
            p,
            nvars,
            stride: f.hessian_degree().max(f.degree()) as usize + 1,
            stratum,
            entries,
            hess_grad,
        })
    }

    fn hits(&self, x: &[u64], s: &mut Scratch) -> bool {
        fill_powers(x, self.stride, self.p, &mut s.powers);
        s.mat.clear();
        s.mat.extend(self.entries.iter().map(|e| e.eval(&s.powers, self.stride, self.p)));
        let rank = rank_mod_p_in_place(&mut s.mat, self.nvars, self.nvars, self.p);
        match self.stratum {
            Stratum::Rank(k) => rank <= k,
            // h_f is the determinant, so only singular matrices can qualify
            Stratum::HessianSingular => {
                rank < self.nvars
                    && self
                        .hess_grad
                        .iter()
                        .all(|g| g.eval(&s.powers, self.stride, self.p) == 0)
            }
        }
    }
}

/// Jacobian matrices of a list of defining equations over `F_p`.
struct TangentProbe {
    p: u64,
    nvars: usize,
    stride: usize,
    rows: Vec<Vec<ModPoly>>,
}

impl TangentProbe {
    fn new(polys: &[MultiPoly], p: u64) -> Result<TangentProbe> {
        let nvars = polys.first().map(|f| f.nvars()).unwrap_or(0);
        let rows = polys
            .iter()
            .map(|f| {
                (0..nvars)
                    .map(|j| ModPoly::new(&f.partial(j)?, p))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let stride = polys.iter().filter_map(|f| f.degree()).max().unwrap_or(0) as usize + 1;
        Ok(TangentProbe { p, nvars, stride, rows })
    }

    /// Projective dimension of the Zariski tangent space at `x`.
    fn dimension(&self, x: &[u64], s: &mut Scratch) -> usize {
        fill_powers(x, self.stride, self.p, &mut s.powers);
        s.mat.clear();
        for row in &self.rows {
            s.mat.extend(row.iter().map(|g| g.eval(&s.powers, self.stride, self.p)));
        }
        let rank = rank_mod_p_in_place(&mut s.mat, self.rows.len(), self.nvars, self.p);
        self.nvars - 1 - rank
    }
}

fn scan(total: u64, nvars: usize, p: u64, test: impl Fn(&[u64], &mut Scratch) -> bool + Sync) -> Vec<u64> {
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(total);
            let mut s = Scratch::default();
            (lo..hi)
                .filter(|&i| test(&point_at(i, nvars, p), &mut s))
                .collect::<Vec<u64>>()
        })
        .flatten_iter()
        .collect()
}

fn full_size(nvars: usize, p: u64) -> Result<u64> {
    let total = projective_size(nvars, p).unwrap_or(u64::MAX);
    if total > FULL_ENUMERATION_BOUND {
        return Err(Error::EnumerationTooLarge {
            points: total as u128,
            bound: FULL_ENUMERATION_BOUND as u128,
        });
    }
    Ok(total)
}

/// Number of points of `P^(nvars-1)(F_p)`.
pub fn projective_size(nvars: usize, p: u64) -> Option<u64> {
    let mut total: u64 = 0;
    let mut block: u64 = 1;
    for _ in 0..nvars {
        total = total.checked_add(block)?;
        block = block.checked_mul(p)?;
    }
    Some(total)
}

/// The `index`-th normalized representative: the first nonzero coordinate
/// is 1 and blocks are ordered by the position of that coordinate.
fn point_at(mut index: u64, nvars: usize, p: u64) -> Vec<u64> {
    let mut x = vec![0u64; nvars];
    for lead in 0..nvars {
        let free = (nvars - lead - 1) as u32;
        let block = p.pow(free);
        if index < block {
            x[lead] = 1;
            for slot in x[lead + 1..].iter_mut().rev() {
                *slot = index % p;
                index /= p;
            }
            return x;
        }
        index -= block;
    }
    unreachable!("index below projective size")
}

fn normalize(x: &mut [u64], p: u64) -> bool {
    let Some(lead) = x.iter().position(|&v| v != 0) else {
        return false;
    };
    let inv = inv_mod(x[lead], p).expect("nonzero mod prime");
    for v in x.iter_mut() {
        *v = *v * inv % p;
    }
    true
}

fn point_text(x: &[u64], p: u64) -> String {
    // residues printed in the symmetric range
    let parts: Vec<String> = x
        .iter()
        .map(|&v| {
            if v > p / 2 {
                format!("-{}", p - v)
            } else {
                v.to_string()
            }
        })
        .collect();
    format!("[{}]", parts.join(":"))
}

fn size_warning(f: &DForm, stratum: Stratum, p: u64, count: u64) -> Option<String> {
    let Stratum::Rank(k) = stratum else {
        return None;
    };
    if k == 0 {
        return (count > 0).then(|| format!("{count} points where the Hessian vanishes"));
    }
    let n1 = f.nvars() as u64;
    let c = (f.degree() as u64 - 1).pow(n1 as u32) * binom(n1, k as u64).pow(2);
    let bound = c.saturating_mul(p.saturating_pow(k as u32 - 1));
    (count > bound).then(|| {
        format!("count {count} exceeds {bound}, the size expected of a set of dimension at most {}", k - 1)
    })
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k.min(n)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn check_prime(f: &DForm, p: u64) -> Result<()> {
    Field::prime(p)?;
    if p <= f.degree() as u64 {
        return Err(Error::BadPrime(p));
    }
    Ok(())
}

/// All `F_p`-points of a stratum, as normalized coordinate vectors.
fn stratum_points(f: &DForm, p: u64, stratum: Stratum) -> Result<Vec<Vec<u64>>> {
    check_prime(f, p)?;
    let nvars = f.nvars();
    let total = full_size(nvars, p)?;
    let probe = Probe::new(f, p, stratum)?;
    let hits = scan(total, nvars, p, |x, s| probe.hits(x, s));
    Ok(hits.into_iter().map(|i| point_at(i, nvars, p)).collect())
}

/// Points of a stratum of `f` over `F_p`, by full enumeration or sampling.
pub fn enumerate_stratum(f: &DForm, p: u64, stratum: Stratum, mode: Mode, seed: u64) -> Result<StrataReport> {
    check_prime(f, p)?;
    let nvars = f.nvars();
    match mode {
        Mode::Full => {
            let hits = stratum_points(f, p, stratum)?;
            let count = hits.len() as u64;
            let points = (hits.len() <= LIST_LIMIT).then(|| hits.iter().map(|x| point_text(x, p)).collect());
            Ok(StrataReport {
                prime: p,
                stratum,
                mode,
                seed,
                count,
                points,
                sampling: None,
                warning: size_warning(f, stratum, p, count),
            })
        }
        Mode::Sampled { trials } => {
            if trials == 0 {
                return Err(Error::Invalid("sampling needs at least one trial".into()));
            }
            let total = projective_size(nvars, p).unwrap_or(u64::MAX);
            let probe = Probe::new(f, p, stratum)?;
            let mut scratch = Scratch::default();
            let mut rng = seeded(seed);
            let mut hits = 0u64;
            let mut listed = Vec::new();
            let mut done = 0u64;
            while done < trials {
                let mut x: Vec<u64> = (0..nvars).map(|_| rng.gen_range(0..p)).collect();
                if !normalize(&mut x, p) {
                    continue;
                }
                done += 1;
                if probe.hits(&x, &mut scratch) {
                    hits += 1;
                    if listed.len() < LIST_LIMIT {
                        listed.push(point_text(&x, p));
                    }
                }
            }
            let frac = hits as f64 / trials as f64;
            let sampling = Sampling {
                trials,
                hits,
                estimated_count: frac * total as f64,
                std_error: (frac * (1.0 - frac) / trials as f64).sqrt() * total as f64,
            };
            Ok(StrataReport {
                prime: p,
                stratum,
                mode,
                seed,
                count: hits,
                points: Some(listed),
                sampling: Some(sampling),
                warning: None,
            })
        }
    }
}

fn common_zeros(polys: &[MultiPoly], p: u64) -> Result<Vec<Vec<u64>>> {
    let first = polys.first().ok_or(Error::Invalid("no polynomials".into()))?;
    Field::prime(p)?;
    let nvars = first.nvars();
    let total = full_size(nvars, p)?;
    let compiled = polys
        .iter()
        .map(|f| {
            if f.nvars() != nvars {
                return Err(Error::NvarsMismatch(nvars, f.nvars()));
            }
            ModPoly::new(f, p)
        })
        .collect::<Result<Vec<_>>>()?;
    let stride = polys.iter().filter_map(|f| f.degree()).max().unwrap_or(0) as usize + 1;
    let hits = scan(total, nvars, p, |x, s| {
        fill_powers(x, stride, p, &mut s.powers);
        compiled.iter().all(|m| m.eval(&s.powers, stride, p) == 0)
    });
    Ok(hits.into_iter().map(|i| point_at(i, nvars, p)).collect())
}

/// Common zeros of `polys` in `P^(nvars-1)(F_p)`, by full enumeration.
pub fn count_common_zeros(polys: &[MultiPoly], p: u64) -> Result<u64> {
    Ok(common_zeros(polys, p)?.len() as u64)
}

/// Distance from an integer beyond which a fitted exponent is not rounded.
pub const FIT_MARGIN: f64 = 0.35;

/// Points per prime at which the tangent space is computed.
pub const TANGENT_SAMPLE: usize = 400;

/// Largest number of defining equations used for tangent spaces.
pub const TANGENT_EQUATION_LIMIT: usize = 2_000;

/// Exponent of `count = c * p^dim` through two point counts.
#[derive(Clone, Debug, Serialize)]
pub struct CountFit {
    pub primes: [u64; 2],
    pub counts: [u64; 2],
    /// `ln(N2/N1) / ln(p2/p1)`, absent when a count is zero.
    pub exponent: Option<f64>,
    /// The exponent rounded, when it lies within [`FIT_MARGIN`] of an
    /// integer.
    pub estimate: Option<usize>,
    pub margin: f64,
    pub note: String,
}

/// Zariski tangent dimensions at the `F_p`-points of a set.
#[derive(Clone, Debug, Serialize)]
pub struct TangentSummary {
    pub prime: u64,
    pub examined: usize,
    /// `(dimension, number of points)`, ascending by dimension.
    pub histogram: Vec<(usize, usize)>,
    /// The most frequent dimension; ties go to the smaller one.
    pub mode: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionEstimate {
    pub fit: CountFit,
    /// One entry per prime with at least one point.
    pub tangent: Vec<TangentSummary>,
    /// Agreed modal tangent dimension at both primes, or the count fit when
    /// tangent spaces are unavailable.
    pub estimate: Option<usize>,
    /// Whether both primes produced the same value.
    pub primes_agree: bool,
    pub method: String,
    pub seed: u64,
    pub note: String,
}

impl DimensionEstimate {
    pub fn counts(&self) -> [u64; 2] {
        self.fit.counts
    }
}

/// Fits `count = c * p^dim` through two point counts.
pub fn fit_dimension(primes: [u64; 2], counts: [u64; 2]) -> CountFit {
    let (exponent, estimate, note) = match counts {
        [0, 0] => (None, None, "empty over tested fields".to_string()),
        [0, _] | [_, 0] => (None, None, "zero count at one prime only; no fit".to_string()),
        [a, b] => {
            let e = (b as f64 / a as f64).ln() / (primes[1] as f64 / primes[0] as f64).ln();
            let r = e.round();
            if r >= 0.0 && (e - r).abs() <= FIT_MARGIN {
                (Some(e), Some(r as usize), "two-prime fit".to_string())
            } else {
                (Some(e), None, "exponent not near an integer".to_string())
            }
        }
    };
    CountFit {
        primes,
        counts,
        exponent,
        estimate,
        margin: FIT_MARGIN,
        note,
    }
}

fn tangent_summary(points: &[Vec<u64>], tp: &TangentProbe, seed: u64) -> Option<TangentSummary> {
    if points.is_empty() {
        return None;
    }
    let mut rng = seeded(seed ^ tp.p);
    let chosen: Vec<&Vec<u64>> = if points.len() > TANGENT_SAMPLE {
        rand::seq::index::sample(&mut rng, points.len(), TANGENT_SAMPLE)
            .into_iter()
            .map(|i| &points[i])
            .collect()
    } else {
        points.iter().collect()
    };
    let mut scratch = Scratch::default();
    let mut hist = std::collections::BTreeMap::new();
    for x in &chosen {
        *hist.entry(tp.dimension(x, &mut scratch)).or_insert(0usize) += 1;
    }
    let histogram: Vec<(usize, usize)> = hist.into_iter().collect();
    let mode = histogram
        .iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .map(|e| e.0)
        .expect("nonempty");
    Some(TangentSummary {
        prime: tp.p,
        examined: chosen.len(),
        histogram,
        mode,
    })
}

fn combine(fit: CountFit, tangent: Vec<TangentSummary>, seed: u64) -> DimensionEstimate {
    let (estimate, primes_agree, method, note) = if fit.counts == [0, 0] {
        (None, true, "count", "empty over tested fields".to_string())
    } else if tangent.len() == 2 {
        let agree = tangent[0].mode == tangent[1].mode;
        let note = if agree {
            "modal tangent dimension agrees at both primes".to_string()
        } else {
            format!(
                "modal tangent dimensions differ: {} at {}, {} at {}",
                tangent[0].mode, tangent[0].prime, tangent[1].mode, tangent[1].prime
            )
        };
        (agree.then_some(tangent[0].mode), agree, "tangent", note)
    } else if tangent.is_empty() {
        (fit.estimate, fit.estimate.is_some(), "count", fit.note.clone())
    } else {
        (None, false, "tangent", "points at one prime only".to_string())
    };
    DimensionEstimate {
        fit,
        tangent,
        estimate,
        primes_agree,
        method: method.to_string(),
        seed,
        note,
    }
}

/// Dimension estimate for the common zero set of `polys`.
///
/// Each prime contributes the most frequent Zariski tangent dimension over
/// its points (at most [`TANGENT_SAMPLE`] of them, drawn with `seed`); the
/// estimate stands when both primes agree. The count fit is reported
/// alongside.
pub fn estimate_dimension(polys: &[MultiPoly], primes: [u64; 2], seed: u64) -> Result<DimensionEstimate> {
    if polys.first().map(|f| f.nvars()).unwrap_or(0) > 6 {
        return Err(Error::ScopeExceeded {
            got: polys[0].nvars(),
            max: 6,
        });
    }
    let pts = [common_zeros(polys, primes[0])?, common_zeros(polys, primes[1])?];
    let fit = fit_dimension(primes, [pts[0].len() as u64, pts[1].len() as u64]);
    let mut tangent = Vec::new();
    for (k, &p) in primes.iter().enumerate() {
        let tp = TangentProbe::new(polys, p)?;
        tangent.extend(tangent_summary(&pts[k], &tp, seed));
    }
    Ok(combine(fit, tangent, seed))
}

/// Defining equations of a stratum: the `(k+1)`-minors of the Hessian
/// matrix for `D_k`, the gradient of `h_f` for the singular locus.
/// `None` when there are more than [`TANGENT_EQUATION_LIMIT`] of them.
pub fn stratum_equations(f: &DForm, stratum: Stratum) -> Result<Option<Vec<MultiPoly>>> {
    match stratum {
        Stratum::HessianSingular => {
            let h = f.hessian_poly();
            Ok(Some((0..f.nvars()).map(|i| h.partial(i)).collect::<Result<Vec<_>>>()?))
        }
        Stratum::Rank(k) => {
            let n1 = f.nvars();
            if k >= n1 {
                return Ok(None);
            }
            let subsets = crate::combin::combinations(n1, k + 1);
            let pairs = subsets.len() * (subsets.len() + 1) / 2;
            if pairs > TANGENT_EQUATION_LIMIT {
                return Ok(None);
            }
            let h = f.hessian();
            let mut out = Vec::with_capacity(pairs);
            for (a, r) in subsets.iter().enumerate() {
                for c in &subsets[a..] {
                    let m = h.minor(r, c)?;
                    if !m.is_zero() {
                        out.push(m);
                    }
                }
            }
            Ok(Some(out))
        }
    }
}

/// Dimension estimate for a stratum of `f`, from full enumerations.
pub fn estimate_stratum_dimension(f: &DForm, stratum: Stratum, primes: [u64; 2], seed: u64) -> Result<DimensionEstimate> {
    let pts = [stratum_points(f, primes[0], stratum)?, stratum_points(f, primes[1], stratum)?];
    let fit = fit_dimension(primes, [pts[0].len() as u64, pts[1].len() as u64]);
    let mut tangent = Vec::new();
    if let Some(eqs) = stratum_equations(f, stratum)? {
        if eqs.is_empty() {
            // the stratum is all of projective space
            for &p in &primes {
                tangent.push(TangentSummary {
                    prime: p,
                    examined: 0,
                    histogram: vec![],
                    mode: f.n(),
                });
            }
        } else {
            for (k, &p) in primes.iter().enumerate() {
                let tp = TangentProbe::new(&eqs, p)?;
                tangent.extend(tangent_summary(&pts[k], &tp, seed));
            }
        }
    }
    Ok(combine(fit, tangent, seed))
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicCheck {
    pub vertex_rank: usize,
    pub reports: Vec<StrataReport>,
    pub holds: bool,
}

/// For `f = x0^3 + f1(x1..xn)`: the coordinate point `P0` has rank one over
/// Q and is the only `F_p`-point of `D_1` at both primes.
pub fn verify_cyclic_d1(f: &DForm, primes: [u64; 2]) -> Result<CyclicCheck> {
    let p0 = ProjPoint::coordinate(f.field(), f.nvars(), 0);
    let vertex_rank = f.rank_at(&p0)?;
    let mut reports = Vec::new();
    let mut only = true;
    for &p in &primes {
        let r = enumerate_stratum(f, p, Stratum::Rank(1), Mode::Full, 0)?;
        let expected = point_text(&point_at(0, f.nvars(), p), p);
        only &= r.point_list() == [expected];
        reports.push(r);
    }
    Ok(CyclicCheck {
        vertex_rank,
        holds: vertex_rank == 1 && only,
        reports,
    })
}

/// Reduces a rational point to a normalized `F_p` representative text, as
/// printed in reports.
pub fn reduce_point(x: &ProjPoint, p: u64) -> Option<String> {
    let mut v = x
        .coords()
        .iter()
        .map(|c| c.reduce_mod(p))
        .collect::<Option<Vec<u64>>>()?;
    normalize(&mut v, p).then(|| point_text(&v, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn indexing_covers_projective_space() {
        let p = 5;
        let n = projective_size(3, p).unwrap();
        assert_eq!(n, 31);
        let mut seen = std::collections::HashSet::new();
        for i in 0..n {
            let x = point_at(i, 3, p);
            let mut y = x.clone();
            assert!(normalize(&mut y, p));
            assert_eq!(x, y);
            assert!(seen.insert(x));
        }
    }

    #[test]
    fn fermat_rank_one_points() {
        let f = DForm::parse("x0^3+x1^3+x2^3", 3, Q).unwrap();
        for p in [7, 13, 31] {
            let r = enumerate_stratum(&f, p, Stratum::Rank(1), Mode::Full, 0).unwrap();
            assert_eq!(r.point_list(), ["[1:0:0]", "[0:1:0]", "[0:0:1]"].map(String::from));
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let f = DForm::parse("x0^3+x1^3+x2^3", 3, Q).unwrap();
        let mode = Mode::Sampled { trials: 500 };
        let a = enumerate_stratum(&f, 31, Stratum::Rank(2), mode, 3).unwrap();
        let b = enumerate_stratum(&f, 31, Stratum::Rank(2), mode, 3).unwrap();
        assert_eq!(a.count, b.count);
        assert_eq!(a.points, b.points);
    }

    #[test]
    fn too_large_refused() {
        let f = DForm::parse("x0^3+x1^3+x2^3+x3^3+x4^3+x5^3", 6, Q).unwrap();
        assert!(matches!(
            enumerate_stratum(&f, 101, Stratum::Rank(1), Mode::Full, 0),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn fits() {
        assert_eq!(fit_dimension([17, 31], [15, 15]).estimate, Some(0));
        assert_eq!(fit_dimension([17, 31], [0, 0]).note, "empty over tested fields");
        assert_eq!(fit_dimension([17, 31], [18 * 18, 32 * 32]).estimate, Some(2));
    }

    #[test]
    fn conic_counts() {
        // a smooth conic has p + 1 points
        let c = crate::poly::parse_poly("x0^2 + x1^2 - x2^2", 3, Q).unwrap();
        assert_eq!(count_common_zeros(std::slice::from_ref(&c), 13).unwrap(), 14);
        assert_eq!(estimate_dimension(&[c], [13, 31], 0).unwrap().estimate, Some(1));
    }
}
