//! Property tests for algebraic invariants.

use hessloci::families::{gen_ts, gen_waring_normal, scalars};
use hessloci::graded::{hilbert_function, ideal_membership, socle_check};
use hessloci::linalg::ScalarMatrix;
use hessloci::poly::{change_coords, count_monomials, monomials_of_degree};
use hessloci::reconstruct::{hessian_covariance_holds, reconstruct_g, tensor_of, validate_relations};
use hessloci::{DForm, Error, Field, LinearChange, MultiPoly, ProjPoint, Scalar};
use proptest::prelude::*;

const Q: Field = Field::Rational;

fn build(field: Field, nvars: usize, d: u32, coeffs: &[i64]) -> MultiPoly {
    let mut f = MultiPoly::zero(field, nvars);
    for (m, &c) in monomials_of_degree(nvars, d).into_iter().zip(coeffs) {
        f = &f + &MultiPoly::monomial(field, nvars, m, field.from_i64(c));
    }
    f
}

/// `(nvars, degree, coefficients)` of a random form.
fn form_data(vars: std::ops::RangeInclusive<usize>, degs: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = (usize, u32, Vec<i64>)> {
    (vars, degs).prop_flat_map(|(n, d)| (Just(n), Just(d), prop::collection::vec(-5i64..=5, count_monomials(n, d))))
}

fn cubic_data(vars: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>, Vec<i64>)> {
    vars.prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(-5i64..=5, count_monomials(n, 3)),
            prop::collection::vec(-4i64..=4, n),
            prop::collection::vec(-4i64..=4, n),
        )
    })
}

fn vars(field: Field, n: usize) -> Vec<MultiPoly> {
    (0..n).map(|i| MultiPoly::var(field, n, i)).collect()
}

fn point(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Q.from_i64(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_identities((n, d, c) in form_data(2..=4, 1..=4), p in prop::sample::select(vec![0u64, 10007])) {
        let field = if p == 0 { Q } else { Field::prime(p).unwrap() };
        let f = build(field, n, d, &c);
        let x = vars(field, n);
        let mut euler = MultiPoly::zero(field, n);
        for i in 0..n {
            euler = &euler + &(&x[i] * &f.partial(i).unwrap());
        }
        prop_assert_eq!(euler, f.scale_i64(d as i64));
        for j in 0..n {
            let fj = f.partial(j).unwrap();
            let mut s = MultiPoly::zero(field, n);
            for i in 0..n {
                s = &s + &(&x[i] * &fj.partial(i).unwrap());
            }
            prop_assert_eq!(s, fj.scale_i64(d as i64 - 1));
        }
    }

    #[test]
    fn ring_axioms(
        a in prop::collection::vec(-5i64..=5, 6),
        b in prop::collection::vec(-5i64..=5, 6),
        c in prop::collection::vec(-5i64..=5, 6),
        p in prop::sample::select(vec![0u64, 7, 10007]),
    ) {
        let field = if p == 0 { Q } else { Field::prime(p).unwrap() };
        let (a, b, c) = (build(field, 3, 2, &a), build(field, 3, 2, &b), build(field, 3, 2, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn homogeneity_is_preserved(
        (n, d, e, c, c2) in (2usize..=4, 1u32..=3, 1u32..=2).prop_flat_map(|(n, d, e)| (
            Just(n), Just(d), Just(e),
            prop::collection::vec(-5i64..=5, count_monomials(n, d)),
            prop::collection::vec(-5i64..=5, count_monomials(n, e)),
        )),
    ) {
        let f = build(Q, n, d, &c);
        let g = build(Q, n, e, &c2);
        if !f.is_zero() && !g.is_zero() {
            prop_assert_eq!((&f * &g).degree(), Some(d + e));
        }
        for i in 0..n {
            let fi = f.partial(i).unwrap();
            if !fi.is_zero() {
                prop_assert_eq!(fi.degree(), Some(d - 1));
            }
        }
    }

    #[test]
    fn hessian_degree_and_evaluation((n, c, x, _) in cubic_data(2..=4)) {
        let f = build(Q, n, 3, &c);
        prop_assume!(!f.is_zero());
        let df = DForm::new(f).unwrap();
        let h = df.hessian_poly();
        if !h.is_zero() {
            prop_assert_eq!(h.degree(), Some(n as u32));
        }
        let at = point(&x);
        prop_assert_eq!(h.eval(&at).unwrap(), df.hessian_at(&at).unwrap().det().unwrap());
    }

    #[test]
    fn incidence_is_symmetric_for_cubics((n, c, x, y) in cubic_data(2..=5)) {
        let f = build(Q, n, 3, &c);
        prop_assume!(!f.is_zero());
        let df = DForm::new(f).unwrap();
        let (x, y) = (point(&x), point(&y));
        prop_assert_eq!(df.incidence(&x, &y).unwrap(), df.incidence(&y, &x).unwrap());
    }

    #[test]
    fn kernel_dimension_matches_rank((n, c, x, _) in cubic_data(2..=4)) {
        let f = build(Q, n, 3, &c);
        prop_assume!(!f.is_zero());
        prop_assume!(x.iter().any(|&v| v != 0));
        let df = DForm::new(f).unwrap();
        let p = ProjPoint::new(point(&x)).unwrap();
        let rank = df.rank_at(&p).unwrap();
        match df.iota(&p) {
            Ok(k) => prop_assert_eq!(k.dim(), n - 1 - rank),
            Err(e) => {
                prop_assert_eq!(e, Error::EmptyKernel);
                prop_assert_eq!(rank, n);
            }
        }
    }

    #[test]
    fn hessian_covariance((n, c, _, _) in cubic_data(2..=3), m in prop::collection::vec(-2i64..=2, 9)) {
        let f = build(Q, n, 3, &c);
        prop_assume!(!f.is_zero());
        let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| m[i * 3 + j] + if i == j { 3 } else { 0 }).collect()).collect();
        let mat = ScalarMatrix::from_i64_rows(Q, &rows);
        prop_assume!(!mat.det().unwrap().is_zero());
        let a = LinearChange::new(mat).unwrap();
        prop_assert!(hessian_covariance_holds(&DForm::new(f.clone()).unwrap(), &a).unwrap());
        // homogeneity survives the change of coordinates
        let g = change_coords(&f, &a).unwrap();
        if !g.is_zero() {
            prop_assert_eq!(g.degree(), Some(3));
        }
    }

    #[test]
    fn split_forms_carry_their_block(
        (n1, c1) in (1usize..=3).prop_flat_map(|n| (Just(n), prop::collection::vec(-4i64..=4, count_monomials(n, 3)))),
        (n2, c2) in (1usize..=3).prop_flat_map(|n| (Just(n), prop::collection::vec(-4i64..=4, count_monomials(n, 3)))),
    ) {
        let f1 = build(Q, n1, 3, &c1);
        let f2 = build(Q, n2, 3, &c2);
        prop_assume!(!f1.is_zero() && !f2.is_zero());
        let ts = gen_ts(&f1, &f2).unwrap();
        prop_assert!(ts.block_in_stratum.contained);
    }

    #[test]
    fn reconstruction_round_trip(a in prop::collection::vec(1i64..=9, 5), bump in 0usize..5) {
        let av = scalars(Q, &a);
        let f = gen_waring_normal(Q, &av).unwrap();
        let t = tensor_of(f.poly()).unwrap();
        prop_assert!(validate_relations(&t, &av).unwrap().passed());
        let rec = reconstruct_g(&t, &av).unwrap();
        prop_assert_eq!(rec.poly(), f.poly());
        let mut other = a.clone();
        other[bump] += 1;
        prop_assert!(!validate_relations(&t, &scalars(Q, &other)).unwrap().passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn membership_certificates_reverify((n, c, _, _) in cubic_data(2..=3), t in prop::collection::vec(-3i64..=3, 15), m in 2u32..=4) {
        let f = build(Q, n, 3, &c);
        prop_assume!(!f.is_zero());
        let df = DForm::new(f).unwrap();
        let target = build(Q, n, m, &t);
        let cert = ideal_membership(&df, &target).unwrap();
        prop_assert!(cert.verify(&df).unwrap());
    }

    #[test]
    fn smooth_hilbert_functions_are_symmetric((n, c, _, _) in cubic_data(2..=4)) {
        let f = build(Q, n, 3, &c);
        prop_assume!(!f.is_zero());
        let df = DForm::new(f).unwrap();
        prop_assume!(df.is_smooth().unwrap());
        let h = hilbert_function(&df);
        let top = n;
        for m in 0..=top {
            prop_assert_eq!(h[m], h[top - m]);
        }
        prop_assert_eq!(h[top + 1], 0);
        prop_assert!(socle_check(&df).unwrap().passed);
    }
}
