use hessloci::claims::run_claims;
use hessloci::families::{gen_waring_normal, rank6_config, scalars};
use hessloci::strata::{enumerate_stratum, estimate_dimension, Mode, Stratum};
use hessloci::{parse_poly, Field, ProjPoint, Scalar};

const Q: Field = Field::Rational;

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

#[test]
fn enumeration_ignores_worker_count() {
    let f = gen_waring_normal(Q, &scalars(Q, &[1, 2, 3, 5])).unwrap().dform().unwrap();
    let one = pool(1).install(|| enumerate_stratum(&f, 31, Stratum::HessianSingular, Mode::Full, 0).unwrap());
    let four = pool(4).install(|| enumerate_stratum(&f, 31, Stratum::HessianSingular, Mode::Full, 0).unwrap());
    assert_eq!(one.points, four.points);
    // the ten pentahedron vertices are the nodes of the Hessian surface
    assert_eq!(one.count, 10);
}

#[test]
fn folded_reports_ignore_worker_count() {
    let ids = vec!["c01-closed-forms".to_string(), "c06-reconstruction".to_string(), "c08-apolarity".to_string()];
    let a = pool(1).install(|| run_claims(&ids, 3).unwrap());
    let b = pool(3).install(|| run_claims(&ids, 3).unwrap());
    assert_eq!(a.body_json(), b.body_json());
    assert!(a.passed);
}

#[test]
fn dimension_estimates_repeat() {
    let c = parse_poly("x0^2 + x1^2 - x2^2 - x3^2", 4, Q).unwrap();
    let a = estimate_dimension(std::slice::from_ref(&c), [13, 31], 9).unwrap();
    let b = estimate_dimension(&[c], [13, 31], 9).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    // a smooth quadric surface
    assert_eq!(a.estimate, Some(2));
}

#[test]
fn configuration_points_and_lines_reverify_over_q() {
    for a in [[1i64, 1, 1, 1, 1], [1, 2, 3, 4, 5]] {
        let w = gen_waring_normal(Q, &scalars(Q, &a)).unwrap();
        let f = w.dform().unwrap();
        let cfg = rank6_config(&w).unwrap();
        assert_eq!(cfg.points.len(), 15);
        for p in &cfg.points {
            assert_eq!(f.rank_at(&p.space.basis()[0]).unwrap(), 2);
        }
        assert_eq!(cfg.lines.len(), 20);
        for (t, l) in cfg.lines.iter().enumerate() {
            let b = l.space.basis();
            for s in [1i64, -2, 7] {
                let c: Vec<Scalar> = b[0]
                    .coords()
                    .iter()
                    .zip(b[1].coords())
                    .map(|(u, v)| u + &(v * &Q.from_i64(s + t as i64)))
                    .collect();
                let pt = ProjPoint::new(c).unwrap();
                assert!(f.rank_at(&pt).unwrap() <= 3, "line {:?}", l.index);
            }
        }
    }
}
