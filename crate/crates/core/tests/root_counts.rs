use posviro::fixtures::{planar_seven_points, s63_system};
use posviro::linalg::{ratio, Rational};
use posviro::numerics::{certified_positive_count, CertifiedCount, CountOptions};
use posviro::viro::{regularity_check, ViroSystem};

fn count(s: &ViroSystem, e: &posviro::fixtures::Example, t: Rational) -> CertifiedCount {
    certified_positive_count(s, &e.complex, &t, &CountOptions::with_precision(256)).unwrap()
}

#[test]
fn planar_example_has_six_roots() {
    let e = planar_seven_points().unwrap();
    let s = &e.system;
    assert!(regularity_check(s.points(), s.heights(), &e.complex).unwrap().regular);
    let out = count(s, &e, ratio(1, 1000));
    assert_eq!(out.count, 6, "{:?}", out.failures);
    for w in &out.witnesses {
        assert!(w.residual < 1e-20);
        assert!(w.jac_cond < 1e8);
        assert!(w.separation.unwrap() > 1e-6);
    }
}

#[test]
fn s63_system_has_five_roots() {
    let e = s63_system().unwrap();
    let out = count(&e.system, &e, ratio(1, 100));
    assert_eq!(out.count, 5, "{:?}", out.failures);
    assert!(out.witnesses.iter().all(|w| w.residual < 1e-20));
}

#[test]
fn smaller_t_never_loses_roots() {
    for e in [planar_seven_points().unwrap(), s63_system().unwrap()] {
        let coarse = count(&e.system, &e, ratio(1, 100)).count;
        let fine = count(&e.system, &e, ratio(1, 1000)).count;
        assert!(fine >= coarse, "{fine} < {coarse}");
    }
}

#[test]
fn row_scaling_keeps_the_roots() {
    let e = planar_seven_points().unwrap();
    let base = count(&e.system, &e, ratio(1, 1000));
    let mut c = e.system.coefficients().clone();
    c.scale_row(1, &ratio(7, 3));
    let scaled = ViroSystem::new(e.system.points().clone(), c, e.system.heights().clone()).unwrap();
    let other = count(&scaled, &e, ratio(1, 1000));
    assert_eq!(base.count, other.count);
    for (a, b) in base.witnesses.iter().zip(&other.witnesses) {
        for (x, y) in a.log_x.iter().zip(&b.log_x) {
            assert!((x - y).abs() < 1e-9 * (1.0 + x.abs()));
        }
    }
}
