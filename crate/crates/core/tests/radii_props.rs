//! Properties of the certified radii.

use bohr_core::radii::{
    radius_convex, radius_deriv, radius_sq_deriv, rho_to_radius, Branch, Polynomial,
    RadiusProblem, DERIV_RHO_MAX, SQ_DERIV_RHO_MAX,
};
use proptest::prelude::*;

/// Smallest positive root of `Q_t` by plain bisection on `(0, 1]`.
fn bisect_q(t: f64) -> f64 {
    let q = Polynomial::q_t(t);
    let (mut lo, mut hi) = (0.0, 1.0);
    if q.eval(hi) > 0.0 {
        // t = 1 double root
        return 1.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if q.eval(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn convex_radius_matches_independent_root(t in 0.0..1.0f64, n in 1u32..6, m in 1u32..5) {
        let result = radius_convex(n, m, t).unwrap();
        prop_assert!((result.rho_root - bisect_q(t)).abs() < 1e-10);
        prop_assert!((result.radius - rho_to_radius(bisect_q(t), n, m)).abs() < 1e-10);
        prop_assert!(result.residual <= 1e-12);
    }

    #[test]
    fn radii_shrink_with_n_and_grow_with_m(t in 0.0..0.99f64, lambda in 0.05..4.0f64, n in 1u32..6, m in 1u32..5) {
        for problem in [
            RadiusProblem::convex(n, m, t).unwrap(),
            RadiusProblem::deriv(n, m, lambda).unwrap(),
            RadiusProblem::sq_deriv(n, m, lambda).unwrap(),
        ] {
            let base = problem.solve().unwrap().radius;
            let more_vars = RadiusProblem::from_parts(problem.theorem(), n + 1, m, problem.param()).unwrap();
            let higher_order = RadiusProblem::from_parts(problem.theorem(), n, m + 1, problem.param()).unwrap();
            prop_assert!(more_vars.solve().unwrap().radius < base);
            // every root is below 1 <= n, so (rho/n)^(1/m) grows with m
            prop_assert!(higher_order.solve().unwrap().radius > base);
        }
    }

    #[test]
    fn roots_lie_in_their_intervals(lambda in 0.01..10.0f64) {
        let d = radius_deriv(1, 1, lambda).unwrap();
        prop_assert!(d.rho_root > 0.0 && d.rho_root < DERIV_RHO_MAX);
        prop_assert!(d.bracket.0 <= d.rho_root && d.rho_root <= d.bracket.1);
        let s = radius_sq_deriv(1, 1, lambda).unwrap();
        prop_assert!(s.rho_root > 0.0 && s.rho_root < SQ_DERIV_RHO_MAX);
        prop_assert!(d.residual <= 1e-12 && s.residual <= 1e-12);
    }

    #[test]
    fn radius_decreases_in_lambda(a in 0.5..5.0f64, b in 0.5..5.0f64) {
        prop_assume!((a - b).abs() > 1e-6);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(radius_deriv(1, 1, hi).unwrap().rho_root <= radius_deriv(1, 1, lo).unwrap().rho_root);
    }
}

#[test]
fn branches_join_continuously() {
    let below = radius_deriv(1, 1, 0.5).unwrap();
    let above = radius_deriv(1, 1, 0.5 + 1e-13).unwrap();
    assert_eq!(below.branch, Branch::DerivW);
    assert_eq!(above.branch, Branch::DerivXi);
    assert!((below.rho_root - above.rho_root).abs() < 1e-12);

    let below = radius_sq_deriv(1, 1, 1.0).unwrap();
    let above = radius_sq_deriv(1, 1, 1.0 + 1e-13).unwrap();
    assert_eq!(below.branch, Branch::SqDerivS);
    assert_eq!(above.branch, Branch::SqDerivPsi1);
    assert!((below.rho_root - above.rho_root).abs() < 1e-12);

    let mid = radius_convex(1, 1, 0.75).unwrap();
    for t in [0.75 - 1e-9, 0.75 + 1e-9] {
        assert!((radius_convex(1, 1, t).unwrap().rho_root - mid.rho_root).abs() < 1e-8);
    }
}

#[test]
fn convex_endpoints() {
    assert!((radius_convex(1, 1, 0.0).unwrap().radius - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(radius_convex(1, 1, 1.0).unwrap().radius, 1.0);
    assert!((radius_convex(2, 1, 0.0).unwrap().radius - 1.0 / 6.0).abs() < 1e-15);
}
