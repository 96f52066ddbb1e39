use hexlat::energy::{w_b, B_CRITICAL};
use hexlat::lattice_domain::UpperHalfPoint;
use hexlat::minimization::{
    minimize_on_gamma, minimize_theta_difference, minimize_w, phase_scan, Classification, MinimizeOutcome, PhaseProblem,
};
use hexlat::special_functions::SeriesConfig;
use proptest::prelude::*;

fn cfg() -> SeriesConfig {
    SeriesConfig::default()
}

fn z_star(out: &MinimizeOutcome) -> Option<UpperHalfPoint> {
    match out {
        MinimizeOutcome::Minimizer { z_star, .. } => Some(*z_star),
        MinimizeOutcome::NoMinimizer { .. } => None,
    }
}

fn hex_dist(z: UpperHalfPoint) -> f64 {
    ((z.x - 0.5).powi(2) + (z.y - 3f64.sqrt() / 2.0).powi(2)).sqrt()
}

fn check_witness(out: &MinimizeOutcome, expected_sign: i8) -> Result<(), TestCaseError> {
    if let MinimizeOutcome::NoMinimizer { witness_y, witness_values, asymptotic_slope_sign, .. } = out {
        prop_assert_eq!(*asymptotic_slope_sign, expected_sign);
        prop_assert_eq!(witness_y.len(), witness_values.len());
        prop_assert!(witness_values.windows(2).all(|w| w[1] < w[0]));
        prop_assert!(witness_y.windows(2).all(|w| w[1] > w[0]));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn w_hypotheses_give_hexagonal(alpha in 1.0f64..5.0, b in 0.0f64..B_CRITICAL) {
        let out = minimize_w(alpha, b, &cfg()).unwrap();
        let z = z_star(&out);
        prop_assert!(z.is_some_and(|z| hex_dist(z) < 1e-5), "{:?}", out);
    }

    #[test]
    fn theta_difference_hypotheses_give_hexagonal(alpha in 1.0f64..4.0, a in 1.5f64..5.0, t in 0.0f64..1.0) {
        let b = t * a.sqrt();
        let out = minimize_theta_difference(alpha, a, b, &cfg()).unwrap();
        prop_assert!(z_star(&out).is_some_and(|z| hex_dist(z) < 1e-5), "{:?}", out);
    }

    // lowering b never destroys the minimizer nor moves it
    #[test]
    fn comparison_principle(alpha in 1.0f64..4.0, b in 0.0f64..B_CRITICAL, s in 0.0f64..1.0) {
        let lower = s * b;
        let hi = z_star(&minimize_w(alpha, b, &cfg()).unwrap());
        let lo = z_star(&minimize_w(alpha, lower, &cfg()).unwrap());
        if let Some(h) = hi {
            let l = lo.expect("minimizer at the smaller coupling");
            prop_assert!(((h.x - l.x).powi(2) + (h.y - l.y).powi(2)).sqrt() < 1e-5);
        }
    }

    #[test]
    fn w_witness_consistent(alpha in 0.5f64..5.0, db in 1e-3f64..1.0) {
        let out = minimize_w(alpha, B_CRITICAL + db, &cfg()).unwrap();
        prop_assert_eq!(out.classification(), Classification::NoMinimizer);
        check_witness(&out, -1)?;
    }

    #[test]
    fn theta_difference_witness_consistent(alpha in 0.5f64..4.0, a in 1.5f64..5.0, db in 1e-3f64..1.0) {
        let out = minimize_theta_difference(alpha, a, a.sqrt() + db, &cfg()).unwrap();
        prop_assert_eq!(out.classification(), Classification::NoMinimizer);
        check_witness(&out, -1)?;
    }
}

#[test]
fn gamma_optimum_equals_plane_optimum() {
    let c = cfg();
    for alpha in [1.05, 1.5, 3.0] {
        let f = |z: UpperHalfPoint| w_b(alpha, B_CRITICAL, z, &c);
        let (_, on_gamma) = minimize_on_gamma(&f).unwrap();
        let MinimizeOutcome::Minimizer { value, .. } = minimize_w(alpha, B_CRITICAL, &c).unwrap() else {
            panic!("no minimizer at alpha = {alpha}");
        };
        assert!((on_gamma - value).abs() < 1e-7, "alpha {alpha}: {on_gamma} vs {value}");
    }
}

#[test]
fn boundary_is_inclusive() {
    let c = cfg();
    assert_eq!(minimize_w(1.0, B_CRITICAL, &c).unwrap().classification(), Classification::Hexagonal);
    assert_eq!(minimize_theta_difference(1.0, 2.0, 2f64.sqrt(), &c).unwrap().classification(), Classification::Hexagonal);
}

#[test]
fn phase_boundary_independent_of_alpha() {
    let t = phase_scan(&[1.0, 2.0, 4.0], &[0.10, 0.15, 0.159, 0.17], PhaseProblem::W, &cfg()).unwrap();
    assert!(t.boundary_is_constant());
    for b in &t.boundaries {
        assert_eq!(b.last_hexagonal_b, Some(0.159));
        assert_eq!(b.first_no_minimizer_b, Some(0.17));
    }

    let t = phase_scan(&[1.0, 2.0], &[1.40, 1.4142, 1.45], PhaseProblem::ThetaDiff { a: 2.0 }, &cfg()).unwrap();
    for b in &t.boundaries {
        assert_eq!(b.last_hexagonal_b, Some(1.4142));
        assert_eq!(b.first_no_minimizer_b, Some(1.45));
    }
}

#[test]
fn scan_below_boundary_is_all_hexagonal() {
    let bs: Vec<f64> = (0..8).map(|i| 0.01 + 0.018 * i as f64).collect();
    let t = phase_scan(&[1.0, 3.0], &bs, PhaseProblem::W, &cfg()).unwrap();
    assert!(t.cells.iter().all(|c| c.classification == Classification::Hexagonal));
}

#[test]
fn empty_grid_rejected() {
    assert!(phase_scan(&[], &[0.1], PhaseProblem::W, &cfg()).is_err());
    assert!(phase_scan(&[1.0], &[], PhaseProblem::W, &cfg()).is_err());
}
