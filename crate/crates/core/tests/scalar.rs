mod support;

use std::f64::consts::{FRAC_PI_4, PI};

use fracstep::coefficients::FractionalOrder;
use fracstep::scalar::{
    convergence_study, decay_study, exact_scalar, solve_scalar, ScalarProblem, TimeGrid,
};
use fracstep::special::SectorConfig;
use fracstep::Complex64;
use proptest::prelude::*;

fn problem(alpha: f64, lambda: Complex64) -> ScalarProblem {
    ScalarProblem::new(
        FractionalOrder::new(alpha).unwrap(),
        lambda,
        SectorConfig::new(FRAC_PI_4).unwrap(),
    )
    .unwrap()
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn half_order_reference_and_accuracy() {
    let p = problem(0.5, real(-1.0));
    let exact = exact_scalar(&p, 1.0).unwrap();
    assert!((exact.re - support::scaled_erfc(1.0)).abs() < 1e-12);
    assert_eq!(exact_scalar(&p, 0.0).unwrap(), real(1.0));
    assert_eq!(exact_scalar(&problem(0.5, real(0.0)), 3.0).unwrap(), real(1.0));
    let traj = solve_scalar(&p, &TimeGrid::new(1.0, 100).unwrap()).unwrap();
    assert!((traj.last() - exact).norm() <= 1e-2);
}

#[test]
fn convergence_orders() {
    let steps = [16, 32, 64, 128, 256];
    for &(alpha, floor) in &[(0.25, 0.2), (0.75, 0.15)] {
        let r = convergence_study(&problem(alpha, real(-1.0)), 1.0, &steps).unwrap();
        assert!(r.min_order().unwrap() >= floor, "alpha {alpha}: {:?}", r.rows);
    }
    let r = convergence_study(&problem(0.4, real(0.0)), 1.0, &steps).unwrap();
    assert!(r.rows.iter().all(|row| row.error == 0.0));
    assert_eq!(r.min_order(), None);
}

#[test]
fn error_shrinks_by_factor_four_refinement() {
    let steps = [8, 32, 128, 512];
    for &alpha in &[0.2, 0.5, 0.8] {
        let r = convergence_study(&problem(alpha, Complex64::new(-3.0, 1.0)), 1.0, &steps).unwrap();
        let violations = r.rows.windows(2).filter(|w| w[1].error > w[0].error).count();
        assert!(violations <= 1, "alpha {alpha}: {:?}", r.rows);
    }
}

#[test]
fn decay_examples() {
    let grid = TimeGrid::new(1.0, 1000).unwrap();
    let d = decay_study(&problem(0.25, real(-1.0)), &grid).unwrap();
    assert!(d.bounded && d.s_alpha == 0.25);
    let p = ScalarProblem::new(
        FractionalOrder::with_epsilon(0.75, 0.05).unwrap(),
        real(-5.0),
        SectorConfig::new(FRAC_PI_4).unwrap(),
    )
    .unwrap();
    let d = decay_study(&p, &grid).unwrap();
    assert!(d.bounded);
    assert!((d.s_alpha - 0.2).abs() < 1e-15);
    let d = decay_study(&problem(0.5, real(-1.0)), &TimeGrid::new(1.0, 10).unwrap()).unwrap();
    assert!(d.rows.iter().all(|r| r.ratio.is_finite() && r.ratio > 0.0));
}

#[test]
fn complex_lambda_tracks_exact_solution() {
    let lambda = Complex64::from_polar(4.0, PI - 0.6);
    let p = problem(0.6, lambda);
    let traj = solve_scalar(&p, &TimeGrid::new(2.0, 400).unwrap()).unwrap();
    let exact = exact_scalar(&p, 2.0).unwrap();
    assert!((traj.last() - exact).norm() < 2e-3, "{} vs {exact}", traj.last());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn real_lambda_gives_real_trajectory(alpha in 0.05f64..0.95, lambda in -50.0f64..0.0, n in 1usize..60) {
        let traj = solve_scalar(&problem(alpha, real(lambda)), &TimeGrid::new(1.0, n).unwrap()).unwrap();
        prop_assert_eq!(traj.values[0], real(1.0));
        prop_assert!(traj.values.iter().all(|v| v.im == 0.0));
    }

    #[test]
    fn modulus_nonincreasing_in_lambda(alpha in 0.05f64..0.95, n in 1usize..40) {
        let grid = TimeGrid::new(1.0, n).unwrap();
        let mut prev = f64::INFINITY;
        for k in 0..10 {
            let lambda = -(10f64.powf(-1.0 + k as f64 * 0.4));
            let v = solve_scalar(&problem(alpha, real(lambda)), &grid).unwrap().last().norm();
            prop_assert!(v <= prev * (1.0 + 1e-12));
            prev = v;
        }
    }

    #[test]
    fn constants_exact(alpha in 0.01f64..0.99, n in 1usize..120) {
        let traj = solve_scalar(&problem(alpha, real(0.0)), &TimeGrid::new(1.0, n).unwrap()).unwrap();
        prop_assert!(traj.values.iter().all(|v| *v == real(1.0)));
    }
}
