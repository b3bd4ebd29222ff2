mod support;

use std::f64::consts::PI;

use fracstep::coefficients::{
    a_coeffs, b_coeff, b_row, check_corollary41, check_lemma41, inequality_sweep,
    FractionalOrder,
};
use fracstep::special::gamma;
use fracstep::Execution;
use proptest::prelude::*;

#[test]
fn b11_is_complete_beta() {
    for &alpha in &[0.1, 0.3, 0.5, 0.9] {
        let b = b_coeff(alpha, 1, 1).unwrap();
        assert!((b - PI / (alpha * PI).sin()).abs() < 1e-13);
        assert!((b - support::b_oracle(alpha, 1, 1)).abs() < 1e-9);
    }
}

#[test]
fn row_sum_against_quadrature() {
    let (alpha, n) = (0.3, 7);
    let closed: f64 = b_row(alpha, n).unwrap().iter().sum();
    let quad: f64 = (1..=n).map(|j| support::b_oracle(alpha, j, n)).sum();
    let exact = PI / (alpha * PI).sin();
    assert!((closed - exact).abs() < 1e-13);
    assert!((quad - exact).abs() < 1e-9);
}

#[test]
fn b_matches_quadrature_on_grid() {
    assert!((b_coeff(0.5, 2, 3).unwrap() - support::b_oracle(0.5, 2, 3)).abs() < 1e-9);
    for &alpha in &[0.15, 0.5, 0.85] {
        for &n in &[2usize, 5, 17, 60] {
            for j in [1, 2, n / 2, n - 1, n] {
                if j == 0 {
                    continue;
                }
                let v = b_coeff(alpha, j, n).unwrap();
                let o = support::b_oracle(alpha, j, n);
                assert!((v - o).abs() < 1e-9, "alpha {alpha} j {j} n {n}: {v} vs {o}");
            }
        }
    }
}

#[test]
fn first_row_values() {
    let row = a_coeffs(0.5, 1).unwrap();
    assert!((row.a[0] + 0.886_226_925_452_758).abs() < 1e-14);
    assert!((row.a[1] - 0.886_226_925_452_758).abs() < 1e-14);
    // cross-check through the quadrature value of b_11
    let c = 0.5 / gamma(0.5);
    assert!((row.a[1] - c * support::b_oracle(0.5, 1, 1)).abs() < 1e-9);
}

#[test]
fn row_ten_quarter_order() {
    let row = a_coeffs(0.25, 10).unwrap();
    assert!(row.a[1..10].iter().all(|&v| v <= 0.0));
    let g = gamma(0.75);
    let a0 = row.a[0].abs();
    assert!(a0 >= 1.0 / (g * 10f64.powf(0.25)));
    assert!(a0 <= 1.0 / (g * 9f64.powf(0.25)));
}

#[test]
fn lemma_examples() {
    assert!(check_lemma41(0.5, 0.1, 2).unwrap().holds);
    let c = check_lemma41(0.9, 0.05, 100).unwrap();
    assert!(c.holds && c.margin > 0.0);
    assert!(check_lemma41(0.5, 0.5, 10).is_err());
}

#[test]
fn corollary_examples() {
    assert!(check_corollary41(0.25, 2).unwrap().holds);
    let row = a_coeffs(0.25, 2).unwrap();
    let direct = row.a[2] / 2f64.powf(0.25) - row.a[1].abs();
    assert!((check_corollary41(0.25, 2).unwrap().margin - direct).abs() < 1e-15);
    assert!(check_corollary41(0.4, 500).unwrap().holds);
}

#[test]
fn sweep_reports_min_n_two() {
    let order = FractionalOrder::new(0.4).unwrap();
    let s = inequality_sweep(order, 200, Execution::Parallel).unwrap();
    assert_eq!(s.lemma_min_n, Some(2));
    assert_eq!(s.corollary_min_n, Some(Some(2)));
    assert!(s.lemma_min_margin > 0.0);
    assert_eq!(s.lemma_failures, 0);
}

#[test]
fn sweep_modes_agree() {
    let order = FractionalOrder::new(0.7).unwrap();
    let a = inequality_sweep(order, 150, Execution::Sequential).unwrap();
    let b = inequality_sweep(order, 150, Execution::Parallel).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn row_invariants(alpha in 0.02f64..0.98, n in 1usize..400) {
        let row = a_coeffs(alpha, n).unwrap();
        let check = row.validate(alpha);
        prop_assert!(check.passes(1e-12, 1e-10), "{:?}", check);
        prop_assert_eq!(row.a.len(), n + 1);
        prop_assert!((row.a[n] - row.a_nn_closed).abs() <= 1e-12 * row.a_nn_closed);
    }

    #[test]
    fn lemma_holds(alpha in 0.05f64..0.95, n in 2usize..300) {
        let eps = 0.05f64.min((1.0 - alpha) / 2.0);
        prop_assert!(check_lemma41(alpha, eps, n).unwrap().holds);
    }
}
