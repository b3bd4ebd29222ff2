//! Quadrature weights `b_jn`, scheme coefficients `a_jn`, and checkers for the
//! sign pattern, bounds and inequalities they satisfy.
//!
//! With `d_j = j^alpha - (j-1)^alpha` and `c = alpha / Gamma(1 - alpha)`:
//!
//! ```text
//! b_jn = int_{j-1}^{j} x^(alpha-1) (n-x)^(-alpha) dx
//!      = B_{j/n}(alpha, 1-alpha) - B_{(j-1)/n}(alpha, 1-alpha)
//! a_0n = -c b_1n / d_1
//! a_jn =  c (b_jn / d_j - b_{j+1,n} / d_{j+1}),   1 <= j <= n-1
//! a_nn =  c b_nn / d_n
//! ```
//!
//! Row `n` depends only on `(alpha, n)`; computing rows `1..=N` costs
//! `O(N^2)` incomplete-beta evaluations.

use std::f64::consts::PI;

use crate::exec::Execution;
use crate::special::{gamma, incomplete_beta, rgamma};
use crate::{Error, Result};

/// Slack applied to non-strict inequalities (relative to the larger side).
pub const EQUALITY_SLACK: f64 = 1e-12;

/// Validated fractional order `alpha` in (0, 1) with the rate slack `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder {
    alpha: f64,
    epsilon: f64,
}

impl FractionalOrder {
    /// Order with the default slack `epsilon = min(0.05, (1 - alpha)/2)`.
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::invalid(format!("alpha = {alpha} not in (0, 1)")));
        }
        Self::with_epsilon(alpha, default_epsilon(alpha))
    }

    pub fn with_epsilon(alpha: f64, epsilon: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::invalid(format!("alpha = {alpha} not in (0, 1)")));
        }
        if !(epsilon > 0.0 && epsilon < 1.0 - alpha) {
            return Err(Error::invalid(format!(
                "epsilon = {epsilon} not in (0, 1 - alpha) = (0, {})",
                1.0 - alpha
            )));
        }
        Ok(Self { alpha, epsilon })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Convergence exponent: `alpha` below 1/2, otherwise `1 - alpha - epsilon`.
    pub fn s_alpha(&self) -> f64 {
        if self.alpha < 0.5 {
            self.alpha
        } else {
            1.0 - self.alpha - self.epsilon
        }
    }
}

/// `min(0.05, (1 - alpha)/2)`.
pub fn default_epsilon(alpha: f64) -> f64 {
    0.05f64.min(0.5 * (1.0 - alpha))
}

/// Coefficients of row `n`: `b[j-1] = b_jn` for `j = 1..=n`, `a[j] = a_jn` for `j = 0..=n`.
///
/// `a[n]` is stored as `-(a[0] + ... + a[n-1])` summed left to right, so the
/// scheme maps constants to themselves bit-exactly. The closed form
/// `c b_nn / d_n` is kept in `a_nn_closed`; the two agree to rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    pub n: usize,
    pub b: Vec<f64>,
    pub a: Vec<f64>,
    pub a_nn_closed: f64,
}

/// Outcome of [`CoefficientTable::validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowCheck {
    /// `|sum_{j<n} a_jn + a_nn|` with the closed-form `a_nn`
    pub a_sum_error: f64,
    /// `|sum_j b_jn - pi/sin(alpha pi)|`
    pub b_sum_error: f64,
    pub signs_ok: bool,
    /// bounds on `|a_0n|` and `a_nn` (vacuous for `n = 1`)
    pub bounds_ok: bool,
    /// `d_j/(alpha (n-j+1)^alpha) < b_jn < d_j/(alpha (n-j)^alpha)` for `j < n`
    pub bracket_ok: bool,
}

impl RowCheck {
    pub fn passes(&self, a_tol: f64, b_tol: f64) -> bool {
        self.a_sum_error <= a_tol
            && self.b_sum_error <= b_tol
            && self.signs_ok
            && self.bounds_ok
            && self.bracket_ok
    }
}

fn le_slack(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + EQUALITY_SLACK * lhs.abs().max(rhs.abs())
}

impl CoefficientTable {
    /// Check the structural properties of the row for the given `alpha`.
    pub fn validate(&self, alpha: f64) -> RowCheck {
        let n = self.n;
        let a = &self.a;
        let a_sum_error = (a[..n].iter().sum::<f64>() + self.a_nn_closed).abs();
        let b_sum_error = (self.b.iter().sum::<f64>() - PI / (alpha * PI).sin()).abs();

        let signs_ok = a[0] < 0.0
            && a[n] > 0.0
            && self.a_nn_closed > 0.0
            && a[1..n].iter().all(|&v| v <= 0.0)
            && self.b.iter().all(|&v| v > 0.0);

        let bounds_ok = if n >= 2 {
            let g = gamma(1.0 - alpha);
            let g2 = gamma(2.0 - alpha);
            let nf = n as f64;
            let a0 = a[0].abs();
            let ratio = (nf - 1.0) / nf;
            le_slack(1.0 / (g * nf.powf(alpha)), a0)
                && le_slack(a0, 1.0 / (g * (nf - 1.0).powf(alpha)))
                && le_slack(ratio.powf(1.0 - alpha) / g2, a[n])
                && le_slack(a[n], ratio.powf(alpha - 1.0) / g2)
        } else {
            true
        };

        let bracket_ok = (1..n).all(|j| {
            let d = power_difference(alpha, j);
            let lo = d / (alpha * ((n - j + 1) as f64).powf(alpha));
            let hi = d / (alpha * ((n - j) as f64).powf(alpha));
            let b = self.b[j - 1];
            lo < b && b < hi
        });

        RowCheck {
            a_sum_error,
            b_sum_error,
            signs_ok,
            bounds_ok,
            bracket_ok,
        }
    }
}

/// `j^alpha - (j-1)^alpha` without cancellation for large `j`.
pub fn power_difference(alpha: f64, j: usize) -> f64 {
    let jf = j as f64;
    if j == 1 {
        return 1.0;
    }
    -jf.powf(alpha) * (alpha * (-1.0 / jf).ln_1p()).exp_m1()
}

fn check_order(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("alpha = {alpha} not in (0, 1)")))
    }
}

/// `B_{k/n}(alpha, 1-alpha)`, evaluated through the reflected form when `k/n > 1/2`.
fn lower_beta(alpha: f64, k: usize, n: usize) -> Result<f64> {
    incomplete_beta(alpha, 1.0 - alpha, k as f64 / n as f64)
}

/// `B_{k/n}(1-alpha, alpha)`.
fn upper_beta(alpha: f64, k: usize, n: usize) -> Result<f64> {
    incomplete_beta(1.0 - alpha, alpha, k as f64 / n as f64)
}

/// Single weight `b_jn`, `1 <= j <= n`.
pub fn b_coeff(alpha: f64, j: usize, n: usize) -> Result<f64> {
    check_order(alpha)?;
    if j < 1 || j > n {
        return Err(Error::invalid(format!("index j = {j} outside 1..={n}")));
    }
    // For j past n/2 the difference is taken in the mirrored variable n - x,
    // where both incomplete-beta values are small and no cancellation occurs.
    if 2 * j > n {
        Ok(upper_beta(alpha, n - j + 1, n)? - upper_beta(alpha, n - j, n)?)
    } else {
        Ok(lower_beta(alpha, j, n)? - lower_beta(alpha, j - 1, n)?)
    }
}

/// All weights `b_1n..b_nn` of row `n`, sharing incomplete-beta evaluations.
pub fn b_row(alpha: f64, n: usize) -> Result<Vec<f64>> {
    check_order(alpha)?;
    if n < 1 {
        return Err(Error::invalid("row index n must be at least 1"));
    }
    let half = n / 2;
    // lower[k] = B_{k/n}(alpha, 1-alpha), k = 0..=half
    let lower = (0..=half)
        .map(|k| lower_beta(alpha, k, n))
        .collect::<Result<Vec<_>>>()?;
    // upper[k] = B_{k/n}(1-alpha, alpha), k = 0..=n-half
    let upper = (0..=n - half)
        .map(|k| upper_beta(alpha, k, n))
        .collect::<Result<Vec<_>>>()?;
    Ok((1..=n)
        .map(|j| {
            if 2 * j > n {
                upper[n - j + 1] - upper[n - j]
            } else {
                lower[j] - lower[j - 1]
            }
        })
        .collect())
}

/// Row `n` of the scheme coefficients.
pub fn a_coeffs(alpha: f64, n: usize) -> Result<CoefficientTable> {
    let b = b_row(alpha, n)?;
    let c = alpha * rgamma(1.0 - alpha);
    let r: Vec<f64> = b
        .iter()
        .enumerate()
        .map(|(i, bj)| bj / power_difference(alpha, i + 1))
        .collect();
    let mut a = Vec::with_capacity(n + 1);
    a.push(-c * r[0]);
    for j in 1..n {
        a.push(c * (r[j - 1] - r[j]));
    }
    let a_nn_closed = c * r[n - 1];
    let mut partial = 0.0;
    for v in &a {
        partial += v;
    }
    a.push(-partial);
    Ok(CoefficientTable {
        n,
        b,
        a,
        a_nn_closed,
    })
}

/// Rows `1..=N` of the coefficients for one `alpha`, immutable after construction.
#[derive(Debug, Clone)]
pub struct SchemeCoefficients {
    alpha: f64,
    rows: Vec<CoefficientTable>,
}

impl SchemeCoefficients {
    /// Build rows `1..=n_max`; rows are independent and computed per `exec`.
    pub fn build(alpha: f64, n_max: usize, exec: Execution) -> Result<Self> {
        check_order(alpha)?;
        let rows = exec.try_map_range(1..n_max + 1, |n| a_coeffs(alpha, n))?;
        Ok(Self { alpha, rows })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Largest row index available.
    pub fn n_max(&self) -> usize {
        self.rows.len()
    }

    /// Row `n`, `1 <= n <= n_max`.
    pub fn row(&self, n: usize) -> &CoefficientTable {
        &self.rows[n - 1]
    }
}

/// Result of an inequality check: whether it holds and the slack `rhs - lhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityCheck {
    pub holds: bool,
    pub margin: f64,
}

fn weighted_inequality(row: &CoefficientTable, exponent: f64) -> InequalityCheck {
    let n = row.n;
    let lhs: f64 = (1..n)
        .map(|j| row.a[j].abs() / (j as f64).powf(exponent))
        .sum();
    let rhs = row.a[n] / (n as f64).powf(exponent);
    InequalityCheck {
        holds: lhs <= rhs,
        margin: rhs - lhs,
    }
}

/// `sum_{j=1}^{n-1} |a_jn| / j^(1-alpha-eps) <= a_nn / n^(1-alpha-eps)`.
pub fn check_lemma41(alpha: f64, epsilon: f64, n: usize) -> Result<InequalityCheck> {
    let order = FractionalOrder::with_epsilon(alpha, epsilon)?;
    if n < 2 {
        return Err(Error::invalid(format!("n = {n} must be at least 2")));
    }
    Ok(lemma41_row(&a_coeffs(alpha, n)?, order))
}

fn lemma41_row(row: &CoefficientTable, order: FractionalOrder) -> InequalityCheck {
    weighted_inequality(row, 1.0 - order.alpha() - order.epsilon())
}

/// `sum_{j=1}^{n-1} |a_jn| / j^alpha <= a_nn / n^alpha`, for `alpha < 1/2`.
pub fn check_corollary41(alpha: f64, n: usize) -> Result<InequalityCheck> {
    check_order(alpha)?;
    if alpha >= 0.5 {
        return Err(Error::invalid(format!("alpha = {alpha} must be below 1/2")));
    }
    if n < 2 {
        return Err(Error::invalid(format!("n = {n} must be at least 2")));
    }
    Ok(weighted_inequality(&a_coeffs(alpha, n)?, alpha))
}

/// Aggregate of [`CoefficientTable::validate`] over rows `1..=n_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientSweep {
    pub alpha: f64,
    pub n_max: usize,
    pub max_a_sum_error: f64,
    pub max_b_sum_error: f64,
    pub signs_ok: bool,
    pub bounds_ok: bool,
    pub bracket_ok: bool,
}

pub fn coefficient_sweep(alpha: f64, n_max: usize, exec: Execution) -> Result<CoefficientSweep> {
    let checks = exec.try_map_range(1..n_max + 1, |n| {
        a_coeffs(alpha, n).map(|row| row.validate(alpha))
    })?;
    Ok(CoefficientSweep {
        alpha,
        n_max,
        max_a_sum_error: checks.iter().map(|c| c.a_sum_error).fold(0.0, f64::max),
        max_b_sum_error: checks.iter().map(|c| c.b_sum_error).fold(0.0, f64::max),
        signs_ok: checks.iter().all(|c| c.signs_ok),
        bounds_ok: checks.iter().all(|c| c.bounds_ok),
        bracket_ok: checks.iter().all(|c| c.bracket_ok),
    })
}

/// Inequality sweep over `n = 2..=n_max` for one `(alpha, epsilon)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalitySweep {
    pub alpha: f64,
    pub epsilon: f64,
    pub n_max: usize,
    /// Smallest `n0` such that the lemma inequality holds for every `n` in `n0..=n_max`.
    pub lemma_min_n: Option<usize>,
    pub lemma_min_margin: f64,
    pub lemma_failures: usize,
    /// Same for the corollary; `None` in the outer option when `alpha >= 1/2`.
    pub corollary_min_n: Option<Option<usize>>,
    pub corollary_min_margin: Option<f64>,
}

fn min_passing(checks: &[InequalityCheck]) -> Option<usize> {
    // checks[i] is row n = i + 2
    match checks.iter().rposition(|c| !c.holds) {
        None => Some(2),
        Some(i) if i + 1 < checks.len() => Some(i + 3),
        Some(_) => None,
    }
}

pub fn inequality_sweep(order: FractionalOrder, n_max: usize, exec: Execution) -> Result<InequalitySweep> {
    if n_max < 2 {
        return Err(Error::invalid(format!("n_max = {n_max} must be at least 2")));
    }
    let alpha = order.alpha();
    let with_corollary = alpha < 0.5;
    let pairs = exec.try_map_range(2..n_max + 1, |n| {
        let row = a_coeffs(alpha, n)?;
        let lemma = lemma41_row(&row, order);
        let cor = with_corollary.then(|| weighted_inequality(&row, alpha));
        Ok::<_, Error>((lemma, cor))
    })?;
    let lemma: Vec<InequalityCheck> = pairs.iter().map(|p| p.0).collect();
    let (corollary_min_n, corollary_min_margin) = if with_corollary {
        let cor: Vec<InequalityCheck> = pairs.iter().map(|p| p.1.unwrap()).collect();
        (
            Some(min_passing(&cor)),
            Some(cor.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min)),
        )
    } else {
        (None, None)
    };
    Ok(InequalitySweep {
        alpha,
        epsilon: order.epsilon(),
        n_max,
        lemma_min_n: min_passing(&lemma),
        lemma_min_margin: lemma.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min),
        lemma_failures: lemma.iter().filter(|c| !c.holds).count(),
        corollary_min_n,
        corollary_min_margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_validation() {
        assert!(FractionalOrder::new(0.0).is_err());
        assert!(FractionalOrder::new(1.0).is_err());
        assert!(FractionalOrder::with_epsilon(0.75, 0.25).is_err());
        let o = FractionalOrder::new(0.75).unwrap();
        assert_eq!(o.epsilon(), 0.05);
        assert!((o.s_alpha() - 0.2).abs() < 1e-15);
        assert_eq!(FractionalOrder::new(0.25).unwrap().s_alpha(), 0.25);
        assert_eq!(FractionalOrder::new(0.95).unwrap().epsilon(), 0.5 * (1.0 - 0.95));
    }

    #[test]
    fn first_row() {
        for &alpha in &[0.1, 0.5, 0.9] {
            let row = a_coeffs(alpha, 1).unwrap();
            let g = gamma(1.0 + alpha);
            assert!((row.a[0] + g).abs() < 1e-14);
            assert!((row.a[1] - g).abs() < 1e-14);
            assert!((row.b[0] - PI / (alpha * PI).sin()).abs() < 1e-13);
        }
        let row = a_coeffs(0.5, 1).unwrap();
        assert!((row.a[1] - 0.886_226_925_452_758).abs() < 1e-14);
    }

    #[test]
    fn single_and_row_agree() {
        let row = b_row(0.3, 9).unwrap();
        for j in 1..=9 {
            assert_eq!(row[j - 1], b_coeff(0.3, j, 9).unwrap());
        }
    }

    #[test]
    fn index_checks() {
        assert!(b_coeff(0.5, 0, 3).is_err());
        assert!(b_coeff(0.5, 4, 3).is_err());
        assert!(a_coeffs(0.5, 0).is_err());
        assert!(check_lemma41(0.5, 0.1, 1).is_err());
        assert!(check_corollary41(0.5, 10).is_err());
    }

    #[test]
    fn lemma_degenerate_row() {
        let row = a_coeffs(0.5, 2).unwrap();
        let e = 1.0 - 0.5 - 0.1;
        let expected = row.a[2] / 2f64.powf(e) - row.a[1].abs();
        let chk = check_lemma41(0.5, 0.1, 2).unwrap();
        assert!(chk.holds);
        assert!((chk.margin - expected).abs() < 1e-15);
    }

    #[test]
    fn middle_row_signs_and_bounds() {
        let row = a_coeffs(0.25, 10).unwrap();
        let check = row.validate(0.25);
        assert!(check.passes(1e-12, 1e-10), "{check:?}");
        let g = gamma(0.75);
        let a0 = row.a[0].abs();
        assert!(a0 >= 1.0 / (g * 10f64.powf(0.25)) && a0 <= 1.0 / (g * 9f64.powf(0.25)));
    }

    #[test]
    fn cache_matches_direct() {
        let cache = SchemeCoefficients::build(0.4, 20, Execution::Parallel).unwrap();
        assert_eq!(cache.n_max(), 20);
        assert_eq!(cache.row(13), &a_coeffs(0.4, 13).unwrap());
    }

    #[test]
    fn min_passing_semantics() {
        let ok = InequalityCheck { holds: true, margin: 1.0 };
        let bad = InequalityCheck { holds: false, margin: -1.0 };
        assert_eq!(min_passing(&[ok, ok]), Some(2));
        assert_eq!(min_passing(&[bad, ok, ok]), Some(3));
        assert_eq!(min_passing(&[ok, bad, ok]), Some(4));
        assert_eq!(min_passing(&[ok, bad]), None);
    }
}
