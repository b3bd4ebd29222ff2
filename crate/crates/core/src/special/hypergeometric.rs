//! Gauss hypergeometric function on `[0, 1]` and the incomplete beta function.

use super::gamma::{gamma, ln_gamma, rgamma};
use crate::{Error, Result};

const MAX_TERMS: usize = 2_000_000;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `F(a, b; c; x)` for real parameters and `0 <= x <= 1`.
///
/// For `x < 1` the series is summed until a geometric bound on the tail drops
/// below `tol`. At `x = 1` the Gauss summation formula is used, which needs
/// `c - a - b > 0`.
pub fn gauss_2f1(a: f64, b: f64, c: f64, x: f64, tol: f64) -> Result<f64> {
    if is_nonpositive_integer(c) {
        return Err(Error::domain(format!("c = {c} is a nonpositive integer")));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tol = {tol} must be positive")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("x = {x} outside [0, 1]")));
    }
    if x == 1.0 {
        if c - a - b <= 0.0 {
            return Err(Error::domain(format!(
                "F({a}, {b}; {c}; 1) diverges (c - a - b = {})",
                c - a - b
            )));
        }
        return Ok(gamma(c) * gamma(c - a - b) * rgamma(c - a) * rgamma(c - b));
    }
    // past this index the term ratio is monotone in k
    let settle = (a.abs() + b.abs() + c.abs() + 2.0).ceil() as usize;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0));
        let next = term * ratio * x;
        if next == 0.0 {
            return Ok(sum);
        }
        sum += next;
        term = next;
        if k >= settle {
            let kn = kf + 1.0;
            let r_next = ((a + kn) * (b + kn) / ((c + kn) * (kn + 1.0))).abs();
            let rho = x * r_next.max(1.0);
            if rho < 1.0 && term.abs() * rho / (1.0 - rho) <= tol {
                return Ok(sum);
            }
        }
    }
    Err(Error::NoConvergence(format!(
        "F({a}, {b}; {c}; {x}) series after {MAX_TERMS} terms"
    )))
}

/// Complete beta function `B(p, q)`.
pub fn beta(p: f64, q: f64) -> f64 {
    if p + q < 170.0 {
        gamma(p) * gamma(q) / gamma(p + q)
    } else {
        (ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q)).exp()
    }
}

/// Non-normalized incomplete beta function `B_x(p, q) = int_0^x t^(p-1) (1-t)^(q-1) dt`.
///
/// Uses `B_x(p,q) = x^p / p * F(p, 1-q; p+1; x)` for `x <= 1/2` and the
/// reflection `B_x(p,q) = B(p,q) - B_(1-x)(q,p)` above.
pub fn incomplete_beta(p: f64, q: f64, x: f64) -> Result<f64> {
    if !(p > 0.0 && q > 0.0) || !p.is_finite() || !q.is_finite() {
        return Err(Error::domain(format!("B_x(p, q) needs p, q > 0 (p = {p}, q = {q})")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("x = {x} outside [0, 1]")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(beta(p, q));
    }
    if x <= 0.5 {
        lower_part(p, q, x)
    } else {
        Ok(beta(p, q) - lower_part(q, p, 1.0 - x)?)
    }
}

fn lower_part(p: f64, q: f64, x: f64) -> Result<f64> {
    let f = gauss_2f1(p, 1.0 - q, p + 1.0, x, 1e-17)?;
    Ok(x.powf(p) / p * f)
}
