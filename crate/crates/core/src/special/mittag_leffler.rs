//! Two-parameter Mittag-Leffler function `E_{alpha,beta}(z)` for `0 < alpha <= 1`.
//!
//! Three regimes:
//!
//! - `|z| <= 1`: power series, stopped with a rigorous ratio bound on the tail;
//! - `|z| > 40` and `|arg z| >= alpha*pi/2 + 0.05`: inverse-power asymptotic
//!   expansion with 10 terms (plus the exponential term while
//!   `|arg z| <= alpha*pi`), used only when the first omitted term is below `tol`;
//! - otherwise: the contour integral
//!   `E = 1/(2 pi i alpha) * int exp(w^(1/alpha)) w^((1-beta)/alpha) / (w - z) dw`
//!   over two rays at `arg w = +-delta` joined by a circular arc, plus the pole
//!   contribution when `z` lies to the right of the contour.
//!
//! Large `|z|` close to the positive real axis (where `E` grows like
//! `exp(z^(1/alpha))`) is rejected with [`Error::Domain`].

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::rgamma;
use super::quadrature::integrate;
use crate::{Error, Result};

/// Above this modulus the asymptotic expansion is tried.
pub const SWITCH_RADIUS: f64 = 40.0;
/// Angular margin (radians) added to `alpha*pi/2` for the asymptotic sector.
pub const SECTOR_MARGIN: f64 = 0.05;
/// Number of inverse-power terms of the asymptotic expansion.
pub const ASYMPTOTIC_TERMS: usize = 10;

const SERIES_RADIUS: f64 = 1.0;
const MAX_SERIES_TERMS: usize = 5000;
const MIN_TOL: f64 = 1e-15;

/// Parameters `(alpha, beta)` of `E_{alpha,beta}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlParams {
    alpha: f64,
    beta: f64,
}

impl MlParams {
    /// `alpha` must lie in `(0, 1]`; `alpha = 1` is meant for checks against `exp`.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::invalid(format!("alpha = {alpha} not in (0, 1]")));
        }
        if !beta.is_finite() {
            return Err(Error::invalid(format!("beta = {beta} is not finite")));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Evaluate `E_{alpha,beta}(z)` with absolute error about `tol`.
///
/// Tolerances below `1e-15` are raised to `1e-15`. Real arguments give a
/// result with zero imaginary part.
pub fn mittag_leffler(p: MlParams, z: Complex64, tol: f64) -> Result<Complex64> {
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tol = {tol} must be positive")));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(format!("non-finite argument {z}")));
    }
    let tol = tol.max(MIN_TOL);
    let value = if z.norm() <= SERIES_RADIUS {
        series(p, z, tol)?
    } else {
        let arg = z.arg().abs();
        let asymptotic_sector = arg >= 0.5 * p.alpha * PI + SECTOR_MARGIN;
        if z.norm() > SWITCH_RADIUS && !asymptotic_sector {
            return Err(Error::domain(format!(
                "E_({}, {}) at z = {z}: |z| > {SWITCH_RADIUS} with |arg z| < alpha*pi/2 + {SECTOR_MARGIN}",
                p.alpha, p.beta
            )));
        }
        let asym = if z.norm() > SWITCH_RADIUS {
            asymptotic(p, z, tol)
        } else {
            None
        };
        match asym {
            Some(v) => v,
            None => contour(p, z, tol)?,
        }
    };
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::domain(format!(
            "E_({}, {}) at z = {z} is not representable",
            p.alpha, p.beta
        )));
    }
    if z.im == 0.0 {
        return Ok(Complex64::new(value.re, 0.0));
    }
    Ok(value)
}

/// `m`-th derivative of `t -> E_alpha(lambda t^alpha)`, i.e.
/// `t^(-m) E_{alpha, 1-m}(lambda t^alpha)`.
pub fn ml_derivative(order_m: u32, alpha: f64, lambda: Complex64, t: f64, tol: f64) -> Result<Complex64> {
    if order_m < 1 {
        return Err(Error::invalid("derivative order must be at least 1"));
    }
    if !(t > 0.0) {
        return Err(Error::invalid(format!("t = {t} must be positive")));
    }
    let p = MlParams::new(alpha, 1.0 - order_m as f64)?;
    let z = lambda * t.powf(alpha);
    Ok(mittag_leffler(p, z, tol)? * t.powi(-(order_m as i32)))
}

fn series(p: MlParams, z: Complex64, tol: f64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(rgamma(p.beta), 0.0));
    }
    let r = z.norm();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    for k in 0..MAX_SERIES_TERMS {
        let x = p.alpha * k as f64 + p.beta;
        let term = zk * rgamma(x);
        sum += term;
        if x >= 2.0 {
            // Gamma(x)/Gamma(x + alpha) decreases in x, so every later term
            // ratio is bounded by the current one.
            let rho = r * (super::gamma::ln_gamma(x) - super::gamma::ln_gamma(x + p.alpha)).exp();
            if rho < 1.0 {
                let next = r * zk.norm() * rgamma(x + p.alpha);
                if next / (1.0 - rho) <= 0.5 * tol {
                    return Ok(sum);
                }
            }
        }
        zk *= z;
    }
    Err(Error::NoConvergence(format!("Mittag-Leffler series at z = {z}")))
}

fn pole_term(p: MlParams, z: Complex64) -> Complex64 {
    let w = z.powf(1.0 / p.alpha);
    z.powf((1.0 - p.beta) / p.alpha) * w.exp() / p.alpha
}

fn asymptotic(p: MlParams, z: Complex64, tol: f64) -> Option<Complex64> {
    let inv = z.inv();
    let mut zk = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..=ASYMPTOTIC_TERMS {
        zk *= inv;
        sum -= zk * rgamma(p.beta - p.alpha * k as f64);
    }
    let next = (zk * inv).norm() * rgamma(p.beta - p.alpha * (ASYMPTOTIC_TERMS + 1) as f64).abs();
    if next > 0.5 * tol {
        return None;
    }
    if z.arg().abs() <= p.alpha * PI {
        sum += pole_term(p, z);
    }
    Some(sum)
}

fn contour(p: MlParams, z: Complex64, tol: f64) -> Result<Complex64> {
    let a = p.alpha;
    let b = p.beta;
    let arg = z.arg().abs();
    let mut delta = a * PI;
    if (arg - a * PI).abs() < 0.1 * a * PI {
        delta = 0.75 * a * PI;
    }
    let eps = (z.norm() / 2.0).min(1.0);
    let x0 = eps.powf(1.0 / a);
    let decay = (delta / a).cos().abs();
    let x_max = x0 + 800.0 / decay;
    let piece_tol = tol / 4.0;

    // Ray w = x^alpha e^{i theta}; the Jacobian and the 1/alpha prefactor combine
    // into exp(x e^{i theta/alpha}) x^(alpha-beta) e^{i theta (1-beta)/alpha} e^{i theta} / (w - z).
    let ray = |theta: f64| {
        let rot = Complex64::from_polar(1.0, theta / a);
        let phase = Complex64::from_polar(1.0, theta * (1.0 - b) / a);
        let dir = Complex64::from_polar(1.0, theta);
        move |x: f64| {
            let w = dir * x.powf(a);
            (rot * x).exp() * phase * dir * x.powf(a - b) / (w - z)
        }
    };
    let bp = [z.norm().powf(1.0 / a)];
    let scale = 2.0 * PI;
    let upper = integrate(ray(delta), x0, x_max, &bp, piece_tol * scale, 0.0)?.value;
    let lower = integrate(ray(-delta), x0, x_max, &bp, piece_tol * scale, 0.0)?.value;
    let rays = (upper - lower) / Complex64::new(0.0, scale);

    let arc_fn = |phi: f64| {
        let w = Complex64::from_polar(eps, phi);
        let w_inv_a = Complex64::from_polar(x0, phi / a);
        let pw = Complex64::from_polar(eps.powf((1.0 - b) / a), phi * (1.0 - b) / a);
        w_inv_a.exp() * pw * w / (w - z)
    };
    let arc_scale = 2.0 * PI * a;
    let arc = integrate(arc_fn, -delta, delta, &[], piece_tol * arc_scale, 0.0)?.value / arc_scale;

    let mut value = rays + arc;
    if arg < delta && z.norm() > eps {
        value += pole_term(p, z);
    }
    Ok(value)
}
