//! Reference computations that do not go through the library's own special
//! functions or quadrature.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Adaptive Simpson quadrature with Richardson correction.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Simpson over `pieces` equal subintervals, each adaptive.
pub fn simpson_pieces<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, pieces: usize, tol: f64) -> f64 {
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|k| simpson(f, a + k as f64 * h, a + (k + 1) as f64 * h, tol / pieces as f64))
        .sum()
}

/// `exp(x^2) erfc(x) = 2/sqrt(pi) int_0^inf exp(-t^2 - 2 x t) dt` for `x >= 0`.
pub fn scaled_erfc(x: f64) -> f64 {
    let upper = 40.0;
    2.0 / PI.sqrt() * simpson_pieces(&|t: f64| (-(t * t) - 2.0 * x * t).exp(), 0.0, upper, 64, 1e-17)
}

/// `int_0^x t^(p-1) (1-t)^(q-1) dt` for `x <= 1/2`, with `t = u^(1/p)` removing
/// the singularity at 0.
pub fn incomplete_beta_oracle(p: f64, q: f64, x: f64) -> f64 {
    let upper = x.powf(p);
    simpson_pieces(&|u: f64| (1.0 - u.powf(1.0 / p)).powf(q - 1.0) / p, 0.0, upper, 16, 1e-16)
}

/// `int_{j-1}^{j} x^(alpha-1) (n-x)^(-alpha) dx` by quadrature, with power
/// substitutions at the singular endpoints `x = 0` (j = 1) and `x = n` (j = n).
pub fn b_oracle(alpha: f64, j: usize, n: usize) -> f64 {
    let (jf, nf) = (j as f64, n as f64);
    let f = |x: f64| x.powf(alpha - 1.0) * (nf - x).powf(-alpha);
    if n == 1 {
        // split at 1/2 and substitute on both halves
        let left = |u: f64| (1.0 - u.powf(1.0 / alpha)).powf(-alpha) / alpha;
        let right = |u: f64| (1.0 - u.powf(1.0 / (1.0 - alpha))).powf(alpha - 1.0) / (1.0 - alpha);
        return simpson_pieces(&left, 0.0, 0.5f64.powf(alpha), 16, 1e-15)
            + simpson_pieces(&right, 0.0, 0.5f64.powf(1.0 - alpha), 16, 1e-15);
    }
    if j == 1 {
        // x = u^(1/alpha): dx = u^(1/alpha - 1)/alpha du, x^(alpha-1) dx = du/alpha
        let g = |u: f64| (nf - u.powf(1.0 / alpha)).powf(-alpha) / alpha;
        return simpson_pieces(&g, 0.0, 1.0, 16, 1e-15);
    }
    if j == n {
        // n - x = u^(1/(1-alpha))
        let beta = 1.0 - alpha;
        let g = |u: f64| (nf - u.powf(1.0 / beta)).powf(alpha - 1.0) / beta;
        return simpson_pieces(&g, 0.0, 1.0, 16, 1e-15);
    }
    simpson_pieces(&f, jf - 1.0, jf, 16, 1e-15)
}

/// First `terms` terms of the hypergeometric series.
pub fn f21_partial(a: f64, b: f64, c: f64, x: f64, terms: usize) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..terms {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
    }
    sum
}

/// `(-1)^j alpha (alpha-1) ... (alpha-j+1) / j!` from the explicit product.
pub fn gl_direct(alpha: f64, j: usize) -> f64 {
    let mut num = 1.0;
    let mut den = 1.0;
    for k in 0..j {
        num *= alpha - k as f64;
        den *= (k + 1) as f64;
    }
    if j % 2 == 1 {
        -num / den
    } else {
        num / den
    }
}

/// [`incomplete_beta_oracle`] extended to `x in (1/2, 1)` by splitting at 1/2
/// and substituting `t -> 1 - t` on the upper piece.
pub fn incomplete_beta_oracle_full(p: f64, q: f64, x: f64) -> f64 {
    if x <= 0.5 {
        return incomplete_beta_oracle(p, q, x);
    }
    incomplete_beta_oracle(p, q, 0.5) + incomplete_beta_oracle(q, p, 0.5)
        - incomplete_beta_oracle(q, p, 1.0 - x)
}
