//! Dirichlet elliptic operator `a0^2 u'' - b(s) u' - c(s) u` on `[0, 1]` and its
//! second-order central-difference matrix.

use std::fmt;
use std::sync::{Arc, Once};

use crate::{Error, Result};

/// Coefficient function of the spatial variable.
pub type CoefficientFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `A u = a0^2 u'' - b(s) u' - c(s) u` with `u(0) = u(1) = 0`, on the grid `s_i = i/M`.
#[derive(Clone)]
pub struct EllipticOperator1D {
    a0: f64,
    b: CoefficientFn,
    c: CoefficientFn,
    b_prime: Option<CoefficientFn>,
    intervals: usize,
    laplacian: bool,
}

impl fmt::Debug for EllipticOperator1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EllipticOperator1D")
            .field("a0", &self.a0)
            .field("intervals", &self.intervals)
            .field("laplacian", &self.laplacian)
            .finish_non_exhaustive()
    }
}

fn check_grid(a0: f64, intervals: usize) -> Result<()> {
    if !(a0 > 0.0 && a0.is_finite()) {
        return Err(Error::invalid(format!("a0 = {a0} must be positive")));
    }
    if intervals < 2 {
        return Err(Error::invalid(format!("M = {intervals} must be at least 2")));
    }
    Ok(())
}

impl EllipticOperator1D {
    pub fn new(a0: f64, b: CoefficientFn, c: CoefficientFn, intervals: usize) -> Result<Self> {
        check_grid(a0, intervals)?;
        Ok(Self {
            a0,
            b,
            c,
            b_prime: None,
            intervals,
            laplacian: false,
        })
    }

    /// `a0^2 u''` (no drift, no reaction).
    pub fn laplacian(a0: f64, intervals: usize) -> Result<Self> {
        check_grid(a0, intervals)?;
        let zero: CoefficientFn = Arc::new(|_| 0.0);
        Ok(Self {
            a0,
            b: zero.clone(),
            c: zero.clone(),
            b_prime: Some(zero),
            intervals,
            laplacian: true,
        })
    }

    /// `a0 = 0.1`, `b(s) = 0.02 s`, `c(s) = s(1 - s) + 0.02`.
    pub fn drift_reaction(intervals: usize) -> Result<Self> {
        Ok(Self::new(
            0.1,
            Arc::new(|s| 0.02 * s),
            Arc::new(|s| s * (1.0 - s) + 0.02),
            intervals,
        )?
        .with_drift_derivative(Arc::new(|_| 0.02)))
    }

    /// Supply `b'(s)` analytically instead of by central differences.
    pub fn with_drift_derivative(mut self, b_prime: CoefficientFn) -> Self {
        self.b_prime = Some(b_prime);
        self
    }

    /// Same coefficients on a different grid.
    pub fn with_intervals(&self, intervals: usize) -> Result<Self> {
        check_grid(self.a0, intervals)?;
        Ok(Self {
            intervals,
            ..self.clone()
        })
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn b(&self, s: f64) -> f64 {
        (self.b)(s)
    }

    pub fn c(&self, s: f64) -> f64 {
        (self.c)(s)
    }

    /// `b'(s)`: the supplied derivative, else a central difference (one-sided at the ends).
    pub fn b_prime(&self, s: f64) -> f64 {
        if let Some(d) = &self.b_prime {
            return d(s);
        }
        let h = 1e-6;
        let lo = (s - h).max(0.0);
        let hi = (s + h).min(1.0);
        (self.b(hi) - self.b(lo)) / (hi - lo)
    }

    /// Number of intervals `M`.
    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn h(&self) -> f64 {
        1.0 / self.intervals as f64
    }

    /// `s_i = i / M`.
    pub fn node(&self, i: usize) -> f64 {
        i as f64 / self.intervals as f64
    }

    /// `true` when constructed by [`laplacian`](Self::laplacian).
    pub fn is_laplacian(&self) -> bool {
        self.laplacian
    }
}

/// Tridiagonal matrix on the interior nodes `1..M-1`.
///
/// `lower[0]` and `upper[m-1]` are stored but never used.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
}

/// Central-difference matrix of the operator with Dirichlet rows eliminated.
pub fn assemble_operator(op: &EllipticOperator1D) -> Tridiagonal {
    let m = op.intervals() - 1;
    let h = op.h();
    let diff = op.a0 * op.a0 / (h * h);
    let mut lower = Vec::with_capacity(m);
    let mut diag = Vec::with_capacity(m);
    let mut upper = Vec::with_capacity(m);
    for i in 1..=m {
        let s = op.node(i);
        let drift = op.b(s) / (2.0 * h);
        lower.push(diff + drift);
        diag.push(-2.0 * diff - op.c(s));
        upper.push(diff - drift);
    }
    Tridiagonal { lower, diag, upper }
}

static DOMINANCE_WARNING: Once = Once::new();

impl Tridiagonal {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// `y = T x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let m = self.dim();
        (0..m)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.lower[i] * x[i - 1];
                }
                if i + 1 < m {
                    y += self.upper[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    /// `|T| |x|`, the entrywise-absolute product used to scale residuals.
    pub fn apply_abs(&self, x: &[f64]) -> Vec<f64> {
        let m = self.dim();
        (0..m)
            .map(|i| {
                let mut y = (self.diag[i] * x[i]).abs();
                if i > 0 {
                    y += (self.lower[i] * x[i - 1]).abs();
                }
                if i + 1 < m {
                    y += (self.upper[i] * x[i + 1]).abs();
                }
                y
            })
            .collect()
    }

    /// `max_i (|lower_i| + |diag_i| + |upper_i|)`.
    pub fn inf_norm(&self) -> f64 {
        (0..self.dim())
            .map(|i| self.lower[i].abs() + self.diag[i].abs() + self.upper[i].abs())
            .fold(0.0, f64::max)
    }

    /// Solve `(scale T - shift I) x = rhs` by the Thomas algorithm.
    ///
    /// Logs a warning (once per process) if the shifted matrix is not diagonally
    /// dominant; fails on a zero or non-finite pivot.
    pub fn solve_shifted(&self, scale: f64, shift: f64, rhs: &[f64]) -> Result<Vec<f64>> {
        let m = self.dim();
        assert_eq!(rhs.len(), m, "right-hand side length");
        let lo = |i: usize| if i > 0 { scale * self.lower[i] } else { 0.0 };
        let up = |i: usize| if i + 1 < m { scale * self.upper[i] } else { 0.0 };
        let dg = |i: usize| scale * self.diag[i] - shift;

        if (0..m).any(|i| dg(i).abs() < lo(i).abs() + up(i).abs()) {
            DOMINANCE_WARNING.call_once(|| {
                log::warn!("tridiagonal system is not diagonally dominant; Thomas elimination may be unstable");
            });
        }

        let mut c_prime = vec![0.0; m];
        let mut x = vec![0.0; m];
        let mut pivot = dg(0);
        for i in 0..m {
            if i > 0 {
                pivot = dg(i) - lo(i) * c_prime[i - 1];
            }
            if pivot == 0.0 || !pivot.is_finite() {
                return Err(Error::SingularSystem { row: i, pivot });
            }
            c_prime[i] = up(i) / pivot;
            let prev = if i > 0 { x[i - 1] } else { 0.0 };
            x[i] = (rhs[i] - lo(i) * prev) / pivot;
        }
        for i in (0..m.saturating_sub(1)).rev() {
            x[i] -= c_prime[i] * x[i + 1];
        }
        Ok(x)
    }
}

/// Number of grid points used by [`sectorial_angle`].
pub const SECTOR_GRID_POINTS: usize = 100_001;

/// Angle `phi0*` with
/// `tan phi0* = max_s |b(s)| max{1/(2 a0^2), 1/(2c(s) - b'(s))}`.
///
/// The maximum is located on a uniform grid of [`SECTOR_GRID_POINTS`] points
/// and then refined by golden-section search on the two adjacent cells.
/// Fails if `2c - b' <= 0` at a grid point where `b` does not vanish; where
/// `b(s) = 0` the term is zero whatever the denominator.
pub fn sectorial_angle(op: &EllipticOperator1D) -> Result<f64> {
    let inv_diff = 1.0 / (2.0 * op.a0 * op.a0);
    let denom = |s: f64| 2.0 * op.c(s) - op.b_prime(s);
    let objective = |s: f64| {
        let b = op.b(s).abs();
        if b == 0.0 {
            0.0
        } else {
            b * inv_diff.max(1.0 / denom(s))
        }
    };

    let last = SECTOR_GRID_POINTS - 1;
    let mut best = (0usize, f64::NEG_INFINITY);
    for i in 0..=last {
        let s = i as f64 / last as f64;
        let d = denom(s);
        if op.b(s) != 0.0 && !(d > 0.0) {
            return Err(Error::invalid(format!(
                "2c(s) - b'(s) = {d} is not positive at s = {s}"
            )));
        }
        let v = objective(s);
        if v > best.1 {
            best = (i, v);
        }
    }
    let lo = best.0.saturating_sub(1) as f64 / last as f64;
    let hi = (best.0 + 1).min(last) as f64 / last as f64;
    let refined = golden_max(&objective, lo, hi, 60);
    Ok(best.1.max(refined).atan())
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, iterations: usize) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iterations {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        }
    }
    f1.max(f2).max(f(a)).max(f(b))
}
