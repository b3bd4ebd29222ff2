//! Separation-of-variables solution for `d^alpha u = a0^2 u''` with Dirichlet ends:
//!
//! ```text
//! u(s, T) = sum_k f_k E_alpha(-a0^2 pi^2 k^2 T^alpha) sin(pi k s),
//! f_k = 2 int_0^1 f(s) sin(pi k s) ds
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;

use super::field::SpatialField;
use super::operator::EllipticOperator1D;
use crate::exec::Execution;
use crate::special::{gamma, mittag_leffler, MlParams};
use crate::{Error, Result};

/// Initial data used by the benchmarks.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialData {
    /// `f(s) = s^2 (s - 1)`
    Poly,
    /// `f(s) = sin(2 pi s)`
    Sine,
    /// Arbitrary grid values.
    Samples(SpatialField),
}

impl InitialData {
    /// Grid values on `M` intervals.
    pub fn field(&self, intervals: usize) -> Result<SpatialField> {
        match self {
            InitialData::Poly => Ok(SpatialField::from_fn(intervals, |s| s * s * (s - 1.0))),
            InitialData::Sine => Ok(SpatialField::from_fn(intervals, |s| (2.0 * PI * s).sin())),
            InitialData::Samples(f) if f.intervals() == intervals => Ok(f.clone()),
            InitialData::Samples(f) => Err(Error::invalid(format!(
                "sampled data has {} intervals, {intervals} requested",
                f.intervals()
            ))),
        }
    }

    /// Short label used in reports.
    pub fn label(&self) -> &'static str {
        match self {
            InitialData::Poly => "poly",
            InitialData::Sine => "sine",
            InitialData::Samples(_) => "samples",
        }
    }

    /// Sine coefficient `f_k`, `k >= 1`.
    pub fn sine_coefficient(&self, k: usize) -> f64 {
        match self {
            InitialData::Poly => {
                let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                (8.0 * sign + 4.0) / (k as f64 * PI).powi(3)
            }
            InitialData::Sine => {
                if k == 2 {
                    1.0
                } else {
                    0.0
                }
            }
            InitialData::Samples(f) => {
                // composite trapezoidal rule; the end values are zero
                let m = f.intervals();
                let h = 1.0 / m as f64;
                2.0 * h
                    * f.values()
                        .iter()
                        .enumerate()
                        .map(|(i, v)| v * (PI * k as f64 * i as f64 * h).sin())
                        .sum::<f64>()
            }
        }
    }
}

/// Reference field and a bound on the sup-norm of the omitted modes.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSolution {
    pub field: SpatialField,
    pub tail_bound: f64,
}

/// Default number of modes; the truncation error for the benchmark data is far
/// below the scheme errors being measured.
pub const DEFAULT_MODES: usize = 1000;

/// Sum the first `n_modes` terms of the series on the operator's grid.
///
/// Only operators built by [`EllipticOperator1D::laplacian`] are accepted.
/// The tail bound uses `E_alpha(-x) <= Gamma(1 + alpha)/x` for `x > 0`.
pub fn spectral_reference(
    op: &EllipticOperator1D,
    data: &InitialData,
    alpha: f64,
    horizon: f64,
    n_modes: usize,
    exec: Execution,
) -> Result<SpectralSolution> {
    if !op.is_laplacian() {
        return Err(Error::Unsupported(
            "spectral reference needs an operator without drift and reaction".into(),
        ));
    }
    if !(horizon > 0.0) {
        return Err(Error::invalid(format!("horizon T = {horizon} must be positive")));
    }
    if n_modes < 1 {
        return Err(Error::invalid("at least one mode is required"));
    }
    let ml = MlParams::new(alpha, 1.0)?;
    let rate = op.a0() * op.a0() * PI * PI * horizon.powf(alpha);
    let weights = exec.try_map_range(1..n_modes + 1, |k| {
        let fk = data.sine_coefficient(k);
        if fk == 0.0 {
            return Ok(0.0);
        }
        let z = Complex64::new(-rate * (k * k) as f64, 0.0);
        Ok::<_, Error>(fk * mittag_leffler(ml, z, 1e-16)?.re)
    })?;

    let m = op.intervals();
    let interior = exec.map_range(1..m, |i| {
        let s = op.node(i);
        weights
            .iter()
            .enumerate()
            .filter(|(_, w)| **w != 0.0)
            .map(|(k, w)| w * (PI * (k + 1) as f64 * s).sin())
            .sum::<f64>()
    });

    let g = gamma(1.0 + alpha);
    let kf = n_modes as f64;
    let tail_bound = match data {
        // |f_k| <= 12/(k pi)^3 and sum_{k>K} k^-5 <= 1/(4 K^4)
        InitialData::Poly => 12.0 * g / (rate * PI.powi(3) * 4.0 * kf.powi(4)),
        InitialData::Sine => {
            if n_modes >= 2 {
                0.0
            } else {
                g / (4.0 * rate)
            }
        }
        // |f_k| <= 2 max|f| and sum_{k>K} k^-2 <= 1/K
        InitialData::Samples(f) => {
            let sup = f.values().iter().fold(0.0f64, |a, v| a.max(v.abs()));
            2.0 * sup * g / (rate * kf)
        }
    };
    Ok(SpectralSolution {
        field: SpatialField::from_interior(interior),
        tail_bound,
    })
}
