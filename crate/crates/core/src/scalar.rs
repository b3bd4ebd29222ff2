//! The scheme for the scalar problem `d^alpha v = lambda v`, `v(0) = 1`:
//!
//! ```text
//! v_n = -(sum_{j<n} a_jn v_j) / (a_nn - lambda dt^alpha)
//! ```
//!
//! and its exact solution `E_alpha(lambda t^alpha)`.

use num_complex::Complex64;

use crate::coefficients::{FractionalOrder, SchemeCoefficients};
use crate::exec::Execution;
use crate::special::{mittag_leffler, MlParams, SectorConfig};
use crate::{ComplexValue, Error, Result};

/// Tolerance used for exact reference values.
pub const REFERENCE_TOL: f64 = 1e-14;

/// Uniform grid `t_n = n T / N` on `[0, T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    horizon: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(horizon: f64, steps: usize) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::invalid(format!("horizon T = {horizon} must be positive")));
        }
        if steps < 1 {
            return Err(Error::invalid("step count N must be at least 1"));
        }
        Ok(Self { horizon, steps })
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn dt(&self) -> f64 {
        self.horizon / self.steps as f64
    }

    /// `t_n`; `node(N) == T` exactly.
    pub fn node(&self, n: usize) -> f64 {
        self.horizon * n as f64 / self.steps as f64
    }
}

/// `d^alpha v = lambda v` with `lambda` admitted by the sector condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarProblem {
    order: FractionalOrder,
    lambda: ComplexValue,
    sector: SectorConfig,
}

impl ScalarProblem {
    pub fn new(order: FractionalOrder, lambda: ComplexValue, sector: SectorConfig) -> Result<Self> {
        if !(lambda.re.is_finite() && lambda.im.is_finite()) {
            return Err(Error::invalid(format!("lambda = {lambda} is not finite")));
        }
        if !sector.admits(lambda) {
            return Err(Error::SectorViolation {
                lambda: lambda.to_string(),
                phi0: sector.phi0(),
            });
        }
        Ok(Self {
            order,
            lambda,
            sector,
        })
    }

    pub fn order(&self) -> FractionalOrder {
        self.order
    }

    pub fn alpha(&self) -> f64 {
        self.order.alpha()
    }

    pub fn lambda(&self) -> ComplexValue {
        self.lambda
    }

    pub fn sector(&self) -> SectorConfig {
        self.sector
    }

    /// `L = |lambda| dt^alpha`.
    pub fn l_value(&self, dt: f64) -> f64 {
        self.lambda.norm() * dt.powf(self.alpha())
    }
}

/// Approximations `v_0..v_N` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarTrajectory {
    pub grid: TimeGrid,
    pub values: Vec<ComplexValue>,
}

impl ScalarTrajectory {
    pub fn last(&self) -> ComplexValue {
        *self.values.last().expect("trajectory holds v_0")
    }
}

/// Run the scheme, building the coefficient rows it needs.
pub fn solve_scalar(p: &ScalarProblem, grid: &TimeGrid) -> Result<ScalarTrajectory> {
    let coeffs = SchemeCoefficients::build(p.alpha(), grid.steps(), Execution::default())?;
    solve_scalar_with(p, grid, &coeffs)
}

/// Run the scheme with precomputed rows (`coeffs.n_max() >= N`, same `alpha`).
pub fn solve_scalar_with(
    p: &ScalarProblem,
    grid: &TimeGrid,
    coeffs: &SchemeCoefficients,
) -> Result<ScalarTrajectory> {
    let n_steps = grid.steps();
    if coeffs.alpha() != p.alpha() || coeffs.n_max() < n_steps {
        return Err(Error::invalid(format!(
            "coefficient cache (alpha = {}, rows = {}) does not cover alpha = {}, N = {n_steps}",
            coeffs.alpha(),
            coeffs.n_max(),
            p.alpha()
        )));
    }
    let shift = p.lambda() * grid.dt().powf(p.alpha());
    let mut values = Vec::with_capacity(n_steps + 1);
    values.push(Complex64::new(1.0, 0.0));
    for n in 1..=n_steps {
        let a = &coeffs.row(n).a;
        let history: Complex64 = values.iter().zip(a).map(|(v, aj)| v * aj).sum();
        values.push(-history / (a[n] - shift));
    }
    Ok(ScalarTrajectory {
        grid: *grid,
        values,
    })
}

/// `E_alpha(lambda t^alpha)`.
pub fn exact_scalar(p: &ScalarProblem, t: f64) -> Result<ComplexValue> {
    if !(t >= 0.0) {
        return Err(Error::invalid(format!("t = {t} must be nonnegative")));
    }
    let ml = MlParams::new(p.alpha(), 1.0)?;
    mittag_leffler(ml, p.lambda() * t.powf(p.alpha()), REFERENCE_TOL)
}

/// Row of a decay study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRow {
    pub n: usize,
    pub modulus: f64,
    /// `|v_n| |lambda| dt^alpha n^s(alpha)`
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayReport {
    pub s_alpha: f64,
    pub rows: Vec<DecayRow>,
    pub sup_ratio: f64,
    /// `ratio_N / ratio_{ceil(N/10)}`; informational.
    pub final_decade_growth: f64,
    /// All ratios finite and `sup_ratio <= envelope`.
    pub bounded: bool,
    pub envelope: f64,
}

/// Default envelope for the normalized decay sequence. For the exact solution
/// `x E_alpha(-x) <= Gamma(1 + alpha) < 1`, which bounds the continuous analog
/// of the ratio for real negative `lambda`.
pub const DECAY_ENVELOPE: f64 = 1.0;

/// Normalized decay of the scheme solution.
pub fn decay_study(p: &ScalarProblem, grid: &TimeGrid) -> Result<DecayReport> {
    decay_study_with_envelope(p, grid, DECAY_ENVELOPE)
}

pub fn decay_study_with_envelope(p: &ScalarProblem, grid: &TimeGrid, envelope: f64) -> Result<DecayReport> {
    if p.lambda().norm() == 0.0 {
        return Err(Error::invalid("decay study needs lambda != 0"));
    }
    let traj = solve_scalar(p, grid)?;
    let s = p.order().s_alpha();
    let l = p.l_value(grid.dt());
    let rows: Vec<DecayRow> = (1..=grid.steps())
        .map(|n| {
            let modulus = traj.values[n].norm();
            DecayRow {
                n,
                modulus,
                ratio: modulus * l * (n as f64).powf(s),
            }
        })
        .collect();
    let sup_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let n_steps = grid.steps();
    let start = n_steps.div_ceil(10);
    let final_decade_growth = rows[n_steps - 1].ratio / rows[start - 1].ratio;
    let finite = rows.iter().all(|r| r.ratio.is_finite());
    Ok(DecayReport {
        s_alpha: s,
        bounded: finite && sup_ratio <= envelope,
        rows,
        sup_ratio,
        final_decade_growth,
        envelope,
    })
}

/// Row of a convergence study; `order` is the slope against the previous row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub steps: usize,
    pub error: f64,
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub s_alpha: f64,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    /// Smallest measured slope, `None` if fewer than two rows or any error is 0.
    pub fn min_order(&self) -> Option<f64> {
        let orders: Vec<f64> = self.rows.iter().filter_map(|r| r.order).collect();
        if orders.is_empty() {
            return None;
        }
        Some(orders.into_iter().fold(f64::INFINITY, f64::min))
    }
}

/// `|v_N - E_alpha(lambda T^alpha)|` for each `N` and slopes of `log err` vs `log N`.
pub fn convergence_study(p: &ScalarProblem, horizon: f64, steps: &[usize]) -> Result<ConvergenceReport> {
    convergence_study_exec(p, horizon, steps, Execution::default())
}

pub fn convergence_study_exec(
    p: &ScalarProblem,
    horizon: f64,
    steps: &[usize],
    exec: Execution,
) -> Result<ConvergenceReport> {
    if steps.is_empty() || steps.windows(2).any(|w| w[1] <= w[0]) || steps[0] < 2 {
        return Err(Error::invalid(
            "step list must be strictly increasing with entries >= 2",
        ));
    }
    let n_max = *steps.last().unwrap();
    let coeffs = SchemeCoefficients::build(p.alpha(), n_max, exec)?;
    let exact = exact_scalar(p, horizon)?;
    let errors = exec.try_map_slice(steps, |&n| {
        let grid = TimeGrid::new(horizon, n)?;
        Ok::<_, Error>((solve_scalar_with(p, &grid, &coeffs)?.last() - exact).norm())
    })?;
    let rows = steps
        .iter()
        .zip(&errors)
        .enumerate()
        .map(|(i, (&n, &err))| {
            let order = (i > 0 && err > 0.0 && errors[i - 1] > 0.0).then(|| {
                (errors[i - 1] / err).ln() / (n as f64 / steps[i - 1] as f64).ln()
            });
            ConvergenceRow {
                steps: n,
                error: err,
                order,
            }
        })
        .collect();
    Ok(ConvergenceReport {
        s_alpha: p.order().s_alpha(),
        rows,
    })
}
