//! Time stepping for `d^alpha u = A u`, `u(0) = f`, with `A` a discretized
//! [`EllipticOperator1D`].
//!
//! Main scheme, with coefficients `a_jn`:
//!
//! ```text
//! (dt^alpha A - a_nn I) u_n = sum_{j<n} a_jn u_j
//! ```
//!
//! Comparison scheme, with Grunwald-Letnikov weights `w_j`:
//!
//! ```text
//! dt^-alpha sum_{j=0}^{n} w_j (u_{n-j} - f) = A u_n
//! ```
//!
//! solved as `(dt^alpha A - w_0 I) u_n = sum_{j=1}^{n} w_j (u_{n-j} - f) - w_0 f`.
//! Every step of the comparison scheme is re-checked against the unrearranged
//! equation.

use super::field::{FieldHistory, SchemeTag, SpatialField};
use super::operator::{assemble_operator, EllipticOperator1D, Tridiagonal};
use crate::coefficients::{CoefficientTable, SchemeCoefficients};
use crate::exec::Execution;
use crate::scalar::TimeGrid;
use crate::special::gl_weights;
use crate::{Error, Result};

/// Largest scaled step residual accepted by the comparison scheme.
pub const RESIDUAL_TOL: f64 = 1e-12;

fn check_initial(op: &EllipticOperator1D, f: &SpatialField) -> Result<()> {
    if f.intervals() != op.intervals() {
        return Err(Error::invalid(format!(
            "initial field has {} intervals, operator has {}",
            f.intervals(),
            op.intervals()
        )));
    }
    Ok(())
}

/// One step of the main scheme: `u_n` from `u_0..u_{n-1}` and row `n`.
pub fn step_scheme51(
    history: &[SpatialField],
    row: &CoefficientTable,
    matrix: &Tridiagonal,
    dt_alpha: f64,
    exec: Execution,
) -> Result<SpatialField> {
    let n = history.len();
    if n == 0 || row.n != n {
        return Err(Error::invalid(format!(
            "history of length {n} does not match coefficient row {}",
            row.n
        )));
    }
    let mut rhs = vec![0.0; matrix.dim()];
    let vectors: Vec<&[f64]> = history.iter().map(|u| u.interior()).collect();
    exec.weighted_sum(&mut rhs, &row.a[..n], &vectors);
    let u = matrix.solve_shifted(dt_alpha, row.a[n], &rhs)?;
    Ok(SpatialField::from_interior(u))
}

/// Full run of the main scheme.
pub fn run_scheme51(
    op: &EllipticOperator1D,
    f: &SpatialField,
    alpha: f64,
    grid: &TimeGrid,
    exec: Execution,
) -> Result<FieldHistory> {
    let coeffs = SchemeCoefficients::build(alpha, grid.steps(), exec)?;
    run_scheme51_with(op, f, &coeffs, grid, exec)
}

/// Main scheme with precomputed coefficient rows.
pub fn run_scheme51_with(
    op: &EllipticOperator1D,
    f: &SpatialField,
    coeffs: &SchemeCoefficients,
    grid: &TimeGrid,
    exec: Execution,
) -> Result<FieldHistory> {
    check_initial(op, f)?;
    if coeffs.n_max() < grid.steps() {
        return Err(Error::invalid(format!(
            "coefficient cache holds {} rows, {} needed",
            coeffs.n_max(),
            grid.steps()
        )));
    }
    let matrix = assemble_operator(op);
    let dt_alpha = grid.dt().powf(coeffs.alpha());
    let mut fields = Vec::with_capacity(grid.steps() + 1);
    fields.push(f.clone());
    let mut max_residual: f64 = 0.0;
    for n in 1..=grid.steps() {
        let row = coeffs.row(n);
        let u = step_scheme51(&fields, row, &matrix, dt_alpha, exec)?;
        fields.push(u);
        max_residual = max_residual.max(residual51(&fields, row, &matrix, dt_alpha));
    }
    Ok(FieldHistory {
        grid: *grid,
        fields,
        scheme: SchemeTag::Main,
        max_residual,
    })
}

/// Scaled residual of `sum_{j<=n} a_jn u_j - dt^alpha A u_n` for the last field:
/// `max_i |r_i| / max_i (sum of the absolute values of the terms in row i)`.
fn residual51(fields: &[SpatialField], row: &CoefficientTable, matrix: &Tridiagonal, dt_alpha: f64) -> f64 {
    let un = fields.last().unwrap().interior();
    let au = matrix.apply(un);
    let abs_au = matrix.apply_abs(un);
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..un.len() {
        let mut r = -dt_alpha * au[i];
        let mut s = dt_alpha * abs_au[i];
        for (u, a) in fields.iter().zip(&row.a) {
            let t = a * u.interior()[i];
            r += t;
            s += t.abs();
        }
        worst = worst.max(r.abs());
        scale = scale.max(s);
    }
    if scale == 0.0 {
        0.0
    } else {
        worst / scale
    }
}

/// Full run of the comparison scheme.
///
/// Fails with [`Error::NoConvergence`] if a step's scaled residual exceeds
/// [`RESIDUAL_TOL`].
pub fn run_scheme63(
    op: &EllipticOperator1D,
    f: &SpatialField,
    alpha: f64,
    grid: &TimeGrid,
    exec: Execution,
) -> Result<FieldHistory> {
    check_initial(op, f)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!("alpha = {alpha} not in (0, 1)")));
    }
    let matrix = assemble_operator(op);
    let dt_alpha = grid.dt().powf(alpha);
    let w = gl_weights(alpha, grid.steps());
    let f_int = f.interior();
    let m = f_int.len();

    let mut fields = Vec::with_capacity(grid.steps() + 1);
    // deviations d_j = u_j - f, kept alongside the fields
    let mut deviations: Vec<Vec<f64>> = vec![vec![0.0; m]];
    fields.push(f.clone());
    let mut max_residual: f64 = 0.0;
    for n in 1..=grid.steps() {
        // rhs = sum_{j=1}^{n} w_j d_{n-j} - w_0 f
        let vectors: Vec<&[f64]> = (1..=n).map(|j| deviations[n - j].as_slice()).collect();
        let mut rhs = vec![0.0; m];
        exec.weighted_sum(&mut rhs, &w[1..=n], &vectors);
        for (r, fi) in rhs.iter_mut().zip(f_int) {
            *r -= w[0] * fi;
        }
        let u = matrix.solve_shifted(dt_alpha, w[0], &rhs)?;
        deviations.push(u.iter().zip(f_int).map(|(a, b)| a - b).collect());
        let field = SpatialField::from_interior(u);

        let res = residual63(&deviations, &w, &matrix, field.interior(), dt_alpha);
        if !(res <= RESIDUAL_TOL) {
            return Err(Error::NoConvergence(format!(
                "comparison step {n}: scaled residual {res:e} exceeds {RESIDUAL_TOL:e}"
            )));
        }
        max_residual = max_residual.max(res);
        fields.push(field);
    }
    Ok(FieldHistory {
        grid: *grid,
        fields,
        scheme: SchemeTag::Comparison,
        max_residual,
    })
}

/// Scaled residual of `sum_{j=0}^{n} w_j (u_{n-j} - f) - dt^alpha A u_n`.
fn residual63(deviations: &[Vec<f64>], w: &[f64], matrix: &Tridiagonal, un: &[f64], dt_alpha: f64) -> f64 {
    let n = deviations.len() - 1;
    let au = matrix.apply(un);
    let abs_au = matrix.apply_abs(un);
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..un.len() {
        let mut r = -dt_alpha * au[i];
        let mut s = dt_alpha * abs_au[i];
        for j in 0..=n {
            let t = w[j] * deviations[n - j][i];
            r += t;
            s += t.abs();
        }
        worst = worst.max(r.abs());
        scale = scale.max(s);
    }
    if scale == 0.0 {
        0.0
    } else {
        worst / scale
    }
}
