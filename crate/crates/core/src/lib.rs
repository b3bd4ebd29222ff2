//! # fracstep
//!
//! Time stepping for linear Cauchy problems with a Caputo time derivative of
//! order `alpha` in (0, 1):
//!
//! ```text
//! d^alpha u / dt^alpha = A u,   u(0) = f,
//! ```
//!
//! where `-A` is sectorial. The crate contains
//!
//! - [`special`]: Mittag-Leffler, Gauss hypergeometric and incomplete beta
//!   functions, Gamma, and Grunwald-Letnikov weights;
//! - [`coefficients`]: the quadrature weights `b_jn`, scheme coefficients `a_jn`
//!   and checkers for the inequalities the convergence proof relies on;
//! - [`scalar`]: the scheme for `d^alpha v = lambda v`, its exact solution
//!   `E_alpha(lambda t^alpha)` and decay / convergence studies;
//! - [`pde`]: the same scheme applied to a 1-D Dirichlet elliptic operator,
//!   a Grunwald-Letnikov comparison scheme and a spectral reference solution;
//! - [`experiments`]: benchmark tables, sweeps and CSV/JSON reports used by the
//!   `fracstep` command-line tool.
//!
//! ## Feature flags
//!
//! - `parallel` (default): data-parallel loops run on rayon. Without it every
//!   [`Execution`] request runs sequentially.
//!
//! ## Example
//!
//! ```
//! use fracstep::coefficients::FractionalOrder;
//! use fracstep::scalar::{exact_scalar, solve_scalar, ScalarProblem, TimeGrid};
//! use fracstep::special::SectorConfig;
//! use num_complex::Complex64;
//!
//! let order = FractionalOrder::new(0.5).unwrap();
//! let sector = SectorConfig::new(std::f64::consts::FRAC_PI_4).unwrap();
//! let problem = ScalarProblem::new(order, Complex64::new(-1.0, 0.0), sector).unwrap();
//! let grid = TimeGrid::new(1.0, 100).unwrap();
//!
//! let trajectory = solve_scalar(&problem, &grid).unwrap();
//! let exact = exact_scalar(&problem, 1.0).unwrap();
//! assert!((trajectory.last() - exact).norm() < 1e-2);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coefficients;
mod error;
pub mod exec;
pub mod experiments;
pub mod pde;
pub mod scalar;
pub mod special;

pub use error::{Error, Result};
pub use exec::Execution;
pub use num_complex::Complex64;

/// Complex scalar used for Mittag-Leffler arguments and scalar trajectories.
pub type ComplexValue = Complex64;
