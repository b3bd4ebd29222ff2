//! Operator scheme for a 1-D Dirichlet diffusion-drift-reaction operator, the
//! Grunwald-Letnikov comparison scheme, and a spectral reference solution.

mod field;
mod operator;
mod schemes;
mod spectral;

pub use field::{field_norm, FieldHistory, SchemeTag, SpatialField};
pub use operator::{
    assemble_operator, sectorial_angle, CoefficientFn, EllipticOperator1D, Tridiagonal,
    SECTOR_GRID_POINTS,
};
pub use schemes::{run_scheme51, run_scheme51_with, run_scheme63, step_scheme51, RESIDUAL_TOL};
pub use spectral::{spectral_reference, InitialData, SpectralSolution, DEFAULT_MODES};
