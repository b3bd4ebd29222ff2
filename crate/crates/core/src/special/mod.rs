//! Special functions used by the schemes and the exact reference solutions.

pub mod gamma;
mod grunwald;
mod hypergeometric;
mod mittag_leffler;
pub mod quadrature;

use std::f64::consts::FRAC_PI_2;

pub use gamma::{gamma, ln_gamma, rgamma};
pub use grunwald::gl_weights;
pub use hypergeometric::{beta, gauss_2f1, incomplete_beta};
pub use mittag_leffler::{
    mittag_leffler, ml_derivative, MlParams, ASYMPTOTIC_TERMS, SECTOR_MARGIN, SWITCH_RADIUS,
};

use crate::{Error, Result};

/// Half-opening `phi0` of the sector `K(phi0) = {z : |arg z| <= phi0}` that
/// contains the spectrum of `-A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorConfig {
    phi0: f64,
}

impl SectorConfig {
    /// `phi0` must lie strictly between 0 and `pi/2`.
    pub fn new(phi0: f64) -> Result<Self> {
        if !(phi0 > 0.0 && phi0 < FRAC_PI_2) {
            return Err(Error::invalid(format!("phi0 = {phi0} not in (0, pi/2)")));
        }
        Ok(Self { phi0 })
    }

    pub fn phi0(&self) -> f64 {
        self.phi0
    }

    /// `true` if `lambda = 0` or `|arg(-lambda)| <= phi0`.
    pub fn admits(&self, lambda: crate::ComplexValue) -> bool {
        lambda.norm() == 0.0 || (-lambda).arg().abs() <= self.phi0
    }
}
