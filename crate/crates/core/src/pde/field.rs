use crate::scalar::TimeGrid;
use crate::{Error, Result};

/// Grid function on `s_i = i/M`, `i = 0..=M`, vanishing at both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialField {
    values: Vec<f64>,
}

impl SpatialField {
    /// Wrap grid values; the first and last entries must be exactly zero.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::invalid(format!(
                "field needs at least 3 grid values, got {}",
                values.len()
            )));
        }
        if values[0] != 0.0 || values[values.len() - 1] != 0.0 {
            return Err(Error::invalid("field violates the Dirichlet condition"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("field has non-finite values"));
        }
        Ok(Self { values })
    }

    /// Sample `f` on the interior nodes of an `M`-interval grid; ends are set to 0.
    pub fn from_fn(intervals: usize, f: impl Fn(f64) -> f64) -> Self {
        let mut values = vec![0.0; intervals + 1];
        for (i, v) in values.iter_mut().enumerate().take(intervals).skip(1) {
            *v = f(i as f64 / intervals as f64);
        }
        Self { values }
    }

    pub fn zeros(intervals: usize) -> Self {
        Self {
            values: vec![0.0; intervals + 1],
        }
    }

    pub(crate) fn from_interior(interior: Vec<f64>) -> Self {
        let mut values = Vec::with_capacity(interior.len() + 2);
        values.push(0.0);
        values.extend(interior);
        values.push(0.0);
        Self { values }
    }

    pub fn intervals(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn interior(&self) -> &[f64] {
        &self.values[1..self.values.len() - 1]
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| k * v).collect(),
        }
    }

    /// `self - other`; both fields must share the grid.
    pub fn sub(&self, other: &SpatialField) -> Result<Self> {
        if self.values.len() != other.values.len() {
            return Err(Error::invalid(format!(
                "grid mismatch: {} vs {} intervals",
                self.intervals(),
                other.intervals()
            )));
        }
        Ok(Self {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }
}

/// Discrete `L2(0, 1)` norm by the composite trapezoidal rule.
pub fn field_norm(u: &SpatialField) -> f64 {
    let v = u.values();
    let h = 1.0 / u.intervals() as f64;
    let last = v.len() - 1;
    let sum: f64 = v.iter().map(|x| x * x).sum::<f64>() - 0.5 * (v[0] * v[0] + v[last] * v[last]);
    (h * sum).sqrt()
}

/// Which time-stepping scheme produced a history.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeTag {
    /// Scheme built on the coefficients `a_jn`.
    Main,
    /// Grunwald-Letnikov comparison scheme.
    Comparison,
}

/// Fields `u_0..u_N` of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldHistory {
    pub grid: TimeGrid,
    pub fields: Vec<SpatialField>,
    pub scheme: SchemeTag,
    /// Largest scaled residual of the step equations over the run.
    pub max_residual: f64,
}

impl FieldHistory {
    pub fn last(&self) -> &SpatialField {
        self.fields.last().expect("history holds u_0")
    }

    /// `max_n ||u_n||`.
    pub fn max_norm(&self) -> f64 {
        self.fields.iter().map(field_norm).fold(0.0, f64::max)
    }
}
