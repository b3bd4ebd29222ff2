//! Published benchmark values, shipped as CSV files under `fixtures/`.

use serde::Deserialize;

use crate::{Error, Result};

const TABLE1: &str = include_str!("../../fixtures/table1.csv");
const TABLE2: &str = include_str!("../../fixtures/table2.csv");

/// Published row of the pure-diffusion benchmark.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Table1Fixture {
    pub row: usize,
    pub f: String,
    pub alpha: f64,
    #[serde(rename = "N")]
    pub steps: usize,
    pub err_main: f64,
    pub rel_main: f64,
    pub err_cmp: f64,
    pub rel_cmp: f64,
    pub dist_f: f64,
}

/// Published row of the drift-reaction benchmark.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Table2Fixture {
    pub row: usize,
    pub f: String,
    pub alpha: f64,
    #[serde(rename = "N")]
    pub steps: usize,
    #[serde(rename = "M")]
    pub comparison_steps: usize,
    pub diff: f64,
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

pub fn table1_fixtures() -> Vec<Table1Fixture> {
    parse(TABLE1).expect("bundled table1 fixture parses")
}

pub fn table2_fixtures() -> Vec<Table2Fixture> {
    parse(TABLE2).expect("bundled table2 fixture parses")
}

/// Acceptance tolerances, defined once for every comparison with fixtures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TolerancePolicy {
    /// Computed errors must lie within `[v/factor, v*factor]` of the published `v`.
    pub factor: f64,
    /// Relative tolerance for `||u(T) - f||`.
    pub distance_rel: f64,
    /// Envelope for `max_n ||u_n|| / ||f||`.
    pub stability_bound: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            factor: 2.0,
            distance_rel: 0.05,
            stability_bound: 2.0,
        }
    }
}

impl TolerancePolicy {
    pub fn with_factor(factor: f64) -> Result<Self> {
        if !(factor >= 1.0 && factor.is_finite()) {
            return Err(Error::invalid(format!("tolerance factor {factor} must be >= 1")));
        }
        Ok(Self {
            factor,
            ..Self::default()
        })
    }

    pub fn within_factor(&self, computed: f64, published: f64) -> bool {
        computed >= published / self.factor && computed <= published * self.factor
    }

    pub fn distance_ok(&self, computed: f64, published: f64) -> bool {
        (computed - published).abs() <= self.distance_rel * published
    }

    pub fn stable(&self, max_norm: f64, initial_norm: f64) -> bool {
        max_norm <= self.stability_bound * initial_norm
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        let t1 = table1_fixtures();
        assert_eq!(t1.len(), 8);
        assert_eq!(t1[0].err_main, 6.46e-5);
        assert_eq!(t1[6].err_cmp, 8.37e-4);
        let t2 = table2_fixtures();
        assert_eq!(t2.len(), 12);
        assert_eq!(t2[11].diff, 4.46e-4);
        assert_eq!((t2[1].steps, t2[1].comparison_steps), (5, 100));
    }

    #[test]
    fn factor_window() {
        let p = TolerancePolicy::default();
        assert!(p.within_factor(2.0, 1.0));
        assert!(p.within_factor(0.5, 1.0));
        assert!(!p.within_factor(2.01, 1.0));
        assert!(p.distance_ok(1.04, 1.0));
        assert!(!p.distance_ok(0.94, 1.0));
        assert!(TolerancePolicy::with_factor(0.5).is_err());
    }
}
