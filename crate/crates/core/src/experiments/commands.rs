//! Benchmark tables, scalar studies and coefficient sweeps as reports.

use std::f64::consts::FRAC_PI_4;
use std::path::Path;

use num_complex::Complex64;

use super::config::ExperimentConfig;
use super::fixtures::{table1_fixtures, table2_fixtures, TolerancePolicy};
use super::report::{Cell, Report};
use crate::coefficients::{
    coefficient_sweep, default_epsilon, inequality_sweep, FractionalOrder, SchemeCoefficients,
};
use crate::exec::Execution;
use crate::pde::{
    field_norm, run_scheme51_with, run_scheme63, sectorial_angle, spectral_reference,
    EllipticOperator1D, InitialData, SpatialField, DEFAULT_MODES,
};
use crate::scalar::{convergence_study_exec, decay_study, ScalarProblem, TimeGrid};
use crate::special::SectorConfig;
use crate::{Error, Result};

/// Spatial intervals used by the benchmark tables.
pub const DEFAULT_SPATIAL: usize = 2048;
/// Tolerances for the coefficient identities checked by `coeff-sweep`.
pub const A_SUM_TOL: f64 = 1e-12;
pub const B_SUM_TOL: f64 = 1e-10;
/// Accepted shortfall of a measured convergence order below `s(alpha)`.
pub const ORDER_SLACK: f64 = 0.1;
/// Upper limit on `N * M` for a single run (history memory is `8 N M` bytes).
pub const MAX_HISTORY_CELLS: usize = 50_000_000;

/// A report plus the verdict over all of its rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub all_pass: bool,
}

/// Subcommands of the experiment driver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Table1,
    Table2,
    ScalarConvergence,
    Decay,
    CoeffSweep,
    Lemma41Sweep,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Table1 => "table1",
            CommandKind::Table2 => "table2",
            CommandKind::ScalarConvergence => "scalar-convergence",
            CommandKind::Decay => "decay",
            CommandKind::CoeffSweep => "coeff-sweep",
            CommandKind::Lemma41Sweep => "lemma41-sweep",
        }
    }

    pub fn run(self, config: &ExperimentConfig, exec: Execution) -> Result<Outcome> {
        match self {
            CommandKind::Table1 => cmd_table1(config, exec),
            CommandKind::Table2 => cmd_table2(config, exec),
            CommandKind::ScalarConvergence => cmd_scalar_convergence(config, exec),
            CommandKind::Decay => cmd_decay(config, exec),
            CommandKind::CoeffSweep => cmd_coeff_sweep(config, exec),
            CommandKind::Lemma41Sweep => cmd_lemma41_sweep(config, exec),
        }
    }
}

fn finish(report: Report) -> Outcome {
    let col = report.column("pass").expect("report has a pass column");
    let all_pass = !report.rows.is_empty() && report.rows.iter().all(|r| r[col] == Cell::Bool(true));
    Outcome { report, all_pass }
}

fn policy(config: &ExperimentConfig) -> Result<TolerancePolicy> {
    config
        .tolerance_factor
        .map_or(Ok(TolerancePolicy::default()), TolerancePolicy::with_factor)
}

/// Read grid values (whitespace or comma separated, `#` comments) into a field.
pub fn load_samples(path: &Path) -> Result<SpatialField> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut values = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let v: f64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("{}: bad number {tok:?}", path.display())))?;
            values.push(v);
        }
    }
    SpatialField::new(values)
}

enum DataChoice {
    All,
    Named(&'static str),
    Samples(SpatialField),
}

fn data_choice(config: &ExperimentConfig) -> Result<DataChoice> {
    match config.initial_data.as_deref() {
        None => Ok(DataChoice::All),
        Some("poly") => Ok(DataChoice::Named("poly")),
        Some("sine") => Ok(DataChoice::Named("sine")),
        Some(path) => Ok(DataChoice::Samples(load_samples(Path::new(path))?)),
    }
}

fn named_data(label: &str) -> InitialData {
    if label == "poly" {
        InitialData::Poly
    } else {
        InitialData::Sine
    }
}

fn alpha_list(config: &ExperimentConfig, default: &[f64]) -> Result<Vec<f64>> {
    match config.alpha {
        Some(a) => {
            FractionalOrder::new(a)?;
            Ok(vec![a])
        }
        None => Ok(default.to_vec()),
    }
}

fn check_history_size(steps: usize, spatial: usize) -> Result<()> {
    if (steps + 1).saturating_mul(spatial + 1) > MAX_HISTORY_CELLS {
        return Err(Error::invalid(format!(
            "N = {steps}, M = {spatial} exceeds the history cap of {MAX_HISTORY_CELLS} grid values"
        )));
    }
    Ok(())
}

struct Table1Job {
    row: usize,
    label: String,
    data: InitialData,
    alpha: f64,
    steps: usize,
    published: Option<[f64; 5]>,
}

/// Pure-diffusion benchmark against the spectral solution.
pub fn cmd_table1(config: &ExperimentConfig, exec: Execution) -> Result<Outcome> {
    let policy = policy(config)?;
    let horizon = config.horizon.unwrap_or(1.0);
    let choice = data_choice(config)?;
    let spatial = match &choice {
        DataChoice::Samples(f) => {
            if config.spatial.is_some_and(|m| m != f.intervals()) {
                return Err(Error::invalid("--spatial disagrees with the sampled initial data"));
            }
            f.intervals()
        }
        _ => config.spatial.unwrap_or(DEFAULT_SPATIAL),
    };

    let jobs: Vec<Table1Job> = match choice {
        DataChoice::Samples(f) => {
            let mut jobs = Vec::new();
            for alpha in alpha_list(config, &[0.25, 0.75])? {
                for steps in config.steps.map_or(vec![5, 100], |n| vec![n]) {
                    jobs.push(Table1Job {
                        row: jobs.len() + 1,
                        label: "samples".into(),
                        data: InitialData::Samples(f.clone()),
                        alpha,
                        steps,
                        published: None,
                    });
                }
            }
            jobs
        }
        choice => {
            if horizon != 1.0 {
                return Err(Error::invalid("published rows are defined for horizon T = 1"));
            }
            table1_fixtures()
                .into_iter()
                .filter(|fx| config.alpha.is_none_or(|a| a == fx.alpha))
                .filter(|fx| config.steps.is_none_or(|n| n == fx.steps))
                .filter(|fx| match &choice {
                    DataChoice::Named(l) => *l == fx.f,
                    _ => true,
                })
                .map(|fx| Table1Job {
                    row: fx.row,
                    data: named_data(&fx.f),
                    label: fx.f,
                    alpha: fx.alpha,
                    steps: fx.steps,
                    published: Some([fx.err_main, fx.rel_main, fx.err_cmp, fx.rel_cmp, fx.dist_f]),
                })
                .collect()
        }
    };
    if jobs.is_empty() {
        return Err(Error::invalid("no table rows match the given filters"));
    }
    for j in &jobs {
        check_history_size(j.steps, spatial)?;
    }

    let op = EllipticOperator1D::laplacian(1.0, spatial)?;
    let rows = exec.try_map_slice(&jobs, |job| table1_row(job, &op, horizon, &policy, exec))?;

    let mut report = Report::new(&[
        "row", "f", "alpha", "N", "spatial", "err_main", "err_main_ref", "rel_main", "rel_main_ref",
        "err_cmp", "err_cmp_ref", "rel_cmp", "rel_cmp_ref", "dist_f", "dist_f_ref", "stability",
        "pass",
    ]);
    for r in rows {
        report.push(r);
    }
    Ok(finish(report))
}

fn table1_row(
    job: &Table1Job,
    op: &EllipticOperator1D,
    horizon: f64,
    policy: &TolerancePolicy,
    exec: Execution,
) -> Result<Vec<Cell>> {
    let spatial = op.intervals();
    let f = job.data.field(spatial)?;
    let grid = TimeGrid::new(horizon, job.steps)?;
    let exact = spectral_reference(op, &job.data, job.alpha, horizon, DEFAULT_MODES, exec)?.field;
    let coeffs = SchemeCoefficients::build(job.alpha, job.steps, exec)?;
    let main = run_scheme51_with(op, &f, &coeffs, &grid, exec)?;
    let cmp = run_scheme63(op, &f, job.alpha, &grid, exec)?;

    let exact_norm = field_norm(&exact);
    let err_main = field_norm(&main.last().sub(&exact)?);
    let err_cmp = field_norm(&cmp.last().sub(&exact)?);
    let dist = field_norm(&exact.sub(&f)?);
    let f_norm = field_norm(&f);
    let stability = main.max_norm().max(cmp.max_norm()) / f_norm;
    let computed = [
        err_main,
        err_main / exact_norm,
        err_cmp,
        err_cmp / exact_norm,
        dist,
    ];

    let mut pass = policy.stable(main.max_norm().max(cmp.max_norm()), f_norm);
    if let Some(p) = job.published {
        pass &= (0..4).all(|k| policy.within_factor(computed[k], p[k]));
        pass &= policy.distance_ok(dist, p[4]);
    }
    let reference = |k: usize| Cell::opt_float(job.published.map(|p| p[k]));
    Ok(vec![
        Cell::int(job.row),
        Cell::text(job.label.clone()),
        Cell::float(job.alpha),
        Cell::int(job.steps),
        Cell::int(spatial),
        Cell::float(computed[0]),
        reference(0),
        Cell::float(computed[1]),
        reference(1),
        Cell::float(computed[2]),
        reference(2),
        Cell::float(computed[3]),
        reference(3),
        Cell::float(computed[4]),
        reference(4),
        Cell::float(stability),
        Cell::Bool(pass),
    ])
}

struct Table2Job {
    row: usize,
    label: String,
    data: InitialData,
    alpha: f64,
    steps: usize,
    comparison_steps: usize,
    published: Option<f64>,
}

struct Table2Result {
    diff: f64,
    stability: f64,
    stable: bool,
}

/// Drift-reaction benchmark: main scheme against the comparison scheme.
pub fn cmd_table2(config: &ExperimentConfig, exec: Execution) -> Result<Outcome> {
    let policy = policy(config)?;
    let horizon = config.horizon.unwrap_or(1.0);
    let choice = data_choice(config)?;
    let spatial = match &choice {
        DataChoice::Samples(f) => f.intervals(),
        _ => config.spatial.unwrap_or(DEFAULT_SPATIAL),
    };
    let op = EllipticOperator1D::drift_reaction(spatial)?;
    let phi0_star = sectorial_angle(&op)?;

    let jobs: Vec<Table2Job> = match choice {
        DataChoice::Samples(f) => {
            let mut jobs = Vec::new();
            for alpha in alpha_list(config, &[0.25, 0.75])? {
                for (n, m) in [(5, 5), (5, 100), (100, 100)] {
                    let (n, m) = (config.steps.unwrap_or(n), config.comparison_steps.unwrap_or(m));
                    jobs.push(Table2Job {
                        row: jobs.len() + 1,
                        label: "samples".into(),
                        data: InitialData::Samples(f.clone()),
                        alpha,
                        steps: n,
                        comparison_steps: m,
                        published: None,
                    });
                }
            }
            jobs
        }
        choice => {
            if horizon != 1.0 {
                return Err(Error::invalid("published rows are defined for horizon T = 1"));
            }
            table2_fixtures()
                .into_iter()
                .filter(|fx| config.alpha.is_none_or(|a| a == fx.alpha))
                .filter(|fx| config.steps.is_none_or(|n| n == fx.steps))
                .filter(|fx| config.comparison_steps.is_none_or(|m| m == fx.comparison_steps))
                .filter(|fx| match &choice {
                    DataChoice::Named(l) => *l == fx.f,
                    _ => true,
                })
                .map(|fx| Table2Job {
                    row: fx.row,
                    data: named_data(&fx.f),
                    label: fx.f,
                    alpha: fx.alpha,
                    steps: fx.steps,
                    comparison_steps: fx.comparison_steps,
                    published: Some(fx.diff),
                })
                .collect()
        }
    };
    if jobs.is_empty() {
        return Err(Error::invalid("no table rows match the given filters"));
    }
    for j in &jobs {
        check_history_size(j.steps.max(j.comparison_steps), spatial)?;
    }

    let results = exec.try_map_slice(&jobs, |job| {
        let f = job.data.field(spatial)?;
        let f_norm = field_norm(&f);
        let coeffs = SchemeCoefficients::build(job.alpha, job.steps, exec)?;
        let main = run_scheme51_with(&op, &f, &coeffs, &TimeGrid::new(horizon, job.steps)?, exec)?;
        let cmp = run_scheme63(&op, &f, job.alpha, &TimeGrid::new(horizon, job.comparison_steps)?, exec)?;
        let max_norm = main.max_norm().max(cmp.max_norm());
        Ok::<_, Error>(Table2Result {
            diff: field_norm(&main.last().sub(cmp.last())?),
            stability: max_norm / f_norm,
            stable: policy.stable(max_norm, f_norm),
        })
    })?;

    // Along N = M the distance must shrink as the step counts grow.
    let monotone: Vec<Option<bool>> = jobs
        .iter()
        .map(|job| {
            if job.steps != job.comparison_steps {
                return None;
            }
            let mut diag: Vec<(usize, f64)> = jobs
                .iter()
                .zip(&results)
                .filter(|(o, _)| {
                    o.label == job.label && o.alpha == job.alpha && o.steps == o.comparison_steps
                })
                .map(|(o, r)| (o.steps, r.diff))
                .collect();
            if diag.len() < 2 {
                return None;
            }
            diag.sort_by_key(|d| d.0);
            Some(diag.windows(2).all(|w| w[1].1 < w[0].1))
        })
        .collect();

    let mut report = Report::new(&[
        "row", "f", "alpha", "N", "M", "spatial", "diff", "diff_ref", "stability", "monotone",
        "phi0_star", "pass",
    ]);
    for ((job, res), mono) in jobs.iter().zip(&results).zip(&monotone) {
        let mut pass = res.stable && mono.unwrap_or(true);
        if let Some(p) = job.published {
            pass &= policy.within_factor(res.diff, p);
        }
        report.push(vec![
            Cell::int(job.row),
            Cell::text(job.label.clone()),
            Cell::float(job.alpha),
            Cell::int(job.steps),
            Cell::int(job.comparison_steps),
            Cell::int(spatial),
            Cell::float(res.diff),
            Cell::opt_float(job.published),
            Cell::float(res.stability),
            mono.map_or(Cell::Empty, Cell::Bool),
            Cell::float(phi0_star),
            Cell::Bool(pass),
        ]);
    }
    Ok(finish(report))
}

fn scalar_problem(alpha: f64, epsilon: Option<f64>, lambda: f64) -> Result<ScalarProblem> {
    let order = match epsilon {
        Some(e) => FractionalOrder::with_epsilon(alpha, e)?,
        None => FractionalOrder::new(alpha)?,
    };
    ScalarProblem::new(order, Complex64::new(lambda, 0.0), SectorConfig::new(FRAC_PI_4)?)
}

/// Error of the scalar scheme against `E_alpha(lambda T^alpha)` for doubling `N`.
pub fn cmd_scalar_convergence(config: &ExperimentConfig, exec: Execution) -> Result<Outcome> {
    let lambda = config.lambda.unwrap_or(-1.0);
    let horizon = config.horizon.unwrap_or(1.0);
    let n_max = config.steps.unwrap_or(256);
    let steps: Vec<usize> = std::iter::successors(Some(16usize), |n| n.checked_mul(2))
        .take_while(|&n| n <= n_max)
        .collect();
    if steps.len() < 2 {
        return Err(Error::invalid(format!(
            "--steps = {n_max} leaves fewer than two step counts (16, 32, ...)"
        )));
    }
    let mut report = Report::new(&[
        "alpha", "epsilon", "s_alpha", "lambda", "N", "error", "order", "threshold", "pass",
    ]);
    for alpha in alpha_list(config, &[0.25, 0.5, 0.75])? {
        let p = scalar_problem(alpha, config.epsilon, lambda)?;
        let study = convergence_study_exec(&p, horizon, &steps, exec)?;
        let threshold = study.s_alpha - ORDER_SLACK;
        for row in &study.rows {
            report.push(vec![
                Cell::float(alpha),
                Cell::float(p.order().epsilon()),
                Cell::float(study.s_alpha),
                Cell::float(lambda),
                Cell::int(row.steps),
                Cell::float(row.error),
                Cell::opt_float(row.order),
                Cell::float(threshold),
                Cell::Bool(row.order.is_none_or(|o| o >= threshold)),
            ]);
        }
    }
    Ok(finish(report))
}

/// Normalized decay `|v_n| |lambda| dt^alpha n^s(alpha)` of the scalar scheme.
pub fn cmd_decay(config: &ExperimentConfig, exec: Execution) -> Result<Outcome> {
    let horizon = config.horizon.unwrap_or(1.0);
    let steps = config.steps.unwrap_or(1000);
    let lambdas = config.lambda.map_or(vec![-1.0, -10.0, -100.0], |l| vec![l]);
    let alphas = alpha_list(config, &[0.25, 0.5, 0.75])?;
    let cases: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| lambdas.iter().map(move |&l| (a, l)))
        .collect();
    let grid = TimeGrid::new(horizon, steps)?;
    let studies = exec.try_map_slice(&cases, |&(alpha, lambda)| {
        let p = scalar_problem(alpha, config.epsilon, lambda)?;
        Ok::<_, Error>((p, decay_study(&p, &grid)?))
    })?;
    let mut report = Report::new(&[
        "alpha", "epsilon", "s_alpha", "lambda", "N", "sup_ratio", "final_decade_growth",
        "envelope", "pass",
    ]);
    for (p, d) in studies {
        report.push(vec![
            Cell::float(p.alpha()),
            Cell::float(p.order().epsilon()),
            Cell::float(d.s_alpha),
            Cell::float(p.lambda().re),
            Cell::int(steps),
            Cell::float(d.sup_ratio),
            Cell::float(d.final_decade_growth),
            Cell::float(d.envelope),
            Cell::Bool(d.bounded),
        ]);
    }
    Ok(finish(report))
}

fn sweep_alphas(config: &ExperimentConfig) -> Result<Vec<f64>> {
    let default: Vec<f64> = (1..10).map(|k| k as f64 / 10.0).collect();
    alpha_list(config, &default)
}

/// Sum, sign, bound and bracketing checks of the coefficient rows.
pub fn cmd_coeff_sweep(config: &ExperimentConfig, exec: Execution) -> Result<Outcome> {
    let n_max = config.steps.unwrap_or(1000);
    if n_max < 1 {
        return Err(Error::invalid("--steps must be at least 1"));
    }
    let mut report = Report::new(&[
        "alpha", "n_max", "max_a_sum_error", "max_b_sum_error", "signs_ok", "bounds_ok",
        "bracket_ok", "pass",
    ]);
    for alpha in sweep_alphas(config)? {
        let s = coefficient_sweep(alpha, n_max, exec)?;
        let pass = s.max_a_sum_error <= A_SUM_TOL
            && s.max_b_sum_error <= B_SUM_TOL
            && s.signs_ok
            && s.bounds_ok
            && s.bracket_ok;
        report.push(vec![
            Cell::float(alpha),
            Cell::int(n_max),
            Cell::float(s.max_a_sum_error),
            Cell::float(s.max_b_sum_error),
            Cell::Bool(s.signs_ok),
            Cell::Bool(s.bounds_ok),
            Cell::Bool(s.bracket_ok),
            Cell::Bool(pass),
        ]);
    }
    Ok(finish(report))
}

/// Smallest `n0` from which the weighted inequalities hold up to `n_max`.
pub fn cmd_lemma41_sweep(config: &ExperimentConfig, exec: Execution) -> Result<Outcome> {
    let n_max = config.steps.unwrap_or(1000);
    let mut report = Report::new(&[
        "alpha", "epsilon", "n_max", "lemma_min_n", "lemma_min_margin", "corollary_min_n",
        "corollary_min_margin", "pass",
    ]);
    for alpha in sweep_alphas(config)? {
        let eps = config.epsilon.unwrap_or_else(|| default_epsilon(alpha));
        let order = FractionalOrder::with_epsilon(alpha, eps)?;
        let s = inequality_sweep(order, n_max, exec)?;
        let cor_n = s.corollary_min_n.map(|c| c.map_or(Cell::Empty, Cell::int));
        let pass = s.lemma_min_n == Some(2) && s.corollary_min_n.is_none_or(|c| c == Some(2));
        report.push(vec![
            Cell::float(alpha),
            Cell::float(eps),
            Cell::int(n_max),
            s.lemma_min_n.map_or(Cell::Empty, Cell::int),
            Cell::float(s.lemma_min_margin),
            cor_n.unwrap_or(Cell::Empty),
            Cell::opt_float(s.corollary_min_margin),
            Cell::Bool(pass),
        ]);
    }
    Ok(finish(report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filters_without_match_are_rejected() {
        let cfg = ExperimentConfig {
            alpha: Some(0.5),
            ..Default::default()
        };
        assert!(matches!(cmd_table1(&cfg, Execution::Sequential), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn epsilon_too_large_rejected() {
        let cfg = ExperimentConfig {
            alpha: Some(0.75),
            epsilon: Some(0.3),
            steps: Some(10),
            ..Default::default()
        };
        assert!(matches!(cmd_lemma41_sweep(&cfg, Execution::Sequential), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn zero_lambda_convergence_rows() {
        let cfg = ExperimentConfig {
            alpha: Some(0.5),
            lambda: Some(0.0),
            steps: Some(64),
            ..Default::default()
        };
        let out = cmd_scalar_convergence(&cfg, Execution::Sequential).unwrap();
        assert!(out.all_pass);
        assert_eq!(out.report.rows.len(), 3);
        for i in 0..3 {
            assert_eq!(out.report.get(i, "error"), Some(&Cell::Float(0.0)));
        }
    }

    #[test]
    fn theory_rates_reported() {
        let cfg = ExperimentConfig {
            steps: Some(32),
            ..Default::default()
        };
        let out = cmd_scalar_convergence(&cfg, Execution::Sequential).unwrap();
        assert_eq!(out.report.get(0, "s_alpha"), Some(&Cell::Float(0.25)));
        assert_eq!(out.report.get(4, "s_alpha"), Some(&Cell::Float(0.2)));
    }

    #[test]
    fn small_sweeps_pass() {
        let cfg = ExperimentConfig {
            steps: Some(40),
            ..Default::default()
        };
        assert!(cmd_coeff_sweep(&cfg, Execution::Parallel).unwrap().all_pass);
        let out = cmd_lemma41_sweep(&cfg, Execution::Parallel).unwrap();
        assert!(out.all_pass);
        assert_eq!(out.report.get(0, "lemma_min_n"), Some(&Cell::Int(2)));
    }

    #[test]
    fn samples_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.txt");
        std::fs::write(&path, "# five values\n0, 0.5\n1.0 0.5\n0\n").unwrap();
        let f = load_samples(&path).unwrap();
        assert_eq!(f.values(), &[0.0, 0.5, 1.0, 0.5, 0.0]);
        std::fs::write(&path, "0 1 x 0").unwrap();
        assert!(matches!(load_samples(&path), Err(Error::Parse(_))));
        assert!(matches!(load_samples(&dir.path().join("missing")), Err(Error::Io { .. })));
    }
}
