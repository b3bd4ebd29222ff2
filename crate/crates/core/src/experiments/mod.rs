//! Benchmark tables, studies and sweeps behind the `fracstep` command-line tool.

mod commands;
mod config;
mod fixtures;
mod report;

pub use commands::{
    cmd_coeff_sweep, cmd_decay, cmd_lemma41_sweep, cmd_scalar_convergence, cmd_table1,
    cmd_table2, load_samples, CommandKind, Outcome, A_SUM_TOL, B_SUM_TOL, DEFAULT_SPATIAL,
    MAX_HISTORY_CELLS, ORDER_SLACK,
};
pub use config::ExperimentConfig;
pub use fixtures::{table1_fixtures, table2_fixtures, Table1Fixture, Table2Fixture, TolerancePolicy};
pub use report::{round_sig6, Cell, Format, Report};
