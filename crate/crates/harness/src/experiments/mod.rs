//! Weak-type and convergence experiments over a list of test functions.

mod convergence;
mod weak_type;

pub use convergence::{convergence_experiment, CONVERGENCE_COLUMNS, DEFAULT_BOUND_SLACK};
pub use weak_type::{bmo_field, overall_ratio, weak_type_experiment, WEAK_TYPE_COLUMNS};

use crate::config::ExperimentConfig;
use crate::report::ResultTable;

fn metadata(table: &mut ResultTable, experiment: &str, cfg: &ExperimentConfig) {
    table.push_meta("tool", concat!("quadsum ", env!("CARGO_PKG_VERSION")));
    table.push_meta("experiment", experiment);
    for (k, v) in cfg.echo() {
        table.push_meta(k, v);
    }
}

/// Median, averaging the middle pair for even lengths.
pub(crate) fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Nearest-rank percentile, `q ∈ (0, 1]`.
pub(crate) fn percentile(values: &mut [f64], q: f64) -> f64 {
    values.sort_by(f64::total_cmp);
    let rank = (q * values.len() as f64).ceil() as usize;
    values[rank.clamp(1, values.len()) - 1]
}
