//! Experiment runner for `quadsum-core`: test functions given by name or
//! expression, TOML configuration, the weak-type and convergence
//! experiments, and deterministic CSV reports.

pub mod config;
pub mod experiments;
pub mod expr;
pub mod family;
pub mod norms;
pub mod report;

pub use config::ExperimentConfig;
pub use experiments::{convergence_experiment, weak_type_experiment};
pub use expr::{parse_function, Expr};
pub use family::{default_family, TestFunction};
pub use norms::llogl_norm;
pub use report::{emit_report, Cell, ResultTable};
