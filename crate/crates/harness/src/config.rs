//! Experiment configuration, read from TOML.
//!
//! ```toml
//! grid = 128
//! order = 32
//! lambda_count = 32
//! lambda_min = 1e-2      # multiples of 1 + ∬|f| log⁺|f|
//! lambda_max = 1e2
//! functions = ["cos_cos", "smooth", "sin(x)*cos(2*y)"]
//! a = 1.0
//! psi = "log(1 + x)"     # optional, expression in x
//! refinement = 4
//! out = "weak.csv"       # optional
//! seed = 0
//! ```

use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use quadsum_core::functionals::{BmoOptions, Psi};
use serde::{Deserialize, Serialize};

use crate::expr::parse_function;
use crate::family::{TestFunction, BUILTIN_NAMES};

pub const MAX_GRID: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Grid size `G`.
    pub grid: usize,
    /// Truncation: `N` partial sums for the weak-type run, largest `m` for
    /// the convergence run.
    pub order: usize,
    pub lambda_count: usize,
    /// Lower end of the λ grid relative to `1 + llogl(f)`.
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Built-in names or expressions in `x`, `y`.
    pub functions: Vec<String>,
    /// Coefficient of the exponential mean `e^{A t} − 1`.
    pub a: f64,
    /// `ψ` for the general mean, an expression in `x`.
    pub psi: Option<String>,
    pub refinement: usize,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            grid: 128,
            order: 32,
            lambda_count: 32,
            lambda_min: 1e-2,
            lambda_max: 1e2,
            functions: BUILTIN_NAMES.iter().map(|s| s.to_string()).collect(),
            a: 1.0,
            psi: None,
            refinement: 4,
            out: None,
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_toml(&text).with_context(|| format!("in {}", path.display()))
    }

    /// Checks the ranges shared by both experiments.
    pub fn validate(&self) -> Result<()> {
        ensure!(
            self.grid >= 8 && self.grid.is_multiple_of(2) && self.grid <= MAX_GRID,
            "grid must be even and in [8, {MAX_GRID}], got {}",
            self.grid
        );
        ensure!(self.order >= 1, "order must be at least 1");
        ensure!(self.lambda_count >= 1, "lambda_count must be at least 1");
        ensure!(
            self.lambda_min > 0.0 && self.lambda_min.is_finite() && self.lambda_max.is_finite(),
            "lambda range must be positive and finite"
        );
        ensure!(
            self.lambda_min < self.lambda_max
                || (self.lambda_count == 1 && self.lambda_min == self.lambda_max),
            "lambda_min must be below lambda_max"
        );
        ensure!(
            self.a > 0.0 && self.a.is_finite(),
            "a must be positive, got {}",
            self.a
        );
        ensure!(
            (1..=64).contains(&self.refinement),
            "refinement must be in [1, 64]"
        );
        ensure!(!self.functions.is_empty(), "functions must not be empty");
        for f in &self.functions {
            if !BUILTIN_NAMES.contains(&f.as_str()) {
                parse_function(f).with_context(|| format!("function `{f}`"))?;
            }
        }
        if self.psi.is_some() {
            self.psi()?;
        }
        Ok(())
    }

    /// Weak-type run: `N` orders starting at `S_00`, within the BMO cap.
    pub fn validate_weak_type(&self) -> Result<()> {
        self.validate()?;
        let max = self.grid / 2 - 1;
        if self.order - 1 > max {
            bail!(
                "order {} needs frequencies up to {} but the grid allows {max}",
                self.order,
                self.order - 1
            );
        }
        let cap = BmoOptions::default().max_terms;
        ensure!(
            self.order <= cap,
            "order {} exceeds the BMO cap {cap}",
            self.order
        );
        Ok(())
    }

    /// Convergence run: `m` up to `order`.
    pub fn validate_convergence(&self) -> Result<()> {
        self.validate()?;
        let max = self.grid / 2 - 1;
        ensure!(
            self.order <= max,
            "order {} exceeds the grid limit {max}",
            self.order
        );
        Ok(())
    }

    pub fn bmo_options(&self) -> BmoOptions {
        BmoOptions {
            refinement: self.refinement,
            ..BmoOptions::default()
        }
    }

    pub fn test_functions(&self) -> Result<Vec<TestFunction>> {
        self.functions
            .iter()
            .map(|f| TestFunction::resolve(f, self.seed))
            .collect()
    }

    /// Geometric λ grid scaled by `scale`.
    pub fn lambdas(&self, scale: f64) -> Vec<f64> {
        let n = self.lambda_count;
        if n == 1 {
            return vec![self.lambda_min * scale];
        }
        let ratio = (self.lambda_max / self.lambda_min).ln();
        (0..n)
            .map(|i| scale * self.lambda_min * (ratio * i as f64 / (n - 1) as f64).exp())
            .collect()
    }

    pub fn psi(&self) -> Result<Option<Psi>> {
        let Some(src) = &self.psi else {
            return Ok(None);
        };
        let expr = parse_function(src).with_context(|| format!("psi `{src}`"))?;
        let psi = Psi::new(src.clone(), move |t| expr.eval(t, 0.0).unwrap_or(f64::NAN))
            .with_context(|| format!("psi `{src}`"))?;
        Ok(Some(psi))
    }

    /// `key = value` pairs echoed into report metadata. The output path is
    /// left out so a report does not depend on where it is written.
    pub fn echo(&self) -> Vec<(String, String)> {
        let text = toml::to_string(self).expect("config serializes");
        text.lines()
            .filter_map(|line| line.split_once(" = "))
            .filter(|(k, _)| *k != "out")
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }
}
