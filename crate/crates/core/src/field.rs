//! Real samples of 2π-periodic functions on primal grid nodes.

use crate::error::{Error, Result};
use crate::grid::PeriodicGrid;

fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::NonFinite(i)),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledField1D {
    grid: PeriodicGrid,
    values: Vec<f64>,
}

impl SampledField1D {
    pub fn new(grid: PeriodicGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.size() {
            return Err(Error::ShapeMismatch {
                expected: grid.size(),
                actual: values.len(),
            });
        }
        check_finite(&values)?;
        Ok(Self { grid, values })
    }

    /// Samples `f` at the primal nodes.
    pub fn from_fn(grid: PeriodicGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.primal_nodes().into_iter().map(f).collect();
        Self::new(grid, values)
    }

    pub(crate) fn from_parts(grid: PeriodicGrid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.size());
        Self { grid, values }
    }

    #[inline]
    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Sup-norm distance; panics if the grids differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.grid, other.grid, "fields live on different grids");
        max_abs_diff(&self.values, &other.values)
    }

    /// Discrete `∫_𝕋 |f|` with cell measure `2π/G`.
    pub fn l1_norm(&self) -> f64 {
        self.grid.cell_width() * self.values.iter().map(|v| v.abs()).sum::<f64>()
    }
}

/// Samples on a `G × G` grid; row index ↔ `x`, column index ↔ `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField2D {
    grid: PeriodicGrid,
    values: Vec<f64>,
}

impl SampledField2D {
    pub fn new(grid: PeriodicGrid, values: Vec<f64>) -> Result<Self> {
        let expected = grid.size() * grid.size();
        if values.len() != expected {
            return Err(Error::ShapeMismatch {
                expected,
                actual: values.len(),
            });
        }
        check_finite(&values)?;
        Ok(Self { grid, values })
    }

    /// Samples `f(x, y)` at the primal nodes.
    pub fn from_fn(grid: PeriodicGrid, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let nodes = grid.primal_nodes();
        let mut values = Vec::with_capacity(nodes.len() * nodes.len());
        for &x in &nodes {
            for &y in &nodes {
                values.push(f(x, y));
            }
        }
        Self::new(grid, values)
    }

    pub fn constant(grid: PeriodicGrid, c: f64) -> Self {
        Self::from_parts(grid, vec![c; grid.size() * grid.size()])
    }

    pub(crate) fn from_parts(grid: PeriodicGrid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.size() * grid.size());
        Self { grid, values }
    }

    #[inline]
    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.grid.size()
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Value at `(x_j, y_k)`.
    #[inline]
    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.values[j * self.grid.size() + k]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Sup-norm distance; panics if the grids differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.grid, other.grid, "fields live on different grids");
        max_abs_diff(&self.values, &other.values)
    }

    pub fn cell_measure(&self) -> f64 {
        let h = self.grid.cell_width();
        h * h
    }

    /// Discrete `∬_{𝕋²} |f|`.
    pub fn l1_norm(&self) -> f64 {
        self.cell_measure() * self.values.iter().map(|v| v.abs()).sum::<f64>()
    }

    /// Discrete `∬_{𝕋²} f`.
    pub fn integral(&self) -> f64 {
        self.cell_measure() * self.values.iter().sum::<f64>()
    }

    /// Elementwise linear combination `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        assert_eq!(self.grid, other.grid, "fields live on different grids");
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(u, v)| a * u + b * v)
            .collect();
        Self::from_parts(self.grid, values)
    }

    pub fn scale(&self, a: f64) -> Self {
        Self::from_parts(self.grid, self.values.iter().map(|v| a * v).collect())
    }
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (u, v)| m.max((u - v).abs()))
}
