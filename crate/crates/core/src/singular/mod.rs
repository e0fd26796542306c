//! Principal-value operators and the decompositions built from them.
//!
//! All 2D operators are evaluated through 1D passes: separable products
//! act along `x` and then `y`, and the diagonal transforms act along the
//! directions `(1, 1)` or `(1, −1)` of a doubly half-shifted copy of the
//! input. Nothing here evaluates a raw 2D singular quadrature.

mod conjugate;
mod expansion;
mod inequalities;
mod pv;
mod quadratic;
mod slices;

pub use conjugate::{
    conjugate_function, conjugate_partial_sum, partial_sum_residual, u_transform,
    u_transform_spectral,
};
pub use expansion::{
    diagonal_conjugate, ij_decomposition, tan_identity_residual, tan_identity_residual_with_margin,
    ExpansionTerms, DEFAULT_SINGULAR_MARGIN,
};
pub use inequalities::{kolmogorov_ratio, zygmund_ratio, WeakTypeSample};
pub use pv::{
    cosine_projection, pv_transform, pv_transform_with, sine_integral, Interpolation, PvKernel,
};
pub use quadratic::{
    correction_terms, modified_quadratic_sum, modified_quadratic_sum_spectral, CorrectionTerms,
};
pub use slices::{
    slice_transforms, slice_transforms_with_limit, SliceTransforms, DEFAULT_SLICE_LIMIT,
};

use crate::error::{Error, Result};
use crate::grid::PeriodicGrid;
use pv::{half_shift, half_shift_row, LineOperator};

pub(crate) fn check_order(order: usize, grid: PeriodicGrid) -> Result<()> {
    let max = grid.max_frequency();
    if order > max {
        Err(Error::OrderOutOfRange { order, max })
    } else {
        Ok(())
    }
}

/// Applies `op` to every line `k = const` (the `x` direction).
pub(crate) fn along_x(values: &[f64], g: usize, op: &LineOperator) -> Vec<f64> {
    let mut out = vec![0.0; g * g];
    let mut line = vec![0.0; g];
    for k in 0..g {
        for j in 0..g {
            line[j] = values[j * g + k];
        }
        for (j, v) in op.apply(&line).into_iter().enumerate() {
            out[j * g + k] = v;
        }
    }
    out
}

/// Applies `op` to every line `j = const` (the `y` direction).
pub(crate) fn along_y(values: &[f64], g: usize, op: &LineOperator) -> Vec<f64> {
    let mut out = Vec::with_capacity(g * g);
    for j in 0..g {
        out.extend(op.apply(&values[j * g..(j + 1) * g]));
    }
    out
}

/// Spectral half-cell shift in `y` only: entry `(j, k)` holds the value at
/// `(x_j, y_k + h/2)`.
pub(crate) fn half_shift_y(values: &[f64], grid: PeriodicGrid) -> Vec<f64> {
    let g = grid.size();
    let row = half_shift_row(grid);
    let mut out = Vec::with_capacity(g * g);
    for j in 0..g {
        out.extend(half_shift(
            &values[j * g..(j + 1) * g],
            &row,
            Interpolation::Spectral,
        ));
    }
    out
}

/// Spectral half-cell shift in both directions: entry `(j, k)` holds the
/// value at `(x_j + h/2, y_k + h/2)`.
pub(crate) fn half_shift_xy(values: &[f64], grid: PeriodicGrid) -> Vec<f64> {
    let g = grid.size();
    let row = half_shift_row(grid);
    let shifted_y = half_shift_y(values, grid);
    let mut out = vec![0.0; g * g];
    let mut line = vec![0.0; g];
    for k in 0..g {
        for j in 0..g {
            line[j] = shifted_y[j * g + k];
        }
        for (j, v) in half_shift(&line, &row, Interpolation::Spectral)
            .into_iter()
            .enumerate()
        {
            out[j * g + k] = v;
        }
    }
    out
}
