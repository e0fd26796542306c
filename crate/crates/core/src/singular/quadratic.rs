//! Modified quadratic sums `S*_nn` and the split of `S_nn − S*_nn`.
//!
//! With `D_n(t) = sin(nt)/(2tan(t/2)) + cos(nt)/2`, the product kernel
//! `D_n(t)D_n(s)` expands into the `sin·sin` kernel of `S*_nn` and three
//! correction terms
//!
//! ```text
//! S¹ = (1/π²)∬ sin(nt)cos(ns)/(4tan(t/2)) f(x+t, y+s)
//! S² = (1/π²)∬ cos(nt)sin(ns)/(4tan(s/2)) f(x+t, y+s)
//! S³ = (1/4π²)∬ cos(nt)cos(ns) f(x+t, y+s)
//! ```

use num_complex::Complex64;

use crate::error::Result;
use crate::field::SampledField2D;
use crate::grid::PeriodicGrid;
use crate::spectrum::{analyze_2d, synthesize_grid_2d, Spectrum2D};
use crate::sums::rectangular_sum_grid;

use super::conjugate::w_multiplier;
use super::pv::{Interpolation, LineOperator, PvKernel};
use super::{along_x, along_y, check_order};

/// `S*_nn` by the sine-modulated PV kernel in `x`, then in `y`.
pub fn modified_quadratic_sum(f: &SampledField2D, n: usize) -> Result<SampledField2D> {
    let grid = f.grid();
    check_order(n, grid)?;
    let op = LineOperator::pv(grid, PvKernel::Sine(n), Interpolation::Spectral);
    let g = grid.size();
    let values = along_y(&along_x(f.values(), g, &op), g, &op);
    Ok(SampledField2D::from_parts(grid, values))
}

/// `S*_nn` from the coefficients, with multiplier `w_n(a)·w_n(b)`.
pub fn modified_quadratic_sum_spectral(
    s: &Spectrum2D,
    n: usize,
    grid: PeriodicGrid,
) -> Result<SampledField2D> {
    check_order(n, grid)?;
    Ok(synthesize_grid_2d(s, grid, |a, b| {
        Complex64::new(w_multiplier(n, a) * w_multiplier(n, b), 0.0)
    }))
}

#[derive(Debug, Clone)]
pub struct CorrectionTerms {
    pub s1: SampledField2D,
    pub s2: SampledField2D,
    pub s3: SampledField2D,
    /// `S_nn` from the analyzed spectrum.
    pub quadratic: SampledField2D,
    /// `S*_nn` by quadrature.
    pub modified: SampledField2D,
    /// `max |S_nn − S*_nn − (S¹ + S² + S³)|`.
    pub residual: f64,
}

pub fn correction_terms(f: &SampledField2D, n: usize) -> Result<CorrectionTerms> {
    let grid = f.grid();
    check_order(n, grid)?;
    let g = grid.size();
    let sine = LineOperator::pv(grid, PvKernel::Sine(n), Interpolation::Spectral);
    let cosine = LineOperator::cosine_projection(grid, n);

    let sine_x = along_x(f.values(), g, &sine);
    let cos_x = along_x(f.values(), g, &cosine);
    let s1 = along_y(&sine_x, g, &cosine);
    let s2 = along_y(&cos_x, g, &sine);
    let s3 = along_y(&cos_x, g, &cosine);
    let modified = along_y(&sine_x, g, &sine);

    let max = grid.max_frequency();
    let quadratic = rectangular_sum_grid(&analyze_2d(f, max, max)?, n, n, grid)?;

    let mut residual = 0.0f64;
    for i in 0..g * g {
        let defect = quadratic.values()[i] - modified[i] - (s1[i] + s2[i] + s3[i]);
        residual = residual.max(defect.abs());
    }
    Ok(CorrectionTerms {
        s1: SampledField2D::from_parts(grid, s1),
        s2: SampledField2D::from_parts(grid, s2),
        s3: SampledField2D::from_parts(grid, s3),
        quadratic,
        modified: SampledField2D::from_parts(grid, modified),
        residual,
    })
}
