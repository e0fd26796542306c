//! Midpoint-rule principal values on offset nodes.
//!
//! For a kernel `K` with at most a `1/t` singularity at the origin,
//!
//! ```text
//! (Tf)(x_j) = (1/π)·(2π/G)·Σ_i K(t_i)·f(x_j + t_i)
//! ```
//!
//! with `t_i` the offset nodes. Those nodes are symmetric about `0`, so the
//! odd part of the kernel cancels pairwise and the sum is the principal
//! value of the periodic integral. `x_j + t_i` always lands half a cell
//! past a primal node, where `f` is read from its trigonometric
//! interpolant (or, optionally, from linear interpolation).
//!
//! When `f` is a trigonometric polynomial of degree `d` and the kernel is
//! one of [`PvKernel`] with order `n`, the rule is exact as long as
//! `d + n < G`.

use std::f64::consts::PI;

use crate::field::SampledField1D;
use crate::grid::PeriodicGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PvKernel {
    /// `1 / (2 tan(t/2))`
    Conjugate,
    /// `cos(nt) / (2 tan(t/2))`
    Cosine(usize),
    /// `sin(nt) / (2 tan(t/2))`
    Sine(usize),
}

impl PvKernel {
    pub fn eval(&self, t: f64) -> f64 {
        let cot = 1.0 / (2.0 * (0.5 * t).tan());
        match *self {
            PvKernel::Conjugate => cot,
            PvKernel::Cosine(n) => (n as f64 * t).cos() * cot,
            PvKernel::Sine(n) => (n as f64 * t).sin() * cot,
        }
    }

    pub fn order(&self) -> Option<usize> {
        match *self {
            PvKernel::Conjugate => None,
            PvKernel::Cosine(n) | PvKernel::Sine(n) => Some(n),
        }
    }
}

/// How values half a cell off the primal nodes are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Interpolation {
    /// Exact evaluation of the trigonometric interpolant of the samples.
    #[default]
    Spectral,
    /// Average of the two neighbouring samples; second-order accurate.
    Linear,
}

/// `(1/π)·h·K(t_i)` for every offset node.
pub(crate) fn kernel_weights(grid: PeriodicGrid, kernel: PvKernel) -> Vec<f64> {
    let scale = grid.cell_width() / PI;
    grid.offset_nodes()
        .into_iter()
        .map(|t| scale * kernel.eval(t))
        .collect()
}

/// Circulant row of the half-cell shift of the trigonometric interpolant:
/// `p(x_m + h/2) = Σ_l s[(m − l) mod G]·f_l`.
///
/// The Nyquist mode vanishes at half-shifted nodes, so only `|k| < G/2`
/// appears.
pub(crate) fn half_shift_row(grid: PeriodicGrid) -> Vec<f64> {
    let g = grid.size();
    let h = grid.cell_width();
    (0..g)
        .map(|d| {
            let arg = (d as f64 + 0.5) * h;
            let mut acc = 1.0;
            for k in 1..g / 2 {
                acc += 2.0 * (k as f64 * arg).cos();
            }
            acc / g as f64
        })
        .collect()
}

/// Values at `x_m + h/2` for `m = 0..G`.
pub(crate) fn half_shift(values: &[f64], row: &[f64], interp: Interpolation) -> Vec<f64> {
    let g = values.len();
    match interp {
        Interpolation::Spectral => (0..g)
            .map(|m| {
                let mut acc = 0.0;
                for (l, &v) in values.iter().enumerate() {
                    acc += row[(m + g - l) % g] * v;
                }
                acc
            })
            .collect(),
        Interpolation::Linear => (0..g)
            .map(|m| 0.5 * (values[m] + values[(m + 1) % g]))
            .collect(),
    }
}

/// `out_j = Σ_i w_i·shifted[(i + j + G/2) mod G]`, where `shifted[m]` holds
/// the value at `x_m + h/2`, i.e. at `x_j + t_i`.
pub(crate) fn apply_shifted(shifted: &[f64], weights: &[f64]) -> Vec<f64> {
    let g = shifted.len();
    (0..g)
        .map(|j| {
            let mut acc = 0.0;
            for (i, &w) in weights.iter().enumerate() {
                acc += w * shifted[(i + j + g / 2) % g];
            }
            acc
        })
        .collect()
}

/// Trapezoid correlation on primal nodes:
/// `out_j = (1/G)·Σ_i w(x_i)·f(x_j + x_i)`, i.e. `(1/2π)∫ w(t) f(x+t) dt`.
pub(crate) fn primal_correlation(
    grid: PeriodicGrid,
    values: &[f64],
    weight: impl Fn(f64) -> f64,
) -> Vec<f64> {
    let g = grid.size();
    let w: Vec<f64> = grid.primal_nodes().into_iter().map(weight).collect();
    let scale = 1.0 / g as f64;
    (0..g)
        .map(|j| {
            let mut acc = 0.0;
            for (i, &wi) in w.iter().enumerate() {
                acc += wi * values[grid.primal_sum_index(i, j)];
            }
            acc * scale
        })
        .collect()
}

/// A 1D operator prepared once and applied to many lines of samples.
#[derive(Debug, Clone)]
pub(crate) enum LineOperator {
    Pv {
        weights: Vec<f64>,
        row: Vec<f64>,
        interp: Interpolation,
    },
    /// `(1/2π)∫ cos(nt) f(x+t) dt`
    CosineProjection { grid: PeriodicGrid, order: usize },
}

impl LineOperator {
    pub(crate) fn pv(grid: PeriodicGrid, kernel: PvKernel, interp: Interpolation) -> Self {
        LineOperator::Pv {
            weights: kernel_weights(grid, kernel),
            row: half_shift_row(grid),
            interp,
        }
    }

    pub(crate) fn cosine_projection(grid: PeriodicGrid, order: usize) -> Self {
        LineOperator::CosineProjection { grid, order }
    }

    pub(crate) fn apply(&self, line: &[f64]) -> Vec<f64> {
        match self {
            LineOperator::Pv {
                weights,
                row,
                interp,
            } => apply_shifted(&half_shift(line, row, *interp), weights),
            LineOperator::CosineProjection { grid, order } => {
                let n = *order as f64;
                primal_correlation(*grid, line, |t| (n * t).cos())
            }
        }
    }
}

/// Principal-value transform with spectral interpolation.
pub fn pv_transform(f: &SampledField1D, kernel: PvKernel) -> SampledField1D {
    pv_transform_with(f, kernel, Interpolation::Spectral)
}

pub fn pv_transform_with(
    f: &SampledField1D,
    kernel: PvKernel,
    interp: Interpolation,
) -> SampledField1D {
    let op = LineOperator::pv(f.grid(), kernel, interp);
    SampledField1D::from_parts(f.grid(), op.apply(f.values()))
}

/// `(1/2π)∫ cos(nt)·f(x+t) dt`; for `n > 0` this keeps half of the `±n` modes.
pub fn cosine_projection(f: &SampledField1D, n: usize) -> SampledField1D {
    let op = LineOperator::cosine_projection(f.grid(), n);
    SampledField1D::from_parts(f.grid(), op.apply(f.values()))
}

/// `(1/2π)∫ sin(nt)·f(x+t) dt`.
pub fn sine_integral(f: &SampledField1D, n: usize) -> SampledField1D {
    let k = n as f64;
    let values = primal_correlation(f.grid(), f.values(), |t| (k * t).sin());
    SampledField1D::from_parts(f.grid(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;
    use crate::spectrum::analyze_1d;
    use crate::sums::partial_sum_1d_grid;

    #[test]
    fn constant_has_vanishing_conjugate() {
        let g = make_grid(64).unwrap();
        let f = SampledField1D::from_fn(g, |_| 3.0).unwrap();
        assert!(pv_transform(&f, PvKernel::Conjugate).max_abs() < 1e-12);
        assert!(pv_transform(&f, PvKernel::Cosine(4)).max_abs() < 1e-12);
    }

    #[test]
    fn half_shift_is_exact_for_band_limited_input() {
        let g = make_grid(32).unwrap();
        let p = |x: f64| (3.0 * x).cos() - 0.4 * (15.0 * x).sin() + 0.1;
        let f = SampledField1D::from_fn(g, p).unwrap();
        let shifted = half_shift(f.values(), &half_shift_row(g), Interpolation::Spectral);
        for (m, v) in shifted.iter().enumerate() {
            assert!((v - p(g.offset_node(m))).abs() < 1e-13);
        }
    }

    #[test]
    fn conjugate_of_cosine_against_dense_quadrature() {
        // Oracle: principal value by a symmetric dense midpoint rule on the
        // analytic integrand, independent of grid interpolation.
        let oracle = |x: f64| {
            let m = 20_000;
            let h = 2.0 * PI / m as f64;
            (0..m)
                .map(|i| {
                    let t = -PI + (i as f64 + 0.5) * h;
                    (2.0 * (x + t)).cos() / (2.0 * (0.5 * t).tan())
                })
                .sum::<f64>()
                * h
                / PI
        };
        let g = make_grid(256).unwrap();
        let f = SampledField1D::from_fn(g, |x| (2.0 * x).cos()).unwrap();
        let out = pv_transform(&f, PvKernel::Conjugate);
        for j in (0..256).step_by(17) {
            let x = g.primal_node(j);
            assert!((out.values()[j] - oracle(x)).abs() < 1e-8);
            assert!((out.values()[j] + (2.0 * x).sin()).abs() < 1e-8);
        }
    }

    #[test]
    fn sine_kernel_equals_partial_sum_minus_half_projection() {
        let g = make_grid(64).unwrap();
        let f = SampledField1D::from_fn(g, |x| (2.0 * x).cos()).unwrap();
        let quad = pv_transform(&f, PvKernel::Sine(2));
        let expected = SampledField1D::from_fn(g, |x| 0.5 * (2.0 * x).cos()).unwrap();
        assert!(quad.max_abs_diff(&expected) < 1e-12);

        // Second route: D_n = sin(nt)/(2tan(t/2)) + cos(nt)/2.
        let s = analyze_1d(&f, 31).unwrap();
        let sn = partial_sum_1d_grid(&s, 2, g).unwrap();
        let half = cosine_projection(&f, 2);
        let route: Vec<f64> = sn
            .values()
            .iter()
            .zip(half.values())
            .map(|(a, b)| a - b)
            .collect();
        let route = SampledField1D::new(g, route).unwrap();
        assert!(quad.max_abs_diff(&route) < 1e-8);
    }

    #[test]
    fn linear_interpolation_is_second_order() {
        let p = |x: f64| (3.0 * x).sin();
        let err = |size: usize| {
            let g = make_grid(size).unwrap();
            let f = SampledField1D::from_fn(g, p).unwrap();
            let out = pv_transform_with(&f, PvKernel::Conjugate, Interpolation::Linear);
            let exact = SampledField1D::from_fn(g, |x| (3.0 * x).cos()).unwrap();
            out.max_abs_diff(&exact)
        };
        let (e1, e2) = (err(128), err(256));
        assert!(e2 < e1 / 3.0, "{e1} {e2}");
    }
}
