//! The `I_n − J_n` splitting of `S*_nn` and the three-term expansion of `I_n`.
//!
//! `cos n(t−s) − cos n(t+s) = 2 sin(nt) sin(ns)` gives `S*_nn = I_n − J_n`
//! with
//!
//! ```text
//! I_n = (1/2π²)∬ cos n(t−s)·f(x+t, y+s) / (4 tan(t/2) tan(s/2))
//! J_n = (1/2π²)∬ cos n(t+s)·f(x+t, y+s) / (4 tan(t/2) tan(s/2))
//! ```
//!
//! After `u = t − s, v = s` and the tangent identity
//!
//! ```text
//! 1/(tan((u+v)/2)·tan(v/2)) = 1/(tan(u/2)·tan(v/2)) − 1/(tan(u/2)·tan((u+v)/2)) − 1
//! ```
//!
//! `I_n` becomes `I¹ − I² − I⁰` where `I¹ = ½·U_n(A(·, y))(x)` with the
//! diagonal conjugate `A`, and
//!
//! ```text
//! I² = (1/2π)∫ cos(nu)/(2tan(u/2)) · A(x, y − u) du
//! I⁰ = (1/8π²)∬ cos(nu)·f(x+u+v, y+v) du dv − ½·f(x, y)
//! ```
//!
//! The `−½·f` piece comes from exchanging the order of the two principal
//! values in the middle term; it is absent if the iterated integrals are
//! treated as interchangeable, and it is what makes the expansion exact.
//! The face-value constant `(1/2π²)∬f` is reported separately together
//! with the defect it leaves.

use crate::error::{Error, Result};
use crate::field::{max_abs_diff, SampledField2D};
use crate::spectrum::analyze_2d;

use super::pv::{kernel_weights, Interpolation, LineOperator, PvKernel};
use super::quadratic::modified_quadratic_sum_spectral;
use super::{along_x, along_y, check_order, half_shift_xy, half_shift_y};

pub const DEFAULT_SINGULAR_MARGIN: f64 = 1e-3;

fn distance_to_pole(t: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    (t - two_pi * (t / two_pi).round()).abs()
}

/// Absolute defect of the tangent identity at `(u, v)`.
pub fn tan_identity_residual(u: f64, v: f64) -> Result<f64> {
    tan_identity_residual_with_margin(u, v, DEFAULT_SINGULAR_MARGIN)
}

pub fn tan_identity_residual_with_margin(u: f64, v: f64, margin: f64) -> Result<f64> {
    if [u, v, u + v].iter().any(|&t| distance_to_pole(t) < margin) {
        return Err(Error::SingularMargin { u, v, margin });
    }
    let (tu, tv, tw) = ((0.5 * u).tan(), (0.5 * v).tan(), (0.5 * (u + v)).tan());
    let lhs = 1.0 / (tw * tv);
    let rhs = 1.0 / (tu * tv) - 1.0 / (tu * tw) - 1.0;
    Ok((lhs - rhs).abs())
}

/// `A(x, y) = p.v.(1/π)∫ f(x+v, y+v)/(2tan(v/2)) dv`.
///
/// `x_j + v_i` and `y_k + v_i` both land half a cell past a primal node, so
/// the rule reads a doubly half-shifted copy of `f` along its diagonals.
pub fn diagonal_conjugate(f: &SampledField2D) -> SampledField2D {
    let grid = f.grid();
    let g = grid.size();
    let shifted = half_shift_xy(f.values(), grid);
    let w = kernel_weights(grid, PvKernel::Conjugate);
    let mut out = vec![0.0; g * g];
    for j in 0..g {
        for k in 0..g {
            let mut acc = 0.0;
            for (i, &wi) in w.iter().enumerate() {
                acc += wi * shifted[((i + j + g / 2) % g) * g + (i + k + g / 2) % g];
            }
            out[j * g + k] = acc;
        }
    }
    SampledField2D::from_parts(grid, out)
}

#[derive(Debug, Clone)]
pub struct ExpansionTerms {
    pub i_n: SampledField2D,
    pub j_n: SampledField2D,
    pub i1: SampledField2D,
    pub i2: SampledField2D,
    /// `(1/8π²)∬ cos(nu)·f(x+u+v, y+v) du dv`.
    pub remainder: SampledField2D,
    /// `½·f`, produced by swapping the iterated principal values.
    pub exchange: SampledField2D,
    /// `remainder − exchange`.
    pub i0: SampledField2D,
    /// `S*_nn` from the analyzed spectrum.
    pub modified: SampledField2D,
    /// `max |S*_nn − (I_n − J_n)|`.
    pub ij_residual: f64,
    /// `max |I_n − (I¹ − I² − I⁰)|`.
    pub split_residual: f64,
    /// Largest tangent-identity defect over the offset-node pairs used by
    /// the quadrature, skipping pairs inside the default singular margin.
    pub tangent_residual: f64,
    /// `(1/2π²)∬ f`, the constant in place of `I⁰` when the order of
    /// integration is exchanged freely.
    pub naive_i0: f64,
    /// `max |I_n − (I¹ − I² − naive_i0)|`.
    pub naive_residual: f64,
}

pub fn ij_decomposition(f: &SampledField2D, n: usize) -> Result<ExpansionTerms> {
    let grid = f.grid();
    check_order(n, grid)?;
    let g = grid.size();

    // I_n and J_n from cos n(t∓s) = cos·cos ± sin·sin, each factor a 1D PV pass.
    let cos_op = LineOperator::pv(grid, PvKernel::Cosine(n), Interpolation::Spectral);
    let sin_op = LineOperator::pv(grid, PvKernel::Sine(n), Interpolation::Spectral);
    let uu = along_y(&along_x(f.values(), g, &cos_op), g, &cos_op);
    let ww = along_y(&along_x(f.values(), g, &sin_op), g, &sin_op);
    let i_n: Vec<f64> = uu.iter().zip(&ww).map(|(a, b)| 0.5 * (a + b)).collect();
    let j_n: Vec<f64> = uu.iter().zip(&ww).map(|(a, b)| 0.5 * (a - b)).collect();

    let a = diagonal_conjugate(f);
    let i1: Vec<f64> = along_x(a.values(), g, &cos_op)
        .into_iter()
        .map(|v| 0.5 * v)
        .collect();

    // A(x_j, y_k − u_i) with −u_i = u_{G−1−i}: half-shifted y index k − i + G/2 − 1.
    let a_shift = half_shift_y(a.values(), grid);
    let wc = kernel_weights(grid, PvKernel::Cosine(n));
    let mut i2 = vec![0.0; g * g];
    for j in 0..g {
        let row = &a_shift[j * g..(j + 1) * g];
        for k in 0..g {
            let mut acc = 0.0;
            for (i, &wi) in wc.iter().enumerate() {
                acc += wi * row[(k + g + g / 2 - 1 - i) % g];
            }
            i2[j * g + k] = 0.5 * acc;
        }
    }

    // Diagonal mean B(x, y) = (1/2π)∫ f(x+v, y+v) dv, then half of the
    // cosine projection of B in x.
    let mut diag_mean = vec![0.0; g * g];
    for j in 0..g {
        for k in 0..g {
            let mut acc = 0.0;
            for l in 0..g {
                acc += f.values()[grid.primal_sum_index(j, l) * g + grid.primal_sum_index(k, l)];
            }
            diag_mean[j * g + k] = acc / g as f64;
        }
    }
    let remainder: Vec<f64> = along_x(&diag_mean, g, &LineOperator::cosine_projection(grid, n))
        .into_iter()
        .map(|v| 0.5 * v)
        .collect();
    let exchange: Vec<f64> = f.values().iter().map(|v| 0.5 * v).collect();
    let i0: Vec<f64> = remainder
        .iter()
        .zip(&exchange)
        .map(|(r, e)| r - e)
        .collect();

    let max = grid.max_frequency();
    let modified = modified_quadratic_sum_spectral(&analyze_2d(f, max, max)?, n, grid)?;
    let i_minus_j: Vec<f64> = i_n.iter().zip(&j_n).map(|(a, b)| a - b).collect();
    let ij_residual = max_abs_diff(modified.values(), &i_minus_j);

    let expansion: Vec<f64> = (0..g * g).map(|p| i1[p] - i2[p] - i0[p]).collect();
    let split_residual = max_abs_diff(&i_n, &expansion);

    let naive_i0 = f.integral() / (2.0 * std::f64::consts::PI.powi(2));
    let naive: Vec<f64> = (0..g * g).map(|p| i1[p] - i2[p] - naive_i0).collect();
    let naive_residual = max_abs_diff(&i_n, &naive);

    let nodes = grid.offset_nodes();
    let mut tangent_residual = 0.0f64;
    for &u in &nodes {
        for &v in &nodes {
            if let Ok(r) = tan_identity_residual(u, v) {
                tangent_residual = tangent_residual.max(r);
            }
        }
    }

    Ok(ExpansionTerms {
        i_n: SampledField2D::from_parts(grid, i_n),
        j_n: SampledField2D::from_parts(grid, j_n),
        i1: SampledField2D::from_parts(grid, i1),
        i2: SampledField2D::from_parts(grid, i2),
        remainder: SampledField2D::from_parts(grid, remainder),
        exchange: SampledField2D::from_parts(grid, exchange),
        i0: SampledField2D::from_parts(grid, i0),
        modified,
        ij_residual,
        split_residual,
        tangent_residual,
        naive_i0,
        naive_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    #[test]
    fn tangent_identity_at_sample_points() {
        assert!(tan_identity_residual(PI / 2.0, PI / 2.0).unwrap() < 1e-12);
        assert!(tan_identity_residual(1.0, 0.7).unwrap() < 1e-12);
        assert!(matches!(
            tan_identity_residual(1e-9, 0.5),
            Err(Error::SingularMargin { .. })
        ));
        assert!(tan_identity_residual(0.4, -0.4).is_err());
        assert!(tan_identity_residual_with_margin(1e-2, 0.5, 1e-3).is_ok());
    }

    fn dense_diagonal(f: impl Fn(f64, f64) -> f64, x: f64, y: f64) -> f64 {
        let q = 20_000;
        let h = 2.0 * PI / q as f64;
        (0..q)
            .map(|i| {
                let v = -PI + (i as f64 + 0.5) * h;
                f(x + v, y + v) / (2.0 * (0.5 * v).tan())
            })
            .sum::<f64>()
            * h
            / PI
    }

    #[test]
    fn diagonal_conjugate_cases() {
        let g = make_grid(64).unwrap();
        let c = SampledField2D::constant(g, 1.5);
        assert!(diagonal_conjugate(&c).max_abs() < 1e-12);

        let plus = SampledField2D::from_fn(g, |x, y| (x + y).cos()).unwrap();
        let a = diagonal_conjugate(&plus);
        let expected = SampledField2D::from_fn(g, |x, y| -(x + y).sin()).unwrap();
        assert!(a.max_abs_diff(&expected) < 1e-12);
        for &(j, k) in &[(3usize, 9usize), (31, 60)] {
            let dense = dense_diagonal(|u, v| (u + v).cos(), g.primal_node(j), g.primal_node(k));
            assert!((a.get(j, k) - dense).abs() < 1e-6);
        }

        let minus = SampledField2D::from_fn(g, |x, y| (x - y).cos()).unwrap();
        assert!(diagonal_conjugate(&minus).max_abs() < 1e-12);
    }

    #[test]
    fn constant_input() {
        let g = make_grid(32).unwrap();
        let c = 1.75;
        let f = SampledField2D::constant(g, c);
        let t = ij_decomposition(&f, 3).unwrap();
        assert!(t.i1.max_abs() < 1e-12 && t.i2.max_abs() < 1e-12);
        assert!(t.i_n.max_abs_diff(&f.scale(0.5)) < 1e-12);
        assert!(t.split_residual < 1e-10 && t.ij_residual < 1e-12);
        assert!((t.naive_i0 - 2.0 * c).abs() < 1e-12);
        assert!((t.naive_residual - 2.5 * c).abs() < 1e-10);
    }

    #[test]
    fn identities_on_random_polynomial() {
        let g = make_grid(32).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let terms: Vec<(f64, f64, f64, f64)> = (0..8)
            .map(|_| {
                (
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-7..8) as f64,
                    rng.gen_range(-7..8) as f64,
                    rng.gen_range(0.0..PI),
                )
            })
            .collect();
        let f = SampledField2D::from_fn(g, |x, y| {
            terms
                .iter()
                .map(|&(c, a, b, p)| c * (a * x + b * y + p).cos())
                .sum()
        })
        .unwrap();
        for n in 0..=8 {
            let t = ij_decomposition(&f, n).unwrap();
            assert!(t.ij_residual < 1e-10, "n={n}: {}", t.ij_residual);
            assert!(t.split_residual < 1e-10, "n={n}: {}", t.split_residual);
        }
    }
}
