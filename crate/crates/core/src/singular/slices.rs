//! Sheared conjugate transforms over `𝕋³`.
//!
//! ```text
//! F₁(x, y, u) = p.v.(1/π)∫ f(x+v, y+u−v)/(2tan(v/2)) dv
//! F₂(x, y, u) = p.v.(1/π)∫ f(x+v, y+v−u)/(2tan(v/2)) dv
//! ```
//!
//! `u` runs over primal nodes and `v` over offset nodes, so both arguments
//! of `f` fall on the doubly half-shifted grid. Storage is `O(G³)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::field::SampledField2D;
use crate::grid::PeriodicGrid;

use super::check_order;
use super::half_shift_xy;
use super::pv::{kernel_weights, PvKernel};

pub const DEFAULT_SLICE_LIMIT: usize = 64;

#[derive(Debug, Clone)]
pub struct SliceTransforms {
    grid: PeriodicGrid,
    f1: Vec<f64>,
    f2: Vec<f64>,
    l1: [f64; 2],
}

impl SliceTransforms {
    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    /// `F₁(x_j, y_k, u_l)`.
    #[inline]
    pub fn f1(&self, j: usize, k: usize, l: usize) -> f64 {
        let g = self.grid.size();
        self.f1[(j * g + k) * g + l]
    }

    /// `F₂(x_j, y_k, u_l)`.
    #[inline]
    pub fn f2(&self, j: usize, k: usize, l: usize) -> f64 {
        let g = self.grid.size();
        self.f2[(j * g + k) * g + l]
    }

    /// Discrete `∭|F₁|` and `∭|F₂|` with cell volume `h³`.
    pub fn l1_norms(&self) -> [f64; 2] {
        self.l1
    }

    /// `S¹ = (1/4π)∫ sin(nu)·(F₁ + F₂)(x, y, u) du`, trapezoid in `u`.
    pub fn reconstruct_s1(&self, n: usize) -> Result<SampledField2D> {
        check_order(n, self.grid)?;
        let g = self.grid.size();
        let h = self.grid.cell_width();
        let weights: Vec<f64> = self
            .grid
            .primal_nodes()
            .into_iter()
            .map(|u| (n as f64 * u).sin() * h / (4.0 * PI))
            .collect();
        let mut out = vec![0.0; g * g];
        for (p, slot) in out.iter_mut().enumerate() {
            let base = p * g;
            let mut acc = 0.0;
            for (l, &w) in weights.iter().enumerate() {
                acc += w * (self.f1[base + l] + self.f2[base + l]);
            }
            *slot = acc;
        }
        Ok(SampledField2D::from_parts(self.grid, out))
    }
}

pub fn slice_transforms(f: &SampledField2D) -> Result<SliceTransforms> {
    slice_transforms_with_limit(f, DEFAULT_SLICE_LIMIT)
}

pub fn slice_transforms_with_limit(f: &SampledField2D, limit: usize) -> Result<SliceTransforms> {
    let grid = f.grid();
    let g = grid.size();
    if g > limit {
        return Err(Error::GridTooLarge { size: g, limit });
    }
    let shifted = half_shift_xy(f.values(), grid);
    let w = kernel_weights(grid, PvKernel::Conjugate);
    let mut f1 = vec![0.0; g * g * g];
    let mut f2 = vec![0.0; g * g * g];
    for j in 0..g {
        for k in 0..g {
            for l in 0..g {
                let (mut a1, mut a2) = (0.0, 0.0);
                for (i, &wi) in w.iter().enumerate() {
                    let row = ((i + j + g / 2) % g) * g;
                    // y_k + u_l − v_i and y_k + v_i − u_l on the half-shifted grid.
                    a1 += wi * shifted[row + (k + l + 2 * g - i - 1) % g];
                    a2 += wi * shifted[row + (k + i + g - l) % g];
                }
                f1[(j * g + k) * g + l] = a1;
                f2[(j * g + k) * g + l] = a2;
            }
        }
    }
    let h = grid.cell_width();
    let volume = h * h * h;
    let l1 = [
        volume * f1.iter().map(|v| v.abs()).sum::<f64>(),
        volume * f2.iter().map(|v| v.abs()).sum::<f64>(),
    ];
    Ok(SliceTransforms { grid, f1, f2, l1 })
}
