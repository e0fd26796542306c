//! Uniform discretization of the circle `[-π, π)`.
//!
//! Two node families live on every grid: primal nodes `x_j = -π + 2πj/G`,
//! where fields are sampled, and offset nodes `t_j = -π + (j + ½)·2π/G`,
//! where singular kernels are evaluated. Offset nodes are symmetric about
//! zero and never hit `0` or `±π`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PeriodicGrid {
    size: usize,
}

/// Builds a grid with `size` primal and `size` offset nodes.
pub fn make_grid(size: usize) -> Result<PeriodicGrid> {
    PeriodicGrid::new(size)
}

impl PeriodicGrid {
    pub fn new(size: usize) -> Result<Self> {
        if size < 4 || !size.is_multiple_of(2) {
            return Err(Error::InvalidGridSize(size));
        }
        Ok(Self { size })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    /// Cell width `2π/G`.
    #[inline]
    pub fn cell_width(&self) -> f64 {
        2.0 * PI / self.size as f64
    }

    /// Largest frequency that analysis on this grid resolves without aliasing.
    #[inline]
    pub fn max_frequency(&self) -> usize {
        self.size / 2 - 1
    }

    #[inline]
    pub fn primal_node(&self, j: usize) -> f64 {
        -PI + 2.0 * PI * j as f64 / self.size as f64
    }

    #[inline]
    pub fn offset_node(&self, j: usize) -> f64 {
        -PI + PI * (2 * j + 1) as f64 / self.size as f64
    }

    pub fn primal_nodes(&self) -> Vec<f64> {
        (0..self.size).map(|j| self.primal_node(j)).collect()
    }

    pub fn offset_nodes(&self) -> Vec<f64> {
        (0..self.size).map(|j| self.offset_node(j)).collect()
    }

    /// Index of the primal node `x_i + x_j` (mod 2π).
    #[inline]
    pub(crate) fn primal_sum_index(&self, i: usize, j: usize) -> usize {
        (i + j + self.size / 2) % self.size
    }

    pub(crate) fn twiddles(&self) -> Twiddles {
        Twiddles::new(self.size)
    }
}

/// Table of `e^{i k x_j}` on primal nodes, built once per grid.
///
/// `e^{ikx_j} = (-1)^k · ω^{kj}` with `ω = e^{2πi/G}`; the table is filled
/// so that `ω^{G-m}` is the exact conjugate of `ω^m`, which keeps spectra of
/// real fields Hermitian to the last bit.
#[derive(Debug, Clone)]
pub(crate) struct Twiddles {
    size: usize,
    roots: Vec<Complex64>,
}

impl Twiddles {
    fn new(size: usize) -> Self {
        let mut roots = vec![Complex64::new(0.0, 0.0); size];
        for (m, root) in roots.iter_mut().enumerate().take(size / 2 + 1) {
            let angle = 2.0 * PI * m as f64 / size as f64;
            *root = Complex64::new(angle.cos(), angle.sin());
        }
        roots[size / 2] = Complex64::new(-1.0, 0.0);
        for m in size / 2 + 1..size {
            roots[m] = roots[size - m].conj();
        }
        Self { size, roots }
    }

    /// `e^{i k x_j}` for a primal node index `j`.
    #[inline]
    pub(crate) fn phase(&self, k: i64, j: usize) -> Complex64 {
        let g = self.size as i64;
        let m = (k.rem_euclid(g) * j as i64).rem_euclid(g) as usize;
        if k.rem_euclid(2) == 1 {
            -self.roots[m]
        } else {
            self.roots[m]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_point_nodes() {
        let g = make_grid(4).unwrap();
        let primal = g.primal_nodes();
        let expected = [-PI, -PI / 2.0, 0.0, PI / 2.0];
        for (a, b) in primal.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        let offset = g.offset_nodes();
        let expected = [-3.0 * PI / 4.0, -PI / 4.0, PI / 4.0, 3.0 * PI / 4.0];
        for (a, b) in offset.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_odd_and_small() {
        assert_eq!(make_grid(3), Err(Error::InvalidGridSize(3)));
        assert_eq!(make_grid(2), Err(Error::InvalidGridSize(2)));
        assert!(make_grid(6).is_ok());
    }

    #[test]
    fn offset_nodes_avoid_zero_and_primal_nodes() {
        for size in [4, 8, 64, 256] {
            let g = make_grid(size).unwrap();
            let h = g.cell_width();
            for t in g.offset_nodes() {
                assert!(t.abs() > 0.25 * h);
                assert!((t.abs() - PI).abs() > 0.25 * h);
                for x in g.primal_nodes() {
                    assert!((t - x).abs() > 0.25 * h);
                }
            }
        }
    }

    #[test]
    fn phases_match_direct_evaluation() {
        let g = make_grid(16).unwrap();
        let tw = g.twiddles();
        for k in -9i64..=9 {
            for j in 0..16 {
                let x = g.primal_node(j);
                let direct = Complex64::new((k as f64 * x).cos(), (k as f64 * x).sin());
                assert!((tw.phase(k, j) - direct).norm() < 1e-14);
                assert_eq!(tw.phase(-k, j), tw.phase(k, j).conj());
            }
        }
    }
}
