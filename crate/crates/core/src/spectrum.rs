//! Fourier coefficients on symmetric index ranges and their trapezoid-rule
//! analysis from grid samples.
//!
//! Coefficients are stored in ascending order `n = -N..=N`. Analysis uses
//! `c_n = (1/G)·Σ_j f(x_j)·e^{-inx_j}`, which is exact for trigonometric
//! polynomials of degree below `G/2`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{SampledField1D, SampledField2D};
use crate::grid::PeriodicGrid;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum1D {
    max_freq: usize,
    coeffs: Vec<Complex64>,
}

impl Spectrum1D {
    pub fn new(max_freq: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != 2 * max_freq + 1 {
            return Err(Error::ShapeMismatch {
                expected: 2 * max_freq + 1,
                actual: coeffs.len(),
            });
        }
        Ok(Self { max_freq, coeffs })
    }

    /// Builds a spectrum from `(frequency, coefficient)` pairs; unspecified
    /// coefficients are zero.
    pub fn from_terms(max_freq: usize, terms: &[(i64, Complex64)]) -> Result<Self> {
        let mut coeffs = vec![ZERO; 2 * max_freq + 1];
        for &(n, c) in terms {
            if n.unsigned_abs() as usize > max_freq {
                return Err(Error::FrequencyOutOfRange {
                    requested: n.unsigned_abs() as usize,
                    limit: max_freq,
                });
            }
            coeffs[(n + max_freq as i64) as usize] += c;
        }
        Ok(Self { max_freq, coeffs })
    }

    #[inline]
    pub fn max_frequency(&self) -> usize {
        self.max_freq
    }

    #[inline]
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `c_n`, zero outside the stored range.
    #[inline]
    pub fn coeff(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.max_freq {
            ZERO
        } else {
            self.coeffs[(n + self.max_freq as i64) as usize]
        }
    }

    /// Applies a Fourier multiplier `c_n ↦ μ(n)·c_n`.
    pub fn multiply(&self, multiplier: impl Fn(i64) -> Complex64) -> Self {
        let n0 = self.max_freq as i64;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| multiplier(i as i64 - n0) * c)
            .collect();
        Self {
            max_freq: self.max_freq,
            coeffs,
        }
    }

    /// Largest violation of `c_{-n} = conj(c_n)`.
    pub fn hermitian_defect(&self) -> f64 {
        let n0 = self.max_freq as i64;
        (0..=n0)
            .map(|n| (self.coeff(-n) - self.coeff(n).conj()).norm())
            .fold(0.0, f64::max)
    }
}

/// Fourier coefficients `c_{m,n}` for `|m| ≤ M`, `|n| ≤ N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum2D {
    max_m: usize,
    max_n: usize,
    coeffs: Vec<Complex64>,
}

impl Spectrum2D {
    pub fn new(max_m: usize, max_n: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        let expected = (2 * max_m + 1) * (2 * max_n + 1);
        if coeffs.len() != expected {
            return Err(Error::ShapeMismatch {
                expected,
                actual: coeffs.len(),
            });
        }
        Ok(Self {
            max_m,
            max_n,
            coeffs,
        })
    }

    /// Builds a spectrum from `((m, n), coefficient)` pairs.
    pub fn from_terms(
        max_m: usize,
        max_n: usize,
        terms: &[((i64, i64), Complex64)],
    ) -> Result<Self> {
        let mut coeffs = vec![ZERO; (2 * max_m + 1) * (2 * max_n + 1)];
        for &((m, n), c) in terms {
            let (am, an) = (m.unsigned_abs() as usize, n.unsigned_abs() as usize);
            if am > max_m || an > max_n {
                return Err(Error::FrequencyOutOfRange {
                    requested: am.max(an),
                    limit: if am > max_m { max_m } else { max_n },
                });
            }
            let idx = (m + max_m as i64) as usize * (2 * max_n + 1) + (n + max_n as i64) as usize;
            coeffs[idx] += c;
        }
        Ok(Self {
            max_m,
            max_n,
            coeffs,
        })
    }

    #[inline]
    pub fn max_frequencies(&self) -> (usize, usize) {
        (self.max_m, self.max_n)
    }

    /// Largest `n` for which the quadratic sum `S_nn` is available.
    #[inline]
    pub fn max_square_order(&self) -> usize {
        self.max_m.min(self.max_n)
    }

    #[inline]
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `c_{m,n}`, zero outside the stored range.
    #[inline]
    pub fn coeff(&self, m: i64, n: i64) -> Complex64 {
        if m.unsigned_abs() as usize > self.max_m || n.unsigned_abs() as usize > self.max_n {
            return ZERO;
        }
        let idx = (m + self.max_m as i64) as usize * (2 * self.max_n + 1)
            + (n + self.max_n as i64) as usize;
        self.coeffs[idx]
    }

    /// Largest violation of `c_{-m,-n} = conj(c_{m,n})`.
    pub fn hermitian_defect(&self) -> f64 {
        let (mm, nn) = (self.max_m as i64, self.max_n as i64);
        let mut worst = 0.0f64;
        for m in -mm..=mm {
            for n in -nn..=nn {
                worst = worst.max((self.coeff(-m, -n) - self.coeff(m, n).conj()).norm());
            }
        }
        worst
    }
}

fn check_bound(grid: &PeriodicGrid, requested: usize) -> Result<()> {
    let limit = grid.max_frequency();
    if requested > limit {
        Err(Error::FrequencyOutOfRange { requested, limit })
    } else {
        Ok(())
    }
}

/// Trapezoid-rule coefficients `c_n`, `|n| ≤ max_freq`.
pub fn analyze_1d(f: &SampledField1D, max_freq: usize) -> Result<Spectrum1D> {
    let grid = f.grid();
    check_bound(&grid, max_freq)?;
    let tw = grid.twiddles();
    let scale = 1.0 / grid.size() as f64;
    let n0 = max_freq as i64;
    let coeffs = (-n0..=n0)
        .map(|n| {
            let mut acc = ZERO;
            for (j, &v) in f.values().iter().enumerate() {
                acc += tw.phase(-n, j) * v;
            }
            acc * scale
        })
        .collect();
    Ok(Spectrum1D { max_freq, coeffs })
}

/// Tensor-product trapezoid coefficients `c_{m,n}`, `|m| ≤ max_m`, `|n| ≤ max_n`.
pub fn analyze_2d(f: &SampledField2D, max_m: usize, max_n: usize) -> Result<Spectrum2D> {
    let grid = f.grid();
    check_bound(&grid, max_m)?;
    check_bound(&grid, max_n)?;
    let g = grid.size();
    let tw = grid.twiddles();
    let scale = 1.0 / g as f64;
    let (mm, nn) = (max_m as i64, max_n as i64);
    let width = 2 * max_n + 1;

    // Transform along y for every row x_j.
    let mut rows = vec![ZERO; g * width];
    for j in 0..g {
        let row = &f.values()[j * g..(j + 1) * g];
        for (ni, n) in (-nn..=nn).enumerate() {
            let mut acc = ZERO;
            for (k, &v) in row.iter().enumerate() {
                acc += tw.phase(-n, k) * v;
            }
            rows[j * width + ni] = acc * scale;
        }
    }

    let mut coeffs = Vec::with_capacity((2 * max_m + 1) * width);
    for m in -mm..=mm {
        for ni in 0..width {
            let mut acc = ZERO;
            for j in 0..g {
                acc += tw.phase(-m, j) * rows[j * width + ni];
            }
            coeffs.push(acc * scale);
        }
    }
    Ok(Spectrum2D {
        max_m,
        max_n,
        coeffs,
    })
}

/// `Re Σ_{|k|≤n} w(k)·c_k·e^{ikx}` at a single point, ascending `k`.
pub(crate) fn synthesize_point_1d(
    s: &Spectrum1D,
    n: usize,
    x: f64,
    weight: impl Fn(i64) -> Complex64,
) -> f64 {
    let n = n as i64;
    let mut acc = ZERO;
    for k in -n..=n {
        let kx = k as f64 * x;
        acc += weight(k) * s.coeff(k) * Complex64::new(kx.cos(), kx.sin());
    }
    acc.re
}

/// Same as [`synthesize_point_1d`] at every primal node of `grid`.
pub(crate) fn synthesize_grid_1d(
    s: &Spectrum1D,
    n: usize,
    grid: PeriodicGrid,
    weight: impl Fn(i64) -> Complex64,
) -> SampledField1D {
    let tw = grid.twiddles();
    let n = n as i64;
    let weighted: Vec<Complex64> = (-n..=n).map(|k| weight(k) * s.coeff(k)).collect();
    let values = (0..grid.size())
        .map(|j| {
            let mut acc = ZERO;
            for (i, k) in (-n..=n).enumerate() {
                acc += weighted[i] * tw.phase(k, j);
            }
            acc.re
        })
        .collect();
    SampledField1D::from_parts(grid, values)
}

/// `Re Σ_{a,b} w(a,b)·c_{a,b}·e^{i(a x_j + b y_k)}` over the full stored
/// range, summed along `y` first.
pub(crate) fn synthesize_grid_2d(
    s: &Spectrum2D,
    grid: PeriodicGrid,
    weight: impl Fn(i64, i64) -> Complex64,
) -> SampledField2D {
    let g = grid.size();
    let tw = grid.twiddles();
    let (mm, nn) = (s.max_m as i64, s.max_n as i64);
    let rows = 2 * s.max_m + 1;
    let mut partial = vec![ZERO; rows * g];
    for (ai, a) in (-mm..=mm).enumerate() {
        let weighted: Vec<Complex64> = (-nn..=nn).map(|b| weight(a, b) * s.coeff(a, b)).collect();
        for k in 0..g {
            let mut acc = ZERO;
            for (bi, b) in (-nn..=nn).enumerate() {
                acc += weighted[bi] * tw.phase(b, k);
            }
            partial[ai * g + k] = acc;
        }
    }
    let mut values = vec![0.0; g * g];
    for j in 0..g {
        for k in 0..g {
            let mut acc = ZERO;
            for (ai, a) in (-mm..=mm).enumerate() {
                acc += tw.phase(a, j) * partial[ai * g + k];
            }
            values[j * g + k] = acc.re;
        }
    }
    SampledField2D::from_parts(grid, values)
}
