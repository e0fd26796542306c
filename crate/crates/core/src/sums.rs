//! Partial sums, Fejér means and rectangular or quadratic partial sums.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{SampledField1D, SampledField2D};
use crate::grid::PeriodicGrid;
use crate::spectrum::{synthesize_grid_1d, synthesize_point_1d, Spectrum1D, Spectrum2D};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_order(order: usize, max: usize) -> Result<()> {
    if order > max {
        Err(Error::OrderOutOfRange { order, max })
    } else {
        Ok(())
    }
}

fn fejer_weight(n: usize) -> impl Fn(i64) -> Complex64 {
    move |k| Complex64::new(1.0 - k.unsigned_abs() as f64 / (n + 1) as f64, 0.0)
}

/// `S_n(x) = Σ_{|k|≤n} c_k e^{ikx}`.
pub fn partial_sum_1d(s: &Spectrum1D, n: usize, x: f64) -> Result<f64> {
    check_order(n, s.max_frequency())?;
    Ok(synthesize_point_1d(s, n, x, |_| ONE))
}

/// `S_n` at every primal node.
pub fn partial_sum_1d_grid(s: &Spectrum1D, n: usize, grid: PeriodicGrid) -> Result<SampledField1D> {
    check_order(n, s.max_frequency())?;
    Ok(synthesize_grid_1d(s, n, grid, |_| ONE))
}

/// `(C,1)` mean `σ_n = (1/(n+1))·Σ_{k=0}^n S_k`, evaluated through the Fejér
/// weights `1 - |k|/(n+1)`.
pub fn cesaro_mean(s: &Spectrum1D, n: usize, x: f64) -> Result<f64> {
    check_order(n, s.max_frequency())?;
    Ok(synthesize_point_1d(s, n, x, fejer_weight(n)))
}

pub fn cesaro_mean_grid(s: &Spectrum1D, n: usize, grid: PeriodicGrid) -> Result<SampledField1D> {
    check_order(n, s.max_frequency())?;
    Ok(synthesize_grid_1d(s, n, grid, fejer_weight(n)))
}

/// `S_{MN}(x, y) = Σ_{|a|≤M} Σ_{|b|≤N} c_{a,b} e^{i(ax+by)}`.
pub fn rectangular_sum(s: &Spectrum2D, m: usize, n: usize, x: f64, y: f64) -> Result<f64> {
    let (mm, nn) = s.max_frequencies();
    check_order(m, mm)?;
    check_order(n, nn)?;
    let (m, n) = (m as i64, n as i64);
    let mut acc = ZERO;
    for a in -m..=m {
        let mut row = ZERO;
        for b in -n..=n {
            let by = b as f64 * y;
            row += s.coeff(a, b) * Complex64::new(by.cos(), by.sin());
        }
        let ax = a as f64 * x;
        acc += row * Complex64::new(ax.cos(), ax.sin());
    }
    Ok(acc.re)
}

/// `S_{MN}` at every primal node of `grid`.
pub fn rectangular_sum_grid(
    s: &Spectrum2D,
    m: usize,
    n: usize,
    grid: PeriodicGrid,
) -> Result<SampledField2D> {
    let (mm, nn) = s.max_frequencies();
    check_order(m, mm)?;
    check_order(n, nn)?;
    let g = grid.size();
    let tw = grid.twiddles();
    let (m, n) = (m as i64, n as i64);
    let rows = (2 * m + 1) as usize;

    // partial[a][k] = Σ_b c_{a,b} e^{i b y_k}
    let mut partial = vec![ZERO; rows * g];
    for (ai, a) in (-m..=m).enumerate() {
        for k in 0..g {
            let mut acc = ZERO;
            for b in -n..=n {
                acc += s.coeff(a, b) * tw.phase(b, k);
            }
            partial[ai * g + k] = acc;
        }
    }
    let mut values = vec![0.0; g * g];
    for j in 0..g {
        for k in 0..g {
            let mut acc = ZERO;
            for (ai, a) in (-m..=m).enumerate() {
                acc += tw.phase(a, j) * partial[ai * g + k];
            }
            values[j * g + k] = acc.re;
        }
    }
    Ok(SampledField2D::from_parts(grid, values))
}

/// Quadratic sum `S_nn(x, y)`.
pub fn quadratic_sum(s: &Spectrum2D, n: usize, x: f64, y: f64) -> Result<f64> {
    rectangular_sum(s, n, n, x, y)
}

/// `S_00, S_11, …, S_{count-1,count-1}` at one point, built ring by ring.
pub fn quadratic_sums_at(s: &Spectrum2D, x: f64, y: f64, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    check_order(count - 1, s.max_square_order())?;
    let top = (count - 1) as i64;
    let ex: Vec<Complex64> = (-top..=top)
        .map(|a| Complex64::new((a as f64 * x).cos(), (a as f64 * x).sin()))
        .collect();
    let ey: Vec<Complex64> = (-top..=top)
        .map(|b| Complex64::new((b as f64 * y).cos(), (b as f64 * y).sin()))
        .collect();
    let e = |tab: &[Complex64], i: i64| tab[(i + top) as usize];
    let term = |a: i64, b: i64| s.coeff(a, b) * e(&ex, a) * e(&ey, b);

    let mut out = Vec::with_capacity(count);
    let mut total = term(0, 0).re;
    out.push(total);
    for k in 1..=top {
        let mut ring = ZERO;
        for b in -k..=k {
            ring += term(-k, b);
            ring += term(k, b);
        }
        for a in -k + 1..k {
            ring += term(a, -k);
            ring += term(a, k);
        }
        total += ring.re;
        out.push(total);
    }
    Ok(out)
}

/// Every quadratic sum `S_kk`, `k = 0..count`, at every primal node.
///
/// Stored point-major so the sequence `(S_kk(x_j, y_l))_k` at one point is a
/// contiguous slice.
#[derive(Debug, Clone)]
pub struct QuadraticLadder {
    grid: PeriodicGrid,
    count: usize,
    sums: Vec<f64>,
}

impl QuadraticLadder {
    pub fn new(s: &Spectrum2D, grid: PeriodicGrid, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidParameter(
                "ladder needs at least one order".into(),
            ));
        }
        check_order(count - 1, s.max_square_order())?;
        let g = grid.size();
        let points = g * g;
        let tw = grid.twiddles();
        let mut sums = vec![0.0; points * count];
        let mut current = vec![s.coeff(0, 0).re; points];
        for p in 0..points {
            sums[p * count] = current[p];
        }

        let mut upper = vec![ZERO; g];
        let mut lower = vec![ZERO; g];
        let mut right = vec![ZERO; g];
        let mut left = vec![ZERO; g];
        for k in 1..count as i64 {
            // Rows a = ±k over the full |b| ≤ k, columns b = ±k over |a| < k.
            for l in 0..g {
                let (mut u, mut d) = (ZERO, ZERO);
                for b in -k..=k {
                    let e = tw.phase(b, l);
                    u += s.coeff(k, b) * e;
                    d += s.coeff(-k, b) * e;
                }
                upper[l] = u;
                lower[l] = d;
            }
            for j in 0..g {
                let (mut r, mut q) = (ZERO, ZERO);
                for a in -k + 1..k {
                    let e = tw.phase(a, j);
                    r += s.coeff(a, k) * e;
                    q += s.coeff(a, -k) * e;
                }
                right[j] = r;
                left[j] = q;
            }
            for j in 0..g {
                let (ep, em) = (tw.phase(k, j), tw.phase(-k, j));
                for l in 0..g {
                    let ring = ep * upper[l]
                        + em * lower[l]
                        + tw.phase(k, l) * right[j]
                        + tw.phase(-k, l) * left[j];
                    let p = j * g + l;
                    current[p] += ring.re;
                    sums[p * count + k as usize] = current[p];
                }
            }
        }
        Ok(Self { grid, count, sums })
    }

    #[inline]
    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    /// Number of orders stored, `S_00` through `S_{count-1,count-1}`.
    #[inline]
    pub fn count(&self) -> usize {
        self.count
    }

    /// The sequence of quadratic sums at `(x_j, y_l)`.
    #[inline]
    pub fn sequence(&self, j: usize, l: usize) -> &[f64] {
        let p = j * self.grid.size() + l;
        &self.sums[p * self.count..(p + 1) * self.count]
    }

    /// `S_kk` as a field.
    pub fn field(&self, k: usize) -> SampledField2D {
        let values = (0..self.grid.size() * self.grid.size())
            .map(|p| self.sums[p * self.count + k])
            .collect();
        SampledField2D::from_parts(self.grid, values)
    }
}
