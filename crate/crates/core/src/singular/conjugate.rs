//! Conjugate function, conjugate partial sums and the operator `U_n`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{max_abs_diff, SampledField1D};
use crate::grid::PeriodicGrid;
use crate::spectrum::{analyze_1d, synthesize_grid_1d, Spectrum1D};

use super::check_order;
use super::pv::{pv_transform, sine_integral, PvKernel};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn isgn(k: i64) -> Complex64 {
    I * k.signum() as f64
}

/// Multiplier of `U_n` on `e^{ikx}`: `i·sgn(k)` for `|k| > n`, half that at
/// `|k| = n`, zero below.
pub(crate) fn u_multiplier(n: usize, k: i64) -> Complex64 {
    let m = k.unsigned_abs() as usize;
    let weight = match m.cmp(&n) {
        std::cmp::Ordering::Greater => 1.0,
        std::cmp::Ordering::Equal => 0.5,
        std::cmp::Ordering::Less => 0.0,
    };
    isgn(k) * weight
}

/// Multiplier of the sine-modulated kernel `sin(nt)/(2tan(t/2))`:
/// `1` for `|k| < n`, `½` at `|k| = n > 0`, zero above.
pub(crate) fn w_multiplier(n: usize, k: i64) -> f64 {
    let m = k.unsigned_abs() as usize;
    if m < n {
        1.0
    } else if m == n && n > 0 {
        0.5
    } else {
        0.0
    }
}

/// Coefficients `c_k ↦ i·sgn(k)·c_k`.
pub fn conjugate_function(s: &Spectrum1D) -> Spectrum1D {
    s.multiply(isgn)
}

/// `S̃_n(x) = Σ_{1≤|k|≤n} i·sgn(k)·c_k·e^{ikx}` on the primal nodes of `grid`.
pub fn conjugate_partial_sum(
    s: &Spectrum1D,
    n: usize,
    grid: PeriodicGrid,
) -> Result<SampledField1D> {
    if n > s.max_frequency() {
        return Err(Error::OrderOutOfRange {
            order: n,
            max: s.max_frequency(),
        });
    }
    Ok(synthesize_grid_1d(s, n, grid, isgn))
}

/// `U_n f` by principal-value quadrature.
pub fn u_transform(f: &SampledField1D, n: usize) -> Result<SampledField1D> {
    check_order(n, f.grid())?;
    Ok(pv_transform(f, PvKernel::Cosine(n)))
}

/// `U_n f` from the coefficients.
pub fn u_transform_spectral(
    s: &Spectrum1D,
    n: usize,
    grid: PeriodicGrid,
) -> Result<SampledField1D> {
    let max = s.max_frequency();
    if n > max {
        return Err(Error::OrderOutOfRange { order: n, max });
    }
    Ok(synthesize_grid_1d(s, max, grid, |k| u_multiplier(n, k)))
}

/// Sup-norm defect of `S̃_n = f̃ + (1/2π)∫f(x+t)sin(nt)dt − U_n f`.
///
/// `S̃_n` and `f̃` come from the analyzed spectrum, the other two terms from
/// quadrature on the samples.
pub fn partial_sum_residual(f: &SampledField1D, n: usize) -> Result<f64> {
    let grid = f.grid();
    check_order(n, grid)?;
    let s = analyze_1d(f, grid.max_frequency())?;
    let partial = conjugate_partial_sum(&s, n, grid)?;
    let conj = synthesize_grid_1d(&conjugate_function(&s), grid.max_frequency(), grid, |_| {
        Complex64::new(1.0, 0.0)
    });
    let sine = sine_integral(f, n);
    let u = u_transform(f, n)?;
    let rhs: Vec<f64> = conj
        .values()
        .iter()
        .zip(sine.values())
        .zip(u.values())
        .map(|((c, s), u)| c + s - u)
        .collect();
    Ok(max_abs_diff(partial.values(), &rhs))
}
