//! Empirical constants in the weak-type and `L log L` bounds for the
//! conjugate function. These are measurements, not checks.

use crate::field::SampledField1D;

use super::pv::{pv_transform, PvKernel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakTypeSample {
    pub lambda: f64,
    /// `|{x : |f̃(x)| > λ}|` by node counting.
    pub measure: f64,
    /// `λ·measure / ‖f‖₁`.
    pub ratio: f64,
}

/// Kolmogorov ratios `λ·|{|f̃| > λ}| / ‖f‖₁` for each level in `lambdas`.
/// Returns an empty list when `‖f‖₁ = 0`.
pub fn kolmogorov_ratio(f: &SampledField1D, lambdas: &[f64]) -> Vec<WeakTypeSample> {
    let norm = f.l1_norm();
    if norm == 0.0 {
        return Vec::new();
    }
    let conj = pv_transform(f, PvKernel::Conjugate);
    let h = f.grid().cell_width();
    lambdas
        .iter()
        .map(|&lambda| {
            let count = conj.values().iter().filter(|v| v.abs() > lambda).count();
            let measure = count as f64 * h;
            WeakTypeSample {
                lambda,
                measure,
                ratio: lambda * measure / norm,
            }
        })
        .collect()
}

/// `‖f̃‖₁ / (1 + ∫|f| log⁺|f|)`.
pub fn zygmund_ratio(f: &SampledField1D) -> f64 {
    let h = f.grid().cell_width();
    let llogl: f64 = f
        .values()
        .iter()
        .map(|v| {
            let a = v.abs();
            if a > 1.0 {
                a * a.ln()
            } else {
                0.0
            }
        })
        .sum::<f64>()
        * h;
    pv_transform(f, PvKernel::Conjugate).l1_norm() / (1.0 + llogl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;

    #[test]
    fn cosine_ratios() {
        let g = make_grid(256).unwrap();
        let f = SampledField1D::from_fn(g, |x| x.cos()).unwrap();
        let samples = kolmogorov_ratio(&f, &[0.5, 2.0]);
        // |{|sin x| > ½}| = 4π/3 and ‖cos‖₁ = 4.
        assert!((samples[0].measure - 4.0 * std::f64::consts::PI / 3.0).abs() < 0.05);
        assert_eq!(samples[1].measure, 0.0);
        // ‖sin‖₁ / (1 + 0) = 4.
        assert!((zygmund_ratio(&f) - 4.0).abs() < 1e-3);
    }

    #[test]
    fn zero_field() {
        let g = make_grid(16).unwrap();
        let f = SampledField1D::from_fn(g, |_| 0.0).unwrap();
        assert!(kolmogorov_ratio(&f, &[1.0]).is_empty());
        assert_eq!(zygmund_ratio(&f), 0.0);
    }
}
