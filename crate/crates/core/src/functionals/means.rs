//! Strong and exponential summability means of partial sums, and the
//! Luxemburg functional of partial-sum step functions.
//!
//! The reference value `f(x)` is always the full-band synthesis of the
//! stored spectrum, so `S_k − f` vanishes identically once `k` reaches the
//! stored bandwidth.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::spectrum::{Spectrum1D, Spectrum2D};
use crate::sums::{partial_sum_1d, quadratic_sums_at, rectangular_sum};

use super::bmo::{bmo_norm_step, BmoOptions, StepSequence};
use super::orlicz::{luxemburg_norm, YoungFunction};

/// An increasing `ψ` with `ψ(0) = 0`, used for general summability means.
#[derive(Clone)]
pub struct Psi {
    name: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for Psi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Psi").field("name", &self.name).finish()
    }
}

impl Psi {
    /// Checks `ψ(0) = 0` and strict increase on a grid of `[0, 20]`.
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let psi = Self {
            name: name.into(),
            f: Arc::new(f),
        };
        let fail = |reason: String| Error::InvalidFunction {
            name: psi.name.clone(),
            reason,
        };
        let at0 = (psi.f)(0.0);
        if at0.abs() > 1e-12 {
            return Err(fail(format!("psi(0) = {at0}")));
        }
        let mut prev = at0;
        for i in 1..=400 {
            let t = i as f64 * 0.05;
            let v = (psi.f)(t);
            if !v.is_finite() {
                return Err(fail(format!("non-finite value at t = {t}")));
            }
            if v <= prev {
                return Err(fail(format!("not increasing near t = {t}")));
            }
            prev = v;
        }
        Ok(psi)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }
}

/// What is averaged over the deviations `|S_k − f|`.
#[derive(Debug, Clone)]
pub enum Modulus {
    /// `t^p`, `p > 0`.
    Power(f64),
    /// `e^{A t} − 1`, `A > 0`.
    Exponential(f64),
    Young(YoungFunction),
    General(Psi),
}

impl Modulus {
    pub fn validate(&self) -> Result<()> {
        match self {
            Modulus::Power(p) if !(*p > 0.0 && p.is_finite()) => Err(Error::InvalidParameter(
                format!("power must be positive, got {p}"),
            )),
            Modulus::Exponential(a) if !(*a > 0.0 && a.is_finite()) => {
                Err(Error::InvalidParameter(format!(
                    "exponential coefficient must be positive, got {a}"
                )))
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Modulus::Power(p) => t.powf(*p),
            Modulus::Exponential(a) => (a * t).exp_m1(),
            Modulus::Young(m) => m.eval(t),
            Modulus::General(psi) => psi.eval(t),
        }
    }
}

/// `(1/len)·Σ_k kind(|sums[k] − reference|)`.
pub fn mean_of_deviations(sums: &[f64], reference: f64, kind: &Modulus) -> f64 {
    let total: f64 = sums.iter().map(|s| kind.eval((s - reference).abs())).sum();
    total / sums.len() as f64
}

/// `(1/(n+1))·Σ_{k=0}^n kind(|S_k(x) − f(x)|)`.
pub fn strong_mean_1d(s: &Spectrum1D, x: f64, n: usize, kind: &Modulus) -> Result<f64> {
    kind.validate()?;
    let max = s.max_frequency();
    if n > max {
        return Err(Error::OrderOutOfRange { order: n, max });
    }
    let reference = partial_sum_1d(s, max, x)?;
    let sums = (0..=n)
        .map(|k| partial_sum_1d(s, k, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(mean_of_deviations(&sums, reference, kind))
}

fn check_square_order(s: &Spectrum2D, m: usize) -> Result<()> {
    let max = s.max_square_order();
    if m > max {
        Err(Error::OrderOutOfRange { order: m, max })
    } else {
        Ok(())
    }
}

fn full_band(s: &Spectrum2D, x: f64, y: f64) -> Result<f64> {
    let (mm, nn) = s.max_frequencies();
    rectangular_sum(s, mm, nn, x, y)
}

/// `(1/(m+1))·Σ_{n=0}^m kind(|S_nn(x, y) − f(x, y)|)`.
pub fn summability_mean_2d(
    s: &Spectrum2D,
    x: f64,
    y: f64,
    m: usize,
    kind: &Modulus,
) -> Result<f64> {
    kind.validate()?;
    check_square_order(s, m)?;
    let sums = quadratic_sums_at(s, x, y, m + 1)?;
    Ok(mean_of_deviations(&sums, full_band(s, x, y)?, kind))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanIdentity {
    /// `(1/(n+1))·Σ Ψ(A|S_kk − f|)`.
    pub average: f64,
    /// `∫₀¹ Ψ(A·Σ_k |S_kk − f|·𝕀_{δ_k^n}(t)) dt`, integrated cell by cell.
    pub step_integral: f64,
    pub residual: f64,
}

/// Both sides of the step-function identity for the exponential mean.
pub fn orlicz_mean_identity_check(
    s: &Spectrum2D,
    x: f64,
    y: f64,
    n: usize,
    a: f64,
) -> Result<MeanIdentity> {
    Modulus::Exponential(a).validate()?;
    check_square_order(s, n)?;
    let sums = quadratic_sums_at(s, x, y, n + 1)?;
    let reference = full_band(s, x, y)?;
    Ok(mean_identity(&sums, reference, a))
}

/// [`orlicz_mean_identity_check`] on a precomputed sequence of sums.
pub fn mean_identity(sums: &[f64], reference: f64, a: f64) -> MeanIdentity {
    let average = mean_of_deviations(sums, reference, &Modulus::Exponential(a));
    let cells = sums.len() as f64;
    let step_integral = sums
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let width = (k + 1) as f64 / cells - k as f64 / cells;
            width * (a * (s - reference).abs()).exp_m1()
        })
        .sum::<f64>();
    MeanIdentity {
        average,
        step_integral,
        residual: (average - step_integral).abs(),
    }
}

/// `max_{n<len} ‖Σ_{k≤n} ξ_k 𝕀_{δ_k^n}‖_(Ψ)` for `Ψ(t) = e^t − 1`.
pub fn b_functional_sequence(values: &[f64]) -> f64 {
    let psi = YoungFunction::exp_minus_one();
    (1..=values.len())
        .map(|len| luxemburg_norm(&values[..len], &vec![1.0 / len as f64; len], &psi))
        .fold(0.0, f64::max)
}

/// `𝔅f(x, y)` truncated to `S_00, …, S_{N−1,N−1}`.
pub fn b_functional(s: &Spectrum2D, x: f64, y: f64, terms: usize) -> Result<f64> {
    if terms == 0 {
        return Err(Error::EmptySequence);
    }
    check_square_order(s, terms - 1)?;
    Ok(b_functional_sequence(&quadratic_sums_at(s, x, y, terms)?))
}

/// `‖ξ‖_(Ψ) / ‖ξ‖_bmo` for one step function; `0` for the zero sequence.
pub fn john_nirenberg_ratio(seq: &StepSequence, opts: &BmoOptions) -> f64 {
    let values = seq.values();
    let bmo = bmo_norm_step(seq, opts).norm;
    if bmo == 0.0 {
        return 0.0;
    }
    let w = vec![1.0 / values.len() as f64; values.len()];
    luxemburg_norm(values, &w, &YoungFunction::exp_minus_one()) / bmo
}
