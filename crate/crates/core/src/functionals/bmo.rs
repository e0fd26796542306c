//! BMO norms of step functions on `[0, 1]`.
//!
//! A sequence `ξ_0..ξ_n` defines `f = Σ ξ_k·𝕀_{δ_k}` with
//! `δ_k = [k/(n+1), (k+1)/(n+1)]`, and
//!
//! ```text
//! ‖f‖_bmo = sup_I (1/|I|)∫_I |f − f_I| + |∫₀¹ f|.
//! ```
//!
//! Mean oscillation is invariant under rescaling, so intervals are handled
//! in cell units. An interval inside one cell has zero oscillation, and an
//! interval spanning cells `i < j` is determined by the covered fraction
//! `α` of cell `i` and `β` of cell `j`. The search takes
//! `α ∈ {1, (r−1)/r, …, 1/r}` and `β ∈ {1/r, …, 1}`; `r = 1` is the
//! breakpoint-aligned search. The result is a lower bound on the true
//! supremum.

use crate::error::{Error, Result};
use crate::spectrum::Spectrum2D;
use crate::sums::quadratic_sums_at;

#[derive(Debug, Clone, PartialEq)]
pub struct StepSequence {
    values: Vec<f64>,
}

impl StepSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `∫₀¹ f`.
    pub fn mean(&self) -> f64 {
        mean(&self.values)
    }
}

/// Mean computed relative to the first value, so constant input returns it
/// unchanged.
fn mean(values: &[f64]) -> f64 {
    let base = values[0];
    let n = values.len() as f64;
    base + values.iter().map(|v| v - base).sum::<f64>() / n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BmoOptions {
    /// Sub-grid points per cell for the endpoint refinement.
    pub refinement: usize,
    /// Cap on the sequence length accepted by [`bmo_sequence`].
    pub max_terms: usize,
}

impl Default for BmoOptions {
    fn default() -> Self {
        Self {
            refinement: 16,
            max_terms: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BmoResult {
    /// Best mean oscillation found.
    pub oscillation: f64,
    /// `|∫₀¹ f|`.
    pub mean_abs: f64,
    pub norm: f64,
    /// Maximizing interval in `[0, 1]`; `(0, 1)` when nothing oscillates.
    pub interval: (f64, f64),
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    oscillation: f64,
    /// Endpoints in cell units.
    a: f64,
    b: f64,
}

/// Best interval whose right endpoint lies in cell `j`, left endpoint in a
/// cell `i < j`.
fn best_ending_in(values: &[f64], j: usize, r: usize) -> Option<Candidate> {
    let rf = r as f64;
    let mut best: Option<Candidate> = None;
    for i in 0..j {
        let base = values[i];
        let dev: Vec<f64> = values[i + 1..j].iter().map(|v| v - base).collect();
        let inner_sum: f64 = dev.iter().sum();
        let inner_len = dev.len() as f64;
        let dj = values[j] - base;
        for p in 0..r {
            let alpha = 1.0 - p as f64 / rf;
            for q in 1..=r {
                let beta = q as f64 / rf;
                let len = alpha + inner_len + beta;
                let m = (inner_sum + beta * dj) / len;
                let mut acc = alpha * m.abs() + beta * (dj - m).abs();
                for d in &dev {
                    acc += (d - m).abs();
                }
                let osc = acc / len;
                if best.is_none_or(|c| osc > c.oscillation) {
                    best = Some(Candidate {
                        oscillation: osc,
                        a: i as f64 + p as f64 / rf,
                        b: j as f64 + beta,
                    });
                }
            }
        }
    }
    best
}

fn finish(values: &[f64], best: Option<Candidate>) -> BmoResult {
    let cells = values.len() as f64;
    let mean_abs = mean(values).abs();
    match best {
        Some(c) if c.oscillation > 0.0 => BmoResult {
            oscillation: c.oscillation,
            mean_abs,
            norm: c.oscillation + mean_abs,
            interval: (c.a / cells, c.b / cells),
        },
        _ => BmoResult {
            oscillation: 0.0,
            mean_abs,
            norm: mean_abs,
            interval: (0.0, 1.0),
        },
    }
}

fn pick(best: Option<Candidate>, next: Option<Candidate>) -> Option<Candidate> {
    match (best, next) {
        (Some(b), Some(n)) if n.oscillation > b.oscillation => Some(n),
        (None, n) => n,
        (b, _) => b,
    }
}

pub fn bmo_norm_step(seq: &StepSequence, opts: &BmoOptions) -> BmoResult {
    let values = seq.values();
    let r = opts.refinement.max(1);
    let mut best = None;
    for j in 1..values.len() {
        best = pick(best, best_ending_in(values, j, r));
    }
    finish(values, best)
}

/// `‖·‖_bmo` of every prefix `ξ_0..ξ_n`, `n = 0..len`.
///
/// The candidate set of a prefix contains that of the previous one, so the
/// search only adds the intervals ending in the new cell.
pub fn bmo_prefix_norms(values: &[f64], opts: &BmoOptions) -> Result<Vec<f64>> {
    let seq = StepSequence::new(values.to_vec())?;
    if seq.len() > opts.max_terms {
        return Err(Error::SequenceTooLong {
            len: seq.len(),
            cap: opts.max_terms,
        });
    }
    let r = opts.refinement.max(1);
    let mut best: Option<Candidate> = None;
    let mut out = Vec::with_capacity(values.len());
    for j in 0..values.len() {
        if j > 0 {
            best = pick(best, best_ending_in(values, j, r));
        }
        out.push(finish(&values[..=j], best).norm);
    }
    Ok(out)
}

/// `BMO[ξ] = max_n ‖Σ_{k≤n} ξ_k 𝕀_{δ_k^n}‖_bmo` over the available prefixes.
pub fn bmo_sequence(values: &[f64], opts: &BmoOptions) -> Result<f64> {
    Ok(bmo_prefix_norms(values, opts)?
        .into_iter()
        .fold(0.0, f64::max))
}

/// `BMO` of `S_00(x, y), …, S_{N−1,N−1}(x, y)`.
pub fn bmo_of_partial_sums(
    s: &Spectrum2D,
    x: f64,
    y: f64,
    terms: usize,
    opts: &BmoOptions,
) -> Result<f64> {
    let max = s.max_square_order();
    if terms == 0 {
        return Err(Error::EmptySequence);
    }
    if terms - 1 > max {
        return Err(Error::OrderOutOfRange {
            order: terms - 1,
            max,
        });
    }
    bmo_sequence(&quadratic_sums_at(s, x, y, terms)?, opts)
}
