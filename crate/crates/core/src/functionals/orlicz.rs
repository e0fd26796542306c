//! Young functions and Luxemburg norms.
//!
//! A distribution is a list of values with nonnegative weights (their
//! measures); `F(λ) = Σ w_i·M(|f_i|/λ)` is nonincreasing in `λ` and the
//! norm is `inf{λ > 0 : F(λ) ≤ 1}`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::SampledField2D;

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Kind {
    /// `t·log⁺ t`
    LLogL,
    /// `e^{a t} − 1`
    Exponential(f64),
    /// `t^p`
    Power(f64),
    Custom(Evaluator),
}

/// `M(2t) ≤ c·M(t)` for `t > t0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Delta2 {
    pub c: f64,
    pub t0: f64,
}

#[derive(Clone)]
pub struct YoungFunction {
    name: String,
    kind: Kind,
    delta2: Option<Delta2>,
}

impl fmt::Debug for YoungFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("YoungFunction")
            .field("name", &self.name)
            .field("delta2", &self.delta2)
            .finish()
    }
}

/// Check grid for the Young-function axioms.
fn check_grid() -> Vec<f64> {
    (0..=400).map(|i| i as f64 * 0.05).collect()
}

impl YoungFunction {
    /// `Φ(t) = t·log⁺ t` (natural logarithm).
    pub fn llogl() -> Self {
        Self {
            name: "t log+ t".into(),
            kind: Kind::LLogL,
            delta2: Some(Delta2 {
                c: 4.0,
                t0: std::f64::consts::E,
            }),
        }
    }

    /// `Ψ(t) = e^t − 1`.
    pub fn exp_minus_one() -> Self {
        Self::exponential(1.0).expect("a = 1 is valid")
    }

    /// `e^{a t} − 1`, `a > 0`.
    pub fn exponential(a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "exponential rate must be positive, got {a}"
            )));
        }
        Ok(Self {
            name: format!("exp({a} t) - 1"),
            kind: Kind::Exponential(a),
            delta2: None,
        })
    }

    /// `t^p`, `p ≥ 1`.
    pub fn power(p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "power must be at least 1, got {p}"
            )));
        }
        Ok(Self {
            name: format!("t^{p}"),
            kind: Kind::Power(p),
            delta2: Some(Delta2 {
                c: 2f64.powf(p),
                t0: 0.0,
            }),
        })
    }

    /// A user-supplied function, accepted after the axiom check.
    pub fn custom(
        name: impl Into<String>,
        m: impl Fn(f64) -> f64 + Send + Sync + 'static,
        delta2: Option<Delta2>,
    ) -> Result<Self> {
        let young = Self {
            name: name.into(),
            kind: Kind::Custom(Arc::new(m)),
            delta2,
        };
        young.validate()?;
        Ok(young)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn delta2(&self) -> Option<Delta2> {
        self.delta2
    }

    /// `M(t)` for `t ≥ 0`; may return `+∞` on overflow.
    pub fn eval(&self, t: f64) -> f64 {
        match &self.kind {
            Kind::LLogL => {
                if t > 1.0 {
                    t * t.ln()
                } else {
                    0.0
                }
            }
            Kind::Exponential(a) => (a * t).exp_m1(),
            Kind::Power(p) => t.powf(*p),
            Kind::Custom(m) => m(t),
        }
    }

    /// `M(0) = 0`, and `M` finite, nondecreasing and midpoint-convex on a
    /// sampled grid of `[0, 20]`.
    ///
    /// The small-argument condition `M(t)/t → 0` is not checked; `e^t − 1`
    /// violates it and is still accepted.
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Error::InvalidFunction {
            name: self.name.clone(),
            reason,
        };
        if self.eval(0.0) != 0.0 {
            return Err(fail(format!("M(0) = {}", self.eval(0.0))));
        }
        let ts = check_grid();
        let ms: Vec<f64> = ts.iter().map(|&t| self.eval(t)).collect();
        if let Some(i) = ms.iter().position(|m| !m.is_finite()) {
            return Err(fail(format!("non-finite value at t = {}", ts[i])));
        }
        for i in 1..ms.len() {
            if ms[i] < ms[i - 1] {
                return Err(fail(format!("decreasing near t = {}", ts[i])));
            }
        }
        for i in 1..ms.len() - 1 {
            let slack = 1e-12 * ms[i + 1].abs().max(1.0);
            if 2.0 * ms[i] > ms[i - 1] + ms[i + 1] + slack {
                return Err(fail(format!("not convex near t = {}", ts[i])));
            }
        }
        Ok(())
    }
}

/// `Σ w·M(|f|/λ)`; overflow yields `+∞`.
pub fn modular(values: &[f64], weights: &[f64], m: &YoungFunction, lambda: f64) -> f64 {
    values
        .iter()
        .zip(weights)
        .map(|(v, w)| {
            if *w == 0.0 {
                0.0
            } else {
                w * m.eval(v.abs() / lambda)
            }
        })
        .sum()
}

const MAX_ITER: usize = 200;
const REL_TOL: f64 = 1e-12;

/// Luxemburg norm of the weighted distribution.
///
/// Brackets from `λ = max|f|`, doubling until feasible and halving until
/// infeasible, then bisects to relative width `1e−12`. The returned value
/// is the feasible end of the final bracket.
pub fn luxemburg_norm(values: &[f64], weights: &[f64], m: &YoungFunction) -> f64 {
    assert_eq!(
        values.len(),
        weights.len(),
        "values and weights differ in length"
    );
    let top = values
        .iter()
        .zip(weights)
        .filter(|(_, w)| **w > 0.0)
        .fold(0.0f64, |acc, (v, _)| acc.max(v.abs()));
    if top == 0.0 {
        return 0.0;
    }
    let feasible = |lambda: f64| {
        let f = modular(values, weights, m, lambda);
        f.is_finite() && f <= 1.0
    };
    let mut hi = top;
    let mut steps = 0;
    while !feasible(hi) && steps < 2000 {
        hi *= 2.0;
        steps += 1;
    }
    let mut lo = hi * 0.5;
    steps = 0;
    while feasible(lo) && steps < 2000 {
        hi = lo;
        lo *= 0.5;
        steps += 1;
    }
    for _ in 0..MAX_ITER {
        if hi - lo <= REL_TOL * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Norm on `[0, 1]` with every sample carrying measure `1/len`.
pub fn luxemburg_norm_unit(values: &[f64], m: &YoungFunction) -> f64 {
    let w = vec![1.0 / values.len() as f64; values.len()];
    luxemburg_norm(values, &w, m)
}

/// Norm on `𝕋²` with cell measure `(2π/G)²`.
pub fn luxemburg_norm_field(f: &SampledField2D, m: &YoungFunction) -> f64 {
    let w = vec![f.cell_measure(); f.values().len()];
    luxemburg_norm(f.values(), &w, m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrliczReport {
    pub norm: f64,
    /// `∫ M(|f|)` of the input.
    pub modular: f64,
    /// Whether `‖g‖ ≤ 1 ⇒ ∫M(|g|) ≤ ‖g‖` held for `g = s·f/‖f‖`,
    /// `s ∈ {¼, ½, ¾, 1}`.
    pub d1_holds: bool,
    /// `(½(1 + ∫M(|g|)), 1 + ∫M(|g|))` for `g = f/‖f‖`.
    pub d3_bounds: (f64, f64),
    /// Norm of `f/‖f‖` as recomputed.
    pub unit_norm: f64,
    pub d3_holds: bool,
    /// Largest relative defect of `‖c·f‖ = |c|·‖f‖` over random `c`.
    pub homogeneity_defect: f64,
    /// Whether `|g| ≤ |f|` implied `‖g‖ ≤ ‖f‖` on random minorants.
    pub monotone: bool,
    /// `(|E|, ‖𝕀_E‖)` for `|E| = 4^{−k}·|X|`, `k = 1..=6`.
    pub indicator_norms: Vec<(f64, f64)>,
}

/// Numerical checks of the basic Luxemburg-norm properties on one
/// distribution. `f` must not vanish identically.
pub fn orlicz_properties_check(
    values: &[f64],
    weights: &[f64],
    m: &YoungFunction,
    rng: &mut impl Rng,
) -> Result<OrliczReport> {
    let norm = luxemburg_norm(values, weights, m);
    if norm == 0.0 {
        return Err(Error::InvalidParameter(
            "properties need a nonzero function".into(),
        ));
    }
    let tol = 1e-9;
    let scaled = |s: f64| -> Vec<f64> { values.iter().map(|v| s * v).collect() };

    let mut d1_holds = true;
    for s in [0.25, 0.5, 0.75, 1.0] {
        let g = scaled(s / norm);
        let ng = luxemburg_norm(&g, weights, m);
        if ng <= 1.0 && modular(&g, weights, m, 1.0) > ng * (1.0 + tol) {
            d1_holds = false;
        }
    }

    let unit = scaled(1.0 / norm);
    let unit_norm = luxemburg_norm(&unit, weights, m);
    let mu = modular(&unit, weights, m, 1.0);
    let d3_bounds = (0.5 * (1.0 + mu), 1.0 + mu);
    let d3_holds = d3_bounds.0 <= unit_norm * (1.0 + tol) && unit_norm <= d3_bounds.1 * (1.0 + tol);

    let mut homogeneity_defect = 0.0f64;
    let mut monotone = true;
    for _ in 0..8 {
        let c: f64 = rng.gen_range(-5.0..5.0);
        if c.abs() > 1e-3 {
            let nc = luxemburg_norm(&scaled(c), weights, m);
            homogeneity_defect =
                homogeneity_defect.max((nc - c.abs() * norm).abs() / (c.abs() * norm));
        }
        let minorant: Vec<f64> = values.iter().map(|v| v * rng.gen_range(0.0..1.0)).collect();
        if luxemburg_norm(&minorant, weights, m) > norm * (1.0 + 1e-12) {
            monotone = false;
        }
    }

    let total: f64 = weights.iter().sum();
    let indicator_norms = (1..=6)
        .map(|k| {
            let e = total * 0.25f64.powi(k);
            (e, luxemburg_norm(&[1.0, 0.0], &[e, total - e], m))
        })
        .collect();

    Ok(OrliczReport {
        norm,
        modular: modular(values, weights, m, 1.0),
        d1_holds,
        d3_bounds,
        unit_norm,
        d3_holds,
        homogeneity_defect,
        monotone,
        indicator_norms,
    })
}

/// Largest `M(2t)/M(t)` over a grid of `t ∈ (t_min, t_max]`.
pub fn doubling_ratio(m: &YoungFunction, t_min: f64, t_max: f64, points: usize) -> f64 {
    (1..=points)
        .map(|i| {
            let t = t_min + (t_max - t_min) * i as f64 / points as f64;
            m.eval(2.0 * t) / m.eval(t)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    /// Root of `t ln t = 1` by Newton's method.
    fn t_star() -> f64 {
        let mut t = 1.5f64;
        for _ in 0..50 {
            t -= (t * t.ln() - 1.0) / (t.ln() + 1.0);
        }
        t
    }

    #[test]
    fn closed_forms() {
        let psi = YoungFunction::exp_minus_one();
        let phi = YoungFunction::llogl();
        let c = 2.5;
        let constant = vec![c; 40];
        assert!(rel(luxemburg_norm_unit(&constant, &psi), c / 2f64.ln()) < 1e-11);
        assert!(rel(luxemburg_norm_unit(&constant, &phi), c / t_star()) < 1e-11);
        assert!((t_star() - 1.7632228).abs() < 1e-7);

        let mut indicator = vec![0.0; 40];
        indicator[..10].fill(1.0);
        assert!(rel(luxemburg_norm_unit(&indicator, &psi), 1.0 / 5f64.ln()) < 1e-11);
    }

    #[test]
    fn zero_and_overflow() {
        let psi = YoungFunction::exp_minus_one();
        assert_eq!(luxemburg_norm_unit(&[0.0; 5], &psi), 0.0);
        let big = [1e6, 0.0, 0.0, 0.0];
        let n = luxemburg_norm_unit(&big, &psi);
        // (1/4)(e^{1e6/λ} − 1) = 1.
        assert!(rel(n, 1e6 / 5f64.ln()) < 1e-11);
    }

    #[test]
    fn validation() {
        assert!(YoungFunction::llogl().validate().is_ok());
        assert!(YoungFunction::exp_minus_one().validate().is_ok());
        assert!(YoungFunction::power(2.0).unwrap().validate().is_ok());
        assert!(YoungFunction::power(0.5).is_err());
        assert!(YoungFunction::exponential(-1.0).is_err());
        assert!(YoungFunction::custom("sqrt", f64::sqrt, None).is_err());
        assert!(YoungFunction::custom("shifted", |t| t + 1.0, None).is_err());
        assert!(YoungFunction::custom("cube", |t| t * t * t, None).is_ok());
    }

    #[test]
    fn delta2_behaviour() {
        let phi = YoungFunction::llogl();
        let d = phi.delta2().unwrap();
        assert!(doubling_ratio(&phi, d.t0, 200.0, 5000) <= d.c);
        let psi = YoungFunction::exp_minus_one();
        assert!(doubling_ratio(&psi, 10.0, 200.0, 5000) > 1e10);
    }

    #[test]
    fn property_report() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let values: Vec<f64> = (0..64)
            .map(|i| ((i * 37 % 64) as f64 / 10.0) - 3.0)
            .collect();
        let weights = vec![1.0 / 64.0; 64];
        for m in [YoungFunction::llogl(), YoungFunction::exp_minus_one()] {
            let r = orlicz_properties_check(&values, &weights, &m, &mut rng).unwrap();
            assert!(r.d1_holds && r.d3_holds && r.monotone, "{}", m.name());
            assert!(r.homogeneity_defect < 1e-10);
            assert!((r.unit_norm - 1.0).abs() < 1e-10);
        }
        let psi = YoungFunction::exp_minus_one();
        let r = orlicz_properties_check(&values, &weights, &psi, &mut rng).unwrap();
        for (k, &(e, n)) in r.indicator_norms.iter().enumerate() {
            assert!(rel(e, 0.25f64.powi(k as i32 + 1)) < 1e-15);
            assert!(rel(n, 1.0 / (1.0 + 4f64.powi(k as i32 + 1)).ln()) < 1e-10);
            if k > 0 {
                assert!(n < r.indicator_norms[k - 1].1);
            }
        }
    }
}
