//! Dirichlet and conjugate Dirichlet kernels.
//!
//! `D_n(t)  = ½ + Σ_{k=1}^n cos kt = sin((n+½)t) / (2 sin(t/2))`
//! `D̃_n(t) = Σ_{k=1}^n sin kt     = (cos(t/2) − cos((n+½)t)) / (2 sin(t/2))`
//!
//! At `t ≡ 0 (mod 2π)` the removable singularities are replaced by the
//! limits `D_n(0) = n + ½` and `D̃_n(0) = 0`.

use std::f64::consts::PI;

/// `(D_n(t), D̃_n(t))` from the sine-ratio closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirichletPair {
    pub dirichlet: f64,
    pub conjugate: f64,
}

fn reduce(t: f64) -> f64 {
    t - 2.0 * PI * (t / (2.0 * PI)).round()
}

pub fn dirichlet_kernels(n: usize, t: f64) -> DirichletPair {
    let t = reduce(t);
    let half = n as f64 + 0.5;
    if t == 0.0 {
        return DirichletPair {
            dirichlet: half,
            conjugate: 0.0,
        };
    }
    let denom = 2.0 * (0.5 * t).sin();
    DirichletPair {
        dirichlet: (half * t).sin() / denom,
        conjugate: ((0.5 * t).cos() - (half * t).cos()) / denom,
    }
}

/// `D_n(t) = sin(nt)/(2 tan(t/2)) + cos(nt)/2`.
pub fn dirichlet_tangent_form(n: usize, t: f64) -> f64 {
    let t = reduce(t);
    if t == 0.0 {
        return n as f64 + 0.5;
    }
    let nt = n as f64 * t;
    nt.sin() / (2.0 * (0.5 * t).tan()) + 0.5 * nt.cos()
}

/// `D̃_n(t) = 1/(2 tan(t/2)) + sin(nt)/2 − cos(nt)/(2 tan(t/2))`.
pub fn conjugate_dirichlet_tangent_form(n: usize, t: f64) -> f64 {
    let t = reduce(t);
    if t == 0.0 {
        return 0.0;
    }
    let nt = n as f64 * t;
    let cot = 1.0 / (2.0 * (0.5 * t).tan());
    cot + 0.5 * nt.sin() - nt.cos() * cot
}
