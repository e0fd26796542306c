//! Numerical kernels for quadratic partial sums of double Fourier series.
//!
//! Functions on the torus are carried as real samples on a uniform grid
//! ([`SampledField1D`], [`SampledField2D`]) and as trapezoid-rule Fourier
//! coefficients ([`Spectrum1D`], [`Spectrum2D`]). On top of those sit
//!
//! * partial sums, Fejér means and quadratic sums ([`sums`]),
//! * principal-value transforms and the operators built from them
//!   ([`singular`]),
//! * BMO norms, Luxemburg norms and summability means ([`functionals`]).
//!
//! Conjugation follows the `f(x+t)` kernel orientation: the conjugate
//! function has multiplier `i·sgn(n)`, so `cos(mx)` maps to `−sin(mx)`.
//! Many references use the opposite sign.

pub mod error;
pub mod field;
pub mod functionals;
pub mod grid;
pub mod kernels;
pub mod singular;
pub mod spectrum;
pub mod sums;

pub use error::{Error, Result};
pub use field::{SampledField1D, SampledField2D};
pub use grid::{make_grid, PeriodicGrid};
pub use kernels::{
    conjugate_dirichlet_tangent_form, dirichlet_kernels, dirichlet_tangent_form, DirichletPair,
};
pub use spectrum::{analyze_1d, analyze_2d, Spectrum1D, Spectrum2D};
pub use sums::{
    cesaro_mean, cesaro_mean_grid, partial_sum_1d, partial_sum_1d_grid, quadratic_sum,
    quadratic_sums_at, rectangular_sum, rectangular_sum_grid, QuadraticLadder,
};
