//! BMO norms, Luxemburg norms and summability means.

mod bmo;
mod means;
mod orlicz;

pub use bmo::{
    bmo_norm_step, bmo_of_partial_sums, bmo_prefix_norms, bmo_sequence, BmoOptions, BmoResult,
    StepSequence,
};
pub use means::{
    b_functional, b_functional_sequence, john_nirenberg_ratio, mean_identity, mean_of_deviations,
    orlicz_mean_identity_check, strong_mean_1d, summability_mean_2d, MeanIdentity, Modulus, Psi,
};
pub use orlicz::{
    doubling_ratio, luxemburg_norm, luxemburg_norm_field, luxemburg_norm_unit, modular,
    orlicz_properties_check, Delta2, OrliczReport, YoungFunction,
};
