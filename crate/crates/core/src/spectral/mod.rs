//! Roots of `A(x) = x^k - x^{k-1} - … - 1` and the closed forms built on them.
//!
//! Everything here is specific to the all-ones coefficient vector.

mod asymptotic;
mod binet;
mod durand_kerner;
mod roots;
mod series;

pub use asymptotic::{asymptotic_estimate, dresden_du_escalating, dresden_du_round, n_threshold, Threshold};
pub use binet::{
    basis_binet, basis_coefficients, binet_coefficients, binet_eval, coefficients_for, initials_coefficients,
    sj_coefficients, sj_equivalence_check, BinetCoefficients, EscalatingBinet, Provenance, SjEquivalence,
};
pub use durand_kerner::{
    characteristic_roots, durand_kerner, max_nearest_distance, root_finders, DurandKernerFinder, RootFinder,
    SeriesFinder,
};
pub use roots::{
    all_roots, eval_a, eval_b, eval_b_prime, root_figure_data, secondary_arg_fit, ArgFit, FigureRow, PolishMode,
    RootInvariants, RootSet,
};
pub use series::{principal_root, root_bits, secondary_root, wolfram_epsilon, ResidueSums, MAX_TERMS};
