//! Random-matrix and character models: Monte Carlo estimators, the exact
//! permutation-sum formula, geodesic counting and Weingarten integration.

mod montecarlo;
mod permutations;
mod weingarten;

pub use montecarlo::{
    bessel_word_moment, dw_model_mc, dw_model_mc_traces, ginibre_from, hns_character_mc,
    product_model_mc, product_model_mc_multi, sample_ginibre, splitmix64, trial_rng,
    ComplexMatrix, MCReport,
};
pub use permutations::{
    for_each_permutation_with_cycles_divisible_by, geodesic_count, glm_exact, DSpec,
    LaurentPolynomial, Permutation, MAX_PERMUTATION_SIZE,
};
pub use weingarten::{
    weingarten_finite_n, WeingartenResult, CONDITION_LIMIT, EXACT_FALLBACK_DIMENSION,
};
