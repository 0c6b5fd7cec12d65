//! Exhaustive oracles and certificate verifiers used as ground truth.

mod brute;
mod limits;
mod verify;

pub use brute::{
    brute_best_subfamily, brute_colorful, brute_density, brute_min_witness, brute_pierce,
    brute_product_scan, ColorfulReport, Combinations,
};
pub use limits::{OracleLimits, LIMITS_ENV};
pub use verify::{
    verify_chain, verify_colorful, verify_fractional, verify_hypothesis_failure, verify_kplus1,
    verify_pairs, verify_piercing, verify_strong, verify_weak,
};
