//! Library behind the `helly` binary: the instance and certificate formats and
//! the `gen`, `run`, `verify` and `density` commands.

pub mod certificate;
pub mod check;
pub mod instance;
pub mod run;

use std::fmt;

use helly_core::constructions::{generate, GenSpec};
use helly_core::fractional::{binomial, count_intersecting};
use helly_core::{MonotoneProperty, Rational};
use serde::{Deserialize, Serialize};

pub use certificate::{Algorithm, Certificate, Outcome, Params, Status};
pub use check::{verify, VerifyOptions};
pub use instance::{canonical_json, Instance, Loaded};
pub use run::{resolve_params, run, RawParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_FOUND: i32 = 3;
pub const EXIT_HYPOTHESIS_FAILED: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;

/// An error carrying the process exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(msg: impl fmt::Display) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: msg.to_string(),
        }
    }

    pub fn mismatch(msg: impl fmt::Display) -> Self {
        Failure {
            code: EXIT_MISMATCH,
            message: msg.to_string(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

pub fn gen_instance(spec: &GenSpec) -> Result<Instance, Failure> {
    let generated = generate(spec).map_err(Failure::usage)?;
    Ok(Instance::from_generated(spec, &generated))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub instance_hash: String,
    pub property: MonotoneProperty,
    pub n: usize,
    pub r: usize,
    pub intersecting: u128,
    pub total: u128,
    pub density: Rational,
}

/// Exact fraction of `r`-subsets whose intersection satisfies the property.
pub fn density_report(
    loaded: &Loaded,
    r: usize,
    property: Option<MonotoneProperty>,
) -> Result<DensityReport, Failure> {
    let n = loaded.family.len();
    if r == 0 || r > n {
        return Err(Failure::usage(format!("r must be in 1..={n}, got {r}")));
    }
    let property = property.unwrap_or_else(|| loaded.instance.effective_property());
    let intersecting = count_intersecting(&loaded.family, r, &property).map_err(Failure::usage)?;
    let total =
        binomial(n as u128, r as u128).ok_or_else(|| Failure::usage("binomial overflow"))?;
    let density = Rational::from_counts(intersecting, total)
        .ok_or_else(|| Failure::usage("density overflow"))?;
    Ok(DensityReport {
        instance_hash: loaded.hash.clone(),
        property,
        n,
        r,
        intersecting,
        total,
        density,
    })
}
