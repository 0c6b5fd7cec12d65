//! Dispatch from an algorithm name to the library and back to a certificate.

use helly_core::fractional::PierceOutcome;
use helly_core::{
    colorful_select, consistent_chain, fractional_k, fractional_kplus1, fractional_pairs,
    pq_pierce, strong_helly_witness, weak_colorful_helly, HellyError, KPlusOneOptions,
    MonotoneProperty, SearchMode,
};

use crate::certificate::{Algorithm, Certificate, Outcome, Params};
use crate::instance::Loaded;
use crate::Failure;

pub const DEFAULT_CHAIN_TARGET: usize = 3;
pub const DEFAULT_SAMPLES: u64 = 100_000;

/// Raw flag values before they are checked against the algorithm.
#[derive(Debug, Clone, Default)]
pub struct RawParams {
    pub alpha: Option<helly_core::Rational>,
    pub t_override: Option<u64>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub target: Option<usize>,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
}

fn reject(algorithm: Algorithm, flag: &str) -> Failure {
    Failure::usage(format!("--{flag} does not apply to {}", algorithm.name()))
}

/// Fills defaults and rejects flags the algorithm does not read.
pub fn resolve_params(algorithm: Algorithm, raw: &RawParams) -> Result<Params, Failure> {
    let mut params = Params::default();
    let fractional = algorithm.is_fractional();
    if fractional {
        params.alpha = Some(
            raw.alpha
                .ok_or_else(|| Failure::usage("--alpha is required"))?,
        );
        params.mode = Some(match (raw.seed, raw.samples) {
            (None, None) => SearchMode::Exhaustive,
            (seed, samples) => SearchMode::Sampled {
                samples: samples.unwrap_or(DEFAULT_SAMPLES),
                seed: seed.unwrap_or(0),
            },
        });
    } else if raw.alpha.is_some() {
        return Err(reject(algorithm, "alpha"));
    } else if raw.seed.is_some() {
        return Err(reject(algorithm, "seed"));
    } else if raw.samples.is_some() {
        return Err(reject(algorithm, "samples"));
    }
    if algorithm == Algorithm::FractionalK1 {
        params.t_override = raw.t_override;
    } else if raw.t_override.is_some() {
        return Err(reject(algorithm, "t-override"));
    }
    if algorithm == Algorithm::PqPierce {
        params.p = Some(raw.p.ok_or_else(|| Failure::usage("--p is required"))?);
        params.q = Some(raw.q.ok_or_else(|| Failure::usage("--q is required"))?);
    } else if raw.p.is_some() {
        return Err(reject(algorithm, "p"));
    } else if raw.q.is_some() {
        return Err(reject(algorithm, "q"));
    }
    if algorithm == Algorithm::Chain {
        params.target = Some(raw.target.unwrap_or(DEFAULT_CHAIN_TARGET));
    } else if raw.target.is_some() {
        return Err(reject(algorithm, "target"));
    }
    Ok(params)
}

fn missing(params: &Params, what: &str) -> Failure {
    Failure::usage(format!("parameter {what} missing from {params:?}"))
}

/// Runs `algorithm` on the instance. Library errors become usage failures.
pub fn run_outcome(
    loaded: &Loaded,
    algorithm: Algorithm,
    params: &Params,
) -> Result<Outcome, Failure> {
    let family = &loaded.family;
    let prop: MonotoneProperty = loaded.instance.effective_property();
    let mode = params.mode.unwrap_or_default();
    let not_found = |reason: String| Outcome::NotFound { reason };
    let outcome = match algorithm {
        Algorithm::StrongHelly => Outcome::StrongHelly {
            ids: strong_helly_witness(family).map_err(Failure::usage)?,
        },
        Algorithm::Colorful => Outcome::Colorful {
            witness: colorful_select(&loaded.classes()?).map_err(Failure::usage)?,
        },
        Algorithm::WeakColorful => {
            let w = weak_colorful_helly(&loaded.classes()?).map_err(Failure::usage)?;
            Outcome::WeakColorful {
                selection: w.selection,
                pruned: w.pruned.ids().to_vec(),
                original_sizes: w.original_sizes,
            }
        }
        Algorithm::FractionalK => {
            let alpha = params.alpha.ok_or_else(|| missing(params, "alpha"))?;
            match fractional_k(family, &prop, alpha, mode).map_err(Failure::usage)? {
                Some(witness) => Outcome::FractionalK { witness },
                None => not_found(format!(
                    "no P-intersecting tuple in the prefix product at alpha = {alpha}"
                )),
            }
        }
        Algorithm::FractionalK1 => {
            let alpha = params.alpha.ok_or_else(|| missing(params, "alpha"))?;
            let opts = KPlusOneOptions {
                t_override: params.t_override,
                mode,
                ..KPlusOneOptions::default()
            };
            match fractional_kplus1(family, &prop, alpha, opts).map_err(Failure::usage)? {
                Some(witness) => Outcome::FractionalK1 { witness },
                None => not_found("no certified fractional subfamily".to_string()),
            }
        }
        Algorithm::FractionalPairs => {
            let alpha = params.alpha.ok_or_else(|| missing(params, "alpha"))?;
            match fractional_pairs(family, &prop, alpha, mode) {
                Ok(Some(witness)) => Outcome::FractionalPairs { witness },
                Ok(None) => not_found("no P-intersecting tuple in the prefix product".to_string()),
                Err(e @ HellyError::Uncertified { .. }) => not_found(e.to_string()),
                Err(e) => return Err(Failure::usage(e)),
            }
        }
        Algorithm::PqPierce => {
            let p = params.p.ok_or_else(|| missing(params, "p"))?;
            let q = params.q.ok_or_else(|| missing(params, "q"))?;
            match pq_pierce(family, &prop, p, q).map_err(Failure::usage)? {
                PierceOutcome::Pierced(pf) => Outcome::Piercing { family: pf },
                PierceOutcome::HypothesisFailed(subset) => {
                    Outcome::HypothesisFailed { p, q, subset }
                }
            }
        }
        Algorithm::Chain => {
            let target = params.target.ok_or_else(|| missing(params, "target"))?;
            match consistent_chain(family, target).map_err(Failure::usage)? {
                Some(witness) => Outcome::Chain { witness },
                None => not_found(format!("no consistently ordered chain of length {target}")),
            }
        }
    };
    Ok(outcome)
}

pub fn run(loaded: &Loaded, algorithm: Algorithm, params: Params) -> Result<Certificate, Failure> {
    let result = run_outcome(loaded, algorithm, &params)?;
    let violating_subset = match &result {
        Outcome::HypothesisFailed { subset, .. } => Some(subset.clone()),
        _ => None,
    };
    Ok(Certificate {
        algorithm,
        instance_hash: loaded.hash.clone(),
        params,
        property: algorithm
            .uses_property()
            .then(|| loaded.instance.effective_property()),
        status: result.status(),
        result,
        violating_subset,
    })
}
