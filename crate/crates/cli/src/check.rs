//! Certificate verification.
//!
//! Soundness is re-checked from raw offsets by the oracle verifiers. Unless
//! only soundness is requested, the certificate must also be the canonical one:
//! re-running the algorithm with the recorded parameters reproduces it exactly.

use helly_core::oracle::{
    brute_product_scan, verify_chain, verify_colorful, verify_fractional,
    verify_hypothesis_failure, verify_kplus1, verify_pairs, verify_piercing, verify_strong,
    verify_weak, OracleLimits,
};
use helly_core::{fractional::prefix_size, HellyError, MemberId};

use crate::certificate::{Algorithm, Certificate, Outcome, Params};
use crate::instance::Loaded;
use crate::run::run_outcome;
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyOptions {
    pub soundness_only: bool,
}

/// Dangling ids and malformed data are a failed verification; exceeded
/// oracle gates are a usage error.
fn lift(r: helly_core::Result<bool>) -> Result<bool, Failure> {
    match r {
        Ok(b) => Ok(b),
        Err(e @ HellyError::TooLarge { .. }) => Err(Failure::usage(format!(
            "{e}; raise the gate with {}",
            helly_core::oracle::LIMITS_ENV
        ))),
        Err(_) => Ok(false),
    }
}

fn params_fit(algorithm: Algorithm, params: &Params) -> bool {
    let frac = algorithm.is_fractional();
    params.alpha.is_some() == frac
        && params.mode.is_some() == frac
        && (params.t_override.is_none() || algorithm == Algorithm::FractionalK1)
        && (params.p.is_some() == (algorithm == Algorithm::PqPierce))
        && (params.q.is_some() == (algorithm == Algorithm::PqPierce))
        && (params.target.is_some() == (algorithm == Algorithm::Chain))
}

fn sound(loaded: &Loaded, cert: &Certificate, limits: &OracleLimits) -> Result<bool, Failure> {
    let family = &loaded.family;
    let prop = loaded.instance.effective_property();
    let params = &cert.params;
    match &cert.result {
        Outcome::StrongHelly { ids } => lift(verify_strong(family, ids)),
        Outcome::Colorful { witness } => lift(verify_colorful(&loaded.classes()?, witness)),
        Outcome::WeakColorful {
            selection,
            pruned,
            original_sizes,
        } => {
            let classes = loaded.classes()?;
            let sizes: Vec<usize> = classes.classes().iter().map(|c| c.len()).collect();
            Ok(sizes == *original_sizes && lift(verify_weak(&classes, selection, pruned))?)
        }
        Outcome::FractionalK { witness } => {
            Ok(params.alpha == Some(witness.alpha)
                && lift(verify_fractional(family, &prop, witness))?)
        }
        Outcome::FractionalK1 { witness } => {
            let t_ok = params.t_override.map_or(true, |t| t == witness.t);
            Ok(params.alpha == Some(witness.alpha)
                && t_ok
                && lift(verify_kplus1(family, &prop, witness, limits))?)
        }
        Outcome::FractionalPairs { witness } => {
            Ok(params.alpha == Some(witness.alpha) && lift(verify_pairs(family, &prop, witness))?)
        }
        Outcome::Piercing { family: pf } => Ok(params.p == Some(pf.p)
            && params.q == Some(pf.q)
            && lift(verify_piercing(family, &prop, pf))?),
        Outcome::HypothesisFailed { p, q, subset } => Ok(params.p == Some(*p)
            && params.q == Some(*q)
            && cert.violating_subset.as_deref() == Some(subset.as_slice())
            && lift(verify_hypothesis_failure(family, &prop, subset, *p, *q))?),
        Outcome::Chain { witness } => {
            Ok(params.target == Some(witness.ids.len()) && lift(verify_chain(family, witness))?)
        }
        Outcome::NotFound { .. } => not_found_sound(loaded, cert, limits),
    }
}

/// For `fractional-k` the empty prefix product is confirmed exhaustively when
/// within the oracle gates; other absences rest on the canonical re-run.
fn not_found_sound(
    loaded: &Loaded,
    cert: &Certificate,
    limits: &OracleLimits,
) -> Result<bool, Failure> {
    if cert.algorithm != Algorithm::FractionalK {
        return Ok(true);
    }
    let Some(alpha) = cert.params.alpha else {
        return Ok(false);
    };
    let family = &loaded.family;
    let k = family.system().k();
    let Ok(m) = prefix_size(family.len(), k, alpha) else {
        return Ok(false);
    };
    let prefixes: Vec<Vec<MemberId>> = (0..k)
        .map(|i| {
            family.sorted_by(i)[..m]
                .iter()
                .map(|&x| family.id(x).clone())
                .collect()
        })
        .collect();
    match brute_product_scan(
        family,
        &loaded.instance.effective_property(),
        &prefixes,
        limits,
    ) {
        Ok(found) => Ok(!found),
        Err(HellyError::TooLarge { .. }) => Ok(true),
        Err(_) => Ok(false),
    }
}

/// `Err` with exit 5 on an instance mismatch; otherwise whether the certificate holds.
pub fn verify(loaded: &Loaded, cert: &Certificate, opts: VerifyOptions) -> Result<bool, Failure> {
    if cert.instance_hash != loaded.hash {
        return Err(Failure::mismatch(format!(
            "certificate is for instance {}, not {}",
            cert.instance_hash, loaded.hash
        )));
    }
    let algorithm = cert.algorithm;
    let expected_property = algorithm
        .uses_property()
        .then(|| loaded.instance.effective_property());
    if cert.property != expected_property
        || !params_fit(algorithm, &cert.params)
        || !cert.result.fits(algorithm)
        || cert.status != cert.result.status()
    {
        return Ok(false);
    }
    if !matches!(cert.result, Outcome::HypothesisFailed { .. }) && cert.violating_subset.is_some() {
        return Ok(false);
    }
    let limits = OracleLimits::from_env().map_err(Failure::usage)?;
    if !sound(loaded, cert, &limits)? {
        return Ok(false);
    }
    if opts.soundness_only {
        return Ok(true);
    }
    match run_outcome(loaded, algorithm, &cert.params) {
        Ok(again) => Ok(again == cert.result),
        Err(_) => Ok(false),
    }
}
