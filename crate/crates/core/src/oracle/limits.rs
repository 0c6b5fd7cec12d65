use crate::error::{HellyError, Result};

/// Desk-scale gates for the exhaustive oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_family: usize,
    pub max_product: u128,
    pub max_pierce_family: usize,
    pub max_pierce_bound: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_family: 20,
            max_product: 1_000_000,
            max_pierce_family: 12,
            max_pierce_bound: 4,
        }
    }
}

pub const LIMITS_ENV: &str = "HELLY_ORACLE_LIMITS";

impl OracleLimits {
    /// Defaults overridden by `HELLY_ORACLE_LIMITS`, e.g. `family=24,product=5000000`.
    pub fn from_env() -> Result<Self> {
        match std::env::var(LIMITS_ENV) {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut limits = Self::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| HellyError::InvalidParameter(format!("bad limit entry {part:?}")))?;
            let value: u128 = value.trim().parse().map_err(|_| {
                HellyError::InvalidParameter(format!("bad limit value in {part:?}"))
            })?;
            let as_usize = || {
                usize::try_from(value).map_err(|_| {
                    HellyError::InvalidParameter(format!("limit too large in {part:?}"))
                })
            };
            match key.trim() {
                "family" => limits.max_family = as_usize()?,
                "product" => limits.max_product = value,
                "pierce_family" => limits.max_pierce_family = as_usize()?,
                "pierce_bound" => limits.max_pierce_bound = as_usize()?,
                other => {
                    return Err(HellyError::InvalidParameter(format!(
                        "unknown limit {other:?}"
                    )))
                }
            }
        }
        Ok(limits)
    }
}

pub(crate) fn gate(what: &'static str, size: u128, limit: u128) -> Result<()> {
    if size > limit {
        return Err(HellyError::TooLarge { what, size, limit });
    }
    Ok(())
}
