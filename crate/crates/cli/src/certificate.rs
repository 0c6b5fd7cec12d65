//! Certificate records written by `helly run`.

use clap::ValueEnum;
use helly_core::fractional::{KPlusOneWitness, PairsWitness, PiercingFamily};
use helly_core::selection::{ChainWitness, SelectionWitness};
use helly_core::{FractionalWitness, MemberId, MonotoneProperty, Rational, SearchMode};
use serde::{Deserialize, Serialize};

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    StrongHelly,
    Colorful,
    WeakColorful,
    FractionalK,
    #[value(name = "fractional-k1")]
    #[serde(rename = "fractional-k1")]
    FractionalK1,
    FractionalPairs,
    PqPierce,
    Chain,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::StrongHelly,
        Algorithm::Colorful,
        Algorithm::WeakColorful,
        Algorithm::FractionalK,
        Algorithm::FractionalK1,
        Algorithm::FractionalPairs,
        Algorithm::PqPierce,
        Algorithm::Chain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::StrongHelly => "strong-helly",
            Algorithm::Colorful => "colorful",
            Algorithm::WeakColorful => "weak-colorful",
            Algorithm::FractionalK => "fractional-k",
            Algorithm::FractionalK1 => "fractional-k1",
            Algorithm::FractionalPairs => "fractional-pairs",
            Algorithm::PqPierce => "pq-pierce",
            Algorithm::Chain => "chain",
        }
    }

    /// Whether the instance's property enters the computation.
    pub fn uses_property(self) -> bool {
        matches!(
            self,
            Algorithm::FractionalK
                | Algorithm::FractionalK1
                | Algorithm::FractionalPairs
                | Algorithm::PqPierce
        )
    }

    pub fn is_fractional(self) -> bool {
        matches!(
            self,
            Algorithm::FractionalK | Algorithm::FractionalK1 | Algorithm::FractionalPairs
        )
    }
}

/// Run parameters. Only the ones an algorithm reads may be set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_override: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    /// Chain length sought.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<SearchMode>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    NotFound,
    HypothesisFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => crate::EXIT_OK,
            Status::NotFound => crate::EXIT_NOT_FOUND,
            Status::HypothesisFailed => crate::EXIT_HYPOTHESIS_FAILED,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Outcome {
    StrongHelly {
        ids: Vec<MemberId>,
    },
    Colorful {
        witness: SelectionWitness,
    },
    WeakColorful {
        selection: SelectionWitness,
        pruned: Vec<MemberId>,
        original_sizes: Vec<usize>,
    },
    FractionalK {
        witness: FractionalWitness,
    },
    #[serde(rename = "fractional_k1")]
    FractionalK1 {
        witness: KPlusOneWitness,
    },
    FractionalPairs {
        witness: PairsWitness,
    },
    Piercing {
        family: PiercingFamily,
    },
    HypothesisFailed {
        p: usize,
        q: usize,
        subset: Vec<MemberId>,
    },
    Chain {
        witness: ChainWitness,
    },
    NotFound {
        reason: String,
    },
}

impl Outcome {
    pub fn status(&self) -> Status {
        match self {
            Outcome::NotFound { .. } => Status::NotFound,
            Outcome::HypothesisFailed { .. } => Status::HypothesisFailed,
            _ => Status::Ok,
        }
    }

    /// Whether this outcome kind can come out of `algorithm`.
    pub fn fits(&self, algorithm: Algorithm) -> bool {
        matches!(
            (algorithm, self),
            (_, Outcome::NotFound { .. })
                | (Algorithm::StrongHelly, Outcome::StrongHelly { .. })
                | (Algorithm::Colorful, Outcome::Colorful { .. })
                | (Algorithm::WeakColorful, Outcome::WeakColorful { .. })
                | (Algorithm::FractionalK, Outcome::FractionalK { .. })
                | (Algorithm::FractionalK1, Outcome::FractionalK1 { .. })
                | (Algorithm::FractionalPairs, Outcome::FractionalPairs { .. })
                | (
                    Algorithm::PqPierce,
                    Outcome::Piercing { .. } | Outcome::HypothesisFailed { .. }
                )
                | (Algorithm::Chain, Outcome::Chain { .. })
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub algorithm: Algorithm,
    /// SHA-256 of the instance's canonical bytes.
    pub instance_hash: String,
    pub params: Params,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub property: Option<MonotoneProperty>,
    pub status: Status,
    pub result: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violating_subset: Option<Vec<MemberId>>,
}
