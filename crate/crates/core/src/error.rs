use crate::hsystem::MemberId;

pub type Result<T, E = HellyError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HellyError {
    #[error("sets belong to different direction systems")]
    MixedSystems,
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("not a box system")]
    NotBoxSystem,
    #[error("volume unsupported on non-box systems")]
    VolumeUnsupported,
    #[error("ordering index {index} out of range for {k} halfspaces")]
    OrderingOutOfRange { index: usize, k: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid direction system: {0}")]
    InvalidSystem(String),
    #[error("invalid box: {0}")]
    InvalidBox(String),
    #[error("duplicate member id {0}")]
    DuplicateId(MemberId),
    #[error("unknown member id {0}")]
    UnknownId(MemberId),
    #[error("expected {expected} color classes, found {found}")]
    ClassCount { expected: usize, found: usize },
    #[error("color class {0} is empty")]
    EmptyClass(usize),
    #[error("color class {class} has {size} members, at least {required} required")]
    ClassTooSmall {
        class: usize,
        size: usize,
        required: u128,
    },
    #[error("{0}")]
    InvalidParameter(String),
    #[error("alpha {alpha} outside ({lower}, 1] (c_k = {c_k})")]
    AlphaOutOfRange {
        alpha: String,
        lower: String,
        c_k: String,
    },
    #[error("expected an odd number 2k+1 of halfspaces, found {0}")]
    WrongHalfspaceCount(usize),
    #[error("chain is not consistently ordered")]
    NotConsistentlyOrdered,
    #[error("{what} of size {size} exceeds the limit {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("clip half-width {given} too small; need at least {minimal}")]
    ClipTooSmall { given: String, minimal: String },
    #[error("could not reach density {target} within the retry budget")]
    DensityUnreachable { target: String },
    #[error("certified {found} tuples but {required} were required")]
    Uncertified { found: String, required: String },
    #[error("member {0} fails the property and cannot contain a pin")]
    Unpierceable(MemberId),
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
}
