use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} = {value} exceeds the configured maximum {max}")]
    LimitExceeded {
        what: &'static str,
        value: u64,
        max: u64,
    },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    /// An enumeration or group sweep would exceed its cap. `required` is the
    /// exact size when known, otherwise a lower bound.
    #[error("{what} needs {required} elements but the cap is {cap}")]
    CapExceeded {
        what: &'static str,
        required: String,
        cap: u64,
    },

    #[error("bead count {beads} is smaller than the number of parts {parts}")]
    BeadCountTooSmall { beads: usize, parts: usize },

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("Sylow tower for s = {s} with p = {p} is unsupported (needs s < p^2)")]
    UnsupportedS { s: usize, p: usize },

    #[error("permutation of degree {got} cannot act on a ground set of size {expected}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("set partition {0} is not fixed by the group")]
    NotFixed(String),

    #[error("block {block} of {partition} meets both the support and its complement")]
    MixedBlock { partition: String, block: String },

    #[error("{0} is not a {1}-core")]
    NotACore(String, usize),

    #[error("report preconditions not met: {0}")]
    PreconditionsNotMet(String),

    #[error("class functions are defined on different domains")]
    DomainMismatch,

    #[error("cannot parse {token:?}: {reason}")]
    Parse { token: String, reason: String },

    #[error("invalid value: {0}")]
    Invalid(String),

    #[error("cache file {path} is corrupt: {reason}")]
    CacheCorrupt { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
