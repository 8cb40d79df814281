//! Shared pieces of the `foulkes` command-line tool: configuration loading,
//! exit-code mapping and the verification suites.

pub mod config;
pub mod verify;

use foulkes_core::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

/// Exit status for an engine error.
pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::LimitExceeded { .. } | Error::CapExceeded { .. } => EXIT_CAP,
        Error::Parse { .. }
        | Error::SizeMismatch { .. }
        | Error::OutOfRange(_)
        | Error::BeadCountTooSmall { .. }
        | Error::UnsupportedS { .. }
        | Error::NotACore(..)
        | Error::Invalid(_) => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}
