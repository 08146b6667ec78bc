//! Command-line front end: subcommands, JSON reports and report verification.

pub mod commands;
pub mod report;
pub mod verify;

use solvrad::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Exit status for an engine error: 3 for resource caps, 2 for bad input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::OrderCapExceeded { .. }
        | Error::DegreeTooLarge(_)
        | Error::FieldTooLarge(_)
        | Error::ClassSearchIncomplete { .. }
        | Error::WitnessSearchExhausted(_)
        | Error::InconclusiveAtCap { .. } => EXIT_RESOURCE,
        Error::Inconsistent(_) => EXIT_FAILED,
        _ => EXIT_INPUT,
    }
}
