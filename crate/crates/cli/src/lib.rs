//! Commands behind the `lerch` binary, usable without going through argv.

pub mod commands;
pub mod verify;

use lerch_core::{Error, Result};

/// Overrides the default working precision of every command.
pub const DIGITS_ENV: &str = "LERCH_DIGITS";

pub const SCAN_DIGITS: u32 = 30;
pub const DEEP_DIGITS: u32 = 60;

/// The λ values of the distribution table, in row order.
pub const TABLE_LAMBDAS: [&str; 16] = [
    "1/2", "5/9", "4/7", "3/5", "5/8", "2/3", "7/10", "5/7", "3/4", "7/9", "4/5", "5/6", "6/7",
    "7/8", "8/9", "9/10",
];

/// `explicit`, else `$LERCH_DIGITS`, else `fallback`.
pub fn resolve_digits(explicit: Option<u32>, fallback: u32) -> Result<u32> {
    if let Some(d) = explicit {
        return Ok(d);
    }
    match std::env::var(DIGITS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{DIGITS_ENV}={v:?} is not an integer"))),
        Err(_) => Ok(fallback),
    }
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;
pub const EXIT_VERIFY: u8 = 4;

/// Process exit code for a library error.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_)
        | Error::Parse(_)
        | Error::Pole { .. }
        | Error::PoleInside
        | Error::CapExceeded { .. }
        | Error::Io(_)
        | Error::Csv(_)
        | Error::Json(_) => EXIT_INPUT,
        _ => EXIT_NUMERICAL,
    }
}
