//! `--b` values: a single count or an inclusive range.

use std::ops::RangeInclusive;

use crate::error::{CliError, Result};

/// Largest slot count accepted on the command line.
pub const MAX_B: usize = 64;

/// Parses `4`, `2..6`, `2..=6` or `2-6`; ranges are inclusive.
pub fn parse_b_range(s: &str) -> Result<RangeInclusive<usize>> {
    let s = s.trim();
    let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
        (a, b)
    } else if let Some((a, b)) = s.split_once("..") {
        (a, b)
    } else if let Some((a, b)) = s.split_once('-') {
        (a, b)
    } else {
        (s, s)
    };
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("invalid --b value `{s}`")))
    };
    let (lo, hi) = (num(lo)?, num(hi)?);
    if lo == 0 || lo > hi || hi > MAX_B {
        return Err(CliError::Usage(format!(
            "--b `{s}` must satisfy 1 <= lo <= hi <= {MAX_B}"
        )));
    }
    Ok(lo..=hi)
}
