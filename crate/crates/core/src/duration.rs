//! Durations in days and the (inter-event, window) threshold pair.
//!
//! Duration strings: `<n>y` (365 days per year), `<n>m` (30.417 days per
//! month, floored), `<n>d` or a bare integer (days), and `inf` /
//! `unbounded`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

pub const DAYS_PER_YEAR: i64 = 365;
/// Days per month in thousandths (30.417).
const MILLIDAYS_PER_MONTH: i64 = 30_417;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum Bound {
    Days(i64),
    Unbounded,
}

impl Bound {
    pub fn years(y: i64) -> Self {
        Bound::Days(y * DAYS_PER_YEAR)
    }

    /// True when a non-negative gap of `days` is within the bound.
    #[inline]
    pub fn admits(self, days: i64) -> bool {
        match self {
            Bound::Days(d) => days <= d,
            Bound::Unbounded => true,
        }
    }

    pub fn days(self) -> Option<i64> {
        match self {
            Bound::Days(d) => Some(d),
            Bound::Unbounded => None,
        }
    }

    /// Largest admissible gap, saturating for the unbounded case.
    #[inline]
    pub fn limit(self) -> i64 {
        self.days().unwrap_or(i64::MAX)
    }
}

impl FromStr for Bound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        if matches!(lower.as_str(), "inf" | "unbounded" | "none") {
            return Ok(Bound::Unbounded);
        }
        let bad = || Error::Duration(s.to_string());
        let (num, unit) = match lower.char_indices().last() {
            Some((i, c)) if c.is_ascii_alphabetic() => (&lower[..i], Some(c)),
            Some(_) => (lower.as_str(), None),
            None => return Err(bad()),
        };
        let n: i64 = num.parse().map_err(|_| bad())?;
        if n < 0 {
            return Err(bad());
        }
        let days = match unit {
            None | Some('d') => n,
            Some('y') => n.checked_mul(DAYS_PER_YEAR).ok_or_else(bad)?,
            Some('m') => n.checked_mul(MILLIDAYS_PER_MONTH).ok_or_else(bad)? / 1000,
            Some(_) => return Err(bad()),
        };
        Ok(Bound::Days(days))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Days(d) => write!(f, "{d}d"),
            Bound::Unbounded => f.write_str("inf"),
        }
    }
}

/// Inter-event gap bound `delta_c` and total window bound `delta_w`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Thresholds {
    delta_c: Bound,
    delta_w: Bound,
}

impl Thresholds {
    pub fn new(delta_c: Bound, delta_w: Bound) -> Result<Self> {
        for b in [delta_c, delta_w] {
            if let Bound::Days(d) = b {
                if d < 0 {
                    return Err(Error::Thresholds(format!("negative duration {d}")));
                }
            }
        }
        if let (Bound::Days(c), Bound::Days(w)) = (delta_c, delta_w) {
            if c > w {
                return Err(Error::Thresholds(format!("delta_c ({c}d) exceeds delta_w ({w}d)")));
            }
        }
        Ok(Thresholds { delta_c, delta_w })
    }

    pub fn unbounded() -> Self {
        Thresholds {
            delta_c: Bound::Unbounded,
            delta_w: Bound::Unbounded,
        }
    }

    /// `delta_c = delta_w = days`.
    pub fn both(days: i64) -> Result<Self> {
        Thresholds::new(Bound::Days(days), Bound::Days(days))
    }

    pub fn delta_c(&self) -> Bound {
        self.delta_c
    }

    pub fn delta_w(&self) -> Bound {
        self.delta_w
    }

    /// Largest gap any consecutive pair in a motif can have.
    #[inline]
    pub(crate) fn step_limit(&self) -> i64 {
        self.delta_c.limit().min(self.delta_w.limit())
    }
}
