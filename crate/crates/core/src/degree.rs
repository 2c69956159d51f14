//! Exact fuzzy degrees.
//!
//! A [`Degree`] is a value in `[0, 1]` stored as an integer count of
//! billionths. Decimal literals with at most nine fractional digits map onto
//! it without rounding, so equality and ordering are exact.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Number of fractional decimal digits a degree can carry.
pub const DEGREE_DIGITS: u32 = 9;

const SCALE: u32 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("malformed degree literal `{0}`")]
    Malformed(String),
    #[error("degree `{0}` is outside [0,1]")]
    OutOfRange(String),
    #[error("degree `{0}` has more than {DEGREE_DIGITS} fractional digits")]
    TooPrecise(String),
}

/// A fuzzy membership degree in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Degree(u32);

impl Degree {
    pub const ZERO: Degree = Degree(0);
    pub const ONE: Degree = Degree(SCALE);

    /// Builds a degree from a count of billionths. Returns `None` above 1.
    pub const fn from_billionths(units: u32) -> Option<Degree> {
        if units <= SCALE {
            Some(Degree(units))
        } else {
            None
        }
    }

    /// Builds `numerator / 10^digits`, e.g. `from_decimal(7, 1)` is 0.7.
    pub fn from_decimal(numerator: u64, digits: u32) -> Option<Degree> {
        if digits > DEGREE_DIGITS {
            return None;
        }
        let units = numerator.checked_mul(10u64.pow(DEGREE_DIGITS - digits))?;
        u32::try_from(units).ok().and_then(Degree::from_billionths)
    }

    pub const fn billionths(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.0) / f64::from(SCALE)
    }
}

impl FromStr for Degree {
    type Err = DegreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || DegreeError::Malformed(s.to_owned());
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(malformed());
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(malformed());
        }
        // Trailing zeros carry no information and may exceed the digit budget.
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.len() > DEGREE_DIGITS as usize {
            return Err(DegreeError::TooPrecise(s.to_owned()));
        }
        let int_value: u64 = match int_part.trim_start_matches('0') {
            "" => 0,
            digits if digits.len() > 1 => return Err(DegreeError::OutOfRange(s.to_owned())),
            digits => digits.parse().map_err(|_| malformed())?,
        };
        let mut frac_value: u64 = 0;
        for b in frac_part.bytes() {
            frac_value = frac_value * 10 + u64::from(b - b'0');
        }
        frac_value *= 10u64.pow(DEGREE_DIGITS - frac_part.len() as u32);
        let units = int_value * u64::from(SCALE) + frac_value;
        u32::try_from(units)
            .ok()
            .and_then(Degree::from_billionths)
            .ok_or_else(|| DegreeError::OutOfRange(s.to_owned()))
    }
}

impl fmt::Display for Degree {
    /// Shortest decimal form: `0`, `1`, `0.7`, `0.000000001`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let int = self.0 / SCALE;
        let frac = self.0 % SCALE;
        if frac == 0 {
            return write!(f, "{int}");
        }
        let digits = format!("{frac:09}");
        write!(f, "{int}.{}", digits.trim_end_matches('0'))
    }
}

/// Serialized as its shortest decimal string, e.g. `"0.7"`.
impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
