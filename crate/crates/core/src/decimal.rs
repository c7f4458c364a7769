//! Exact decimal numbers for metric cells.
//!
//! Cells are compared by value, so `"1"`, `"1.0"` and `"1.00"` are the same
//! number, but no binary rounding is involved: `"0.1"` and `"0.10000000001"`
//! stay distinct however close they are.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const MAX_EXPONENT: i64 = 4096;

/// A finite decimal `(-1)^negative × digits × 10^exponent` in canonical form.
///
/// `digits` has no leading or trailing zeros; zero is the empty digit string
/// with exponent 0 and no sign.
#[derive(Clone)]
pub struct Decimal {
    negative: bool,
    digits: Box<str>,
    exponent: i32,
    value: f64,
}

impl Decimal {
    pub fn zero() -> Self {
        Decimal {
            negative: false,
            digits: "".into(),
            exponent: 0,
            value: 0.0,
        }
    }

    pub fn parse(raw: &str) -> Result<Self> {
        let invalid = || Error::InvalidDecimal(raw.to_string());
        let s = raw.trim();
        let (negative, s) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (mantissa, exp_part) = match s.find(['e', 'E']) {
            Some(pos) => (&s[..pos], Some(&s[pos + 1..])),
            None => (s, None),
        };
        let (int_part, frac_part) = match mantissa.find('.') {
            Some(pos) => (&mantissa[..pos], &mantissa[pos + 1..]),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(invalid());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let mut exponent: i64 = match exp_part {
            Some(e) => {
                let digits = e.strip_prefix(['+', '-']).unwrap_or(e);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(invalid());
                }
                if digits.len() > 6 {
                    return Err(invalid());
                }
                e.parse::<i64>().map_err(|_| invalid())?
            }
            None => 0,
        };
        exponent -= frac_part.len() as i64;

        let all: String = int_part.chars().chain(frac_part.chars()).collect();
        let trimmed_leading = all.trim_start_matches('0');
        let significant = trimmed_leading.trim_end_matches('0');
        exponent += (trimmed_leading.len() - significant.len()) as i64;

        if significant.is_empty() {
            return Ok(Decimal::zero());
        }
        if exponent.abs() > MAX_EXPONENT {
            return Err(invalid());
        }
        let exponent = exponent as i32;
        let value: f64 = format!("{significant}e{exponent}")
            .parse()
            .map_err(|_| invalid())?;
        if !value.is_finite() {
            return Err(invalid());
        }
        Ok(Decimal {
            negative,
            digits: significant.into(),
            exponent,
            value: if negative { -value } else { value },
        })
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// Nearest `f64`; used for distances and learning, never for equality.
    pub fn to_f64(&self) -> f64 {
        self.value
    }
}

/// Canonicalize one raw metric cell.
pub fn canonicalize_metric(raw_cell: &str) -> Result<Decimal> {
    Decimal::parse(raw_cell)
}

impl PartialEq for Decimal {
    fn eq(&self, other: &Self) -> bool {
        self.negative == other.negative
            && self.exponent == other.exponent
            && self.digits == other.digits
    }
}

impl Eq for Decimal {}

impl Hash for Decimal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.negative.hash(state);
        self.digits.hash(state);
        self.exponent.hash(state);
    }
}

impl fmt::Debug for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Decimal({self})")
    }
}

/// Plain positional notation, e.g. `2.5`, `0`, `1200`, `0.000125`.
impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.negative {
            f.write_str("-")?;
        }
        let digits = &*self.digits;
        let exp = self.exponent as i64;
        if exp >= 0 {
            f.write_str(digits)?;
            for _ in 0..exp {
                f.write_str("0")?;
            }
            return Ok(());
        }
        let point = digits.len() as i64 + exp;
        if point > 0 {
            let (int, frac) = digits.split_at(point as usize);
            write!(f, "{int}.{frac}")
        } else {
            f.write_str("0.")?;
            for _ in 0..(-point) {
                f.write_str("0")?;
            }
            f.write_str(digits)
        }
    }
}

impl FromStr for Decimal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Decimal::parse(s)
    }
}

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Decimal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Decimal::parse(&s).map_err(serde::de::Error::custom)
    }
}
