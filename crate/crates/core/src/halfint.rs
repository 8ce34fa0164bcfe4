//! Exact half-integer arithmetic.
//!
//! Angular quantum numbers of the planar Dirac problem are half-odd-integers
//! (κ, μ) or integers (orbital phases). Both are stored as twice their value so
//! every constraint check is integer arithmetic.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

/// A number of the form `k/2` for integer `k`, stored as `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(v: i32) -> Self {
        HalfInt(2 * v)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// True for ±1/2, ±3/2, ...
    pub const fn is_half_odd(self) -> bool {
        self.0 % 2 != 0
    }

    /// The integer value, if this is one.
    pub const fn as_int(self) -> Option<i32> {
        if self.0 % 2 == 0 {
            Some(self.0 / 2)
        } else {
            None
        }
    }

    pub const fn signum(self) -> i32 {
        self.0.signum()
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_int() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseHalfIntError(String);

impl fmt::Display for ParseHalfIntError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}` is not a half-integer (expected e.g. 3/2, -1/2 or 2)", self.0)
    }
}

impl std::error::Error for ParseHalfIntError {}

impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    /// Accepts `p/2` or a plain integer `p`. Decimal forms are rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseHalfIntError(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((num, den)) => {
                let num: i32 = num.trim().parse().map_err(|_| err())?;
                match den.trim() {
                    "2" => Ok(HalfInt(num)),
                    "1" => num.checked_mul(2).map(HalfInt).ok_or_else(err),
                    _ => Err(err()),
                }
            }
            None => {
                let v: i32 = t.parse().map_err(|_| err())?;
                v.checked_mul(2).map(HalfInt).ok_or_else(err)
            }
        }
    }
}
