//! Tropical semiring: weights combine by `min` and extend by `+`.

use std::cmp::Ordering;
use std::fmt;

/// A cost in the tropical semiring `(R>=0 ∪ {+inf}, min, +, +inf, 0)`.
///
/// Library constructors only produce non-negative, non-NaN values. Negative
/// values are representable so that loaders and the shortest-distance engine
/// can detect and reject them explicitly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TropicalWeight(f64);

impl TropicalWeight {
    pub const INFINITY: TropicalWeight = TropicalWeight(f64::INFINITY);

    pub fn new(value: f64) -> Self {
        debug_assert!(!value.is_nan(), "NaN is not a tropical weight");
        // Normalize -0.0 so formatting and comparisons are stable.
        TropicalWeight(if value == 0.0 { 0.0 } else { value })
    }

    /// Additive identity: the weight of an empty set of paths.
    pub fn zero() -> Self {
        Self::INFINITY
    }

    /// Multiplicative identity: the weight of an empty path.
    pub fn one() -> Self {
        TropicalWeight(0.0)
    }

    /// Semiring addition: `min`.
    pub fn combine(self, other: Self) -> Self {
        if self.0 <= other.0 {
            self
        } else {
            other
        }
    }

    /// Semiring multiplication: `+` (saturates at +inf).
    pub fn extend(self, other: Self) -> Self {
        TropicalWeight::new(self.0 + other.0)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

impl Eq for TropicalWeight {}

impl PartialOrd for TropicalWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TropicalWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl From<f64> for TropicalWeight {
    fn from(value: f64) -> Self {
        TropicalWeight::new(value)
    }
}

/// Prints `inf` for +infinity, otherwise a decimal with at most six fractional
/// digits and no trailing zeros, so integers come out bare (`3`, not `3.0`).
impl fmt::Display for TropicalWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            return write!(f, "inf");
        }
        let s = format!("{:.6}", self.0);
        let s = s.trim_end_matches('0').trim_end_matches('.');
        write!(f, "{}", s)
    }
}
