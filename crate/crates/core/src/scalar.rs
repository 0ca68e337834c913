//! Scalar types the planner can run on.
//!
//! Everything downstream of the graph (distances, scores, weights) is generic
//! over [`Scalar`]. `f64` is the everyday choice; [`Rational`] gives exact
//! arithmetic, which makes argmin ties exact rather than rounding-dependent.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Exact rational scalar.
pub type Rational = Ratio<i64>;

/// A field-like number type usable for edge weights, distances and scores.
///
/// Integer types are deliberately excluded: score normalisation divides.
pub trait Scalar:
    Num
    + Signed
    + Copy
    + PartialOrd
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// `false` for NaN and infinities; always `true` for exact types.
    fn is_finite_value(&self) -> bool;

    /// Slack allowed when checking that convex weights sum to one.
    fn weight_tolerance() -> Self;

    /// Total order used by the priority queue and argmin selection.
    ///
    /// Only finite values are ever compared, so the NaN arm is unreachable in
    /// practice.
    fn total_cmp_value(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }

    /// One half, built without going through floating point.
    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }
}

macro_rules! impl_float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            fn is_finite_value(&self) -> bool {
                self.is_finite()
            }

            fn weight_tolerance() -> Self {
                $tol
            }
        }
    };
}

impl_float_scalar!(f32, 1e-5);
impl_float_scalar!(f64, 1e-9);

impl Scalar for Rational {
    fn is_finite_value(&self) -> bool {
        true
    }

    fn weight_tolerance() -> Self {
        Ratio::from_integer(0)
    }
}

/// A value that is either a finite number or unreachable (the "infinity" of
/// a distance matrix).
///
/// Kept as a sentinel instead of a large finite number so that scoring code
/// has to deal with it explicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended<T> {
    Finite(T),
    Unreachable,
}

impl<T: Scalar> Extended<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Extended::Finite(x) => Some(x),
            Extended::Unreachable => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    /// Ordering with unreachable above every finite value.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.total_cmp_value(b),
            (Extended::Finite(_), Extended::Unreachable) => Ordering::Less,
            (Extended::Unreachable, Extended::Finite(_)) => Ordering::Greater,
            (Extended::Unreachable, Extended::Unreachable) => Ordering::Equal,
        }
    }
}

impl<T: Scalar> From<Option<T>> for Extended<T> {
    fn from(v: Option<T>) -> Self {
        match v {
            Some(x) => Extended::Finite(x),
            None => Extended::Unreachable,
        }
    }
}

impl<T: Display> Display for Extended<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Extended::Finite(x) => Display::fmt(x, f),
            Extended::Unreachable => f.write_str("inf"),
        }
    }
}

/// Addition where unreachable absorbs.
impl<T: Scalar> std::ops::Add for Extended<T> {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a + b),
            _ => Extended::Unreachable,
        }
    }
}
