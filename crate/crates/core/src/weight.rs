//! Extended real weights.
//!
//! A [`Weight`] is an `f64` extended with explicit `+inf` and `-inf` values.
//! `+inf` encodes "no edge / no path", `-inf` encodes "unbounded below"
//! (produced by nondecreasing-path tables on cyclic instances). NaN is
//! rejected at construction and negative zero is normalised to `0.0`, so
//! comparison is a genuine total order and `Ord` can be implemented without
//! surprises.
//!
//! Addition follows the convention that `+inf` absorbs everything:
//! `x + inf = inf` for every `x`, including `x = -inf`. A missing edge on a
//! path makes the whole path missing, regardless of how negative the rest of
//! it is. In all other cases IEEE addition applies, so `-inf + finite = -inf`.
//!
//! Serialisation: finite weights are JSON numbers; the infinities are the
//! strings `"inf"` and `"-inf"`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

/// An extended real weight: a finite `f64`, `+inf`, or `-inf`. Never NaN.
#[derive(Clone, Copy, PartialEq)]
pub struct Weight(f64);

impl Weight {
    /// "No edge / no path".
    pub const INF: Weight = Weight(f64::INFINITY);
    /// "Unbounded below".
    pub const NEG_INF: Weight = Weight(f64::NEG_INFINITY);
    pub const ZERO: Weight = Weight(0.0);

    /// Wraps a value that may be infinite. Panics on NaN.
    ///
    /// ```
    /// use qapsp::Weight;
    /// assert_eq!(Weight::new(2.5) + Weight::new(1.0), Weight::new(3.5));
    /// assert_eq!(Weight::NEG_INF + Weight::INF, Weight::INF);
    /// ```
    pub fn new(value: f64) -> Weight {
        assert!(!value.is_nan(), "weights must not be NaN");
        // Normalise -0.0 so that `==` and the total order agree bit-for-bit.
        Weight(if value == 0.0 { 0.0 } else { value })
    }

    /// Wraps a finite value. Panics on NaN or infinity.
    pub fn finite(value: f64) -> Weight {
        assert!(value.is_finite(), "expected a finite weight, got {value}");
        Weight::new(value)
    }

    /// The underlying `f64` (finite, `f64::INFINITY`, or `f64::NEG_INFINITY`).
    pub fn raw(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_inf(self) -> bool {
        self.0 == f64::INFINITY
    }

    pub fn is_neg_inf(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    pub fn min(self, other: Weight) -> Weight {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Weight) -> Weight {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl Add for Weight {
    type Output = Weight;

    /// Path concatenation: `+inf` absorbs, otherwise IEEE addition.
    fn add(self, rhs: Weight) -> Weight {
        if self.is_inf() || rhs.is_inf() {
            Weight::INF
        } else {
            Weight::new(self.0 + rhs.0)
        }
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, |acc, w| acc + w)
    }
}

impl Eq for Weight {}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Weight) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Weight) -> Ordering {
        // NaN is unrepresentable and -0.0 is normalised, so this is total.
        self.0.partial_cmp(&other.0).expect("weights are never NaN")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            write!(f, "inf")
        } else if self.is_neg_inf() {
            write!(f, "-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_inf() {
            serializer.serialize_str("inf")
        } else if self.is_neg_inf() {
            serializer.serialize_str("-inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Weight, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(f64),
            Marker(String),
        }

        match Repr::deserialize(deserializer)? {
            Repr::Number(v) => {
                if v.is_nan() {
                    Err(de::Error::custom("weight must not be NaN"))
                } else {
                    Ok(Weight::new(v))
                }
            }
            Repr::Marker(s) => match s.as_str() {
                "inf" => Ok(Weight::INF),
                "-inf" => Ok(Weight::NEG_INF),
                other => Err(de::Error::custom(format!(
                    "unknown weight marker {other:?} (expected \"inf\" or \"-inf\")"
                ))),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plus_infinity_absorbs_addition() {
        assert_eq!(Weight::INF + Weight::NEG_INF, Weight::INF);
        assert_eq!(Weight::NEG_INF + Weight::INF, Weight::INF);
        assert_eq!(Weight::INF + Weight::finite(-7.0), Weight::INF);
        assert_eq!(Weight::NEG_INF + Weight::finite(7.0), Weight::NEG_INF);
        assert_eq!(Weight::NEG_INF + Weight::NEG_INF, Weight::NEG_INF);
        assert_eq!(
            Weight::finite(2.0) + Weight::finite(0.5),
            Weight::finite(2.5)
        );
    }

    #[test]
    fn order_is_total_and_matches_reals() {
        let mut ws = vec![
            Weight::INF,
            Weight::finite(3.0),
            Weight::NEG_INF,
            Weight::ZERO,
            Weight::finite(-2.5),
        ];
        ws.sort();
        assert_eq!(
            ws,
            vec![
                Weight::NEG_INF,
                Weight::finite(-2.5),
                Weight::ZERO,
                Weight::finite(3.0),
                Weight::INF,
            ]
        );
    }

    #[test]
    fn negative_zero_is_normalised() {
        assert_eq!(Weight::new(-0.0), Weight::ZERO);
        assert_eq!(Weight::new(-0.0).raw().to_bits(), 0.0f64.to_bits());
    }

    #[test]
    #[should_panic(expected = "NaN")]
    fn nan_is_rejected() {
        let _ = Weight::new(f64::NAN);
    }

    #[test]
    fn json_round_trip() {
        for w in [
            Weight::finite(1.5),
            Weight::INF,
            Weight::NEG_INF,
            Weight::ZERO,
        ] {
            let text = serde_json::to_string(&w).unwrap();
            let back: Weight = serde_json::from_str(&text).unwrap();
            assert_eq!(w, back, "round trip through {text}");
        }
        assert_eq!(serde_json::to_string(&Weight::INF).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&Weight::NEG_INF).unwrap(), "\"-inf\"");
        assert!(serde_json::from_str::<Weight>("\"oops\"").is_err());
    }
}
