//! Scalar abstraction for bounds, fractions and statistics.
//!
//! Combinatorial quantities (push counts, sigma values, permutation counts)
//! are integers. Everything derived from them by division is computed in a
//! caller-chosen scalar: [`crate::Rational`] when the result has to match a
//! closed form exactly, `f64`/`f32` for corpus averages.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num};

pub trait Scalar: Num + FromPrimitive + Clone + PartialOrd + Debug + Display {
    fn from_count(value: u64) -> Self {
        Self::from_u64(value).expect("count representable in scalar type")
    }

    /// `num / den` in this scalar type.
    fn ratio(num: u64, den: u64) -> Self {
        Self::from_count(num) / Self::from_count(den)
    }
}

impl<T> Scalar for T where T: Num + FromPrimitive + Clone + PartialOrd + Debug + Display {}
