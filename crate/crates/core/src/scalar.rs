//! Coefficient rings for the matrix algebra.
//!
//! Smith normal form needs a Euclidean domain with exact division; rank
//! computations additionally run over fields. Both are expressed as marker
//! traits with blanket impls so that `BigInt`, `i64`, `i128` and
//! `BigRational` all plug in without wrappers.

use std::fmt::{Debug, Display};

use num_integer::Integer as NumInteger;
use num_traits::{Num, Signed};

/// A Euclidean domain with signed representatives (the integers, in practice).
pub trait EuclideanRing: Clone + Debug + Display + NumInteger + Signed + Send + Sync {
    /// Whether `self` is a unit, i.e. `±1`.
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

impl<T> EuclideanRing for T where T: Clone + Debug + Display + NumInteger + Signed + Send + Sync {}

/// A field with exact arithmetic.
pub trait Field: Clone + Debug + Num + Send + Sync {}

impl<T: num_integer::Integer + Clone + Debug + Send + Sync> Field for num_rational::Ratio<T> {}
