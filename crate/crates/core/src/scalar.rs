//! Coefficient traits.
//!
//! Polynomial code is written against [`Ring`]; Groebner code additionally
//! needs exact division and uses [`Field`].

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{NumRef, Signed};

/// Exact commutative ring with identity.
pub trait Ring: NumRef + Neg<Output = Self> + Clone + Eq + Ord + Hash + Debug + Display + Send + Sync + 'static {}

impl<T> Ring for T where T: NumRef + Neg<Output = T> + Clone + Eq + Ord + Hash + Debug + Display + Send + Sync + 'static {}

/// A ring where `/` is exact division by any nonzero element.
pub trait Field: Ring + Signed {}

impl Field for BigRational {}

pub type Integer = BigInt;
pub type Rational = BigRational;
