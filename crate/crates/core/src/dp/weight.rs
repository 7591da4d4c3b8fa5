use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Integer cut weight on a common-denominator grid.
///
/// All arc weights are multiplied by the least common multiple of their
/// denominators, after which every quantity in the tables is an integer.
/// `i64` is used when the total absolute weight leaves enough headroom,
/// `BigInt` otherwise.
pub trait Weight: Clone + Ord + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn from_bigint(value: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

impl Weight for i64 {
    #[inline]
    fn zero() -> Self {
        0
    }

    #[inline]
    fn add(&self, other: &Self) -> Self {
        self + other
    }

    #[inline]
    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn from_bigint(value: &BigInt) -> Option<Self> {
        value.to_i64()
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Weight for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn from_bigint(value: &BigInt) -> Option<Self> {
        Some(value.clone())
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}
