//! Truth values: the exact three-valued domain and the numeric degree trait
//! shared by rational and floating-point evaluation.

use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A three-valued truth value `0 < 1/2 < 1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tri {
    Zero,
    Half,
    One,
}

impl Tri {
    /// All values in enumeration order.
    pub const ALL: [Tri; 3] = [Tri::Zero, Tri::Half, Tri::One];

    pub fn negate(self) -> Tri {
        match self {
            Tri::Zero => Tri::One,
            Tri::Half => Tri::Half,
            Tri::One => Tri::Zero,
        }
    }

    /// Embeds the value into any numeric degree type.
    pub fn to_degree<D: Degree>(self) -> D {
        match self {
            Tri::Zero => D::zero(),
            Tri::Half => D::half(),
            Tri::One => D::one(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tri::Zero => "0",
            Tri::Half => "1/2",
            Tri::One => "1",
        }
    }

    /// Parses `"0"`, `"1/2"` or `"1"`.
    pub fn parse(s: &str) -> Option<Tri> {
        match s.trim() {
            "0" => Some(Tri::Zero),
            "1/2" => Some(Tri::Half),
            "1" => Some(Tri::One),
            _ => None,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A truth degree in `[0, 1]` with the arithmetic the built-in connectives need.
///
/// Implemented for exact rationals ([`BigRational`]) and for `f64`.
pub trait Degree: Clone + PartialOrd + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn half() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Division; callers guarantee a non-zero divisor.
    fn div(&self, other: &Self) -> Self;
    fn abs(&self) -> Self;

    fn one_minus(&self) -> Self {
        Self::one().sub(self)
    }

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn min_of(&self, other: &Self) -> Self {
        if other < self {
            other.clone()
        } else {
            self.clone()
        }
    }

    fn max_of(&self, other: &Self) -> Self {
        if other > self {
            other.clone()
        } else {
            self.clone()
        }
    }

    /// `true` when the value lies in the closed unit interval.
    fn in_unit_interval(&self) -> bool {
        *self >= Self::zero() && *self <= Self::one()
    }

    /// Maps exact `0`, `1/2`, `1` to a [`Tri`], anything else to `None`.
    fn as_tri(&self) -> Option<Tri> {
        if self.is_zero() {
            Some(Tri::Zero)
        } else if self.is_one() {
            Some(Tri::One)
        } else if *self == Self::half() {
            Some(Tri::Half)
        } else {
            None
        }
    }
}

impl Degree for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn half() -> Self {
        BigRational::new(BigInt::from(1), BigInt::from(2))
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn div(&self, other: &Self) -> Self {
        self / other
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

impl Degree for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn half() -> Self {
        0.5
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn div(&self, other: &Self) -> Self {
        self / other
    }

    fn abs(&self) -> Self {
        if *self < 0.0 {
            -*self
        } else {
            *self
        }
    }
}

/// Builds the exact rational `numer / denom`.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}
