//! Scalar abstraction for the covering engine: exact rationals for integer
//! lattices, f64 with a boundary tolerance for sampled ones.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Sign of a quantity relative to the flavor's boundary tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Neg,
    /// Within tolerance of zero (exactly zero in the exact flavor).
    Boundary,
    Pos,
}

/// Field scalar usable by the exact planar engine.
///
/// Implementations must keep arithmetic closed (no NaN/infinity for inputs
/// the constructors accept) so comparisons are total in practice.
pub trait Scalar:
    Clone
    + PartialOrd
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether comparisons against zero are exact rather than tolerance-based.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    /// Exact embedding of a float (used for certified search bounds).
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_finite_val(&self) -> bool;
    /// Sign with the flavor's tolerance: in the float flavor, values within
    /// 1e-9 of zero classify as Boundary.
    fn sign_eps(&self) -> Sign;
}

/// Absolute strictness tolerance of the float flavor.
pub const FLOAT_EPS: f64 = 1e-9;

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_finite_val(&self) -> bool {
        self.is_finite()
    }
    fn sign_eps(&self) -> Sign {
        if *self > FLOAT_EPS {
            Sign::Pos
        } else if *self < -FLOAT_EPS {
            Sign::Neg
        } else {
            Sign::Boundary
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn from_f64(v: f64) -> Self {
        <BigRational as num_traits::FromPrimitive>::from_f64(v).expect("finite float")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_finite_val(&self) -> bool {
        true
    }
    fn sign_eps(&self) -> Sign {
        if self.is_zero() {
            Sign::Boundary
        } else if self.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

pub(crate) fn scmp<S: Scalar>(a: &S, b: &S) -> std::cmp::Ordering {
    a.partial_cmp(b).expect("scalar comparisons are total")
}
