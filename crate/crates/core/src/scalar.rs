//! Scalar abstraction shared by the state engine and the closed-form models.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Sum
    + Send
    + Sync
    + serde::Serialize
    + 'static
{
    /// Converts an `f64` literal into this scalar.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `10 log10(x)`; `-inf` at zero.
#[inline]
pub fn to_db<T: Real>(x: T) -> T {
    T::lit(10.0) * x.log10()
}

/// Conjugate amplitude gain `G = sqrt(1 + g^2)` of a parametric amplifier.
#[inline]
pub fn big_gain<T: Real>(g: T) -> T {
    (T::one() + g * g).sqrt()
}
