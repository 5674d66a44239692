//! Scalar abstraction: the whole geometry/fitting/filtering core is generic
//! over `Real`, so the same code runs in `f32` or `f64`. The harness and CLI
//! pin `f64` through the crate-root aliases.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::NumCast
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Lossy conversion from an `f64` constant into the working scalar.
#[inline]
pub fn cast<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("f64 constant representable in scalar type")
}

/// Widen the working scalar to `f64` (exact for both supported types).
#[inline]
pub fn to_f64<F: Real>(x: F) -> f64 {
    x.to_f64().expect("scalar representable as f64")
}
