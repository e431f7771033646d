//! Scalar abstraction shared by every computation in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the region geometry is evaluated in: `f32` or `f64`.
///
/// The rate function is transcendental, so exact rational scalars are not
/// supported.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Every literal used by the crate is
    /// representable (possibly rounded) in both supported types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Default absolute tolerance on constraint slack.
    fn membership_tol() -> Self;

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }
}

impl Scalar for f64 {
    #[inline]
    fn membership_tol() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    #[inline]
    fn membership_tol() -> Self {
        1e-5
    }
}
