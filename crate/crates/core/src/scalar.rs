//! Scalar abstraction: all numerics are generic over the real float type.

use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar the solvers are generic over (`f32` or `f64` in practice).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

/// Complex number over the generic scalar.
pub type C<T> = num_complex::Complex<T>;

/// Convert an `f64` literal into the scalar type.
#[inline]
pub fn lit<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("literal not representable in scalar type")
}

/// Complex literal from `f64` parts.
#[inline]
pub fn cplx<T: Scalar>(re: f64, im: f64) -> C<T> {
    C::new(lit(re), lit(im))
}

/// The imaginary unit.
#[inline]
pub fn i<T: Scalar>() -> C<T> {
    C::new(T::zero(), T::one())
}
