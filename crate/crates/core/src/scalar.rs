//! Real scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point type the simulator and analysis code are generic over.
///
/// Implemented for `f32` and `f64`. Tolerances that the rest of the crate
/// compares against (unitarity, normalisation) scale with the precision of
/// the type.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Tolerance for `U†U = I` checks on gate matrices.
    const UNITARY_TOL: Self;
    /// Tolerance for `Σ|ψ|² = 1` checks on state vectors.
    const NORM_TOL: Self;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Conversion from a count.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const UNITARY_TOL: f64 = 1e-12;
    const NORM_TOL: f64 = 1e-12;
}

impl Scalar for f32 {
    const UNITARY_TOL: f32 = 1e-5;
    const NORM_TOL: f32 = 1e-5;
}

/// Complex amplitude over a [`Scalar`].
pub type Complex<T> = num_complex::Complex<T>;
