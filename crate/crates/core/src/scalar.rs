//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar representable as f64")
    }

    /// `max(nominal, factor * epsilon)`: a tolerance that never sits below
    /// what the scalar type can resolve.
    #[inline]
    fn tol(nominal: f64, factor: f64) -> Self {
        let floor = Self::epsilon() * Self::lit(factor);
        Self::lit(nominal).max(floor)
    }
}

impl Real for f32 {}
impl Real for f64 {}
