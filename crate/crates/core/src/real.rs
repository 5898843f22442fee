//! Scalar abstraction for the spectral kernels.

use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps, ToPrimitive};

/// Floating-point scalar the whole crate is generic over: `f32` or `f64`.
///
/// Bundles the numeric traits the spectral kernels need plus FFT support.
/// Tolerances quoted throughout the crate assume `f64`; `f32` works but
/// loses roughly seven digits everywhere.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssignOps
    + rustfft::FftNum
    + fmt::Display
    + fmt::LowerExp
{
    /// Lift an `f64` literal into the scalar type.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable")
    }

    /// Lossy view as `f64` (exact for `f32` and `f64`).
    fn to64(self) -> f64 {
        self.to_f64().expect("scalar not representable as f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}
