//! Real scalar abstraction underlying all complex arithmetic in this crate.
//!
//! Every matrix, vector and tolerance is expressed over `Complex<T>` for a
//! real floating-point `T`. The concrete aliases at the crate root pin
//! `T = f64`, which is what the CLI and all JSON interfaces use.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Real floating-point scalar the library is generic over.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum<Self>
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` constant (tolerances, literals) into `Self`.
    fn real(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant")
    }

    /// Lossy view of `self` as `f64`, for diagnostics and reports.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
