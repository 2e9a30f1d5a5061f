use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Scalar type the toolkit's numerics are generic over: `f32` or `f64`.
///
/// The physics here is plain floating-point arithmetic, so everything is
/// written once against this trait and instantiated at the precision the
/// caller wants. The CLI and the crate-root aliases fix `f64`.
pub trait Real: Float + FromPrimitive + Debug + Display + 'static {
    /// Converts an `f64` literal into the scalar type.
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("literal must be representable")
    }

    /// Widens to `f64` for error payloads and output formatting.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar must be representable as f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}
