//! Scalar traits the library is generic over.
//!
//! Cut, flow and strength computations run on exact signed integers so that
//! the zero tests in the strength iteration are exact. Label propagation and
//! k-NN construction run on floating point.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, FromPrimitive, PrimInt, Signed, ToPrimitive};

/// Exact integer weight: `i32`, `i64` or `i128`.
///
/// Signed because shifted objectives such as `d·Γ(T) − p·|T|` go negative.
pub trait Exact:
    PrimInt
    + Signed
    + Integer
    + CheckedAdd
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Hash
    + Debug
    + Display
    + FromStr
    + Send
    + Sync
    + 'static
{
    /// Converts a node count into the weight type.
    fn from_count(count: usize) -> Option<Self> {
        <Self as FromPrimitive>::from_usize(count)
    }
}

impl Exact for i32 {}
impl Exact for i64 {}
impl Exact for i128 {}

/// Floating point scalar for the real-valued parts (f32 or f64).
pub trait Real:
    num_traits::Float + FromPrimitive + Debug + Display + Default + FromStr + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}
