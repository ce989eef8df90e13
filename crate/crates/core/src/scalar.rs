//! Integer scalar abstraction for the exact linear-algebra layer.

use std::fmt;

use num_integer::Integer;
use num_traits::{NumAssign, Signed};

/// Exact integer scalar underlying Goeritz data and the signature engines.
///
/// Satisfied by the built-in signed integers and by `num_bigint::BigInt`,
/// which is the default everywhere (see the crate-root aliases). Division is
/// only performed where divisibility is guaranteed (fraction-free
/// elimination) or after lifting to `num_rational::Ratio<T>`.
pub trait IntScalar:
    Integer + Signed + NumAssign + Clone + From<i64> + fmt::Debug + fmt::Display
{
}

impl<T> IntScalar for T where
    T: Integer + Signed + NumAssign + Clone + From<i64> + fmt::Debug + fmt::Display
{
}
