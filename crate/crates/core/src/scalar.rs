//! Exact scalar types shared by measures, matrices and reports.

use std::fmt::Debug;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, NumAssign, Signed};

/// Exact ordered field or ring element. Floating point types do not
/// qualify: every comparison made on measures must be decidable.
pub trait Exact: Clone + Ord + Debug + Signed + NumAssign + Send + Sync + 'static {}

impl<T> Exact for T where T: Clone + Ord + Debug + Signed + NumAssign + Send + Sync + 'static {}

/// Exact integer scalar with overflow detection.
pub trait ExactInt: Exact + Integer + CheckedAdd + CheckedMul + Copy + TryFrom<i64> + Into<i128> {}

impl<T> ExactInt for T where
    T: Exact + Integer + CheckedAdd + CheckedMul + Copy + TryFrom<i64> + Into<i128>
{
}

/// Exact rational number.
pub type Rational = Ratio<i64>;

/// Formats a rational as `p/q`, or `p` when integral.
pub fn fmt_ratio(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Embeds a machine integer in an exact scalar.
///
/// # Panics
/// If `T` cannot represent `x`.
pub fn from_int<T: num_traits::FromPrimitive>(x: i64) -> T {
    T::from_i64(x).expect("integer is representable in the scalar type")
}

/// Serializers writing rationals as `p/q` strings.
pub mod ratio_serde {
    use serde::ser::{SerializeSeq, Serializer};

    use super::{fmt_ratio, Rational};

    pub fn one<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_ratio(r))
    }

    pub fn opt<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&fmt_ratio(r)),
            None => s.serialize_none(),
        }
    }

    pub fn seq<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut q = s.serialize_seq(Some(rs.len()))?;
        for r in rs {
            q.serialize_element(&fmt_ratio(r))?;
        }
        q.end()
    }
}
