//! Integer abstraction shared by the numeration and the SMNIST codec.
//!
//! Codes grow quickly: variables of the n-th sort live at multiples of
//! `2^(2n+3)` and the SMNIST block for side `l` holds `2^(l²) − 2` patterns.
//! Everything that produces or consumes a code is therefore generic over
//! [`CodeInt`], which is implemented for the unsigned primitives and for
//! [`num_bigint::BigUint`]. Primitive instantiations report overflow instead
//! of wrapping.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, ToPrimitive};

/// An unsigned integer type usable as a PaRa / SMNIST code.
pub trait CodeInt:
    Integer
    + Clone
    + Debug
    + Display
    + Hash
    + FromStr
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// `2^exp`, or `None` when it does not fit.
    fn checked_pow2(exp: u32) -> Option<Self> {
        num_traits::checked_pow(Self::two(), exp as usize)
    }

    /// 2-adic valuation; `None` for zero.
    fn two_adic_valuation(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let two = Self::two();
        let mut v = 0;
        let mut m = self.clone();
        while m.is_even() {
            m = m / two.clone();
            v += 1;
        }
        Some(v)
    }
}

impl<T> CodeInt for T where
    T: Integer
        + Clone
        + Debug
        + Display
        + Hash
        + FromStr
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}
