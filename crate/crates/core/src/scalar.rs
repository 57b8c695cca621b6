//! Field-scalar abstraction shared by the polynomial and linear-algebra cores.
//!
//! The same elimination, substitution and sparse-polynomial code runs over
//! the rationals, over cyclotomic fields and over large prime fields; the
//! concrete instantiations live at the crate root as type aliases.

use std::fmt::Debug;
use std::ops::{Div, Neg, Sub};

use num_traits::{One, Zero};

pub use num_rational::BigRational as Rat;

/// An exact field element. `Zero`/`One` supply the additive and
/// multiplicative structure; `try_inv` is total and reports
/// non-invertibility instead of panicking.
pub trait FieldScalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
    fn try_inv(&self) -> Option<Self>;
}

impl FieldScalar for Rat {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

/// Convenience constructors for rationals.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}
