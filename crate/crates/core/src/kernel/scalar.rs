use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::Rational;

/// Exact scalar field element, optionally carrying exact derivatives.
///
/// Every recursion in the crate is written once against this trait: run it over
/// [`Rational`] to get values, over [`super::Jet1`] to get values with all first
/// partials, or over [`super::Jet2`] for second partials as well.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// A constant: all derivatives vanish.
    fn constant(value: Rational) -> Self;

    /// The coordinate function `u^index` of an `n`-dimensional chart, evaluated at `value`.
    fn coordinate(value: Rational, index: usize, n: usize) -> Self;

    fn value(&self) -> &Rational;

    /// True iff the value and every carried derivative are zero.
    fn is_nil(&self) -> bool;

    /// Multiplicative inverse; `None` when the value is zero.
    fn recip(&self) -> Option<Self>;

    fn scale(&self, factor: &Rational) -> Self;

    fn nil() -> Self {
        Self::constant(Rational::zero())
    }

    fn unit() -> Self {
        Self::constant(Rational::one())
    }
}

impl Scalar for Rational {
    fn constant(value: Rational) -> Self {
        value
    }

    fn coordinate(value: Rational, _index: usize, _n: usize) -> Self {
        value
    }

    fn value(&self) -> &Rational {
        self
    }

    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }

    fn recip(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(num_traits::Inv::inv(self))
        }
    }

    fn scale(&self, factor: &Rational) -> Self {
        self * factor
    }
}

/// Lifts a slice of coordinate values to scalar coordinate functions.
pub fn lift_point<S: Scalar>(coords: &[Rational]) -> Vec<S> {
    let n = coords.len();
    coords
        .iter()
        .enumerate()
        .map(|(i, c)| S::coordinate(c.clone(), i, n))
        .collect()
}

/// Sum of a sequence of scalars.
pub fn sum<S: Scalar>(terms: impl IntoIterator<Item = S>) -> S {
    terms.into_iter().fold(S::nil(), |acc, t| acc + &t)
}
