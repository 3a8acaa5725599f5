//! Rationals as a coefficient field, used by the specialized mode.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ArithError, Field, Ring};

pub type Rat = BigRational;

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        <BigRational as Zero>::zero()
    }
    fn one_like(&self) -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn mul_rat(&self, r: &BigRational) -> Self {
        self * r
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rat(r: &BigRational) -> Self {
        r.clone()
    }
    fn inv(&self) -> Result<Self, ArithError> {
        if Zero::is_zero(self) {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}
