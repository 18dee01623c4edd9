//! Exact arithmetic substrate.
//!
//! [`ExactComplex`] carries every parameter value (`zeta`, `alpha`, `beta`, ...)
//! at rational sample points; [`ParamPolynomial`] carries the symbolic
//! dependence on real indeterminates. Both implement [`Ring`], the coefficient
//! interface used by the exterior algebra.

mod complex;
mod poly;

pub use complex::{rational, ExactComplex, FloatComplex};
pub use poly::{Monomial, ParamPolynomial, Variables, MAX_VARS};

pub use num_rational::BigRational;

use std::fmt::Debug;

/// Commutative ring with unit, used as the coefficient ring of forms.
///
/// Method names carry a `_ref` suffix so they never collide with the
/// `std::ops` impls on the concrete types.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Embedding of the exact complex rationals.
    fn from_exact(c: &ExactComplex) -> Self;

    fn scale_exact(&self, c: &ExactComplex) -> Self {
        self.mul_ref(&Self::from_exact(c))
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.add_ref(rhs);
    }
}

/// Rings with a complex conjugation fixing the real indeterminates.
pub trait Conjugate {
    fn conj(&self) -> Self;
}

/// Rings in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> crate::error::Result<Self>;
}

impl Field for ExactComplex {
    fn inv(&self) -> crate::error::Result<Self> {
        ExactComplex::inv(self)
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    /// Real part; callers only embed real values.
    fn from_exact(c: &ExactComplex) -> Self {
        debug_assert!(c.is_real());
        c.re.clone()
    }
}

impl Field for BigRational {
    fn inv(&self) -> crate::error::Result<Self> {
        if num_traits::Zero::is_zero(self) {
            Err(crate::error::GctkError::DivisionByZero)
        } else {
            Ok(num_traits::Inv::inv(self.clone()))
        }
    }
}
