//! Exact arithmetic: rationals, Gaussian rationals, and polynomials in the
//! ten parameters of the general identity.

mod gauss;
mod monomial;
mod poly;
mod rational;

pub use gauss::GaussRat;
pub use monomial::{ParamMonomial, NVARS};
pub use poly::MultiPoly;
pub use rational::BigRat;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial division leaves a remainder")]
    NotDivisible,
    #[error("parse error: {0}")]
    Parse(String),
}

/// The commutative rings used as coefficients of operator elements and as
/// matrix entries.
pub trait Ring: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / rhs` when the quotient exists in the ring.
    fn exact_div(&self, rhs: &Self) -> Result<Self, ArithError>;
}

macro_rules! impl_ring {
    ($t:ty, $div:ident) => {
        impl Ring for $t {
            fn zero() -> Self {
                <$t>::zero()
            }
            fn one() -> Self {
                <$t>::one()
            }
            fn is_zero(&self) -> bool {
                <$t>::is_zero(self)
            }
            fn add(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn sub(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn mul(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn neg(&self) -> Self {
                -self
            }
            fn exact_div(&self, rhs: &Self) -> Result<Self, ArithError> {
                <$t>::$div(self, rhs)
            }
        }
    };
}

impl_ring!(BigRat, checked_div);
impl_ring!(GaussRat, checked_div);
impl_ring!(MultiPoly, exact_div);
