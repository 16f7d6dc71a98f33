//! Coefficient rings: exact scalars, sparse commutative polynomials and
//! their fraction field.

mod field;
mod gcd;
mod parse;
mod poly;
mod ratfun;
mod variable;

use std::fmt::Debug;

pub use field::{is_prime, Field, Modulus, Scalar};
pub use gcd::poly_gcd;
pub use parse::parse_comm;
pub use poly::{CommPoly, Monomial};
pub use ratfun::RationalFunction;
pub use variable::Variable;
pub(crate) use poly::write_terms;

/// Shared interface of everything that can sit inside a [`Matrix`] or a
/// [`FormalSeries`](crate::quantization::FormalSeries).
///
/// Binary methods panic when the operands live over different fields; the
/// public `checked_*` inherent methods of each type return
/// [`Error::FieldMismatch`](crate::Error::FieldMismatch) instead.
///
/// [`Matrix`]: crate::matrix::Matrix
pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

/// A ring that contains the ground field as scalars.
pub trait Coefficient: Ring {
    fn field(&self) -> Field;
    fn from_scalar(c: &Scalar) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
}

/// A coefficient ring in which every nonzero element is invertible.
pub trait FieldElement: Coefficient {
    fn inv(&self) -> crate::Result<Self>;
}

impl Ring for Scalar {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }

    fn one_like(&self) -> Self {
        self.field().one()
    }

    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("field mismatch")
    }

    fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("field mismatch")
    }

    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("field mismatch")
    }

    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
}

impl Coefficient for Scalar {
    fn field(&self) -> Field {
        Scalar::field(self)
    }

    fn from_scalar(c: &Scalar) -> Self {
        c.clone()
    }

    fn scale(&self, c: &Scalar) -> Self {
        Ring::mul(self, c)
    }
}

impl FieldElement for Scalar {
    fn inv(&self) -> crate::Result<Self> {
        Scalar::inv(self)
    }
}

macro_rules! ring_ops {
    ($t:ty) => {
        impl std::ops::Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                $crate::rings::Ring::add(self, rhs)
            }
        }
        impl std::ops::Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                $crate::rings::Ring::sub(self, rhs)
            }
        }
        impl std::ops::Mul for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                $crate::rings::Ring::mul(self, rhs)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::rings::Ring::neg(self)
            }
        }
    };
}
pub(crate) use ring_ops;

ring_ops!(Scalar);
