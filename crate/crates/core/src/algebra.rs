//! The arithmetic interface shared by symbolic and numeric scalars.

use std::fmt;

use crate::error::Result;
use crate::superscalar::ParityClass;

/// A supercommutative ring whose even elements with non-zero body are
/// invertible. Supermatrix algorithms are written against this trait so
/// the same code runs over symbolic [`crate::superscalar::Scalar`]s and
/// numeric [`crate::grassmann::Grassmann`] values.
pub trait SuperAlgebra: Clone + fmt::Debug + Send + Sync + Sized {
    type Ctx: Clone + fmt::Debug + Send + Sync;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, v: i64) -> Self;
    fn from_rational(ctx: &Self::Ctx, v: &num_rational::BigRational) -> Self;
    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_int(ctx, 1)
    }
    fn context(&self) -> Self::Ctx;

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn times(&self, other: &Self) -> Self;

    fn is_zero(&self) -> bool;
    fn parity_class(&self) -> ParityClass;
    fn has_unit_body(&self) -> bool;
    fn inverse_even(&self) -> Result<Self>;

    fn same_as(&self, other: &Self) -> bool {
        self.minus(other).is_zero()
    }
}

impl SuperAlgebra for crate::superscalar::Scalar {
    type Ctx = crate::superscalar::Ring;

    fn zero(ctx: &Self::Ctx) -> Self {
        crate::superscalar::Scalar::zero(ctx)
    }
    fn from_int(ctx: &Self::Ctx, v: i64) -> Self {
        crate::superscalar::Scalar::from_int(ctx, v)
    }
    fn from_rational(ctx: &Self::Ctx, v: &num_rational::BigRational) -> Self {
        crate::superscalar::Scalar::from_rational(ctx, v)
    }
    fn context(&self) -> Self::Ctx {
        self.ring().clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn is_zero(&self) -> bool {
        crate::superscalar::Scalar::is_zero(self)
    }
    fn parity_class(&self) -> ParityClass {
        self.parity()
    }
    fn has_unit_body(&self) -> bool {
        crate::superscalar::Scalar::has_unit_body(self)
    }
    fn inverse_even(&self) -> Result<Self> {
        self.invert_even_unit()
    }
    fn same_as(&self, other: &Self) -> bool {
        self.equals(other)
    }
}
