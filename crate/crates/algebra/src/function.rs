//! Common interface over exact rational functions and truncated series, so
//! geometric formulas are written once for both map modes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::Result;
use crate::poly::Poly;
use crate::ratfn::{compose_poly, RationalFn};
use crate::scalar::GaussianRational;
use crate::series::{compose_poly_series, TruncSeries};
use crate::vars::{Var, VariableSpace};

pub trait Function:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn space(&self) -> &Arc<VariableSpace>;
    /// A polynomial lifted into the same kind (and truncation order) as `self`.
    fn lift(&self, p: &Poly) -> Self;
    fn try_div(&self, other: &Self) -> Result<Self>;
    fn conj(&self) -> Self;
    fn derivative(&self, v: Var) -> Self;
    fn scale(&self, c: &GaussianRational) -> Self;
    fn is_zero(&self) -> bool;
    /// Substitutes functions into a polynomial.
    fn compose_poly(p: &Poly, bindings: &[Self]) -> Result<Self>;
    /// Substitutes one function per variable of `self`'s space.
    fn compose(&self, bindings: &[Self]) -> Result<Self>;
    /// Value at the origin of the space.
    fn at_origin(&self) -> Result<GaussianRational>;

    fn constant_like(&self, c: GaussianRational) -> Self {
        self.lift(&Poly::constant(self.space(), c))
    }

    fn zero_like(&self) -> Self {
        self.lift(&Poly::zero(self.space()))
    }

    fn var_like(&self, v: Var) -> Self {
        self.lift(&Poly::var(self.space(), v))
    }
}

impl Function for RationalFn {
    fn space(&self) -> &Arc<VariableSpace> {
        RationalFn::space(self)
    }
    fn lift(&self, p: &Poly) -> Self {
        RationalFn::from_poly(p.clone())
    }
    fn try_div(&self, other: &Self) -> Result<Self> {
        RationalFn::try_div(self, other)
    }
    fn conj(&self) -> Self {
        RationalFn::conj(self)
    }
    fn derivative(&self, v: Var) -> Self {
        RationalFn::derivative(self, v)
    }
    fn scale(&self, c: &GaussianRational) -> Self {
        RationalFn::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        RationalFn::is_zero(self)
    }
    fn compose_poly(p: &Poly, bindings: &[Self]) -> Result<Self> {
        compose_poly(p, bindings)
    }
    fn compose(&self, bindings: &[Self]) -> Result<Self> {
        RationalFn::compose(self, bindings)
    }
    fn at_origin(&self) -> Result<GaussianRational> {
        self.eval(&vec![GaussianRational::zero(); self.space().len()])
    }
}

impl Function for TruncSeries {
    fn space(&self) -> &Arc<VariableSpace> {
        TruncSeries::space(self)
    }
    fn lift(&self, p: &Poly) -> Self {
        TruncSeries::from_poly(p, self.order())
    }
    fn try_div(&self, other: &Self) -> Result<Self> {
        TruncSeries::try_div(self, other)
    }
    fn conj(&self) -> Self {
        TruncSeries::conj(self)
    }
    fn derivative(&self, v: Var) -> Self {
        TruncSeries::derivative(self, v)
    }
    fn scale(&self, c: &GaussianRational) -> Self {
        TruncSeries::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        TruncSeries::is_zero(self)
    }
    fn compose_poly(p: &Poly, bindings: &[Self]) -> Result<Self> {
        compose_poly_series(p, bindings)
    }
    fn compose(&self, bindings: &[Self]) -> Result<Self> {
        TruncSeries::compose(self, bindings)
    }
    fn at_origin(&self) -> Result<GaussianRational> {
        Ok(self.constant_term())
    }
}
