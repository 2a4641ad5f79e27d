//! Closed-form expressions and their conversion to exact functions.

use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::ratfn::RationalFn;
use crate::scalar::GaussianRational;
use crate::series::TruncSeries;
use crate::vars::VariableSpace;

#[derive(Clone, PartialEq, Debug)]
pub enum Expr {
    Num(GaussianRational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Sqrt(Box<Expr>),
}

impl Expr {
    pub fn contains_sqrt(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::Var(_) => false,
            Expr::Sqrt(_) => true,
            Expr::Neg(a) | Expr::Pow(a, _) => a.contains_sqrt(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.contains_sqrt() || b.contains_sqrt()
            }
        }
    }

    /// Exact rational function; `sqrt` is rejected.
    pub fn to_rational(&self, space: &Arc<VariableSpace>) -> Result<RationalFn> {
        Ok(match self {
            Expr::Num(c) => RationalFn::constant(space, c.clone()),
            Expr::Var(name) => RationalFn::var(space, space.var(name)?),
            Expr::Neg(a) => -&a.to_rational(space)?,
            Expr::Add(a, b) => a.to_rational(space)?.try_add(&b.to_rational(space)?)?,
            Expr::Sub(a, b) => a.to_rational(space)?.try_sub(&b.to_rational(space)?)?,
            Expr::Mul(a, b) => a.to_rational(space)?.try_mul(&b.to_rational(space)?)?,
            Expr::Div(a, b) => a.to_rational(space)?.try_div(&b.to_rational(space)?)?,
            Expr::Pow(a, e) => a.to_rational(space)?.pow(*e),
            Expr::Sqrt(_) => {
                return Err(AlgebraError::Precondition("sqrt is only available in series mode".into()))
            }
        })
    }

    /// Expansion at the origin through weighted order `order`, taking the
    /// principal branch of every square root.
    pub fn lift_series(&self, space: &Arc<VariableSpace>, order: u32) -> Result<TruncSeries> {
        Ok(match self {
            Expr::Num(c) => TruncSeries::constant(space, c.clone(), order),
            Expr::Var(name) => TruncSeries::var(space, space.var(name)?, order),
            Expr::Neg(a) => -&a.lift_series(space, order)?,
            Expr::Add(a, b) => a.lift_series(space, order)?.try_add(&b.lift_series(space, order)?)?,
            Expr::Sub(a, b) => a.lift_series(space, order)?.try_sub(&b.lift_series(space, order)?)?,
            Expr::Mul(a, b) => a.lift_series(space, order)?.try_mul(&b.lift_series(space, order)?)?,
            Expr::Div(a, b) => a.lift_series(space, order)?.try_div(&b.lift_series(space, order)?)?,
            Expr::Pow(a, e) => a.lift_series(space, order)?.pow(*e),
            Expr::Sqrt(a) => a.lift_series(space, order)?.sqrt()?,
        })
    }
}
