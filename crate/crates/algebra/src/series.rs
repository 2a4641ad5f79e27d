//! Power series at the origin truncated by weighted degree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{AlgebraError, Result};
use crate::poly::{Monomial, Poly};
use crate::ratfn::RationalFn;
use crate::scalar::GaussianRational;
use crate::vars::{same_space, Var, VariableSpace};

/// A series known through weighted order `order`; weights come from the space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    poly: Poly,
    order: u32,
}

impl TruncSeries {
    pub fn from_poly(p: &Poly, order: u32) -> Self {
        Self { poly: p.truncate_weighted(order), order }
    }

    pub fn zero(space: &Arc<VariableSpace>, order: u32) -> Self {
        Self { poly: Poly::zero(space), order }
    }

    pub fn one(space: &Arc<VariableSpace>, order: u32) -> Self {
        Self::constant(space, GaussianRational::one(), order)
    }

    pub fn constant(space: &Arc<VariableSpace>, c: GaussianRational, order: u32) -> Self {
        Self { poly: Poly::constant(space, c), order }
    }

    pub fn var(space: &Arc<VariableSpace>, v: Var, order: u32) -> Self {
        Self::from_poly(&Poly::var(space, v), order)
    }

    /// Expansion at the origin; the denominator must not vanish there.
    pub fn from_rational(f: &RationalFn, order: u32) -> Result<Self> {
        let n = Self::from_poly(f.numer(), order);
        let d = Self::from_poly(f.denom(), order);
        n.try_div(&d)
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        self.poly.space()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The retained terms as a polynomial.
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.poly.constant_term()
    }

    /// Lowest weighted degree present, `None` for the zero series.
    pub fn valuation(&self) -> Option<u32> {
        self.poly.min_weighted_degree()
    }

    pub fn with_order(&self, order: u32) -> Self {
        Self::from_poly(&self.poly, order.min(self.order))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { poly: self.poly.scale(c), order: self.order }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_space(self.space(), other.space()) {
            Ok(())
        } else {
            Err(AlgebraError::SpaceMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let order = self.order.min(other.order);
        Ok(Self::from_poly(&self.poly.try_add(&other.poly)?, order))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let order = self.order.min(other.order);
        Ok(Self::from_poly(&self.poly.try_sub(&other.poly)?, order))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let order = self.order.min(other.order);
        let space = self.space();
        let lhs: Vec<_> = self.poly.terms().map(|(m, c)| (m, c, m.weighted_degree(space))).collect();
        let rhs: Vec<_> = other.poly.terms().map(|(m, c)| (m, c, m.weighted_degree(space))).collect();
        let mut terms: Vec<(Monomial, GaussianRational)> = Vec::new();
        for (m1, c1, d1) in &lhs {
            if *d1 > order {
                continue;
            }
            for (m2, c2, d2) in &rhs {
                if d1 + d2 <= order {
                    terms.push((m1.mul(m2), *c1 * *c2));
                }
            }
        }
        Ok(Self { poly: Poly::from_terms(space, terms), order })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.space(), self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.constant_term();
        let c0_inv = c0.inv().ok_or(AlgebraError::DivisionByZero)?;
        // 1/s = c0⁻¹ Σ (-u)^k with u = s/c0 - 1 of positive valuation
        let u = &self.scale(&c0_inv) - &Self::one(self.space(), self.order);
        let neg_u = -&u;
        let mut acc = Self::one(self.space(), self.order);
        let mut power = acc.clone();
        for _ in 0..self.order {
            power = &power * &neg_u;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&c0_inv))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    /// Principal square root; the constant term must be exactly 1.
    pub fn sqrt(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(AlgebraError::Branch(c0.to_string()));
        }
        let u = &*self - &Self::one(self.space(), self.order);
        let mut acc = Self::one(self.space(), self.order);
        let mut power = acc.clone();
        let mut binom = BigRational::from_integer(BigInt::from(1));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        for k in 0..self.order {
            // binom(1/2, k+1) = binom(1/2, k) · (1/2 - k)/(k + 1)
            let k = BigRational::from_integer(BigInt::from(k));
            binom = binom * (&half - &k) / (k + BigRational::from_integer(BigInt::from(1)));
            power = &power * &u;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power.scale(&GaussianRational::from_real(binom.clone()));
        }
        Ok(acc)
    }

    pub fn conj(&self) -> Self {
        Self { poly: self.poly.conj(), order: self.order }
    }

    /// Partial derivative; the known order drops by the weight of `v`.
    pub fn derivative(&self, v: Var) -> Self {
        let order = self.order.saturating_sub(self.space().weight(v));
        Self::from_poly(&self.poly.derivative(v), order)
    }

    /// Substitutes one series per variable. A binding must have valuation at
    /// least the weight of the variable it replaces when `self` is truncated.
    pub fn compose(&self, bindings: &[TruncSeries]) -> Result<Self> {
        let space = self.space().clone();
        if bindings.len() != space.len() {
            return Err(AlgebraError::Precondition(format!(
                "expected {} bindings, got {}",
                space.len(),
                bindings.len()
            )));
        }
        for (k, b) in bindings.iter().enumerate() {
            let v = Var(k);
            if self.poly.uses_var(v) && b.valuation().is_some_and(|d| d < space.weight(v)) {
                return Err(AlgebraError::Precondition(format!(
                    "binding for `{}` has valuation below its weight",
                    space.name(v)
                )));
            }
        }
        let order = bindings.iter().map(|b| b.order).min().unwrap_or(self.order).min(self.order);
        compose_poly_series(&self.poly, bindings).map(|s| s.with_order(order))
    }
}

/// Substitutes series into an exact polynomial; the order is the least
/// binding order.
pub fn compose_poly_series(p: &Poly, bindings: &[TruncSeries]) -> Result<TruncSeries> {
    let Some(first) = bindings.first() else {
        return Err(AlgebraError::Precondition("no bindings".into()));
    };
    let target = first.space().clone();
    let order = bindings.iter().map(|b| b.order).min().unwrap();
    let mut cache: Vec<Vec<TruncSeries>> = bindings.iter().map(|_| vec![TruncSeries::one(&target, order)]).collect();
    let mut acc = TruncSeries::zero(&target, order);
    for (m, c) in p.terms() {
        let mut t = TruncSeries::constant(&target, c.clone(), order);
        for (k, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while cache[k].len() <= e as usize {
                let next = cache[k].last().unwrap().try_mul(&bindings[k])?;
                cache[k].push(next);
            }
            t = t.try_mul(&cache[k][e as usize])?;
        }
        acc = acc.try_add(&t)?;
    }
    Ok(acc)
}

impl<'a> Add<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        self.try_add(rhs).expect("series add")
    }
}

impl<'a> Sub<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self.try_sub(rhs).expect("series sub")
    }
}

impl<'a> Mul<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.try_mul(rhs).expect("series mul")
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries { poly: -&self.poly, order: self.order }
    }
}

impl Add for TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: TruncSeries) -> TruncSeries {
        &self + &rhs
    }
}

impl Sub for TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: TruncSeries) -> TruncSeries {
        &self - &rhs
    }
}

impl Mul for TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: TruncSeries) -> TruncSeries {
        &self * &rhs
    }
}

impl Neg for TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        -&self
    }
}

impl fmt::Display for TruncSeries {
    /// Terms in ascending weighted order followed by `+ O(K+1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let space = self.space();
        let mut terms: Vec<_> = self.poly.terms().collect();
        terms.sort_by(|a, b| a.0.weighted_degree(space).cmp(&b.0.weighted_degree(space)).then_with(|| b.0.cmp(a.0)));
        let body = crate::poly::join_terms(terms.into_iter().map(|(m, c)| crate::poly::fmt_term(space, m, c)));
        write!(f, "{body} + O({})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_space() -> (Arc<VariableSpace>, TruncSeries) {
        let s = VariableSpace::new(&[("z", 1)], &[]);
        let z = TruncSeries::var(&s, s.var("z").unwrap(), 4);
        (s, z)
    }

    #[test]
    fn sqrt_matches_binomial_coefficients() {
        let (s, z) = z_space();
        let root = (&TruncSeries::one(&s, 4) + &z).sqrt().unwrap();
        let zp = Poly::var(&s, s.var("z").unwrap());
        let expected = [(0, 1, 1), (1, 1, 2), (2, -1, 8), (3, 1, 16), (4, -5, 128)]
            .iter()
            .fold(Poly::zero(&s), |acc, &(e, n, d)| &acc + &zp.pow(e).scale(&GaussianRational::ratio(n, d)));
        assert_eq!(root.poly(), &expected);
    }

    #[test]
    fn sqrt_of_one_and_branch_error() {
        let (s, z) = z_space();
        assert_eq!(TruncSeries::one(&s, 4).sqrt().unwrap(), TruncSeries::one(&s, 4));
        let two = TruncSeries::constant(&s, 2.into(), 4);
        assert!(matches!((&two + &z).sqrt(), Err(AlgebraError::Branch(_))));
    }

    #[test]
    fn inverse_of_geometric_series() {
        let (s, z) = z_space();
        let one = TruncSeries::one(&s, 4);
        let inv = (&one - &z).inv().unwrap();
        assert_eq!(&inv * &(&one - &z), one);
        assert_eq!(z.inv(), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn weighted_truncation_and_derivative_order() {
        let s = VariableSpace::new(&[("z", 1), ("w", 2)], &[]);
        let w = TruncSeries::var(&s, s.var("w").unwrap(), 5);
        let z = TruncSeries::var(&s, s.var("z").unwrap(), 5);
        assert!(w.pow(3).is_zero());
        assert!(!(&w * &w).try_mul(&z).unwrap().is_zero());
        let d = (&w * &w).derivative(s.var("w").unwrap());
        assert_eq!(d.order(), 3);
        assert_eq!(d, w.scale(&2.into()).with_order(3));
    }
}
