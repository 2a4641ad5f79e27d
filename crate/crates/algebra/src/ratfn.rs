//! Rational functions in reduced canonical form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::gcd::gcd;
use crate::poly::Poly;
use crate::scalar::GaussianRational;
use crate::vars::{same_space, Var, VariableSpace};

/// `num / den` with `gcd(num, den) = 1` and `den` monic in graded-lex order.
///
/// Canonical form makes structural equality coincide with functional equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if !same_space(num.space(), den.space()) {
            return Err(AlgebraError::SpaceMismatch);
        }
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Ok(Self::normalized(num, den))
    }

    /// Assumes `gcd(num, den) = 1` and only fixes the scalar normalization.
    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            let s = den.space().clone();
            return Self { num: Poly::zero(&s), den: Poly::one(&s) };
        }
        let lc = den.leading_term().unwrap().1.clone();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.inv().unwrap();
            Self { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.space());
        Self { num: p, den }
    }

    pub fn zero(space: &Arc<VariableSpace>) -> Self {
        Self::from_poly(Poly::zero(space))
    }

    pub fn one(space: &Arc<VariableSpace>) -> Self {
        Self::from_poly(Poly::one(space))
    }

    pub fn constant(space: &Arc<VariableSpace>, c: GaussianRational) -> Self {
        Self::from_poly(Poly::constant(space, c))
    }

    pub fn var(space: &Arc<VariableSpace>, v: Var) -> Self {
        Self::from_poly(Poly::var(space, v))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        self.num.space()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_poly(&self) -> Option<Poly> {
        self.den.as_constant().map(|c| self.num.scale(&c.inv().unwrap()))
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(&n / &d),
            _ => None,
        }
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.num.uses_var(v) || self.den.uses_var(v)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.space());
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !same_space(self.space(), other.space()) {
            return Err(AlgebraError::SpaceMismatch);
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den == other.den {
            return Self::new(&self.num + &other.num, self.den.clone());
        }
        let g = gcd(&self.den, &other.den);
        if g.is_constant() {
            let num = &(&self.num * &other.den) + &(&other.num * &self.den);
            return Ok(Self::normalized(num, &self.den * &other.den));
        }
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = other.den.div_exact(&g).unwrap();
        let t = &(&self.num * &d1) + &(&other.num * &b1);
        let g2 = gcd(&t, &g);
        let num = t.div_exact(&g2).unwrap();
        let den = &b1 * &other.den.div_exact(&g2).unwrap();
        Ok(Self::normalized(num, den))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !same_space(self.space(), other.space()) {
            return Err(AlgebraError::SpaceMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.space()));
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = other.den.div_exact(&g1).unwrap();
        let c = other.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        Ok(Self::normalized(&a * &c, &b * &d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        Self { num: self.num.pow(e), den: self.den.pow(e) }.renormalized()
    }

    fn renormalized(self) -> Self {
        Self::normalized(self.num, self.den)
    }

    pub fn conj(&self) -> Self {
        Self { num: self.num.conj(), den: self.den.conj() }.renormalized()
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Quotient-rule partial derivative.
    pub fn derivative(&self, v: Var) -> Self {
        let dn = self.num.derivative(v);
        if !self.den.uses_var(v) {
            return Self::normalized(dn, self.den.clone());
        }
        let dd = self.den.derivative(v);
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        Self::new(top, self.den.pow(2)).unwrap()
    }

    pub fn eval(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        let d = self.den.eval(point);
        self.num.eval(point).checked_div(&d)
    }

    /// Substitutes one rational function per variable of `self`'s space.
    pub fn compose(&self, bindings: &[RationalFn]) -> Result<Self> {
        let n = compose_poly(&self.num, bindings)?;
        let d = compose_poly(&self.den, bindings)?;
        n.try_div(&d)
    }

    pub fn substitute(&self, v: Var, value: &RationalFn) -> Result<Self> {
        let bindings: Vec<RationalFn> = self
            .space()
            .all()
            .map(|u| if u == v { value.clone() } else { RationalFn::var(self.space(), u) })
            .collect();
        self.compose(&bindings)
    }

    pub fn reindex(&self, target: &Arc<VariableSpace>, map: &[Var]) -> Self {
        Self { num: self.num.reindex(target, map), den: self.den.reindex(target, map) }.renormalized()
    }
}

/// Evaluates `p` at rational bindings over a common denominator.
///
/// Bindings sharing a denominator are grouped so that the denominator of the
/// result is `Π d_g^{E_g}` with `E_g` the largest total degree of `p` in the
/// group's variables.
pub fn compose_poly(p: &Poly, bindings: &[RationalFn]) -> Result<RationalFn> {
    if bindings.len() != p.space().len() {
        return Err(AlgebraError::Precondition(format!(
            "expected {} bindings, got {}",
            p.space().len(),
            bindings.len()
        )));
    }
    let Some(first) = bindings.first() else { return Ok(RationalFn::from_poly(p.clone())) };
    let target = first.space().clone();
    if bindings.iter().any(|b| !same_space(b.space(), &target)) {
        return Err(AlgebraError::SpaceMismatch);
    }
    let mut groups: Vec<Poly> = Vec::new();
    let mut group_of = Vec::with_capacity(bindings.len());
    for b in bindings {
        match groups.iter().position(|d| *d == b.den) {
            Some(k) => group_of.push(k),
            None => {
                groups.push(b.den.clone());
                group_of.push(groups.len() - 1);
            }
        }
    }
    let group_deg = |m: &crate::poly::Monomial| -> Vec<u32> {
        let mut e = vec![0u32; groups.len()];
        for (k, &x) in m.exponents().iter().enumerate() {
            e[group_of[k]] += x as u32;
        }
        e
    };
    let mut top = vec![0u32; groups.len()];
    for (m, _) in p.terms() {
        for (t, e) in top.iter_mut().zip(group_deg(m)) {
            *t = (*t).max(e);
        }
    }
    let mut num_pows: Vec<BTreeMap<u16, Poly>> = vec![BTreeMap::new(); bindings.len()];
    let mut den_pows: Vec<BTreeMap<u32, Poly>> = vec![BTreeMap::new(); groups.len()];
    let mut acc = Poly::zero(&target);
    for (m, c) in p.terms() {
        let mut t = Poly::constant(&target, c.clone());
        for (k, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                let pk = num_pows[k].entry(e).or_insert_with(|| bindings[k].num.pow(e as u32));
                t = &t * pk;
            }
        }
        for (g, e) in group_deg(m).into_iter().enumerate() {
            let missing = top[g] - e;
            if missing > 0 && !groups[g].is_one_poly() {
                let dg = den_pows[g].entry(missing).or_insert_with(|| groups[g].pow(missing));
                t = &t * dg;
            }
        }
        acc = &acc + &t;
    }
    let mut den = Poly::one(&target);
    for (g, d) in groups.iter().enumerate() {
        if top[g] > 0 && !d.is_one_poly() {
            den = &den * &d.pow(top[g]);
        }
    }
    RationalFn::new(acc, den)
}

impl Poly {
    fn is_one_poly(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

impl<'a> Add<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        self.try_add(rhs).expect("rational add")
    }
}

impl<'a> Sub<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self.try_sub(rhs).expect("rational sub")
    }
}

impl<'a> Mul<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        self.try_mul(rhs).expect("rational mul")
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: RationalFn) -> RationalFn {
        &self + &rhs
    }
}

impl Sub for RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: RationalFn) -> RationalFn {
        &self - &rhs
    }
}

impl Mul for RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: RationalFn) -> RationalFn {
        &self * &rhs
    }
}

impl Neg for RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        -&self
    }
}

impl From<Poly> for RationalFn {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFn {
    /// `num` when the denominator is 1, else `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
