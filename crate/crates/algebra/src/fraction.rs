//! Unreduced quotients `num / Π f_i^{k_i}` with tracked denominator factors.
//!
//! Arithmetic never computes a gcd; [`Fraction::to_rational`] cancels the
//! tracked factors once at the end. Suited to long formulas whose
//! intermediate canonical forms would be expensive.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::function::Function;
use crate::gcd::gcd;
use crate::poly::Poly;
use crate::ratfn::RationalFn;
use crate::scalar::GaussianRational;
use crate::vars::{Var, VariableSpace};

#[derive(Clone, Debug)]
pub struct Fraction {
    num: Poly,
    /// Monic non-constant factors with multiplicities.
    den: Vec<(Poly, u32)>,
}

fn split_scalar(p: &Poly) -> (GaussianRational, Poly) {
    let lc = p.leading_term().expect("nonzero").1.clone();
    let monic = p.scale(&lc.inv().expect("nonzero"));
    (lc, monic)
}

/// Factors `d = lc(d) · Π f_i^{k_i}` by repeated `gcd(d, ∂d)` splitting.
fn factor_list(d: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    let mut stack = vec![d.monic()];
    while let Some(p) = stack.pop() {
        if p.is_constant() {
            continue;
        }
        let v = p.space().all().find(|&v| p.uses_var(v)).expect("non-constant");
        let g = gcd(&p, &p.derivative(v));
        if g.is_constant() {
            push_factor(&mut out, p, 1);
        } else {
            stack.push(p.div_exact(&g).expect("gcd divides").monic());
            stack.push(g);
        }
    }
    out
}

fn push_factor(list: &mut Vec<(Poly, u32)>, f: Poly, k: u32) {
    match list.iter_mut().find(|(g, _)| *g == f) {
        Some(entry) => entry.1 += k,
        None => list.push((f, k)),
    }
}

fn product(space: &Arc<VariableSpace>, factors: &[(Poly, u32)]) -> Poly {
    factors.iter().fold(Poly::one(space), |acc, (f, k)| &acc * &f.pow(*k))
}

impl Fraction {
    pub fn from_poly(p: Poly) -> Self {
        Self { num: p, den: Vec::new() }
    }

    pub fn from_rational(r: &RationalFn) -> Self {
        let (lc, _) = split_scalar(r.denom());
        let num = r.numer().scale(&lc.inv().expect("nonzero"));
        Self { num, den: factor_list(r.denom()) }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> Poly {
        product(self.num.space(), &self.den)
    }

    /// Divides by a polynomial, tracking it as a factor.
    fn divide_poly(mut self, p: &Poly, k: u32) -> Result<Self> {
        if p.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (lc, monic) = split_scalar(p);
        self.num = self.num.scale(&lc.pow(k).inv().expect("nonzero"));
        if !monic.is_constant() {
            push_factor(&mut self.den, monic, k);
        }
        Ok(self)
    }

    /// The canonical reduced form.
    pub fn to_rational(&self) -> Result<RationalFn> {
        let mut num = self.num.clone();
        let mut rest = Vec::new();
        for (f, k) in &self.den {
            let mut k = *k;
            while k > 0 && !num.is_zero() {
                match num.div_exact(f) {
                    Some(q) => {
                        num = q;
                        k -= 1;
                    }
                    None => break,
                }
            }
            if k > 0 {
                rest.push((f.clone(), k));
            }
        }
        RationalFn::new(num, product(self.num.space(), &rest))
    }

    /// Rescales every factor of `den` to the common multiplicity `target`.
    fn lift_to(&self, target: &[(Poly, u32)]) -> Poly {
        let mut num = self.num.clone();
        for (f, k) in target {
            let own = self.den.iter().find(|(g, _)| g == f).map_or(0, |(_, j)| *j);
            if *k > own {
                num = &num * &f.pow(k - own);
            }
        }
        num
    }
}

impl PartialEq for Fraction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.denom() == &other.num * &self.denom()
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.denom())
        }
    }
}

impl Add for Fraction {
    type Output = Fraction;
    fn add(self, rhs: Fraction) -> Fraction {
        if self.num.is_zero() {
            return rhs;
        }
        if rhs.num.is_zero() {
            return self;
        }
        let mut den = self.den.clone();
        for (f, k) in &rhs.den {
            match den.iter_mut().find(|(g, _)| g == f) {
                Some(entry) => entry.1 = entry.1.max(*k),
                None => den.push((f.clone(), *k)),
            }
        }
        let num = &self.lift_to(&den) + &rhs.lift_to(&den);
        Fraction { num, den }
    }
}

impl Neg for Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        Fraction { num: -&self.num, den: self.den }
    }
}

impl Sub for Fraction {
    type Output = Fraction;
    fn sub(self, rhs: Fraction) -> Fraction {
        self + (-rhs)
    }
}

impl Mul for Fraction {
    type Output = Fraction;
    fn mul(self, rhs: Fraction) -> Fraction {
        let num = &self.num * &rhs.num;
        if num.is_zero() {
            return Fraction::from_poly(num);
        }
        let mut den = self.den;
        for (f, k) in rhs.den {
            push_factor(&mut den, f, k);
        }
        Fraction { num, den }
    }
}

impl Function for Fraction {
    fn space(&self) -> &Arc<VariableSpace> {
        self.num.space()
    }

    fn lift(&self, p: &Poly) -> Self {
        Fraction::from_poly(p.clone())
    }

    fn try_div(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (f, k) in &other.den {
            out.num = &out.num * &f.pow(*k);
        }
        out.divide_poly(&other.num, 1)
    }

    fn conj(&self) -> Self {
        let mut out = Fraction::from_poly(self.num.conj());
        for (f, k) in &self.den {
            out = out.divide_poly(&f.conj(), *k).expect("nonzero factor");
        }
        out
    }

    fn derivative(&self, v: Var) -> Self {
        if self.num.is_zero() {
            return self.clone();
        }
        // (n / Π f^k)' = (n' Π f − n Σ k f' Π_{g≠f} g) / Π f^{k+1}, over the f that use v
        let using: Vec<usize> = (0..self.den.len()).filter(|&i| self.den[i].0.uses_var(v)).collect();
        let space = self.num.space();
        let prod_except = |skip: Option<usize>| {
            using.iter().filter(|&&i| Some(i) != skip).fold(Poly::one(space), |acc, &i| &acc * &self.den[i].0)
        };
        let mut num = &self.num.derivative(v) * &prod_except(None);
        for &i in &using {
            let (f, k) = &self.den[i];
            let term = &(&self.num * &f.derivative(v)) * &prod_except(Some(i));
            num = &num - &term.scale(&GaussianRational::from_int(*k as i64));
        }
        let mut den = self.den.clone();
        for &i in &using {
            den[i].1 += 1;
        }
        Fraction { num, den }
    }

    fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Fraction::from_poly(Poly::zero(self.space()));
        }
        Fraction { num: self.num.scale(c), den: self.den.clone() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn compose_poly(p: &Poly, bindings: &[Self]) -> Result<Self> {
        if bindings.len() != p.space().len() {
            return Err(AlgebraError::Precondition(format!(
                "expected {} bindings, got {}",
                p.space().len(),
                bindings.len()
            )));
        }
        let Some(first) = bindings.first() else { return Ok(Fraction::from_poly(p.clone())) };
        let target = first.space().clone();
        let mut powers: Vec<Vec<Fraction>> =
            bindings.iter().map(|_| vec![Fraction::from_poly(Poly::one(&target))]).collect();
        let mut acc = Fraction::from_poly(Poly::zero(&target));
        for (m, c) in p.terms() {
            let mut term = Fraction::from_poly(Poly::constant(&target, c.clone()));
            for (k, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[k].len() <= e as usize {
                    let next = powers[k].last().unwrap().clone() * bindings[k].clone();
                    powers[k].push(next);
                }
                term = term * powers[k][e as usize].clone();
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    fn compose(&self, bindings: &[Self]) -> Result<Self> {
        let mut out = Self::compose_poly(&self.num, bindings)?;
        for (f, k) in &self.den {
            let g = Self::compose_poly(f, bindings)?;
            for _ in 0..*k {
                out = out.try_div(&g)?;
            }
        }
        Ok(out)
    }

    fn at_origin(&self) -> Result<GaussianRational> {
        let zero = vec![GaussianRational::zero(); self.space().len()];
        let d = self.denom().eval(&zero);
        self.num.eval(&zero).checked_div(&d)
    }
}
