//! Sparse multivariate polynomials over the Gaussian rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::scalar::GaussianRational;
use crate::vars::{same_space, Var, VarKind, VariableSpace};

/// Dense exponent vector, one slot per variable of the owning space.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the earliest variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, v: Var) -> Self {
        let mut e = vec![0; nvars];
        e[v.0] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.0]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, space: &VariableSpace) -> u32 {
        self.0.iter().enumerate().map(|(k, &e)| e as u32 * space.weight(Var(k))).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Exponents swapped to the partner variables.
    pub fn conj(&self, space: &VariableSpace) -> Monomial {
        let mut out = vec![0; self.0.len()];
        for (k, &e) in self.0.iter().enumerate() {
            out[space.partner(Var(k)).0] = e;
        }
        Monomial(out)
    }

    fn with_exp(&self, v: Var, e: u16) -> Monomial {
        let mut m = self.clone();
        m.0[v.0] = e;
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    space: Arc<VariableSpace>,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Poly {
    pub fn zero(space: &Arc<VariableSpace>) -> Self {
        Self { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(space: &Arc<VariableSpace>, c: GaussianRational) -> Self {
        let mut p = Self::zero(space);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(space.len()), c);
        }
        p
    }

    pub fn one(space: &Arc<VariableSpace>) -> Self {
        Self::constant(space, GaussianRational::one())
    }

    pub fn var(space: &Arc<VariableSpace>, v: Var) -> Self {
        Self::monomial(space, Monomial::var(space.len(), v), GaussianRational::one())
    }

    pub fn monomial(space: &Arc<VariableSpace>, m: Monomial, c: GaussianRational) -> Self {
        assert_eq!(m.0.len(), space.len(), "monomial arity does not match space");
        let mut p = Self::zero(space);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(
        space: &Arc<VariableSpace>,
        terms: impl IntoIterator<Item = (Monomial, GaussianRational)>,
    ) -> Self {
        let mut p = Self::zero(space);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coefficient(&Monomial::one(self.space.len()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v) as u32).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn max_weighted_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.weighted_degree(&self.space)).max()
    }

    pub fn min_weighted_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.weighted_degree(&self.space)).min()
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    /// Scaled so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv().unwrap()),
            _ => self.clone(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.space);
        }
        Poly { space: self.space.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.space);
        }
        Poly { space: self.space.clone(), terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.space);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn check_space(&self, other: &Poly) -> Result<()> {
        if same_space(&self.space, &other.space) {
            Ok(())
        } else {
            Err(AlgebraError::SpaceMismatch)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_space(other)?;
        let mut out = Poly::zero(&self.space);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        let (small, large) = if self.n_terms() <= other.n_terms() { (self, other) } else { (other, self) };
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// Swaps every variable with its partner and conjugates every coefficient.
    pub fn conj(&self) -> Poly {
        Poly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.conj(&self.space), c.conj())).collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// True when no antiholomorphic or real variable occurs.
    pub fn is_holomorphic(&self) -> bool {
        self.space
            .all()
            .filter(|&v| self.space.kind(v) != VarKind::Holomorphic)
            .all(|v| !self.uses_var(v))
    }

    /// Formal partial derivative; every other variable, including the partner of
    /// `v`, is held constant.
    pub fn derivative(&self, v: Var) -> Poly {
        let mut out = Poly::zero(&self.space);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                out.add_term(m.with_exp(v, e - 1), &(c * &GaussianRational::from_int(e as i64)));
            }
        }
        out
    }

    /// Evaluates at a full assignment (one scalar per variable).
    pub fn eval(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(point.len(), self.space.len(), "point arity does not match space");
        let mut cache: Vec<Vec<GaussianRational>> = vec![vec![GaussianRational::one()]; point.len()];
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[k];
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &point[k];
                    powers.push(next);
                }
                t *= &powers[e as usize];
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes one polynomial per variable of `self`'s space; the result lives
    /// in the bindings' common space.
    pub fn compose(&self, bindings: &[Poly]) -> Result<Poly> {
        if bindings.len() != self.space.len() {
            return Err(AlgebraError::Precondition(format!(
                "expected {} bindings, got {}",
                self.space.len(),
                bindings.len()
            )));
        }
        let target = match bindings.first() {
            Some(b) => b.space.clone(),
            None => return Ok(self.clone()),
        };
        for b in bindings {
            if !same_space(&b.space, &target) {
                return Err(AlgebraError::SpaceMismatch);
            }
        }
        let mut cache: Vec<Vec<Poly>> = vec![vec![Poly::one(&target)]; bindings.len()];
        let mut acc = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[k];
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &bindings[k];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Replaces a single variable by a polynomial in the same space.
    pub fn substitute(&self, v: Var, value: &Poly) -> Result<Poly> {
        let bindings: Vec<Poly> = self
            .space
            .all()
            .map(|u| if u == v { value.clone() } else { Poly::var(&self.space, u) })
            .collect();
        self.compose(&bindings)
    }

    /// Coefficients of the powers of `v`, each free of `v`.
    pub fn coeffs_in(&self, v: Var) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v) as u32;
            out.entry(e).or_insert_with(|| Poly::zero(&self.space)).add_term(m.with_exp(v, 0), c);
        }
        out
    }

    pub fn from_coeffs_in(space: &Arc<VariableSpace>, v: Var, coeffs: &BTreeMap<u32, Poly>) -> Poly {
        let mut out = Poly::zero(space);
        for (&e, p) in coeffs {
            for (m, c) in &p.terms {
                out.add_term(m.with_exp(v, m.exp(v) + e as u16), c);
            }
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() || !same_space(&self.space, &d.space) {
            return None;
        }
        let (lm, lc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.space);
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm)?;
            let qc = &c * &lc_inv;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            quot.add_term(qm, &qc);
        }
        Some(quot)
    }

    /// Division by a `d` of degree exactly 1 in `v` with constant leading
    /// coefficient: returns `(q, r)` with `self = q·d + r` and `r` free of `v`.
    pub fn divide_linear(&self, d: &Poly, v: Var) -> Result<(Poly, Poly)> {
        self.check_space(d)?;
        let dc = d.coeffs_in(v);
        if d.degree_in(v) != 1 {
            return Err(AlgebraError::Precondition(format!(
                "divisor has degree {} in `{}`, expected 1",
                d.degree_in(v),
                self.space.name(v)
            )));
        }
        let lead = dc[&1]
            .as_constant()
            .ok_or_else(|| AlgebraError::Precondition("coefficient of the division variable is not constant".into()))?;
        let lead_inv = lead.inv().unwrap();
        let tail = dc.get(&0).cloned().unwrap_or_else(|| Poly::zero(&self.space));

        let mut pc = self.coeffs_in(v);
        let top = self.degree_in(v);
        let mut qc: BTreeMap<u32, Poly> = BTreeMap::new();
        for k in (1..=top).rev() {
            let Some(ck) = pc.remove(&k) else { continue };
            if ck.is_zero() {
                continue;
            }
            let qk = ck.scale(&lead_inv);
            let lower = pc.entry(k - 1).or_insert_with(|| Poly::zero(&self.space));
            *lower = &*lower - &(&qk * &tail);
            qc.insert(k - 1, qk);
        }
        let r = pc.remove(&0).unwrap_or_else(|| Poly::zero(&self.space));
        Ok((Poly::from_coeffs_in(&self.space, v, &qc), r))
    }

    /// Drops every term of weighted degree above `max`.
    pub fn truncate_weighted(&self, max: u32) -> Poly {
        Poly {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_degree(&self.space) <= max)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Moves the polynomial into another space by renaming variables via `map`
    /// (index in `self` ↦ index in `target`).
    pub fn reindex(&self, target: &Arc<VariableSpace>, map: &[Var]) -> Poly {
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; target.len()];
            for (k, &x) in m.0.iter().enumerate() {
                e[map[k].0] += x;
            }
            out.add_term(Monomial(e), c);
        }
        out
    }

    /// Greatest common monomial divisor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Monomial::one(self.space.len()) };
        it.fold(first.clone(), |acc, m| acc.gcd(m))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    /// Panics on a space mismatch; see [`Poly::try_add`].
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("poly add")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("poly sub")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("poly mul")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-GaussianRational::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub(crate) fn fmt_monomial(space: &VariableSpace, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (k, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(space.name(Var(k)).to_string()),
            _ => parts.push(format!("{}^{}", space.name(Var(k)), e)),
        }
    }
    parts.join("*")
}

pub(crate) fn fmt_term(space: &VariableSpace, m: &Monomial, c: &GaussianRational) -> String {
    let complex = !c.is_real() && *c != -c.conj();
    if m.is_one() {
        return if complex { format!("({c})") } else { c.to_string() };
    }
    let mono = fmt_monomial(space, m);
    if c.is_one() {
        mono
    } else if (-c).is_one() {
        format!("-{mono}")
    } else if complex {
        format!("({c})*{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

pub(crate) fn join_terms(terms: impl Iterator<Item = String>) -> String {
    let mut out = String::new();
    for (k, t) in terms.enumerate() {
        if k == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Poly {
    /// Terms in descending graded-lex order, e.g. `z1^2*z1b - 2*i*w + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = join_terms(self.terms.iter().rev().map(|(m, c)| fmt_term(&self.space, m, c)));
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space() -> Arc<VariableSpace> {
        VariableSpace::new(&[("z1", 1), ("w", 2)], &[("t", 2)])
    }

    fn v(s: &Arc<VariableSpace>, name: &str) -> Poly {
        Poly::var(s, s.var(name).unwrap())
    }

    fn rho_h(s: &Arc<VariableSpace>) -> Poly {
        // (w - wb)/(2i) - z1*z1b
        let half_i_inv = GaussianRational::complex(0, 1, -1, 2);
        &(&v(s, "w") - &v(s, "wb")).scale(&half_i_inv) - &(&v(s, "z1") * &v(s, "z1b"))
    }

    #[test]
    fn product_of_a_variable_and_its_partner() {
        let s = space();
        let p = &v(&s, "z1") * &v(&s, "z1b");
        assert_eq!(p.n_terms(), 1);
        assert_eq!(p.to_string(), "z1*z1b");
    }

    #[test]
    fn difference_of_squares() {
        let s = space();
        let (w, wb) = (v(&s, "w"), v(&s, "wb"));
        let lhs = &(&w - &wb) * &(&w + &wb);
        assert_eq!(lhs, &w.pow(2) - &wb.pow(2));
        assert!((&lhs - &lhs).is_zero());
    }

    #[test]
    fn conjugation_examples() {
        let s = space();
        let iz = v(&s, "z1").scale(&GaussianRational::i());
        assert_eq!(iz.conj(), v(&s, "z1b").scale(&-GaussianRational::i()));
        assert!(rho_h(&s).is_real());
    }

    #[test]
    fn wirtinger_examples() {
        let s = space();
        let w = v(&s, "w");
        assert_eq!(w.pow(2).derivative(s.var("w").unwrap()), w.scale(&2.into()));
        let zz = &v(&s, "z1") * &v(&s, "z1b");
        assert_eq!(zz.derivative(s.var("z1b").unwrap()), v(&s, "z1"));
        assert_eq!(rho_h(&s).derivative(s.var("z1").unwrap()), -&v(&s, "z1b"));
    }

    #[test]
    fn divide_linear_examples() {
        let s = space();
        let rho = rho_h(&s);
        let wb = s.var("wb").unwrap();
        let (q, r) = rho.divide_linear(&rho, wb).unwrap();
        assert_eq!(q, Poly::one(&s));
        assert!(r.is_zero());
        let zz = &v(&s, "z1") * &v(&s, "z1b");
        let (q, r) = (&zz * &rho).divide_linear(&rho, wb).unwrap();
        assert_eq!(q, zz);
        assert!(r.is_zero());
        let bad = v(&s, "wb").pow(2);
        assert!(matches!(rho.divide_linear(&bad, wb), Err(AlgebraError::Precondition(_))));
    }

    #[test]
    fn substitution_at_w_zero() {
        let s = space();
        let rho = rho_h(&s);
        let at0 = rho.substitute(s.var("w").unwrap(), &Poly::zero(&s)).unwrap();
        let expected = &v(&s, "wb").scale(&GaussianRational::complex(0, 1, 1, 2)) - &(&v(&s, "z1") * &v(&s, "z1b"));
        assert_eq!(at0, expected);
        let ident: Vec<Poly> = s.all().map(|x| Poly::var(&s, x)).collect();
        assert_eq!(rho.compose(&ident).unwrap(), rho);
    }

    #[test]
    fn exact_division() {
        let s = space();
        let a = &v(&s, "z1") + &Poly::one(&s);
        let b = &v(&s, "w") - &v(&s, "z1b");
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.div_exact(&v(&s, "t")).is_none());
    }

    #[test]
    fn space_mismatch_is_an_error() {
        let s1 = space();
        let s2 = VariableSpace::new(&[("z1", 1)], &[]);
        assert_eq!(Poly::one(&s1).try_add(&Poly::one(&s2)), Err(AlgebraError::SpaceMismatch));
    }
}
