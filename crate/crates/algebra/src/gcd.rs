//! Multivariate gcd over `Q(i)` by recursive primitive pseudo-remainder sequences.

use crate::poly::Poly;
use crate::scalar::GaussianRational;
use crate::vars::Var;

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.space());
    }
    // cheap exits that cover most calls in practice
    if a.n_terms() >= b.n_terms() {
        if a.div_exact(b).is_some() {
            return b.monic();
        }
    } else if b.div_exact(a).is_some() {
        return a.monic();
    }
    if certainly_coprime(a, b) {
        return Poly::one(a.space());
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let a = a.div_exact(&Poly::monomial(a.space(), ma, 1.into())).unwrap();
    let b = b.div_exact(&Poly::monomial(b.space(), mb, 1.into())).unwrap();
    let g = gcd_no_monomials(&a, &b);
    g.mul_monomial(&mg, &1.into()).monic()
}

fn gcd_no_monomials(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.space());
    }
    let space = a.space();
    let used: Vec<Var> = space.all().filter(|&v| a.uses_var(v) || b.uses_var(v)).collect();
    if let [v] = used[..] {
        let zero = vec![GaussianRational::zero(); space.len()];
        let g = univariate_gcd(image(a, v, &zero), image(b, v, &zero));
        let x = Poly::var(space, v);
        return g.iter().rev().fold(Poly::zero(space), |acc, c| &(&acc * &x) + &Poly::constant(space, c.clone()));
    }
    // the main variable is the one of least degree; the others go into contents
    let Some(v) = used.iter().copied().min_by_key(|&v| a.degree_in(v).max(b.degree_in(v))) else {
        return Poly::one(space);
    };
    if !a.uses_var(v) || !b.uses_var(v) {
        let (free, other) = if a.uses_var(v) { (b, a) } else { (a, b) };
        return content_with(free.clone(), other, v);
    }
    // only the smaller operand's content is computed in full
    let (small, large) = if a.n_terms() <= b.n_terms() { (a, b) } else { (b, a) };
    let cs = content(small, v);
    let c = content_with(cs.clone(), large, v);
    let g = primitive_prs(large.clone(), small.div_exact(&cs).unwrap(), v);
    (&c * &g).monic()
}

/// `gcd(start, content(p, v))`, stopping as soon as it is constant.
fn content_with(start: Poly, p: &Poly, v: Var) -> Poly {
    let mut acc = start;
    for c in p.coeffs_in(v).values() {
        if acc.is_constant() && !acc.is_zero() {
            return Poly::one(p.space());
        }
        acc = gcd(&acc, c);
    }
    if acc.is_constant() {
        Poly::one(p.space())
    } else {
        acc.monic()
    }
}

/// Dense univariate image in `v` after evaluating the other variables at `point`.
fn image(p: &Poly, v: Var, point: &[GaussianRational]) -> Vec<GaussianRational> {
    let coeffs = p.coeffs_in(v);
    let deg = coeffs.keys().next_back().copied().unwrap_or(0) as usize;
    let mut out = vec![GaussianRational::zero(); deg + 1];
    for (k, c) in coeffs {
        out[k as usize] = c.eval(point);
    }
    out
}

fn trim(p: &mut Vec<GaussianRational>) {
    while p.last().is_some_and(GaussianRational::is_zero) {
        p.pop();
    }
}

/// Monic univariate gcd, lowest degree first; modular with a Euclid fallback.
fn univariate_gcd(mut a: Vec<GaussianRational>, mut b: Vec<GaussianRational>) -> Vec<GaussianRational> {
    trim(&mut a);
    trim(&mut b);
    if !a.is_empty() && !b.is_empty() {
        if let Some(g) = crate::modular::univariate_gcd(&a, &b) {
            return g;
        }
    }
    while !b.is_empty() {
        let inv = b.last().unwrap().inv().expect("trimmed");
        for c in b.iter_mut() {
            *c = &*c * &inv;
        }
        while a.len() >= b.len() {
            let f = a.last().unwrap().clone();
            let shift = a.len() - b.len();
            for (k, c) in b.iter().enumerate() {
                let d = &f * c;
                a[k + shift] -= &d;
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(inv) = a.last().and_then(GaussianRational::inv) {
        for c in a.iter_mut() {
            *c = &*c * &inv;
        }
    }
    a
}

/// Sound coprimality test: a common factor involving `v` survives in every
/// univariate image whose leading coefficients do not vanish.
fn certainly_coprime(a: &Poly, b: &Poly) -> bool {
    let space = a.space();
    space.all().filter(|&v| a.uses_var(v) && b.uses_var(v)).all(|v| {
        (0..3i64).any(|attempt| {
            let point: Vec<GaussianRational> = space
                .all()
                .map(|u| GaussianRational::complex(3 + 5 * u.index() as i64 + 7 * attempt, 1, 1 + attempt, 1))
                .collect();
            let (ia, ib) = (image(a, v, &point), image(b, v, &point));
            let ok = !ia.last().unwrap().is_zero() && !ib.last().unwrap().is_zero();
            ok && univariate_gcd(ia, ib).len() == 1
        })
    })
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content(p: &Poly, v: Var) -> Poly {
    content_with(Poly::zero(p.space()), p, v)
}

fn primitive_part(p: &Poly, v: Var) -> Poly {
    let c = content(p, v);
    // over a field the scalar content is a unit; normalizing keeps coefficients small
    p.div_exact(&c).unwrap().monic()
}

fn lead_in(p: &Poly, v: Var) -> Poly {
    p.coeffs_in(v).into_iter().next_back().map(|(_, c)| c).unwrap_or_else(|| Poly::zero(p.space()))
}

/// Pseudo-remainder of `a` by `b` in the variable `v`.
pub fn pseudo_rem(a: &Poly, b: &Poly, v: Var) -> Poly {
    let db = b.degree_in(v);
    let lb = lead_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = lead_in(&r, v);
        let shift = Poly::var(a.space(), v).pow(dr - db);
        r = &(&lb * &r) - &(&(&lr * &shift) * b);
    }
    r
}

/// Primitive part of the gcd; the inputs need not be primitive, since every
/// remainder is made primitive and only factors involving `v` survive.
fn primitive_prs(mut a: Poly, mut b: Poly, v: Var) -> Poly {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return primitive_part(&b, v);
        }
        if !r.uses_var(v) {
            return Poly::one(a.space());
        }
        a = b;
        b = primitive_part(&r, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::VariableSpace;
    use std::sync::Arc;

    fn setup() -> (Arc<crate::vars::VariableSpace>, Poly, Poly, Poly) {
        let s = VariableSpace::new(&[("z", 1), ("w", 2)], &[]);
        let z = Poly::var(&s, s.var("z").unwrap());
        let w = Poly::var(&s, s.var("w").unwrap());
        let zb = Poly::var(&s, s.var("zb").unwrap());
        (s, z, w, zb)
    }

    #[test]
    fn common_factor_is_recovered() {
        let (s, z, w, zb) = setup();
        let one = Poly::one(&s);
        let f = &(&z * &w) + &one;
        let a = &f * &(&zb - &w);
        let b = &f * &(&z + &(&zb * &zb));
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn coprime_inputs() {
        let (s, z, w, _) = setup();
        let a = &z + &Poly::one(&s);
        let b = &w - &z;
        assert_eq!(gcd(&a, &b), Poly::one(&s));
    }

    #[test]
    fn squared_factors_and_monomials() {
        let (s, z, w, _) = setup();
        let mu = crate::scalar::GaussianRational::ratio(1, 3);
        let d = &Poly::one(&s) - &w.scale(&mu);
        let a = &(&d.pow(2) * &z) * &w;
        let b = &d.pow(3) * &z.pow(2);
        assert_eq!(gcd(&a, &b), (&d.pow(2) * &z).monic());
    }
}
