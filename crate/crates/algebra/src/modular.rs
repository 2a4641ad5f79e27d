//! Univariate gcd over `Q(i)` by reduction modulo primes `p ≡ 1 (mod 4)`,
//! where `i` maps to either square root of `−1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::GaussianRational;

const MAX_PRIMES: usize = 400;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes `p ≡ 1 (mod 4)` below `2^31` with a square root of `−1`.
fn primes() -> impl Iterator<Item = (u64, u64)> {
    let start = (1u64 << 31) - 1;
    (0..).map(move |k| start - k).filter(|&p| p % 4 == 1 && is_prime(p)).map(|p| {
        let c = (2..p).find(|&c| pow_mod(c, (p - 1) / 2, p) == p - 1).expect("non-residue exists");
        (p, pow_mod(c, (p - 1) / 4, p))
    })
}

fn big_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("reduced")
}

fn rat_mod(q: &BigRational, p: u64) -> Option<u64> {
    let d = big_mod(q.denom(), p);
    (d != 0).then(|| big_mod(q.numer(), p) * inv_mod(d, p) % p)
}

/// Image of `a + b·i` with `i ↦ r`.
fn image(c: &GaussianRational, p: u64, r: u64) -> Option<u64> {
    Some((rat_mod(c.re(), p)? + r * rat_mod(c.im(), p)?) % p)
}

fn images(a: &[GaussianRational], p: u64, r: u64) -> Option<Vec<u64>> {
    a.iter().map(|c| image(c, p, r)).collect()
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), p);
        for c in b.iter_mut() {
            *c = *c * inv % p;
        }
        while a.len() >= b.len() {
            let f = *a.last().unwrap();
            let shift = a.len() - b.len();
            for (k, c) in b.iter().enumerate() {
                a[k + shift] = (a[k + shift] + p - f * c % p) % p;
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let inv = inv_mod(l, p);
        for c in a.iter_mut() {
            *c = *c * inv % p;
        }
    }
    a
}

/// `n/d ≡ u (mod m)` with `|n|, d ≤ √(m/2)`.
fn reconstruct(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

fn crt(acc: &BigInt, m: &BigInt, x: u64, p: u64) -> BigInt {
    // acc + m·k ≡ x (mod p)
    let diff = (x + p - big_mod(acc, p)) % p;
    let k = diff * inv_mod(big_mod(m, p), p) % p;
    acc + m * BigInt::from(k)
}

/// Whether monic `g` divides `a` exactly (dense, lowest degree first).
fn divides(g: &[GaussianRational], a: &[GaussianRational]) -> bool {
    let mut r = a.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg && !r.is_empty() {
        let f = r.pop().unwrap();
        let shift = r.len() - dg;
        for k in 0..dg {
            let d = &f * &g[k];
            r[shift + k] -= &d;
        }
    }
    r.iter().all(GaussianRational::is_zero)
}

/// Monic gcd of trimmed nonzero dense polynomials, or `None` when the prime
/// budget runs out.
pub(crate) fn univariate_gcd(a: &[GaussianRational], b: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
    let mut degree = usize::MAX;
    let mut modulus = BigInt::one();
    let mut re: Vec<BigInt> = Vec::new();
    let mut im: Vec<BigInt> = Vec::new();
    for (p, r) in primes().take(MAX_PRIMES) {
        let (Some(a1), Some(b1), Some(a2), Some(b2)) =
            (images(a, p, r), images(b, p, r), images(a, p, p - r), images(b, p, p - r))
        else {
            continue;
        };
        if [&a1, &b1, &a2, &b2].iter().any(|v| *v.last().unwrap() == 0) {
            continue;
        }
        let g1 = gcd_mod(a1, b1, p);
        let g2 = gcd_mod(a2, b2, p);
        if g1.len() != g2.len() || g1.len() > degree {
            continue;
        }
        if g1.len() == 1 {
            return Some(vec![GaussianRational::one()]);
        }
        if g1.len() < degree {
            degree = g1.len();
            modulus = BigInt::one();
            re = vec![BigInt::zero(); degree];
            im = vec![BigInt::zero(); degree];
        }
        let (half, inv2r) = (inv_mod(2, p), inv_mod(2 * r % p, p));
        for k in 0..degree {
            let x = (g1[k] + g2[k]) % p * half % p;
            let y = (g1[k] + p - g2[k]) % p * inv2r % p;
            re[k] = crt(&re[k], &modulus, x, p);
            im[k] = crt(&im[k], &modulus, y, p);
        }
        modulus *= BigInt::from(p);
        let candidate: Option<Vec<GaussianRational>> = (0..degree)
            .map(|k| Some(GaussianRational::new(reconstruct(&re[k], &modulus)?, reconstruct(&im[k], &modulus)?)))
            .collect();
        if let Some(g) = candidate {
            if divides(&g, a) && divides(&g, b) {
                return Some(g);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(re: i64, im: i64) -> GaussianRational {
        GaussianRational::complex(re, 1, im, 1)
    }

    fn mul(a: &[GaussianRational], b: &[GaussianRational]) -> Vec<GaussianRational> {
        let mut out = vec![GaussianRational::zero(); a.len() + b.len() - 1];
        for (j, x) in a.iter().enumerate() {
            for (k, y) in b.iter().enumerate() {
                out[j + k] += &(x * y);
            }
        }
        out
    }

    #[test]
    fn recovers_a_gaussian_rational_factor() {
        let g = vec![GaussianRational::complex(3, 7, -2, 5), gr(1, 1), GaussianRational::one()];
        let a = mul(&g, &[gr(5, -3), GaussianRational::ratio(1, 9), gr(2, 0)]);
        let b = mul(&g, &[gr(-1, 4), gr(0, 1)]);
        assert_eq!(univariate_gcd(&a, &b).unwrap(), g);
        assert_eq!(univariate_gcd(&[gr(1, 0), gr(1, 0)], &[gr(2, 0), gr(1, 0)]).unwrap(), vec![GaussianRational::one()]);
    }
}
