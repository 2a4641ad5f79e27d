//! Example maps between hyperquadrics and Winkelmann hypersurfaces.

use std::sync::Arc;

use cr_algebra::linalg::Matrix;
use cr_algebra::{GaussianRational as GR, RationalFn, TruncSeries};

use crate::error::{CrError, Result};
use crate::hypersurface::Hypersurface;
use crate::maps::HoloMap;

fn hq(n: usize, ell: usize) -> Result<Arc<Hypersurface>> {
    Ok(Arc::new(Hypersurface::hyperquadric(n, ell)?))
}

fn wink(n: usize, ell: usize) -> Result<Arc<Hypersurface>> {
    Ok(Arc::new(Hypersurface::winkelmann(n, ell)?))
}

/// `R: H^{2n+1}_ℓ → W^{2n+3}_{ℓ+1}`, `ε = ±1`, with `ρ_W ∘ R = |ε + z_n|² ρ_H`.
pub fn r_map(n: usize, ell: usize, eps: i64) -> Result<HoloMap> {
    if eps.abs() != 1 {
        return Err(CrError::Parameter(format!("ε must be ±1, got {eps}")));
    }
    let (s, t) = (hq(n, ell)?, wink(n, ell + 1)?);
    let space = s.space();
    let z = |k: usize| RationalFn::var(space, space.holo(k));
    let c = |x: i64| RationalFn::constant(space, GR::from_int(x));
    let e = GR::from_int(eps);
    let zn = z(n - 1);
    let w = z(n);
    let one_ez = c(1) + zn.scale(&e);
    let mut comps: Vec<RationalFn> = (0..n - 1).map(|k| one_ez.clone() * z(k)).collect();
    comps.push(zn.clone());
    let two_ez = c(1) + zn.scale(&(&e * &GR::from_int(2)));
    comps.push(w.clone() * (c(eps) + zn.clone()) - (zn * two_ez).scale(&GR::i()));
    comps.push(w * one_ez);
    HoloMap::rational(s, t, comps)
}

/// `R_ε = (z, w(ε+z) − iz − 2iεz², w(1+εz))`: `H³ → W⁵₁`.
pub fn r_eps(eps: &GR) -> Result<HoloMap> {
    let (s, t) = (hq(1, 0)?, wink(1, 1)?);
    let space = s.space();
    let z = RationalFn::var(space, space.holo(0));
    let w = RationalFn::var(space, space.holo(1));
    let e = RationalFn::constant(space, eps.clone());
    let one = RationalFn::one(space);
    let zeta = w.clone() * (e.clone() + z.clone())
        - z.scale(&GR::i())
        - (z.clone() * z.clone()).scale(&(&GR::complex(0, 1, 2, 1) * eps));
    let last = w * (one + e * z.clone());
    HoloMap::rational(s, t, vec![z, zeta, last])
}

/// The two-parameter family `R_{ε,μ}: H³ → W⁵₁`; `R_{ε,0} = R_ε`.
pub fn r_eps_mu(eps: &GR, mu: &GR) -> Result<HoloMap> {
    let (s, t) = (hq(1, 0)?, wink(1, 1)?);
    let space = s.space();
    let z = RationalFn::var(space, space.holo(0));
    let w = RationalFn::var(space, space.holo(1));
    let k = |x: &GR| RationalFn::constant(space, x.clone());
    let one = RationalFn::one(space);
    let i = GR::i();
    let d = one.clone() - w.scale(mu);
    let d2 = d.clone() * d.clone();
    let zeta_num = (z.clone() * z.clone()).scale(&(&GR::complex(0, 1, -2, 1) * eps))
        + (w.clone() * d.clone()).scale(eps)
        + z.clone() * (k(&-&i) + w.clone() + w.scale(&(&GR::complex(0, 1, 3, 1) * mu)));
    let last_num = w.clone() * (one + z.scale(eps) - w.scale(&(mu * &GR::from_int(2))));
    let comps = vec![z.try_div(&d)?, zeta_num.try_div(&d2)?, last_num.try_div(&d2)?];
    HoloMap::rational(s, t, comps)
}

/// `Φ = (z', z_{n'}², (z_{n'}+iζ)/2, (z_{n'}−iζ)/2, w)` from `W^{2n'+3}_{ℓ'}` into the
/// hyperquadric with signs `(ε'…, +1, +1, −1)`, satisfying `ρ_H ∘ Φ = ρ_W`.
pub fn phi_map(n: usize, ell: usize) -> Result<HoloMap> {
    let s = wink(n, ell)?;
    let mut signs = s.epsilon().to_vec();
    signs.extend([1, 1, -1]);
    let t = Arc::new(Hypersurface::hyperquadric_with_signs(signs)?);
    let space = s.space();
    let z = |k: usize| RationalFn::var(space, space.holo(k));
    let zn = z(n - 1);
    let izeta = z(n).scale(&GR::i());
    let half = GR::ratio(1, 2);
    let mut comps: Vec<RationalFn> = (0..n - 1).map(z).collect();
    comps.push(zn.clone() * zn.clone());
    comps.push((zn.clone() + izeta.clone()).scale(&half));
    comps.push((zn - izeta).scale(&half));
    comps.push(z(n + 1));
    HoloMap::rational(s, t, comps)
}

/// `I = (z', √(1+z_n) − 1, 4i(√(1+z_n) − 1 − z_n), w)` through weighted order `order`.
pub fn i_map(n: usize, ell: usize, order: u32) -> Result<HoloMap> {
    let (s, t) = (hq(n, ell)?, wink(n, ell + 1)?);
    let space = s.space();
    let z = |k: usize| TruncSeries::var(space, space.holo(k), order);
    let one = TruncSeries::one(space, order);
    let root = (one.clone() + z(n - 1)).sqrt()? - one;
    let mut comps: Vec<TruncSeries> = (0..n - 1).map(z).collect();
    comps.push(root.clone());
    comps.push((root - z(n - 1)).scale(&GR::complex(0, 1, 4, 1)));
    comps.push(z(n));
    HoloMap::series(s, t, comps)
}

/// Choices of `φ` for the degenerate map `(0, φ, 0): H³ → W⁵₁`.
pub fn degenerate_phis() -> Result<Vec<RationalFn>> {
    let s = hq(1, 0)?;
    let space = s.space();
    let z = RationalFn::var(space, space.holo(0));
    let w = RationalFn::var(space, space.holo(1));
    let one = RationalFn::one(space);
    Ok(vec![
        z.clone(),
        z.clone() * z.clone() + w.scale(&GR::from_int(3)),
        (z + w.clone()).try_div(&(one + w))?,
    ])
}

/// `(z, w) ↦ (0, φ(z, w), 0)`, which maps `H³` into `W⁵₁` with `Q ≡ 0`.
pub fn degenerate_map(phi: RationalFn) -> Result<HoloMap> {
    let (s, t) = (hq(1, 0)?, wink(1, 1)?);
    let zero = RationalFn::zero(s.space());
    HoloMap::rational(s, t, vec![zero.clone(), phi, zero])
}

/// `(z, φ, ψ, w)` between hyperquadrics with `ψ = φ` (`‖φ‖ = ‖ψ‖`), so `Q ≡ 1`.
pub fn balanced_map(n: usize, phi: Vec<RationalFn>) -> Result<HoloMap> {
    let s = hq(n, 0)?;
    let m = phi.len();
    let mut signs = vec![1; n];
    signs.extend(std::iter::repeat(1).take(m));
    signs.extend(std::iter::repeat(-1).take(m));
    let t = Arc::new(Hypersurface::hyperquadric_with_signs(signs)?);
    let space = s.space();
    let mut comps: Vec<RationalFn> = (0..n).map(|k| RationalFn::var(space, space.holo(k))).collect();
    comps.extend(phi.iter().cloned());
    comps.extend(phi);
    comps.push(RationalFn::var(space, space.holo(n)));
    HoloMap::rational(s, t, comps)
}

/// `(z, 0, w)`: the linear embedding `H^{2n+1} → H^{2n+3}`.
pub fn linear_embedding(n: usize) -> Result<HoloMap> {
    let (s, t) = (hq(n, 0)?, hq(n + 1, 0)?);
    let space = s.space();
    let mut comps: Vec<RationalFn> = (0..n).map(|k| RationalFn::var(space, space.holo(k))).collect();
    comps.push(RationalFn::zero(space));
    comps.push(RationalFn::var(space, space.holo(n)));
    HoloMap::rational(s, t, comps)
}

/// `B B*`.
pub fn gram(b: &Matrix) -> Matrix {
    let n = b.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..b[i].len()).fold(GR::zero(), |acc, k| &acc + &(&b[i][k] * &b[j][k].conj())))
                .collect()
        })
        .collect()
}

/// The normal-form shape `(z_α + (i/2)(zA)_α w, z_j (zB)_m, w)` with `A = BB*`,
/// from `H^{2n+1}` into the hyperquadric of dimension `n + n·m`.
pub fn normal_form_map(b: &Matrix) -> Result<HoloMap> {
    let n = b.len();
    let m = b.first().map_or(0, Vec::len);
    let a = gram(b);
    let s = hq(n, 0)?;
    let t = hq(n + n * m, 0)?;
    let space = s.space();
    let z = |k: usize| RationalFn::var(space, space.holo(k));
    let w = z(n);
    let row = |mat: &Matrix, col: usize| {
        (0..n).fold(RationalFn::zero(space), |acc, k| acc + z(k).scale(&mat[k][col]))
    };
    let half_i = GR::complex(0, 1, 1, 2);
    let mut comps: Vec<RationalFn> = (0..n).map(|al| z(al) + (row(&a, al) * w.clone()).scale(&half_i)).collect();
    for j in 0..n {
        for c in 0..m {
            comps.push(z(j) * row(b, c));
        }
    }
    comps.push(w);
    HoloMap::rational(s, t, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::Side;

    #[test]
    fn r_eps_at_one_is_r() {
        let a = r_eps(&GR::one()).unwrap();
        let b = r_map(1, 0, 1).unwrap();
        assert_eq!(a.components(), b.components());
        let c = r_eps_mu(&GR::ratio(1, 2), &GR::zero()).unwrap();
        assert_eq!(c.components(), r_eps(&GR::ratio(1, 2)).unwrap().components());
    }

    #[test]
    fn phi_is_an_isometric_model_map() {
        let q = phi_map(2, 1).unwrap().check_maps_into().unwrap();
        assert_eq!(q.q.to_string(), "1");
        assert_eq!(q.side, Side::Preserving);
    }

    #[test]
    fn degenerate_map_has_zero_quotient() {
        for phi in degenerate_phis().unwrap() {
            let q = degenerate_map(phi).unwrap().check_maps_into().unwrap();
            assert_eq!(q.side, Side::Degenerate);
        }
    }

    #[test]
    fn i_map_expansion() {
        let m = i_map(1, 0, 6).unwrap();
        let root = m.components().get(0);
        assert!(root.to_string().starts_with("1/2*z1 - 1/8*z1^2"), "{root}");
        let root = root.as_series().unwrap();
        let z = TruncSeries::var(root.space(), root.space().holo(0), 6);
        let inner = (root.clone() - z).poly().clone();
        // √(1+z) − 1 − z = −z/2 − z²/8 + …
        assert_eq!(inner.coefficient(&cr_algebra::Monomial::from_exponents(vec![1, 0, 0, 0, 0])), GR::ratio(-1, 2));
        assert_eq!(inner.coefficient(&cr_algebra::Monomial::from_exponents(vec![2, 0, 0, 0, 0])), GR::ratio(-1, 8));
    }
}
