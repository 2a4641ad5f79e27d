//! Hyperquadrics `Im w = Σ ε_k|z_k|²` and Winkelmann hypersurfaces
//! `Im(w + z̄ζ) = |z|⁴ + Σ ε'_k|z'_k|²`, with tangent frames and Levi forms.

use std::sync::Arc;

use cr_algebra::{Function, GaussianRational, Poly, Var, VariableSpace};

use crate::error::{CrError, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    Hyperquadric,
    Winkelmann,
}

/// A holomorphic vector field `Σ c_k ∂_k` with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FrameVector {
    coeffs: Vec<Poly>,
}

impl FrameVector {
    pub fn new(coeffs: Vec<Poly>) -> Self {
        Self { coeffs }
    }

    /// Coefficient of `∂_k` for the `k`-th holomorphic variable.
    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn apply<F: Function>(&self, f: &F) -> F {
        let space = f.space().clone();
        let mut acc = f.zero_like();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc + f.lift(c) * f.derivative(space.holo(k));
            }
        }
        acc
    }

    /// Applies the conjugate field `Σ c̄_k ∂_{k̄}`.
    pub fn apply_conj<F: Function>(&self, f: &F) -> F {
        let space = f.space().clone();
        let mut acc = f.zero_like();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc + f.lift(&c.conj()) * f.derivative(space.anti(k));
            }
        }
        acc
    }

    pub fn apply_poly(&self, p: &Poly) -> Poly {
        let space = p.space();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Poly::zero(space), |acc, (k, c)| &acc + &(c * &p.derivative(space.holo(k))))
    }
}

/// An exact point of the ambient space, stored as a full assignment of the
/// variable space (holomorphic, antiholomorphic, then `t`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SurfacePoint {
    pub coords: Vec<GaussianRational>,
}

impl SurfacePoint {
    pub fn holomorphic(&self, n: usize) -> &[GaussianRational] {
        &self.coords[..n]
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hypersurface {
    kind: Kind,
    n: usize,
    signature: usize,
    epsilon: Vec<i64>,
    space: Arc<VariableSpace>,
    rho: Poly,
    phi: Poly,
    frame: Vec<FrameVector>,
}

fn half_over_i() -> GaussianRational {
    // 1/(2i) = -i/2
    GaussianRational::complex(0, 1, -1, 2)
}

impl Hypersurface {
    /// `H^{2n+1}_ℓ` with `ε_k = -1` for `k ≤ ℓ`; requires `2ℓ ≤ n`.
    pub fn hyperquadric(n: usize, ell: usize) -> Result<Self> {
        if n == 0 || 2 * ell > n {
            return Err(CrError::Parameter(format!("hyperquadric needs n ≥ 1 and 0 ≤ ℓ ≤ n/2, got n={n}, ℓ={ell}")));
        }
        let eps = (0..n).map(|k| if k < ell { -1 } else { 1 }).collect();
        Self::hyperquadric_with_signs(eps)
    }

    /// Hyperquadric with an explicit sign vector, in any order.
    pub fn hyperquadric_with_signs(eps: Vec<i64>) -> Result<Self> {
        if eps.is_empty() || eps.iter().any(|e| e.abs() != 1) {
            return Err(CrError::Parameter(format!("signs must be ±1, got {eps:?}")));
        }
        let n = eps.len();
        let mut holo: Vec<(String, u32)> = (1..=n).map(|k| (format!("z{k}"), 1)).collect();
        holo.push(("w".into(), 2));
        let space = make_space(&holo);
        let z = |k: usize| Poly::var(&space, space.holo(k));
        let zb = |k: usize| Poly::var(&space, space.anti(k));
        let w = space.holo(n);
        let mut phi = Poly::zero(&space);
        for (k, &e) in eps.iter().enumerate() {
            phi = &phi + &(&z(k) * &zb(k)).scale(&e.into());
        }
        let im_w = (&z(n) - &zb(n)).scale(&half_over_i());
        let rho = &im_w - &phi;
        let signature = eps.iter().filter(|&&e| e < 0).count();
        let dirs: Vec<Var> = (0..n).map(|k| space.holo(k)).collect();
        let frame = frame_for(&space, &rho, &dirs, w);
        Ok(Self { kind: Kind::Hyperquadric, n, signature, epsilon: eps, space, rho, phi, frame })
    }

    /// `W^{2n'+3}_{ℓ'}` with `ε'_k = -1` for `k ≤ ℓ' - 1`; requires `1 ≤ ℓ' ≤ n'`.
    pub fn winkelmann(n: usize, ell: usize) -> Result<Self> {
        if n == 0 || ell == 0 || ell > n {
            return Err(CrError::Parameter(format!("Winkelmann needs 1 ≤ ℓ' ≤ n', got n'={n}, ℓ'={ell}")));
        }
        let eps: Vec<i64> = (0..n - 1).map(|k| if k + 1 < ell { -1 } else { 1 }).collect();
        let mut holo: Vec<(String, u32)> = (1..=n).map(|k| (format!("z{k}"), 1)).collect();
        holo.push(("zeta".into(), 2));
        holo.push(("w".into(), 2));
        let space = make_space(&holo);
        let z = |k: usize| Poly::var(&space, space.holo(k));
        let zb = |k: usize| Poly::var(&space, space.anti(k));
        let (zn, zeta, w) = (n - 1, n, n + 1);
        let zz = &z(zn) * &zb(zn);
        // φ = Im(z ζ̄) + |z|⁴ + Σ ε'|z'|², so that ρ = Im w - φ
        let mut phi = &(&(&z(zn) * &zb(zeta)) - &(&zb(zn) * &z(zeta))).scale(&half_over_i()) + &zz.pow(2);
        for (k, &e) in eps.iter().enumerate() {
            phi = &phi + &(&z(k) * &zb(k)).scale(&e.into());
        }
        let im_w = (&z(w) - &zb(w)).scale(&half_over_i());
        let rho = &im_w - &phi;
        let dirs: Vec<Var> = (0..=n).map(|k| space.holo(k)).collect();
        let frame = frame_for(&space, &rho, &dirs, space.holo(w));
        Ok(Self { kind: Kind::Winkelmann, n, signature: ell, epsilon: eps, space, rho, phi, frame })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_hyperquadric(&self) -> bool {
        self.kind == Kind::Hyperquadric
    }

    /// Number of `z` variables (`n` or `n'`).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signature(&self) -> usize {
        self.signature
    }

    /// `ε_k` for hyperquadrics, `ε'_k` (`k < n'`) for Winkelmann hypersurfaces.
    pub fn epsilon(&self) -> &[i64] {
        &self.epsilon
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    pub fn rho(&self) -> &Poly {
        &self.rho
    }

    /// `Im w` on the surface as a function of the other coordinates.
    pub fn phi(&self) -> &Poly {
        &self.phi
    }

    pub fn cr_dim(&self) -> usize {
        self.frame.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.space.n_holomorphic()
    }

    pub fn w(&self) -> Var {
        self.space.holo(self.ambient_dim() - 1)
    }

    pub fn wbar(&self) -> Var {
        self.space.partner(self.w())
    }

    pub fn t(&self) -> Var {
        self.space.var("t").unwrap()
    }

    /// `Z_α = ∂_α - 2iρ_α ∂_w` over the CR directions (`z` and, for Winkelmann, `ζ`).
    pub fn frame(&self) -> &[FrameVector] {
        &self.frame
    }

    /// `h_{αβ̄} = Σ ρ_{jk̄} Z_α^j conj(Z_β^k)`.
    pub fn levi_matrix(&self) -> Vec<Vec<Poly>> {
        let n = self.ambient_dim();
        let hess: Vec<Vec<Poly>> = (0..n)
            .map(|j| (0..n).map(|k| self.rho.derivative(self.space.holo(j)).derivative(self.space.anti(k))).collect())
            .collect();
        self.frame
            .iter()
            .map(|za| {
                self.frame
                    .iter()
                    .map(|zb| {
                        let mut acc = Poly::zero(&self.space);
                        for j in 0..n {
                            for k in 0..n {
                                let c = &za.coeffs()[j] * &zb.coeffs()[k].conj();
                                if !c.is_zero() && !hess[j][k].is_zero() {
                                    acc = &acc + &(&hess[j][k] * &c);
                                }
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    /// Bindings `w ↦ t + iφ`, `w̄ ↦ t - iφ`, identity elsewhere.
    pub fn surface_bindings(&self) -> Vec<Poly> {
        let t = Poly::var(&self.space, self.t());
        let iphi = self.phi.scale(&GaussianRational::i());
        self.space
            .all()
            .map(|v| {
                if v == self.w() {
                    &t + &iphi
                } else if v == self.wbar() {
                    &t - &iphi
                } else {
                    Poly::var(&self.space, v)
                }
            })
            .collect()
    }

    /// Restricts an ambient function to the surface parametrization.
    pub fn restrict<F: Function>(&self, f: &F) -> Result<F> {
        let bindings: Vec<F> = self.surface_bindings().iter().map(|b| f.lift(b)).collect();
        Ok(f.compose(&bindings)?)
    }

    /// The full assignment for a holomorphic ambient point; `t` is set to `Re w`.
    pub fn ambient_point(&self, holo: &[GaussianRational]) -> Result<SurfacePoint> {
        let n = self.ambient_dim();
        if holo.len() != n {
            return Err(CrError::Dimension(format!("expected {n} coordinates, got {}", holo.len())));
        }
        let mut coords: Vec<GaussianRational> = holo.to_vec();
        coords.extend(holo.iter().map(GaussianRational::conj));
        coords.push(GaussianRational::from_real(holo[n - 1].re().clone()));
        Ok(SurfacePoint { coords })
    }

    /// The surface point over the free coordinates (`z`, and `ζ` for
    /// Winkelmann) and a real `t`.
    pub fn lift_point(&self, free: &[GaussianRational], t: &GaussianRational) -> Result<SurfacePoint> {
        let n = self.ambient_dim();
        if free.len() != n - 1 {
            return Err(CrError::Dimension(format!("expected {} free coordinates, got {}", n - 1, free.len())));
        }
        if !t.is_real() {
            return Err(CrError::Parameter(format!("t must be real, got {t}")));
        }
        let mut holo = free.to_vec();
        holo.push(GaussianRational::zero());
        let mut p = self.ambient_point(&holo)?;
        let phi = self.phi.eval(&p.coords);
        let w = t + &(&phi * &GaussianRational::i());
        p.coords[n - 1] = w.clone();
        p.coords[2 * n - 1] = w.conj();
        p.coords[2 * n] = t.clone();
        debug_assert!(self.rho.eval(&p.coords).is_zero());
        Ok(p)
    }

    pub fn contains(&self, p: &SurfacePoint) -> bool {
        self.rho.eval(&p.coords).is_zero()
    }

    pub fn origin(&self) -> SurfacePoint {
        SurfacePoint { coords: vec![GaussianRational::zero(); self.space.len()] }
    }
}

fn make_space(holo: &[(String, u32)]) -> Arc<VariableSpace> {
    let names: Vec<(&str, u32)> = holo.iter().map(|(s, w)| (s.as_str(), *w)).collect();
    VariableSpace::new(&names, &[("t", 2)])
}

fn frame_for(space: &Arc<VariableSpace>, rho: &Poly, dirs: &[Var], w: Var) -> Vec<FrameVector> {
    let two_i = GaussianRational::complex(0, 1, 2, 1);
    dirs.iter()
        .map(|&v| {
            let mut coeffs = vec![Poly::zero(space); space.n_holomorphic()];
            coeffs[v.index()] = Poly::one(space);
            coeffs[w.index()] = -&rho.derivative(v).scale(&two_i);
            FrameVector::new(coeffs)
        })
        .collect()
}
