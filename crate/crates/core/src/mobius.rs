//! The Winkelmann model CR structure on `C^{n'+1} × R`, its pure-type
//! covariant Hessian, and checks of CR Möbius (pseudo-Einstein) candidates.

use std::sync::Arc;

use cr_algebra::linalg::{det_symbolic, submatrix};
use cr_algebra::{GaussianRational as GR, Poly, RationalFn, Var, VariableSpace};
use rand::Rng;

use crate::error::{CrError, Result};
use crate::sampling::{rng, small_real, small_scalar};

#[derive(Clone, PartialEq, Debug)]
pub struct ModelCRStructure {
    n: usize,
    space: Arc<VariableSpace>,
    phi: Poly,
    levi: Vec<Vec<RationalFn>>,
    /// `gamma[γ][β][α] = Γ^γ_{βα}`.
    gamma: Vec<Vec<Vec<RationalFn>>>,
}

fn inverse(m: &[Vec<RationalFn>]) -> Result<Vec<Vec<RationalFn>>> {
    let n = m.len();
    let det = det_symbolic(m);
    if det.is_zero() {
        return Err(CrError::DegenerateMetric);
    }
    let idx: Vec<usize> = (0..n).collect();
    let minor = |i: usize, j: usize| {
        let rows: Vec<usize> = idx.iter().copied().filter(|&r| r != i).collect();
        let cols: Vec<usize> = idx.iter().copied().filter(|&c| c != j).collect();
        det_symbolic(&submatrix(m, &rows, &cols))
    };
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // adjugate is the transpose of the cofactor matrix
                    let c = if n == 1 { RationalFn::one(det.space()) } else { minor(j, i) };
                    let c = if (i + j) % 2 == 1 { -c } else { c };
                    Ok(c.try_div(&det)?)
                })
                .collect()
        })
        .collect()
}

impl ModelCRStructure {
    /// The model with `ε'_k = −1` for `k < ℓ'`, as for `W^{2n'+3}_{ℓ'}`.
    pub fn new(n: usize, ell: usize) -> Result<Self> {
        if n == 0 || ell == 0 || ell > n {
            return Err(CrError::Parameter(format!("model needs 1 ≤ ℓ' ≤ n', got n'={n}, ℓ'={ell}")));
        }
        let names: Vec<String> = (1..=n).map(|k| format!("z{k}")).collect();
        let mut holo: Vec<(&str, u32)> = names.iter().map(|s| (s.as_str(), 1)).collect();
        holo.push(("zeta", 2));
        let space = VariableSpace::new(&holo, &[("t", 2)]);
        let z = |k: usize| Poly::var(&space, space.holo(k));
        let zb = |k: usize| Poly::var(&space, space.anti(k));
        let (zn, zeta) = (n - 1, n);
        let over_2i = GR::complex(0, 1, -1, 2);
        let mut phi = (&(&z(zn) * &zb(zeta)) - &(&zb(zn) * &z(zeta))).scale(&over_2i);
        phi = &phi + &(&z(zn) * &zb(zn)).pow(2);
        for k in 0..n - 1 {
            let e = if k + 1 < ell { -1 } else { 1 };
            phi = &phi + &(&z(k) * &zb(k)).scale(&GR::from_int(e));
        }
        let dim = n + 1;
        let levi: Vec<Vec<RationalFn>> = (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| RationalFn::from_poly(phi.derivative(space.holo(a)).derivative(space.anti(b))))
                    .collect()
            })
            .collect();
        let mut model = Self { n, space, phi, levi, gamma: Vec::new() };
        // Γ^γ_{βα} = h^{γσ̄} Z_β h_{ασ̄}, with h^{γσ̄} h_{ασ̄} = δ^γ_α
        let transposed: Vec<Vec<RationalFn>> = (0..dim).map(|i| (0..dim).map(|j| model.levi[j][i].clone()).collect()).collect();
        let m = inverse(&transposed)?;
        let mut gamma = vec![vec![vec![RationalFn::zero(&model.space); dim]; dim]; dim];
        for b in 0..dim {
            for a in 0..dim {
                let dz: Vec<RationalFn> = (0..dim).map(|s| model.z(b, &model.levi[a][s])).collect();
                for g in 0..dim {
                    gamma[g][b][a] = (0..dim).fold(RationalFn::zero(&model.space), |acc, s| acc + m[g][s].clone() * dz[s].clone());
                }
            }
        }
        model.gamma = gamma;
        Ok(model)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cr_dim(&self) -> usize {
        self.n + 1
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    pub fn phi(&self) -> &Poly {
        &self.phi
    }

    pub fn t(&self) -> Var {
        self.space.var("t").unwrap()
    }

    pub fn levi(&self) -> &[Vec<RationalFn>] {
        &self.levi
    }

    /// `Γ^γ_{βα}`.
    pub fn christoffel(&self, g: usize, b: usize, a: usize) -> &RationalFn {
        &self.gamma[g][b][a]
    }

    /// `w = t + iφ` on the model.
    pub fn w(&self) -> Poly {
        &Poly::var(&self.space, self.t()) + &self.phi.scale(&GR::i())
    }

    /// `Z_α = ∂_α + i φ_α ∂_t`.
    pub fn z(&self, a: usize, f: &RationalFn) -> RationalFn {
        let v = self.space.holo(a);
        let phi_a = RationalFn::from_poly(self.phi.derivative(v).scale(&GR::i()));
        f.derivative(v) + phi_a * f.derivative(self.t())
    }

    /// `Z_ᾱ = ∂_ᾱ − i φ_ᾱ ∂_t`.
    pub fn zbar(&self, a: usize, f: &RationalFn) -> RationalFn {
        let v = self.space.anti(a);
        let phi_a = RationalFn::from_poly(self.phi.derivative(v).scale(&-GR::i()));
        f.derivative(v) + phi_a * f.derivative(self.t())
    }

    /// `[Z_β̄, Z_α] f`.
    pub fn commutator(&self, a: usize, b: usize, f: &RationalFn) -> RationalFn {
        self.zbar(b, &self.z(a, f)) - self.z(a, &self.zbar(b, f))
    }

    /// `2i φ_{αβ̄} ∂_t f`.
    pub fn commutator_expected(&self, a: usize, b: usize, f: &RationalFn) -> RationalFn {
        (self.levi[a][b].clone() * f.derivative(self.t())).scale(&GR::complex(0, 1, 2, 1))
    }

    /// The pure-type covariant Hessian `G_{,αβ} = Z_βZ_αG − Γ^γ_{βα}Z_γG`.
    pub fn b_operator(&self, g: &RationalFn, a: usize, b: usize) -> RationalFn {
        let mut out = self.z(b, &self.z(a, g));
        for c in 0..self.cr_dim() {
            let gam = &self.gamma[c][b][a];
            if !gam.is_zero() {
                out = out - gam.clone() * self.z(c, g);
            }
        }
        out
    }

    /// Random model points `(z, ζ, t)` with `t` real.
    pub fn sample_points(&self, count: usize, seed: u64) -> Vec<Vec<GR>> {
        let mut r = rng(seed);
        (0..count)
            .map(|_| {
                let holo: Vec<GR> = (0..self.cr_dim()).map(|_| small_scalar(&mut r)).collect();
                let mut p = holo.clone();
                p.extend(holo.iter().map(GR::conj));
                p.push(small_real(&mut r));
                p
            })
            .collect()
    }
}

/// `u = log|c₀ + Σ c_k z_k + c_{n'+2} w|`.
#[derive(Clone, PartialEq, Debug)]
pub struct CandidateU {
    /// `c₀, c₁, …, c_{n'}, c_{n'+2}`.
    pub coeffs: Vec<GR>,
}

impl CandidateU {
    pub fn new(coeffs: Vec<GR>) -> Result<Self> {
        if coeffs.iter().all(GR::is_zero) {
            return Err(CrError::Parameter("all coefficients vanish".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn random(n: usize, r: &mut impl Rng) -> Self {
        loop {
            let c: Vec<GR> = (0..n + 2).map(|_| small_scalar(r)).collect();
            if let Ok(u) = Self::new(c) {
                return u;
            }
        }
    }

    /// The CR function `G` with `u = log|G|`.
    pub fn g(&self, model: &ModelCRStructure) -> Result<RationalFn> {
        let n = model.n();
        if self.coeffs.len() != n + 2 {
            return Err(CrError::Dimension(format!("need {} coefficients, got {}", n + 2, self.coeffs.len())));
        }
        let space = model.space();
        let mut g = Poly::constant(space, self.coeffs[0].clone());
        for k in 0..n {
            g = &g + &Poly::var(space, space.holo(k)).scale(&self.coeffs[k + 1]);
        }
        g = &g + &model.w().scale(&self.coeffs[n + 1]);
        Ok(RationalFn::from_poly(g))
    }
}

/// Per-condition outcome of a Möbius check.
#[derive(Clone, PartialEq, Debug)]
pub struct MobiusCheck {
    pub is_cr: bool,
    /// `(α, β)` with `G_{,αβ} ≢ 0`.
    pub failing: Vec<(usize, usize, RationalFn)>,
    pub points_agree: bool,
}

impl MobiusCheck {
    pub fn passes(&self) -> bool {
        self.is_cr && self.failing.is_empty() && self.points_agree
    }
}

/// Symbolic check that `G` is CR with vanishing pure-type Hessian, plus
/// evaluation at `points` where `G ≠ 0`.
pub fn check_cr_function(model: &ModelCRStructure, g: &RationalFn, points: &[Vec<GR>]) -> Result<MobiusCheck> {
    let dim = model.cr_dim();
    let is_cr = (0..dim).all(|a| model.zbar(a, g).is_zero());
    let mut failing = Vec::new();
    let mut hess = Vec::new();
    for a in 0..dim {
        for b in 0..dim {
            let h = model.b_operator(g, a, b);
            if !h.is_zero() {
                failing.push((a, b, h.clone()));
            }
            hess.push(h);
        }
    }
    let mut points_agree = true;
    for p in points {
        if g.eval(p)?.is_zero() {
            continue;
        }
        let all_zero = hess.iter().map(|h| h.eval(p)).collect::<std::result::Result<Vec<_>, _>>()?.iter().all(GR::is_zero);
        points_agree &= all_zero == failing.is_empty();
    }
    Ok(MobiusCheck { is_cr, failing, points_agree })
}

pub fn verify_mobius_solution(model: &ModelCRStructure, c: &CandidateU, points: &[Vec<GR>]) -> Result<bool> {
    Ok(check_cr_function(model, &c.g(model)?, points)?.passes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(p: Poly) -> RationalFn {
        RationalFn::from_poly(p)
    }

    #[test]
    fn christoffel_symbols() {
        let m = ModelCRStructure::new(1, 1).unwrap();
        let zb = Poly::var(m.space(), m.space().anti(0));
        assert_eq!(m.christoffel(1, 0, 0), &rf(zb.scale(&GR::complex(0, 1, -8, 1))));
        for g in 0..2 {
            for b in 0..2 {
                for a in 0..2 {
                    if (g, b, a) != (1, 0, 0) {
                        assert!(m.christoffel(g, b, a).is_zero(), "Γ^{g}_{b}{a}");
                    }
                }
            }
        }
    }

    #[test]
    fn levi_and_commutator() {
        let m = ModelCRStructure::new(2, 1).unwrap();
        let s = m.space().clone();
        let z2 = Poly::var(&s, s.holo(1));
        let z2b = Poly::var(&s, s.anti(1));
        assert_eq!(m.levi()[1][1], rf((&z2 * &z2b).scale(&GR::from_int(4))));
        let t = Poly::var(&s, m.t());
        let f = rf(&(&(&t * &t) * &z2b) + &(&Poly::var(&s, s.holo(2)) * &t));
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(m.commutator(a, b, &f), m.commutator_expected(a, b, &f));
                assert!(m.zbar(a, &rf(Poly::var(&s, s.holo(b)))).is_zero());
            }
        }
    }

    #[test]
    fn hessian_examples() {
        let m = ModelCRStructure::new(2, 1).unwrap();
        let s = m.space().clone();
        let z1 = rf(Poly::var(&s, s.holo(0)));
        for a in 0..3 {
            for b in 0..3 {
                assert!(m.b_operator(&z1, a, b).is_zero());
            }
        }
        let z2 = Poly::var(&s, s.holo(1));
        let sq = rf(&z2 * &z2);
        assert_eq!(m.b_operator(&sq, 1, 1).as_constant(), Some(GR::from_int(2)));
    }

    #[test]
    fn w_hessian_with_these_symbols() {
        // Z Z w = 4i z̄², Γ^ζ_{zz} Z_ζ w = 8i z̄², so w_{,zz} = −4i z̄²
        let m = ModelCRStructure::new(1, 1).unwrap();
        let w = rf(m.w());
        let zb = Poly::var(m.space(), m.space().anti(0));
        assert_eq!(m.b_operator(&w, 0, 0), rf((&zb * &zb).scale(&GR::complex(0, 1, -4, 1))));
    }

    #[test]
    fn candidates() {
        let m = ModelCRStructure::new(1, 1).unwrap();
        let pts = m.sample_points(5, 3);
        let constant = CandidateU::new(vec![GR::one(), GR::zero(), GR::zero()]).unwrap();
        assert!(verify_mobius_solution(&m, &constant, &pts).unwrap());
        let linear = CandidateU::new(vec![GR::one(), GR::from_int(2), GR::zero()]).unwrap();
        assert!(verify_mobius_solution(&m, &linear, &pts).unwrap());
        assert!(CandidateU::new(vec![GR::zero(); 3]).is_err());
        let s = m.space().clone();
        let z = Poly::var(&s, s.holo(0));
        let planted = rf(&Poly::one(&s) + &(&z * &z));
        let check = check_cr_function(&m, &planted, &pts).unwrap();
        assert!(check.is_cr && !check.passes());
    }
}
