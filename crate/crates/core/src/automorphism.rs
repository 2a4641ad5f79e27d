//! Stability-group automorphisms of Winkelmann hypersurfaces, generators of the
//! hyperquadric automorphism group, and equivalence moves `φ ∘ H ∘ γ⁻¹`.

use std::sync::Arc;

use cr_algebra::linalg::Matrix;
use cr_algebra::{GaussianRational as GR, RationalFn};
use rand::Rng;

use crate::error::{CrError, Result};
use crate::hypersurface::Hypersurface;
use crate::maps::{AnyFn, HoloMap};
use crate::sampling::{small_real, small_scalar};

#[derive(Clone, PartialEq, Debug)]
pub enum AutKind {
    /// `(λ²u₁z₁, …, λ²u_{n'-1}z_{n'-1}, λu_{n'}z_{n'}, λ³u_{n'}ζ, λ⁴w)`.
    WinkH { lambda: GR, u: Vec<GR> },
    /// `(z' + a z_{n'}, z_{n'}, ζ + 2i⟨ā, z'⟩ + (r + i‖a‖²)z_{n'}, w)`.
    WinkS { a: Vec<GR>, r: GR },
    /// `(Uz', z_{n'}, ζ, w)`.
    WinkR { u: Matrix, sigma: i64 },
    /// `(z + b, w + 2iΣε b̄z + t₀ + i‖b‖²)`.
    QuadricTranslation { b: Vec<GR>, t0: GR },
    /// `(λz, λ²w)`.
    QuadricDilation { lambda: GR },
    /// `(Uz, w)`.
    QuadricRotation { u: Matrix },
    /// `(s z/w, -1/w)`, `|s| = 1`.
    QuadricInversion { s: GR },
}

#[derive(Clone, PartialEq, Debug)]
pub struct AutomorphismSpec {
    surface: Arc<Hypersurface>,
    kind: AutKind,
}

fn is_positive(x: &GR) -> bool {
    x.is_real() && x.real_sign() == Some(std::cmp::Ordering::Greater)
}

fn is_unit(x: &GR) -> bool {
    x.norm_sqr() == *GR::one().re()
}

fn conj_transpose(m: &Matrix) -> Matrix {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].conj()).collect()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(GR::zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

fn diag(eps: &[i64]) -> Matrix {
    let n = eps.len();
    (0..n).map(|i| (0..n).map(|j| if i == j { GR::from_int(eps[i]) } else { GR::zero() }).collect()).collect()
}

fn scaled(m: &Matrix, c: &GR) -> Matrix {
    m.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

/// `σ` with `U E U* = σE`, if any.
fn pseudo_unitary_sign(u: &Matrix, eps: &[i64]) -> Option<i64> {
    let e = diag(eps);
    let lhs = mat_mul(&mat_mul(u, &e), &conj_transpose(u));
    [1, -1].into_iter().find(|&s| lhs == scaled(&e, &GR::from_int(s)))
}

fn check_square(u: &Matrix, n: usize) -> Result<()> {
    if u.len() != n || u.iter().any(|r| r.len() != n) {
        return Err(CrError::Parameter(format!("rotation matrix must be {n}×{n}")));
    }
    Ok(())
}

impl AutomorphismSpec {
    pub fn new(surface: Arc<Hypersurface>, kind: AutKind) -> Result<Self> {
        let wink = !surface.is_hyperquadric();
        let n = surface.n();
        let eps = surface.epsilon();
        let needs = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(CrError::Parameter(format!("{what} automorphism needs a {} surface", if wink { "hyperquadric" } else { "Winkelmann" })))
            }
        };
        match &kind {
            AutKind::WinkH { lambda, u } => {
                needs(wink, "WinkH")?;
                if !is_positive(lambda) {
                    return Err(CrError::Parameter(format!("λ must be a positive rational, got {lambda}")));
                }
                if u.len() != n || !u.iter().all(is_unit) {
                    return Err(CrError::Parameter(format!("need {n} unit-modulus u_k")));
                }
            }
            AutKind::WinkS { a, r } => {
                needs(wink, "WinkS")?;
                if a.len() != n - 1 || !r.is_real() {
                    return Err(CrError::Parameter(format!("WinkS needs a ∈ C^{} and real r", n - 1)));
                }
            }
            AutKind::WinkR { u, sigma } => {
                needs(wink, "WinkR")?;
                check_square(u, n - 1)?;
                match pseudo_unitary_sign(u, eps) {
                    Some(s) if s == *sigma && s == 1 => {}
                    Some(-1) => {
                        return Err(CrError::Parameter(
                            "U E U* = -E does not preserve the Winkelmann hypersurface".into(),
                        ))
                    }
                    _ => return Err(CrError::Parameter("U is not pseudo-unitary with the stated σ".into())),
                }
            }
            AutKind::QuadricTranslation { b, t0 } => {
                needs(!wink, "translation")?;
                if b.len() != n || !t0.is_real() {
                    return Err(CrError::Parameter(format!("translation needs b ∈ C^{n} and real t₀")));
                }
            }
            AutKind::QuadricDilation { lambda } => {
                needs(!wink, "dilation")?;
                if !is_positive(lambda) {
                    return Err(CrError::Parameter(format!("λ must be a positive rational, got {lambda}")));
                }
            }
            AutKind::QuadricRotation { u } => {
                needs(!wink, "rotation")?;
                check_square(u, n)?;
                let e = diag(eps);
                if mat_mul(&mat_mul(&conj_transpose(u), &e), u) != e {
                    return Err(CrError::Parameter("U is not pseudo-unitary".into()));
                }
            }
            AutKind::QuadricInversion { s } => {
                needs(!wink, "inversion")?;
                if !is_unit(s) {
                    return Err(CrError::Parameter(format!("|s| must be 1, got {s}")));
                }
            }
        }
        Ok(Self { surface, kind })
    }

    pub fn surface(&self) -> &Arc<Hypersurface> {
        &self.surface
    }

    pub fn kind(&self) -> &AutKind {
        &self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            AutKind::WinkH { .. } => "WinkH",
            AutKind::WinkS { .. } => "WinkS",
            AutKind::WinkR { .. } => "WinkR",
            AutKind::QuadricTranslation { .. } => "QuadricTranslation",
            AutKind::QuadricDilation { .. } => "QuadricDilation",
            AutKind::QuadricRotation { .. } => "QuadricRotation",
            AutKind::QuadricInversion { .. } => "QuadricInversion",
        }
    }

    pub fn materialize(&self) -> Result<HoloMap> {
        let s = &self.surface;
        let space = s.space();
        let n = s.n();
        let eps = s.epsilon();
        let z = |k: usize| RationalFn::var(space, space.holo(k));
        let c = |x: &GR| RationalFn::constant(space, x.clone());
        let w = z(s.ambient_dim() - 1);
        let two_i = GR::complex(0, 1, 2, 1);
        let comps: Vec<RationalFn> = match &self.kind {
            AutKind::WinkH { lambda, u } => {
                let l2 = lambda * lambda;
                let mut out: Vec<RationalFn> = (0..n - 1).map(|k| z(k).scale(&(&l2 * &u[k]))).collect();
                out.push(z(n - 1).scale(&(lambda * &u[n - 1])));
                out.push(z(n).scale(&(&(&l2 * lambda) * &u[n - 1])));
                out.push(w.scale(&(&l2 * &l2)));
                out
            }
            AutKind::WinkS { a, r } => {
                let zn = z(n - 1);
                let mut out: Vec<RationalFn> = (0..n - 1).map(|k| z(k) + zn.scale(&a[k])).collect();
                out.push(zn.clone());
                let mut zeta = z(n);
                let mut norm = GR::zero();
                for k in 0..n - 1 {
                    let e = GR::from_int(eps[k]);
                    zeta = zeta + z(k).scale(&(&(&two_i * &e) * &a[k].conj()));
                    norm = &norm + &(&e * &GR::from_real(a[k].norm_sqr()));
                }
                out.push(zeta + zn.scale(&(r + &(&GR::i() * &norm))));
                out.push(w);
                out
            }
            AutKind::WinkR { u, .. } => {
                let mut out: Vec<RationalFn> = (0..n - 1)
                    .map(|i| (0..n - 1).fold(RationalFn::zero(space), |acc, j| acc + z(j).scale(&u[i][j])))
                    .collect();
                out.extend([z(n - 1), z(n), w]);
                out
            }
            AutKind::QuadricTranslation { b, t0 } => {
                let mut out: Vec<RationalFn> = (0..n).map(|k| z(k) + c(&b[k])).collect();
                let mut last = w + c(t0);
                for k in 0..n {
                    let e = GR::from_int(eps[k]);
                    last = last + z(k).scale(&(&(&two_i * &e) * &b[k].conj()));
                    last = last + c(&(&(&GR::i() * &e) * &GR::from_real(b[k].norm_sqr())));
                }
                out.push(last);
                out
            }
            AutKind::QuadricDilation { lambda } => {
                let mut out: Vec<RationalFn> = (0..n).map(|k| z(k).scale(lambda)).collect();
                out.push(w.scale(&(lambda * lambda)));
                out
            }
            AutKind::QuadricRotation { u } => {
                let mut out: Vec<RationalFn> = (0..n)
                    .map(|i| (0..n).fold(RationalFn::zero(space), |acc, j| acc + z(j).scale(&u[i][j])))
                    .collect();
                out.push(w);
                out
            }
            AutKind::QuadricInversion { s: sign } => {
                let inv_w = w.inv()?;
                let mut out: Vec<RationalFn> = (0..n).map(|k| (z(k) * inv_w.clone()).scale(sign)).collect();
                out.push(-inv_w);
                out
            }
        };
        let map = HoloMap::rational(s.clone(), s.clone(), comps)?;
        if let AutKind::QuadricInversion { .. } = self.kind {
            // (0, 1) lies on the surface away from w = 0
            let mut base = vec![GR::zero(); s.ambient_dim()];
            base[n] = GR::one();
            return map.with_base(&base);
        }
        Ok(map)
    }

    /// The inverse automorphism in closed form.
    pub fn inverse(&self) -> Self {
        let eps = self.surface.epsilon();
        let kind = match &self.kind {
            AutKind::WinkH { lambda, u } => AutKind::WinkH {
                lambda: lambda.inv().expect("λ > 0"),
                u: u.iter().map(GR::conj).collect(),
            },
            AutKind::WinkS { a, r } => AutKind::WinkS { a: a.iter().map(|x| -x).collect(), r: -r },
            AutKind::WinkR { u, sigma } => {
                let e = diag(eps);
                AutKind::WinkR { u: mat_mul(&mat_mul(&e, &conj_transpose(u)), &e), sigma: *sigma }
            }
            AutKind::QuadricTranslation { b, t0 } => {
                AutKind::QuadricTranslation { b: b.iter().map(|x| -x).collect(), t0: -t0 }
            }
            AutKind::QuadricDilation { lambda } => AutKind::QuadricDilation { lambda: lambda.inv().expect("λ > 0") },
            AutKind::QuadricRotation { u } => {
                let e = diag(eps);
                AutKind::QuadricRotation { u: mat_mul(&mat_mul(&e, &conj_transpose(u)), &e) }
            }
            AutKind::QuadricInversion { s } => AutKind::QuadricInversion { s: -&s.conj() },
        };
        Self { surface: self.surface.clone(), kind }
    }

    /// The constant `C` with `ρ ∘ ψ = C ρ`.
    pub fn homothety_check(&self) -> Result<GR> {
        let q = self.materialize()?.check_maps_into()?;
        match &q.q {
            AnyFn::Rational(f) => f.as_constant().ok_or_else(|| CrError::NotHomothety(f.to_string())),
            AnyFn::Series(f) => Err(CrError::NotHomothety(f.to_string())),
        }
    }

    /// The identity element of the catalog on `s`.
    pub fn identity(s: Arc<Hypersurface>) -> Self {
        let kind = if s.is_hyperquadric() {
            AutKind::QuadricDilation { lambda: GR::one() }
        } else {
            AutKind::WinkH { lambda: GR::one(), u: vec![GR::one(); s.n()] }
        };
        Self { surface: s, kind }
    }
}

/// Generators of the hyperquadric catalog with default parameters.
pub fn quadric_catalog(s: Arc<Hypersurface>) -> Result<Vec<AutomorphismSpec>> {
    let n = s.n();
    let mut b = vec![GR::zero(); n];
    b[0] = GR::complex(1, 2, -1, 1);
    let u = identity_with_block(n, 0, 0, &unit_point(0));
    Ok(vec![
        AutomorphismSpec::new(s.clone(), AutKind::QuadricTranslation { b, t0: GR::one() })?,
        AutomorphismSpec::new(s.clone(), AutKind::QuadricDilation { lambda: GR::from_int(3) })?,
        AutomorphismSpec::new(s.clone(), AutKind::QuadricRotation { u })?,
        AutomorphismSpec::new(s, AutKind::QuadricInversion { s: GR::one() })?,
    ])
}

/// Printed stability-group generators with sample parameters.
pub fn winkelmann_catalog(s: Arc<Hypersurface>) -> Result<Vec<AutomorphismSpec>> {
    let n = s.n();
    let mut u = vec![GR::one(); n];
    u[n - 1] = unit_point(1);
    let a: Vec<GR> = (0..n - 1).map(|k| GR::complex(1, 1, k as i64 - 1, 2)).collect();
    let mut specs = vec![
        AutomorphismSpec::new(s.clone(), AutKind::WinkH { lambda: GR::from_int(2), u })?,
        AutomorphismSpec::new(s.clone(), AutKind::WinkS { a, r: GR::ratio(-3, 2) })?,
    ];
    if n > 1 {
        let rot = pseudo_unitary_for(s.epsilon(), &unit_point(2));
        specs.push(AutomorphismSpec::new(s.clone(), AutKind::WinkR { u: rot, sigma: 1 })?);
    }
    Ok(specs)
}

/// Exact points on the unit circle from Pythagorean triples.
pub fn unit_point(k: usize) -> GR {
    const TRIPLES: [(i64, i64, i64); 4] = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25)];
    let (a, b, c) = TRIPLES[k % 4];
    let p = GR::complex(a, c, b, c);
    match (k / 4) % 4 {
        0 => p,
        1 => p.conj(),
        2 => -&p,
        _ => -&p.conj(),
    }
}

fn identity_with_block(n: usize, i: usize, j: usize, c: &GR) -> Matrix {
    let mut m: Matrix = (0..n).map(|r| (0..n).map(|s| if r == s { GR::one() } else { GR::zero() }).collect()).collect();
    m[i][j] = c.clone();
    m
}

/// A pseudo-unitary matrix for the sign vector `eps`: a phase on the first
/// slot, and a real rotation on two equal-sign slots when available.
pub fn pseudo_unitary_for(eps: &[i64], phase: &GR) -> Matrix {
    let n = eps.len();
    if n == 0 {
        return Vec::new();
    }
    let mut m = identity_with_block(n, 0, 0, phase);
    if let Some((i, j)) = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| eps[i] == eps[j]) {
        let (c, s) = (GR::ratio(3, 5), GR::ratio(4, 5));
        let rot = identity_with_block(n, i, i, &c);
        let mut rot = rot;
        rot[j][j] = c;
        rot[i][j] = -&s;
        rot[j][i] = s;
        m = mat_mul(&rot, &m);
    }
    m
}

/// A random catalog element on `s` (Winkelmann stability group or quadric generators).
pub fn random_spec(s: &Arc<Hypersurface>, rng: &mut impl Rng) -> Result<AutomorphismSpec> {
    let n = s.n();
    let lambda = GR::ratio(rng.gen_range(1..=4), rng.gen_range(1..=3));
    let kind = if s.is_hyperquadric() {
        match rng.gen_range(0..4) {
            0 => AutKind::QuadricTranslation { b: (0..n).map(|_| small_scalar(rng)).collect(), t0: small_real(rng) },
            1 => AutKind::QuadricDilation { lambda },
            2 => AutKind::QuadricRotation { u: pseudo_unitary_for(s.epsilon(), &unit_point(rng.gen_range(0..16))) },
            _ => AutKind::QuadricInversion { s: unit_point(rng.gen_range(0..16)) },
        }
    } else {
        match rng.gen_range(0..3) {
            0 => AutKind::WinkH { lambda, u: (0..n).map(|_| unit_point(rng.gen_range(0..16))).collect() },
            1 => AutKind::WinkS { a: (0..n - 1).map(|_| small_scalar(rng)).collect(), r: small_real(rng) },
            _ => AutKind::WinkR { u: pseudo_unitary_for(s.epsilon(), &unit_point(rng.gen_range(0..16))), sigma: 1 },
        }
    };
    AutomorphismSpec::new(s.clone(), kind)
}

/// `φ ∘ H ∘ γ⁻¹`, based at `γ(p)` for the base point `p` of `H`.
pub fn equivalence_move(h: &HoloMap, phi: &AutomorphismSpec, gamma: &AutomorphismSpec) -> Result<HoloMap> {
    if **phi.surface() != **h.target() || **gamma.surface() != **h.source() {
        return Err(CrError::Dimension("automorphisms must act on the map's source and target".into()));
    }
    let g = gamma.materialize()?;
    let ginv = gamma.inverse().materialize()?;
    let moved = phi.materialize()?.compose(h)?.compose(&ginv)?;
    if moved.is_series() {
        return Ok(moved);
    }
    let base = g.image_of(h.base())?;
    moved.with_base(base.holomorphic(h.source().ambient_dim()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wink(n: usize, l: usize) -> Arc<Hypersurface> {
        Arc::new(Hypersurface::winkelmann(n, l).unwrap())
    }

    #[test]
    fn wink_h_matches_printed_specialization() {
        let s = wink(1, 1);
        let spec = AutomorphismSpec::new(s.clone(), AutKind::WinkH { lambda: GR::from_int(2), u: vec![GR::one()] })
            .unwrap();
        let m = spec.materialize().unwrap();
        let shown: Vec<String> = (0..3).map(|k| m.components().get(k).to_string()).collect();
        assert_eq!(shown, ["2*z1", "8*zeta", "16*w"]);
        assert_eq!(spec.homothety_check().unwrap(), GR::from_int(16));
    }

    #[test]
    fn wink_s_with_r_only() {
        let s = wink(2, 1);
        let spec =
            AutomorphismSpec::new(s, AutKind::WinkS { a: vec![GR::zero()], r: GR::one() }).unwrap();
        let m = spec.materialize().unwrap();
        assert_eq!(m.components().get(2).to_string(), "z2 + zeta");
        assert!(spec.homothety_check().unwrap().is_one());
    }

    #[test]
    fn side_reversing_rotation_is_rejected() {
        let s = wink(3, 2);
        // eps' = (-1, 1): swapping slots gives U E U* = -E
        let swap = vec![vec![GR::zero(), GR::one()], vec![GR::one(), GR::zero()]];
        assert!(matches!(
            AutomorphismSpec::new(s, AutKind::WinkR { u: swap, sigma: -1 }),
            Err(CrError::Parameter(_))
        ));
    }

    #[test]
    fn invalid_parameters() {
        let s = wink(1, 1);
        let bad_u = AutKind::WinkH { lambda: GR::one(), u: vec![GR::from_int(2)] };
        assert!(AutomorphismSpec::new(s.clone(), bad_u).is_err());
        let bad_l = AutKind::WinkH { lambda: GR::from_int(-1), u: vec![GR::one()] };
        assert!(AutomorphismSpec::new(s, bad_l).is_err());
    }

    #[test]
    fn quadric_generators() {
        let s = Arc::new(Hypersurface::hyperquadric(1, 0).unwrap());
        let tr = AutomorphismSpec::new(s.clone(), AutKind::QuadricTranslation { b: vec![GR::zero()], t0: GR::one() })
            .unwrap();
        assert_eq!(tr.materialize().unwrap().components().get(1).to_string(), "w + 1");
        assert!(tr.homothety_check().unwrap().is_one());
        let dil = AutomorphismSpec::new(s.clone(), AutKind::QuadricDilation { lambda: GR::from_int(3) }).unwrap();
        assert_eq!(dil.homothety_check().unwrap(), GR::from_int(9));
        let inv = AutomorphismSpec::new(s.clone(), AutKind::QuadricInversion { s: GR::one() }).unwrap();
        let q = inv.materialize().unwrap().check_maps_into().unwrap();
        assert_eq!(q.q.to_string(), "(1)/(w*wb)");
    }

    #[test]
    fn inverses_compose_to_identity() {
        let mut rng = crate::sampling::rng(7);
        for s in [
            Arc::new(Hypersurface::hyperquadric(2, 1).unwrap()),
            Arc::new(Hypersurface::hyperquadric(3, 0).unwrap()),
            wink(1, 1),
            wink(3, 2),
        ] {
            let id = HoloMap::identity(s.clone());
            for _ in 0..8 {
                let g = random_spec(&s, &mut rng).unwrap();
                let m = g.materialize().unwrap().compose(&g.inverse().materialize().unwrap()).unwrap();
                assert_eq!(m.components(), id.components(), "{}", g.name());
            }
        }
    }

    #[test]
    fn catalogs_are_homotheties() {
        for s in [wink(1, 1), wink(2, 1), wink(3, 3)] {
            for spec in winkelmann_catalog(s).unwrap() {
                spec.homothety_check().unwrap();
            }
        }
        for spec in quadric_catalog(Arc::new(Hypersurface::hyperquadric(2, 1).unwrap())).unwrap() {
            assert!(spec.materialize().unwrap().check_maps_into().unwrap().maps_into);
        }
    }
}
