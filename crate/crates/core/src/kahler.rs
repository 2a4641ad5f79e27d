//! Kähler metrics `g = −∂∂̄ log ρ` on the sides of the model hypersurfaces,
//! Ricci curvature, and the isometric-extension criterion.

use std::sync::Arc;

use cr_algebra::linalg::{det_symbolic, inertia, Inertia, Matrix};
use cr_algebra::{GaussianRational as GR, Poly, RationalFn, TruncSeries};

use crate::ahlfors::ambient_log_hessian_numerators;
use crate::error::{CrError, Result};
use crate::hypersurface::{Hypersurface, SurfacePoint};
use crate::maps::{AnyFn, Components, HoloMap, QuotientResult, Side};

#[derive(Clone, PartialEq, Debug)]
pub struct KahlerMetric {
    surface: Arc<Hypersurface>,
    potential: Poly,
    entries: Vec<Vec<RationalFn>>,
}

/// `∂_j∂_k̄ log p` for a polynomial `p`.
fn log_hessian(s: &Hypersurface, p: &Poly) -> Result<Vec<Vec<RationalFn>>> {
    let p = RationalFn::from_poly(p.clone());
    let p2 = p.clone() * p.clone();
    ambient_log_hessian_numerators(s, &p)
        .into_iter()
        .map(|row| row.into_iter().map(|n| Ok(n.try_div(&p2)?)).collect())
        .collect()
}

fn negate(m: Vec<Vec<RationalFn>>) -> Vec<Vec<RationalFn>> {
    m.into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect()
}

fn eval_matrix(m: &[Vec<RationalFn>], p: &SurfacePoint) -> Result<Matrix> {
    m.iter().map(|r| r.iter().map(|f| Ok(f.eval(&p.coords)?)).collect()).collect()
}

impl KahlerMetric {
    pub fn surface(&self) -> &Arc<Hypersurface> {
        &self.surface
    }

    /// The defining function whose `−log` is the potential.
    pub fn potential(&self) -> &Poly {
        &self.potential
    }

    pub fn entries(&self) -> &[Vec<RationalFn>] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_hermitian(&self) -> bool {
        let n = self.dim();
        (0..n).all(|j| (0..n).all(|k| self.entries[j][k] == self.entries[k][j].conj()))
    }

    pub fn at(&self, p: &SurfacePoint) -> Result<Matrix> {
        eval_matrix(&self.entries, p)
    }

    pub fn inertia_at(&self, p: &SurfacePoint) -> Result<Inertia> {
        Ok(inertia(&self.at(p)?))
    }
}

/// `g_{jk̄} = −∂_j∂_k̄ log ρ`.
pub fn metric_matrix(s: Arc<Hypersurface>) -> Result<KahlerMetric> {
    let rho = s.rho().clone();
    metric_from_potential(s, rho)
}

/// The metric of `−log p` for another defining function `p` of the same side.
pub fn metric_from_potential(s: Arc<Hypersurface>, potential: Poly) -> Result<KahlerMetric> {
    let entries = negate(log_hessian(&s, &potential)?);
    Ok(KahlerMetric { surface: s, potential, entries })
}

/// `Ric_{jk̄} = −∂_j∂_k̄ log det g`.
pub fn ricci_matrix(g: &KahlerMetric) -> Result<Vec<Vec<RationalFn>>> {
    let s = &g.surface;
    let n = g.dim();
    let rho = &g.potential;
    // ρ² g = ρ_j ρ_k̄ − ρ ρ_jk̄ is polynomial, so det g = D / ρ^{2n}
    let poly_entries: Vec<Vec<RationalFn>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    let (vj, vk) = (s.space().holo(j), s.space().anti(k));
                    let e = &(&rho.derivative(vj) * &rho.derivative(vk)) - &(rho * &rho.derivative(vj).derivative(vk));
                    RationalFn::from_poly(e)
                })
                .collect()
        })
        .collect();
    let det = det_symbolic(&poly_entries);
    if det.is_zero() {
        return Err(CrError::DegenerateMetric);
    }
    let d = det.as_poly().expect("polynomial entries have a polynomial determinant");
    // Ric = −∂∂̄ log D + 2n ∂∂̄ log ρ = −∂∂̄ log D − 2n g
    let hd = log_hessian(s, &d)?;
    let two_n = GR::from_int(2 * n as i64);
    Ok((0..n)
        .map(|j| (0..n).map(|k| -hd[j][k].clone() - g.entries[j][k].scale(&two_n)).collect())
        .collect())
}

pub fn ricci_at(ric: &[Vec<RationalFn>], p: &SurfacePoint) -> Result<Matrix> {
    eval_matrix(ric, p)
}

/// `c` with `Ric = c g`, if the metric is Kähler–Einstein.
pub fn einstein_constant(g: &KahlerMetric, ric: &[Vec<RationalFn>]) -> Result<Option<GR>> {
    let (j, k) = (0..g.dim())
        .flat_map(|j| (0..g.dim()).map(move |k| (j, k)))
        .find(|&(j, k)| !g.entries[j][k].is_zero())
        .ok_or(CrError::DegenerateMetric)?;
    let c = match ric[j][k].try_div(&g.entries[j][k])?.as_constant() {
        Some(c) => c,
        None => return Ok(None),
    };
    let all = (0..g.dim()).all(|a| (0..g.dim()).all(|b| ric[a][b] == g.entries[a][b].scale(&c)));
    Ok(all.then_some(c))
}

/// Whether `log|Q|` is pluriharmonic, i.e. the map pulls the target metric back
/// to the source metric.
pub fn isometry_check(map: &HoloMap, quotient: &QuotientResult) -> Result<bool> {
    if quotient.side == Side::Degenerate {
        return Err(CrError::NonTransversal);
    }
    let s = map.source();
    match &quotient.q {
        AnyFn::Rational(q) => {
            let hn = log_hessian(s, q.numer())?;
            let hd = log_hessian(s, q.denom())?;
            Ok(hn.iter().flatten().zip(hd.iter().flatten()).all(|(a, b)| a == b))
        }
        AnyFn::Series(q) => series_log_hessian_vanishes(s, q),
    }
}

/// `J* g_target(H(p)) J = g_source(p)` at ambient points off the surface.
pub fn pullback_matches_at(map: &HoloMap, points: &[SurfacePoint]) -> Result<bool> {
    let comps = match map.components() {
        Components::Rational(c) => c,
        Components::Series(_) => return Err(CrError::Unsupported("pointwise pullback needs a rational map".into())),
    };
    let s = map.source();
    let gs = metric_matrix(s.clone())?;
    let gt = metric_matrix(map.target().clone())?;
    let (n, m) = (s.ambient_dim(), comps.len());
    let jac: Vec<Vec<RationalFn>> =
        comps.iter().map(|f| (0..n).map(|j| f.derivative(s.space().holo(j))).collect()).collect();
    for p in points {
        let hp = map.image_of(p)?;
        let target = gt.at(&hp)?;
        let j = eval_matrix(&jac, p)?;
        let source = gs.at(p)?;
        for a in 0..n {
            for b in 0..n {
                let mut acc = GR::zero();
                for x in 0..m {
                    for y in 0..m {
                        acc = &acc + &(&(&j[x][a] * &target[x][y]) * &j[y][b].conj());
                    }
                }
                if acc != source[a][b] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Vanishing of the series Hessian of `log Q` (used for truncated maps).
pub fn series_log_hessian_vanishes(s: &Hypersurface, q: &TruncSeries) -> Result<bool> {
    let q2 = q.clone() * q.clone();
    for n in ambient_log_hessian_numerators(s, q).iter().flatten() {
        if !n.try_div(&q2)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
