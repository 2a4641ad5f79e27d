//! Hermitian part of the CR Ahlfors tensor and geometric rank.

use std::collections::BTreeMap;
use std::sync::Arc;

use cr_algebra::gcd::gcd;
use cr_algebra::linalg::{combinations, det_symbolic, rank, submatrix, Matrix};
use cr_algebra::{Fraction, Function, GaussianRational, Monomial, Poly, RationalFn, TruncSeries, VarKind};

use crate::error::{CrError, Result};
use crate::hypersurface::{Hypersurface, SurfacePoint};
use crate::maps::{AnyFn, Components, HoloMap, QuotientResult, Side};
use crate::sampling;

/// `A_{αβ̄}` restricted to the surface parametrization.
#[derive(Clone, PartialEq, Debug)]
pub struct AhlforsTensor {
    pub source: Arc<Hypersurface>,
    pub entries: Vec<Vec<AnyFn>>,
}

impl AhlforsTensor {
    fn from_rational(source: Arc<Hypersurface>, m: Vec<Vec<RationalFn>>) -> Self {
        let entries = m.into_iter().map(|r| r.into_iter().map(AnyFn::Rational).collect()).collect();
        Self { source, entries }
    }

    fn from_series(source: Arc<Hypersurface>, m: Vec<Vec<TruncSeries>>) -> Self {
        let entries = m.into_iter().map(|r| r.into_iter().map(AnyFn::Series).collect()).collect();
        Self { source, entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, a: usize, b: usize) -> &AnyFn {
        &self.entries[a][b]
    }

    pub fn rational_entries(&self) -> Option<Vec<Vec<RationalFn>>> {
        self.entries.iter().map(|r| r.iter().map(|f| f.as_rational().cloned()).collect()).collect()
    }

    pub fn series_entries(&self) -> Option<Vec<Vec<TruncSeries>>> {
        self.entries.iter().map(|r| r.iter().map(|f| f.as_series().cloned()).collect()).collect()
    }

    /// Weighted order through which series entries are known.
    pub fn order(&self) -> Option<u32> {
        self.series_entries().and_then(|m| m.iter().flatten().map(TruncSeries::order).min())
    }

    /// Identically zero (to the truncation order in series mode).
    pub fn vanishes(&self) -> bool {
        self.entries.iter().flatten().all(AnyFn::is_zero)
    }

    pub fn is_hermitian(&self) -> bool {
        let conj = |f: &AnyFn| match f {
            AnyFn::Rational(r) => AnyFn::Rational(r.conj()),
            AnyFn::Series(s) => AnyFn::Series(s.conj()),
        };
        (0..self.dim()).all(|a| (0..self.dim()).all(|b| self.entries[a][b] == conj(&self.entries[b][a])))
    }

    pub fn eval(&self, p: &SurfacePoint) -> Result<Matrix> {
        self.entries.iter().map(|r| r.iter().map(|f| f.eval(p)).collect()).collect()
    }

    pub fn rank_at(&self, p: &SurfacePoint) -> Result<usize> {
        Ok(rank(&self.eval(p)?))
    }
}

fn levi_like<F: Function>(s: &Hypersurface, like: &F) -> Vec<Vec<F>> {
    s.levi_matrix().iter().map(|r| r.iter().map(|h| like.lift(h)).collect()).collect()
}

fn two_i() -> GaussianRational {
    GaussianRational::complex(0, 1, 2, 1)
}

/// Numerators `n_{αβ̄}` with `A(log p)_{αβ̄} = n_{αβ̄} / p²`, ambient.
fn log_hessian_numerators<F: Function>(s: &Hypersurface, p: &F) -> Vec<Vec<F>> {
    let frame = s.frame();
    let h = levi_like(s, p);
    let half = GaussianRational::ratio(1, 2);
    let za: Vec<F> = frame.iter().map(|z| z.apply(p)).collect();
    let zb: Vec<F> = frame.iter().map(|z| z.apply_conj(p)).collect();
    let xi = (p.derivative(s.w()) - p.derivative(s.wbar())).scale(&two_i());
    (0..frame.len())
        .map(|a| {
            (0..frame.len())
                .map(|b| {
                    let sym = frame[a].apply(&zb[b]) + frame[b].apply_conj(&za[a]);
                    let hx = h[a][b].clone() * xi.clone();
                    (sym + hx).scale(&half) * p.clone() - za[a].clone() * zb[b].clone()
                })
                .collect()
        })
        .collect()
}

/// `½(Z_αZ_β̄ + Z_β̄Z_α) log p + ½ h_{αβ̄}(ξ + ξ̄) log p` on the surface.
fn log_tensor<F: Function>(s: &Hypersurface, p: &F) -> Result<Vec<Vec<F>>> {
    let nums = log_hessian_numerators(s, p);
    let p_r = s.restrict(p)?;
    let p2 = p_r.clone() * p_r;
    nums.iter()
        .map(|row| row.iter().map(|n| Ok(s.restrict(n)?.try_div(&p2)?)).collect())
        .collect()
}

fn sub_matrix<F: Function>(a: Vec<Vec<F>>, b: Vec<Vec<F>>) -> Vec<Vec<F>> {
    a.into_iter().zip(b).map(|(ra, rb)| ra.into_iter().zip(rb).map(|(x, y)| x - y).collect()).collect()
}

/// The largest factor of `p` in the variables of kind `kind` alone.
fn content_of_kind(p: &Poly, kind: VarKind) -> Poly {
    let space = p.space();
    let mine: Vec<bool> = space.all().map(|v| space.kind(v) == kind).collect();
    let mut groups: BTreeMap<Vec<u16>, Vec<(Monomial, GaussianRational)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (inner, outer): (Vec<u16>, Vec<u16>) =
            m.exponents().iter().zip(&mine).map(|(&e, &k)| if k { (e, 0) } else { (0, e) }).unzip();
        groups.entry(outer).or_default().push((Monomial::from_exponents(inner), c.clone()));
    }
    let mut g: Option<Poly> = None;
    for terms in groups.into_values() {
        let q = Poly::from_terms(space, terms);
        g = Some(match g {
            None => q.monic(),
            Some(g) => gcd(&g, &q),
        });
        if g.as_ref().is_some_and(Poly::is_constant) {
            break;
        }
    }
    g.unwrap_or_else(|| Poly::one(space))
}

/// `p` with its holomorphic and antiholomorphic factors removed; those have
/// pluriharmonic `log|·|` and contribute nothing to the tensor.
pub fn strip_pluriharmonic(p: &Poly) -> Poly {
    let mut out = p.clone();
    for kind in [VarKind::Holomorphic, VarKind::Antiholomorphic] {
        let c = content_of_kind(&out, kind);
        if !c.is_constant() {
            out = out.div_exact(&c).expect("content divides");
        }
    }
    out
}

/// `A_{αβ̄}` from `u = log|Q|` along the source frame.
pub fn ahlfors_via_logq(map: &HoloMap, quotient: &QuotientResult) -> Result<AhlforsTensor> {
    if quotient.side == Side::Degenerate {
        return Err(CrError::NonTransversal);
    }
    let s = map.source();
    match &quotient.q {
        AnyFn::Rational(q) => {
            let (n, d) = (strip_pluriharmonic(q.numer()), strip_pluriharmonic(q.denom()));
            let zero = || vec![vec![RationalFn::zero(s.space()); s.cr_dim()]; s.cr_dim()];
            let tensor = |p: Poly| if p.is_constant() { Ok(zero()) } else { log_tensor(s, &RationalFn::from_poly(p)) };
            let m = sub_matrix(tensor(n)?, tensor(d)?);
            Ok(AhlforsTensor::from_rational(s.clone(), m))
        }
        AnyFn::Series(q) => Ok(AhlforsTensor::from_series(s.clone(), log_tensor(s, q)?)),
    }
}

fn explicit<F: Function>(s: &Hypersurface, eps: &[i64], comps: &[F]) -> Result<Vec<Vec<F>>> {
    let nk = comps.len() - 1;
    let (w, frame) = (s.w(), s.frame());
    let g = &comps[nk];
    let f = &comps[..nk];
    let e = |k: usize| GaussianRational::from_int(eps[k]);
    let fw: Vec<F> = f.iter().map(|x| x.derivative(w)).collect();
    let fww: Vec<F> = fw.iter().map(|x| x.derivative(w)).collect();
    let fbar: Vec<F> = f.iter().map(Function::conj).collect();
    let gw = g.derivative(w);
    let gww = gw.derivative(w);

    let mut q = gw.clone();
    let mut hcoef = gww.scale(&GaussianRational::i());
    for k in 0..nk {
        q = q - (fbar[k].clone() * fw[k].clone()).scale(&(&two_i() * &e(k)));
        hcoef = hcoef + (fbar[k].clone() * fww[k].clone()).scale(&(&e(k) * &2.into()));
    }
    let h = levi_like(s, g);
    let q_r = s.restrict(&q)?;
    if q_r.is_zero() {
        return Err(CrError::NonTransversal);
    }

    let sb: Vec<Vec<F>> = frame.iter().map(|z| fbar.iter().map(|x| z.apply_conj(x)).collect()).collect();
    let mut out = Vec::with_capacity(frame.len());
    for (a, za) in frame.iter().enumerate() {
        let za_fw: Vec<F> = fw.iter().map(|x| za.apply(x)).collect();
        let za_f: Vec<F> = f.iter().map(|x| za.apply(x)).collect();
        let mut right = g.zero_like();
        for j in 0..nk {
            right = right + (fw[j].conj() * za_f[j].clone()).scale(&e(j));
        }
        let mut row = Vec::with_capacity(frame.len());
        for b in 0..frame.len() {
            let mut t1 = g.zero_like();
            let mut left = g.zero_like();
            for k in 0..nk {
                t1 = t1 + (za_fw[k].clone() * sb[b][k].clone()).scale(&e(k));
                left = left + (fw[k].clone() * sb[b][k].clone()).scale(&e(k));
            }
            let over_q = t1.scale(&-two_i()) - hcoef.clone() * h[a][b].clone();
            let over_q2 = (left * right.clone()).scale(&GaussianRational::from_int(-4));
            let num = s.restrict(&over_q)? * q_r.clone() + s.restrict(&over_q2)?;
            row.push(num.try_div(&q_r)?.try_div(&q_r)?);
        }
        out.push(row);
    }
    Ok(out)
}

/// The closed four-term formula for maps into a hyperquadric.
pub fn ahlfors_explicit_hyperquadric(map: &HoloMap) -> Result<AhlforsTensor> {
    let t = map.target();
    if !t.is_hyperquadric() {
        return Err(CrError::Unsupported("the explicit formula needs a hyperquadric target".into()));
    }
    let s = map.source();
    match map.components() {
        Components::Rational(c) => {
            // unreduced arithmetic, one reduction per entry
            let lazy: Vec<Fraction> = c.iter().map(Fraction::from_rational).collect();
            let entries = explicit(s, t.epsilon(), &lazy)?
                .iter()
                .map(|row| row.iter().map(|f| Ok(f.to_rational()?)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(AhlforsTensor::from_rational(s.clone(), entries))
        }
        Components::Series(c) => Ok(AhlforsTensor::from_series(s.clone(), explicit(s, t.epsilon(), c)?)),
    }
}

fn at_origin<F: Function>(s: &Hypersurface, eps: &[i64], comps: &[F]) -> Result<Matrix> {
    let nk = comps.len() - 1;
    let w = s.w();
    let g = &comps[nk];
    if !g.derivative(w).at_origin()?.is_one() {
        return Err(CrError::Precondition("normalization ∂G/∂w = 1 at 0 fails".into()));
    }
    for (k, f) in comps[..nk].iter().enumerate() {
        if !f.derivative(w).at_origin()?.is_zero() {
            return Err(CrError::Precondition(format!("normalization ∂F^{}/∂w = 0 at 0 fails", k + 1)));
        }
    }
    if !g.derivative(w).derivative(w).at_origin()?.is_zero() {
        return Err(CrError::Precondition("normalization ∂²G/∂w² = 0 at 0 fails".into()));
    }
    let n = s.n();
    let space = s.space();
    let mut m = vec![vec![GaussianRational::zero(); n]; n];
    for (k, f) in comps[..nk].iter().enumerate() {
        let fwz: Vec<GaussianRational> =
            (0..n).map(|a| f.derivative(w).derivative(space.holo(a)).at_origin()).collect::<std::result::Result<_, _>>()?;
        let fz: Vec<GaussianRational> =
            (0..n).map(|b| f.derivative(space.holo(b)).at_origin()).collect::<std::result::Result<_, _>>()?;
        let c = &-two_i() * &GaussianRational::from_int(eps[k]);
        for a in 0..n {
            for b in 0..n {
                m[a][b] += &(&c * &(&fwz[a] * &fz[b].conj()));
            }
        }
    }
    Ok(m)
}

/// `-2i Σ ε_k (∂_w∂_{z_α}F^k)(conj ∂_{z_β}F^k)` at the origin for a normalized map
/// between hyperquadrics.
pub fn ahlfors_at_origin_normalized(map: &HoloMap) -> Result<Matrix> {
    let (s, t) = (map.source(), map.target());
    if !s.is_hyperquadric() || !t.is_hyperquadric() {
        return Err(CrError::Unsupported("origin formula is for maps between hyperquadrics".into()));
    }
    if *map.base() != s.origin() {
        return Err(CrError::Precondition("origin formula needs base point 0".into()));
    }
    match map.components() {
        Components::Rational(c) => at_origin(s, t.epsilon(), c),
        Components::Series(c) => at_origin(s, t.epsilon(), c),
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct RankReport {
    pub generic_rank: usize,
    pub rank_at: Vec<(SurfacePoint, usize)>,
    pub vanishes: bool,
    /// Truncation order when the tensor is a series (rank statements hold to that order).
    pub order: Option<u32>,
}

/// Largest `k` with a nonzero `k × k` minor, searching upward from a certified
/// lower bound.
fn generic_rank_from<F: Function>(m: &[Vec<F>], lower: usize) -> usize {
    let n = m.len();
    let mut r = lower;
    while r < n {
        let k = r + 1;
        let found = combinations(n, k).iter().any(|rows| {
            combinations(n, k).iter().any(|cols| !det_symbolic(&submatrix(m, rows, cols)).is_zero())
        });
        if !found {
            break;
        }
        r = k;
    }
    r
}

/// Number of random lifted points used to bound the generic rank from below.
pub const PREFILTER_POINTS: usize = 10;

pub fn rank_report(a: &AhlforsTensor, points: &[SurfacePoint]) -> Result<RankReport> {
    let rank_at = points.iter().map(|p| Ok((p.clone(), a.rank_at(p)?))).collect::<Result<Vec<_>>>()?;
    let vanishes = a.vanishes();
    let generic_rank = if vanishes {
        0
    } else if let Some(m) = a.rational_entries() {
        let lower = sampling::surface_points(&a.source, PREFILTER_POINTS, 0x5eed)
            .iter()
            .filter_map(|p| a.rank_at(p).ok())
            .max()
            .unwrap_or(0);
        generic_rank_from(&m, lower)
    } else {
        generic_rank_from(&a.series_entries().unwrap(), 0)
    };
    Ok(RankReport { generic_rank, rank_at, vanishes, order: a.order() })
}

/// Polynomial Levi form lifted for external callers.
pub fn levi_rational(s: &Hypersurface) -> Vec<Vec<RationalFn>> {
    s.levi_matrix().into_iter().map(|r| r.into_iter().map(RationalFn::from_poly).collect()).collect()
}

/// The ambient complex Hessian `∂_j∂_k̄ log p` numerators, `p²·∂∂̄ log p`.
pub fn ambient_log_hessian_numerators<F: Function>(s: &Hypersurface, p: &F) -> Vec<Vec<F>> {
    let space = s.space();
    let n = s.ambient_dim();
    (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    let (vj, vk) = (space.holo(j), space.anti(k));
                    p.derivative(vj).derivative(vk) * p.clone() - p.derivative(vj) * p.derivative(vk)
                })
                .collect()
        })
        .collect()
}
