//! Holomorphic map germs between model hypersurfaces and the mapping equation
//! `ρ_target ∘ H = Q · ρ_source`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use cr_algebra::{Function, GaussianRational, RationalFn, TruncSeries, VarKind};

use crate::error::{CrError, Result};
use crate::hypersurface::{Hypersurface, SurfacePoint};

/// A scalar function in either map mode.
#[derive(Clone, PartialEq, Debug)]
pub enum AnyFn {
    Rational(RationalFn),
    Series(TruncSeries),
}

impl AnyFn {
    pub fn is_zero(&self) -> bool {
        match self {
            AnyFn::Rational(f) => f.is_zero(),
            AnyFn::Series(f) => f.is_zero(),
        }
    }

    pub fn as_rational(&self) -> Option<&RationalFn> {
        match self {
            AnyFn::Rational(f) => Some(f),
            AnyFn::Series(_) => None,
        }
    }

    pub fn as_series(&self) -> Option<&TruncSeries> {
        match self {
            AnyFn::Series(f) => Some(f),
            AnyFn::Rational(_) => None,
        }
    }

    /// Exact value; series can only be evaluated at the origin.
    pub fn eval(&self, p: &SurfacePoint) -> Result<GaussianRational> {
        match self {
            AnyFn::Rational(f) => Ok(f.eval(&p.coords)?),
            AnyFn::Series(f) => {
                if p.coords.iter().all(GaussianRational::is_zero) {
                    Ok(f.constant_term())
                } else {
                    Err(CrError::Precondition("series are only evaluated at the origin".into()))
                }
            }
        }
    }
}

impl fmt::Display for AnyFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyFn::Rational(r) => write!(f, "{r}"),
            AnyFn::Series(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum Components {
    Rational(Vec<RationalFn>),
    Series(Vec<TruncSeries>),
}

impl Components {
    pub fn len(&self) -> usize {
        match self {
            Components::Rational(c) => c.len(),
            Components::Series(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, k: usize) -> AnyFn {
        match self {
            Components::Rational(c) => AnyFn::Rational(c[k].clone()),
            Components::Series(c) => AnyFn::Series(c[k].clone()),
        }
    }

    pub fn order(&self) -> Option<u32> {
        match self {
            Components::Rational(_) => None,
            Components::Series(c) => c.iter().map(TruncSeries::order).min(),
        }
    }

    /// Series expansions at the origin through `order`.
    pub fn to_series(&self, order: u32) -> Result<Vec<TruncSeries>> {
        match self {
            Components::Rational(c) => {
                c.iter().map(|f| TruncSeries::from_rational(f, order).map_err(CrError::from)).collect()
            }
            Components::Series(c) => Ok(c.iter().map(|f| f.with_order(order)).collect()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Preserving,
    Reversing,
    Degenerate,
    /// `Q` vanishes at the base point but not identically.
    Deferred,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Side::Preserving => "preserving",
            Side::Reversing => "reversing",
            Side::Degenerate => "degenerate",
            Side::Deferred => "deferred",
        };
        f.write_str(s)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct QuotientResult {
    pub q: AnyFn,
    pub maps_into: bool,
    pub side: Side,
}

#[derive(Clone, PartialEq, Debug)]
pub struct HoloMap {
    source: Arc<Hypersurface>,
    target: Arc<Hypersurface>,
    components: Components,
    base: SurfacePoint,
}

fn check_holomorphic(source: &Hypersurface, uses: impl Fn(cr_algebra::Var) -> bool) -> Result<()> {
    let space = source.space();
    for v in space.all() {
        if space.kind(v) != VarKind::Holomorphic && uses(v) {
            return Err(CrError::Precondition(format!(
                "map components must be holomorphic, found `{}`",
                space.name(v)
            )));
        }
    }
    Ok(())
}

impl HoloMap {
    pub fn rational(source: Arc<Hypersurface>, target: Arc<Hypersurface>, comps: Vec<RationalFn>) -> Result<Self> {
        Self::check_count(&target, comps.len())?;
        for c in &comps {
            if !cr_algebra::vars::same_space(c.space(), source.space()) {
                return Err(CrError::Algebra(cr_algebra::AlgebraError::SpaceMismatch));
            }
            check_holomorphic(&source, |v| c.uses_var(v))?;
        }
        let base = source.origin();
        Ok(Self { source, target, components: Components::Rational(comps), base })
    }

    pub fn series(source: Arc<Hypersurface>, target: Arc<Hypersurface>, comps: Vec<TruncSeries>) -> Result<Self> {
        Self::check_count(&target, comps.len())?;
        let order = comps.iter().map(TruncSeries::order).min().unwrap_or(0);
        let mut aligned = Vec::with_capacity(comps.len());
        for c in comps {
            if !cr_algebra::vars::same_space(c.space(), source.space()) {
                return Err(CrError::Algebra(cr_algebra::AlgebraError::SpaceMismatch));
            }
            check_holomorphic(&source, |v| c.poly().uses_var(v))?;
            aligned.push(c.with_order(order));
        }
        let base = source.origin();
        Ok(Self { source, target, components: Components::Series(aligned), base })
    }

    pub fn identity(s: Arc<Hypersurface>) -> Self {
        let comps = (0..s.ambient_dim()).map(|k| RationalFn::var(s.space(), s.space().holo(k))).collect();
        Self::rational(s.clone(), s, comps).unwrap()
    }

    fn check_count(target: &Hypersurface, got: usize) -> Result<()> {
        if got != target.ambient_dim() {
            return Err(CrError::Dimension(format!(
                "target needs {} components, got {got}",
                target.ambient_dim()
            )));
        }
        Ok(())
    }

    /// Moves the base point; it must lie on the source (series maps stay at 0).
    pub fn with_base(mut self, holo: &[GaussianRational]) -> Result<Self> {
        let p = self.source.ambient_point(holo)?;
        if !self.source.contains(&p) {
            return Err(CrError::Precondition("base point is not on the source".into()));
        }
        if matches!(self.components, Components::Series(_)) && p != self.source.origin() {
            return Err(CrError::Unsupported("series maps are expanded at the origin".into()));
        }
        self.base = p;
        Ok(self)
    }

    pub fn source(&self) -> &Arc<Hypersurface> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Hypersurface> {
        &self.target
    }

    pub fn components(&self) -> &Components {
        &self.components
    }

    pub fn base(&self) -> &SurfacePoint {
        &self.base
    }

    pub fn is_series(&self) -> bool {
        matches!(self.components, Components::Series(_))
    }

    /// Target coordinates of the image of an ambient point.
    pub fn image_of(&self, p: &SurfacePoint) -> Result<SurfacePoint> {
        let holo: Vec<GaussianRational> = (0..self.components.len())
            .map(|k| self.components.get(k).eval(p))
            .collect::<Result<_>>()?;
        self.target.ambient_point(&holo)
    }

    /// Solves the mapping equation for `Q`.
    pub fn check_maps_into(&self) -> Result<QuotientResult> {
        let (q, r) = match &self.components {
            Components::Rational(c) => {
                let p = pull_back(&self.target, c)?;
                let (q, r) = p.numer().divide_linear(self.source.rho(), self.source.wbar())?;
                (AnyFn::Rational(RationalFn::new(q, p.denom().clone())?), r)
            }
            Components::Series(c) => {
                let p = pull_back(&self.target, c)?;
                let (q, r) = p.poly().divide_linear(self.source.rho(), self.source.wbar())?;
                let order = p.order().saturating_sub(2);
                (AnyFn::Series(TruncSeries::from_poly(&q, order)), r)
            }
        };
        if !self.source.restrict(&RationalFn::from_poly(r.clone()))?.is_zero() {
            return Err(CrError::NotInto(r.to_string()));
        }
        let side = if q.is_zero() {
            Side::Degenerate
        } else {
            match sign_of(&q.eval(&self.base)?)? {
                Ordering::Greater => Side::Preserving,
                Ordering::Less => Side::Reversing,
                Ordering::Equal => Side::Deferred,
            }
        };
        Ok(QuotientResult { q, maps_into: true, side })
    }

    /// `Q(p) ≠ 0` for a point `p` of the source.
    pub fn transversal_at(&self, quotient: &QuotientResult, p: &SurfacePoint) -> Result<bool> {
        if !self.source.contains(p) {
            return Err(CrError::Precondition("point is not on the source".into()));
        }
        Ok(!quotient.q.eval(p)?.is_zero())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &HoloMap) -> Result<HoloMap> {
        if *inner.target != *self.source {
            return Err(CrError::Dimension("inner target differs from outer source".into()));
        }
        let s = inner.source.clone();
        match (&self.components, &inner.components) {
            (Components::Rational(outer), Components::Rational(h)) => {
                let bindings = holomorphic_bindings(h);
                let comps = outer.iter().map(|c| c.compose(&bindings)).collect::<std::result::Result<_, _>>()?;
                let map = HoloMap::rational(s, self.target.clone(), comps)?;
                Ok(HoloMap { base: inner.base.clone(), ..map })
            }
            _ => {
                if inner.base != inner.source.origin() || self.base != self.source.origin() {
                    return Err(CrError::Precondition("series composition needs origin base points".into()));
                }
                let order = [self.components.order(), inner.components.order()].into_iter().flatten().min().unwrap();
                let h = inner.components.to_series(order)?;
                if h.iter().any(|c| !c.constant_term().is_zero()) {
                    return Err(CrError::Precondition("inner map must send the origin to the origin".into()));
                }
                let outer = self.components.to_series(order)?;
                let bindings = holomorphic_bindings(&h);
                let comps = outer.iter().map(|c| c.compose(&bindings)).collect::<std::result::Result<_, _>>()?;
                HoloMap::series(s, self.target.clone(), comps)
            }
        }
    }
}

/// Bindings for a target space: components, their conjugates, and 0 for `t`.
pub fn holomorphic_bindings<F: Function>(comps: &[F]) -> Vec<F> {
    let zero = comps[0].zero_like();
    let mut out: Vec<F> = comps.to_vec();
    out.extend(comps.iter().map(Function::conj));
    out.push(zero);
    out
}

/// `ρ_target ∘ H` as a function on the source ambient space.
pub fn pull_back<F: Function>(target: &Hypersurface, comps: &[F]) -> Result<F> {
    Ok(F::compose_poly(target.rho(), &holomorphic_bindings(comps))?)
}

fn sign_of(q: &GaussianRational) -> Result<Ordering> {
    q.real_sign().ok_or_else(|| CrError::Precondition(format!("quotient is not real at the base point: {q}")))
}
