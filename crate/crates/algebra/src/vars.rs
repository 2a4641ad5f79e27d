//! Variable spaces closed under the conjugation involution.
//!
//! Holomorphic variables come first, then their antiholomorphic partners in the
//! same order, then real (self-conjugate) variables such as the surface
//! coordinate `t`.

use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(pub usize);

impl Var {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum VarKind {
    Holomorphic,
    Antiholomorphic,
    Real,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct VarInfo {
    name: String,
    kind: VarKind,
    partner: usize,
    weight: u32,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VariableSpace {
    vars: Vec<VarInfo>,
    n_holo: usize,
}

/// Suffix marking the antiholomorphic partner of a holomorphic name (`z1` ↔ `z1b`).
pub const CONJ_SUFFIX: &str = "b";

impl VariableSpace {
    /// Builds a space from `(name, weight)` pairs for the holomorphic variables and
    /// the real variables. Partners get the same weight.
    pub fn new(holomorphic: &[(&str, u32)], real: &[(&str, u32)]) -> Arc<Self> {
        let n = holomorphic.len();
        let mut vars = Vec::with_capacity(2 * n + real.len());
        for (k, (name, w)) in holomorphic.iter().enumerate() {
            vars.push(VarInfo { name: name.to_string(), kind: VarKind::Holomorphic, partner: n + k, weight: *w });
        }
        for (k, (name, w)) in holomorphic.iter().enumerate() {
            vars.push(VarInfo {
                name: format!("{name}{CONJ_SUFFIX}"),
                kind: VarKind::Antiholomorphic,
                partner: k,
                weight: *w,
            });
        }
        for (name, w) in real {
            let idx = vars.len();
            vars.push(VarInfo { name: name.to_string(), kind: VarKind::Real, partner: idx, weight: *w });
        }
        Arc::new(Self { vars, n_holo: n })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn n_holomorphic(&self) -> usize {
        self.n_holo
    }

    pub fn holomorphic(&self) -> impl Iterator<Item = Var> {
        (0..self.n_holo).map(Var)
    }

    pub fn real_vars(&self) -> impl Iterator<Item = Var> + '_ {
        (2 * self.n_holo..self.vars.len()).map(Var)
    }

    pub fn all(&self) -> impl Iterator<Item = Var> {
        (0..self.vars.len()).map(Var)
    }

    pub fn name(&self, v: Var) -> &str {
        &self.vars[v.0].name
    }

    pub fn kind(&self, v: Var) -> VarKind {
        self.vars[v.0].kind
    }

    pub fn partner(&self, v: Var) -> Var {
        Var(self.vars[v.0].partner)
    }

    pub fn weight(&self, v: Var) -> u32 {
        self.vars[v.0].weight
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        self.vars.iter().position(|v| v.name == name).map(Var)
    }

    pub fn var(&self, name: &str) -> Result<Var, AlgebraError> {
        self.lookup(name).ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    /// The `k`-th holomorphic variable.
    pub fn holo(&self, k: usize) -> Var {
        assert!(k < self.n_holo, "holomorphic index out of range");
        Var(k)
    }

    /// The antiholomorphic partner of the `k`-th holomorphic variable.
    pub fn anti(&self, k: usize) -> Var {
        self.partner(self.holo(k))
    }
}

impl fmt::Display for VariableSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.vars.iter().map(|v| v.name.as_str()).collect();
        write!(f, "[{}]", names.join(", "))
    }
}

/// Pointer-or-structural equality for shared spaces.
pub fn same_space(a: &Arc<VariableSpace>, b: &Arc<VariableSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_is_an_involution() {
        let s = VariableSpace::new(&[("z1", 1), ("zeta", 2), ("w", 2)], &[("t", 2)]);
        for v in s.all() {
            assert_eq!(s.partner(s.partner(v)), v);
            assert_eq!(s.weight(s.partner(v)), s.weight(v));
        }
        assert_eq!(s.name(s.anti(1)), "zetab");
        assert_eq!(s.kind(s.var("t").unwrap()), VarKind::Real);
        assert_eq!(s.partner(s.var("t").unwrap()), s.var("t").unwrap());
    }
}
