//! Map-definition files.
//!
//! ```toml
//! mode = "rational"            # or "series", with `order`
//! components = ["z1", "w*(eps + z1) - i*z1 - 2*i*eps*z1^2", "w*(1 + eps*z1)"]
//!
//! [source]
//! kind = "hyperquadric"        # `n`, `ell`, or an explicit `signs` list
//! n = 1
//! ell = 0
//!
//! [target]
//! kind = "winkelmann"
//! n = 1
//! ell = 1
//!
//! [parameters]
//! eps = "1/2"
//! ```

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use cr_algebra::{GaussianRational as GR, RationalFn, TruncSeries};
use cr_core::{HoloMap, Hypersurface, SurfacePoint};
use serde::Deserialize;

use crate::parse::{parse_expression, parse_scalar, ParseError, Scope};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid definition file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("{what}: {source}")]
    Expression { what: String, source: ParseError },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] cr_core::CrError),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub kind: String,
    pub n: Option<usize>,
    pub ell: Option<usize>,
    pub signs: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rational,
    Series,
}

/// Expected outcomes recorded in bundled files.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    pub maps_into: Option<bool>,
    pub side: Option<String>,
    pub q: Option<String>,
    pub generic_rank: Option<usize>,
    pub vanishes: Option<bool>,
    pub isometry: Option<bool>,
}

/// A scalar written as an integer or an exact string such as `"1/2 + i"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDefinition {
    pub name: Option<String>,
    pub description: Option<String>,
    pub source: SurfaceSpec,
    pub target: SurfaceSpec,
    pub mode: Mode,
    pub order: Option<u32>,
    pub base_point: Option<Vec<ScalarText>>,
    pub components: Vec<String>,
    #[serde(default)]
    pub parameters: BTreeMap<String, ScalarText>,
    #[serde(default)]
    pub expect: Expectations,
}

/// Sample points: free coordinates (`z`, and `zeta` on Winkelmann sources) plus real `t`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsFile {
    pub point: Vec<PointSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub free: Vec<ScalarText>,
    pub t: ScalarText,
}

fn scalar(t: &ScalarText, params: &BTreeMap<String, GR>, what: &str) -> Result<GR, InputError> {
    match t {
        ScalarText::Int(k) => Ok(GR::from_int(*k)),
        ScalarText::Text(s) => {
            parse_scalar(s, params).map_err(|source| InputError::Expression { what: what.into(), source })
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })
}

impl SurfaceSpec {
    pub fn build(&self) -> Result<Hypersurface, InputError> {
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| InputError::Invalid(format!("{} surface needs `{name}`", self.kind)))
        };
        Ok(match self.kind.as_str() {
            "hyperquadric" => match &self.signs {
                Some(signs) => Hypersurface::hyperquadric_with_signs(signs.clone())?,
                None => Hypersurface::hyperquadric(need(self.n, "n")?, self.ell.unwrap_or(0))?,
            },
            "winkelmann" => Hypersurface::winkelmann(need(self.n, "n")?, need(self.ell, "ell")?)?,
            other => return Err(InputError::Invalid(format!("unknown surface kind `{other}`"))),
        })
    }
}

/// A definition resolved into exact objects.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub map: HoloMap,
    pub parameters: BTreeMap<String, GR>,
}

impl MapDefinition {
    pub fn from_toml(text: &str) -> Result<Self, InputError> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, InputError> {
        Self::from_toml(&read(path)?)
    }

    pub fn parameters(&self) -> Result<BTreeMap<String, GR>, InputError> {
        let mut out = BTreeMap::new();
        for (name, value) in &self.parameters {
            if name == "i" || name == "sqrt" {
                return Err(InputError::Invalid(format!("`{name}` cannot be a parameter")));
            }
            let v = scalar(value, &out, &format!("parameter `{name}`"))?;
            out.insert(name.clone(), v);
        }
        Ok(out)
    }

    /// Builds the map; `order` overrides the file's series order.
    pub fn resolve(&self, order: Option<u32>) -> Result<Resolved, InputError> {
        let source = Arc::new(self.source.build()?);
        let target = Arc::new(self.target.build()?);
        let parameters = self.parameters()?;
        if self.components.len() != target.ambient_dim() {
            return Err(InputError::Invalid(format!(
                "target needs {} components, got {}",
                target.ambient_dim(),
                self.components.len()
            )));
        }
        let space = source.space();
        let variables: Vec<String> = space.holomorphic().map(|v| space.name(v).to_string()).collect();
        let scope = Scope { variables: &variables, parameters: &parameters };
        let exprs = self
            .components
            .iter()
            .enumerate()
            .map(|(k, text)| {
                parse_expression(text, &scope)
                    .map_err(|source| InputError::Expression { what: format!("component {}", k + 1), source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let map = match self.mode {
            Mode::Rational => {
                if order.is_some() || self.order.is_some() {
                    return Err(InputError::Invalid("`order` only applies to series mode".into()));
                }
                let comps = exprs
                    .iter()
                    .enumerate()
                    .map(|(k, e)| {
                        e.to_rational(space)
                            .map_err(|err| InputError::Invalid(format!("component {}: {err}", k + 1)))
                    })
                    .collect::<Result<Vec<RationalFn>, _>>()?;
                HoloMap::rational(source.clone(), target, comps)?
            }
            Mode::Series => {
                let k = order
                    .or(self.order)
                    .ok_or_else(|| InputError::Invalid("series mode needs an `order`".into()))?;
                let comps = exprs
                    .iter()
                    .enumerate()
                    .map(|(j, e)| {
                        e.lift_series(space, k)
                            .map_err(|err| InputError::Invalid(format!("component {}: {err}", j + 1)))
                    })
                    .collect::<Result<Vec<TruncSeries>, _>>()?;
                HoloMap::series(source.clone(), target, comps)?
            }
        };
        let map = match &self.base_point {
            None => map,
            Some(coords) => {
                let holo = coords
                    .iter()
                    .map(|c| scalar(c, &parameters, "base point"))
                    .collect::<Result<Vec<_>, _>>()?;
                map.with_base(&holo)?
            }
        };
        Ok(Resolved { map, parameters })
    }
}

pub fn load_points(path: &Path, source: &Hypersurface) -> Result<Vec<SurfacePoint>, InputError> {
    let file: PointsFile = toml::from_str(&read(path)?)?;
    let none = BTreeMap::new();
    file.point
        .iter()
        .map(|p| {
            let free = p.free.iter().map(|c| scalar(c, &none, "point")).collect::<Result<Vec<_>, _>>()?;
            let t = scalar(&p.t, &none, "point")?;
            Ok(source.lift_point(&free, &t)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const R_HALF: &str = r#"
        mode = "rational"
        components = ["z1", "w*(eps + z1) - i*z1 - 2*i*eps*z1^2", "w*(1 + eps*z1)"]
        [source]
        kind = "hyperquadric"
        n = 1
        ell = 0
        [target]
        kind = "winkelmann"
        n = 1
        ell = 1
        [parameters]
        eps = "1/2"
    "#;

    #[test]
    fn resolves_a_rational_map() {
        let def = MapDefinition::from_toml(R_HALF).unwrap();
        let r = def.resolve(None).unwrap();
        let expected = cr_core::catalog::r_eps(&GR::ratio(1, 2)).unwrap();
        assert_eq!(r.map.components(), expected.components());
    }

    #[test]
    fn rejects_bad_inputs() {
        let bad_count = R_HALF.replace(r#", "w*(1 + eps*z1)""#, "");
        assert!(matches!(MapDefinition::from_toml(&bad_count).unwrap().resolve(None), Err(InputError::Invalid(_))));
        let unbound = R_HALF.replace(r#"eps = "1/2""#, "");
        assert!(matches!(
            MapDefinition::from_toml(&unbound).unwrap().resolve(None),
            Err(InputError::Expression { .. })
        ));
        let sqrt = R_HALF.replace(r#"["z1","#, r#"["sqrt(1+z1)","#);
        assert!(MapDefinition::from_toml(&sqrt).unwrap().resolve(None).is_err());
        let float = R_HALF.replace(r#""1/2""#, "0.5");
        assert!(MapDefinition::from_toml(&float).is_err());
    }
}
