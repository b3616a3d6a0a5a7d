//! Instance files: TOML with a fixed schema; unknown fields are rejected.

use serde::{Deserialize, Serialize};

use inflection::curve::{HyperellipticCurve, RationalMap};
use inflection::family::{
    hyperplane_family, linear_series_family, point_family, reparametrize_z, tangent_line_family, DivisorFamily,
};
use inflection::poly::parse::parse_multi;
use inflection::poly::parse_uni;

use crate::error::RunError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Verify,
    Inflect,
    Rhs,
    Wronskian,
    DegenerateCheck,
    RhHyperelliptic,
    FunctorialityTest,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Verify => "verify",
            Mode::Inflect => "inflect",
            Mode::Rhs => "rhs",
            Mode::Wronskian => "wronskian",
            Mode::DegenerateCheck => "degenerate-check",
            Mode::RhHyperelliptic => "rh-hyperelliptic",
            Mode::FunctorialityTest => "functoriality-test",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default)]
    pub genus: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<RhsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub batch: Option<BatchSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functoriality: Option<FunctorialitySpec>,
}

/// Affine coordinates of a map, as polynomials in `t` (or `x` for the
/// hyperelliptic `φ`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub coords: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
}

/// Exactly one of `named` and `form`.
///
/// Named families: `point_family`, `hyperplane_family` (with `m`),
/// `linear_series` (with `generators`), `tangent_line_family` (of the
/// instance map, or of `of_map`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub named: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    /// Number of `z`-variables of a raw form (default 2).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_arity: Option<usize>,
    /// Number of `x`-variables of a raw form (default: from the map).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_arity: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub of_map: Option<MapSpec>,
    /// Pulls the parameter line back along this map `P¹ → P¹`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reparametrize: Option<MapSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhsSpec {
    pub a: i64,
    pub b: i64,
    pub n: i64,
    pub d: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    /// `h(x)` in `y² = h(x)`.
    pub h: String,
}

/// Random verification batch; instance `k` uses stream `k` of the seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchSpec {
    pub count: u64,
    #[serde(default = "default_targets")]
    pub targets: Vec<usize>,
    #[serde(default = "default_a")]
    pub a: Vec<u32>,
    #[serde(default = "default_b")]
    pub b: Vec<u32>,
    #[serde(default = "default_max_degree")]
    pub max_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorialitySpec {
    #[serde(default = "default_degrees")]
    pub degrees: Vec<u32>,
    /// Random instances when the file has no map and family.
    #[serde(default = "default_count")]
    pub count: u64,
}

impl Default for FunctorialitySpec {
    fn default() -> Self {
        FunctorialitySpec { degrees: default_degrees(), count: default_count() }
    }
}

fn default_targets() -> Vec<usize> {
    vec![1, 2]
}
fn default_a() -> Vec<u32> {
    vec![1, 2]
}
fn default_b() -> Vec<u32> {
    vec![1, 2, 3]
}
fn default_max_degree() -> u32 {
    5
}
fn default_degrees() -> Vec<u32> {
    vec![2, 3]
}
fn default_count() -> u64 {
    20
}

impl InstanceSpec {
    pub fn parse(text: &str) -> Result<Self, RunError> {
        toml::from_str(text).map_err(|e| RunError::Invalid(format!("instance file: {}", e.message())))
    }

    pub fn check_mode(&self, mode: Mode) -> Result<(), RunError> {
        match self.mode {
            Some(m) if m != mode => Err(RunError::Invalid(format!(
                "instance declares mode {} but was run as {}",
                m.name(),
                mode.name()
            ))),
            _ => Ok(()),
        }
    }

    pub fn map_in(&self, var: &str) -> Result<RationalMap, RunError> {
        let inst = self.map.as_ref().ok_or_else(|| RunError::Invalid("missing [map]".into()))?;
        inst.build(var)
    }

    pub fn family(&self) -> Result<DivisorFamily, RunError> {
        let inst = self.family.as_ref().ok_or_else(|| RunError::Invalid("missing [family]".into()))?;
        inst.build(self.map.as_ref())
    }

    pub fn hyperelliptic(&self) -> Result<HyperellipticCurve, RunError> {
        let inst = self.curve.as_ref().ok_or_else(|| RunError::Invalid("missing [curve]".into()))?;
        let h = parse_uni(&inst.h, "x").map_err(|e| RunError::Invalid(format!("curve.h: {e}")))?;
        HyperellipticCurve::new(h).map_err(|e| RunError::Invalid(format!("curve: {e}")))
    }
}

impl MapSpec {
    pub fn build(&self, var: &str) -> Result<RationalMap, RunError> {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| parse_uni(c, var).map_err(|e| RunError::Invalid(format!("map coordinate {i}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        RationalMap::new(coords, self.degree).map_err(|e| RunError::Invalid(format!("map: {e}")))
    }
}

impl FamilySpec {
    pub fn build(&self, map: Option<&MapSpec>) -> Result<DivisorFamily, RunError> {
        let invalid = |msg: String| RunError::Invalid(format!("family: {msg}"));
        let base = match (&self.named, &self.form) {
            (Some(_), Some(_)) => return Err(invalid("give either `named` or `form`, not both".into())),
            (None, None) => return Err(invalid("missing `named` or `form`".into())),
            (None, Some(form)) => {
                let x_arity = match (self.x_arity, map) {
                    (Some(k), _) => k,
                    (None, Some(m)) => m.coords.len(),
                    (None, None) => return Err(invalid("`x_arity` is needed without a map".into())),
                };
                DivisorFamily::parse(form, x_arity, self.z_arity.unwrap_or(2)).map_err(|e| invalid(e.to_string()))?
            }
            (Some(name), None) => match name.as_str() {
                "point_family" => point_family(),
                "hyperplane_family" => {
                    let m = self.m.ok_or_else(|| invalid("hyperplane_family needs `m`".into()))?;
                    hyperplane_family(m).map_err(|e| invalid(e.to_string()))?
                }
                "linear_series" => {
                    let gens = self.generators.as_ref().ok_or_else(|| invalid("linear_series needs `generators`".into()))?;
                    let arity = self.x_arity.or(map.map(|m| m.coords.len())).unwrap_or(2);
                    let names: Vec<String> = (0..arity).map(|i| format!("x{i}")).collect();
                    let polys = gens
                        .iter()
                        .map(|g| parse_multi(g, &names).map_err(|e| invalid(e.to_string())))
                        .collect::<Result<Vec<_>, _>>()?;
                    linear_series_family(&polys).map_err(|e| invalid(e.to_string()))?
                }
                "tangent_line_family" => {
                    let source = self.of_map.as_ref().or(map).ok_or_else(|| invalid("tangent_line_family needs a map".into()))?;
                    tangent_line_family(&source.build("t")?).map_err(|e| invalid(e.to_string()))?.0
                }
                other => return Err(invalid(format!("unknown named family `{other}`"))),
            },
        };
        match &self.reparametrize {
            None => Ok(base),
            Some(h) => reparametrize_z(&base, &h.build("t")?).map_err(|e| invalid(e.to_string())),
        }
    }
}
