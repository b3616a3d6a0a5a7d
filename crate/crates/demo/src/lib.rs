//! WebAssembly bindings for the browser page in `www/`.
//!
//! Every export takes plain strings or integers and returns a JSON string:
//! either the result object or `{"error": "..."}`.

use serde::Serialize;
use serde_json::json;
use thiserror::Error;
use wasm_bindgen::prelude::*;

use inflection::curve::RationalMap;
use inflection::family::{linear_series_family, tangent_line_family, DivisorFamily};
use inflection::jet::wronskian_inflection;
use inflection::poly::parse::parse_multi;
use inflection::poly::parse_uni;
use inflection::report::InflectionReport;
use inflection::rhs::{rhs_summary, RhsSummary};
use inflection::solver::{verify, VerificationResult};

#[derive(Debug, Error)]
pub enum DemoError {
    #[error("map: {0}")]
    Map(String),
    #[error("family: {0}")]
    Family(String),
    #[error("{0}")]
    Solve(String),
}

/// Splits on newlines, commas and semicolons, dropping blanks.
fn entries(text: &str) -> Vec<&str> {
    text.split(['\n', ',', ';']).map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn parse_map(coords: &str) -> Result<RationalMap, DemoError> {
    let polys = entries(coords)
        .into_iter()
        .map(|c| parse_uni(c, "t").map_err(|e| DemoError::Map(format!("`{c}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    RationalMap::new(polys, None).map_err(|e| DemoError::Map(e.to_string()))
}

/// `tangent` picks the tangent-line family of the map; anything else is a
/// form in `x0.., z0, z1`.
fn parse_family(form: &str, f: &RationalMap) -> Result<DivisorFamily, DemoError> {
    let form = form.trim();
    if form.eq_ignore_ascii_case("tangent") {
        return tangent_line_family(f).map(|(fam, _)| fam).map_err(|e| DemoError::Family(e.to_string()));
    }
    DivisorFamily::parse(form, f.target_dim() + 1, 2).map_err(|e| DemoError::Family(e.to_string()))
}

#[derive(Serialize)]
struct Inflect {
    map: Vec<String>,
    family: String,
    #[serde(flatten)]
    result: VerificationResult,
}

pub fn inflect_report(coords: &str, family: &str) -> Result<serde_json::Value, DemoError> {
    let f = parse_map(coords)?;
    let fam = parse_family(family, &f)?;
    let result = verify(&f, &fam, 0).map_err(|e| DemoError::Solve(e.to_string()))?;
    let out = Inflect { map: f.display_coords(), family: fam.to_string(), result };
    Ok(serde_json::to_value(out).expect("report serializes"))
}

#[derive(Serialize)]
struct Wronskian {
    map: Vec<String>,
    n: usize,
    report: InflectionReport,
    expected: RhsSummary,
    matched: bool,
}

pub fn wronskian_report(coords: &str, generators: &str) -> Result<serde_json::Value, DemoError> {
    let f = parse_map(coords)?;
    let names: Vec<String> = (0..=f.target_dim()).map(|i| format!("x{i}")).collect();
    let gens = entries(generators)
        .into_iter()
        .map(|g| parse_multi(g, &names).map_err(|e| DemoError::Family(format!("`{g}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let fam = linear_series_family(&gens).map_err(|e| DemoError::Family(e.to_string()))?;
    let report = wronskian_inflection(&f, &fam).map_err(|e| DemoError::Solve(e.to_string()))?;
    let (a, b) = fam.bidegree();
    let n = fam.n();
    let expected = rhs_summary(a as i64, b as i64, n as i64, f.degree() as i64, 0)
        .map_err(|e| DemoError::Solve(e.to_string()))?;
    let matched = report.degenerate.is_none() && report.total == expected.rhs_total;
    let out = Wronskian { map: f.display_coords(), n, report, expected, matched };
    Ok(serde_json::to_value(out).expect("report serializes"))
}

fn respond(result: Result<serde_json::Value, DemoError>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Inflection divisor of `t ↦ (coords)` against a family with a
/// one-dimensional parameter space.
#[wasm_bindgen]
pub fn inflect(coords: &str, family: &str) -> String {
    respond(inflect_report(coords, family))
}

/// Inflection divisor of `t ↦ (coords)` against the linear series spanned
/// by the generators, through the Wronskian.
#[wasm_bindgen]
pub fn wronskian(coords: &str, generators: &str) -> String {
    respond(wronskian_report(coords, generators))
}

/// Closed-form prediction for an `𝒪(a, b)` family on `Pᵐ × Pⁿ` and a degree
/// `d` curve of genus `g`.
#[wasm_bindgen]
pub fn rhs(a: i32, b: i32, n: i32, d: i32, g: i32) -> String {
    respond(
        rhs_summary(a.into(), b.into(), n.into(), d.into(), g.into())
            .map(|s| serde_json::to_value(s).expect("summary serializes"))
            .map_err(|e| DemoError::Solve(e.to_string())),
    )
}
