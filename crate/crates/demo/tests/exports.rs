use inflection_demo::{inflect, rhs, wronskian};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).expect("exports return JSON")
}

#[test]
fn cube_against_points_ramifies_twice() {
    let v = parse(inflect("t^3, 1", "x0*z1 - x1*z0"));
    assert_eq!(v["matched"], true, "{v}");
    assert_eq!(v["lhs_total"], 4);
    assert_eq!(v["report"]["clusters"].as_array().unwrap().len(), 2);
}

#[test]
fn nonlinear_family_matches_closed_form() {
    let v = parse(inflect("1\nt\nt^2 + 3", "x0*z0^2 + x1*z1^2 + x2*z0*z1"));
    assert!(v.get("error").is_none(), "{v}");
    assert_eq!(v["matched"], true, "{v}");
}

#[test]
fn conic_against_its_tangents_is_an_error() {
    let v = parse(inflect("1, t, t^2", "tangent"));
    assert!(v["error"].is_string(), "{v}");
}

#[test]
fn cuspidal_cubic_wronskian() {
    let v = parse(wronskian("1; t^2; t^3", "x0, x1, x2"));
    assert_eq!(v["n"], 2);
    assert_eq!(v["report"]["total"], 3);
    assert_eq!(v["expected"]["rhs_total"], 3);
    assert_eq!(v["matched"], true);
}

#[test]
fn twisted_cubic_has_no_flexes() {
    let v = parse(wronskian("1, t, t^2, t^3", "x0, x1, x2, x3"));
    assert_eq!(v["report"]["total"], 0);
    assert_eq!(v["matched"], true);
}

#[test]
fn rhs_plane_quartic() {
    let v = parse(rhs(1, 1, 2, 4, 0));
    assert_eq!(v["rhs_total"], 6);
    assert_eq!(v["h_coeff"], 3);
}

#[test]
fn bad_input_reports_an_error() {
    assert!(parse(inflect("t^^2, 1", "x0*z1 - x1*z0"))["error"].is_string());
    assert!(parse(inflect("t, 1", "x0*w"))["error"].is_string());
    assert!(parse(rhs(0, 1, 1, 1, 0))["error"].is_string());
    assert!(parse(wronskian("t, 1", "x0, 2*x0"))["error"].is_string());
}
