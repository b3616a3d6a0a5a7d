//! Human-readable rendering of a [`RunReport`].

use std::fmt::Write;

use inflection::report::InflectionReport;

use crate::run::{Outcome, RunReport};

fn clusters(out: &mut String, report: &InflectionReport) {
    if report.clusters.is_empty() {
        out.push_str("  (no inflection points)\n");
        return;
    }
    let _ = writeln!(out, "  {:<28} {:>6} {:>6} {:>9} {:>7}", "cluster", "points", "m", "vertical", "proper");
    for c in &report.clusters {
        let (v, p) = c.breakdown.map_or(("-".into(), "-".into()), |b| (b.vertical.to_string(), b.proper.to_string()));
        let _ = writeln!(
            out,
            "  {:<28} {:>6} {:>6} {:>9} {:>7}",
            c.cluster.locus.to_string(),
            c.cluster.point_count(),
            c.cluster.multiplicity,
            v,
            p
        );
    }
    let _ = writeln!(out, "  total {}", report.total);
}

pub fn render(r: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} [{}]", r.mode.name(), r.status.exit_code());
    match &r.outcome {
        Some(Outcome::Verification { result, method }) => {
            clusters(&mut out, &result.report);
            let s = &result.rhs;
            let _ = writeln!(out, "  lhs {} ({method})", result.lhs_total);
            let _ = writeln!(out, "  rhs {} (N = {}, H = {})", s.rhs_total, s.n_count, s.h_coeff);
            let _ = writeln!(out, "  {}", if result.matched { "matched" } else { "MISMATCH" });
        }
        Some(Outcome::Inflection { report, agreement }) => {
            clusters(&mut out, report);
            if let Some(a) = agreement {
                let w = match a.wronskian_agrees {
                    Some(true) => "agrees",
                    Some(false) => "DISAGREES",
                    None => "n/a (nonlinear family)",
                };
                let _ = writeln!(out, "  wronskian: {w}; local spot checks: {}", a.spot_checks.len());
            }
        }
        Some(Outcome::Wronskian { report, expected_total, jet }) => {
            clusters(&mut out, report);
            let _ = writeln!(out, "  expected {expected_total}");
            for (k, (c, tw)) in jet.components.iter().zip(&jet.twist_degrees).enumerate() {
                let _ = writeln!(out, "  ∂^{k}: {c}    twist {tw:?}");
            }
        }
        Some(Outcome::Rhs { summary, abelian }) => {
            let _ = writeln!(out, "  N = {}", summary.n_count);
            let _ = writeln!(out, "  H = O({})", summary.h_coeff);
            let _ = writeln!(out, "  rhs = {}", summary.rhs_total);
            let _ = writeln!(out, "  abelian count (g-1)n(n+1)! = {abelian}");
        }
        Some(Outcome::Verdict { verdict, reason }) => {
            let v = serde_json::to_value(verdict).unwrap_or_default();
            let _ = write!(out, "  {}", v.as_str().unwrap_or("?"));
            if let Some(r) = reason {
                let _ = write!(out, " ({r})");
            }
            out.push('\n');
        }
        Some(Outcome::Degenerate { reason }) => {
            let _ = writeln!(out, "  DEGENERATE ({reason})");
        }
        Some(Outcome::Ramification { summary }) => {
            let _ = writeln!(out, "  genus {}, deg f = {}", summary.genus, summary.map_degree);
            let _ = writeln!(out, "  {:<28} {:>6} {:>6}", "x-locus", "points", "m");
            for c in &summary.clusters {
                let locus = c.x_locus.display_in("x");
                let _ = writeln!(out, "  {:<28} {:>6} {:>6}", locus, c.point_count(), c.multiplicity);
            }
            let _ = writeln!(out, "  total {} (expected {})", summary.total, summary.expected_total);
        }
        Some(Outcome::Functoriality { cases }) => {
            let _ = writeln!(out, "  {:>5} {:>3} {:>6} {:>7}  status", "#", "e", "base", "pulled");
            for c in cases {
                let t = |v: Option<i64>| v.map_or("-".into(), |x| x.to_string());
                let _ = writeln!(
                    out,
                    "  {:>5} {:>3} {:>6} {:>7}  {:?}",
                    c.index,
                    c.e,
                    t(c.base_total),
                    t(c.pulled_total),
                    c.status
                );
            }
        }
        Some(Outcome::Batch { checked, degenerate, cases }) => {
            let _ = writeln!(out, "  {:>5} {:>7} {:>5} {:>5}  status", "#", "(a,b)", "lhs", "rhs");
            for c in cases {
                let lhs = c.lhs.map_or("-".into(), |x| x.to_string());
                let bd = format!("({},{})", c.bidegree.0, c.bidegree.1);
                let _ = writeln!(out, "  {:>5} {:>7} {:>5} {:>5}  {:?}", c.index, bd, lhs, c.rhs, c.status);
            }
            let _ = writeln!(out, "  {checked} verified, {degenerate} degenerate");
        }
        None => {}
    }
    if let Some(m) = &r.message {
        let _ = writeln!(out, "  {m}");
    }
    if let Some(ms) = r.timing_ms {
        let _ = writeln!(out, "  {ms} ms");
    }
    out
}
