//! The worked-example corpus, embedded at build time.

use serde::{Deserialize, Serialize};

use inflection::report::DegenerateReason;
use inflection::solver::Verdict;

use crate::error::Status;
use crate::instance::InstanceSpec;
use crate::run::{run, Outcome, RunOptions, RunReport};

pub struct Example {
    pub name: &'static str,
    pub source: &'static str,
    pub check: fn(&RunReport) -> bool,
}

macro_rules! example {
    ($name:literal, $check:expr) => {
        Example { name: $name, source: include_str!(concat!("../instances/", $name, ".toml")), check: $check }
    };
}

fn text(r: &RunReport) -> String {
    match &r.outcome {
        Some(Outcome::Verification { result, .. }) => result.report.to_string(),
        Some(Outcome::Inflection { report, .. }) | Some(Outcome::Wronskian { report, .. }) => report.to_string(),
        _ => String::new(),
    }
}

fn verified(r: &RunReport, total: i64) -> bool {
    matches!(&r.outcome, Some(Outcome::Verification { result, .. })
        if result.matched && result.lhs_total == total && result.rhs.rhs_total == total)
}

fn verdict(r: &RunReport, v: Verdict) -> bool {
    matches!(&r.outcome, Some(Outcome::Verdict { verdict, .. }) if *verdict == v)
}

fn rhs(r: &RunReport, total: i64) -> bool {
    matches!(&r.outcome, Some(Outcome::Rhs { summary, .. }) if summary.rhs_total == total)
}

fn ramification(r: &RunReport, total: i64, points: usize) -> bool {
    matches!(&r.outcome, Some(Outcome::Ramification { summary })
        if summary.total == total && summary.clusters.iter().map(|c| c.point_count()).sum::<usize>() == points)
}

pub fn corpus() -> Vec<Example> {
    vec![
        example!("double_cover", |r| r.status == Status::Ok
            && verified(r, 2)
            && text(r) == "[(t, 1), (∞, 1)] total 2"),
        example!("pencil_base_point", |r| r.status == Status::Ok
            && text(r) == "[(t, 2)] total 2"
            && matches!(&r.outcome, Some(Outcome::Inflection { agreement: Some(a), .. })
                if a.wronskian_agrees == Some(true))),
        example!("pencil_verify", |r| r.status == Status::Ok && verified(r, 2)),
        example!("reparametrized", |r| r.status == Status::Ok
            && verified(r, 4)
            && text(r) == "[(t, 2), (∞, 2)] total 4"),
        example!("dual_conic", |r| r.exit_code == 2
            && verdict(r, Verdict::EverywhereInflectionary)
            && matches!(&r.outcome, Some(Outcome::Verdict { reason: Some(DegenerateReason::HorizontalExcess), .. }))),
        example!("line_in_member", |r| r.exit_code == 2 && verdict(r, Verdict::DegenerateImage)),
        example!("double_cover_check", |r| r.exit_code == 0 && verdict(r, Verdict::NondegenerateFinite)),
        example!("plucker_rhs", |r| r.exit_code == 0 && rhs(r, 6)),
        example!("nonlinear_rhs", |r| r.exit_code == 0 && rhs(r, 18)),
        example!("cuspidal_cubic", |r| r.exit_code == 0 && text(r) == "[(t, 2), (∞, 1)] total 3"),
        example!("twisted_cubic", |r| r.exit_code == 0 && text(r) == "[] total 0"),
        example!("double_cover_wronskian", |r| r.exit_code == 0 && text(r) == "[(t, 1), (∞, 1)] total 2"),
        example!("genus2_sextic", |r| r.exit_code == 0 && ramification(r, 6, 6)),
        example!("genus2_quintic", |r| r.exit_code == 0 && ramification(r, 6, 6)),
        example!("genus2_squared", |r| r.exit_code == 0 && ramification(r, 10, 10)),
        example!("functoriality", |r| r.exit_code == 0
            && matches!(&r.outcome, Some(Outcome::Functoriality { cases }) if cases.len() == 2)),
        example!("functoriality_random", |r| r.exit_code == 0
            && matches!(&r.outcome, Some(Outcome::Functoriality { cases })
                if cases.iter().filter(|c| c.status == Status::Ok).count() >= 15)),
        example!("batch", |r| r.exit_code == 0
            && matches!(&r.outcome, Some(Outcome::Batch { checked, .. }) if *checked >= 15)),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestEntry {
    pub name: String,
    pub passed: bool,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

pub fn run_corpus() -> Vec<SelftestEntry> {
    corpus()
        .into_iter()
        .map(|ex| {
            let inst = InstanceSpec::parse(ex.source).expect("corpus instances parse");
            let mode = inst.mode.expect("corpus instances declare a mode");
            let report = run(mode, &inst, RunOptions::default());
            SelftestEntry {
                name: ex.name.into(),
                passed: (ex.check)(&report),
                exit_code: report.exit_code,
                message: report.message,
            }
        })
        .collect()
}
