//! Executes one instance in one mode.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use inflection::curve::{hyperelliptic_ramification, pullback_section, RamificationSummary, RationalMap};
use inflection::family::{reparametrize_z, DivisorFamily};
use inflection::jet::{jet_section, wronskian_inflection, JetSummary};
use inflection::report::{Chart, DegenerateReason, InflectionReport};
use inflection::rhs::{abelian_rhs, rhs_summary, RhsSummary};
use inflection::sample::{instance_rng, random_family, random_map};
use inflection::solver::{
    cross_oracle_check, degeneracy_check, inflection_divisor_n1, verify, AgreementReport, VerificationResult,
    Verdict,
};

use crate::error::{RunError, Status};
use crate::instance::{BatchSpec, FunctorialitySpec, InstanceSpec, Mode};

pub const ENGINE: &str = concat!("inflection ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub engine: String,
    pub mode: Mode,
    pub instance: InstanceSpec,
    pub status: Status,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcome: Option<Outcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Verification {
        result: VerificationResult,
        /// `wronskian` when the left side came from the Wronskian of a
        /// linear series with `n ≥ 2`.
        method: String,
    },
    Inflection {
        report: InflectionReport,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        agreement: Option<AgreementReport>,
    },
    Wronskian {
        report: InflectionReport,
        expected_total: i64,
        jet: JetSummary,
    },
    Rhs {
        summary: RhsSummary,
        abelian: i64,
    },
    Verdict {
        verdict: Verdict,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reason: Option<DegenerateReason>,
    },
    Degenerate {
        reason: DegenerateReason,
    },
    Ramification {
        summary: RamificationSummary,
    },
    Functoriality {
        cases: Vec<FunctorialityCase>,
    },
    Batch {
        checked: usize,
        degenerate: usize,
        cases: Vec<BatchCase>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorialityCase {
    pub index: u64,
    pub e: u32,
    pub map: Vec<String>,
    pub family: String,
    pub h: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_total: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pulled_total: Option<i64>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchCase {
    pub index: u64,
    pub bidegree: (u32, u32),
    pub map: Vec<String>,
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<i64>,
    pub rhs: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub status: Status,
}

/// Runs the instance, turning every failure (including panics) into a
/// status and exit code.
pub fn run(mode: Mode, inst: &InstanceSpec, opts: RunOptions) -> RunReport {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| {
        inst.check_mode(mode)?;
        execute(mode, inst, opts)
    }))
    .unwrap_or_else(|panic| {
        let msg = panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(RunError::Internal(msg))
    });
    let (status, outcome, message) = match result {
        Ok((status, outcome, message)) => (status, Some(outcome), message),
        Err(RunError::Degenerate(reason)) => {
            (Status::Degenerate, Some(Outcome::Degenerate { reason }), Some(format!("DEGENERATE: {reason}")))
        }
        Err(e) => (e.status(), None, Some(e.to_string())),
    };
    RunReport {
        engine: ENGINE.into(),
        mode,
        instance: inst.clone(),
        status,
        exit_code: status.exit_code(),
        outcome,
        message,
        timing_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    }
}

type Executed = (Status, Outcome, Option<String>);

fn ok(outcome: Outcome) -> Result<Executed, RunError> {
    Ok((Status::Ok, outcome, None))
}

fn seed(inst: &InstanceSpec, opts: RunOptions) -> u64 {
    opts.seed.or(inst.seed).unwrap_or(0)
}

fn execute(mode: Mode, inst: &InstanceSpec, opts: RunOptions) -> Result<Executed, RunError> {
    match mode {
        Mode::Rhs => run_rhs(inst),
        Mode::RhHyperelliptic => run_hyperelliptic(inst),
        Mode::Verify if inst.batch.is_some() => run_batch(inst, inst.batch.as_ref().unwrap(), seed(inst, opts)),
        Mode::FunctorialityTest => run_functoriality(inst, seed(inst, opts)),
        Mode::Verify => run_verify(inst),
        Mode::Inflect => run_inflect(inst),
        Mode::Wronskian => run_wronskian(inst),
        Mode::DegenerateCheck => run_degeneracy(inst),
    }
}

fn genus_zero(inst: &InstanceSpec) -> Result<(), RunError> {
    if inst.genus != 0 {
        return Err(RunError::Invalid(format!(
            "maps from P¹ need genus 0 (got {}); use rh-hyperelliptic or rhs for positive genus",
            inst.genus
        )));
    }
    Ok(())
}

fn run_rhs(inst: &InstanceSpec) -> Result<Executed, RunError> {
    let r = inst.rhs.ok_or_else(|| RunError::Invalid("missing [rhs]".into()))?;
    let g = r.g.unwrap_or(inst.genus as i64);
    let summary = rhs_summary(r.a, r.b, r.n, r.d, g)?;
    ok(Outcome::Rhs { summary, abelian: abelian_rhs(r.n, g)? })
}

fn run_hyperelliptic(inst: &InstanceSpec) -> Result<Executed, RunError> {
    let curve = inst.hyperelliptic()?;
    let phi = inst.map_in("x")?;
    let summary = hyperelliptic_ramification(&curve, &phi).map_err(|e| RunError::Invalid(e.to_string()))?;
    if summary.total != summary.expected_total {
        let msg = format!("ramification total {} but 2·deg(f) + 2g − 2 = {}", summary.total, summary.expected_total);
        return Ok((Status::TheoremMismatch, Outcome::Ramification { summary }, Some(msg)));
    }
    ok(Outcome::Ramification { summary })
}

fn run_verify(inst: &InstanceSpec) -> Result<Executed, RunError> {
    genus_zero(inst)?;
    let f = inst.map_in("t")?;
    let fam = inst.family()?;
    let (result, method) = if fam.n() == 1 {
        (verify(&f, &fam, 0)?, "localized")
    } else {
        let report = wronskian_inflection(&f, &fam)?;
        let (a, b) = fam.bidegree();
        let rhs = rhs_summary(a as i64, b as i64, fam.n() as i64, f.degree() as i64, 0)?;
        let result = VerificationResult { lhs_total: report.total, matched: report.total == rhs.rhs_total, rhs, report };
        (result, "wronskian")
    };
    let outcome = Outcome::Verification { method: method.into(), result: result.clone() };
    if result.matched {
        ok(outcome)
    } else {
        let msg = format!("lhs {} != rhs {}", result.lhs_total, result.rhs.rhs_total);
        Ok((Status::TheoremMismatch, outcome, Some(msg)))
    }
}

fn run_inflect(inst: &InstanceSpec) -> Result<Executed, RunError> {
    genus_zero(inst)?;
    let f = inst.map_in("t")?;
    let fam = inst.family()?;
    if fam.n() == 1 {
        let report = inflection_divisor_n1(&f, &fam)?;
        let agreement = cross_oracle_check(&f, &fam)?;
        ok(Outcome::Inflection { report, agreement: Some(agreement) })
    } else {
        ok(Outcome::Inflection { report: wronskian_inflection(&f, &fam)?, agreement: None })
    }
}

fn run_wronskian(inst: &InstanceSpec) -> Result<Executed, RunError> {
    genus_zero(inst)?;
    let f = inst.map_in("t")?;
    let fam = inst.family()?;
    let report = wronskian_inflection(&f, &fam)?;
    let s = pullback_section(&f, &fam).map_err(|e| RunError::Invalid(e.to_string()))?;
    let jet = JetSummary::from(&jet_section(&s, fam.n(), Chart::Affine)?);
    let (a, b) = fam.bidegree();
    let expected_total = rhs_summary(a as i64, b as i64, fam.n() as i64, f.degree() as i64, 0)?.rhs_total;
    let matched = report.total == expected_total;
    let outcome = Outcome::Wronskian { report: report.clone(), expected_total, jet };
    if matched {
        ok(outcome)
    } else {
        Ok((Status::TheoremMismatch, outcome, Some(format!("Wronskian total {} != {expected_total}", report.total))))
    }
}

fn run_degeneracy(inst: &InstanceSpec) -> Result<Executed, RunError> {
    let f = inst.map_in("t")?;
    let fam = inst.family()?;
    let verdict = degeneracy_check(&f, &fam)?;
    let reason = match inflection_divisor_n1(&f, &fam) {
        Err(inflection::solver::SolveError::Degenerate(r)) => Some(r),
        _ => None,
    };
    let status = if verdict == Verdict::NondegenerateFinite { Status::Ok } else { Status::Degenerate };
    Ok((status, Outcome::Verdict { verdict, reason }, None))
}

fn multiplied(base: &InflectionReport, pulled: &InflectionReport, e: u32) -> bool {
    let (want, got) = (base.divisor(), pulled.divisor());
    got.at_infinity == e * want.at_infinity
        && got.finite.len() == want.finite.len()
        && want.finite.iter().all(|(m, q)| got.finite.get(&(m * e)) == Some(q))
        && pulled.total == e as i64 * base.total
}

fn functoriality_case(index: u64, e: u32, f: &RationalMap, fam: &DivisorFamily, h: &RationalMap) -> FunctorialityCase {
    let mut case = FunctorialityCase {
        index,
        e,
        map: f.display_coords(),
        family: fam.to_string(),
        h: h.display_coords(),
        base_total: None,
        pulled_total: None,
        status: Status::Ok,
    };
    let pulled_fam = match reparametrize_z(fam, h) {
        Ok(p) => p,
        Err(_) => {
            case.status = Status::InvalidInput;
            return case;
        }
    };
    match (inflection_divisor_n1(f, fam), inflection_divisor_n1(f, &pulled_fam)) {
        (Ok(base), Ok(pulled)) => {
            case.base_total = Some(base.total);
            case.pulled_total = Some(pulled.total);
            if !multiplied(&base, &pulled, e) {
                case.status = Status::TheoremMismatch;
            }
        }
        (Err(a), Err(b)) if RunError::from(a.clone()).status() == Status::Degenerate => {
            case.status = if RunError::from(b).status() == Status::Degenerate {
                Status::Degenerate
            } else {
                Status::TheoremMismatch
            };
        }
        (Err(e), _) => case.status = RunError::from(e).status(),
        (Ok(_), Err(_)) => case.status = Status::TheoremMismatch,
    }
    case
}

fn run_functoriality(inst: &InstanceSpec, seed: u64) -> Result<Executed, RunError> {
    genus_zero(inst)?;
    let fs = inst.functoriality.clone().unwrap_or_default();
    if fs.degrees.contains(&0) {
        return Err(RunError::Invalid("functoriality degrees must be at least 1".into()));
    }
    let cases: Vec<FunctorialityCase> = if inst.map.is_some() || inst.family.is_some() {
        let f = inst.map_in("t")?;
        let fam = inst.family()?;
        if fam.n() != 1 {
            return Err(RunError::Invalid("functoriality needs a one-parameter family".into()));
        }
        fs.degrees
            .par_iter()
            .enumerate()
            .map(|(k, &e)| {
                let h = random_map(&mut instance_rng(seed, k as u64), 1, e);
                functoriality_case(k as u64, e, &f, &fam, &h)
            })
            .collect()
    } else {
        random_functoriality(&fs, seed)
    };
    let status = cases.iter().map(|c| c.status).filter(|s| *s != Status::Degenerate).max().unwrap_or(Status::Ok);
    let message = (status != Status::Ok).then(|| "some reparametrization did not scale multiplicities".to_string());
    Ok((status, Outcome::Functoriality { cases }, message))
}

fn random_functoriality(fs: &FunctorialitySpec, seed: u64) -> Vec<FunctorialityCase> {
    (0..fs.count)
        .into_par_iter()
        .map(|k| {
            let mut rng = instance_rng(seed, k);
            let e = fs.degrees[k as usize % fs.degrees.len()];
            let m = rng.gen_range(1..=2);
            let (a, b, d) = (rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(1..=4));
            let fam = random_family(&mut rng, m, 2, a, b);
            let f = random_map(&mut rng, m, d);
            let h = random_map(&mut rng, 1, e);
            functoriality_case(k, e, &f, &fam, &h)
        })
        .collect()
}

fn run_batch(inst: &InstanceSpec, batch: &BatchSpec, seed: u64) -> Result<Executed, RunError> {
    genus_zero(inst)?;
    let bad = |v: &[u32]| v.is_empty() || v.contains(&0);
    if bad(&batch.a) || bad(&batch.b) || batch.targets.is_empty() || batch.targets.contains(&0) || batch.max_degree == 0 {
        return Err(RunError::Invalid("batch ranges must be nonempty and positive".into()));
    }
    let cases: Vec<BatchCase> = (0..batch.count)
        .into_par_iter()
        .map(|k| {
            let mut rng = instance_rng(seed, k);
            let m = batch.targets[rng.gen_range(0..batch.targets.len())];
            let a = batch.a[rng.gen_range(0..batch.a.len())];
            let b = batch.b[rng.gen_range(0..batch.b.len())];
            let d = rng.gen_range(1..=batch.max_degree);
            let fam = random_family(&mut rng, m, 2, a, b);
            let f = random_map(&mut rng, m, d);
            let rhs = 2 * (a * b * d) as i64 - 2 * b as i64;
            let mut case = BatchCase {
                index: k,
                bidegree: (a, b),
                map: f.display_coords(),
                family: fam.to_string(),
                lhs: None,
                rhs,
                verdict: None,
                status: Status::Ok,
            };
            match verify(&f, &fam, 0) {
                Ok(v) => {
                    case.lhs = Some(v.lhs_total);
                    if !v.matched {
                        case.status = Status::TheoremMismatch;
                    }
                }
                Err(err) => {
                    case.status = RunError::from(err).status();
                    case.verdict = degeneracy_check(&f, &fam).ok();
                }
            }
            case
        })
        .collect();
    let checked = cases.iter().filter(|c| c.lhs.is_some()).count();
    let degenerate = cases.iter().filter(|c| c.status == Status::Degenerate).count();
    let status = cases.iter().map(|c| c.status).filter(|s| *s != Status::Degenerate).max().unwrap_or(Status::Ok);
    let message = (status != Status::Ok).then(|| "batch contains failing instances".to_string());
    Ok((status, Outcome::Batch { checked, degenerate, cases }, message))
}
