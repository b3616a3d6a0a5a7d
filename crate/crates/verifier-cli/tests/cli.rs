use std::path::{Path, PathBuf};
use std::process::Command;

use inflection_verifier::run::Outcome;
use inflection_verifier::{run, InstanceSpec, Mode, RunOptions, RunReport, Status};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_inflection-verify"))
}

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("instances").join(name)
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn exit_of(mode: &str, file: &Path) -> i32 {
    bin().arg(mode).arg(file).output().unwrap().status.code().unwrap()
}

#[test]
fn documented_examples_exit_as_stated() {
    let out = bin().arg("verify").arg(corpus("double_cover.toml")).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("lhs 2") && stdout.contains("rhs 2") && stdout.contains("matched"));
    assert_eq!(exit_of("degenerate-check", &corpus("dual_conic.toml")), 2);
    let out = bin().arg("rhs").arg(corpus("plucker_rhs.toml")).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("rhs = 6"));
}

#[test]
fn invalid_inputs_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("unknown.toml", "rhs", "[rhs]\na = 1\nb = 1\nn = 1\nd = 2\nextra = 3\n"),
        ("factor.toml", "verify", "[map]\ncoords = [\"t\", \"t^2 - t\"]\n[family]\nnamed = \"point_family\"\n"),
        ("syntax.toml", "verify", "[map]\ncoords = [\"2t\", \"1\"]\n[family]\nnamed = \"point_family\"\n"),
        (
            "both.toml",
            "verify",
            "[map]\ncoords = [\"t\", \"1\"]\n[family]\nnamed = \"point_family\"\nform = \"x0*z0 + x1*z1\"\n",
        ),
        ("flat.toml", "inflect", "[map]\ncoords = [\"t\", \"1\"]\n[family]\nform = \"z0*(x0 + x1)\"\n"),
        (
            "nonlinear.toml",
            "inflect",
            "[map]\ncoords = [\"1\", \"t\", \"t^2\"]\n[family]\nform = \"x0*z0^2 + x1*z1^2 + x2*z2^2\"\nz_arity = 3\n",
        ),
        ("genus.toml", "verify", "genus = 2\n[map]\ncoords = [\"t^2\", \"1\"]\n[family]\nnamed = \"point_family\"\n"),
        ("mode.toml", "verify", "mode = \"rhs\"\n[rhs]\na = 1\nb = 1\nn = 1\nd = 2\n"),
        ("hyper.toml", "rh-hyperelliptic", "[curve]\nh = \"x^2*(x - 1)\"\n[map]\ncoords = [\"x\", \"1\"]\n"),
    ];
    for (name, mode, text) in cases {
        let p = write(&dir, name, text);
        assert_eq!(exit_of(mode, &p), 3, "{name}");
    }
    assert_eq!(exit_of("verify", &dir.path().join("missing.toml")), 3);
}

#[test]
fn degenerate_image_exits_2() {
    assert_eq!(exit_of("degenerate-check", &corpus("line_in_member.toml")), 2);
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "inside.toml", "[map]\ncoords = [\"0\", \"t\", \"1\"]\n[family]\nform = \"z0*x1 - z1*x0\"\n");
    assert_eq!(exit_of("verify", &p), 2);
    assert_eq!(exit_of("inflect", &p), 2);
}

#[test]
fn json_is_byte_stable_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let status = bin().arg("verify").arg(corpus("batch.toml")).arg("--json").arg(out).output().unwrap().status;
        assert_eq!(status.code(), Some(0));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let parsed: RunReport = serde_json::from_slice(&ta).unwrap();
    let inst = InstanceSpec::parse(&std::fs::read_to_string(corpus("batch.toml")).unwrap()).unwrap();
    assert_eq!(parsed, run(Mode::Verify, &inst, RunOptions::default()));
    assert_eq!(serde_json::to_vec_pretty(&parsed).unwrap(), ta[..ta.len() - 1]);
}

#[test]
fn every_corpus_report_round_trips() {
    for ex in inflection_verifier::selftest::corpus() {
        let inst = InstanceSpec::parse(ex.source).unwrap();
        let report = run(inst.mode.unwrap(), &inst, RunOptions::default());
        let back: RunReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        assert_eq!(back, report, "{}", ex.name);
    }
}

#[test]
fn batch_instances_replay_in_isolation() {
    let inst = |count: u64| InstanceSpec::parse(&format!("seed = 9\n[batch]\ncount = {count}\n")).unwrap();
    let cases = |r: RunReport| match r.outcome {
        Some(Outcome::Batch { cases, .. }) => cases,
        other => panic!("{other:?}"),
    };
    let small = cases(run(Mode::Verify, &inst(4), RunOptions::default()));
    let large = cases(run(Mode::Verify, &inst(12), RunOptions::default()));
    assert_eq!(small[..], large[..4]);
    let reseeded = cases(run(Mode::Verify, &inst(4), RunOptions { seed: Some(10), timing: false }));
    assert_ne!(small, reseeded);
    assert!(large.iter().all(|c| c.status != Status::TheoremMismatch));
}

#[test]
fn seed_flag_overrides_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = |seed: &str, name: &str| {
        let p = dir.path().join(name);
        bin().arg("functoriality-test").arg(corpus("functoriality_random.toml")).args(["--seed", seed, "--json"]).arg(&p).output().unwrap();
        std::fs::read_to_string(p).unwrap()
    };
    assert_eq!(out("1", "a.json"), out("1", "b.json"));
    assert_ne!(out("1", "c.json"), out("2", "d.json"));
}

#[test]
fn selftest_passes() {
    let out = bin().args(["verify", "--selftest"]).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    assert!(!stdout.contains("FAIL"));
    assert_eq!(stdout.lines().filter(|l| l.starts_with("PASS")).count(), inflection_verifier::selftest::corpus().len());
}

#[test]
fn timing_is_opt_in() {
    let inst = InstanceSpec::parse(&std::fs::read_to_string(corpus("double_cover.toml")).unwrap()).unwrap();
    assert_eq!(run(Mode::Verify, &inst, RunOptions::default()).timing_ms, None);
    assert!(run(Mode::Verify, &inst, RunOptions { seed: None, timing: true }).timing_ms.is_some());
}

#[test]
fn exit_codes_follow_status() {
    let codes: Vec<i32> = [Status::Ok, Status::Degenerate, Status::InvalidInput, Status::TheoremMismatch, Status::InternalError]
        .iter()
        .map(|s| s.exit_code())
        .collect();
    assert_eq!(codes, vec![0, 2, 3, 4, 5]);
}
