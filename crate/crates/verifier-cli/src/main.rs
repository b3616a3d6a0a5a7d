use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use inflection_verifier::selftest::{run_corpus, SelftestEntry};
use inflection_verifier::table::render;
use inflection_verifier::{run, InstanceSpec, Mode, RunOptions, RunReport, Status};

/// Exact inflection divisors of rational curves, checked against the
/// closed-form count.
///
/// Exit codes: 0 ok, 2 degenerate, 3 invalid input, 4 theorem mismatch,
/// 5 internal error.
#[derive(Parser, Debug)]
#[command(version)]
struct Cli {
    mode: Mode,
    /// TOML instance file.
    instance: Option<PathBuf>,
    /// Write the machine-readable report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Overrides the instance seed for randomized modes.
    #[arg(long)]
    seed: Option<u64>,
    /// Run the embedded worked-example corpus (and the instance, if given).
    #[arg(long)]
    selftest: bool,
    /// Include wall-clock time in the report; the JSON is then no longer
    /// byte-stable.
    #[arg(long)]
    timing: bool,
}

#[derive(Serialize)]
struct SelftestReport<'a> {
    examples: &'a [SelftestEntry],
    #[serde(skip_serializing_if = "Option::is_none")]
    instance: Option<&'a RunReport>,
}

fn load(mode: Mode, path: &PathBuf, opts: RunOptions) -> RunReport {
    let inst = match std::fs::read_to_string(path) {
        Ok(text) => InstanceSpec::parse(&text),
        Err(e) => Err(inflection_verifier::RunError::Invalid(format!("{}: {e}", path.display()))),
    };
    match inst {
        Ok(inst) => run(mode, &inst, opts),
        Err(e) => RunReport {
            engine: inflection_verifier::run::ENGINE.into(),
            mode,
            instance: InstanceSpec::default(),
            status: e.status(),
            exit_code: e.status().exit_code(),
            outcome: None,
            message: Some(e.to_string()),
            timing_ms: None,
        },
    }
}

fn write_json(path: &PathBuf, value: &impl Serialize) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions { seed: cli.seed, timing: cli.timing };
    let report = cli.instance.as_ref().map(|p| load(cli.mode, p, opts));
    let mut status = Status::Ok;

    let examples = if cli.selftest {
        let entries = run_corpus();
        for e in &entries {
            println!("{} {} (exit {})", if e.passed { "PASS" } else { "FAIL" }, e.name, e.exit_code);
            if !e.passed {
                status = status.max(Status::TheoremMismatch);
            }
        }
        let passed = entries.iter().filter(|e| e.passed).count();
        println!("selftest: {passed}/{} examples passed", entries.len());
        Some(entries)
    } else {
        if report.is_none() {
            eprintln!("an instance file is required unless --selftest is given");
            return ExitCode::from(3);
        }
        None
    };

    if let Some(r) = &report {
        print!("{}", render(r));
        status = status.max(r.status);
    }

    if let Some(path) = &cli.json {
        let written = match &examples {
            Some(entries) => write_json(path, &SelftestReport { examples: entries, instance: report.as_ref() }),
            None => write_json(path, report.as_ref().expect("checked above")),
        };
        if let Err(e) = written {
            eprintln!("could not write JSON: {e}");
            status = status.max(Status::InternalError);
        }
    }
    ExitCode::from(status.exit_code() as u8)
}
