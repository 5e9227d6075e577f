//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p minterp-cli --test acceptance`.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use minterp_cli::verify::{self, BLASCHKE_INSTANCES, CRITERIA};
use minterp_cli::RunConfig;

/// Wall-clock budgets; the per-instance budget applies to criterion 1.
fn budget(id: u8) -> Option<Duration> {
    match id {
        3 => Some(Duration::from_secs(30)),
        11 => Some(Duration::from_secs(60)),
        _ => None,
    }
}

const INSTANCE_BUDGET: Duration = Duration::from_secs(1);

fn line(pass: bool, id: u8, name: &str, detail: &str) -> bool {
    println!(
        "{} {id:>2} {name}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}

fn determinism() -> (bool, String) {
    let bin = env!("CARGO_BIN_EXE_minterp");
    let dir = std::env::temp_dir();
    let run = |workers: usize| -> Result<Vec<u8>, String> {
        let out: PathBuf = dir.join(format!(
            "minterp-acceptance-{}-{workers}.json",
            std::process::id()
        ));
        let status = Command::new(bin)
            .args(["verify", "--workers", &workers.to_string(), "--out"])
            .arg(&out)
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!(
                "verify with {workers} workers exited with {status}"
            ));
        }
        let bytes = std::fs::read(&out).map_err(|e| e.to_string())?;
        let _ = std::fs::remove_file(&out);
        Ok(bytes)
    };
    match (run(1), run(8)) {
        (Ok(a), Ok(b)) if a == b => (true, format!("reports identical ({} bytes)", a.len())),
        (Ok(_), Ok(_)) => (false, "reports differ".into()),
        (Err(e), _) | (_, Err(e)) => (false, e),
    }
}

fn main() -> ExitCode {
    let cfg = RunConfig::default();
    let mut all = true;
    for &(id, name) in &CRITERIA {
        let mut slowest = Duration::ZERO;
        if id == 1 {
            for i in 0..BLASCHKE_INSTANCES {
                let t = Instant::now();
                let _ = verify::blaschke_instance(&cfg, i);
                slowest = slowest.max(t.elapsed());
            }
        }
        let t = Instant::now();
        let c = verify::run(id, &cfg);
        let elapsed = t.elapsed();
        let mut pass = c.pass;
        let mut detail = format!("{} in {elapsed:.2?}", c.detail);
        if id == 1 {
            pass &= slowest < INSTANCE_BUDGET;
            detail.push_str(&format!(", slowest instance {slowest:.2?}"));
        }
        if let Some(b) = budget(id) {
            pass &= elapsed < b;
            detail.push_str(&format!(" (budget {b:.0?})"));
        }
        all &= line(pass, id, name, &detail);
    }
    let t = Instant::now();
    let (pass, detail) = determinism();
    all &= line(
        pass,
        12,
        "reports independent of worker count",
        &format!("{detail} in {:.2?}", t.elapsed()),
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
