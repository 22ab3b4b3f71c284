use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

pub use boxprod::verify::CheckRecord;

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

/// The single JSON document written per run. Everything except `timing` is a
/// function of the inputs.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
    pub timing: Timing,
}

impl RunReport {
    pub fn new(command: &'static str, inputs: Value, results: Value, checks: Vec<CheckRecord>, elapsed: Duration) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        RunReport { command, inputs, results, checks, passed, timing: Timing { elapsed_ms: elapsed.as_millis() } }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Short human-readable summary for standard error.
    pub fn summary(&self) -> String {
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let mut out = format!(
            "{}: {} ({passed}/{} checks passed, {} ms)",
            self.command,
            if self.passed { "pass" } else { "FAIL" },
            self.checks.len(),
            self.timing.elapsed_ms
        );
        for c in self.checks.iter().filter(|c| !c.passed) {
            out.push_str(&format!("\n  failed {}: {}", c.name, c.witness));
        }
        out
    }
}
