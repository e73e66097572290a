//! Uniform result reporting. Every subcommand produces a `Report`; the
//! human rendering and the `--json` rendering are two views of the same
//! struct, so the verdict can never differ between them.

use mahavier_core::rat::format_rat;
use mahavier_core::Rat;
use serde_json::{json, Value};

/// Exit status conventions: 0 for affirmative verdicts, 1 for negative
/// ones (not idempotent, disconnected, strict subset, ...), 2 for usage
/// and validation problems.
pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone)]
pub struct Report {
    command: String,
    verdict: String,
    exit_code: i32,
    details: Vec<(String, String)>,
    witnesses: Vec<(String, Vec<String>)>,
    timing_ms: u128,
}

impl Report {
    pub fn new(command: impl Into<String>, verdict: impl Into<String>, exit_code: i32) -> Report {
        Report {
            command: command.into(),
            verdict: verdict.into(),
            exit_code,
            details: Vec::new(),
            witnesses: Vec::new(),
            timing_ms: 0,
        }
    }

    pub fn boolean(command: impl Into<String>, value: bool) -> Report {
        Report::new(
            command,
            if value { "true" } else { "false" },
            if value { EXIT_TRUE } else { EXIT_FALSE },
        )
    }

    pub fn detail(mut self, key: impl Into<String>, value: impl ToString) -> Report {
        self.details.push((key.into(), value.to_string()));
        self
    }

    pub fn witness(mut self, label: impl Into<String>, point: &[Rat]) -> Report {
        self.witnesses
            .push((label.into(), point.iter().map(format_rat).collect()));
        self
    }

    pub fn timed(mut self, ms: u128) -> Report {
        self.timing_ms = ms;
        self
    }

    /// Replaces the verdict after details accumulate, for commands whose
    /// outcome is decided by a late comparison rather than construction.
    pub fn verdict_override(mut self, verdict: impl Into<String>, exit_code: i32) -> Report {
        self.verdict = verdict.into();
        self.exit_code = exit_code;
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.exit_code
    }

    pub fn verdict(&self) -> &str {
        &self.verdict
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (key, value) in &self.details {
            out.push_str(&format!("{key}: {value}\n"));
        }
        for (label, point) in &self.witnesses {
            out.push_str(&format!("witness {label}: ({})\n", point.join(", ")));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out.push_str(&format!("timing: {} ms\n", self.timing_ms));
        out
    }

    pub fn render_json(&self) -> String {
        let details: Value = self
            .details
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect::<serde_json::Map<String, Value>>()
            .into();
        let witnesses: Vec<Value> = self
            .witnesses
            .iter()
            .map(|(label, point)| json!({ "label": label, "point": point }))
            .collect();
        let doc = json!({
            "command": self.command,
            "verdict": self.verdict,
            "exit_code": self.exit_code,
            "details": details,
            "witnesses": witnesses,
            "timing_ms": self.timing_ms,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
        text.push('\n');
        text
    }
}
