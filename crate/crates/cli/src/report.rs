use std::fmt::Write as _;

use serde_json::{json, Value};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// Outcome of one subcommand. `text` is the human-readable body and
/// `details` the same content as exact values.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: String,
    pub status: Status,
    pub details: Value,
    pub text: String,
    pub timing_ms: u128,
}

impl RunReport {
    pub fn new(command: impl Into<String>, ok: bool, text: String, details: Value) -> Self {
        RunReport {
            command: command.into(),
            status: Status::from_bool(ok),
            details,
            text,
            timing_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "status": self.status.as_str(),
            "details": self.details,
            "timing_ms": self.timing_ms,
        })
    }

    /// Text rendering without timings.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{}: {}",
            self.command,
            self.status.as_str().to_uppercase()
        );
        out.push_str(&self.text);
        if !self.text.is_empty() && !self.text.ends_with('\n') {
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

impl Format {
    pub fn render(self, r: &RunReport) -> String {
        match self {
            Format::Text => r.to_text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&r.to_json()).expect("json");
                s.push('\n');
                s
            }
        }
    }
}
