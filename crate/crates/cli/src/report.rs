//! Reports: ordered facts, named checks, expectations and exit codes.

use std::collections::BTreeMap;
use std::fmt::Display;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    facts: BTreeMap<String, String>,
    failed_checks: Vec<String>,
    diagnostics: Vec<String>,
    error: Option<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn error(message: impl Into<String>) -> Self {
        Report {
            error: Some(message.into()),
            ..Self::default()
        }
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl Display) {
        self.facts.insert(key.into(), value.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.facts.get(key).map(String::as_str)
    }

    pub fn facts(&self) -> impl Iterator<Item = (&str, &str)> {
        self.facts.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Records `check.<name> = ok|failed`; a failed check fails the report.
    pub fn check(&mut self, name: &str, ok: bool) {
        self.fact(format!("check.{name}"), if ok { "ok" } else { "failed" });
        if !ok {
            self.failed_checks.push(name.to_string());
        }
    }

    /// Checks that fact `key` equals `want`.
    pub fn check_fact(&mut self, key: &str, want: impl Display) {
        let want = want.to_string();
        let ok = self.get(key) == Some(want.as_str());
        if !ok {
            let got = self.get(key).unwrap_or("<missing>").to_string();
            self.note(format!("{key}: expected {want}, got {got}"));
        }
        self.check(key, ok);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.diagnostics.push(text.into());
    }

    pub fn diagnostics(&self) -> &[String] {
        &self.diagnostics
    }

    /// Applies `--expect key=value` assertions.
    pub fn expect(&mut self, expectations: &[(String, String)]) {
        if self.error.is_some() {
            return;
        }
        for (k, v) in expectations {
            match self.get(k) {
                Some(got) if got == v => {}
                Some(got) => {
                    let msg = format!("expectation {k}={v} failed: got {got}");
                    self.note(msg);
                    self.failed_checks.push(format!("expect.{k}"));
                }
                None => {
                    self.note(format!("expectation {k}={v} failed: no fact named {k}"));
                    self.failed_checks.push(format!("expect.{k}"));
                }
            }
        }
    }

    pub fn status(&self) -> Status {
        if self.error.is_some() {
            Status::Error
        } else if self.failed_checks.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn failed_checks(&self) -> &[String] {
        &self.failed_checks
    }

    /// Standard output: facts sorted by key, then the status.
    pub fn render(&self, porcelain: bool) -> String {
        let sep = if porcelain { "=" } else { " = " };
        let mut out = String::new();
        if self.error.is_none() {
            for (k, v) in &self.facts {
                out.push_str(&format!("{k}{sep}{v}\n"));
            }
        }
        out.push_str(&format!("status{sep}{}\n", self.status().as_str()));
        out
    }

    /// Standard error: the error message and any notes.
    pub fn render_diagnostics(&self) -> String {
        let mut out = String::new();
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        for d in &self.diagnostics {
            out.push_str(&format!("note: {d}\n"));
        }
        out
    }
}

/// Splits `key=value`.
pub fn parse_expectation(text: &str) -> Result<(String, String), String> {
    match text.split_once('=') {
        Some((k, v)) if !k.is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(format!("expected key=value, found `{text}`")),
    }
}
