//! Command reports in text and machine (JSON) form.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Informational; never affects the status.
    Note,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub verdict: Verdict,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    pub fn new(id: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            detail: detail.into(),
            counterexample: None,
        }
    }

    pub fn note(id: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            verdict: Verdict::Note,
            detail: detail.into(),
            counterexample: None,
        }
    }

    pub fn with_counterexample(mut self, c: Option<String>) -> Self {
        self.counterexample = c;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub checks: Vec<Check>,
    /// The artifact a command produces (a normal form, a file), if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Wall-clock time; left out of machine output so that it is reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            status: Status::Pass,
            checks: Vec::new(),
            output: None,
            error: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn error(command: impl Into<String>, message: impl Into<String>) -> Self {
        Report {
            status: Status::Error,
            error: Some(message.into()),
            ..Report::new(command)
        }
    }

    pub fn push(&mut self, check: Check) {
        if check.verdict == Verdict::Fail && self.status == Status::Pass {
            self.status = Status::Fail;
        }
        self.checks.push(check);
    }

    pub fn exit_code(&self) -> u8 {
        self.status.exit_code()
    }

    pub fn to_machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(o) = &self.output {
            out.push_str(o);
            if !o.ends_with('\n') {
                out.push('\n');
            }
        }
        for c in &self.checks {
            let tag = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Note => "NOTE",
            };
            writeln!(out, "{tag} {}: {}", c.id, c.detail).unwrap();
            if let Some(cx) = &c.counterexample {
                for line in cx.lines() {
                    writeln!(out, "    {line}").unwrap();
                }
            }
        }
        if let Some(e) = &self.error {
            writeln!(out, "error: {e}").unwrap();
        }
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        };
        writeln!(out, "{}: {status} [{:.1?}]", self.command, self.elapsed).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_failures_only() {
        let mut r = Report::new("x");
        r.push(Check::note("n", "informational"));
        r.push(Check::new("a", true, "ok"));
        assert_eq!(r.exit_code(), 0);
        r.push(Check::new("b", false, "bad").with_counterexample(Some("here".into())));
        assert_eq!(r.exit_code(), 1);
        assert!(r.to_text().contains("FAIL b: bad\n    here"));
        let json: serde_json::Value = serde_json::from_str(&r.to_machine()).unwrap();
        assert_eq!(json["status"], "fail");
        assert!(json.get("elapsed").is_none());
        assert_eq!(Report::error("x", "oops").exit_code(), 2);
    }
}
