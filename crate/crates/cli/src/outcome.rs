use std::fmt;
use std::process::ExitCode;

use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// A check ran and failed, or the input does not type-check.
    Fail,
    /// The input could not be parsed or does not match the schema.
    Malformed,
    /// The input parsed but violates a categorical law.
    LawViolation,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Malformed => 2,
            Status::LawViolation => 3,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Malformed => "malformed",
            Status::LawViolation => "law-violation",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a command prints. `lines` is the human-readable result; `witnesses`
/// explain a failure (or, for a passing check, what was found).
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub lines: Vec<String>,
    pub witnesses: Vec<String>,
}

impl Outcome {
    pub fn pass(lines: Vec<String>) -> Outcome {
        Outcome {
            status: Status::Pass,
            lines,
            witnesses: Vec::new(),
        }
    }

    pub fn failed(status: Status, message: impl Into<String>) -> Outcome {
        Outcome {
            status,
            lines: Vec::new(),
            witnesses: vec![message.into()],
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.status.code())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "status": self.status.as_str(),
            "witnesses": self.witnesses,
            "output": self.lines,
        })
    }

    /// Text mode: results on stdout, failure witnesses on stderr.
    pub fn print_text(&self) {
        for l in &self.lines {
            println!("{l}");
        }
        match self.status {
            Status::Pass => {
                for w in &self.witnesses {
                    println!("  {w}");
                }
            }
            _ => {
                for w in &self.witnesses {
                    eprintln!("error: {w}");
                }
            }
        }
    }
}
