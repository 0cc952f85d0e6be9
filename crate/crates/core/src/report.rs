//! Run reports and their two renderings.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Computation finished and the asserted property holds.
    Holds,
    /// Computation finished and the asserted property fails.
    Fails,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Holds => 0,
            Outcome::Fails => 1,
            Outcome::Error => 2,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
            Outcome::Error => "error",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    /// One `key=value` fact per line.
    Records,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "human" => Ok(Format::Human),
            "records" => Ok(Format::Records),
            other => Err(format!(
                "unknown format {other:?} (expected human or records)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub outcome: Outcome,
    /// Ordered facts; keys are dotted identifiers.
    pub details: Vec<(String, String)>,
    /// Free-form lines for the human rendering.
    pub body: Vec<String>,
    /// Wall time. Not part of either rendering, which keeps output byte-stable.
    pub elapsed: Duration,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            outcome: Outcome::Holds,
            details: Vec::new(),
            body: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn detail(&mut self, key: impl Into<String>, value: impl ToString) {
        self.details.push((key.into(), value.to_string()));
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.body.push(line.into());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.details
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Human => {
                for l in &self.body {
                    out.push_str(l);
                    out.push('\n');
                }
                out.push_str(&format!("{}: {}\n", self.command, self.outcome));
            }
            Format::Records => {
                out.push_str(&format!("command={}\n", self.command));
                out.push_str(&format!("outcome={}\n", self.outcome));
                for (k, v) in &self.details {
                    out.push_str(&format!("{k}={v}\n"));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renderings() {
        let mut r = RunReport::new("classify");
        r.detail("dim", 3);
        r.line("dim(A) = 3");
        r.elapsed = Duration::from_millis(12);
        assert_eq!(
            r.render(Format::Records),
            "command=classify\noutcome=holds\ndim=3\n"
        );
        assert_eq!(r.render(Format::Human), "dim(A) = 3\nclassify: holds\n");
        assert_eq!(r.get("dim"), Some("3"));
        assert_eq!("records".parse::<Format>(), Ok(Format::Records));
        assert!("json".parse::<Format>().is_err());
        assert_eq!(Outcome::Fails.exit_code(), 1);
    }
}
