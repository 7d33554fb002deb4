use std::fmt::{self, Write as _};

use serde::{Serialize, Serializer};

use super::Kind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Inconclusive => "inconclusive",
            Outcome::Skipped => "skipped",
        })
    }
}

/// Digits of agreement reached: exact equality, a count, or nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Achieved {
    Exact,
    Digits(u32),
    None,
}

impl Serialize for Achieved {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Achieved::Exact => s.serialize_str("exact"),
            Achieved::Digits(d) => s.serialize_u32(*d),
            Achieved::None => s.serialize_none(),
        }
    }
}

impl fmt::Display for Achieved {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Achieved::Exact => f.write_str("exact"),
            Achieved::Digits(d) => write!(f, "{d} digits"),
            Achieved::None => f.write_str("-"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEntry {
    pub id: String,
    pub kind: Kind,
    pub verdict: Outcome,
    pub digits: Achieved,
    /// precision of the final attempt, in decimal digits
    pub precision: u32,
    pub retried: bool,
    pub wall_seconds: f64,
    /// for failures: the computed enclosures of both sides, and any error text
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub precision: u32,
    pub entries: Vec<ReportEntry>,
    pub summary: Summary,
    pub wall_seconds: f64,
}

impl VerificationReport {
    pub fn new(precision: u32, mut entries: Vec<ReportEntry>, wall_seconds: f64) -> Self {
        entries.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary::default();
        for e in &entries {
            match e.verdict {
                Outcome::Pass => summary.pass += 1,
                Outcome::Fail => summary.fail += 1,
                Outcome::Inconclusive => summary.inconclusive += 1,
                Outcome::Skipped => summary.skipped += 1,
            }
        }
        VerificationReport { precision, entries, summary, wall_seconds }
    }

    /// 0 all pass (or skipped), 1 any fail, 2 any inconclusive.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.inconclusive > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let width = self.entries.iter().map(|e| e.id.len()).max().unwrap_or(0);
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{:<12} {:<width$}  {} at {} digits{} ({:.2} s)",
                e.verdict.to_string().to_uppercase(),
                e.id,
                e.digits,
                e.precision,
                if e.retried { ", retried" } else { "" },
                e.wall_seconds,
            );
            if e.verdict != Outcome::Pass {
                for d in &e.diagnostics {
                    let _ = writeln!(out, "    {d}");
                }
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} pass, {} fail, {} inconclusive, {} skipped at {} digits in {:.1} s",
            s.pass, s.fail, s.inconclusive, s.skipped, self.precision, self.wall_seconds
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
