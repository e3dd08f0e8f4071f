//! Suite reports: an ordered list of checks with exact expected/got
//! renderings, serialized to JSON. Reports carry no timestamps, so two runs
//! of the same build produce byte-identical output.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::linalg::CheckRow;
use crate::ENGINE_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub engine_version: String,
    pub config_hash: String,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl SuiteReport {
    /// `config` is the canonical text of everything that parameterizes the
    /// run (options plus exported system definitions); its SHA-256 becomes
    /// the report's config hash.
    pub fn new(suite: &str, config: &str) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(config.as_bytes());
        let config_hash = format!("{:x}", hasher.finalize());
        SuiteReport {
            suite: suite.to_string(),
            engine_version: ENGINE_VERSION.to_string(),
            config_hash,
            checks: Vec::new(),
            summary: Summary {
                pass: 0,
                fail: 0,
                skipped: 0,
            },
        }
    }

    /// Appends a check with the next zero-padded id, so sorting by id
    /// preserves insertion order.
    pub fn push(&mut self, anchor: &str, status: Status, expected: &str, got: &str) {
        let id = format!("{:04}", self.checks.len());
        self.checks.push(Check {
            id,
            anchor: anchor.to_string(),
            status,
            expected: expected.to_string(),
            got: got.to_string(),
        });
        match status {
            Status::Pass => self.summary.pass += 1,
            Status::Fail => self.summary.fail += 1,
            Status::Skipped => self.summary.skipped += 1,
        }
    }

    pub fn push_bool(&mut self, anchor: &str, ok: bool, expected: &str, got: &str) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(anchor, status, expected, got);
    }

    pub fn push_row(&mut self, row: &CheckRow) {
        self.push_bool(&row.label, row.ok, &row.expected, &row.got);
    }

    pub fn push_rows(&mut self, rows: &[CheckRow]) {
        for row in rows {
            self.push_row(row);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        let mut sorted = self.clone();
        sorted.checks.sort_by(|a, b| a.id.cmp(&b.id));
        let mut out = serde_json::to_string_pretty(&sorted).expect("report serializes");
        out.push('\n');
        out
    }

    /// One line per check plus a summary, for terminal output.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            out.push_str(&format!("[{mark}] {} {}\n", c.id, c.anchor));
            if c.status == Status::Fail {
                out.push_str(&format!("       expected: {}\n", c.expected));
                out.push_str(&format!("       got:      {}\n", c.got));
            }
        }
        out.push_str(&format!(
            "{}: {} pass, {} fail, {} skipped\n",
            self.suite, self.summary.pass, self.summary.fail, self.summary.skipped
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_summary() {
        let mut r = SuiteReport::new("demo", "config text");
        r.push_bool("a = a", true, "a", "a");
        r.push_bool("b = c", false, "b", "c");
        r.push("later", Status::Skipped, "", "");
        assert!(!r.all_pass());
        assert_eq!(r.summary.pass, 1);
        assert_eq!(r.summary.fail, 1);
        assert_eq!(r.summary.skipped, 1);
        let parsed: SuiteReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(parsed.checks.len(), 3);
        assert_eq!(parsed.config_hash.len(), 64);
        assert_eq!(r.to_json(), r.to_json());
    }
}
