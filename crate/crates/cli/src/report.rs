//! Verification reports and their JSON, CSV and markdown renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Adjudicated,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Adjudicated => "adjudicated",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub value: String,
    /// Where the expected value comes from: a published table, a closed
    /// form, a second computation, an identity.
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub expected: Expected,
    pub computed: String,
    pub citation: String,
    /// Adjudications whose oracle count matches neither ν′ reading.
    #[serde(skip)]
    pub unresolved: bool,
}

impl Check {
    /// A check that passes exactly when the two renderings coincide.
    pub fn exact(
        id: impl Into<String>,
        expected: impl ToString,
        provenance: &str,
        computed: impl ToString,
        citation: &str,
    ) -> Check {
        let expected = expected.to_string();
        let computed = computed.to_string();
        Check {
            id: id.into(),
            status: if expected == computed { Status::Pass } else { Status::Fail },
            expected: Expected { value: expected, provenance: provenance.to_string() },
            computed,
            citation: citation.to_string(),
            unresolved: false,
        }
    }

    /// A check whose computation failed outright.
    pub fn error(id: impl Into<String>, expected: impl ToString, provenance: &str, err: impl ToString, citation: &str) -> Check {
        Check {
            id: id.into(),
            status: Status::Fail,
            expected: Expected { value: expected.to_string(), provenance: provenance.to_string() },
            computed: format!("error: {}", err.to_string()),
            citation: citation.to_string(),
            unresolved: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub adjudicated: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub suite: String,
    pub tool_version: String,
    pub config: Value,
    pub summary: Summary,
    pub checks: Vec<Check>,
}

impl ReportDocument {
    /// Sorts the checks by id and tallies them.
    pub fn new(suite: &str, config: Value, mut checks: Vec<Check>) -> ReportDocument {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary { total: checks.len(), ..Default::default() };
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Adjudicated => summary.adjudicated += 1,
            }
        }
        ReportDocument { suite: suite.to_string(), tool_version: env!("CARGO_PKG_VERSION").to_string(), config, summary, checks }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn has_unresolved(&self) -> bool {
        self.checks.iter().any(|c| c.unresolved)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "status", "expected", "provenance", "computed", "citation"]).expect("in-memory write");
        for c in &self.checks {
            w.write_record([
                c.id.as_str(),
                c.status.as_str(),
                &c.expected.value,
                &c.expected.provenance,
                &c.computed,
                &c.citation,
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_markdown(&self) -> String {
        let s = &self.summary;
        let mut out = format!(
            "# Verification report: {}\n\nVersion {}. {} checks: {} pass, {} fail, {} adjudicated.\n\n",
            self.suite, self.tool_version, s.total, s.pass, s.fail, s.adjudicated
        );
        out.push_str("| id | status | expected | provenance | computed | citation |\n|---|---|---|---|---|---|\n");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} |",
                md_cell(&c.id),
                c.status.as_str(),
                md_cell(&c.expected.value),
                md_cell(&c.expected.provenance),
                md_cell(&c.computed),
                md_cell(&c.citation)
            );
        }
        out
    }
}

pub fn md_cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc() -> ReportDocument {
        ReportDocument::new(
            "demo",
            serde_json::json!({"precision": 256}),
            vec![
                Check::exact("b.two", 2, "identity", 2, "x"),
                Check::exact("a.one", 1, "published table", 3, "y|z"),
            ],
        )
    }

    #[test]
    fn sorted_and_tallied() {
        let d = doc();
        assert_eq!(d.checks[0].id, "a.one");
        assert_eq!(d.summary, Summary { total: 2, pass: 1, fail: 1, adjudicated: 0 });
        assert!(d.has_failures());
        assert!(!d.has_unresolved());
    }

    #[test]
    fn renderings() {
        let d = doc();
        let json: Value = serde_json::from_str(&d.to_json()).unwrap();
        assert_eq!(json["checks"][0]["status"], "fail");
        assert_eq!(json["checks"][0]["expected"]["provenance"], "published table");
        assert!(json["checks"][0].get("unresolved").is_none());
        let keys: Vec<&str> = json.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(keys, ["suite", "tool_version", "config", "summary", "checks"]);
        let csv = d.to_csv();
        assert!(csv.starts_with("id,status,expected,provenance,computed,citation\na.one,fail,1,published table,3,y|z\n"));
        assert!(d.to_markdown().contains("| a.one | fail | 1 | published table | 3 | y\\|z |"));
    }
}
