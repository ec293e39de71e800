use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::Provenance;

pub const REPORT_SCHEMA: &str = "ecomu3.report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputHash {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageReport {
    pub name: String,
    pub provenance: Provenance,
    pub result: serde_json::Value,
    pub summary: String,
}

/// One comparison; `passed` iff `expected == actual` as rendered text.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Validation {
    pub name: String,
    pub provenance: Provenance,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub stage: String,
    pub millis: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub schema: String,
    pub command: String,
    pub arguments: Vec<(String, String)>,
    pub inputs: Vec<InputHash>,
    pub stages: Vec<StageReport>,
    pub validations: Vec<Validation>,
    pub notes: Vec<String>,
    pub passed: bool,
    pub timings: Vec<Timing>,
}

impl PipelineReport {
    pub fn new(command: &str, arguments: &[(&str, String)]) -> Self {
        PipelineReport {
            schema: REPORT_SCHEMA.to_string(),
            command: command.to_string(),
            arguments: arguments.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            inputs: Vec::new(),
            stages: Vec::new(),
            validations: Vec::new(),
            notes: Vec::new(),
            passed: true,
            timings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// The report with timings cleared, for comparing runs.
    pub fn without_timings(&self) -> Self {
        PipelineReport { timings: Vec::new(), ..self.clone() }
    }

    pub fn stage(&self, name: &str) -> Option<&StageReport> {
        self.stages.iter().find(|s| s.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Validation> {
        self.validations.iter().filter(|v| !v.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let args: Vec<String> = self.arguments.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "{} [{}] {}", self.command, self.schema, args.join(" "));
        for i in &self.inputs {
            let _ = writeln!(out, "  input {}: sha256 {}", i.name, i.sha256);
        }
        for s in &self.stages {
            let _ = writeln!(out, "[{}] {} ({})", s.provenance, s.name, self.millis(&s.name));
            for line in s.summary.lines() {
                let _ = writeln!(out, "    {line}");
            }
        }
        for v in &self.validations {
            let status = if v.passed { "PASS" } else { "FAIL" };
            if v.passed {
                let _ = writeln!(out, "{status} [{}] {}: {}", v.provenance, v.name, v.actual);
            } else {
                let _ = writeln!(out, "{status} [{}] {}: expected {}, got {}", v.provenance, v.name, v.expected, v.actual);
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = write!(out, "{}", if self.passed { "all validations passed" } else { "validation failures present" });
        out
    }

    fn millis(&self, stage: &str) -> String {
        self.timings.iter().find(|t| t.stage == stage).map_or("-".into(), |t| format!("{:.1} ms", t.millis))
    }
}
