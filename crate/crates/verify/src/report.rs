//! Check reports and page dumps, as JSON or CSV.

use crate::VerifyError;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub s: usize,
    pub t: usize,
    pub m: Option<usize>,
    #[serde(rename = "P")]
    pub p: usize,
    #[serde(rename = "Q")]
    pub q: usize,
    pub ell: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// An offending bidegree `(−s, t)` with a description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub s: usize,
    pub t: usize,
    pub detail: String,
}

impl Witness {
    pub fn new(s: usize, t: usize, detail: impl Into<String>) -> Self {
        Witness { s, t, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Params,
    pub verdict: Verdict,
    pub duration_ms: u64,
    pub witnesses: Vec<Witness>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

pub const REPORT_SCHEMA: [&str; 5] = ["check", "params", "verdict", "duration_ms", "witnesses"];

const CSV_HEADER: [&str; 12] = [
    "check", "s", "t", "m", "P", "Q", "ell", "verdict", "duration_ms", "witness_s", "witness_t", "witness_detail",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    schema: [&'static str; 5],
    reports: &'a [CheckReport],
}

fn csv_string(build: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> Result<String, VerifyError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    build(&mut w)?;
    let bytes = w.into_inner().map_err(|e| VerifyError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| VerifyError::Output(e.to_string()))
}

/// Serializes reports in the given order. An empty list still carries the
/// schema (JSON) or the header row (CSV).
pub fn render_reports(reports: &[CheckReport], format: Format) -> Result<String, VerifyError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&JsonReport { schema: REPORT_SCHEMA, reports })?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv_string(|w| {
            w.write_record(CSV_HEADER)?;
            for r in reports {
                let p = &r.params;
                let head = [
                    r.check.clone(),
                    p.s.to_string(),
                    p.t.to_string(),
                    p.m.map(|m| m.to_string()).unwrap_or_default(),
                    p.p.to_string(),
                    p.q.to_string(),
                    p.ell.to_string(),
                    match r.verdict {
                        Verdict::Pass => "pass".into(),
                        Verdict::Fail => "fail".into(),
                    },
                    r.duration_ms.to_string(),
                ];
                if r.witnesses.is_empty() {
                    w.write_record(head.iter().map(String::as_str).chain(["", "", ""]))?;
                }
                for x in &r.witnesses {
                    let tail = [x.s.to_string(), x.t.to_string(), x.detail.clone()];
                    w.write_record(head.iter().chain(tail.iter()))?;
                }
            }
            Ok(())
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowInfo {
    #[serde(rename = "P")]
    pub p: usize,
    #[serde(rename = "Q")]
    pub q: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageCell {
    pub s: usize,
    pub t: usize,
    pub dim: usize,
}

/// `E^r` on its exact bidegrees, zeros included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageDump {
    pub r: usize,
    pub window: WindowInfo,
    pub entries: Vec<PageCell>,
}

impl PageDump {
    pub fn render(&self, format: Format) -> Result<String, VerifyError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self)?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => csv_string(|w| {
                w.write_record(["r", "P", "Q", "s", "t", "dim"])?;
                for e in &self.entries {
                    w.write_record(
                        [self.r, self.window.p, self.window.q, e.s, e.t, e.dim].map(|v| v.to_string()),
                    )?;
                }
                Ok(())
            }),
        }
    }
}
