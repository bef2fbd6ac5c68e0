use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algo::ScenarioResult;
use crate::error::{Error, Result};
use crate::ledger::{fit_growth, Counter, GrowthClass, MIN_GROWTH_POINTS};

pub const CSV_HEADER: &str = "scenario,n,N,definition_steps,parameter_steps,interpretation_steps,baseline_steps,quantum_oracle_queries,quantum_gate_count,correct";

/// Pseudo-counter name for definition + parameter + interpretation steps.
pub const INTERFACE_STEPS: &str = "interface_steps";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub scenario: String,
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub definition_steps: u64,
    pub parameter_steps: u64,
    pub interpretation_steps: u64,
    pub baseline_steps: u64,
    pub quantum_oracle_queries: u64,
    pub quantum_gate_count: u64,
    pub correct: bool,
    /// Scenario error captured for this row; not part of the emitted formats.
    #[serde(skip)]
    pub error: Option<String>,
}

impl ReportRow {
    pub fn from_result(r: &ScenarioResult) -> Self {
        let l = &r.ledger;
        Self {
            scenario: r.scenario.clone(),
            n: r.n,
            big_n: r.big_n,
            definition_steps: l.definition_steps(),
            parameter_steps: l.parameter_steps(),
            interpretation_steps: l.interpretation_steps(),
            baseline_steps: l.baseline_steps(),
            quantum_oracle_queries: l.quantum_oracle_queries(),
            quantum_gate_count: l.quantum_gate_count(),
            correct: r.correct,
            error: None,
        }
    }

    pub fn failed(scenario: &str, n: usize, error: &Error) -> Self {
        Self {
            scenario: scenario.to_owned(),
            n,
            big_n: 1u64.checked_shl(n as u32).unwrap_or(0),
            definition_steps: 0,
            parameter_steps: 0,
            interpretation_steps: 0,
            baseline_steps: 0,
            quantum_oracle_queries: 0,
            quantum_gate_count: 0,
            correct: false,
            error: Some(error.to_string()),
        }
    }

    pub fn counter(&self, name: &str) -> Option<u64> {
        Some(match name {
            INTERFACE_STEPS => self.interface_steps(),
            "definition_steps" => self.definition_steps,
            "parameter_steps" => self.parameter_steps,
            "interpretation_steps" => self.interpretation_steps,
            "baseline_steps" => self.baseline_steps,
            "quantum_oracle_queries" => self.quantum_oracle_queries,
            "quantum_gate_count" => self.quantum_gate_count,
            _ => return None,
        })
    }

    pub fn interface_steps(&self) -> u64 {
        self.definition_steps + self.parameter_steps + self.interpretation_steps
    }
}

/// Growth classification of one counter for one scenario kind, fitted to the
/// per-`N` mean over successful rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthEntry {
    pub scenario: String,
    pub counter: String,
    pub points: Vec<(u64, f64)>,
    pub class: Option<GrowthClass>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub growth: Vec<GrowthEntry>,
}

impl Report {
    pub fn from_rows(rows: Vec<ReportRow>) -> Self {
        let growth = summarize_growth(&rows);
        Self { rows, growth }
    }

    pub fn all_correct(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(|r| r.correct && r.error.is_none())
    }

    pub fn growth_for(&self, scenario: &str, counter: &str) -> Option<&GrowthEntry> {
        self.growth
            .iter()
            .find(|g| g.scenario == scenario && g.counter == counter)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.scenario,
                r.n,
                r.big_n,
                r.definition_steps,
                r.parameter_steps,
                r.interpretation_steps,
                r.baseline_steps,
                r.quantum_oracle_queries,
                r.quantum_gate_count,
                r.correct
            )
            .unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.rows).expect("rows serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Csv => self.to_csv(),
            ReportFormat::Json => self.to_json(),
        }
    }
}

fn summarize_growth(rows: &[ReportRow]) -> Vec<GrowthEntry> {
    let mut by_kind: BTreeMap<&str, Vec<&ReportRow>> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.error.is_none()) {
        by_kind.entry(&r.scenario).or_default().push(r);
    }
    let counters = std::iter::once(INTERFACE_STEPS).chain(Counter::ALL.iter().map(|c| c.name()));
    let counters: Vec<&str> = counters.collect();

    let mut out = Vec::new();
    for (kind, kind_rows) in by_kind {
        for &counter in &counters {
            let mut sums: BTreeMap<u64, (f64, usize)> = BTreeMap::new();
            for r in &kind_rows {
                let e = sums.entry(r.big_n).or_default();
                e.0 += r.counter(counter).unwrap() as f64;
                e.1 += 1;
            }
            let points: Vec<(u64, f64)> = sums.into_iter().map(|(n, (s, c))| (n, s / c as f64)).collect();
            let (class, note) = if points.len() < MIN_GROWTH_POINTS {
                (None, Some(format!("{} sizes, need {MIN_GROWTH_POINTS}", points.len())))
            } else {
                match fit_growth(&points) {
                    Ok(c) => (Some(c), None),
                    Err(e) => (None, Some(e.to_string())),
                }
            };
            out.push(GrowthEntry {
                scenario: kind.to_owned(),
                counter: counter.to_owned(),
                points,
                class,
                note,
            });
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::Argument(format!("unknown report format `{other}`"))),
        }
    }
}

/// Write the report to `path` via a temporary file in the same directory and
/// an atomic rename.
pub fn emit_report(report: &Report, format: ReportFormat, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if report.rows.is_empty() {
        return Err(Error::Precondition("report has no rows".into()));
    }
    let body = report.render(format);
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(path, e))?;
    tmp.write_all(body.as_bytes()).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}
