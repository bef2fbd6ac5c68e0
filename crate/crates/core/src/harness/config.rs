use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algo::MAX_SITES;
use crate::codec::LookupMode;
use crate::error::{Error, Result};
use crate::qtm::{GroverApiMode, MAX_PROGRAM_QUBITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    Grover,
    Period,
    Linsim,
    Nonlinear,
    QtmCost,
}

impl ScenarioKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioKind::Grover => "grover",
            ScenarioKind::Period => "period",
            ScenarioKind::Linsim => "linsim",
            ScenarioKind::Nonlinear => "nonlinear",
            ScenarioKind::QtmCost => "qtm-cost",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Topology {
    #[default]
    Chain,
    Ring,
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

/// One scenario kind swept over sizes and seeds. Per-kind fields are ignored
/// by the other kinds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    /// Register sizes `n` (program-register sizes `m` for `qtm-cost`).
    #[serde(default)]
    pub sizes: Vec<usize>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,

    #[serde(default)]
    pub lookup: LookupMode,
    /// Directory fixture (`state_index,phone_number,uid` lines) searched instead of synthetic data.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<String>,

    /// `(a, M)` pairs for order finding.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cases: Vec<(u64, u64)>,

    #[serde(default)]
    pub topology: Topology,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopping: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<f64>,

    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<String>,

    #[serde(default)]
    pub grover_mode: GroverApiMode,
}

impl ScenarioConfig {
    pub fn new(kind: ScenarioKind) -> Self {
        Self {
            kind,
            sizes: Vec::new(),
            seeds: default_seeds(),
            lookup: LookupMode::default(),
            fixture: None,
            query: None,
            cases: Vec::new(),
            topology: Topology::default(),
            hopping: None,
            time: None,
            maps: Vec::new(),
            grover_mode: GroverApiMode::default(),
        }
    }

    pub fn sizes(mut self, sizes: impl IntoIterator<Item = usize>) -> Self {
        self.sizes = sizes.into_iter().collect();
        self
    }

    pub fn seeds(mut self, seeds: impl IntoIterator<Item = u64>) -> Self {
        self.seeds = seeds.into_iter().collect();
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(format!("{}: {msg}", self.kind.as_str())));
        if self.seeds.is_empty() {
            return bad("no seeds".into());
        }
        let range = match self.kind {
            ScenarioKind::Grover if self.fixture.is_some() => None,
            ScenarioKind::Grover => Some(2..=12),
            ScenarioKind::Period => None,
            ScenarioKind::Linsim => Some(1..=MAX_SITES),
            ScenarioKind::Nonlinear => Some(1..=crate::qsim::MAX_QUBITS),
            ScenarioKind::QtmCost => Some(0..=MAX_PROGRAM_QUBITS as usize),
        };
        if let Some(range) = range {
            if self.sizes.is_empty() {
                return bad("no sizes".into());
            }
            if let Some(n) = self.sizes.iter().find(|n| !range.contains(n)) {
                return bad(format!("size {n} outside {range:?}"));
            }
        }
        if self.kind == ScenarioKind::Period && self.cases.is_empty() {
            return bad("no (a, M) cases".into());
        }
        if self.kind == ScenarioKind::Nonlinear {
            if self.maps.is_empty() {
                return bad("no maps".into());
            }
            if let Some(m) = self
                .maps
                .iter()
                .find(|m| !crate::algo::SHIPPED_MAP_NAMES.contains(&m.as_str()))
            {
                return bad(format!("unknown map `{m}`"));
            }
        }
        Ok(())
    }
}

/// A suite file: a list of scenario sweeps plus a suite seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    pub scenarios: Vec<ScenarioConfig>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ConfigFile {
    Suite(SuiteConfig),
    Single(ScenarioConfig),
}

pub const DEFAULT_SUITE_JSON: &str = include_str!("../../configs/default.json");

impl SuiteConfig {
    /// Parse either a suite document or a single flat scenario document.
    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: ConfigFile = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let suite = match parsed {
            ConfigFile::Suite(s) => s,
            ConfigFile::Single(s) => SuiteConfig {
                seed: 0,
                workers: None,
                scenarios: vec![s],
            },
        };
        suite.validate()?;
        Ok(suite)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    /// The shipped default suite.
    pub fn default_suite() -> Self {
        Self::from_json(DEFAULT_SUITE_JSON).expect("bundled default suite is valid")
    }

    pub fn validate(&self) -> Result<()> {
        if self.scenarios.is_empty() {
            return Err(Error::Config("suite has no scenarios".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        self.scenarios.iter().try_for_each(ScenarioConfig::validate)
    }
}
