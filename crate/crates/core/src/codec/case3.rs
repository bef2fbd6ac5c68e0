use std::collections::{HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ledger::{CostLedger, Counter};
use crate::qsim::{MeasurementOutcome, MAX_QUBITS};

use super::InterpretedValue;

/// Phone numbers are `ddd-ddd-dddd`.
pub const PHONE_LEN: usize = 12;

/// Four-row sample directory; the state labelled `|k⟩` is stored at basis index `k − 1`.
pub const DIRECTORY_FIXTURE: &str = include_str!("../../fixtures/directory.csv");
const DIRECTORY_CORRUPTED_FIXTURE: &str = include_str!("../../fixtures/directory_corrupted.csv");

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectoryRecord {
    pub state_index: usize,
    pub phone_number: String,
    pub uid: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LookupMode {
    /// Linear scan of the association list; a lookup costs its row position + 1.
    #[default]
    Scan,
    /// Hash indexes built up front for `N` extra definition steps; lookups cost 1.
    Indexed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct RowIndex {
    by_state: HashMap<usize, usize>,
    by_phone: HashMap<String, usize>,
}

/// Association list assigning a directory record to every global state of an
/// `n`-qubit register.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalAssignmentTable {
    n: usize,
    rows: Vec<DirectoryRecord>,
    index: Option<RowIndex>,
}

fn qubits_for(rows: usize) -> Result<usize> {
    if rows < 2 || !rows.is_power_of_two() || rows > 1 << MAX_QUBITS {
        return Err(Error::Validation(format!(
            "a table needs 2^n rows with 1 ≤ n ≤ {MAX_QUBITS}, got {rows}"
        )));
    }
    Ok(rows.trailing_zeros() as usize)
}

fn check_phone(phone: &str) -> Result<()> {
    if phone.chars().count() != PHONE_LEN {
        return Err(Error::Validation(format!(
            "phone number `{phone}` is not {PHONE_LEN} characters"
        )));
    }
    Ok(())
}

impl GlobalAssignmentTable {
    /// Assign records to global states in the order given, writing one row per
    /// record (`N` definition steps).
    pub fn define(records: Vec<(String, u64)>, ledger: &mut CostLedger) -> Result<Self> {
        let rows = records
            .into_iter()
            .enumerate()
            .map(|(state_index, (phone_number, uid))| DirectoryRecord {
                state_index,
                phone_number,
                uid,
            })
            .collect();
        Self::from_rows(rows, ledger)
    }

    /// Build from explicit rows whose state indices may appear in any order.
    /// Charges `N` definition steps.
    pub fn from_rows(rows: Vec<DirectoryRecord>, ledger: &mut CostLedger) -> Result<Self> {
        let n = qubits_for(rows.len())?;
        let mut states = vec![false; rows.len()];
        let mut phones = HashSet::with_capacity(rows.len());
        let mut uids = HashSet::with_capacity(rows.len());
        for r in &rows {
            check_phone(&r.phone_number)?;
            if r.state_index >= rows.len() || std::mem::replace(&mut states[r.state_index], true) {
                return Err(Error::Validation(format!(
                    "state indices are not a permutation of 0..{} (saw {})",
                    rows.len(),
                    r.state_index
                )));
            }
            if !phones.insert(r.phone_number.as_str()) {
                return Err(Error::Validation(format!("duplicate phone number {}", r.phone_number)));
            }
            if !uids.insert(r.uid) {
                return Err(Error::Validation(format!("duplicate uid {}", r.uid)));
            }
        }
        ledger.charge(Counter::DefinitionSteps, rows.len() as u64);
        Ok(Self { n, rows, index: None })
    }

    /// Switch to indexed lookups, paying `N` definition steps to build the index.
    pub fn with_index(mut self, ledger: &mut CostLedger) -> Self {
        let by_state = self.rows.iter().enumerate().map(|(p, r)| (r.state_index, p)).collect();
        let by_phone = self
            .rows
            .iter()
            .enumerate()
            .map(|(p, r)| (r.phone_number.clone(), p))
            .collect();
        ledger.charge(Counter::DefinitionSteps, self.rows.len() as u64);
        self.index = Some(RowIndex { by_state, by_phone });
        self
    }

    pub fn lookup_mode(&self) -> LookupMode {
        if self.index.is_some() {
            LookupMode::Indexed
        } else {
            LookupMode::Scan
        }
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[DirectoryRecord] {
        &self.rows
    }

    /// Digital interpretation: find the row for the measured global state.
    pub fn interpret(&self, outcome: &MeasurementOutcome, ledger: &mut CostLedger) -> Result<InterpretedValue> {
        let MeasurementOutcome::Digital { basis_index, .. } = outcome else {
            return Err(Error::Kind(
                "analog outcomes have no meaning under a global-state assignment".into(),
            ));
        };
        let pos = match &self.index {
            Some(idx) => {
                ledger.charge(Counter::InterpretationSteps, 1);
                idx.by_state.get(basis_index).copied()
            }
            None => scan(&self.rows, ledger, Counter::InterpretationSteps, |r| {
                r.state_index == *basis_index
            }),
        };
        pos.map(|p| InterpretedValue::Record(self.rows[p].clone()))
            .ok_or_else(|| Error::Corruption(format!("no row assigned to state {basis_index}")))
    }

    /// Resolve a query to the global state to mark, charging parameter steps.
    pub fn find_marked(&self, query: &str, ledger: &mut CostLedger) -> Result<usize> {
        let pos = match &self.index {
            Some(idx) => {
                ledger.charge(Counter::ParameterSteps, 1);
                idx.by_phone.get(query).copied()
            }
            None => scan(&self.rows, ledger, Counter::ParameterSteps, |r| r.phone_number == query),
        };
        pos.map(|p| self.rows[p].state_index)
            .ok_or_else(|| Error::NotFound(format!("phone number {query}")))
    }
}

/// Linear scan charging one step per row read; returns the matching position.
fn scan(
    rows: &[DirectoryRecord],
    ledger: &mut CostLedger,
    counter: Counter,
    mut hit: impl FnMut(&DirectoryRecord) -> bool,
) -> Option<usize> {
    for (pos, r) in rows.iter().enumerate() {
        ledger.charge(counter, 1);
        if hit(r) {
            return Some(pos);
        }
    }
    None
}

/// Parse `state_index,phone_number,uid` lines. Blank lines are skipped.
pub fn parse_fixture(text: &str) -> Result<Vec<DirectoryRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let bad = |what: &str| Error::Validation(format!("fixture line {}: {what}: `{line}`", i + 1));
            let mut parts = line.trim().split(',');
            let (Some(s), Some(p), Some(u), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
                return Err(bad("expected three fields"));
            };
            Ok(DirectoryRecord {
                state_index: s.trim().parse().map_err(|_| bad("bad state index"))?,
                phone_number: p.trim().to_owned(),
                uid: u.trim().parse().map_err(|_| bad("bad uid"))?,
            })
        })
        .collect()
}

pub fn load_fixture(path: impl AsRef<Path>) -> Result<Vec<DirectoryRecord>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_fixture(&text)
}

pub fn sample_rows() -> Vec<DirectoryRecord> {
    parse_fixture(DIRECTORY_FIXTURE).expect("bundled fixture parses")
}

/// The sample rows with uids rotated, for fault-injection checks.
pub fn corrupted_sample_rows() -> Vec<DirectoryRecord> {
    parse_fixture(DIRECTORY_CORRUPTED_FIXTURE).expect("bundled fixture parses")
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Deterministic `415-ddd-dddd` number for `(seed, row)`, distinct across rows
/// below 10^7 for a fixed seed.
pub fn synthetic_phone(seed: u64, row: u64) -> String {
    const LINES: u64 = 10_000_000;
    // odd and not a multiple of 5, hence a unit mod 10^7
    const STRIDE: u64 = 7_654_321;
    let offset = splitmix64(seed) % LINES;
    let line = (offset + (row % LINES) * STRIDE) % LINES;
    format!("415-{:03}-{:04}", line / 10_000, line % 10_000)
}

/// `2^n` synthetic `(phone_number, uid)` records for a seeded directory.
pub fn synthetic_directory(n: usize, seed: u64) -> Vec<(String, u64)> {
    (0..1u64 << n)
        .map(|row| (synthetic_phone(seed, row), row + 1))
        .collect()
}
