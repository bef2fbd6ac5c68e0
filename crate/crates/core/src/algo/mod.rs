//! End-to-end scenarios, each wired through a codec and a [`CostLedger`].

mod grover;
mod linsim;
mod nonlinear;
mod period;
pub mod qft;

use serde::{Deserialize, Serialize};

use crate::codec::{DirectoryRecord, Label};
use crate::ledger::CostLedger;

pub use grover::{grover_iterations, grover_search, run_grover, GroverOptions, GroverOutcome};
pub use linsim::{
    classical_probabilities, expm, quantum_probabilities, run_linear_sim, run_linear_sim_with_boundary,
    HoppingHamiltonian, COMMUTE_TOL, MAX_SITES, WORTHINESS_FACTOR,
};
pub use nonlinear::{map_by_name, run_nonlinear_counterexample, shipped_maps, SHIPPED_MAP_NAMES};
pub use period::{
    brute_force_order, control_qubits, convergent_denominators, run_period_finding, work_qubits, MAX_ATTEMPTS,
};

/// What a scenario produced, beyond its costs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    Grover {
        record: Option<DirectoryRecord>,
        marked_index: usize,
        marked_probability: f64,
        iterations: u64,
    },
    Period {
        order: Option<u64>,
        expected: u64,
        attempts: u32,
        control_qubits: usize,
        work_qubits: usize,
    },
    LinearSim {
        quantum: Vec<(Label, f64)>,
        classical: Vec<f64>,
        max_discrepancy: f64,
    },
    Nonlinear {
        map: String,
        output: Label,
        standalone_output: Label,
        decode_steps: u64,
        standalone_steps: u64,
    },
    QtmCost {
        program_cost: u64,
        api_cost: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub scenario: String,
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub seed: u64,
    pub ledger: CostLedger,
    /// True iff the payload matches the scenario's classical oracle answer.
    pub correct: bool,
    pub payload: Payload,
}
