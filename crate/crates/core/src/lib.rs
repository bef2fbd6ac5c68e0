//! Instrumented hybrid quantum-classical computation.
//!
//! An exact statevector engine ([`qsim`]) is wrapped by three data-definition
//! regimes ([`codec`]) that stipulate how external referents map onto register
//! states and how measured states map back. Every classical step taken at that
//! interface is charged to a [`CostLedger`], and [`ledger::fit_growth`]
//! classifies how those costs grow with register size.
//!
//! The [`algo`] module wires the canonical scenarios end to end (Grover search
//! over a directory, order finding, linear Hamiltonian simulation, and a
//! nonlinear interpretation counterexample), [`qtm`] prices program-register
//! and named-API specification, and [`harness`] runs batches of scenarios and
//! emits CSV/JSON reports.

pub mod algo;
pub mod codec;
pub mod error;
pub mod harness;
pub mod ledger;
pub mod qsim;
pub mod qtm;

pub use error::{Error, Result};
pub use ledger::{fit_growth, CostLedger, Counter, GrowthClass, GrowthLabel};
pub use qsim::{MeasureMode, MeasurementOutcome, StateVector, Unitary, MAX_QUBITS};
