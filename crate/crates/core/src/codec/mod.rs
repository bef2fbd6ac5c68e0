//! Data-definition regimes at the classical-quantum interface.
//!
//! Each regime pairs a stipulated input mapping (referents to register
//! states) with a final-state interpretation (measurements back to referents).
//! Every table row read or written, label compared, or label-level arithmetic
//! operation is charged to the caller's [`CostLedger`](crate::CostLedger).
//!
//! * [`Case1Codec`]: integers encoded directly in binary, register order.
//! * [`Case2Codec`]: one referent per qubit plus a referent for `|0…0⟩`.
//! * [`GlobalAssignmentTable`]: one referent per global basis state.

mod case1;
mod case2;
mod case3;
pub mod nonlinear;

use serde::{Deserialize, Serialize};

pub use case1::Case1Codec;
pub use case2::Case2Codec;
pub use case3::{
    corrupted_sample_rows, load_fixture, parse_fixture, sample_rows, synthetic_directory, synthetic_phone,
    DirectoryRecord, GlobalAssignmentTable, LookupMode, DIRECTORY_FIXTURE, PHONE_LEN,
};
pub use nonlinear::{nonlinear_mf, InstrumentedMap};

/// A referent at the user-interface level.
pub type Label = String;

/// What a final-state interpretation hands back to the user.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum InterpretedValue {
    Integer(u64),
    CoefficientList(Vec<(Label, f64)>),
    Record(DirectoryRecord),
    ReferentLabel(Label),
}
