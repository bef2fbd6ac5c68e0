//! Nonlinear final-state interpretation under a per-qubit assignment.
//!
//! When the quantity of interest is a nonlinear function `A` of the encoded
//! referent, interpreting the final state means decoding the referent and then
//! running `A` classically. The step count of that interpretation is `A`'s own
//! step count plus the `n`-step decode.

use std::collections::HashMap;

use crate::error::Result;
use crate::ledger::{CostLedger, Counter};
use crate::qsim::StateVector;

use super::{Case2Codec, InterpretedValue, Label};

/// A referent-level classical algorithm that counts its own steps.
pub trait InstrumentedMap: Send + Sync {
    fn name(&self) -> &str;

    /// Apply the map, adding one to `steps` per classical step taken.
    fn apply(&self, input: &str, steps: &mut u64) -> Label;

    /// Run standalone and return `(output, steps)`.
    fn run_standalone(&self, input: &str) -> (Label, u64) {
        let mut steps = 0;
        let out = self.apply(input, &mut steps);
        (out, steps)
    }
}

/// Decode the referent held by `state`, then apply `map` to it.
///
/// Charges `n` interpretation steps for the decode plus every step `map` counts.
pub fn nonlinear_mf(
    codec: &Case2Codec,
    state: &StateVector,
    map: &dyn InstrumentedMap,
    ledger: &mut CostLedger,
) -> Result<InterpretedValue> {
    let referent = codec.decode_referent(state, ledger)?;
    let mut steps = 0;
    let out = map.apply(&referent, &mut steps);
    ledger.charge(Counter::InterpretationSteps, steps);
    Ok(InterpretedValue::ReferentLabel(out))
}

/// `A(x) = x`, one step to read the label.
#[derive(Debug, Clone, Default)]
pub struct IdentityMap;

impl InstrumentedMap for IdentityMap {
    fn name(&self) -> &str {
        "identity"
    }

    fn apply(&self, input: &str, steps: &mut u64) -> Label {
        *steps += 1;
        input.to_owned()
    }
}

/// A chain of table lookups over a label domain; one step per lookup.
///
/// Table `k` sends `domain[i]` to `domain[(i·(k+2) + k + 1) mod d]`. Labels
/// outside a table pass through unchanged but still cost the lookup.
#[derive(Debug, Clone)]
pub struct LookupChain {
    tables: Vec<HashMap<Label, Label>>,
}

impl LookupChain {
    pub fn new<S: AsRef<str>>(domain: &[S], links: usize) -> Self {
        let d = domain.len();
        let tables = (0..links)
            .map(|k| {
                domain
                    .iter()
                    .enumerate()
                    .map(|(i, x)| {
                        let j = (i * (k + 2) + k + 1) % d.max(1);
                        (x.as_ref().to_owned(), domain[j].as_ref().to_owned())
                    })
                    .collect()
            })
            .collect();
        Self { tables }
    }

    pub fn links(&self) -> usize {
        self.tables.len()
    }
}

impl InstrumentedMap for LookupChain {
    fn name(&self) -> &str {
        "lookup-chain"
    }

    fn apply(&self, input: &str, steps: &mut u64) -> Label {
        self.tables.iter().fold(input.to_owned(), |x, table| {
            *steps += 1;
            table.get(&x).cloned().unwrap_or(x)
        })
    }
}

/// Iterates the logistic map from a seed derived from the input's position in
/// the domain, then digitizes the orbit endpoint back onto the domain.
///
/// A run with `steps` total takes `steps − 1` map iterations and one digitizing step.
#[derive(Debug, Clone)]
pub struct LogisticDigitizer {
    domain: Vec<Label>,
    steps: u64,
    rate: f64,
}

impl LogisticDigitizer {
    pub const DEFAULT_RATE: f64 = 3.9;

    pub fn new<S: AsRef<str>>(domain: &[S], steps: u64) -> Self {
        assert!(steps >= 1, "a digitizer takes at least one step");
        assert!(!domain.is_empty(), "digitizer domain is empty");
        Self {
            domain: domain.iter().map(|s| s.as_ref().to_owned()).collect(),
            steps,
            rate: Self::DEFAULT_RATE,
        }
    }
}

impl InstrumentedMap for LogisticDigitizer {
    fn name(&self) -> &str {
        "logistic"
    }

    fn apply(&self, input: &str, steps: &mut u64) -> Label {
        let d = self.domain.len();
        let pos = self.domain.iter().position(|x| x == input).unwrap_or(d);
        let mut x = (pos + 1) as f64 / (d + 2) as f64;
        for _ in 1..self.steps {
            x = self.rate * x * (1.0 - x);
            *steps += 1;
        }
        *steps += 1;
        let bucket = ((x * d as f64) as usize).min(d - 1);
        self.domain[bucket].clone()
    }
}
