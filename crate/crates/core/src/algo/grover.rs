use crate::codec::{DirectoryRecord, GlobalAssignmentTable, InterpretedValue, LookupMode};
use crate::error::{Error, Result};
use crate::ledger::{CostLedger, Counter};
use crate::qsim::{MeasureMode, StateVector};

use super::{Payload, ScenarioResult};

pub const MIN_QUBITS: usize = 2;
pub const MAX_QUBITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GroverOptions {
    pub lookup: LookupMode,
    pub measure: Option<MeasureMode>,
}

/// `⌊π/4 · √N⌋`.
pub fn grover_iterations(n: usize) -> u64 {
    (std::f64::consts::FRAC_PI_4 * ((1u64 << n) as f64).sqrt()).floor() as u64
}

#[derive(Debug, Clone)]
pub struct GroverOutcome {
    pub record: DirectoryRecord,
    pub marked_index: usize,
    pub marked_probability: f64,
    pub iterations: u64,
    pub state: StateVector,
}

/// Mark the query via `marking`, amplify, measure, and interpret the result
/// via `interpreting`. The two tables are the stipulated input and output
/// mappings; they are the same table unless a fault is being injected.
pub fn grover_search(
    marking: &GlobalAssignmentTable,
    interpreting: &GlobalAssignmentTable,
    query: &str,
    measure: MeasureMode,
    seed: u64,
    ledger: &mut CostLedger,
) -> Result<GroverOutcome> {
    let n = marking.qubits();
    let marked = marking.find_marked(query, ledger)?;
    let mut state = StateVector::uniform(n)?;
    let iterations = grover_iterations(n);
    for _ in 0..iterations {
        state.grover_iteration(marked)?;
    }
    let outcome = state.measure_digital(measure, seed);
    let InterpretedValue::Record(record) = interpreting.interpret(&outcome, ledger)? else {
        unreachable!("global-state tables interpret to records")
    };
    ledger
        .charge(Counter::QuantumOracleQueries, state.oracle_queries())
        .charge(Counter::QuantumGateCount, state.gate_count());
    Ok(GroverOutcome {
        record,
        marked_index: marked,
        marked_probability: state.probability(marked),
        iterations,
        state,
    })
}

/// Reverse-directory search over `records` (assigned to global states in order).
///
/// Also runs the classical baseline, a direct scan of the records for the
/// query, charged to `baseline_steps`.
pub fn run_grover(
    n: usize,
    records: Vec<(String, u64)>,
    query: &str,
    seed: u64,
    options: GroverOptions,
) -> Result<ScenarioResult> {
    if !(MIN_QUBITS..=MAX_QUBITS).contains(&n) {
        return Err(Error::Size(format!(
            "Grover search needs {MIN_QUBITS}..={MAX_QUBITS} qubits, got {n}"
        )));
    }
    if records.len() != 1 << n {
        return Err(Error::Validation(format!(
            "{n} qubits need {} records, got {}",
            1u64 << n,
            records.len()
        )));
    }
    let mut ledger = CostLedger::new();

    let baseline = records.iter().position(|(p, _)| {
        ledger.charge(Counter::BaselineSteps, 1);
        p == query
    });
    if baseline.is_none() {
        return Err(Error::NotFound(format!("phone number {query}")));
    }

    let mut table = GlobalAssignmentTable::define(records, &mut ledger)?;
    if options.lookup == LookupMode::Indexed {
        table = table.with_index(&mut ledger);
    }
    let measure = options.measure.unwrap_or(MeasureMode::Argmax);
    let out = grover_search(&table, &table, query, measure, seed, &mut ledger)?;
    let correct = out.record.phone_number == query;
    Ok(ScenarioResult {
        scenario: "grover".into(),
        n,
        big_n: 1 << n,
        seed,
        ledger,
        correct,
        payload: Payload::Grover {
            record: Some(out.record),
            marked_index: out.marked_index,
            marked_probability: out.marked_probability,
            iterations: out.iterations,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{sample_rows, synthetic_directory};
    use approx::assert_abs_diff_eq;

    fn sample_records() -> Vec<(String, u64)> {
        sample_rows().into_iter().map(|r| (r.phone_number, r.uid)).collect()
    }

    #[test]
    fn iteration_counts() {
        assert_eq!(grover_iterations(2), 1);
        assert_eq!(grover_iterations(4), 3);
        assert_eq!(grover_iterations(10), 25);
    }

    #[test]
    fn sample_directory_search() {
        let r = run_grover(2, sample_records(), "415-492-0206", 0, GroverOptions::default()).unwrap();
        assert!(r.correct);
        assert_eq!(r.ledger.definition_steps(), 4);
        assert_eq!(r.ledger.parameter_steps(), 3);
        assert_eq!(r.ledger.interpretation_steps(), 3);
        assert_eq!(r.ledger.baseline_steps(), 3);
        assert_eq!(r.ledger.quantum_oracle_queries(), 1);
        let Payload::Grover {
            record,
            marked_probability,
            ..
        } = r.payload
        else {
            panic!()
        };
        assert_eq!(record.unwrap().uid, 3);
        assert_abs_diff_eq!(marked_probability, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn absent_query_is_not_found() {
        assert!(matches!(
            run_grover(2, sample_records(), "000-000-0000", 0, GroverOptions::default()),
            Err(Error::NotFound(_))
        ));
    }

    #[test]
    fn size_limits() {
        assert!(matches!(
            run_grover(1, synthetic_directory(1, 0), "x", 0, GroverOptions::default()),
            Err(Error::Size(_))
        ));
    }

    #[test]
    fn interface_cost_covers_baseline() {
        for n in 2..=10 {
            for seed in 0..5u64 {
                let recs = synthetic_directory(n, seed);
                let q = recs[(seed as usize * 7919) % recs.len()].0.clone();
                let r = run_grover(n, recs, &q, seed, GroverOptions::default()).unwrap();
                assert!(r.correct);
                assert!(r.ledger.interface_steps() >= r.ledger.baseline_steps());
                assert_eq!(r.ledger.quantum_oracle_queries(), grover_iterations(n));
            }
        }
    }

    #[test]
    fn indexed_lookup_still_pays_n() {
        let recs = synthetic_directory(6, 1);
        let q = recs[40].0.clone();
        let opts = GroverOptions {
            lookup: LookupMode::Indexed,
            measure: None,
        };
        let r = run_grover(6, recs, &q, 1, opts).unwrap();
        assert!(r.correct);
        assert_eq!(r.ledger.definition_steps(), 128);
        assert_eq!(r.ledger.parameter_steps() + r.ledger.interpretation_steps(), 2);
    }
}
