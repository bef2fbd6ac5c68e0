use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::ledger::{CostLedger, Counter};
use crate::qsim::{MeasurementOutcome, StateVector, MAX_QUBITS};

use super::{InterpretedValue, Label};

/// Marginals at or below this are read as "qubit not excited" when decoding a referent.
const EXCITATION_FLOOR: f64 = 1e-12;

/// Arbitrary assignment of `n` referents to the `n` individual qubits, plus a
/// referent for the all-zeros state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case2Codec {
    entries: Vec<(usize, Label)>,
    null_referent: Label,
}

impl Case2Codec {
    /// Writes one table entry per referent; charges `n` definition steps.
    pub fn define<S: AsRef<str>>(referents: &[S], null_label: &str, ledger: &mut CostLedger) -> Result<Self> {
        let n = referents.len();
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::Size(format!("need 1..={MAX_QUBITS} referents, got {n}")));
        }
        let mut seen = HashSet::with_capacity(n + 1);
        seen.insert(null_label);
        for r in referents {
            if !seen.insert(r.as_ref()) {
                return Err(Error::Validation(format!("duplicate referent label `{}`", r.as_ref())));
            }
        }
        let entries = referents
            .iter()
            .enumerate()
            .map(|(q, r)| (q, r.as_ref().to_owned()))
            .collect();
        ledger.charge(Counter::DefinitionSteps, n as u64);
        Ok(Self {
            entries,
            null_referent: null_label.to_owned(),
        })
    }

    pub fn qubits(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, Label)] {
        &self.entries
    }

    pub fn null_referent(&self) -> &str {
        &self.null_referent
    }

    /// Labels in qubit order.
    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(_, l)| l.as_str())
    }

    /// Qubit carrying `label`, or `None` for the null referent. Uncharged.
    pub fn qubit_of(&self, label: &str) -> Result<Option<usize>> {
        if label == self.null_referent {
            return Ok(None);
        }
        self.entries
            .iter()
            .find(|(_, l)| l == label)
            .map(|(q, _)| Some(*q))
            .ok_or_else(|| Error::NotFound(format!("referent `{label}`")))
    }

    /// Analog interpretation: each qubit marginal becomes the squared
    /// coefficient of its referent. One table lookup per qubit.
    pub fn interpret(&self, outcome: &MeasurementOutcome, ledger: &mut CostLedger) -> Result<InterpretedValue> {
        let MeasurementOutcome::Analog { qubit_marginals } = outcome else {
            return Err(Error::Kind("per-qubit interpretation needs an analog outcome".into()));
        };
        if qubit_marginals.len() != self.entries.len() {
            return Err(Error::Shape {
                expected: self.entries.len(),
                got: qubit_marginals.len(),
            });
        }
        let coefficients = self
            .entries
            .iter()
            .map(|(q, label)| (label.clone(), qubit_marginals[*q]))
            .collect();
        ledger.charge(Counter::InterpretationSteps, self.entries.len() as u64);
        Ok(InterpretedValue::CoefficientList(coefficients))
    }

    /// Digitize a register state to the referent of its most excited qubit,
    /// or the null referent when no qubit is excited. Charges `n`
    /// interpretation steps, one per table entry inspected.
    pub fn decode_referent(&self, state: &StateVector, ledger: &mut CostLedger) -> Result<Label> {
        if state.qubits() != self.entries.len() {
            return Err(Error::Shape {
                expected: self.entries.len(),
                got: state.qubits(),
            });
        }
        let MeasurementOutcome::Analog { qubit_marginals } = state.measure_qubit_marginals() else {
            unreachable!("marginals are analog")
        };
        let mut best: Option<(&str, f64)> = None;
        for (q, label) in &self.entries {
            ledger.charge(Counter::InterpretationSteps, 1);
            let p = qubit_marginals[*q];
            if p > EXCITATION_FLOOR && best.is_none_or(|(_, bp)| p > bp) {
                best = Some((label, p));
            }
        }
        Ok(best.map_or_else(|| self.null_referent.clone(), |(l, _)| l.to_owned()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn define_charges_one_step_per_entry() {
        let mut l = CostLedger::new();
        let c = Case2Codec::define(&["x1", "x2"], "zero", &mut l).unwrap();
        assert_eq!(c.qubits(), 2);
        assert_eq!(l.definition_steps(), 2);

        let labels: Vec<String> = (0..8).map(|i| format!("x{i}")).collect();
        Case2Codec::define(&labels, "zero", &mut l).unwrap();
        assert_eq!(l.definition_steps(), 10);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let mut l = CostLedger::new();
        assert!(matches!(
            Case2Codec::define(&["a", "a"], "zero", &mut l),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            Case2Codec::define(&["a", "zero"], "zero", &mut l),
            Err(Error::Validation(_))
        ));
        assert_eq!(l.definition_steps(), 0);
    }

    #[test]
    fn interpret_examples() {
        let mut l = CostLedger::new();
        let c = Case2Codec::define(&["a", "b"], "zero", &mut l).unwrap();
        let out = MeasurementOutcome::Analog {
            qubit_marginals: vec![0.25, 0.75],
        };
        assert_eq!(
            c.interpret(&out, &mut l).unwrap(),
            InterpretedValue::CoefficientList(vec![("a".into(), 0.25), ("b".into(), 0.75)])
        );
        assert_eq!(l.interpretation_steps(), 2);

        let c1 = Case2Codec::define(&["only"], "zero", &mut l).unwrap();
        let out = MeasurementOutcome::Analog {
            qubit_marginals: vec![1.0],
        };
        assert_eq!(
            c1.interpret(&out, &mut l).unwrap(),
            InterpretedValue::CoefficientList(vec![("only".into(), 1.0)])
        );

        let bad = MeasurementOutcome::Analog {
            qubit_marginals: vec![0.1, 0.2, 0.7],
        };
        assert!(matches!(
            c.interpret(&bad, &mut l),
            Err(Error::Shape { expected: 2, got: 3 })
        ));
        let digital = MeasurementOutcome::Digital {
            basis_index: 1,
            qubits: 2,
        };
        assert!(matches!(c.interpret(&digital, &mut l), Err(Error::Kind(_))));
    }

    #[test]
    fn define_plus_interpret_is_two_n() {
        for n in 1..=14 {
            let labels: Vec<String> = (0..n).map(|i| format!("site{i}")).collect();
            let mut l = CostLedger::new();
            let c = Case2Codec::define(&labels, "vacuum", &mut l).unwrap();
            let s = StateVector::basis(n, 1).unwrap();
            c.interpret(&s.measure_qubit_marginals(), &mut l).unwrap();
            assert_eq!(l.interface_steps(), 2 * n as u64);
        }
    }

    #[test]
    fn decode_referent_reads_excited_qubit() {
        let mut l = CostLedger::new();
        let c = Case2Codec::define(&["a", "b", "c"], "zero", &mut l).unwrap();
        let mut l = CostLedger::new();
        assert_eq!(
            c.decode_referent(&StateVector::basis(3, 0b100).unwrap(), &mut l)
                .unwrap(),
            "c"
        );
        assert_eq!(
            c.decode_referent(&StateVector::basis(3, 0).unwrap(), &mut l).unwrap(),
            "zero"
        );
        assert_eq!(l.interpretation_steps(), 6);
    }
}
