use crate::error::{Error, Result};
use crate::ledger::{CostLedger, Counter};
use crate::qsim::{MeasurementOutcome, MAX_QUBITS};

use super::InterpretedValue;

/// Integers `0..2^n` written in binary across the register, qubit 0 least significant.
///
/// Constructing the codec charges the single definition step of announcing the
/// convention; encoding is free and interpretation reads the convention bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Case1Codec {
    n: usize,
    binary_register_order: bool,
}

impl Case1Codec {
    pub fn new(n: usize, ledger: &mut CostLedger) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::Size(format!("qubit count must be in 1..={MAX_QUBITS}, got {n}")));
        }
        ledger.charge(Counter::DefinitionSteps, 1);
        Ok(Self {
            n,
            binary_register_order: true,
        })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn encode(&self, x: u64) -> Result<usize> {
        if x >= 1u64 << self.n {
            return Err(Error::Domain(format!("{x} does not fit in {} qubits", self.n)));
        }
        Ok(x as usize)
    }

    pub fn interpret(&self, outcome: &MeasurementOutcome, ledger: &mut CostLedger) -> Result<InterpretedValue> {
        let MeasurementOutcome::Digital { basis_index, .. } = outcome else {
            return Err(Error::Kind(
                "continuous-valued measurements do not apply to integer encodings".into(),
            ));
        };
        if *basis_index >= 1usize << self.n {
            return Err(Error::Domain(format!(
                "basis index {basis_index} out of range for {} qubits",
                self.n
            )));
        }
        debug_assert!(self.binary_register_order);
        ledger.charge(Counter::InterpretationSteps, 1);
        Ok(InterpretedValue::Integer(*basis_index as u64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::{MeasureMode, StateVector};
    use proptest::prelude::*;

    #[test]
    fn encode_examples() {
        let mut l = CostLedger::new();
        let c = Case1Codec::new(4, &mut l).unwrap();
        assert_eq!(l.definition_steps(), 1);
        assert_eq!(c.encode(6).unwrap(), 6);
        assert_eq!(c.encode(0).unwrap(), 0);
        assert!(matches!(c.encode(16), Err(Error::Domain(_))));
        assert_eq!(l.definition_steps(), 1);
    }

    #[test]
    fn interpret_examples() {
        let mut l = CostLedger::new();
        let c = Case1Codec::new(4, &mut l).unwrap();
        let out = MeasurementOutcome::Digital {
            basis_index: 13,
            qubits: 4,
        };
        assert_eq!(c.interpret(&out, &mut l).unwrap(), InterpretedValue::Integer(13));
        let out = MeasurementOutcome::Digital {
            basis_index: 0,
            qubits: 4,
        };
        assert_eq!(c.interpret(&out, &mut l).unwrap(), InterpretedValue::Integer(0));
        assert_eq!(l.interpretation_steps(), 2);
        let analog = MeasurementOutcome::Analog {
            qubit_marginals: vec![0.5; 4],
        };
        assert!(matches!(c.interpret(&analog, &mut l), Err(Error::Kind(_))));
    }

    proptest! {
        #[test]
        fn round_trip_costs_two_steps(n in 1usize..=14, raw in any::<u64>()) {
            let x = raw % (1u64 << n);
            let mut l = CostLedger::new();
            let c = Case1Codec::new(n, &mut l).unwrap();
            let s = StateVector::basis(n, c.encode(x).unwrap()).unwrap();
            let v = c.interpret(&s.measure_digital(MeasureMode::Argmax, 0), &mut l).unwrap();
            prop_assert_eq!(v, InterpretedValue::Integer(x));
            prop_assert_eq!(l.definition_steps() + l.interpretation_steps(), 2);
        }
    }
}
