use crate::codec::nonlinear::{IdentityMap, LogisticDigitizer, LookupChain};
use crate::codec::{nonlinear_mf, Case2Codec, InstrumentedMap, InterpretedValue};
use crate::error::{Error, Result};
use crate::ledger::{CostLedger, Counter};
use crate::qsim::StateVector;

use super::{Payload, ScenarioResult};

const NULL_REFERENT: &str = "null";

pub const SHIPPED_MAP_NAMES: [&str; 3] = ["identity", "lookup-chain", "logistic"];

pub const LOOKUP_CHAIN_LINKS: usize = 3;
pub const LOGISTIC_STEPS: u64 = 20;

pub fn map_by_name<S: AsRef<str>>(name: &str, domain: &[S]) -> Result<Box<dyn InstrumentedMap>> {
    Ok(match name {
        "identity" => Box::new(IdentityMap),
        "lookup-chain" => Box::new(LookupChain::new(domain, LOOKUP_CHAIN_LINKS)),
        "logistic" => Box::new(LogisticDigitizer::new(domain, LOGISTIC_STEPS)),
        other => return Err(Error::NotFound(format!("instrumented map `{other}`"))),
    })
}

/// The identity map, a three-link lookup chain, and a 20-step logistic digitizer.
pub fn shipped_maps<S: AsRef<str>>(domain: &[S]) -> Vec<Box<dyn InstrumentedMap>> {
    SHIPPED_MAP_NAMES
        .iter()
        .map(|name| map_by_name(name, domain).expect("shipped map"))
        .collect()
}

/// Interpret a Case-2 register through a nonlinear map and compare the cost
/// with running the map directly on the referent.
///
/// The standalone run is the classical baseline. The result is correct when
/// the interpretation cost minus the `n`-step decode equals the standalone
/// cost and both produce the same referent.
pub fn run_nonlinear_counterexample<S: AsRef<str>>(
    domain: &[S],
    map: &dyn InstrumentedMap,
    input: &str,
) -> Result<ScenarioResult> {
    let mut ledger = CostLedger::new();
    let codec = Case2Codec::define(domain, NULL_REFERENT, &mut ledger)?;
    let n = codec.qubits();
    let index = codec.qubit_of(input)?.map_or(0, |q| 1usize << q);
    let state = StateVector::basis(n, index)?;

    let before = ledger.interpretation_steps();
    let InterpretedValue::ReferentLabel(output) = nonlinear_mf(&codec, &state, map, &mut ledger)? else {
        unreachable!("nonlinear interpretation yields a referent")
    };
    let interpretation = ledger.interpretation_steps() - before;

    let (standalone_output, standalone_steps) = map.run_standalone(input);
    ledger.charge(Counter::BaselineSteps, standalone_steps);
    let decode_steps = n as u64;

    Ok(ScenarioResult {
        scenario: "nonlinear".into(),
        n,
        big_n: 1 << n,
        seed: 0,
        ledger,
        correct: interpretation - decode_steps == standalone_steps && output == standalone_output,
        payload: Payload::Nonlinear {
            map: map.name().to_owned(),
            output,
            standalone_output,
            decode_steps,
            standalone_steps,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn domain(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn identity_counterexample() {
        let r = run_nonlinear_counterexample(&domain(4), &IdentityMap, "x2").unwrap();
        assert!(r.correct);
        let Payload::Nonlinear {
            standalone_steps,
            output,
            ..
        } = &r.payload
        else {
            panic!()
        };
        assert_eq!(*standalone_steps, 1);
        assert_eq!(output, "x2");
        assert_eq!(r.ledger.interpretation_steps(), 5);
    }

    #[test]
    fn shipped_maps_satisfy_equivalence() {
        let d = domain(6);
        let expected_steps = [1, 3, 20];
        for (map, steps) in shipped_maps(&d).iter().zip(expected_steps) {
            for input in d.iter().map(String::as_str).chain(["null"]) {
                let r = run_nonlinear_counterexample(&d, map.as_ref(), input).unwrap();
                assert!(r.correct, "{} on {input}", map.name());
                let Payload::Nonlinear { standalone_steps, .. } = r.payload else {
                    panic!()
                };
                assert_eq!(standalone_steps, steps);
            }
        }
    }

    #[test]
    fn unknown_input_or_map() {
        assert!(matches!(
            run_nonlinear_counterexample(&domain(3), &IdentityMap, "zz"),
            Err(Error::NotFound(_))
        ));
        assert!(map_by_name("bogus", &domain(3)).is_err());
    }
}
