//! Order finding by phase estimation, the integer-encoded exemplar.
//!
//! The low `L = ⌈log2 M⌉` qubits hold the work register, the next
//! `t = ⌈log2 M²⌉` qubits the control register. The whole register is read
//! through a [`Case1Codec`], so the input costs one definition step and every
//! read-out one interpretation step.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codec::{Case1Codec, InterpretedValue};
use crate::error::{Error, Result};
use crate::ledger::{CostLedger, Counter};
use crate::qsim::{MeasureMode, StateVector, Unitary, MAX_QUBITS};
use crate::qtm::{specify_api_call, ApiCall, ApiRegistry, GroverApiMode, ParamValue, ORDER_FINDING};

use super::qft::apply_inverse_qft;
use super::{Payload, ScenarioResult};

pub const MAX_ATTEMPTS: u32 = 10;
pub const MAX_MODULUS: u64 = 21;

fn bit_length(x: u64) -> usize {
    (u64::BITS - x.leading_zeros()) as usize
}

pub fn work_qubits(modulus: u64) -> usize {
    bit_length(modulus - 1).max(1)
}

/// Smallest `t` with `2^t ≥ M²`.
pub fn control_qubits(modulus: u64) -> usize {
    bit_length(modulus * modulus - 1)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut result = 1 % modulus;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    result
}

/// Multiplicative order of `a` mod `M` by repeated multiplication; the order
/// is also the number of powers computed.
pub fn brute_force_order(a: u64, modulus: u64) -> Option<u64> {
    if modulus < 2 || gcd(a, modulus) != 1 {
        return None;
    }
    let mut x = a % modulus;
    let mut r = 1;
    while x != 1 {
        x = x * a % modulus;
        r += 1;
        if r > modulus {
            return None;
        }
    }
    Some(r)
}

/// Denominators of the continued-fraction convergents of `num / den`, without repeats.
pub fn convergent_denominators(num: u64, den: u64) -> Vec<u64> {
    let (mut p, mut q) = (num, den);
    // k_n = a_n k_{n-1} + k_{n-2}, with k_{-1} = 0 and k_{-2} = 1
    let (mut k2, mut k1) = (1u64, 0u64);
    let mut out: Vec<u64> = Vec::new();
    while q != 0 {
        let a = p / q;
        (p, q) = (q, p % q);
        let k = a * k1 + k2;
        (k2, k1) = (k1, k);
        if out.last() != Some(&k) {
            out.push(k);
        }
    }
    out
}

fn candidate_order(measured: u64, t: usize, a: u64, modulus: u64) -> u64 {
    if measured == 0 {
        return 1;
    }
    let dens: Vec<u64> = convergent_denominators(measured, 1u64 << t)
        .into_iter()
        .filter(|&d| d < modulus)
        .collect();
    dens.iter()
        .copied()
        .find(|&d| pow_mod(a, d, modulus) == 1)
        .or(dens.last().copied())
        .unwrap_or(1)
}

/// One phase-estimation run; returns the measured register value.
fn estimate_once(a: u64, modulus: u64, codec: &Case1Codec, seed: u64, ledger: &mut CostLedger) -> Result<u64> {
    let work = work_qubits(modulus);
    let t = control_qubits(modulus);
    let total = codec.qubits();
    let mut state = StateVector::basis(total, codec.encode(1)?)?;
    let h = Unitary::hadamard();
    let control: Vec<usize> = (work..total).collect();
    for &q in &control {
        state.apply_unitary(&h, &[q])?;
    }
    let m = modulus as usize;
    for (j, &q) in control.iter().enumerate() {
        let mult = pow_mod(a, 1u64 << j, modulus) as usize;
        state.apply_controlled_permutation(q, 0, work, |y| if y < m { y * mult % m } else { y })?;
    }
    apply_inverse_qft(&mut state, &control)?;
    let outcome = state.measure_digital(MeasureMode::Sample, seed);
    ledger
        .charge(Counter::QuantumOracleQueries, t as u64)
        .charge(Counter::QuantumGateCount, state.gate_count());
    let InterpretedValue::Integer(value) = codec.interpret(&outcome, ledger)? else {
        unreachable!("integer codec")
    };
    Ok(value >> work)
}

/// Find the order of `a` modulo `M ≤ 21`, retrying up to [`MAX_ATTEMPTS`] times.
pub fn run_period_finding(a: u64, modulus: u64, seed: u64) -> Result<ScenarioResult> {
    if !(2..=MAX_MODULUS).contains(&modulus) {
        return Err(Error::Argument(format!(
            "modulus must be in 2..={MAX_MODULUS}, got {modulus}"
        )));
    }
    if gcd(a, modulus) != 1 {
        return Err(Error::Argument(format!(
            "gcd({a}, {modulus}) = {} ≠ 1",
            gcd(a, modulus)
        )));
    }
    let work = work_qubits(modulus);
    let t = control_qubits(modulus);
    let total = work + t;
    if total > MAX_QUBITS {
        return Err(Error::Size(format!("{total} qubits needed for modulus {modulus}")));
    }

    let mut ledger = CostLedger::new();
    let codec = Case1Codec::new(total, &mut ledger)?;
    let call = ApiCall::new(
        ORDER_FINDING,
        vec![ParamValue::Int(a as i64), ParamValue::Int(modulus as i64)],
    );
    specify_api_call(&ApiRegistry::standard(GroverApiMode::Query), &call, &mut ledger)?;

    let expected = brute_force_order(a, modulus).expect("coprime inputs have an order");
    ledger.charge(Counter::BaselineSteps, expected);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = None;
    let mut attempts = 0;
    while attempts < MAX_ATTEMPTS {
        attempts += 1;
        let measured = estimate_once(a, modulus, &codec, rng.gen(), &mut ledger)?;
        let r = candidate_order(measured, t, a, modulus);
        if pow_mod(a, r, modulus) == 1 {
            found = Some(r);
            break;
        }
    }

    Ok(ScenarioResult {
        scenario: "period".into(),
        n: total,
        big_n: 1 << total,
        seed,
        ledger,
        correct: found == Some(expected),
        payload: Payload::Period {
            order: found,
            expected,
            attempts,
            control_qubits: t,
            work_qubits: work,
        },
    })
}
