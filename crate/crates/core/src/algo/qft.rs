//! Quantum Fourier transform on a register of qubits.
//!
//! `qubits[0]` is the least significant bit of the register value. The forward
//! transform maps `|x⟩` to `2^{-t/2} Σ_y e^{2πi·xy/2^t} |y⟩`.

use std::f64::consts::PI;

use crate::error::Result;
use crate::qsim::{StateVector, Unitary};

pub fn apply_qft(state: &mut StateVector, qubits: &[usize]) -> Result<()> {
    let t = qubits.len();
    let h = Unitary::hadamard();
    for i in (0..t).rev() {
        state.apply_unitary(&h, &[qubits[i]])?;
        for j in (0..i).rev() {
            let theta = PI / (1u64 << (i - j)) as f64;
            state.apply_unitary(&Unitary::controlled_phase(theta), &[qubits[j], qubits[i]])?;
        }
    }
    reverse(state, qubits)
}

pub fn apply_inverse_qft(state: &mut StateVector, qubits: &[usize]) -> Result<()> {
    let t = qubits.len();
    let h = Unitary::hadamard();
    reverse(state, qubits)?;
    for i in 0..t {
        for j in 0..i {
            let theta = -PI / (1u64 << (i - j)) as f64;
            state.apply_unitary(&Unitary::controlled_phase(theta), &[qubits[j], qubits[i]])?;
        }
        state.apply_unitary(&h, &[qubits[i]])?;
    }
    Ok(())
}

fn reverse(state: &mut StateVector, qubits: &[usize]) -> Result<()> {
    let t = qubits.len();
    let swap = Unitary::swap();
    for k in 0..t / 2 {
        state.apply_unitary(&swap, &[qubits[k], qubits[t - 1 - k]])?;
    }
    Ok(())
}
