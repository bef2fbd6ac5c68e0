//! Linear quantum simulation under a per-qubit (single-excitation) assignment.
//!
//! Site `i` of an `n`-site hopping model is assigned to qubit `i`, so the
//! site basis vector `|e_i⟩` is the one-hot basis state `1 << i`. The quantum
//! path exponentiates the `n × n` block by scaling and squaring and applies it
//! to that subspace; the classical model integrates the Schrödinger equation
//! through an eigendecomposition of the same block.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::codec::{Case2Codec, InterpretedValue};
use crate::error::{Error, Result};
use crate::ledger::{CostLedger, Counter};
use crate::qsim::StateVector;
use crate::qtm::{check_boundary_linearity, BoundarySpec, DEFAULT_LINEARITY_TRIALS};

use super::{Payload, ScenarioResult};

pub const MAX_SITES: usize = 10;
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Largest quantum/classical probability discrepancy for the paths to commute.
pub const COMMUTE_TOL: f64 = 1e-6;
/// Boundary specs may cost at most `WORTHINESS_FACTOR · n` parameter steps.
pub const WORTHINESS_FACTOR: u64 = 2;

const NULL_REFERENT: &str = "vacuum";

/// Real symmetric hopping Hamiltonian (ħ = 1) with an evolution time.
#[derive(Debug, Clone, PartialEq)]
pub struct HoppingHamiltonian {
    matrix: DMatrix<f64>,
    time: f64,
}

impl HoppingHamiltonian {
    pub fn new(matrix: DMatrix<f64>, time: f64) -> Result<Self> {
        let n = matrix.nrows();
        if n != matrix.ncols() {
            return Err(Error::Shape {
                expected: n * n,
                got: matrix.len(),
            });
        }
        if n == 0 || n > MAX_SITES {
            return Err(Error::Size(format!("need 1..={MAX_SITES} sites, got {n}")));
        }
        let asym = (&matrix - matrix.transpose()).amax();
        if asym > SYMMETRY_TOL {
            return Err(Error::Validation(format!(
                "Hamiltonian is not symmetric (defect {asym:.3e})"
            )));
        }
        if !time.is_finite() {
            return Err(Error::Argument(format!("evolution time {time} is not finite")));
        }
        Ok(Self { matrix, time })
    }

    /// Open chain with uniform hopping between neighbours.
    pub fn chain(n: usize, hopping: f64, time: f64) -> Result<Self> {
        let mut m = DMatrix::zeros(n, n);
        for i in 1..n {
            m[(i - 1, i)] = hopping;
            m[(i, i - 1)] = hopping;
        }
        Self::new(m, time)
    }

    /// Closed ring; for two sites this is the chain.
    pub fn ring(n: usize, hopping: f64, time: f64) -> Result<Self> {
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            let j = (i + 1) % n;
            if i != j {
                m[(i, j)] = hopping;
                m[(j, i)] = hopping;
            }
        }
        Self::new(m, time)
    }

    pub fn sites(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn with_time(&self, time: f64) -> Self {
        Self {
            matrix: self.matrix.clone(),
            time,
        }
    }
}

/// Matrix exponential by scaling and squaring a truncated Taylor series.
pub fn expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    let norm1 = (0..n)
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm1 > 0.5 {
        (norm1 / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a / Complex64::new(2f64.powi(squarings as i32), 0.0);

    let mut result = DMatrix::<Complex64>::identity(n, n);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    for k in 1..=30 {
        term = &term * &scaled / Complex64::new(k as f64, 0.0);
        result += &term;
        if term.iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

fn check_initial(h: &HoppingHamiltonian, initial: &[Complex64]) -> Result<()> {
    if initial.len() != h.sites() {
        return Err(Error::Shape {
            expected: h.sites(),
            got: initial.len(),
        });
    }
    let norm: f64 = initial.iter().map(|c| c.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::Validation(format!(
            "initial coefficients not normalized: Σ|c|² = {norm}"
        )));
    }
    Ok(())
}

/// Site probabilities from the classical model: `ψ(t) = V e^{-iΛt} Vᵀ ψ(0)`.
pub fn classical_probabilities(h: &HoppingHamiltonian, initial: &[Complex64]) -> Result<Vec<f64>> {
    check_initial(h, initial)?;
    let eig = SymmetricEigen::new(h.matrix.clone());
    let v = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
    let psi0 = DVector::from_column_slice(initial);
    let mut coeffs = v.transpose() * psi0;
    for (c, &lambda) in coeffs.iter_mut().zip(eig.eigenvalues.iter()) {
        *c *= Complex64::from_polar(1.0, -lambda * h.time);
    }
    Ok((v * coeffs).iter().map(|c| c.norm_sqr()).collect())
}

/// Evolve the encoded register on the quantum path and return the state.
fn evolve_register(h: &HoppingHamiltonian, initial: &[Complex64]) -> Result<StateVector> {
    check_initial(h, initial)?;
    let n = h.sites();
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    let excitations: Vec<usize> = (0..n).map(|i| 1usize << i).collect();
    for (&idx, &c) in excitations.iter().zip(initial) {
        amps[idx] = c;
    }
    let mut state = StateVector::from_amplitudes(amps)?;
    let generator = h.matrix.map(|x| Complex64::new(0.0, -x * h.time));
    state.apply_subspace_unitary(&excitations, &expm(&generator))?;
    Ok(state)
}

/// Qubit marginals of the quantum path, without codec accounting.
pub fn quantum_probabilities(h: &HoppingHamiltonian, initial: &[Complex64]) -> Result<Vec<f64>> {
    let state = evolve_register(h, initial)?;
    let crate::qsim::MeasurementOutcome::Analog { qubit_marginals } = state.measure_qubit_marginals() else {
        unreachable!()
    };
    Ok(qubit_marginals)
}

/// Encode, evolve, read marginals, interpret through the site table, and
/// compare against the classical model.
pub fn run_linear_sim<S: AsRef<str>>(
    h: &HoppingHamiltonian,
    initial: &[Complex64],
    labels: &[S],
) -> Result<ScenarioResult> {
    let mut ledger = CostLedger::new();
    simulate(h, initial, labels, &mut ledger)
}

fn simulate<S: AsRef<str>>(
    h: &HoppingHamiltonian,
    initial: &[Complex64],
    labels: &[S],
    ledger: &mut CostLedger,
) -> Result<ScenarioResult> {
    let n = h.sites();
    if labels.len() != n {
        return Err(Error::Shape {
            expected: n,
            got: labels.len(),
        });
    }
    check_initial(h, initial)?;
    let codec = Case2Codec::define(labels, NULL_REFERENT, ledger)?;
    let state = evolve_register(h, initial)?;
    ledger.charge(Counter::QuantumGateCount, state.gate_count());
    let InterpretedValue::CoefficientList(quantum) = codec.interpret(&state.measure_qubit_marginals(), ledger)? else {
        unreachable!("per-qubit codec interprets to coefficients")
    };
    let classical = classical_probabilities(h, initial)?;
    let max_discrepancy = quantum
        .iter()
        .zip(&classical)
        .map(|((_, q), c)| (q - c).abs())
        .fold(0.0, f64::max);
    Ok(ScenarioResult {
        scenario: "linsim".into(),
        n,
        big_n: 1 << n,
        seed: 0,
        ledger: *ledger,
        correct: max_discrepancy <= COMMUTE_TOL,
        payload: Payload::LinearSim {
            quantum,
            classical,
            max_discrepancy,
        },
    })
}

/// Run with initial coefficients supplied as a boundary specification.
///
/// The spec must pass the sampled linearity check and cost no more than
/// `WORTHINESS_FACTOR · n` parameter steps; its values are the initial
/// coefficients.
pub fn run_linear_sim_with_boundary<S: AsRef<str>>(
    h: &HoppingHamiltonian,
    boundary: &BoundarySpec,
    labels: &[S],
    seed: u64,
) -> Result<ScenarioResult> {
    let n = h.sites();
    if boundary.basis_len() != n {
        return Err(Error::Shape {
            expected: n,
            got: boundary.basis_len(),
        });
    }
    let verdict = check_boundary_linearity(boundary, DEFAULT_LINEARITY_TRIALS, seed);
    if !verdict.linear {
        return Err(Error::NonlinearBoundary {
            defect: verdict.max_defect,
        });
    }
    let charged = boundary.parameter_count();
    let limit = WORTHINESS_FACTOR * n as u64;
    if charged > limit {
        return Err(Error::NotWorthwhile { charged, limit });
    }
    let mut ledger = CostLedger::new();
    ledger.charge(Counter::ParameterSteps, charged);
    let mut result = simulate(h, boundary.values(), labels, &mut ledger)?;
    result.seed = seed;
    Ok(result)
}
