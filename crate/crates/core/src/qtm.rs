//! Cost of telling a quantum machine what to run.
//!
//! A program register of `m` qubits has `M = 2^m` global states whose values
//! must all be stipulated, so programming it costs `M` classical steps. A
//! machine exposing named algorithms instead costs `M'_j + 1` per call: the
//! name plus each run-time parameter.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ledger::{CostLedger, Counter};

pub const MAX_PROGRAM_QUBITS: u32 = 24;
pub const LINEARITY_TOL: f64 = 1e-9;
pub const DEFAULT_LINEARITY_TRIALS: usize = 64;

/// Values stipulated for every global state of an `m`-qubit program register.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgramSpec {
    m: u32,
    values: Vec<u64>,
}

impl ProgramSpec {
    pub fn new(m: u32, values: Vec<u64>) -> Result<Self> {
        if m > MAX_PROGRAM_QUBITS {
            return Err(Error::Size(format!(
                "program register limited to {MAX_PROGRAM_QUBITS} qubits, got {m}"
            )));
        }
        let expected = 1usize << m;
        if values.len() != expected {
            return Err(Error::Validation(format!(
                "a {m}-qubit program register needs {expected} stipulated values, got {}",
                values.len()
            )));
        }
        Ok(Self { m, values })
    }

    /// Program whose global state `k` holds the value `k`.
    pub fn identity(m: u32) -> Result<Self> {
        if m > MAX_PROGRAM_QUBITS {
            return Err(Error::Size(format!(
                "program register limited to {MAX_PROGRAM_QUBITS} qubits, got {m}"
            )));
        }
        Self::new(m, (0..1u64 << m).collect())
    }

    pub fn qubits(&self) -> u32 {
        self.m
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

/// Charges one parameter step per stipulated global state and returns `2^m`.
pub fn specify_qtm_program(spec: &ProgramSpec, ledger: &mut CostLedger) -> u64 {
    let cost = spec.values.len() as u64;
    ledger.charge(Counter::ParameterSteps, cost);
    cost
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Real(f64),
    Text(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Real(v) => write!(f, "{v}"),
            ParamValue::Text(v) => f.write_str(v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiCall {
    pub algorithm: String,
    pub params: Vec<ParamValue>,
}

impl ApiCall {
    pub fn new(algorithm: impl Into<String>, params: Vec<ParamValue>) -> Self {
        Self {
            algorithm: algorithm.into(),
            params,
        }
    }
}

/// How Grover search is exposed: a single query value, or the two control
/// angles of an ion-trap style implementation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroverApiMode {
    #[default]
    Query,
    IonTrap,
}

pub const GROVER: &str = "grover";
pub const ORDER_FINDING: &str = "order-finding";
pub const LINEAR_SIM: &str = "linear-sim";
pub const NONLINEAR_INTERPRETATION: &str = "nonlinear-interpretation";

/// Named algorithms and their run-time parameter counts `M'_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiRegistry {
    arities: BTreeMap<String, usize>,
}

impl ApiRegistry {
    pub fn empty() -> Self {
        Self {
            arities: BTreeMap::new(),
        }
    }

    /// The scenarios this crate ships, with Grover exposed per `mode`.
    pub fn standard(mode: GroverApiMode) -> Self {
        let mut r = Self::empty();
        r.register(
            GROVER,
            match mode {
                GroverApiMode::Query => 1,
                GroverApiMode::IonTrap => 2,
            },
        );
        // base a and modulus M
        r.register(ORDER_FINDING, 2);
        // Hamiltonian, initial coefficients, evolution time
        r.register(LINEAR_SIM, 3);
        // the map A and the input referent
        r.register(NONLINEAR_INTERPRETATION, 2);
        r
    }

    pub fn register(&mut self, name: impl Into<String>, arity: usize) {
        self.arities.insert(name.into(), arity);
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.arities.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.arities.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Every registered arity must be below the `2^m` states of a program register.
    pub fn check_program_register(&self, m: u32) -> Result<()> {
        let big_m = 1u64 << m.min(63);
        match self.arities.iter().find(|(_, &a)| a as u64 >= big_m) {
            Some((name, a)) => Err(Error::Validation(format!(
                "`{name}` takes {a} parameters, not fewer than M = {big_m}"
            ))),
            None => Ok(()),
        }
    }
}

/// Charges `M'_j + 1` parameter steps: one for the name, one per parameter.
pub fn specify_api_call(registry: &ApiRegistry, call: &ApiCall, ledger: &mut CostLedger) -> Result<u64> {
    let arity = registry
        .arity(&call.algorithm)
        .ok_or_else(|| Error::NotFound(format!("algorithm `{}`", call.algorithm)))?;
    if call.params.len() != arity {
        return Err(Error::Validation(format!(
            "`{}` takes {arity} parameters, got {}",
            call.algorithm,
            call.params.len()
        )));
    }
    let cost = arity as u64 + 1;
    ledger.charge(Counter::ParameterSteps, cost);
    Ok(cost)
}

/// Extends per-basis boundary values to a superposition given by its coefficients.
pub type ExtensionRule = Arc<dyn Fn(&[Complex64], &[Complex64]) -> Complex64 + Send + Sync>;

/// Boundary conditions for a simulation: one value per basis vector, an
/// extension rule for superpositions, and optionally values stipulated on
/// global register states.
#[derive(Clone)]
pub struct BoundarySpec {
    values: Vec<Complex64>,
    rule: ExtensionRule,
    global_values: Vec<Complex64>,
}

impl fmt::Debug for BoundarySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundarySpec")
            .field("values", &self.values)
            .field("global_values", &self.global_values.len())
            .finish_non_exhaustive()
    }
}

impl BoundarySpec {
    pub fn new(values: Vec<Complex64>, rule: ExtensionRule) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Validation("boundary spec covers no basis vectors".into()));
        }
        Ok(Self {
            values,
            rule,
            global_values: Vec::new(),
        })
    }

    /// `rule(c) = Σ c_i v_i`.
    pub fn linear(values: Vec<Complex64>) -> Result<Self> {
        Self::new(
            values,
            Arc::new(|v: &[Complex64], c: &[Complex64]| c.iter().zip(v).map(|(c, v)| c * v).sum()),
        )
    }

    /// `rule(c) = Σ c_i² v_i`, which fails additivity.
    pub fn coefficient_squaring(values: Vec<Complex64>) -> Result<Self> {
        Self::new(
            values,
            Arc::new(|v: &[Complex64], c: &[Complex64]| c.iter().zip(v).map(|(c, v)| c * c * v).sum()),
        )
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(
            vec![Complex64::new(0.0, 0.0); n],
            Arc::new(|_: &[Complex64], _: &[Complex64]| Complex64::new(0.0, 0.0)),
        )
    }

    /// Add values stipulated per global state of the register; each one is an
    /// extra run-time parameter.
    pub fn with_global_values(mut self, global_values: Vec<Complex64>) -> Self {
        self.global_values = global_values;
        self
    }

    pub fn basis_len(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Run-time parameters this spec costs to pass: one per stipulated value.
    pub fn parameter_count(&self) -> u64 {
        (self.values.len() + self.global_values.len()) as u64
    }

    pub fn evaluate(&self, coefficients: &[Complex64]) -> Complex64 {
        (self.rule)(&self.values, coefficients)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearityVerdict {
    pub linear: bool,
    pub max_defect: f64,
    pub trials: usize,
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Sample `trials` superposition pairs `(u, v)` and scalars `(α, β)` and check
/// `rule(αu + βv) = α·rule(u) + β·rule(v)` within [`LINEARITY_TOL`].
pub fn check_boundary_linearity(spec: &BoundarySpec, trials: usize, seed: u64) -> LinearityVerdict {
    let n = spec.basis_len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_defect: f64 = 0.0;
    for _ in 0..trials {
        let u: Vec<Complex64> = (0..n).map(|_| random_complex(&mut rng)).collect();
        let v: Vec<Complex64> = (0..n).map(|_| random_complex(&mut rng)).collect();
        let alpha = random_complex(&mut rng);
        let beta = random_complex(&mut rng);
        let combo: Vec<Complex64> = u.iter().zip(&v).map(|(u, v)| alpha * u + beta * v).collect();
        let defect = (spec.evaluate(&combo) - alpha * spec.evaluate(&u) - beta * spec.evaluate(&v)).norm();
        max_defect = max_defect.max(if defect.is_nan() { f64::INFINITY } else { defect });
    }
    LinearityVerdict {
        linear: max_defect <= LINEARITY_TOL,
        max_defect,
        trials,
    }
}
