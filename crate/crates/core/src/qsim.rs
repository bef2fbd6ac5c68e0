//! Exact statevector simulation of an n-qubit register.
//!
//! Qubit `i` is bit `i` of the computational-basis index, so on two qubits
//! `|10⟩` is index 2 and has qubit 1 set.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 14;
pub const MAX_GATE_QUBITS: usize = 3;
pub const UNITARY_TOL: f64 = 1e-10;
pub const NORM_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A validated unitary acting on `k ≤ 3` qubits, row-major `2^k × 2^k`.
///
/// Row/column index bit `b` corresponds to the `b`-th entry of the target list
/// the gate is applied with.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    k: usize,
    matrix: Vec<Complex64>,
}

impl Unitary {
    pub fn new(k: usize, matrix: Vec<Complex64>) -> Result<Self> {
        if k == 0 || k > MAX_GATE_QUBITS {
            return Err(Error::Argument(format!(
                "gates act on 1..={MAX_GATE_QUBITS} qubits, got {k}"
            )));
        }
        let dim = 1 << k;
        if matrix.len() != dim * dim {
            return Err(Error::Shape {
                expected: dim * dim,
                got: matrix.len(),
            });
        }
        // U†U = I entrywise
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = ZERO;
                for r in 0..dim {
                    acc += matrix[r * dim + i].conj() * matrix[r * dim + j];
                }
                let expected = if i == j { ONE } else { ZERO };
                if (acc - expected).norm() > UNITARY_TOL {
                    return Err(Error::Validation(format!(
                        "matrix is not unitary: (U†U)[{i}][{j}] = {acc}"
                    )));
                }
            }
        }
        Ok(Self { k, matrix })
    }

    /// Real-valued convenience constructor.
    pub fn from_real(k: usize, matrix: &[f64]) -> Result<Self> {
        Self::new(k, matrix.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_real(1, &[h, h, h, -h]).unwrap()
    }

    pub fn pauli_x() -> Self {
        Self::from_real(1, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    pub fn pauli_z() -> Self {
        Self::from_real(1, &[1.0, 0.0, 0.0, -1.0]).unwrap()
    }

    /// `diag(1, 1, 1, e^{iθ})` on two qubits.
    pub fn controlled_phase(theta: f64) -> Self {
        let mut m = vec![ZERO; 16];
        m[0] = ONE;
        m[5] = ONE;
        m[10] = ONE;
        m[15] = Complex64::from_polar(1.0, theta);
        Self::new(2, m).unwrap()
    }

    pub fn swap() -> Self {
        #[rustfmt::skip]
        let m = [
            1.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 1.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
        ];
        Self::from_real(2, &m).unwrap()
    }

    pub fn qubits(&self) -> usize {
        self.k
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[row * (1 << self.k) + col]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureMode {
    /// Index of the largest probability, ties to the lowest index.
    Argmax,
    /// One draw from the Born distribution with a seeded generator.
    Sample,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasurementOutcome {
    Digital { basis_index: usize, qubits: usize },
    Analog { qubit_marginals: Vec<f64> },
}

impl MeasurementOutcome {
    pub fn kind_name(&self) -> &'static str {
        match self {
            MeasurementOutcome::Digital { .. } => "digital",
            MeasurementOutcome::Analog { .. } => "analog",
        }
    }
}

/// The register `R`: `2^n` amplitudes plus counters of the quantum work done.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
    oracle_queries: u64,
    gate_count: u64,
}

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::Size(format!("qubit count must be in 1..={MAX_QUBITS}, got {n}")));
    }
    Ok(())
}

impl StateVector {
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_qubits(n)?;
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::Size(format!("basis index {index} out of range for {n} qubits")));
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(Self::wrap(n, amps))
    }

    pub fn uniform(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let dim = 1usize << n;
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self::wrap(n, vec![a; dim]))
    }

    /// Wrap explicit amplitudes; the length must be `2^n` and the state normalized.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if !dim.is_power_of_two() || dim < 2 {
            return Err(Error::Size(format!("amplitude count {dim} is not 2^n with n ≥ 1")));
        }
        let n = dim.trailing_zeros() as usize;
        check_qubits(n)?;
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Validation(format!("state is not normalized: Σ|a|² = {norm}")));
        }
        Ok(Self::wrap(n, amps))
    }

    fn wrap(n: usize, amps: Vec<Complex64>) -> Self {
        Self {
            n,
            amps,
            oracle_queries: 0,
            gate_count: 0,
        }
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn oracle_queries(&self) -> u64 {
        self.oracle_queries
    }

    pub fn gate_count(&self) -> u64 {
        self.gate_count
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.dim() {
            return Err(Error::Argument(format!(
                "basis index {index} out of range for {} qubits",
                self.n
            )));
        }
        Ok(())
    }

    fn check_targets(&self, targets: &[usize]) -> Result<()> {
        for (i, &t) in targets.iter().enumerate() {
            if t >= self.n {
                return Err(Error::Argument(format!("qubit {t} out of range for {} qubits", self.n)));
            }
            if targets[..i].contains(&t) {
                return Err(Error::Argument(format!("duplicate target qubit {t}")));
            }
        }
        Ok(())
    }

    /// Apply `u ⊗ I` with `u` acting on `targets` (first target = lowest local bit).
    pub fn apply_unitary(&mut self, u: &Unitary, targets: &[usize]) -> Result<()> {
        if targets.len() != u.k {
            return Err(Error::Argument(format!(
                "{}-qubit gate given {} targets",
                u.k,
                targets.len()
            )));
        }
        self.check_targets(targets)?;
        let local = 1usize << u.k;
        let mask: usize = targets.iter().map(|&t| 1usize << t).sum();
        let offsets: Vec<usize> = (0..local)
            .map(|l| {
                targets
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| l >> b & 1 == 1)
                    .map(|(_, &t)| 1usize << t)
                    .sum()
            })
            .collect();
        let mut buf = [ZERO; 1 << MAX_GATE_QUBITS];
        for base in 0..self.dim() {
            if base & mask != 0 {
                continue;
            }
            for (l, off) in offsets.iter().enumerate() {
                buf[l] = self.amps[base | off];
            }
            for (row, off) in offsets.iter().enumerate() {
                let mut acc = ZERO;
                for (col, b) in buf[..local].iter().enumerate() {
                    acc += u.matrix[row * local + col] * b;
                }
                self.amps[base | off] = acc;
            }
        }
        self.gate_count += 1;
        Ok(())
    }

    /// Phase oracle for the condition `C(|k⟩) = [k == marked]`.
    pub fn apply_phase_oracle(&mut self, marked: usize) -> Result<()> {
        self.check_index(marked)?;
        self.amps[marked] = -self.amps[marked];
        self.oracle_queries += 1;
        self.gate_count += 1;
        Ok(())
    }

    /// Inversion about the mean, `2|s⟩⟨s| − I`.
    pub fn apply_diffusion(&mut self) {
        let mean = self.amps.iter().sum::<Complex64>() / self.dim() as f64;
        for a in &mut self.amps {
            *a = 2.0 * mean - *a;
        }
        self.gate_count += 1;
    }

    pub fn grover_iteration(&mut self, marked: usize) -> Result<()> {
        self.apply_phase_oracle(marked)?;
        self.apply_diffusion();
        Ok(())
    }

    /// Controlled classical permutation of a contiguous target register.
    ///
    /// When qubit `control` is set, the value `y` held by qubits
    /// `lo..lo + width` is replaced by `f(y)`; `f` must be a bijection on
    /// `0..2^width`.
    pub fn apply_controlled_permutation(
        &mut self,
        control: usize,
        lo: usize,
        width: usize,
        f: impl Fn(usize) -> usize,
    ) -> Result<()> {
        if width == 0 || lo + width > self.n {
            return Err(Error::Argument(format!(
                "target register {lo}..{} out of range for {} qubits",
                lo + width,
                self.n
            )));
        }
        if control >= self.n || (lo..lo + width).contains(&control) {
            return Err(Error::Argument(format!("invalid control qubit {control}")));
        }
        let size = 1usize << width;
        let table: Vec<usize> = (0..size).map(&f).collect();
        let mut seen = vec![false; size];
        for &y in &table {
            if y >= size || std::mem::replace(&mut seen[y], true) {
                return Err(Error::Validation("register map is not a permutation".into()));
            }
        }
        let reg_mask = (size - 1) << lo;
        let mut out = self.amps.clone();
        for (idx, &a) in self.amps.iter().enumerate() {
            if idx >> control & 1 == 1 {
                let y = (idx & reg_mask) >> lo;
                out[(idx & !reg_mask) | (table[y] << lo)] = a;
            }
        }
        self.amps = out;
        self.gate_count += 1;
        Ok(())
    }

    /// Apply `u` to the subspace spanned by the listed basis states, identity elsewhere.
    pub fn apply_subspace_unitary(&mut self, indices: &[usize], u: &DMatrix<Complex64>) -> Result<()> {
        let d = indices.len();
        if u.nrows() != d || u.ncols() != d {
            return Err(Error::Shape {
                expected: d * d,
                got: u.nrows() * u.ncols(),
            });
        }
        for (i, &idx) in indices.iter().enumerate() {
            self.check_index(idx)?;
            if indices[..i].contains(&idx) {
                return Err(Error::Argument(format!("duplicate subspace index {idx}")));
            }
        }
        let defect = (u.adjoint() * u - DMatrix::<Complex64>::identity(d, d))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if defect > UNITARY_TOL {
            return Err(Error::Validation(format!(
                "subspace matrix is not unitary (defect {defect:.3e})"
            )));
        }
        let before: Vec<Complex64> = indices.iter().map(|&i| self.amps[i]).collect();
        for (row, &idx) in indices.iter().enumerate() {
            self.amps[idx] = (0..d).map(|col| u[(row, col)] * before[col]).sum();
        }
        self.gate_count += 1;
        Ok(())
    }

    pub fn measure_digital(&self, mode: MeasureMode, seed: u64) -> MeasurementOutcome {
        let basis_index = match mode {
            MeasureMode::Argmax => {
                let mut best = 0;
                let mut best_p = f64::NEG_INFINITY;
                for (i, a) in self.amps.iter().enumerate() {
                    let p = a.norm_sqr();
                    if p > best_p {
                        best = i;
                        best_p = p;
                    }
                }
                best
            }
            MeasureMode::Sample => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let r: f64 = rng.gen::<f64>() * self.norm_sqr();
                let mut acc = 0.0;
                let mut chosen = None;
                for (i, a) in self.amps.iter().enumerate() {
                    let p = a.norm_sqr();
                    acc += p;
                    if p > 0.0 {
                        chosen = Some(i);
                        if r < acc {
                            break;
                        }
                    }
                }
                chosen.unwrap_or(0)
            }
        };
        MeasurementOutcome::Digital {
            basis_index,
            qubits: self.n,
        }
    }

    pub fn measure_qubit_marginals(&self) -> MeasurementOutcome {
        let mut marginals = vec![0.0; self.n];
        for (idx, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            for (q, m) in marginals.iter_mut().enumerate() {
                if idx >> q & 1 == 1 {
                    *m += p;
                }
            }
        }
        for m in &mut marginals {
            *m = m.clamp(0.0, 1.0);
        }
        MeasurementOutcome::Analog {
            qubit_marginals: marginals,
        }
    }
}
