//! Classical step accounting and empirical growth classification.
//!
//! A "classical step" is one association-list row read, one row write, one
//! label comparison, or one arithmetic operation on referent labels. Codec and
//! scenario code charge steps explicitly; nothing is inferred from timing.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Counter {
    DefinitionSteps,
    ParameterSteps,
    InterpretationSteps,
    BaselineSteps,
    QuantumOracleQueries,
    QuantumGateCount,
}

impl Counter {
    pub const ALL: [Counter; 6] = [
        Counter::DefinitionSteps,
        Counter::ParameterSteps,
        Counter::InterpretationSteps,
        Counter::BaselineSteps,
        Counter::QuantumOracleQueries,
        Counter::QuantumGateCount,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Counter::DefinitionSteps => "definition_steps",
            Counter::ParameterSteps => "parameter_steps",
            Counter::InterpretationSteps => "interpretation_steps",
            Counter::BaselineSteps => "baseline_steps",
            Counter::QuantumOracleQueries => "quantum_oracle_queries",
            Counter::QuantumGateCount => "quantum_gate_count",
        }
    }
}

impl fmt::Display for Counter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Counter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Counter::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown counter `{s}`")))
    }
}

/// Per-scenario step counters. Counters only ever increase.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostLedger {
    definition_steps: u64,
    parameter_steps: u64,
    interpretation_steps: u64,
    baseline_steps: u64,
    quantum_oracle_queries: u64,
    quantum_gate_count: u64,
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn charge(&mut self, counter: Counter, amount: u64) -> &mut Self {
        let slot = match counter {
            Counter::DefinitionSteps => &mut self.definition_steps,
            Counter::ParameterSteps => &mut self.parameter_steps,
            Counter::InterpretationSteps => &mut self.interpretation_steps,
            Counter::BaselineSteps => &mut self.baseline_steps,
            Counter::QuantumOracleQueries => &mut self.quantum_oracle_queries,
            Counter::QuantumGateCount => &mut self.quantum_gate_count,
        };
        *slot = slot.checked_add(amount).expect("step counter overflowed u64");
        self
    }

    /// Charge by counter name, as used by config-driven callers.
    pub fn charge_named(&mut self, counter: &str, amount: u64) -> Result<&mut Self> {
        let counter = counter.parse::<Counter>()?;
        Ok(self.charge(counter, amount))
    }

    pub fn get(&self, counter: Counter) -> u64 {
        match counter {
            Counter::DefinitionSteps => self.definition_steps,
            Counter::ParameterSteps => self.parameter_steps,
            Counter::InterpretationSteps => self.interpretation_steps,
            Counter::BaselineSteps => self.baseline_steps,
            Counter::QuantumOracleQueries => self.quantum_oracle_queries,
            Counter::QuantumGateCount => self.quantum_gate_count,
        }
    }

    pub fn definition_steps(&self) -> u64 {
        self.definition_steps
    }

    pub fn parameter_steps(&self) -> u64 {
        self.parameter_steps
    }

    pub fn interpretation_steps(&self) -> u64 {
        self.interpretation_steps
    }

    pub fn baseline_steps(&self) -> u64 {
        self.baseline_steps
    }

    pub fn quantum_oracle_queries(&self) -> u64 {
        self.quantum_oracle_queries
    }

    pub fn quantum_gate_count(&self) -> u64 {
        self.quantum_gate_count
    }

    /// Definition + parameter + interpretation steps: everything paid at the
    /// classical-quantum interface.
    pub fn interface_steps(&self) -> u64 {
        self.definition_steps + self.parameter_steps + self.interpretation_steps
    }

    /// Component-wise sum.
    pub fn merge(&self, other: &CostLedger) -> CostLedger {
        *self + *other
    }
}

impl Add for CostLedger {
    type Output = CostLedger;

    fn add(mut self, rhs: CostLedger) -> CostLedger {
        self += rhs;
        self
    }
}

impl AddAssign for CostLedger {
    fn add_assign(&mut self, rhs: CostLedger) {
        for c in Counter::ALL {
            self.charge(c, rhs.get(c));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GrowthLabel {
    #[serde(rename = "constant")]
    Constant,
    #[serde(rename = "log_N")]
    LogN,
    #[serde(rename = "linear_N")]
    LinearN,
}

impl GrowthLabel {
    pub const ALL: [GrowthLabel; 3] = [GrowthLabel::Constant, GrowthLabel::LogN, GrowthLabel::LinearN];

    fn basis(self, big_n: f64) -> f64 {
        match self {
            GrowthLabel::Constant => 1.0,
            GrowthLabel::LogN => big_n.log2(),
            GrowthLabel::LinearN => big_n,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GrowthLabel::Constant => "constant",
            GrowthLabel::LogN => "log_N",
            GrowthLabel::LinearN => "linear_N",
        }
    }
}

impl fmt::Display for GrowthLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthClass {
    pub label: GrowthLabel,
    /// Sum of squared relative errors of the winning model.
    pub residual: f64,
    /// Fitted scale `a` of the winning model.
    pub scale: f64,
    /// Residuals of all three models, in `GrowthLabel::ALL` order.
    pub residuals: [f64; 3],
}

pub const MIN_GROWTH_POINTS: usize = 4;

/// Classify `(N, steps)` points as constant, `a·log2 N` or `a·N`.
///
/// Each model is fitted without intercept by minimizing the sum of squared
/// relative errors; the model with the smallest such residual wins, ties going
/// to the slower-growing model. Points with zero steps use an absolute error
/// for that point.
pub fn fit_growth(points: &[(u64, f64)]) -> Result<GrowthClass> {
    if points.len() < MIN_GROWTH_POINTS {
        return Err(Error::InsufficientData {
            needed: MIN_GROWTH_POINTS,
            got: points.len(),
        });
    }
    for w in points.windows(2) {
        if w[1].0 <= w[0].0 {
            return Err(Error::Argument(format!(
                "N values must be strictly increasing ({} then {})",
                w[0].0, w[1].0
            )));
        }
    }
    if let Some(&(n, _)) = points.iter().find(|(n, _)| !n.is_power_of_two()) {
        return Err(Error::Argument(format!("N = {n} is not a power of two")));
    }
    if let Some(&(_, s)) = points.iter().find(|(_, s)| !s.is_finite() || *s < 0.0) {
        return Err(Error::Argument(format!(
            "step count {s} is not a finite non-negative value"
        )));
    }

    let mut residuals = [0.0; 3];
    let mut scales = [0.0; 3];
    for (slot, label) in GrowthLabel::ALL.into_iter().enumerate() {
        // Minimize sum_i ((y_i - a g_i) / w_i)^2 over a.
        let (mut num, mut den) = (0.0, 0.0);
        for &(n, y) in points {
            let g = label.basis(n as f64);
            let w = if y > 0.0 { y } else { 1.0 };
            num += g * y / (w * w);
            den += g * g / (w * w);
        }
        let a = if den > 0.0 { num / den } else { 0.0 };
        let r: f64 = points
            .iter()
            .map(|&(n, y)| {
                let w = if y > 0.0 { y } else { 1.0 };
                let e = (y - a * label.basis(n as f64)) / w;
                e * e
            })
            .sum();
        residuals[slot] = r;
        scales[slot] = a;
    }

    let best = (0..3)
        .min_by(|&i, &j| residuals[i].total_cmp(&residuals[j]).then(i.cmp(&j)))
        .unwrap();
    Ok(GrowthClass {
        label: GrowthLabel::ALL[best],
        residual: residuals[best],
        scale: scales[best],
        residuals,
    })
}
