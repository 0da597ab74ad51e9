//! Threshold gates and depth-two circuits built from them.

use crate::bits::{BitVector, IndexSet};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Gate weights. The all-ones case is the overwhelmingly common one and is
/// stored without materializing a vector, so unit gates are O(1) to build
/// and clone no matter their fan-in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GateWeights {
    Unit,
    Custom(Arc<[u64]>),
}

/// A threshold function `[sum_j w_j * v(inputs_j) >= threshold]` with positive
/// integer weights.
///
/// The threshold is a signed integer: `threshold <= 0` gives the constant-1
/// gate and `threshold > fan-in` the constant-0 gate, both legal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThresholdGate {
    inputs: IndexSet,
    weights: GateWeights,
    threshold: i64,
}

impl ThresholdGate {
    /// Unweighted gate `[count of true inputs >= threshold]`.
    pub fn unit(inputs: IndexSet, threshold: i64) -> Self {
        ThresholdGate {
            inputs,
            weights: GateWeights::Unit,
            threshold,
        }
    }

    pub fn new(inputs: IndexSet, weights: Vec<u64>, threshold: i64) -> Result<Self> {
        if weights.len() != inputs.len() {
            return Err(Error::InvalidGate(format!(
                "{} weights for {} inputs",
                weights.len(),
                inputs.len()
            )));
        }
        if let Some(pos) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidGate(format!(
                "weight at position {pos} must be a positive integer"
            )));
        }
        if weights.iter().map(|&w| w as u128).sum::<u128>() > u64::MAX as u128 {
            return Err(Error::InvalidGate("total weight overflows u64".into()));
        }
        let weights = if weights.iter().all(|&w| w == 1) {
            GateWeights::Unit
        } else {
            GateWeights::Custom(weights.into())
        };
        Ok(ThresholdGate {
            inputs,
            weights,
            threshold,
        })
    }

    pub fn inputs(&self) -> &IndexSet {
        &self.inputs
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    /// Weight attached to the j-th input.
    pub fn weight(&self, j: usize) -> u64 {
        assert!(j < self.inputs.len(), "weight index {j} out of range");
        match &self.weights {
            GateWeights::Unit => 1,
            GateWeights::Custom(w) => w[j],
        }
    }

    pub fn weights(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.inputs.len()).map(move |j| self.weight(j))
    }

    pub fn has_unit_weights(&self) -> bool {
        matches!(self.weights, GateWeights::Unit)
    }

    /// Total weight, i.e. the gate's fan-in.
    pub fn fan_in(&self) -> u64 {
        match &self.weights {
            GateWeights::Unit => self.inputs.len() as u64,
            GateWeights::Custom(w) => w.iter().sum(),
        }
    }

    /// Applies the gate to a vector of input values.
    pub fn eval(&self, values: &BitVector) -> Result<bool> {
        if let Some(max) = self.inputs.max() {
            if max >= values.len() {
                return Err(Error::IndexOutOfRange {
                    index: max,
                    len: values.len(),
                });
            }
        }
        if self.threshold <= 0 {
            return Ok(true);
        }
        let sum: u128 = match &self.weights {
            GateWeights::Unit => self.inputs.iter().filter(|&i| values.get(i)).count() as u128,
            GateWeights::Custom(w) => self
                .inputs
                .iter()
                .zip(w.iter())
                .filter(|&(i, _)| values.get(i))
                .map(|(_, &w)| w as u128)
                .sum(),
        };
        Ok(sum >= self.threshold as u128)
    }
}

/// Two levels of threshold gates over n input bits: every `first_level` gate
/// reads input bits, the `output` gate reads first-level results. All fan-ins
/// are bounded by `declared_k`, checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthTwoCircuit {
    n: usize,
    first_level: Vec<ThresholdGate>,
    output: ThresholdGate,
    declared_k: u64,
}

impl DepthTwoCircuit {
    pub fn new(
        n: usize,
        first_level: Vec<ThresholdGate>,
        output: ThresholdGate,
        declared_k: u64,
    ) -> Result<Self> {
        for gate in &first_level {
            if let Some(max) = gate.inputs().max() {
                if max >= n {
                    return Err(Error::IndexOutOfRange { index: max, len: n });
                }
            }
        }
        if let Some(max) = output.inputs().max() {
            if max >= first_level.len() {
                return Err(Error::IndexOutOfRange {
                    index: max,
                    len: first_level.len(),
                });
            }
        }
        for gate in first_level.iter().chain(std::iter::once(&output)) {
            if gate.fan_in() > declared_k {
                return Err(Error::FanInExceeded {
                    fan_in: gate.fan_in(),
                    declared: declared_k,
                });
            }
        }
        Ok(DepthTwoCircuit {
            n,
            first_level,
            output,
            declared_k,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn first_level(&self) -> &[ThresholdGate] {
        &self.first_level
    }

    pub fn output(&self) -> &ThresholdGate {
        &self.output
    }

    pub fn declared_k(&self) -> u64 {
        self.declared_k
    }

    /// Number of first-level gates.
    pub fn gate_count(&self) -> usize {
        self.first_level.len()
    }

    /// Largest fan-in used anywhere in the circuit, output gate included.
    pub fn fan_in(&self) -> u64 {
        self.first_level
            .iter()
            .map(ThresholdGate::fan_in)
            .chain(std::iter::once(self.output.fan_in()))
            .max()
            .unwrap_or(0)
    }

    /// Evaluates the circuit on an assignment of its n inputs.
    pub fn eval(&self, x: &BitVector) -> Result<bool> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        let mut level = BitVector::zeros(self.first_level.len());
        for (j, gate) in self.first_level.iter().enumerate() {
            level.set(j, gate.eval(x)?);
        }
        self.output.eval(&level)
    }
}
