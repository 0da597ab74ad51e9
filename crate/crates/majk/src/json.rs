//! Circuit serialization: a small explicit JSON schema,
//! `{"n", "k", "gates": [{"inputs", "weights", "threshold"}, ..], "output": {..}}`.
//!
//! Parsing is strict: unknown or missing fields, zero weights, unsorted
//! inputs, out-of-range indices, and fan-ins above k are all rejected with
//! errors naming the offending field.

use crate::bits::IndexSet;
use crate::circuit::{DepthTwoCircuit, ThresholdGate};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateDoc {
    inputs: Vec<usize>,
    weights: Vec<u64>,
    threshold: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitDoc {
    n: usize,
    k: u64,
    gates: Vec<GateDoc>,
    output: GateDoc,
}

fn gate_doc(gate: &ThresholdGate) -> GateDoc {
    GateDoc {
        inputs: gate.inputs().iter().collect(),
        weights: gate.weights().collect(),
        threshold: gate.threshold(),
    }
}

/// Serializes a circuit into the schema above (pretty-printed). Weights are
/// always written out explicitly, unit or not.
pub fn circuit_to_json(circuit: &DepthTwoCircuit) -> String {
    let doc = CircuitDoc {
        n: circuit.n(),
        k: circuit.declared_k(),
        gates: circuit.first_level().iter().map(gate_doc).collect(),
        output: gate_doc(circuit.output()),
    };
    serde_json::to_string_pretty(&doc).expect("circuit serialization cannot fail")
}

fn schema_err(field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        field: field.into(),
        message: message.into(),
    }
}

fn gate_from_doc(doc: &GateDoc, field: &str, input_len: usize, k: u64) -> Result<ThresholdGate> {
    if doc.weights.len() != doc.inputs.len() {
        return Err(schema_err(
            format!("{field}.weights"),
            format!(
                "{} weights for {} inputs",
                doc.weights.len(),
                doc.inputs.len()
            ),
        ));
    }
    if let Some(j) = doc.weights.iter().position(|&w| w == 0) {
        return Err(schema_err(
            format!("{field}.weights[{j}]"),
            "weights must be positive integers",
        ));
    }
    let inputs = IndexSet::new(doc.inputs.clone()).map_err(|_| {
        schema_err(
            format!("{field}.inputs"),
            "indices must be strictly increasing",
        )
    })?;
    if let Some(max) = inputs.max() {
        if max >= input_len {
            return Err(schema_err(
                format!("{field}.inputs"),
                format!("index {max} out of range (must be below {input_len})"),
            ));
        }
    }
    let gate = ThresholdGate::new(inputs, doc.weights.clone(), doc.threshold)
        .map_err(|e| schema_err(field, e.to_string()))?;
    if gate.fan_in() > k {
        return Err(schema_err(
            field,
            format!("fan-in {} exceeds k = {k}", gate.fan_in()),
        ));
    }
    Ok(gate)
}

/// Parses and validates a circuit document.
pub fn circuit_from_json(text: &str) -> Result<DepthTwoCircuit> {
    let doc: CircuitDoc = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let mut gates = Vec::with_capacity(doc.gates.len());
    for (i, gate_doc) in doc.gates.iter().enumerate() {
        gates.push(gate_from_doc(
            gate_doc,
            &format!("gates[{i}]"),
            doc.n,
            doc.k,
        )?);
    }
    let output = gate_from_doc(&doc.output, "output", gates.len(), doc.k)?;
    DepthTwoCircuit::new(doc.n, gates, output, doc.k).map_err(|e| Error::Json(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{synthesize, trivial_circuit};

    #[test]
    fn round_trip_preserves_circuits() {
        for n in 1..=60 {
            for circuit in [synthesize(n).unwrap(), trivial_circuit(n).unwrap()] {
                let parsed = circuit_from_json(&circuit_to_json(&circuit)).unwrap();
                assert_eq!(parsed, circuit, "n = {n}");
            }
        }
    }

    #[test]
    fn round_trip_preserves_weighted_gates() {
        let gate = ThresholdGate::new(IndexSet::range(0..3), vec![2, 1, 3], 4).unwrap();
        let out = ThresholdGate::unit(IndexSet::range(0..1), 1);
        let circuit = DepthTwoCircuit::new(3, vec![gate], out, 6).unwrap();
        let parsed = circuit_from_json(&circuit_to_json(&circuit)).unwrap();
        assert_eq!(parsed, circuit);
    }

    #[test]
    fn zero_weight_error_names_the_field() {
        let text = r#"{
            "n": 2, "k": 2,
            "gates": [{"inputs": [0, 1], "weights": [1, 0], "threshold": 1}],
            "output": {"inputs": [0], "weights": [1], "threshold": 1}
        }"#;
        match circuit_from_json(text) {
            Err(Error::Schema { field, .. }) => assert_eq!(field, "gates[0].weights[1]"),
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn out_of_range_and_unsorted_inputs_are_rejected() {
        let bad_range = r#"{
            "n": 2, "k": 3,
            "gates": [{"inputs": [0, 2], "weights": [1, 1], "threshold": 1}],
            "output": {"inputs": [0], "weights": [1], "threshold": 1}
        }"#;
        match circuit_from_json(bad_range) {
            Err(Error::Schema { field, .. }) => assert_eq!(field, "gates[0].inputs"),
            other => panic!("expected schema error, got {other:?}"),
        }

        let unsorted = r#"{
            "n": 3, "k": 3,
            "gates": [{"inputs": [1, 0], "weights": [1, 1], "threshold": 1}],
            "output": {"inputs": [0], "weights": [1], "threshold": 1}
        }"#;
        match circuit_from_json(unsorted) {
            Err(Error::Schema { field, .. }) => assert_eq!(field, "gates[0].inputs"),
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn fan_in_above_k_is_rejected() {
        let text = r#"{
            "n": 3, "k": 2,
            "gates": [{"inputs": [0, 1, 2], "weights": [1, 1, 1], "threshold": 2}],
            "output": {"inputs": [0], "weights": [1], "threshold": 1}
        }"#;
        match circuit_from_json(text) {
            Err(Error::Schema { field, message }) => {
                assert_eq!(field, "gates[0]");
                assert!(message.contains("fan-in 3"));
            }
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_and_missing_fields_are_rejected() {
        let unknown = r#"{
            "n": 1, "k": 1, "extra": true,
            "gates": [{"inputs": [0], "weights": [1], "threshold": 1}],
            "output": {"inputs": [0], "weights": [1], "threshold": 1}
        }"#;
        match circuit_from_json(unknown) {
            Err(Error::Json(msg)) => assert!(msg.contains("extra"), "{msg}"),
            other => panic!("expected json error, got {other:?}"),
        }

        let missing = r#"{"n": 1, "k": 1, "gates": []}"#;
        match circuit_from_json(missing) {
            Err(Error::Json(msg)) => assert!(msg.contains("output"), "{msg}"),
            other => panic!("expected json error, got {other:?}"),
        }
    }

    #[test]
    fn output_wiring_is_validated() {
        // output reads gate 1, but there is only gate 0
        let text = r#"{
            "n": 1, "k": 1,
            "gates": [{"inputs": [0], "weights": [1], "threshold": 1}],
            "output": {"inputs": [1], "weights": [1], "threshold": 1}
        }"#;
        match circuit_from_json(text) {
            Err(Error::Schema { field, .. }) => assert_eq!(field, "output.inputs"),
            other => panic!("expected schema error, got {other:?}"),
        }
    }
}
