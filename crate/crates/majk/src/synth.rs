//! Circuit constructions for MAJ_n, exhaustive equivalence checking, and
//! boundary-edge counting on the hypercube.

use crate::bits::{BitVector, IndexSet};
use crate::circuit::{DepthTwoCircuit, ThresholdGate};
use crate::error::{Error, Result};

/// Exact ceiling of a/b for positive b, correct for negative a too.
fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    (a + b - 1).div_euclid(b)
}

/// Default cap on exhaustive verification: at most 2^24 evaluations.
pub const DEFAULT_VERIFY_LIMIT: usize = 24;

/// Builds a depth-two circuit computing MAJ_n in which every gate, the output
/// included, has fan-in at most floor(2n/3) + 4.
///
/// Shape: the s lowest-indexed inputs feed singleton gates (s is about n/3,
/// adjusted by n mod 3), and a ladder of s+1 gates tests the remaining n-s
/// inputs against consecutive thresholds, so the number of ladder gates that
/// fire encodes their total, clipped to a window around half. A plain
/// majority over all 2s+1 first-level gates finishes the job.
pub fn synthesize(n: usize) -> Result<DepthTwoCircuit> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    let m = (n / 3) as i64;
    let (singles, ladder_base) = match n % 3 {
        0 => (n / 3, ceil_div(n as i64, 6)),
        1 => (n / 3 + 1, ceil_div(m - 1, 2)),
        _ => (n / 3 + 2, ceil_div(m - 2, 2)),
    };
    let mut first = Vec::with_capacity(2 * singles + 1);
    for i in 0..singles {
        first.push(ThresholdGate::unit(IndexSet::singleton(i), 1));
    }
    let block = IndexSet::range(singles..n);
    for j in 0..=singles as i64 {
        first.push(ThresholdGate::unit(block.clone(), ladder_base + j));
    }
    let g = first.len();
    debug_assert_eq!(g, 2 * singles + 1);
    let output = ThresholdGate::unit(IndexSet::range(0..g), (g as i64 + 1) / 2);
    DepthTwoCircuit::new(n, first, output, g as u64)
}

/// The baseline construction: one singleton gate per input, finished by a
/// single majority gate of fan-in n.
pub fn trivial_circuit(n: usize) -> Result<DepthTwoCircuit> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    let first = (0..n)
        .map(|i| ThresholdGate::unit(IndexSet::singleton(i), 1))
        .collect();
    let output = ThresholdGate::unit(IndexSet::range(0..n), ceil_div(n as i64, 2));
    DepthTwoCircuit::new(n, first, output, n as u64)
}

/// Result of an exhaustive equivalence check against MAJ_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    Equivalent,
    /// The lexicographically first input on which the circuit disagrees
    /// with MAJ_n.
    Counterexample(BitVector),
}

/// Compares a circuit against MAJ_n on all 2^n inputs, in lexicographic
/// bitstring order. Refuses circuits with more than `limit_n` inputs.
pub fn verify_exhaustive(circuit: &DepthTwoCircuit, limit_n: usize) -> Result<VerifyOutcome> {
    let n = circuit.n();
    if n > limit_n {
        return Err(Error::DomainTooLarge { n, limit: limit_n });
    }
    if n >= 64 {
        return Err(Error::DomainTooLarge { n, limit: 63 });
    }

    let unit_only = circuit
        .first_level()
        .iter()
        .chain(std::iter::once(circuit.output()))
        .all(ThresholdGate::has_unit_weights);
    if unit_only && circuit.gate_count() <= 64 {
        return Ok(verify_unit_fast(circuit, n));
    }

    let mut x = BitVector::zeros(n);
    for rank in 0..1u64 << n {
        for i in 0..n {
            x.set(i, (rank >> (n - 1 - i)) & 1 == 1);
        }
        let expected = 2 * x.count_ones() >= n;
        if circuit.eval(&x).expect("validated circuit evaluates") != expected {
            return Ok(VerifyOutcome::Counterexample(x));
        }
    }
    Ok(VerifyOutcome::Equivalent)
}

/// Fast path for unit-weight circuits: each gate becomes a popcount over a
/// precomputed input mask. Bit n-1-i of the enumeration word holds x_i, so
/// the word's numeric order is the lexicographic order of bitstrings.
fn verify_unit_fast(circuit: &DepthTwoCircuit, n: usize) -> VerifyOutcome {
    let mask_of = |set: &IndexSet| -> u64 { set.iter().fold(0u64, |m, i| m | 1 << (n - 1 - i)) };
    let gates: Vec<(u64, i64)> = circuit
        .first_level()
        .iter()
        .map(|g| (mask_of(g.inputs()), g.threshold()))
        .collect();
    let out_mask: u64 = circuit.output().inputs().iter().fold(0, |m, j| m | 1 << j);
    let out_threshold = circuit.output().threshold();

    for v in 0..1u64 << n {
        let mut level = 0u64;
        for (j, &(mask, threshold)) in gates.iter().enumerate() {
            if (v & mask).count_ones() as i64 >= threshold {
                level |= 1 << j;
            }
        }
        let circ = (level & out_mask).count_ones() as i64 >= out_threshold;
        let expected = 2 * v.count_ones() as usize >= n;
        if circ != expected {
            return VerifyOutcome::Counterexample(BitVector::from_lex_rank(n, v));
        }
    }
    VerifyOutcome::Equivalent
}

/// Counts the unordered hypercube edges (x, x xor e_i) on which f changes
/// value. `table[v]` is f at the assignment whose bit i equals `(v >> i) & 1`.
pub fn boundary_edges(table: &[bool], n: usize) -> Result<u64> {
    if n > 20 {
        return Err(Error::DomainTooLarge { n, limit: 20 });
    }
    let expected = 1usize << n;
    if table.len() != expected {
        return Err(Error::TruthTableSize {
            expected,
            actual: table.len(),
        });
    }
    let mut count = 0u64;
    for v in 0..expected {
        for i in 0..n {
            let w = v | (1 << i);
            // visit each edge once, from its lower endpoint
            if w != v && table[v] != table[w] {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Truth table of MAJ_n in the indexing convention of [`boundary_edges`].
pub fn majority_truth_table(n: usize) -> Result<Vec<bool>> {
    if n > 20 {
        return Err(Error::DomainTooLarge { n, limit: 20 });
    }
    Ok((0..1usize << n)
        .map(|v| 2 * (v.count_ones() as usize) >= n)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn thresholds(c: &DepthTwoCircuit) -> Vec<i64> {
        c.first_level()
            .iter()
            .map(ThresholdGate::threshold)
            .collect()
    }

    #[test]
    fn synthesize_multiple_of_three() {
        let c = synthesize(6).unwrap();
        assert_eq!(c.gate_count(), 5);
        assert_eq!(c.declared_k(), 5);
        assert_eq!(c.fan_in(), 5);
        assert_eq!(thresholds(&c), vec![1, 1, 1, 2, 3]); // two singletons, ladder 1..3
        assert_eq!(c.output().threshold(), 3);
        assert_eq!(c.first_level()[2].inputs().as_slice(), &[2, 3, 4, 5]);
        assert!(!c
            .eval(&BitVector::from_bitstring("000000").unwrap())
            .unwrap());
        assert!(c
            .eval(&BitVector::from_bitstring("111111").unwrap())
            .unwrap());
        assert!(c
            .eval(&BitVector::from_bitstring("011010").unwrap())
            .unwrap()); // tie, 3 ones
    }

    #[test]
    fn synthesize_one_mod_three() {
        let c = synthesize(4).unwrap();
        assert_eq!(c.gate_count(), 5);
        assert_eq!(c.declared_k(), 5);
        assert_eq!(thresholds(&c), vec![1, 1, 0, 1, 2]); // ladder base 0
        assert_eq!(c.output().threshold(), 3);
        assert_eq!(c.first_level()[2].inputs().as_slice(), &[2, 3]);
    }

    #[test]
    fn synthesize_two_mod_three() {
        let c = synthesize(5).unwrap();
        assert_eq!(c.gate_count(), 7);
        assert_eq!(c.declared_k(), 7);
        assert_eq!(c.fan_in(), 7);
        let c2 = synthesize(2).unwrap();
        // m = 0 gives a ladder over the empty block with a constant-true gate
        assert_eq!(thresholds(&c2), vec![1, 1, -1, 0, 1]);
        assert!(!c2.eval(&BitVector::from_bitstring("00").unwrap()).unwrap());
        assert!(c2.eval(&BitVector::from_bitstring("01").unwrap()).unwrap());
    }

    #[test]
    fn synthesize_single_input_is_identity() {
        let c = synthesize(1).unwrap();
        assert_eq!(c.gate_count(), 3);
        assert!(!c.eval(&BitVector::from_bitstring("0").unwrap()).unwrap());
        assert!(c.eval(&BitVector::from_bitstring("1").unwrap()).unwrap());
    }

    #[test]
    fn trivial_circuit_shape() {
        let c = trivial_circuit(4).unwrap();
        assert_eq!(c.gate_count(), 4);
        assert_eq!(c.fan_in(), 4);
        assert_eq!(c.declared_k(), 4);
        assert_eq!(c.output().threshold(), 2);
        assert!(c.eval(&BitVector::from_bitstring("0110").unwrap()).unwrap());
        assert!(trivial_circuit(0).is_err());
        assert!(synthesize(0).is_err());
    }

    #[test]
    fn both_constructions_equivalent_up_to_twelve() {
        for n in 1..=12 {
            for c in [synthesize(n).unwrap(), trivial_circuit(n).unwrap()] {
                assert_eq!(
                    verify_exhaustive(&c, DEFAULT_VERIFY_LIMIT).unwrap(),
                    VerifyOutcome::Equivalent,
                    "n = {n}"
                );
            }
        }
    }

    #[test]
    fn fast_and_slow_verify_agree() {
        // A weighted circuit takes the generic path; check it against the
        // unit-weight equivalent which takes the popcount path.
        let weighted = DepthTwoCircuit::new(
            3,
            vec![ThresholdGate::new(IndexSet::range(0..3), vec![2, 2, 2], 4).unwrap()],
            ThresholdGate::unit(IndexSet::range(0..1), 1),
            6,
        )
        .unwrap();
        assert_eq!(
            verify_exhaustive(&weighted, 24).unwrap(),
            VerifyOutcome::Equivalent
        );
    }

    #[test]
    fn tampered_circuit_yields_counterexample() {
        let good = synthesize(6).unwrap();
        let tampered = DepthTwoCircuit::new(
            6,
            good.first_level().to_vec(),
            ThresholdGate::unit(
                good.output().inputs().clone(),
                good.output().threshold() + 1,
            ),
            good.declared_k(),
        )
        .unwrap();
        match verify_exhaustive(&tampered, 24).unwrap() {
            VerifyOutcome::Counterexample(x) => {
                // Raising the output threshold rejects some 3-ones input.
                assert_eq!(x.count_ones(), 3);
                assert!(x.majority());
                assert!(!tampered.eval(&x).unwrap());
            }
            VerifyOutcome::Equivalent => panic!("tampered circuit verified"),
        }
    }

    #[test]
    fn verify_respects_limit() {
        let c = synthesize(10).unwrap();
        assert_eq!(
            verify_exhaustive(&c, 8),
            Err(Error::DomainTooLarge { n: 10, limit: 8 })
        );
    }

    #[test]
    fn fan_in_bound_holds_widely() {
        for n in 1..=500 {
            let c = synthesize(n).unwrap();
            assert!(c.fan_in() as usize <= 2 * n / 3 + 4, "n = {n}");
            let m = n / 3;
            let expected = match n % 3 {
                0 => 2 * m + 1,
                1 => 2 * m + 3,
                _ => 2 * m + 5,
            };
            assert_eq!(c.fan_in() as usize, expected, "n = {n}");
            assert_eq!(c.gate_count(), expected, "n = {n}");
        }
    }

    #[test]
    fn boundary_edges_examples() {
        // MAJ_1 = x0: one edge.
        assert_eq!(
            boundary_edges(&majority_truth_table(1).unwrap(), 1).unwrap(),
            1
        );
        // Constant functions have no boundary.
        assert_eq!(boundary_edges(&[true; 16], 4).unwrap(), 0);
        // MAJ_3: independently, the boundary consists of edges between weight-1
        // and weight-2 vectors, of which there are 3 * 2 = 6.
        assert_eq!(
            boundary_edges(&majority_truth_table(3).unwrap(), 3).unwrap(),
            6
        );
    }

    #[test]
    fn boundary_edges_validation() {
        assert_eq!(
            boundary_edges(&[true, false], 2),
            Err(Error::TruthTableSize {
                expected: 4,
                actual: 2
            })
        );
        assert!(matches!(
            majority_truth_table(21),
            Err(Error::DomainTooLarge { .. })
        ));
    }
}
