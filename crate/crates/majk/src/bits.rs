//! Bit vectors and index sets, the two ground types everything else builds on.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// An assignment x in {0,1}^n, indexed 0..n-1.
///
/// Displayed and parsed as a bitstring whose leftmost character is `x_0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Parses a string of `0`/`1` characters; the leftmost character is `x_0`.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let mut v = Self::zeros(s.chars().count());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                _ => {
                    return Err(Error::BadBitChar {
                        position: i,
                        found: ch,
                    })
                }
            }
        }
        Ok(v)
    }

    /// The `rank`-th vector of length `len` in lexicographic bitstring order:
    /// rank 0 is all zeros, rank 2^len - 1 is all ones.
    pub fn from_lex_rank(len: usize, rank: u64) -> Self {
        assert!(
            len <= 64,
            "lexicographic ranks are only defined up to length 64"
        );
        let mut v = Self::zeros(len);
        for i in 0..len {
            if (rank >> (len - 1 - i)) & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let (w, b) = (i / 64, i % 64);
        if value {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Number of ones of x inside `set`.
    pub fn sum_set(&self, set: &IndexSet) -> Result<usize> {
        if let Some(max) = set.max() {
            if max >= self.len {
                return Err(Error::IndexOutOfRange {
                    index: max,
                    len: self.len,
                });
            }
        }
        Ok(set.iter().filter(|&i| self.get(i)).count())
    }

    /// MAJ_n(x): 1 iff at least half of all bits are 1. The tie at exactly
    /// n/2 ones counts as 1, and the empty vector has majority 1.
    pub fn majority(&self) -> bool {
        2 * self.count_ones() >= self.len
    }

    /// Majority restricted to `set`, with the same inclusive tie rule.
    pub fn maj_set(&self, set: &IndexSet) -> Result<bool> {
        Ok(2 * self.sum_set(set)? >= set.len())
    }

    /// Thresholded count over `set`: 1 iff at least `threshold` of the
    /// selected bits are 1. Any integer threshold is legal.
    pub fn maj_threshold(&self, set: &IndexSet, threshold: i64) -> Result<bool> {
        Ok(self.sum_set(set)? as i64 >= threshold)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A strictly increasing set of indices into an ambient vector.
///
/// Clones are O(1): the index list is shared, never mutated in place.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    indices: Arc<[usize]>,
}

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet {
            indices: Arc::from(Vec::new()),
        }
    }

    pub fn singleton(i: usize) -> Self {
        IndexSet {
            indices: Arc::from(vec![i]),
        }
    }

    pub fn range(r: std::ops::Range<usize>) -> Self {
        IndexSet {
            indices: r.collect(),
        }
    }

    /// Requires strictly increasing indices.
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if let Some(w) = indices.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndexSet(format!(
                "indices must be strictly increasing, found {} before {}",
                w[0], w[1]
            )));
        }
        Ok(IndexSet {
            indices: indices.into(),
        })
    }

    /// Sorts the input first; duplicate indices are rejected.
    pub fn from_unsorted(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        Self::new(indices)
    }

    fn from_sorted(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        IndexSet {
            indices: indices.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn min(&self) -> Option<usize> {
        self.indices.first().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.indices.last().copied()
    }

    /// Merged set; indices present in both appear once.
    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let (mut a, mut b) = (self.iter().peekable(), other.iter().peekable());
        let mut out = Vec::with_capacity(self.len() + other.len());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&x), Some(&y)) => {
                    if x < y {
                        out.push(x);
                        a.next();
                    } else if y < x {
                        out.push(y);
                        b.next();
                    } else {
                        out.push(x);
                        a.next();
                        b.next();
                    }
                }
                (Some(_), None) => {
                    out.extend(a.by_ref());
                }
                (None, Some(_)) => {
                    out.extend(b.by_ref());
                }
                (None, None) => break,
            }
        }
        IndexSet::from_sorted(out)
    }

    /// Indices of `self` that are not in `other`.
    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        IndexSet::from_sorted(self.iter().filter(|&i| !other.contains(i)).collect())
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        self.iter().all(|i| !other.contains(i))
    }

    /// Everything but the largest index; the empty set maps to itself.
    pub fn without_max(&self) -> IndexSet {
        match self.indices.split_last() {
            Some((_, rest)) => IndexSet::from_sorted(rest.to_vec()),
            None => IndexSet::empty(),
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (pos, i) in self.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn majority_examples() {
        for (s, expect) in [
            ("0011", true),  // tie 2 of 4
            ("0001", false), // 1 of 4
            ("1", true),
            ("0", false),
            ("10110", true),  // 3 of 5
            ("10100", false), // 2 of 5
        ] {
            assert_eq!(
                BitVector::from_bitstring(s).unwrap().majority(),
                expect,
                "{s}"
            );
        }
        assert!(BitVector::zeros(0).majority(), "empty majority is 1");
    }

    #[test]
    fn threshold_examples() {
        let x = BitVector::from_bitstring("10010").unwrap();
        let s = IndexSet::new(vec![0, 3, 4]).unwrap();
        assert!(!x.maj_threshold(&s, 3).unwrap()); // sum = 2
        assert!(x.maj_threshold(&s, 2).unwrap());
        assert!(x.maj_threshold(&s, 0).unwrap()); // trivially true
        assert!(x.maj_threshold(&s, -5).unwrap());
        assert!(!x.maj_threshold(&s, 4).unwrap()); // above the set size
        assert!(x.maj_set(&s).unwrap()); // 2 of 3
    }

    #[test]
    fn maj_empty_set_is_true() {
        let x = BitVector::from_bitstring("000").unwrap();
        assert!(x.maj_set(&IndexSet::empty()).unwrap());
        assert!(x.maj_threshold(&IndexSet::empty(), 0).unwrap());
        assert!(!x.maj_threshold(&IndexSet::empty(), 1).unwrap());
    }

    #[test]
    fn sum_set_checks_range() {
        let x = BitVector::from_bitstring("101").unwrap();
        let s = IndexSet::new(vec![1, 3]).unwrap();
        assert_eq!(
            x.sum_set(&s),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        );
    }

    #[test]
    fn bitstring_round_trip_and_errors() {
        for s in ["", "0", "1", "0110", "111000111"] {
            assert_eq!(BitVector::from_bitstring(s).unwrap().to_string(), s);
        }
        assert_eq!(
            BitVector::from_bitstring("01x1"),
            Err(Error::BadBitChar {
                position: 2,
                found: 'x'
            })
        );
    }

    #[test]
    fn lex_rank_orders_bitstrings() {
        let n = 4;
        let strings: Vec<String> = (0..1u64 << n)
            .map(|r| BitVector::from_lex_rank(n, r).to_string())
            .collect();
        let mut sorted = strings.clone();
        sorted.sort();
        assert_eq!(strings, sorted);
        assert_eq!(strings[0], "0000");
        assert_eq!(strings[6], "0110");
        assert_eq!(strings[15], "1111");
    }

    #[test]
    fn index_set_validation() {
        assert!(IndexSet::new(vec![0, 1, 5]).is_ok());
        assert!(IndexSet::new(vec![1, 1]).is_err());
        assert!(IndexSet::new(vec![2, 1]).is_err());
        assert!(IndexSet::from_unsorted(vec![5, 1, 0]).is_ok());
        assert!(IndexSet::from_unsorted(vec![5, 1, 5]).is_err());
    }

    #[test]
    fn index_set_algebra() {
        let a = IndexSet::new(vec![0, 2, 4]).unwrap();
        let b = IndexSet::new(vec![1, 2, 5]).unwrap();
        assert_eq!(a.union(&b).as_slice(), &[0, 1, 2, 4, 5]);
        assert_eq!(a.difference(&b).as_slice(), &[0, 4]);
        assert!(!a.is_disjoint(&b));
        assert!(a.is_disjoint(&IndexSet::new(vec![1, 3]).unwrap()));
        assert_eq!(a.without_max().as_slice(), &[0, 2]);
        assert_eq!(IndexSet::empty().without_max(), IndexSet::empty());
        assert_eq!(a.to_string(), "{0,2,4}");
    }

    proptest! {
        // MAJ_n agrees with the thresholded form at t = ceil(n/2) on every input.
        #[test]
        fn majority_matches_half_threshold(bits in proptest::collection::vec(any::<bool>(), 1..80)) {
            let x = BitVector::from_bools(&bits);
            let all = IndexSet::range(0..bits.len());
            let t = (bits.len() as i64 + 1) / 2;
            // inclusive tie: 2*sum >= n  <=>  sum >= ceil(n/2)
            prop_assert_eq!(x.majority(), x.maj_threshold(&all, t).unwrap());
        }

        #[test]
        fn union_difference_partition(a in proptest::collection::btree_set(0usize..40, 0..20),
                                      b in proptest::collection::btree_set(0usize..40, 0..20)) {
            let sa = IndexSet::new(a.iter().copied().collect()).unwrap();
            let sb = IndexSet::new(b.iter().copied().collect()).unwrap();
            let u = sa.union(&sb);
            let d = sa.difference(&sb);
            prop_assert_eq!(u.len(), a.union(&b).count());
            prop_assert_eq!(d.len(), a.difference(&b).count());
            prop_assert!(d.is_disjoint(&sb));
        }
    }
}
