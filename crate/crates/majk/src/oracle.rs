//! Majority-query oracles: the honest one answering from a hidden assignment,
//! and the adversary that commits bits lazily while keeping every answer
//! consistent with two globally opposite completions for as long as possible.

use crate::bits::{BitVector, IndexSet};
use crate::error::{Error, Result};

/// One answered query. `threshold` is present only for adjustable-threshold
/// queries; fixed-threshold queries ask for the plain (inclusive-tie) majority.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryRecord {
    pub set: IndexSet,
    pub threshold: Option<i64>,
    pub answer: bool,
}

/// Query counter plus, when logging is enabled, the full query log.
/// Rejected queries are neither counted nor logged.
#[derive(Debug, Clone, Default)]
pub struct OracleStats {
    count: usize,
    log: Vec<QueryRecord>,
    logging: bool,
}

impl OracleStats {
    fn new(logging: bool) -> Self {
        OracleStats {
            count: 0,
            log: Vec::new(),
            logging,
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn log(&self) -> &[QueryRecord] {
        &self.log
    }

    fn record(&mut self, set: &IndexSet, threshold: Option<i64>, answer: bool) {
        self.count += 1;
        if self.logging {
            self.log.push(QueryRecord {
                set: set.clone(),
                threshold,
                answer,
            });
        }
    }
}

/// An oracle over n indexed bits that answers majority queries about sets of
/// at most `set_limit()` indices. Empty, oversized, or out-of-range sets are
/// rejected with an error and do not count as queries.
pub trait Oracle {
    fn input_len(&self) -> usize;
    fn set_limit(&self) -> usize;
    /// Inclusive-tie majority of the set.
    fn query_fixed(&mut self, set: &IndexSet) -> Result<bool>;
    /// `[number of ones in the set >= threshold]`.
    fn query_adjustable(&mut self, set: &IndexSet, threshold: i64) -> Result<bool>;
    fn stats(&self) -> &OracleStats;
    fn query_count(&self) -> usize {
        self.stats().count()
    }
}

fn check_query(set: &IndexSet, n: usize, k: usize) -> Result<()> {
    if set.is_empty() || set.len() > k {
        return Err(Error::QueryRejected {
            size: set.len(),
            limit: k,
        });
    }
    if let Some(max) = set.max() {
        if max >= n {
            return Err(Error::IndexOutOfRange { index: max, len: n });
        }
    }
    Ok(())
}

/// Answers every query truthfully from a hidden assignment.
#[derive(Debug, Clone)]
pub struct HonestOracle {
    hidden: BitVector,
    k: usize,
    stats: OracleStats,
}

impl HonestOracle {
    pub fn new(hidden: BitVector, k: usize) -> Result<Self> {
        Self::build(hidden, k, true)
    }

    /// Counter only, no per-query log; use for bulk sweeps.
    pub fn without_log(hidden: BitVector, k: usize) -> Result<Self> {
        Self::build(hidden, k, false)
    }

    fn build(hidden: BitVector, k: usize, logging: bool) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroArity);
        }
        Ok(HonestOracle {
            hidden,
            k,
            stats: OracleStats::new(logging),
        })
    }

    pub fn hidden(&self) -> &BitVector {
        &self.hidden
    }
}

impl Oracle for HonestOracle {
    fn input_len(&self) -> usize {
        self.hidden.len()
    }

    fn set_limit(&self) -> usize {
        self.k
    }

    fn stats(&self) -> &OracleStats {
        &self.stats
    }

    fn query_fixed(&mut self, set: &IndexSet) -> Result<bool> {
        check_query(set, self.hidden.len(), self.k)?;
        let answer = self.hidden.maj_set(set)?;
        self.stats.record(set, None, answer);
        Ok(answer)
    }

    fn query_adjustable(&mut self, set: &IndexSet, threshold: i64) -> Result<bool> {
        check_query(set, self.hidden.len(), self.k)?;
        let answer = self.hidden.maj_threshold(set, threshold)?;
        self.stats.record(set, Some(threshold), answer);
        Ok(answer)
    }
}

/// The lazily-committing adversary.
///
/// Bits are fixed only when a query first touches them, and each commitment
/// tops the touched set up to exactly `floor(touched/2)` ones (new ones go to
/// the lowest fresh indices). Since the touched set is always at most half
/// ones, extending the untouched rest by all zeros or by all ones yields two
/// full assignments that agree with every answer given so far -- and while
/// any index is untouched those two completions disagree on MAJ_n, so any
/// solver that stops early can be made wrong.
#[derive(Debug, Clone)]
pub struct AdversaryOracle {
    k: usize,
    assigned: Vec<Option<bool>>,
    touched: usize,
    ones: usize,
    stats: OracleStats,
}

impl AdversaryOracle {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        Self::build(n, k, true)
    }

    pub fn without_log(n: usize, k: usize) -> Result<Self> {
        Self::build(n, k, false)
    }

    fn build(n: usize, k: usize, logging: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        if k == 0 {
            return Err(Error::ZeroArity);
        }
        Ok(AdversaryOracle {
            k,
            assigned: vec![None; n],
            touched: 0,
            ones: 0,
            stats: OracleStats::new(logging),
        })
    }

    /// Number of bits committed so far.
    pub fn touched_count(&self) -> usize {
        self.touched
    }

    /// Number of committed ones; always exactly `floor(touched/2)`.
    pub fn assigned_ones(&self) -> usize {
        self.ones
    }

    /// The committed value of bit i, if any query has touched it.
    pub fn assigned(&self, i: usize) -> Option<bool> {
        self.assigned.get(i).copied().flatten()
    }

    fn commit(&mut self, set: &IndexSet) {
        let fresh: Vec<usize> = set.iter().filter(|&i| self.assigned[i].is_none()).collect();
        let target = (self.touched + fresh.len()) / 2;
        let new_ones = target - self.ones; // ones == floor(touched/2) <= target
        debug_assert!(new_ones <= fresh.len());
        for (pos, &i) in fresh.iter().enumerate() {
            self.assigned[i] = Some(pos < new_ones); // ones at the lowest fresh indices
        }
        self.touched += fresh.len();
        self.ones += new_ones;
        debug_assert_eq!(self.ones, self.touched / 2);
    }

    fn committed_sum(&self, set: &IndexSet) -> usize {
        set.iter()
            .filter(|&i| self.assigned[i] == Some(true))
            .count()
    }

    /// The two full assignments extending the committed bits by all zeros
    /// and by all ones respectively.
    pub fn completions(&self) -> (BitVector, BitVector) {
        let n = self.assigned.len();
        let mut zeros = BitVector::zeros(n);
        let mut ones = BitVector::zeros(n);
        for (i, bit) in self.assigned.iter().enumerate() {
            match bit {
                Some(b) => {
                    zeros.set(i, *b);
                    ones.set(i, *b);
                }
                None => ones.set(i, true),
            }
        }
        (zeros, ones)
    }

    /// True while the two completions still disagree on MAJ_n, i.e. while the
    /// answers given so far do not determine the overall majority.
    pub fn is_ambiguous(&self) -> bool {
        let (zeros, ones) = self.completions();
        zeros.majority() != ones.majority()
    }
}

impl Oracle for AdversaryOracle {
    fn input_len(&self) -> usize {
        self.assigned.len()
    }

    fn set_limit(&self) -> usize {
        self.k
    }

    fn stats(&self) -> &OracleStats {
        &self.stats
    }

    fn query_fixed(&mut self, set: &IndexSet) -> Result<bool> {
        check_query(set, self.assigned.len(), self.k)?;
        self.commit(set);
        let answer = 2 * self.committed_sum(set) >= set.len();
        self.stats.record(set, None, answer);
        Ok(answer)
    }

    fn query_adjustable(&mut self, set: &IndexSet, threshold: i64) -> Result<bool> {
        check_query(set, self.assigned.len(), self.k)?;
        self.commit(set);
        let answer = self.committed_sum(set) as i64 >= threshold;
        self.stats.record(set, Some(threshold), answer);
        Ok(answer)
    }
}
