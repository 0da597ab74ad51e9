//! Adaptive query algorithms shared by both solver models: block
//! partitioning, exact block sums by binary search on the threshold, and
//! balanced-set extraction from two opposite-majority blocks.

use crate::bits::IndexSet;
use crate::error::{Error, Result};
use crate::oracle::Oracle;

/// ceil(log2(x)) for x >= 1.
pub fn ceil_log2(x: u64) -> u32 {
    assert!(x >= 1, "ceil_log2 requires a positive argument");
    x.next_power_of_two().trailing_zeros()
}

/// What a solver run produced: the majority answer, the exact number of
/// oracle queries consumed, the query bound for this (n, k) when one is
/// defined, and an optional step-by-step trace.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub answer: bool,
    pub queries: usize,
    pub bound: Option<f64>,
    pub trace: Option<Vec<String>>,
}

/// ceil(n/k) * ceil(log2(k+1)), the adjustable-threshold query bound.
pub fn adjustable_query_bound(n: usize, k: usize) -> u64 {
    assert!(k >= 1);
    n.div_ceil(k) as u64 * ceil_log2(k as u64 + 1) as u64
}

/// 2 * (n/(k-4) + 1) * (log2(k) + 4), the fixed-threshold query bound,
/// defined only for k >= 5.
pub fn fixed_query_bound(n: usize, k: usize) -> Option<f64> {
    (k >= 5).then(|| {
        let (n, k) = (n as f64, k as f64);
        2.0 * (n / (k - 4.0) + 1.0) * (k.log2() + 4.0)
    })
}

/// Splits 0..n into r = ceil(n/k) contiguous blocks whose sizes differ by at
/// most one: with l = ceil(n/r), the first n - r*(l-1) blocks have size l and
/// the rest size l-1. Every block size is between 1 and k.
pub fn block_partition(n: usize, k: usize) -> Result<Vec<IndexSet>> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::BadPartition { n, k });
    }
    let r = n.div_ceil(k);
    let l = n.div_ceil(r);
    let large = n - r * (l - 1);
    let mut blocks = Vec::with_capacity(r);
    let mut start = 0;
    for i in 0..r {
        let size = if i < large { l } else { l - 1 };
        blocks.push(IndexSet::range(start..start + size));
        start += size;
    }
    debug_assert_eq!(start, n);
    Ok(blocks)
}

/// Computes MAJ_n by learning each block's exact ones-count with a binary
/// search over the adjustable threshold, then comparing the grand total
/// against n/2. Uses at most ceil(n/k) * ceil(log2(k+1)) queries.
pub fn solve_adjustable<O: Oracle + ?Sized>(
    oracle: &mut O,
    n: usize,
    k: usize,
) -> Result<SolveReport> {
    solve_adjustable_impl(oracle, n, k, false)
}

/// [`solve_adjustable`] with a per-block trace in the report.
pub fn solve_adjustable_traced<O: Oracle + ?Sized>(
    oracle: &mut O,
    n: usize,
    k: usize,
) -> Result<SolveReport> {
    solve_adjustable_impl(oracle, n, k, true)
}

fn solve_adjustable_impl<O: Oracle + ?Sized>(
    oracle: &mut O,
    n: usize,
    k: usize,
    traced: bool,
) -> Result<SolveReport> {
    let start = oracle.query_count();
    let blocks = block_partition(n, k)?;
    let mut trace = traced.then(Vec::new);
    let mut total = 0usize;
    for block in &blocks {
        // sum of the block lies in [0, |B|]; the answers at thresholds 0
        // (always 1) and |B|+1 (always 0) are known for free, so only
        // midpoints strictly inside the bracket are ever queried.
        let mut lo = 0i64;
        let mut hi = block.len() as i64 + 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if oracle.query_adjustable(block, mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        total += lo as usize;
        if let Some(t) = trace.as_mut() {
            t.push(format!("block {block}: sum = {lo}"));
        }
    }
    let answer = 2 * total >= n;
    Ok(SolveReport {
        answer,
        queries: oracle.query_count() - start,
        bound: Some(adjustable_query_bound(n, k) as f64),
        trace,
    })
}

/// Extracts an exactly balanced index set (as many ones as zeros) from two
/// disjoint equal-size sets with opposite, already-known majorities, using at
/// most ceil(log2(|A|+1)) fixed-threshold queries.
///
/// Writing the positions of A then B as one sequence i(1)..i(2c) and f(m) for
/// the majority of the window {i(m),..,i(m+c-1)}, consecutive windows differ
/// in one element, f(1) = maj_a and f(c+1) = maj_b, so a binary search over
/// m in [1, c+1] (never querying the two known endpoints) finds h with
/// f(h) = maj_a != f(h+1). Shifting the window one step past h flips the
/// majority even though only x[i(h)] left and x[i(h+c)] entered, which pins
/// x[i(h)] = maj_a, x[i(h+c)] = maj_b, and the window sums on both sides of
/// the relevant tie. The returned set is:
///   - even c: the window at h if maj_a = 1, else the window at h+1 (size c);
///   - odd c, standard: the c-1 shared positions strictly between i(h) and
///     i(h+c) (size c-1; empty when c = 1);
///   - odd c, `prefer_large`: those positions plus both endpoints (size c+1).
pub fn find_balanced_set<O: Oracle + ?Sized>(
    oracle: &mut O,
    a: &IndexSet,
    b: &IndexSet,
    maj_a: bool,
    maj_b: bool,
    prefer_large: bool,
) -> Result<IndexSet> {
    if maj_a == maj_b {
        return Err(Error::EqualMajorities);
    }
    if a.is_empty() || a.len() != b.len() || !a.is_disjoint(b) {
        return Err(Error::BadBalancedInput);
    }
    let c = a.len();
    let seq: Vec<usize> = a.iter().chain(b.iter()).collect();
    // 1-based window start m, as in f(m) above
    let window = |m: usize| {
        IndexSet::from_unsorted(seq[m - 1..m - 1 + c].to_vec())
            .expect("disjoint inputs make window indices distinct")
    };
    let (mut lo, mut hi) = (1usize, c + 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if oracle.query_fixed(&window(mid))? == maj_a {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let h = lo;
    // 1-based inclusive position range out of seq
    let pick = |from: usize, to: usize| {
        if from > to {
            IndexSet::empty()
        } else {
            IndexSet::from_unsorted(seq[from - 1..to].to_vec())
                .expect("disjoint inputs make picked indices distinct")
        }
    };
    Ok(if c.is_multiple_of(2) {
        if maj_a {
            pick(h, h + c - 1)
        } else {
            pick(h + 1, h + c)
        }
    } else if prefer_large {
        pick(h, h + c)
    } else {
        pick(h + 1, h + c - 1)
    })
}
