//! The fixed-threshold solver: a block-elimination engine.
//!
//! State is a family of disjoint, answer-labeled blocks covering every index
//! not yet discarded. The one fact the engine exploits: removing an index set
//! with exactly as many ones as zeros changes neither the inclusive-tie
//! majority of what remains nor MAJ_n itself (sum and length both drop by
//! |S|/2 and 2*sum >= len is invariant under that). So the engine keeps
//! extracting provably balanced sets until every surviving block answers
//! alike -- at which point that common answer is MAJ_n: if all answers are 1
//! every block has at least half ones, so the union does too; dually for 0;
//! and if nothing survives the removed ones were exactly n/2, an inclusive
//! tie.

use crate::adaptive::{
    block_partition, ceil_log2, find_balanced_set, fixed_query_bound, SolveReport,
};
use crate::bits::IndexSet;
use crate::error::{Error, Result};
use crate::oracle::Oracle;

/// A queried index set with its cached majority answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    indices: IndexSet,
    answer: bool,
}

impl Block {
    pub fn new(indices: IndexSet, answer: bool) -> Self {
        assert!(!indices.is_empty(), "blocks are never empty");
        Block { indices, answer }
    }

    pub fn indices(&self) -> &IndexSet {
        &self.indices
    }

    pub fn answer(&self) -> bool {
        self.answer
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty() // always false; see Block::new
    }

    fn min_index(&self) -> usize {
        self.indices.min().expect("blocks are never empty")
    }
}

/// Elimination engine state. Blocks stay disjoint, nonempty, of size at most
/// k, and sorted by smallest contained index; `removed_balanced` counts the
/// indices discarded in exactly balanced sets, so the active indices plus
/// `removed_balanced` always partition 0..n.
///
/// Rule priority (first match applies, one rule per [`EngineState::advance`]):
///   1. cancel: two opposite singletons annihilate, no query.
///   2. balance-equal: equal-size opposite pair -> balanced-set extraction.
///   3. balance-near: sizes differing by one -> probe, then extraction.
///   4. absorb: singleton + opposite block -> query their union.
///   5. transfer: sizes at least two apart -> move the largest block's top
///      index toward the smallest opposite block.
///
/// Termination: writing A for active indices, B for block count and
/// Q = sum of squared block sizes, every rule strictly decreases the
/// lexicographic triple (A, B, Q) -- rules 1-4 either remove indices or merge
/// blocks, and a transfer that removes nothing keeps A and B while moving one
/// index from a larger block to a smaller one, dropping Q by at least 2.
pub struct EngineState {
    n: usize,
    k: usize,
    blocks: Vec<Block>,
    removed_balanced: usize,
    steps: usize,
    step_limit: usize,
    trace: Option<Vec<String>>,
}

/// Rule-selection candidate: an ordering key (sizes, then min indices) and
/// the chosen pair of block keys.
type Ranked = ((usize, usize, usize), (usize, usize));

impl EngineState {
    /// Partitions 0..n into ceil(n/k) blocks and pays one query per block.
    pub fn init<O: Oracle + ?Sized>(oracle: &mut O, n: usize, k: usize) -> Result<Self> {
        Self::init_impl(oracle, n, k, false)
    }

    /// [`EngineState::init`] with step tracing enabled.
    pub fn init_traced<O: Oracle + ?Sized>(oracle: &mut O, n: usize, k: usize) -> Result<Self> {
        Self::init_impl(oracle, n, k, true)
    }

    fn init_impl<O: Oracle + ?Sized>(
        oracle: &mut O,
        n: usize,
        k: usize,
        traced: bool,
    ) -> Result<Self> {
        let parts = block_partition(n, k)?;
        let step_limit = 16 * n * (ceil_log2(k as u64 + 1) as usize + 2);
        let mut blocks = Vec::with_capacity(parts.len());
        for indices in parts {
            let answer = oracle.query_fixed(&indices)?;
            blocks.push(Block::new(indices, answer));
        }
        let mut state = EngineState {
            n,
            k,
            blocks,
            removed_balanced: 0,
            steps: 0,
            step_limit,
            trace: traced.then(Vec::new),
        };
        if state.trace.is_some() {
            state.note(format!("init: {}", state.render_blocks()));
        }
        Ok(state)
    }

    /// Test-only constructor for mid-run states.
    #[cfg(test)]
    pub(crate) fn from_blocks(n: usize, k: usize, mut blocks: Vec<Block>) -> Self {
        blocks.sort_by_key(Block::min_index);
        let active: usize = blocks.iter().map(Block::len).sum();
        EngineState {
            n,
            k,
            blocks,
            removed_balanced: n - active,
            steps: 0,
            step_limit: 16 * n * (ceil_log2(k as u64 + 1) as usize + 2),
            trace: None,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn removed_balanced(&self) -> usize {
        self.removed_balanced
    }

    /// Union of all block index sets.
    pub fn active_indices(&self) -> IndexSet {
        self.blocks
            .iter()
            .fold(IndexSet::empty(), |acc, b| acc.union(&b.indices))
    }

    pub fn take_trace(&mut self) -> Option<Vec<String>> {
        self.trace.take()
    }

    /// The final answer, once every surviving block agrees. An empty state
    /// means everything was removed in balanced sets, i.e. an inclusive tie.
    pub fn conclusion(&self) -> Option<bool> {
        match self.blocks.split_first() {
            None => Some(true),
            Some((first, rest)) => rest
                .iter()
                .all(|b| b.answer == first.answer)
                .then_some(first.answer),
        }
    }

    /// Applies exactly one elimination rule.
    pub fn advance<O: Oracle + ?Sized>(&mut self, oracle: &mut O) -> Result<()> {
        debug_assert!(self.conclusion().is_none(), "advance on a settled state");
        self.steps += 1;
        if self.steps > self.step_limit {
            return Err(Error::StepLimit {
                limit: self.step_limit,
            });
        }
        let result = if let Some((a, b)) = self.find_cancel() {
            self.cancel(a, b)
        } else if let Some((p, q)) = self.find_equal_pair() {
            self.balance_equal(p, q, oracle)
        } else if let Some((p, q)) = self.find_near_pair() {
            self.balance_near(p, q, oracle)
        } else if let Some((s, q)) = self.find_absorb() {
            self.absorb(s, q, oracle)
        } else if let Some((p, t)) = self.find_transfer() {
            self.transfer(p, t, oracle)
        } else {
            unreachable!("states with differing answers always admit a transfer")
        };
        if result.is_ok() {
            debug_assert_eq!(
                self.blocks.iter().map(Block::len).sum::<usize>() + self.removed_balanced,
                self.n
            );
            debug_assert!(self.blocks.iter().all(|b| b.len() <= self.k));
        }
        result
    }

    // -- block bookkeeping ---------------------------------------------------
    // Blocks are keyed by their smallest index, which is stable and unique
    // (blocks are disjoint), unlike positions in the sorted vector.

    fn take(&mut self, min_index: usize) -> Block {
        let pos = self
            .blocks
            .binary_search_by_key(&min_index, Block::min_index)
            .expect("block lookup by min index");
        self.blocks.remove(pos)
    }

    fn put(&mut self, block: Block) {
        let pos = self
            .blocks
            .binary_search_by_key(&block.min_index(), Block::min_index)
            .expect_err("blocks are disjoint");
        self.blocks.insert(pos, block);
    }

    fn note(&mut self, line: String) {
        if let Some(trace) = self.trace.as_mut() {
            trace.push(line);
        }
    }

    fn render_blocks(&self) -> String {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{}->{}", b.indices, b.answer as u8))
            .collect();
        parts.join(" ")
    }

    // -- rule selection -------------------------------------------------------
    // Ties are broken toward the smallest block sizes involved, then the
    // smallest contained indices, making runs fully deterministic.

    fn find_cancel(&self) -> Option<(usize, usize)> {
        let zero = self.blocks.iter().find(|b| b.len() == 1 && !b.answer)?;
        let one = self.blocks.iter().find(|b| b.len() == 1 && b.answer)?;
        Some((zero.min_index(), one.min_index()))
    }

    fn find_equal_pair(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None; // (size, p_min, q_min)
        for (i, p) in self.blocks.iter().enumerate() {
            if p.len() < 2 {
                continue;
            }
            // blocks are sorted by min index, so the first match minimizes q_min
            if let Some(q) = self.blocks[i + 1..]
                .iter()
                .find(|q| q.len() == p.len() && q.answer != p.answer)
            {
                let cand = (p.len(), p.min_index(), q.min_index());
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        best.map(|(_, p, q)| (p, q))
    }

    fn find_near_pair(&self) -> Option<(usize, usize)> {
        let mut best: Option<Ranked> = None;
        for p in &self.blocks {
            for q in &self.blocks {
                if p.len() == q.len() + 1 && p.answer != q.answer {
                    let (lo, hi) = (
                        p.min_index().min(q.min_index()),
                        p.min_index().max(q.min_index()),
                    );
                    let key = (p.len(), lo, hi);
                    if best.as_ref().is_none_or(|(b, _)| key < *b) {
                        best = Some((key, (p.min_index(), q.min_index())));
                    }
                }
            }
        }
        best.map(|(_, pair)| pair)
    }

    fn find_absorb(&self) -> Option<(usize, usize)> {
        let mut best: Option<Ranked> = None;
        for s in self.blocks.iter().filter(|b| b.len() == 1) {
            for q in &self.blocks {
                if q.len() >= 2 && q.len() < self.k && q.answer != s.answer {
                    let key = (q.len(), q.min_index(), s.min_index());
                    if best.as_ref().is_none_or(|(b, _)| key < *b) {
                        best = Some((key, (s.min_index(), q.min_index())));
                    }
                }
            }
        }
        best.map(|(_, pair)| pair)
    }

    fn find_transfer(&self) -> Option<(usize, usize)> {
        let p = self
            .blocks
            .iter()
            .max_by_key(|b| (b.len(), std::cmp::Reverse(b.min_index())))?;
        let t = self
            .blocks
            .iter()
            .filter(|b| b.answer != p.answer)
            .min_by_key(|b| (b.len(), b.min_index()))?;
        Some((p.min_index(), t.min_index()))
    }

    // -- rules ---------------------------------------------------------------

    /// Opposite singletons carry one 1 and one 0: a balanced pair, no query.
    fn cancel(&mut self, zero_min: usize, one_min: usize) -> Result<()> {
        let z = self.take(zero_min);
        let o = self.take(one_min);
        self.removed_balanced += 2;
        self.note(format!(
            "cancel: {} and {} annihilate",
            z.indices, o.indices
        ));
        Ok(())
    }

    /// Equal sizes, opposite answers: extract a balanced subset of the pair's
    /// union, then re-query whatever remains of it as a single new block.
    fn balance_equal<O: Oracle + ?Sized>(
        &mut self,
        p_min: usize,
        q_min: usize,
        oracle: &mut O,
    ) -> Result<()> {
        let p = self.take(p_min);
        let q = self.take(q_min);
        let c = p.len();
        // the standard extraction returns c-1 indices when c is odd, leaving
        // a remainder of c+1, which is only queryable when c+1 <= k
        let prefer_large = c % 2 == 1 && c + 1 > self.k;
        let balanced = find_balanced_set(
            oracle,
            &p.indices,
            &q.indices,
            p.answer,
            q.answer,
            prefer_large,
        )?;
        self.removed_balanced += balanced.len();
        let rest = p.indices.union(&q.indices).difference(&balanced);
        self.note(format!(
            "balance-equal {}/{}: removed {}, remainder {}",
            p.indices, q.indices, balanced, rest
        ));
        if !rest.is_empty() {
            let answer = oracle.query_fixed(&rest)?;
            self.put(Block::new(rest, answer));
        }
        Ok(())
    }

    /// Sizes c and c-1 with opposite answers: probe P without its largest
    /// index y. If the answer flips, the flip itself localizes a balanced set
    /// (see [`EngineState::settle_flip`]); otherwise P minus y and Q form an
    /// equal-size opposite pair and the extraction applies, with y rejoining
    /// the remainder.
    fn balance_near<O: Oracle + ?Sized>(
        &mut self,
        p_min: usize,
        q_min: usize,
        oracle: &mut O,
    ) -> Result<()> {
        let p = self.take(p_min);
        let c = p.len();
        let y = p.indices.max().expect("blocks are never empty");
        let trimmed = p.indices.without_max();
        let probe = oracle.query_fixed(&trimmed)?;
        if probe != p.answer {
            return self.settle_flip(p, y, trimmed);
        }
        let q = self.take(q_min);
        // trimmed has size c-1; its standard odd extraction would leave c+1
        let prefer_large = (c - 1) % 2 == 1 && c + 1 > self.k;
        let balanced = find_balanced_set(
            oracle,
            &trimmed,
            &q.indices,
            p.answer,
            q.answer,
            prefer_large,
        )?;
        self.removed_balanced += balanced.len();
        let rest = p.indices.union(&q.indices).difference(&balanced);
        self.note(format!(
            "balance-near {}/{}: removed {}, remainder {}",
            p.indices, q.indices, balanced, rest
        ));
        if !rest.is_empty() {
            let answer = oracle.query_fixed(&rest)?;
            self.put(Block::new(rest, answer));
        }
        Ok(())
    }

    /// The majority of P flipped when its largest index y was dropped, which
    /// pins x_y = maj(P) and forces one of two balanced outcomes. With
    /// c = |P| and s = sum over P without y:
    ///   - maj(P) = 0 flipping to 1: (c-1)/2 <= s < c/2 has a solution only
    ///     for odd c, with 2s = c-1 -- P minus y is balanced and y stays
    ///     behind as a singleton known to answer 0;
    ///   - maj(P) = 1 flipping to 0: c/2 - 1 <= s < (c-1)/2 forces even c,
    ///     with s = c/2 - 1 and x_y = 1 -- all of P is balanced.
    ///
    /// Any other parity means the oracle contradicted itself.
    fn settle_flip(&mut self, p: Block, y: usize, trimmed: IndexSet) -> Result<()> {
        let c = p.len();
        if p.answer {
            if c % 2 == 1 {
                return Err(Error::InconsistentOracle(format!(
                    "majority of odd-size block {} flipped from 1 when {} was removed",
                    p.indices, y
                )));
            }
            self.removed_balanced += c;
            self.note(format!("flip: {} balanced and removed entirely", p.indices));
        } else {
            if c.is_multiple_of(2) {
                return Err(Error::InconsistentOracle(format!(
                    "majority of even-size block {} flipped from 0 when {} was removed",
                    p.indices, y
                )));
            }
            self.removed_balanced += c - 1;
            self.note(format!(
                "flip: {} balanced, {{{}}} kept with answer 0",
                trimmed, y
            ));
            self.put(Block::new(IndexSet::singleton(y), false));
        }
        Ok(())
    }

    /// A singleton s (whose bit x_s = answer(s) is known exactly) and an
    /// opposite block Q with 2 <= |Q| < k: query their union. With v = x_s
    /// and c = |Q|:
    ///   - union answers v = 1: sum(Q) < c/2 and sum(Q) + 1 >= (c+1)/2 force
    ///     odd c and make Q plus s balanced -- remove both;
    ///   - union answers v = 0: c/2 <= sum(Q) < (c+1)/2 forces even c with
    ///     sum(Q) = c/2 -- Q alone is balanced, the singleton stays;
    ///   - union answers like Q: no balance information, but the pair merges
    ///     into one block, and block count never increases thereafter.
    fn absorb<O: Oracle + ?Sized>(
        &mut self,
        s_min: usize,
        q_min: usize,
        oracle: &mut O,
    ) -> Result<()> {
        let s = self.take(s_min);
        let q = self.take(q_min);
        let c = q.len();
        let union = q.indices.union(&s.indices);
        let answer = oracle.query_fixed(&union)?;
        if answer == s.answer {
            if s.answer {
                if c.is_multiple_of(2) {
                    return Err(Error::InconsistentOracle(format!(
                        "even-size block {} flipped to 1 after absorbing a known 1",
                        q.indices
                    )));
                }
                self.removed_balanced += c + 1;
                self.note(format!("absorb: {} balanced and removed", union));
            } else {
                if c % 2 == 1 {
                    return Err(Error::InconsistentOracle(format!(
                        "odd-size block {} flipped to 0 after absorbing a known 0",
                        q.indices
                    )));
                }
                self.removed_balanced += c;
                self.note(format!(
                    "absorb: {} balanced, {} kept",
                    q.indices, s.indices
                ));
                self.put(s);
            }
        } else {
            self.note(format!("absorb: merged into {}->{}", union, answer as u8));
            self.put(Block::new(union, answer));
        }
        Ok(())
    }

    /// No other rule applies, so every opposite pair differs in size by at
    /// least two. Take the largest block P and the smallest opposite block T
    /// (|P| >= |T| + 2), probe P without its largest index y, and either the
    /// probe flips (balanced removal via [`EngineState::settle_flip`]) or y
    /// migrates to T via a query on T plus y (size |T|+1 <= |P|-1 <= k).
    /// With b = answer(T), t = |T|, w = answer on the union:
    ///   - w = b: merge into one block of size t+1, shrinking the size gap;
    ///   - b = 1, w = 0: t/2 <= sum(T) and sum(T) + x_y < (t+1)/2 force even
    ///     t with sum(T) = t/2 and x_y = 0 -- T is balanced, y stays behind
    ///     as a singleton known to answer 0;
    ///   - b = 0, w = 1: sum(T) < t/2 and sum(T) + x_y >= (t+1)/2 force odd
    ///     t with x_y = 1 -- T plus y is balanced, remove it all.
    fn transfer<O: Oracle + ?Sized>(
        &mut self,
        p_min: usize,
        t_min: usize,
        oracle: &mut O,
    ) -> Result<()> {
        let p = self.take(p_min);
        let y = p.indices.max().expect("blocks are never empty");
        let trimmed = p.indices.without_max();
        debug_assert!(trimmed.len() >= 2, "transfer requires |P| >= |T| + 2 >= 3");
        let probe = oracle.query_fixed(&trimmed)?;
        if probe != p.answer {
            return self.settle_flip(p, y, trimmed);
        }
        self.put(Block::new(trimmed, p.answer));
        let t = self.take(t_min);
        let union = t.indices.union(&IndexSet::singleton(y));
        let answer = oracle.query_fixed(&union)?;
        if answer == t.answer {
            self.note(format!(
                "transfer: {} grew into {}->{}",
                t.indices, union, answer as u8
            ));
            self.put(Block::new(union, answer));
        } else if t.answer {
            if t.len() % 2 == 1 {
                return Err(Error::InconsistentOracle(format!(
                    "odd-size block {} flipped to 0 on gaining one index",
                    t.indices
                )));
            }
            self.removed_balanced += t.len();
            self.note(format!(
                "transfer: {} balanced, {{{}}} kept with answer 0",
                t.indices, y
            ));
            self.put(Block::new(IndexSet::singleton(y), false));
        } else {
            if t.len().is_multiple_of(2) {
                return Err(Error::InconsistentOracle(format!(
                    "even-size block {} flipped to 1 on gaining one index",
                    t.indices
                )));
            }
            self.removed_balanced += t.len() + 1;
            self.note(format!("transfer: {} balanced and removed", union));
        }
        Ok(())
    }
}

/// Runs the complete fixed-threshold algorithm: partition 0..n into blocks,
/// pay one query per block, then eliminate until the survivors agree.
pub fn solve_fixed<O: Oracle + ?Sized>(oracle: &mut O, n: usize, k: usize) -> Result<SolveReport> {
    solve_fixed_impl(oracle, n, k, false)
}

/// [`solve_fixed`] with a step-by-step trace in the report.
pub fn solve_fixed_traced<O: Oracle + ?Sized>(
    oracle: &mut O,
    n: usize,
    k: usize,
) -> Result<SolveReport> {
    solve_fixed_impl(oracle, n, k, true)
}

fn solve_fixed_impl<O: Oracle + ?Sized>(
    oracle: &mut O,
    n: usize,
    k: usize,
    traced: bool,
) -> Result<SolveReport> {
    let start = oracle.query_count();
    let mut state = EngineState::init_impl(oracle, n, k, traced)?;
    let answer = loop {
        if let Some(answer) = state.conclusion() {
            break answer;
        }
        state.advance(oracle)?;
    };
    if state.trace.is_some() {
        state.note(format!("conclusion: {}", answer as u8));
    }
    Ok(SolveReport {
        answer,
        queries: oracle.query_count() - start,
        bound: fixed_query_bound(n, k),
        trace: state.take_trace(),
    })
}
