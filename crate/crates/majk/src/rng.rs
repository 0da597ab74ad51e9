//! Small deterministic RNG (splitmix64) so randomized tests and benchmark
//! CSVs reproduce bit-for-bit on every platform.

use crate::bits::BitVector;

/// The splitmix64 stream: state advances by the golden-ratio increment and
/// each output is the standard two-round xor-multiply finalizer. Constants
/// are the public-domain ones from Vigna's reference implementation.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Value in `0..bound` via modulo reduction (bound must be nonzero). The
    /// slight bias is irrelevant at our range sizes; determinism is what
    /// matters here.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "next_below requires a positive bound");
        self.next_u64() % bound
    }

    pub fn next_bool(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    /// A random assignment: one generator step per bit, low bit taken.
    pub fn bitvector(&mut self, len: usize) -> BitVector {
        let mut v = BitVector::zeros(len);
        for i in 0..len {
            v.set(i, self.next_bool());
        }
        v
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}
