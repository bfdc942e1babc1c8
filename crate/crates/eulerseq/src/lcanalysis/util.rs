//! Small shared helpers for the search modules: word-level bit patterns
//! of fixed width, their lexicographic order, and scoped worker pools.

use super::profile::ErrorWitness;

/// Lexicographic order on coefficient strings packed LSB-first into
/// words: position 0 is bit 0 of word 0. The string with a 0 at the
/// lowest differing position is the smaller one.
pub(crate) fn lex_lt(a: &[u64], b: &[u64]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    for (wa, wb) in a.iter().zip(b) {
        if wa != wb {
            let bit = (wa ^ wb).trailing_zeros();
            return (wa >> bit) & 1 == 0;
        }
    }
    false
}

pub(crate) fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Pack a support list into a width-`words` bit pattern.
pub(crate) fn pattern_from_positions(positions: &[usize], words: usize) -> Vec<u64> {
    let mut out = vec![0u64; words];
    for &pos in positions {
        out[pos / 64] |= 1u64 << (pos % 64);
    }
    out
}

/// Unpack a bit pattern into sorted positions.
pub(crate) fn witness_from_pattern(pattern: &[u64]) -> ErrorWitness {
    let mut positions = Vec::with_capacity(popcount(pattern));
    for (i, &w) in pattern.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            positions.push(64 * i + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    ErrorWitness { positions }
}

/// Run a closure on a dedicated pool of the requested size, or inline on
/// the global pool when no explicit worker count was given.
pub(crate) fn run_with_workers<T: Send>(
    workers: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> T {
    match workers {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("worker pool construction only fails on resource exhaustion")
            .install(f),
    }
}
