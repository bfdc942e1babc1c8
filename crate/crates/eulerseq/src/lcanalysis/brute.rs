//! Ground-truth k-error values by exhaustive search: every error pattern
//! of weight at most k is applied and the resulting complexity taken to
//! its minimum.
//!
//! Patterns are walked as a depth-first tree over supports in increasing
//! position order, so each step toggles exactly one position. On odd
//! prime-power periods whose factor tower is irreducible, a toggle
//! updates per-factor residues incrementally and evaluating a node costs
//! a few word compares; other periods fall back to a gcd per node.
//! The work is split across workers by the first two support positions
//! and merged with an order-independent minimum, so results (including
//! witnesses) are reproducible at any worker count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2poly::Gf2Poly;
use crate::numtheory::is_two_primitive_mod_p2;
use crate::seqgen::BinarySequence;

use super::profile::ErrorWitness;
use super::util::{lex_lt, pattern_from_positions, run_with_workers, witness_from_pattern};
use super::{factor_tower, lc_from_polynomial, prime_power_of};

/// Periods above this are refused by the exhaustive search; the cost per
/// node stops being desk-scale long before the pattern count does.
const MAX_SEARCH_PERIOD: usize = 1 << 16;

/// Resource knobs shared by the search routines.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Worker threads; `None` uses the process-global pool.
    pub workers: Option<usize>,
    /// Refuse exhaustive searches that would visit more patterns than
    /// this.
    pub pattern_budget: u128,
    /// Refuse coset scans over more than 2^limit representatives.
    pub coset_dim_limit: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            workers: None,
            pattern_budget: 100_000_000,
            coset_dim_limit: 26,
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact while below the saturation point; only the comparison
        // against the budget matters beyond it
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    acc
}

/// Number of error patterns of weight at most k on a period of t bits.
pub fn pattern_count(t: usize, k: usize) -> u128 {
    (0..=k).fold(0u128, |acc, j| acc.saturating_add(binomial(t, j)))
}

/// Largest k whose full pattern space fits in the budget, if any.
pub fn max_feasible_k(t: usize, budget: u128) -> Option<usize> {
    if pattern_count(t, 0) > budget {
        return None;
    }
    let mut k = 0;
    while k < t && pattern_count(t, k + 1) <= budget {
        k += 1;
    }
    Some(k)
}

fn check_budget(t: usize, k: usize, budget: u128) -> Result<()> {
    if pattern_count(t, k) <= budget {
        return Ok(());
    }
    let smallest = (0..=k)
        .find(|&j| pattern_count(t, j) > budget)
        .expect("some prefix exceeds the budget");
    Err(Error::PatternBudgetExceeded {
        smallest_infeasible_k: smallest,
        budget,
    })
}

/// Node evaluation strategy for the pattern walk.
trait PatternEval: Sync {
    /// Width of the incremental state in words.
    fn width(&self) -> usize;
    /// Flip one error position in the state.
    fn toggle(&self, acc: &mut [u64], pos: usize);
    /// Complexity of S plus the pattern currently in the state.
    fn lc(&self, acc: &[u64]) -> usize;
}

struct Seg {
    offset: usize,
    width: usize,
    degree: usize,
}

/// Per-factor residues of the error pattern, one segment per tower
/// factor. S + e is divisible by a factor exactly when e's residue
/// matches S's, and with the tower irreducible the complexity is the
/// period minus the degrees of the matching factors.
struct FactorEval {
    t: usize,
    stride: usize,
    segs: Vec<Seg>,
    target: Vec<u64>,
    delta: Vec<u64>,
}

impl FactorEval {
    fn new(p: u64, r: u32, s_poly: &Gf2Poly, t: usize) -> Result<Self> {
        let factors = factor_tower(p, r)?;
        let mut segs = Vec::with_capacity(factors.len());
        let mut stride = 0;
        for f in &factors {
            let degree = f.degree().finite().expect("tower factors are nonzero");
            let width = degree / 64 + 1;
            segs.push(Seg { offset: stride, width, degree });
            stride += width;
        }
        let mut fwords = vec![0u64; stride];
        let mut target = vec![0u64; stride];
        for (f, seg) in factors.iter().zip(&segs) {
            fwords[seg.offset..seg.offset + f.words().len()].copy_from_slice(f.words());
            let rem = s_poly.rem(f)?;
            target[seg.offset..seg.offset + rem.words().len()].copy_from_slice(rem.words());
        }
        // delta row t holds X^t reduced by every factor; row t comes from
        // row t-1 by a shift and a conditional reduction
        let mut delta = vec![0u64; t * stride];
        for seg in &segs {
            delta[seg.offset] = 1;
        }
        for row in 1..t {
            let (done, rest) = delta.split_at_mut(row * stride);
            let prev = &done[(row - 1) * stride..];
            let cur = &mut rest[..stride];
            for seg in &segs {
                let o = seg.offset;
                let mut carry = 0u64;
                for i in 0..seg.width {
                    let w = prev[o + i];
                    cur[o + i] = (w << 1) | carry;
                    carry = w >> 63;
                }
                if (cur[o + seg.degree / 64] >> (seg.degree % 64)) & 1 == 1 {
                    for i in 0..seg.width {
                        cur[o + i] ^= fwords[o + i];
                    }
                }
            }
        }
        Ok(Self { t, stride, segs, target, delta })
    }
}

impl PatternEval for FactorEval {
    fn width(&self) -> usize {
        self.stride
    }

    fn toggle(&self, acc: &mut [u64], pos: usize) {
        let row = &self.delta[pos * self.stride..(pos + 1) * self.stride];
        for (a, d) in acc.iter_mut().zip(row) {
            *a ^= d;
        }
    }

    fn lc(&self, acc: &[u64]) -> usize {
        let mut matched = 0;
        for seg in &self.segs {
            let lo = seg.offset;
            let hi = seg.offset + seg.width;
            if acc[lo..hi] == self.target[lo..hi] {
                matched += seg.degree;
            }
        }
        self.t - matched
    }
}

/// Fallback for periods without a usable factor tower: the state is the
/// raw error pattern and every node pays for a full gcd.
struct GcdEval {
    t: usize,
    width: usize,
    s_words: Vec<u64>,
}

impl GcdEval {
    fn new(s_poly: &Gf2Poly, t: usize) -> Self {
        let width = t.div_ceil(64);
        let mut s_words = vec![0u64; width];
        s_words[..s_poly.words().len()].copy_from_slice(s_poly.words());
        Self { t, width, s_words }
    }
}

impl PatternEval for GcdEval {
    fn width(&self) -> usize {
        self.width
    }

    fn toggle(&self, acc: &mut [u64], pos: usize) {
        acc[pos / 64] ^= 1u64 << (pos % 64);
    }

    fn lc(&self, acc: &[u64]) -> usize {
        let words: Vec<u64> = self.s_words.iter().zip(acc).map(|(s, e)| s ^ e).collect();
        lc_from_polynomial(&Gf2Poly::from_words(words), self.t)
    }
}

#[derive(Clone)]
struct Best {
    lc: usize,
    pattern: Vec<u64>,
}

impl Best {
    fn unset() -> Self {
        Self { lc: usize::MAX, pattern: Vec::new() }
    }

    fn offer(&mut self, lc: usize, support: &[usize], words: usize) {
        if lc < self.lc {
            self.lc = lc;
            self.pattern = pattern_from_positions(support, words);
        } else if lc == self.lc {
            let cand = pattern_from_positions(support, words);
            if self.pattern.is_empty() || lex_lt(&cand, &self.pattern) {
                self.pattern = cand;
            }
        }
    }

    fn merge_from(&mut self, other: Best) {
        if other.lc < self.lc
            || (other.lc == self.lc
                && !other.pattern.is_empty()
                && (self.pattern.is_empty() || lex_lt(&other.pattern, &self.pattern)))
        {
            *self = other;
        }
    }
}

fn merge_vecs(mut a: Vec<Best>, b: Vec<Best>) -> Vec<Best> {
    for (x, y) in a.iter_mut().zip(b) {
        x.merge_from(y);
    }
    a
}

/// Walk all supports extending `support` with positions >= `from`,
/// recording the best complexity seen at each weight.
fn dfs<E: PatternEval>(
    eval: &E,
    acc: &mut [u64],
    support: &mut Vec<usize>,
    from: usize,
    k: usize,
    t: usize,
    pattern_words: usize,
    best: &mut [Best],
) {
    best[support.len()].offer(eval.lc(acc), support, pattern_words);
    if support.len() == k {
        return;
    }
    // every prefix is offered at its own weight, so no tail positions may
    // be reserved: a short support ending high is still a candidate
    for i in from..t {
        eval.toggle(acc, i);
        support.push(i);
        dfs(eval, acc, support, i + 1, k, t, pattern_words, best);
        support.pop();
        eval.toggle(acc, i);
    }
}

fn run_search<E: PatternEval>(eval: &E, t: usize, k: usize, cfg: &SearchConfig) -> Vec<Best> {
    let pattern_words = t.div_ceil(64);
    // weights 0 and 1 serially, the rest split by the first two positions
    let mut serial = vec![Best::unset(); k + 1];
    let mut acc = vec![0u64; eval.width()];
    serial[0].offer(eval.lc(&acc), &[], pattern_words);
    if k >= 1 {
        for i in 0..t {
            eval.toggle(&mut acc, i);
            serial[1].offer(eval.lc(&acc), &[i], pattern_words);
            eval.toggle(&mut acc, i);
        }
    }
    if k < 2 {
        return serial;
    }
    let pairs: Vec<(usize, usize)> = (0..t)
        .flat_map(|i| (i + 1..t).map(move |j| (i, j)))
        .collect();
    let parallel = run_with_workers(cfg.workers, || {
        pairs
            .into_par_iter()
            .map(|(i, j)| {
                let mut acc = vec![0u64; eval.width()];
                eval.toggle(&mut acc, i);
                eval.toggle(&mut acc, j);
                let mut support = vec![i, j];
                let mut best = vec![Best::unset(); k + 1];
                dfs(eval, &mut acc, &mut support, j + 1, k, t, pattern_words, &mut best);
                best
            })
            .reduce(|| vec![Best::unset(); k + 1], merge_vecs)
    });
    merge_vecs(serial, parallel)
}

/// Exact k-error values for k = 0..=k_max, with a lexicographically
/// least witness pattern for each k.
pub fn klc_brute_profile(
    s: &BinarySequence,
    k_max: usize,
    cfg: &SearchConfig,
) -> Result<Vec<(usize, ErrorWitness)>> {
    let t = s.period();
    if t > MAX_SEARCH_PERIOD {
        return Err(Error::UnsupportedCase(format!(
            "period {t} is beyond the exhaustive search range ({MAX_SEARCH_PERIOD})"
        )));
    }
    let weight = s.weight();
    // flipping every one-bit is the unique way to reach complexity zero,
    // so enumeration past weight - 1 is never needed
    let k_enum = if weight == 0 { 0 } else { k_max.min(weight - 1) };
    check_budget(t, k_enum, cfg.pattern_budget)?;
    let s_poly = Gf2Poly::from_sequence(s);
    let mut tower_context = None;
    if let Some((p, r)) = prime_power_of(t) {
        if is_two_primitive_mod_p2(p)? {
            tower_context = Some((p, r));
        }
    }
    let per_weight = match tower_context {
        Some((p, r)) => run_search(&FactorEval::new(p, r, &s_poly, t)?, t, k_enum, cfg),
        None => run_search(&GcdEval::new(&s_poly, t), t, k_enum, cfg),
    };
    let zero_witness = ErrorWitness {
        positions: s
            .bits()
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| (b == 1).then_some(i))
            .collect(),
    };
    let mut out = Vec::with_capacity(k_max + 1);
    let mut running = Best::unset();
    for k in 0..=k_max {
        if k >= weight {
            out.push((0, zero_witness.clone()));
            continue;
        }
        running.merge_from(per_weight[k].clone());
        out.push((running.lc, witness_from_pattern(&running.pattern)));
    }
    Ok(out)
}

/// Exact k-error value for a single k.
pub fn klc_brute(
    s: &BinarySequence,
    k: usize,
    cfg: &SearchConfig,
) -> Result<(usize, ErrorWitness)> {
    if k >= s.weight() {
        let positions = s
            .bits()
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| (b == 1).then_some(i))
            .collect();
        return Ok((0, ErrorWitness { positions }));
    }
    let mut profile = klc_brute_profile(s, k, cfg)?;
    Ok(profile.pop().expect("profile always has k + 1 entries"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcanalysis::lc_gcd;
    use crate::seqgen::{gen_complement, gen_euler_threshold, Provenance};

    #[test]
    fn counting() {
        assert_eq!(binomial(27, 2), 351);
        assert_eq!(binomial(125, 4), 9_691_375);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(pattern_count(27, 2), 1 + 27 + 351);
        assert_eq!(max_feasible_k(27, 1000), Some(2));
        assert_eq!(max_feasible_k(27, 0), None);
        // the whole space fits for tiny periods
        assert_eq!(max_feasible_k(5, u128::MAX), Some(5));
    }

    #[test]
    fn budget_refusal_names_the_smallest_infeasible_k() {
        let s = gen_euler_threshold(3, 3).unwrap();
        let cfg = SearchConfig { pattern_budget: 100, ..SearchConfig::default() };
        let err = klc_brute(&s, 6, &cfg).unwrap_err();
        match err {
            Error::PatternBudgetExceeded { smallest_infeasible_k, budget } => {
                assert_eq!(smallest_infeasible_k, 2);
                assert_eq!(budget, 100);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn level_two_profile_matches_published_values() {
        let s = gen_euler_threshold(3, 2).unwrap();
        let cfg = SearchConfig::default();
        let profile = klc_brute_profile(&s, 3, &cfg).unwrap();
        let lcs: Vec<usize> = profile.iter().map(|(lc, _)| *lc).collect();
        assert_eq!(lcs, vec![8, 7, 0, 0]);
        // k = 0: empty witness; k = 2: the only way to zero is the
        // sequence itself, positions {4, 5}
        assert!(profile[0].1.positions.is_empty());
        assert_eq!(profile[2].1.positions, vec![4, 5]);
        assert_eq!(profile[1].0, 7);
        assert_eq!(profile[1].1.weight(), 1);
    }

    #[test]
    fn single_k_agrees_with_profile() {
        let s = gen_complement(3, 2).unwrap();
        let cfg = SearchConfig::default();
        let profile = klc_brute_profile(&s, 4, &cfg).unwrap();
        for k in 0..=4 {
            let (lc, w) = klc_brute(&s, k, &cfg).unwrap();
            assert_eq!((lc, w), profile[k], "k={k}");
        }
    }

    #[test]
    fn weight_shortcut_skips_enumeration() {
        let s = gen_euler_threshold(3, 3).unwrap();
        // budget of one pattern would refuse any real enumeration
        let cfg = SearchConfig { pattern_budget: 1, ..SearchConfig::default() };
        let (lc, w) = klc_brute(&s, 8, &cfg).unwrap();
        assert_eq!(lc, 0);
        assert_eq!(w.weight(), 8);
        let e = Gf2Poly::from_exponents(&w.positions);
        assert_eq!(e, Gf2Poly::from_sequence(&s));
    }

    #[test]
    fn level_three_spot_values() {
        let s = gen_euler_threshold(3, 3).unwrap();
        let cfg = SearchConfig::default();
        let profile = klc_brute_profile(&s, 6, &cfg).unwrap();
        let lcs: Vec<usize> = profile.iter().map(|(lc, _)| *lc).collect();
        assert_eq!(lcs, vec![24, 24, 20, 20, 18, 18, 8]);
        // every witness achieves its claimed value
        let s_poly = Gf2Poly::from_sequence(&s);
        for (k, (lc, w)) in profile.iter().enumerate() {
            assert!(w.weight() <= k);
            let e = Gf2Poly::from_exponents(&w.positions);
            assert_eq!(lc_from_polynomial(&(&s_poly + &e), 27), *lc, "k={k}");
        }
    }

    #[test]
    fn gcd_fallback_handles_non_tower_periods() {
        // period 7: odd prime, but 2 is not primitive modulo 49, so the
        // fast evaluator is not available
        let s = BinarySequence::from_bits(vec![1, 0, 1, 0, 0, 1, 1], Provenance::Custom).unwrap();
        let cfg = SearchConfig::default();
        let profile = klc_brute_profile(&s, 4, &cfg).unwrap();
        assert_eq!(profile[0].0, lc_gcd(&s));
        assert_eq!(profile[4].0, 0);
        for w in profile.windows(2) {
            assert!(w[1].0 <= w[0].0);
        }
        // non-prime-power period
        let bits: Vec<u8> = (0..15).map(|i| u8::from(i % 4 == 0)).collect();
        let s = BinarySequence::from_bits(bits, Provenance::Custom).unwrap();
        let profile = klc_brute_profile(&s, 2, &cfg).unwrap();
        assert_eq!(profile[0].0, lc_gcd(&s));
        assert!(profile[1].0 <= profile[0].0);
    }

    #[test]
    fn evaluators_agree_position_by_position() {
        let s = gen_euler_threshold(3, 3).unwrap();
        let s_poly = Gf2Poly::from_sequence(&s);
        let fast = FactorEval::new(3, 3, &s_poly, 27).unwrap();
        let slow = GcdEval::new(&s_poly, 27);
        let mut fa = vec![0u64; fast.width()];
        let mut sa = vec![0u64; slow.width()];
        assert_eq!(fast.lc(&fa), slow.lc(&sa));
        // a deterministic pseudo-random toggle walk
        let mut state = 0x243f_6a88_85a3_08d3u64;
        for step in 0..200 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let pos = (state >> 33) as usize % 27;
            fast.toggle(&mut fa, pos);
            slow.toggle(&mut sa, pos);
            assert_eq!(fast.lc(&fa), slow.lc(&sa), "step {step}");
        }
    }

    #[test]
    fn oversized_period_is_refused() {
        let bits = vec![1u8; MAX_SEARCH_PERIOD + 1];
        let s = BinarySequence::from_bits(bits, Provenance::Custom).unwrap();
        assert!(matches!(
            klc_brute_profile(&s, 0, &SearchConfig::default()),
            Err(Error::UnsupportedCase(_))
        ));
    }

    #[test]
    fn all_zero_sequence() {
        let s = BinarySequence::from_bits(vec![0; 9], Provenance::Custom).unwrap();
        let (lc, w) = klc_brute(&s, 3, &SearchConfig::default()).unwrap();
        assert_eq!(lc, 0);
        assert!(w.positions.is_empty());
    }
}
