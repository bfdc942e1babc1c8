//! The structured route to k-error values: for each divisor d of
//! X^T - 1 built as a subset product of the tower factors, find the
//! minimum-weight error pattern that makes d divide S + e. That weight
//! w_d is the entry fee for the divisor, and the k-error complexity is
//! T minus the largest degree whose fee is within k.
//!
//! The patterns e with d | S + e form the coset S + d*GF(2)[X]_{< T-deg d},
//! scanned exhaustively in Gray-code order so each step is one XOR of a
//! precomputed shift of d. Subsets whose coset dimension exceeds the
//! configured limit are skipped but still constrain the result through
//! monotone lower bounds (enlarging the divisor can only raise the fee),
//! and the report says exactly which subsets were skipped.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2poly::Gf2Poly;
use crate::numtheory::is_two_primitive_mod_p2;
use crate::seqgen::BinarySequence;

use super::profile::{ErrorWitness, KlcEntry, KlcProfile, KlcValue, Method};
use super::util::{lex_lt, popcount, run_with_workers, witness_from_pattern};
use super::{factor_tower, prime_power_of, SearchConfig};

/// Minimum weight over the coset of S modulo `divisor`, with the
/// lexicographically least achieving pattern. The divisor must divide
/// X^period - 1 for the result to speak about complexity.
pub fn min_weight_coset(
    s_poly: &Gf2Poly,
    divisor: &Gf2Poly,
    period: usize,
    cfg: &SearchConfig,
) -> Result<(usize, ErrorWitness)> {
    let d_deg = divisor.degree().finite().ok_or(Error::ZeroDivisor)?;
    if d_deg > period || !divisor.divides(&Gf2Poly::x_n_plus_one(period)) {
        return Err(Error::NotAPeriodDivisor { period });
    }
    let m = period - d_deg;
    if m > cfg.coset_dim_limit {
        return Err(Error::CosetDimExceeded { dim: m, limit: cfg.coset_dim_limit });
    }
    // weight zero is achievable exactly when the divisor already divides
    // S, and the empty pattern is trivially the lexicographic minimum
    if divisor.divides(s_poly) {
        return Ok((0, ErrorWitness::empty()));
    }
    let width = period.div_ceil(64);
    let mut base = vec![0u64; width];
    base[..s_poly.words().len()].copy_from_slice(s_poly.words());
    // shifts[j] = divisor * X^j, ready to XOR into a pattern
    let shifts: Vec<Vec<u64>> = (0..m)
        .map(|j| {
            let sh = divisor.shl(j);
            let mut w = vec![0u64; width];
            w[..sh.words().len()].copy_from_slice(sh.words());
            w
        })
        .collect();
    let total: u64 = 1 << m;
    let chunk: u64 = 1 << 16;
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let scan_chunk = |lo: u64| -> (usize, Vec<u64>) {
        let hi = (lo + chunk).min(total);
        // Gray code of the starting index, applied directly
        let mut e = base.clone();
        let mut g = lo ^ (lo >> 1);
        while g != 0 {
            let j = g.trailing_zeros() as usize;
            for (a, b) in e.iter_mut().zip(&shifts[j]) {
                *a ^= b;
            }
            g &= g - 1;
        }
        let mut best_w = popcount(&e);
        let mut best = e.clone();
        for idx in lo + 1..hi {
            let j = idx.trailing_zeros() as usize;
            for (a, b) in e.iter_mut().zip(&shifts[j]) {
                *a ^= b;
            }
            let w = popcount(&e);
            if w < best_w || (w == best_w && lex_lt(&e, &best)) {
                best_w = w;
                best.copy_from_slice(&e);
            }
        }
        (best_w, best)
    };
    let (w, pattern) = run_with_workers(cfg.workers, || {
        starts
            .into_par_iter()
            .map(scan_chunk)
            .reduce(
                || (usize::MAX, Vec::new()),
                |a, b| {
                    if b.0 < a.0 || (b.0 == a.0 && !b.1.is_empty() && (a.1.is_empty() || lex_lt(&b.1, &a.1))) {
                        b
                    } else {
                        a
                    }
                },
            )
    });
    Ok((w, witness_from_pattern(&pattern)))
}

/// One divisor subset that was searched exhaustively.
#[derive(Debug, Clone)]
pub struct SubsetOutcome {
    /// Bit i set means tower factor i is in the product (bit 0 is X + 1,
    /// bit j >= 1 the level-j factor).
    pub mask: u32,
    pub degree: usize,
    /// Minimum error weight that makes the product divide S + e.
    pub weight: usize,
    pub witness: ErrorWitness,
}

/// One divisor subset that was too large to search.
#[derive(Debug, Clone)]
pub struct SkippedSubset {
    pub mask: u32,
    pub degree: usize,
    /// Sound lower bound on its entry fee, from its searched subsets.
    pub weight_lower_bound: usize,
}

/// Full account of a structured run: what was searched, what was
/// skipped, and why the per-k values follow.
#[derive(Debug, Clone)]
pub struct StructuredReport {
    pub period: usize,
    pub computed: Vec<SubsetOutcome>,
    pub skipped: Vec<SkippedSubset>,
}

impl StructuredReport {
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "period={}", self.period).unwrap();
        for c in &self.computed {
            writeln!(
                out,
                "subset mask={:#06b} degree={} min_errors={}",
                c.mask, c.degree, c.weight
            )
            .unwrap();
        }
        for s in &self.skipped {
            writeln!(
                out,
                "skipped mask={:#06b} degree={} min_errors>={}",
                s.mask, s.degree, s.weight_lower_bound
            )
            .unwrap();
        }
        out
    }
}

/// Per-k values via the divisor-subset route, on odd prime-power periods
/// with an irreducible tower. Exact wherever every subset that could
/// matter was searched; bracketed otherwise.
pub fn klc_structured(
    s: &BinarySequence,
    k_max: usize,
    cfg: &SearchConfig,
) -> Result<(KlcProfile, StructuredReport)> {
    let t = s.period();
    let (p, r) = prime_power_of(t).ok_or_else(|| {
        Error::UnsupportedCase(format!(
            "period {t} is not an odd prime power in the supported range"
        ))
    })?;
    if !is_two_primitive_mod_p2(p)? {
        return Err(Error::TwoNotPrimitive(p));
    }
    let factors = factor_tower(p, r)?;
    let degrees: Vec<usize> = factors
        .iter()
        .map(|f| f.degree().finite().expect("tower factors are nonzero"))
        .collect();
    let n = factors.len();
    let s_poly = Gf2Poly::from_sequence(s);
    let mut computed: Vec<SubsetOutcome> = Vec::new();
    let mut skipped: Vec<SkippedSubset> = Vec::new();
    // per-mask fee; for skipped masks a lower bound. masks are processed
    // in increasing order so all submasks are already settled.
    let mut fee = vec![0usize; 1 << n];
    let mut exact = vec![false; 1 << n];
    for mask in 0u32..1 << n {
        if mask == 0 {
            // the trivial divisor: every pattern qualifies, the empty one
            // has weight zero
            computed.push(SubsetOutcome {
                mask,
                degree: 0,
                weight: 0,
                witness: ErrorWitness::empty(),
            });
            exact[0] = true;
            continue;
        }
        let degree: usize = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| degrees[i])
            .sum();
        let m = t - degree;
        if m <= cfg.coset_dim_limit {
            let mut d = Gf2Poly::one();
            for (i, f) in factors.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    d = &d * f;
                }
            }
            let (w, witness) = min_weight_coset(&s_poly, &d, t, cfg)?;
            fee[mask as usize] = w;
            exact[mask as usize] = true;
            computed.push(SubsetOutcome { mask, degree, weight: w, witness });
            continue;
        }
        // too large to search: a quick divisibility test still settles
        // fee zero exactly, otherwise inherit the best submask bound
        let mut d = Gf2Poly::one();
        for (i, f) in factors.iter().enumerate() {
            if mask & (1 << i) != 0 {
                d = &d * f;
            }
        }
        if d.divides(&s_poly) {
            fee[mask as usize] = 0;
            exact[mask as usize] = true;
            computed.push(SubsetOutcome {
                mask,
                degree,
                weight: 0,
                witness: ErrorWitness::empty(),
            });
            continue;
        }
        let mut lb = 1usize;
        for i in 0..n {
            if mask & (1 << i) != 0 {
                lb = lb.max(fee[(mask ^ (1 << i)) as usize]);
            }
        }
        fee[mask as usize] = lb;
        exact[mask as usize] = false;
        skipped.push(SkippedSubset { mask, degree, weight_lower_bound: lb });
    }
    let mut entries = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let best = computed
            .iter()
            .filter(|c| c.weight <= k)
            .max_by_key(|c| c.degree)
            .expect("the trivial subset always qualifies");
        let open_degree = skipped
            .iter()
            .filter(|sk| sk.weight_lower_bound <= k && sk.degree > best.degree)
            .map(|sk| sk.degree)
            .max();
        let (value, method, witness) = match open_degree {
            None => (
                KlcValue::Exact(t - best.degree),
                Method::Coset,
                Some(best.witness.clone()),
            ),
            Some(d) => (
                KlcValue::Interval { lo: t - d, hi: t - best.degree },
                Method::Bound,
                None,
            ),
        };
        entries.push(KlcEntry { k, value, method, witness });
    }
    let profile = KlcProfile {
        p: Some(p),
        r: Some(r),
        family: s.provenance().family(),
        entries,
    };
    profile.check_consistency()?;
    let report = StructuredReport { period: t, computed, skipped };
    Ok((profile, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2poly::cyclotomic_factor;
    use crate::seqgen::{gen_complement, gen_euler_threshold};

    #[test]
    fn coset_minimum_for_the_small_top_factor() {
        // the level-3 factor for p = 3 has degree 18; the coset has 2^9
        // members and its minimum weight is exactly the critical error
        // count 6
        let s = gen_euler_threshold(3, 3).unwrap();
        let s_poly = Gf2Poly::from_sequence(&s);
        let top = cyclotomic_factor(3, 3).unwrap();
        let cfg = SearchConfig::default();
        let (w, witness) = min_weight_coset(&s_poly, &top, 27, &cfg).unwrap();
        assert_eq!(w, 6);
        // the achieved pattern really lands in the coset
        let e = Gf2Poly::from_exponents(&witness.positions);
        assert!(top.divides(&(&s_poly + &e)));
    }

    #[test]
    fn coset_of_the_full_modulus_is_the_sequence_itself() {
        let s = gen_euler_threshold(3, 2).unwrap();
        let s_poly = Gf2Poly::from_sequence(&s);
        let full = Gf2Poly::x_n_plus_one(9);
        let (w, witness) = min_weight_coset(&s_poly, &full, 9, &cfg_default()).unwrap();
        assert_eq!(w, 2);
        assert_eq!(witness.positions, vec![4, 5]);
    }

    fn cfg_default() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn coset_guards() {
        let s_poly = Gf2Poly::one();
        let cfg = SearchConfig { coset_dim_limit: 4, ..SearchConfig::default() };
        // dimension 9 - 1 = 8 exceeds the limit of 4
        let err = min_weight_coset(&s_poly, &Gf2Poly::x_n_plus_one(1), 9, &cfg).unwrap_err();
        assert!(matches!(err, Error::CosetDimExceeded { dim: 8, limit: 4 }));
        // X^2 + X + 1 does not divide X^9 + 1? it does (3 | 9); use a
        // genuine non-divisor instead
        let bad = Gf2Poly::from_exponents(&[2, 0]); // (X + 1)^2, not squarefree-compatible
        assert!(matches!(
            min_weight_coset(&s_poly, &bad, 9, &cfg),
            Err(Error::NotAPeriodDivisor { period: 9 })
        ));
        assert!(matches!(
            min_weight_coset(&s_poly, &Gf2Poly::zero(), 9, &cfg),
            Err(Error::ZeroDivisor)
        ));
    }

    #[test]
    fn structured_profile_for_the_small_reference() {
        // period 27: every subset is within the default dimension limit,
        // so the whole profile is exact and matches the published values
        let s = gen_euler_threshold(3, 3).unwrap();
        let (profile, report) = klc_structured(&s, 6, &cfg_default()).unwrap();
        let values: Vec<KlcValue> = profile.entries.iter().map(|e| e.value).collect();
        let expect: Vec<KlcValue> =
            [24, 24, 20, 20, 18, 18, 8].iter().map(|&v| KlcValue::Exact(v)).collect();
        assert_eq!(values, expect);
        assert!(report.skipped.is_empty());
        assert_eq!(report.computed.len(), 16);
        // every witness stays within its error allowance and achieves
        // the claimed value
        let s_poly = Gf2Poly::from_sequence(&s);
        for entry in &profile.entries {
            let w = entry.witness.as_ref().unwrap();
            assert!(w.weight() <= entry.k);
            let e = Gf2Poly::from_exponents(&w.positions);
            assert_eq!(
                super::super::lc_from_polynomial(&(&s_poly + &e), 27),
                match entry.value {
                    KlcValue::Exact(v) => v,
                    _ => unreachable!(),
                },
                "k={}",
                entry.k
            );
        }
    }

    #[test]
    fn structured_level_two() {
        let s = gen_euler_threshold(3, 2).unwrap();
        let (profile, _) = klc_structured(&s, 3, &cfg_default()).unwrap();
        let values: Vec<KlcValue> = profile.entries.iter().map(|e| e.value).collect();
        assert_eq!(
            values,
            vec![
                KlcValue::Exact(8),
                KlcValue::Exact(7),
                KlcValue::Exact(0),
                KlcValue::Exact(0)
            ]
        );
        let c = gen_complement(3, 2).unwrap();
        let (profile, _) = klc_structured(&c, 4, &cfg_default()).unwrap();
        let values: Vec<usize> = profile.entries.iter().map(|e| e.value.hi()).collect();
        assert_eq!(values, vec![6, 6, 2, 2, 0]);
        assert!(profile.entries.iter().all(|e| matches!(e.value, KlcValue::Exact(_))));
    }

    #[test]
    fn structured_skips_are_reported_and_sound() {
        // with a tight dimension limit the large subsets are skipped and
        // small-k values degrade to brackets that still contain truth
        let s = gen_euler_threshold(3, 3).unwrap();
        let cfg = SearchConfig { coset_dim_limit: 10, ..SearchConfig::default() };
        let (profile, report) = klc_structured(&s, 6, &cfg).unwrap();
        assert!(!report.skipped.is_empty());
        let truth = [24usize, 24, 20, 20, 18, 18, 8];
        for (entry, &v) in profile.entries.iter().zip(&truth) {
            assert!(entry.value.contains(v), "k={} {:?}", entry.k, entry.value);
        }
        // the report text mentions the skips
        let text = report.to_text();
        assert!(text.contains("skipped"));
    }

    #[test]
    fn structured_rejects_unusable_periods() {
        let bits: Vec<u8> = (0..15).map(|i| u8::from(i % 2 == 0)).collect();
        let s = BinarySequence::from_bits(bits, crate::seqgen::Provenance::Custom).unwrap();
        assert!(matches!(
            klc_structured(&s, 2, &cfg_default()),
            Err(Error::UnsupportedCase(_))
        ));
        let bits = vec![1u8; 49];
        let s = BinarySequence::from_bits(bits, crate::seqgen::Provenance::Custom).unwrap();
        assert!(matches!(
            klc_structured(&s, 2, &cfg_default()),
            Err(Error::TwoNotPrimitive(7))
        ));
    }
}
