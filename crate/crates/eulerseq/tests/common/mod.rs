//! Property checks shared by the `properties` and `acceptance` targets:
//! every computation route must agree with every other wherever their
//! domains overlap, and the structural identities the constructions rely
//! on must hold verbatim on real data.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use eulerseq::cyclotomy::{ClassIndex, CyclotomicPartition};
use eulerseq::gf2poly::{cyclotomic_factor, Gf2Poly};
use eulerseq::lcanalysis::{
    klc_brute_profile, klc_formula, klc_structured, lc_bm, lc_gcd, FormulaValue, KlcValue,
    SearchConfig,
};
use eulerseq::numtheory::{euler_quotient, inverse_mod};
use eulerseq::seqgen::{
    gen_complement, gen_euler_classes, gen_euler_threshold, BinarySequence, Family, Provenance,
};

fn class_of(part: &CyclotomicPartition, u: u64) -> u64 {
    match part.class_of(u).unwrap() {
        ClassIndex::Class(l) => l,
        ClassIndex::NonUnit => panic!("{u} is not a unit"),
    }
}

/// Shifting the argument by multiples of p^r moves the quotient by a
/// computable correction: Q(u + c p^r) = Q(u) - c p^{r-1} u^{-1} mod p^r.
pub fn quotient_lift_adjustment() {
    for p in [3u64, 5] {
        for r in [1u32, 2, 3] {
            let modulus = (p as u128).pow(r);
            for u in 1..modulus {
                if u % p as u128 == 0 {
                    continue;
                }
                let base = euler_quotient(p, r, u).unwrap() as u128;
                let inv = inverse_mod(u, modulus).unwrap();
                for c in 0..2 * p as u128 {
                    let lifted = euler_quotient(p, r, u + c * modulus).unwrap() as u128;
                    let correction = c * (p as u128).pow(r - 1) % modulus * inv % modulus;
                    let expect = (base + modulus - correction) % modulus;
                    assert_eq!(lifted, expect, "p={p} r={r} u={u} c={c}");
                }
            }
        }
    }
}

/// The per-position threshold rule and the class-union rule build the
/// same sequence.
pub fn generation_routes() {
    for p in [3u64, 5, 7, 11] {
        for r in [2u32, 3] {
            let a = gen_euler_threshold(p, r).unwrap();
            let b = gen_euler_classes(p, r).unwrap();
            assert_eq!(a, b, "p={p} r={r}");
        }
    }
}

/// Reduction modulo p^r maps each class at level r+1 onto the class at
/// level r with the congruent index, one element to one element.
pub fn class_projection() {
    for (p, hi) in [(3u64, 3u32), (5, 3), (5, 4)] {
        let upper = CyclotomicPartition::build(p, hi).unwrap();
        let lower = CyclotomicPartition::build(p, hi - 1).unwrap();
        let lower_modulus = p.pow(hi - 1);
        let stride = p.pow(hi - 2); // class count at the lower level
        for u in 0..upper.modulus() {
            if u % p == 0 {
                continue;
            }
            let l_hi = class_of(&upper, u);
            let l_lo = class_of(&lower, u % lower_modulus);
            assert_eq!(l_hi % stride, l_lo, "p={p} hi={hi} u={u}");
        }
    }
}

/// The p lifts of a unit land in p distinct classes one level up, all
/// sharing the lower class index modulo the lower class count.
pub fn lift_spread() {
    for (p, r) in [(3u64, 2u32), (5, 2), (3, 3)] {
        let lower = CyclotomicPartition::build(p, r).unwrap();
        let upper = CyclotomicPartition::build(p, r + 1).unwrap();
        let modulus = p.pow(r);
        let stride = p.pow(r - 1);
        for u in 1..modulus {
            if u % p == 0 {
                continue;
            }
            let l0 = class_of(&lower, u);
            let mut seen: Vec<u64> = (0..p)
                .map(|j| class_of(&upper, u + j * modulus))
                .collect();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len() as u64, p, "lifts of {u} collide");
            for l in &seen {
                assert_eq!(l % stride, l0, "lift class {l} of {u}");
            }
        }
    }
}

/// Lifting one position of the threshold sequence: a one-position lifts
/// to (p+1)/2 ones among its p preimages, a zero unit position to
/// (p-1)/2.
pub fn one_bit_split() {
    for (p, r) in [(3u64, 2u32), (5, 2), (5, 3)] {
        let low = gen_euler_threshold(p, r).unwrap();
        let high = gen_euler_threshold(p, r + 1).unwrap();
        let modulus = p.pow(r) as usize;
        for u in 0..modulus {
            if u as u64 % p == 0 {
                continue;
            }
            let ones: u64 = (0..p)
                .map(|j| high.bit(u + j as usize * modulus) as u64)
                .sum();
            let expect = if low.bit(u) == 1 { (p + 1) / 2 } else { (p - 1) / 2 };
            assert_eq!(ones, expect, "p={p} r={r} u={u}");
        }
    }
}

/// Folding a period onto the next-lower period length: for p = 1 mod 4
/// the threshold sequence reproduces its lower-level self; for
/// p = 3 mod 4 it reproduces the lower-level complement.
pub fn folding() {
    let fold = |s: &BinarySequence, t: usize| {
        Gf2Poly::from_sequence(s)
            .rem(&Gf2Poly::x_n_plus_one(t))
            .unwrap()
    };
    let s53 = gen_euler_threshold(5, 3).unwrap();
    assert_eq!(
        fold(&s53, 25),
        Gf2Poly::from_sequence(&gen_euler_threshold(5, 2).unwrap())
    );
    let s33 = gen_euler_threshold(3, 3).unwrap();
    assert_eq!(
        fold(&s33, 9),
        Gf2Poly::from_sequence(&gen_complement(3, 2).unwrap())
    );
}

/// Base-field divisibility pattern of the threshold sequence: X + 1
/// always divides; the level-1 factor divides exactly when
/// (p^{r-1} - 1)/2 is even; no higher-level factor ever divides.
pub fn base_divisibility() {
    for (p, r) in [(3u64, 2u32), (3, 3), (5, 2), (5, 3)] {
        let s = Gf2Poly::from_sequence(&gen_euler_threshold(p, r).unwrap());
        assert!(Gf2Poly::x_n_plus_one(1).divides(&s), "p={p} r={r}: X+1");
        let level1 = cyclotomic_factor(p, 1).unwrap();
        let constant = (p.pow(r - 1) - 1) / 2 % 2;
        let rem = s.rem(&level1).unwrap();
        let expect = if constant == 0 { Gf2Poly::zero() } else { Gf2Poly::one() };
        assert_eq!(rem, expect, "p={p} r={r}: level-1 remainder");
        for j in 2..=r {
            let f = cyclotomic_factor(p, j).unwrap();
            assert!(!f.divides(&s), "p={p} r={r}: level-{j} factor divides");
        }
    }
}

/// Synthesis and gcd agree on arbitrary (not structured) periods.
pub fn bm_vs_gcd_random() {
    let mut rng = StdRng::seed_from_u64(0x0eed_5eed);
    for _ in 0..200 {
        let t = rng.gen_range(1..=64);
        let bits: Vec<u8> = (0..t).map(|_| rng.gen_range(0..=1u8)).collect();
        let s = BinarySequence::from_bits(bits, Provenance::Custom).unwrap();
        assert_eq!(lc_bm(&s), lc_gcd(&s), "period {t}");
    }
}

fn assert_structured_contains_brute(s: &BinarySequence, k_max: usize) {
    let cfg = SearchConfig::default();
    let brute = klc_brute_profile(s, k_max, &cfg).unwrap();
    let (profile, _) = klc_structured(s, k_max, &cfg).unwrap();
    for (entry, (lc, _)) in profile.entries.iter().zip(&brute) {
        match entry.value {
            KlcValue::Exact(v) => assert_eq!(v, *lc, "k={}", entry.k),
            KlcValue::Interval { lo, hi } => {
                assert!(lo <= *lc && *lc <= hi, "k={}: {lc} not in [{lo}, {hi}]", entry.k)
            }
        }
    }
}

/// The subset route is exact (and equal to exhaustion) whenever nothing
/// is skipped, and brackets the exhaustive truth otherwise.
pub fn structured_vs_brute_small() {
    assert_structured_contains_brute(&gen_euler_threshold(3, 2).unwrap(), 4);
    assert_structured_contains_brute(&gen_complement(3, 2).unwrap(), 4);
    assert_structured_contains_brute(&gen_euler_threshold(5, 2).unwrap(), 9);
    assert_structured_contains_brute(&gen_euler_threshold(3, 3).unwrap(), 8);
}

pub fn structured_vs_brute_heavy() {
    assert_structured_contains_brute(&gen_complement(5, 2).unwrap(), 12);
    // period 125: the search is only feasible for small k, the subset
    // route must bracket it there
    assert_structured_contains_brute(&gen_euler_threshold(5, 3).unwrap(), 4);
}

fn assert_formula_contains_brute(p: u64, r: u32, family: Family, k_max: usize) {
    let s = match family {
        Family::Euler => gen_euler_threshold(p, r).unwrap(),
        Family::EulerComplement => gen_complement(p, r).unwrap(),
        _ => unreachable!(),
    };
    let cfg = SearchConfig::default();
    let brute = klc_brute_profile(&s, k_max, &cfg).unwrap();
    for (k, (lc, _)) in brute.iter().enumerate() {
        match klc_formula(p, r, k, family).unwrap() {
            FormulaValue::Exact(v) => assert_eq!(v, *lc, "p={p} r={r} {family} k={k}"),
            FormulaValue::Bounds { lo, hi } => assert!(
                lo <= *lc && *lc <= hi,
                "p={p} r={r} {family} k={k}: {lc} not in [{lo}, {hi}]"
            ),
            FormulaValue::Uncovered => {}
        }
    }
}

/// Closed forms versus ground truth on every instance small enough to
/// exhaust.
pub fn formula_vs_brute() {
    assert_formula_contains_brute(3, 2, Family::Euler, 4);
    assert_formula_contains_brute(3, 2, Family::EulerComplement, 4);
    assert_formula_contains_brute(5, 2, Family::Euler, 9);
    assert_formula_contains_brute(5, 2, Family::EulerComplement, 12);
    assert_formula_contains_brute(3, 3, Family::Euler, 8);
}

/// Closed forms versus the subset route on the large instance the
/// search cannot reach: exact values must coincide, brackets must
/// overlap consistently.
pub fn formula_vs_structured_heavy() {
    let s = gen_euler_threshold(5, 3).unwrap();
    let cfg = SearchConfig::default();
    let (profile, report) = klc_structured(&s, 48, &cfg).unwrap();
    assert!(!report.skipped.is_empty());
    for entry in &profile.entries {
        let formula = klc_formula(5, 3, entry.k, Family::Euler).unwrap();
        match (entry.value, formula) {
            (KlcValue::Exact(a), FormulaValue::Exact(b)) => {
                assert_eq!(a, b, "k={}", entry.k)
            }
            (KlcValue::Interval { lo, hi }, FormulaValue::Exact(b)) => {
                assert!(lo <= b && b <= hi, "k={}: {b} not in [{lo}, {hi}]", entry.k)
            }
            (KlcValue::Exact(a), FormulaValue::Bounds { lo, hi }) => {
                assert!(lo <= a && a <= hi, "k={}: {a} not in [{lo}, {hi}]", entry.k)
            }
            (KlcValue::Interval { lo: alo, hi: ahi }, FormulaValue::Bounds { lo, hi }) => {
                assert!(alo.max(lo) <= ahi.min(hi), "k={}: disjoint brackets", entry.k)
            }
            (_, FormulaValue::Uncovered) => {}
        }
    }
    // the two pinned-down spots of the large profile, plus the zero tail
    assert_eq!(profile.entries[0].value, KlcValue::Exact(120));
    assert_eq!(profile.entries[40].value, KlcValue::Exact(20));
    assert_eq!(profile.entries[48].value, KlcValue::Exact(0));
}

/// Complement values at level 2 against the subset route (which is
/// fully exact there).
pub fn complement_formula_vs_structured() {
    for p in [3u64, 5] {
        let s = gen_complement(p, 2).unwrap();
        let k_max = (p * p - 1) as usize / 2;
        let (profile, report) = klc_structured(&s, k_max, &SearchConfig::default()).unwrap();
        assert!(report.skipped.is_empty());
        for entry in &profile.entries {
            let formula = klc_formula(p, 2, entry.k, Family::EulerComplement).unwrap();
            assert_eq!(
                FormulaValue::Exact(match entry.value {
                    KlcValue::Exact(v) => v,
                    other => panic!("unexpected bracket {other:?}"),
                }),
                formula,
                "p={p} k={}",
                entry.k
            );
        }
    }
}
