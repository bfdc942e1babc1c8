//! Linear complexity and k-error linear complexity, by four independent
//! routes that cross-check each other:
//!
//! * the gcd route: LC = period - deg gcd(S(X), X^T - 1);
//! * an iterative synthesis over two periods ([`bm`]);
//! * exhaustive search over low-weight error patterns ([`brute`]);
//! * divisor-subset search driven by minimum-weight coset members
//!   ([`coset`]);
//!
//! plus closed-form values and bounds where published results apply
//! ([`formula`]).

pub mod bm;
pub mod brute;
pub mod coset;
pub mod formula;
pub mod profile;
pub(crate) mod util;

pub use bm::{berlekamp_massey, lc_bm, minimal_polynomial};
pub use brute::{klc_brute, klc_brute_profile, max_feasible_k, pattern_count, SearchConfig};
pub use coset::{klc_structured, min_weight_coset, SkippedSubset, StructuredReport, SubsetOutcome};
pub use formula::{formula_profile, klc_formula, klc_recursion, lc_formula, FormulaValue};
pub use profile::{ErrorWitness, KlcEntry, KlcProfile, KlcValue, Method};

use crate::cyclotomy::CyclotomicPartition;
use crate::error::{Error, Result};
use crate::gf2poly::{cyclotomic_factor, Gf2Poly};
use crate::numtheory::{check_odd_prime, factor, MAX_PRIME};
use crate::seqgen::BinarySequence;

/// Linear complexity of one period, computed as T - deg gcd(S(X), X^T - 1).
pub fn lc_gcd(s: &BinarySequence) -> usize {
    lc_from_polynomial(&Gf2Poly::from_sequence(s), s.period())
}

/// The same computation starting from an explicit period polynomial,
/// for callers that have already applied an error pattern.
pub fn lc_from_polynomial(s_poly: &Gf2Poly, period: usize) -> usize {
    let modulus = Gf2Poly::x_n_plus_one(period);
    let g = s_poly.gcd(&modulus);
    period - g.degree().finite().expect("gcd with a nonzero modulus is nonzero")
}

/// The complete factorization skeleton of X^{p^r} - 1 over GF(2):
/// X + 1 followed by the level-j factors for j = 1..r. The product is
/// X^{p^r} - 1, squarefree; every factor is irreducible exactly when 2
/// is a primitive root modulo p^2.
pub fn factor_tower(p: u64, r: u32) -> Result<Vec<Gf2Poly>> {
    check_odd_prime(p)?;
    if r < 1 {
        return Err(Error::ExponentTooSmall { r, min: 1 });
    }
    let mut tower = Vec::with_capacity(r as usize + 1);
    tower.push(Gf2Poly::x_n_plus_one(1));
    for j in 1..=r {
        tower.push(cyclotomic_factor(p, j)?);
    }
    Ok(tower)
}

/// Recognize an odd prime power (with the prime inside the supported
/// range); used to pick the fast evaluator for searches.
pub fn prime_power_of(n: usize) -> Option<(u64, u32)> {
    if n < 3 || n % 2 == 0 {
        return None;
    }
    let factors = factor(n as u128).ok()?;
    match factors.as_slice() {
        [(p, k)] if *p <= MAX_PRIME as u128 => Some((*p as u64, *k)),
        _ => None,
    }
}

/// The explicit error pattern that realizes the critical drop of the
/// threshold sequence's k-error linear complexity: the union of the
/// classes indexed by i*p^{r-2} + j over
/// i in [(p+1)/2, p-1], j in [0, (p^{r-2}-1)/2] and
/// i in [0, (p-3)/2],  j in [(p^{r-2}+1)/2, p^{r-2}-1].
/// Its weight is p^{r-2}(p-1)^2/2.
pub fn construct_optimal_error(p: u64, r: u32) -> Result<Gf2Poly> {
    check_odd_prime(p)?;
    if r < 2 {
        return Err(Error::ExponentTooSmall { r, min: 2 });
    }
    let part = CyclotomicPartition::build(p, r)?;
    let pr2 = p.pow(r - 2);
    let mut e = Gf2Poly::zero();
    let mut add_class = |l: u64| {
        for &u in part.class(l).expect("class index in range") {
            e.toggle(u as usize);
        }
    };
    for i in (p + 1) / 2..=p - 1 {
        for j in 0..=(pr2 - 1) / 2 {
            add_class(i * pr2 + j);
        }
    }
    for i in 0..=(p - 3) / 2 {
        for j in (pr2 + 1) / 2..pr2 {
            add_class(i * pr2 + j);
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqgen::{gen_complement, gen_euler_threshold};

    #[test]
    fn lc_of_the_reference_sequences() {
        assert_eq!(lc_gcd(&gen_euler_threshold(3, 2).unwrap()), 8);
        assert_eq!(lc_gcd(&gen_euler_threshold(3, 3).unwrap()), 24);
        assert_eq!(lc_gcd(&gen_euler_threshold(5, 2).unwrap()), 20);
        assert_eq!(lc_gcd(&gen_euler_threshold(5, 3).unwrap()), 120);
        assert_eq!(lc_gcd(&gen_complement(3, 2).unwrap()), 6);
        assert_eq!(lc_gcd(&gen_complement(5, 2).unwrap()), 24);
    }

    #[test]
    fn lc_edge_cases() {
        // all-zero period: gcd is the modulus itself
        assert_eq!(lc_from_polynomial(&Gf2Poly::zero(), 9), 0);
        // a single one: gcd is 1
        assert_eq!(lc_from_polynomial(&Gf2Poly::one(), 9), 9);
    }

    #[test]
    fn tower_multiplies_back() {
        for (p, r) in [(3u64, 3u32), (5, 2), (7, 2)] {
            let tower = factor_tower(p, r).unwrap();
            assert_eq!(tower.len(), r as usize + 1);
            let mut prod = Gf2Poly::one();
            for f in &tower {
                prod = &prod * f;
            }
            assert_eq!(prod, Gf2Poly::x_n_plus_one(p.pow(r) as usize));
        }
    }

    #[test]
    fn prime_power_recognition() {
        assert_eq!(prime_power_of(27), Some((3, 3)));
        assert_eq!(prime_power_of(125), Some((5, 3)));
        assert_eq!(prime_power_of(7), Some((7, 1)));
        assert_eq!(prime_power_of(15), None);
        assert_eq!(prime_power_of(8), None);
        assert_eq!(prime_power_of(1), None);
    }

    #[test]
    fn optimal_error_for_27_hits_the_critical_value() {
        // classes 6 = {10,17}, 7 = {2,25}, 2 = {13,14}
        let e = construct_optimal_error(3, 3).unwrap();
        assert_eq!(e.weight(), 6);
        let expect = Gf2Poly::from_exponents(&[10, 17, 2, 25, 13, 14]);
        assert_eq!(e, expect);
        let s = Gf2Poly::from_sequence(&gen_euler_threshold(3, 3).unwrap());
        assert_eq!(lc_from_polynomial(&(&s + &e), 27), 8);
    }

    #[test]
    fn optimal_error_for_125() {
        let e = construct_optimal_error(5, 3).unwrap();
        assert_eq!(e.weight(), 40);
        let s = Gf2Poly::from_sequence(&gen_euler_threshold(5, 3).unwrap());
        assert_eq!(lc_from_polynomial(&(&s + &e), 125), 20);
    }

    #[test]
    fn optimal_error_weight_formula() {
        for (p, r) in [(3u64, 2u32), (3, 3), (5, 2), (5, 3), (7, 2)] {
            let e = construct_optimal_error(p, r).unwrap();
            let expect = p.pow(r - 2) * (p - 1) * (p - 1) / 2;
            assert_eq!(e.weight() as u64, expect, "p={p} r={r}");
        }
    }

    #[test]
    fn optimal_error_at_level_two_is_the_sequence_itself() {
        // for r = 2 the construction selects exactly the one-classes, so
        // adding it cancels the sequence completely
        let s = gen_euler_threshold(5, 2).unwrap();
        let e = construct_optimal_error(5, 2).unwrap();
        assert_eq!(e, Gf2Poly::from_sequence(&s));
    }
}
