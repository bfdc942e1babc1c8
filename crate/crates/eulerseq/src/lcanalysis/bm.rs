//! Iterative LFSR synthesis over GF(2): from a finite bit stream,
//! the shortest linear recurrence generating it, maintained via the
//! classic discrepancy/update loop. Feeding two full periods of a
//! periodic sequence yields its linear complexity, which cross-checks
//! the gcd route on every sequence.

use crate::gf2poly::Gf2Poly;
use crate::seqgen::BinarySequence;

/// Shortest LFSR for the finite stream: returns the length L and the
/// connection polynomial C with C(0) = 1, deg C <= L, such that
/// s_n = sum_{e in C, e > 0} s_{n-e} for all n >= L.
pub fn berlekamp_massey(stream: &[u8]) -> (usize, Gf2Poly) {
    let mut c = Gf2Poly::one();
    let mut b = Gf2Poly::one();
    let mut l: usize = 0;
    let mut m: usize = 1;
    for n in 0..stream.len() {
        // discrepancy: the XOR over all terms of C applied at n, the
        // e = 0 term contributing s_n itself
        let mut d = 0u8;
        for e in c.exponents() {
            d ^= stream[n - e] & 1;
        }
        if d == 1 {
            if 2 * l <= n {
                let t = c.clone();
                c.xor_shl(&b, m);
                l = n + 1 - l;
                b = t;
                m = 1;
            } else {
                c.xor_shl(&b, m);
                m += 1;
            }
        } else {
            m += 1;
        }
    }
    (l, c)
}

/// The minimal polynomial X^L C(1/X) of the synthesized recurrence.
pub fn minimal_polynomial(l: usize, c: &Gf2Poly) -> Gf2Poly {
    let mut out = Gf2Poly::zero();
    for e in c.exponents() {
        out.toggle(l - e);
    }
    out
}

/// Linear complexity of a periodic sequence via synthesis over two full
/// periods (always enough, since the complexity is at most the period).
pub fn lc_bm(s: &BinarySequence) -> usize {
    let t = s.period();
    let mut doubled = Vec::with_capacity(2 * t);
    for i in 0..2 * t {
        doubled.push(s.bit(i));
    }
    berlekamp_massey(&doubled).0
}
