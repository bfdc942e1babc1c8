//! Dense polynomials over GF(2), packed 64 coefficients per word.
//!
//! Everything downstream reduces to a handful of operations here: XOR
//! addition, shifted XOR (the inner loop of multiplication and division),
//! Euclidean division, and gcd. The representation keeps an invariant
//! that the trailing word is nonzero, so taking the degree is O(1).

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use crate::error::{Error, Result};
use crate::numtheory::check_odd_prime;
use crate::seqgen::BinarySequence;

/// Degree of a polynomial; the zero polynomial gets `MinusInfinity`,
/// which orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial over GF(2). Bit i of the word vector is the coefficient
/// of X^i.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self { words: vec![1] }
    }

    pub fn monomial(n: usize) -> Self {
        let mut p = Self::zero();
        p.toggle(n);
        p
    }

    /// XOR of the monomials X^e; repeated exponents cancel in pairs.
    pub fn from_exponents(exponents: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exponents {
            p.toggle(e);
        }
        p
    }

    /// X^n + 1 (the zero polynomial when n = 0).
    pub fn x_n_plus_one(n: usize) -> Self {
        let mut p = Self::monomial(n);
        p.toggle(0);
        p
    }

    /// Coefficients from a 0/1 slice, index = exponent.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::NotBinary);
        }
        let mut words = vec![0u64; bits.len().div_ceil(64)];
        for (i, &b) in bits.iter().enumerate() {
            words[i / 64] |= (b as u64) << (i % 64);
        }
        let mut p = Self { words };
        p.trim();
        Ok(p)
    }

    /// One period of a sequence as its generating polynomial
    /// s_0 + s_1 X + ... + s_{T-1} X^{T-1}.
    pub fn from_sequence(s: &BinarySequence) -> Self {
        Self::from_bits(s.bits()).expect("sequence bits are always 0/1")
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = Self { words };
        p.trim();
        p
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.words.last() {
            None => Degree::MinusInfinity,
            Some(&w) => Degree::Finite(64 * (self.words.len() - 1) + 63 - w.leading_zeros() as usize),
        }
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn coeff(&self, i: usize) -> u8 {
        match self.words.get(i / 64) {
            Some(&w) => ((w >> (i % 64)) & 1) as u8,
            None => 0,
        }
    }

    pub fn toggle(&mut self, i: usize) {
        let word = i / 64;
        if word >= self.words.len() {
            self.words.resize(word + 1, 0);
        }
        self.words[word] ^= 1u64 << (i % 64);
        self.trim();
    }

    /// Multiply by X^n.
    pub fn shl(&self, n: usize) -> Self {
        let mut out = Self::zero();
        out.xor_shl(self, n);
        out
    }

    /// self ^= other * X^n; the workhorse for multiplication and division.
    pub(crate) fn xor_shl(&mut self, other: &Gf2Poly, n: usize) {
        if other.is_zero() {
            return;
        }
        let word_shift = n / 64;
        let bit_shift = n % 64;
        let needed = other.words.len() + word_shift + usize::from(bit_shift != 0);
        if self.words.len() < needed {
            self.words.resize(needed, 0);
        }
        if bit_shift == 0 {
            for (i, &w) in other.words.iter().enumerate() {
                self.words[i + word_shift] ^= w;
            }
        } else {
            for (i, &w) in other.words.iter().enumerate() {
                self.words[i + word_shift] ^= w << bit_shift;
                self.words[i + word_shift + 1] ^= w >> (64 - bit_shift);
            }
        }
        self.trim();
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Gf2Poly) -> Result<(Gf2Poly, Gf2Poly)> {
        let d = divisor.degree().finite().ok_or(Error::ZeroDivisor)?;
        let mut rem = self.clone();
        let mut quot = Gf2Poly::zero();
        while let Degree::Finite(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let shift = rd - d;
            quot.toggle(shift);
            rem.xor_shl(divisor, shift);
        }
        Ok((quot, rem))
    }

    pub fn rem(&self, divisor: &Gf2Poly) -> Result<Gf2Poly> {
        let d = divisor.degree().finite().ok_or(Error::ZeroDivisor)?;
        let mut rem = self.clone();
        while let Degree::Finite(rd) = rem.degree() {
            if rd < d {
                break;
            }
            rem.xor_shl(divisor, rd - d);
        }
        Ok(rem)
    }

    /// Does self divide other? The zero polynomial divides only itself.
    pub fn divides(&self, other: &Gf2Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).expect("divisor is nonzero here").is_zero()
    }

    pub fn gcd(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero inside the loop");
            a = b;
            b = r;
        }
        a
    }

    /// Ascending iterator over the exponents with coefficient 1.
    pub fn exponents(&self) -> Exponents<'_> {
        Exponents {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Little-endian nibble encoding: hex digit j holds the coefficients
    /// of X^{4j}..X^{4j+3}.
    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let deg = self.degree().finite().unwrap();
        let nibbles = deg / 4 + 1;
        let mut out = String::with_capacity(nibbles);
        for j in 0..nibbles {
            let word = self.words.get(j / 16).copied().unwrap_or(0);
            let nib = (word >> (4 * (j % 16))) & 0xf;
            out.push(char::from_digit(nib as u32, 16).unwrap());
        }
        out
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let mut words = vec![0u64; s.len().div_ceil(16)];
        for (j, ch) in s.chars().enumerate() {
            let nib = ch.to_digit(16).ok_or(Error::NotBinary)? as u64;
            words[j / 16] |= nib << (4 * (j % 16));
        }
        Ok(Self::from_words(words))
    }
}

pub struct Exponents<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Exponents<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(64 * self.index + bit)
    }
}

impl AddAssign<&Gf2Poly> for Gf2Poly {
    fn add_assign(&mut self, rhs: &Gf2Poly) {
        self.xor_shl(rhs, 0);
    }
}

impl Add<&Gf2Poly> for &Gf2Poly {
    type Output = Gf2Poly;

    fn add(self, rhs: &Gf2Poly) -> Gf2Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul<&Gf2Poly> for &Gf2Poly {
    type Output = Gf2Poly;

    fn mul(self, rhs: &Gf2Poly) -> Gf2Poly {
        // iterate the sparser side
        let (sparse, dense) = if self.weight() <= rhs.weight() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Gf2Poly::zero();
        for e in sparse.exponents() {
            out.xor_shl(dense, e);
        }
        out
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let exps: Vec<usize> = self.exponents().collect();
        for (i, e) in exps.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("X")?,
                _ => write!(f, "X^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

/// The degree-(p-1)p^{j-1} factor 1 + X^{p^{j-1}} + X^{2 p^{j-1}} + ... of
/// X^{p^j} - 1 over GF(2); irreducible exactly when 2 is a primitive root
/// modulo p^2 (for odd p not dividing 2^{p-1} - 1).
pub fn cyclotomic_factor(p: u64, j: u32) -> Result<Gf2Poly> {
    check_odd_prime(p)?;
    if j < 1 {
        return Err(Error::ExponentTooSmall { r: j, min: 1 });
    }
    let stride = (p as u128).pow(j - 1);
    let top = stride * (p as u128 - 1);
    if top >= crate::MAX_PERIOD as u128 {
        return Err(Error::PeriodTooLarge {
            period: top + 1,
            max: crate::MAX_PERIOD as u128,
        });
    }
    let exps: Vec<usize> = (0..p as usize).map(|i| i * stride as usize).collect();
    Ok(Gf2Poly::from_exponents(&exps))
}
