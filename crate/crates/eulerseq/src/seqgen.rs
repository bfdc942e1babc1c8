//! Generation of the binary sequences themselves, plus a plain-text file
//! format for moving them in and out of the command-line tools.
//!
//! All families assign bit 0 to the multiples of p (with the one
//! documented exception in the multi-level construction, which places the
//! point 0 by convention) and decide the unit positions from cyclotomic
//! class membership.

use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::cyclotomy::{CyclotomicPartition, GeneralizedPartition};
use crate::error::{Error, Result};
use crate::numtheory::{check_odd_prime, checked_prime_power, euler_quotient};
use crate::MAX_PERIOD;

/// Which construction produced a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Euler,
    EulerComplement,
    Xzlh,
    Custom,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Euler => "euler",
            Family::EulerComplement => "euler-complement",
            Family::Xzlh => "xzlh",
            Family::Custom => "custom",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euler" => Ok(Family::Euler),
            "euler-complement" => Ok(Family::EulerComplement),
            "xzlh" => Ok(Family::Xzlh),
            "custom" => Ok(Family::Custom),
            other => Err(Error::UnsupportedCase(format!(
                "unknown sequence family {other:?}"
            ))),
        }
    }
}

/// Full construction parameters, kept alongside the bits so reports can
/// say where a sequence came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Euler { p: u64, r: u32 },
    EulerComplement { p: u64, r: u32 },
    Xzlh { p: u64, r: u32, f: u64, b: u64, g: u64 },
    Custom,
}

impl Provenance {
    pub fn family(&self) -> Family {
        match self {
            Provenance::Euler { .. } => Family::Euler,
            Provenance::EulerComplement { .. } => Family::EulerComplement,
            Provenance::Xzlh { .. } => Family::Xzlh,
            Provenance::Custom => Family::Custom,
        }
    }

    pub fn prime_power(&self) -> Option<(u64, u32)> {
        match *self {
            Provenance::Euler { p, r }
            | Provenance::EulerComplement { p, r }
            | Provenance::Xzlh { p, r, .. } => Some((p, r)),
            Provenance::Custom => None,
        }
    }
}

/// One period of a binary sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinarySequence {
    bits: Vec<u8>,
    provenance: Provenance,
}

impl BinarySequence {
    pub fn from_bits(bits: Vec<u8>, provenance: Provenance) -> Result<Self> {
        if bits.is_empty() || bits.len() > MAX_PERIOD {
            return Err(Error::PeriodTooLarge {
                period: bits.len() as u128,
                max: MAX_PERIOD as u128,
            });
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::NotBinary);
        }
        Ok(Self { bits, provenance })
    }

    pub fn period(&self) -> usize {
        self.bits.len()
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i % self.bits.len()]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Number of ones in one period.
    pub fn weight(&self) -> usize {
        self.bits.iter().map(|&b| b as usize).sum()
    }

    /// Write in the plain-text exchange format: a comment header recording
    /// the construction, then the period as one line of 0/1 characters.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        match &self.provenance {
            Provenance::Euler { p, r } => writeln!(w, "# family=euler p={p} r={r}")?,
            Provenance::EulerComplement { p, r } => {
                writeln!(w, "# family=euler-complement p={p} r={r}")?
            }
            Provenance::Xzlh { p, r, f, b, g } => {
                writeln!(w, "# family=xzlh p={p} r={r} f={f} b={b} g={g}")?
            }
            Provenance::Custom => writeln!(w, "# family=custom")?,
        }
        let line: String = self.bits.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
        writeln!(w, "{line}")?;
        Ok(())
    }

    /// Read the exchange format back. Comment lines (leading '#') and blank
    /// lines are skipped; every other line must be pure 0/1 and the lines
    /// are concatenated in order.
    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let mut bits = Vec::new();
        let mut provenance = Provenance::Custom;
        for (idx, line) in r.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                if bits.is_empty() {
                    if let Some(parsed) = parse_header(comment) {
                        provenance = parsed;
                    }
                }
                continue;
            }
            for ch in trimmed.chars() {
                match ch {
                    '0' => bits.push(0),
                    '1' => bits.push(1),
                    other => {
                        return Err(Error::BitstringFormat {
                            line: idx + 1,
                            detail: format!("unexpected character {other:?}"),
                        });
                    }
                }
            }
        }
        if bits.is_empty() {
            return Err(Error::BitstringFormat {
                line: 0,
                detail: "no 0/1 data lines found".into(),
            });
        }
        if let Some((p, r)) = provenance.prime_power() {
            let expect = checked_prime_power(p, r)?;
            if bits.len() as u128 != expect {
                return Err(Error::BitstringFormat {
                    line: 0,
                    detail: format!(
                        "header says period {expect} but file holds {} bits",
                        bits.len()
                    ),
                });
            }
        }
        BinarySequence::from_bits(bits, provenance)
    }
}

fn parse_header(comment: &str) -> Option<Provenance> {
    let mut family = None;
    let mut p = None;
    let mut r = None;
    let mut f = None;
    let mut b = None;
    let mut g = None;
    for token in comment.split_whitespace() {
        let (key, value) = token.split_once('=')?;
        match key {
            "family" => family = Some(value.to_string()),
            "p" => p = value.parse().ok(),
            "r" => r = value.parse().ok(),
            "f" => f = value.parse().ok(),
            "b" => b = value.parse().ok(),
            "g" => g = value.parse().ok(),
            _ => {}
        }
    }
    match family?.as_str() {
        "euler" => Some(Provenance::Euler { p: p?, r: r? }),
        "euler-complement" => Some(Provenance::EulerComplement { p: p?, r: r? }),
        "xzlh" => Some(Provenance::Xzlh {
            p: p?,
            r: r?,
            f: f?,
            b: b?,
            g: g?,
        }),
        "custom" => Some(Provenance::Custom),
        _ => None,
    }
}

fn checked_period(p: u64, r: u32) -> Result<usize> {
    let t = checked_prime_power(p, r)?;
    if t > MAX_PERIOD as u128 {
        return Err(Error::PeriodTooLarge {
            period: t,
            max: MAX_PERIOD as u128,
        });
    }
    Ok(t as usize)
}

/// Threshold construction: bit(n) = 1 exactly when n is a unit whose
/// level-(r-1) quotient is at least (p^{r-1} + 1)/2.
pub fn gen_euler_threshold(p: u64, r: u32) -> Result<BinarySequence> {
    check_odd_prime(p)?;
    if r < 2 {
        return Err(Error::ExponentTooSmall { r, min: 2 });
    }
    let t = checked_period(p, r)?;
    let half = (p.pow(r - 1) + 1) / 2;
    let mut bits = vec![0u8; t];
    for (n, bit) in bits.iter_mut().enumerate() {
        if n as u64 % p != 0 {
            let q = euler_quotient(p, r - 1, n as u128)?;
            if q >= half {
                *bit = 1;
            }
        }
    }
    BinarySequence::from_bits(bits, Provenance::Euler { p, r })
}

/// The same sequence assembled from the class partition instead of from
/// per-position quotients: the one-bits are the union of the classes with
/// index at least (p^{r-1} + 1)/2.
pub fn gen_euler_classes(p: u64, r: u32) -> Result<BinarySequence> {
    check_odd_prime(p)?;
    if r < 2 {
        return Err(Error::ExponentTooSmall { r, min: 2 });
    }
    let t = checked_period(p, r)?;
    let part = CyclotomicPartition::build(p, r)?;
    let half = (p.pow(r - 1) + 1) / 2;
    let mut bits = vec![0u8; t];
    for l in half..part.num_classes() as u64 {
        for &u in part.class(l).unwrap() {
            bits[u as usize] = 1;
        }
    }
    BinarySequence::from_bits(bits, Provenance::Euler { p, r })
}

/// Complement construction: bit(n) = 1 exactly when n is a unit whose
/// level-(r-1) quotient is at most (p^{r-1} - 1)/2. Together with the
/// threshold sequence this covers every unit position exactly once.
pub fn gen_complement(p: u64, r: u32) -> Result<BinarySequence> {
    check_odd_prime(p)?;
    if r < 2 {
        return Err(Error::ExponentTooSmall { r, min: 2 });
    }
    let t = checked_period(p, r)?;
    let half = (p.pow(r - 1) - 1) / 2;
    let mut bits = vec![0u8; t];
    for (n, bit) in bits.iter_mut().enumerate() {
        if n as u64 % p != 0 {
            let q = euler_quotient(p, r - 1, n as u128)?;
            if q <= half {
                *bit = 1;
            }
        }
    }
    BinarySequence::from_bits(bits, Provenance::EulerComplement { p, r })
}

/// Multi-level construction with order-f classes. Positions are split by
/// the exact power of p dividing them; level r' (units times p^{r-r'})
/// is partitioned by the order-f classes modulo p^{r'}, shifted by b, and
/// the first half of the shifted class indices becomes the one-bits. The
/// point 0 is assigned bit 1 by convention.
pub fn gen_xzlh(p: u64, r: u32, f: u64, b: u64, g: u64) -> Result<BinarySequence> {
    check_odd_prime(p)?;
    if r < 1 {
        return Err(Error::ExponentTooSmall { r, min: 1 });
    }
    let t = checked_period(p, r)?;
    // shift is taken modulo the finest class count; reject clearly bad b
    let finest = f * p.pow(r - 1);
    if b >= finest {
        return Err(Error::ShiftOutOfRange { b, max: finest - 1 });
    }
    const UNSET: u8 = 2;
    let mut bits = vec![UNSET; t];
    bits[0] = 1;
    for rp in 1..=r {
        let scale = p.pow(r - rp) as usize;
        let gr = g % p.pow(rp);
        let part = GeneralizedPartition::build(p, rp, f, gr)?;
        let count = part.num_classes() as u64; // f * p^{rp-1}
        let shift = b % count;
        let half = count / 2;
        for (l, class) in part.classes().iter().enumerate() {
            let shifted = (l as u64 + count - shift) % count;
            let bit = if shifted < half { 1 } else { 0 };
            for &u in class {
                let pos = u as usize * scale;
                if bits[pos] != UNSET {
                    return Err(Error::CoverageGap(format!(
                        "position {pos} assigned twice (level {rp})"
                    )));
                }
                bits[pos] = bit;
            }
        }
    }
    if let Some(pos) = bits.iter().position(|&b| b == UNSET) {
        return Err(Error::CoverageGap(format!("position {pos} never assigned")));
    }
    BinarySequence::from_bits(bits, Provenance::Xzlh { p, r, f, b, g })
}
