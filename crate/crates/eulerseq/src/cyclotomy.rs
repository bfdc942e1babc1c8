//! Partitions of the units modulo p^r into classes of constant Euler
//! quotient, plus the coarser/finer order-f generalized classes.
//!
//! The canonical partition is defined by the quotient itself: residue u
//! lands in class l exactly when the level-(r-1) quotient of u is l. The
//! same partition falls out of a primitive root g with quotient 1, as the
//! orbits of exponents that agree modulo p^{r-1}; both constructions are
//! implemented and must agree.

use crate::error::{Error, Result};
use crate::numtheory::{
    check_odd_prime, checked_prime_power, euler_quotient, multiplicative_order, phi_prime_power,
};
use crate::MAX_PERIOD;

const NONUNIT: u32 = u32::MAX;

fn checked_small_modulus(p: u64, r: u32) -> Result<u64> {
    let m = checked_prime_power(p, r)?;
    if m > MAX_PERIOD as u128 {
        return Err(Error::PeriodTooLarge {
            period: m,
            max: MAX_PERIOD as u128,
        });
    }
    Ok(m as u64)
}

/// Where a residue sits relative to a partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassIndex {
    Class(u64),
    NonUnit,
}

/// The p^{r-1} quotient-indexed classes of the units modulo p^r, each of
/// size p - 1, together with the leftover multiples of p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicPartition {
    p: u64,
    r: u32,
    modulus: u64,
    classes: Vec<Vec<u64>>,
    nonunits: Vec<u64>,
    lookup: Vec<u32>,
}

impl CyclotomicPartition {
    /// Canonical construction straight from the quotient values.
    pub fn build(p: u64, r: u32) -> Result<Self> {
        check_odd_prime(p)?;
        if r < 2 {
            return Err(Error::ExponentTooSmall { r, min: 2 });
        }
        let modulus = checked_small_modulus(p, r)?;
        let num_classes = (modulus / p) as usize; // p^{r-1}
        let mut classes = vec![Vec::with_capacity(p as usize - 1); num_classes];
        let mut nonunits = Vec::with_capacity((modulus / p) as usize);
        let mut lookup = vec![NONUNIT; modulus as usize];
        for u in 0..modulus {
            if u % p == 0 {
                nonunits.push(u);
            } else {
                let l = euler_quotient(p, r - 1, u as u128)?;
                classes[l as usize].push(u);
                lookup[u as usize] = l as u32;
            }
        }
        Ok(Self {
            p,
            r,
            modulus,
            classes,
            nonunits,
            lookup,
        })
    }

    /// The same partition from a primitive root g with quotient 1: class l
    /// collects the powers g^i with i = l (mod p^{r-1}).
    pub fn from_generator(p: u64, r: u32, g: u64) -> Result<Self> {
        check_odd_prime(p)?;
        if r < 2 {
            return Err(Error::ExponentTooSmall { r, min: 2 });
        }
        let modulus = checked_small_modulus(p, r)?;
        let phi = phi_prime_power(p, r)? as u64;
        if g < 2 || g >= modulus || g % p == 0 {
            return Err(Error::NotPrimitiveRoot {
                g,
                modulus: modulus as u128,
            });
        }
        if multiplicative_order(g as u128, modulus as u128)? != phi as u128 {
            return Err(Error::NotPrimitiveRoot {
                g,
                modulus: modulus as u128,
            });
        }
        let q = euler_quotient(p, r - 1, g as u128)?;
        if q != 1 {
            return Err(Error::QuotientNotOne { g, q });
        }
        let num_classes = (modulus / p) as usize;
        let mut classes = vec![Vec::with_capacity(p as usize - 1); num_classes];
        let mut power = 1u64;
        for i in 0..phi {
            classes[(i % num_classes as u64) as usize].push(power);
            power = (power as u128 * g as u128 % modulus as u128) as u64;
        }
        let mut lookup = vec![NONUNIT; modulus as usize];
        for (l, class) in classes.iter_mut().enumerate() {
            class.sort_unstable();
            for &u in class.iter() {
                lookup[u as usize] = l as u32;
            }
        }
        let nonunits = (0..modulus).step_by(p as usize).collect();
        Ok(Self {
            p,
            r,
            modulus,
            classes,
            nonunits,
            lookup,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<u64>] {
        &self.classes
    }

    /// The members of class l, sorted ascending.
    pub fn class(&self, l: u64) -> Option<&[u64]> {
        self.classes.get(l as usize).map(|c| c.as_slice())
    }

    pub fn nonunits(&self) -> &[u64] {
        &self.nonunits
    }

    pub fn class_of(&self, u: u64) -> Result<ClassIndex> {
        if u >= self.modulus {
            return Err(Error::ResidueOutOfRange {
                u,
                modulus: self.modulus,
            });
        }
        Ok(match self.lookup[u as usize] {
            NONUNIT => ClassIndex::NonUnit,
            l => ClassIndex::Class(l as u64),
        })
    }

    /// One line per class: "l: u1 u2 ... ".
    pub fn to_text(&self) -> String {
        render_classes(&self.classes)
    }
}

/// Classes of order f: the units modulo p^r split into f * p^{r-1} cosets
/// of the index-f subgroup generated by g^{f * p^{r-1}}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedPartition {
    p: u64,
    r: u32,
    f: u64,
    g: u64,
    modulus: u64,
    classes: Vec<Vec<u64>>,
}

impl GeneralizedPartition {
    /// g must be supplied explicitly and be a primitive root modulo p^r;
    /// f must be an even positive divisor of p - 1.
    pub fn build(p: u64, r: u32, f: u64, g: u64) -> Result<Self> {
        check_odd_prime(p)?;
        if r < 1 {
            return Err(Error::ExponentTooSmall { r, min: 1 });
        }
        if f == 0 || f % 2 != 0 || (p - 1) % f != 0 {
            return Err(Error::BadClassOrder { f, pm1: p - 1 });
        }
        let modulus = checked_small_modulus(p, r)?;
        let phi = phi_prime_power(p, r)? as u64;
        if g < 2 || g >= modulus || g % p == 0
            || multiplicative_order(g as u128, modulus as u128)? != phi as u128
        {
            return Err(Error::NotPrimitiveRoot {
                g,
                modulus: modulus as u128,
            });
        }
        let num_classes = (f * (modulus / p)) as usize; // f * p^{r-1}
        let mut classes = vec![Vec::with_capacity(((p - 1) / f) as usize); num_classes];
        let mut power = 1u64;
        for i in 0..phi {
            classes[(i % num_classes as u64) as usize].push(power);
            power = (power as u128 * g as u128 % modulus as u128) as u64;
        }
        for class in &mut classes {
            class.sort_unstable();
        }
        Ok(Self {
            p,
            r,
            f,
            g,
            modulus,
            classes,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn f(&self) -> u64 {
        self.f
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements in each class, (p - 1)/f.
    pub fn class_size(&self) -> usize {
        ((self.p - 1) / self.f) as usize
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<u64>] {
        &self.classes
    }

    pub fn class(&self, l: u64) -> Option<&[u64]> {
        self.classes.get(l as usize).map(|c| c.as_slice())
    }

    pub fn to_text(&self) -> String {
        render_classes(&self.classes)
    }
}

fn render_classes(classes: &[Vec<u64>]) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    for (l, class) in classes.iter().enumerate() {
        write!(out, "{l}:").unwrap();
        for u in class {
            write!(out, " {u}").unwrap();
        }
        out.push('\n');
    }
    out
}
