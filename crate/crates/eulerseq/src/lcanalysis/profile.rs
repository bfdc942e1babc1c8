//! Report types for k-error linear complexity runs: per-k values (exact
//! or bracketed), which method produced them, and optional witness error
//! patterns, with a stable text rendering used by the verification
//! suites.

use std::fmt;

use crate::error::{Error, Result};
use crate::seqgen::Family;

/// An error pattern, as the sorted list of flipped positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorWitness {
    pub positions: Vec<usize>,
}

impl ErrorWitness {
    pub fn empty() -> Self {
        Self { positions: Vec::new() }
    }

    pub fn weight(&self) -> usize {
        self.positions.len()
    }
}

impl fmt::Display for ErrorWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positions.is_empty() {
            return f.write_str("-");
        }
        for (i, pos) in self.positions.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{pos}")?;
        }
        Ok(())
    }
}

/// A per-k result: pinned down exactly, or bracketed between sound
/// bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KlcValue {
    Exact(usize),
    Interval { lo: usize, hi: usize },
}

impl KlcValue {
    pub fn lo(self) -> usize {
        match self {
            KlcValue::Exact(v) => v,
            KlcValue::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(self) -> usize {
        match self {
            KlcValue::Exact(v) => v,
            KlcValue::Interval { hi, .. } => hi,
        }
    }

    pub fn contains(self, v: usize) -> bool {
        self.lo() <= v && v <= self.hi()
    }
}

/// Which route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    Coset,
    Formula,
    Bound,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::Coset => "coset",
            Method::Formula => "formula",
            Method::Bound => "bound",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KlcEntry {
    pub k: usize,
    pub value: KlcValue,
    pub method: Method,
    pub witness: Option<ErrorWitness>,
}

/// A run of per-k values for one sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KlcProfile {
    pub p: Option<u64>,
    pub r: Option<u32>,
    pub family: Family,
    pub entries: Vec<KlcEntry>,
}

impl KlcProfile {
    /// The stable text rendering: a short header followed by one line
    /// per k. Exact lines carry `lc=`, bracketed lines `lo=`/`hi=`.
    pub fn to_text(&self) -> String {
        use fmt::Write;
        let mut out = String::new();
        if let Some(p) = self.p {
            writeln!(out, "p={p}").unwrap();
        }
        if let Some(r) = self.r {
            writeln!(out, "r={r}").unwrap();
        }
        writeln!(out, "family={}", self.family).unwrap();
        for e in &self.entries {
            match e.value {
                KlcValue::Exact(v) => {
                    writeln!(out, "k={} lc={} method={}", e.k, v, e.method).unwrap()
                }
                KlcValue::Interval { lo, hi } => {
                    writeln!(out, "k={} lo={} hi={} method={}", e.k, lo, hi, e.method).unwrap()
                }
            }
        }
        out
    }

    /// Sanity requirements every honest profile satisfies: k strictly
    /// increasing, lo <= hi in every entry, and upper bounds
    /// nonincreasing in k (adding an allowed error can never raise the
    /// minimum).
    pub fn check_consistency(&self) -> Result<()> {
        let mut prev_k: Option<usize> = None;
        let mut prev_hi: Option<usize> = None;
        for e in &self.entries {
            if let Some(pk) = prev_k {
                if e.k <= pk {
                    return Err(Error::ProfileInconsistent(format!(
                        "k={} follows k={pk}",
                        e.k
                    )));
                }
            }
            if e.value.lo() > e.value.hi() {
                return Err(Error::ProfileInconsistent(format!(
                    "k={}: lo {} exceeds hi {}",
                    e.k,
                    e.value.lo(),
                    e.value.hi()
                )));
            }
            if let Some(ph) = prev_hi {
                if e.value.hi() > ph {
                    return Err(Error::ProfileInconsistent(format!(
                        "k={}: upper bound {} exceeds earlier bound {ph}",
                        e.k,
                        e.value.hi()
                    )));
                }
            }
            if let Some(w) = &e.witness {
                if w.weight() > e.k {
                    return Err(Error::ProfileInconsistent(format!(
                        "k={}: witness has weight {}",
                        e.k,
                        w.weight()
                    )));
                }
            }
            prev_k = Some(e.k);
            prev_hi = Some(e.value.hi());
        }
        Ok(())
    }
}
