//! Binary sequences derived from Euler quotients, and tools for measuring
//! how well they resist linear synthesis.
//!
//! The crate is organised bottom-up:
//!
//! * [`numtheory`] — modular arithmetic, Euler quotients, primitive roots;
//! * [`cyclotomy`] — quotient-indexed partitions of the units mod p^r;
//! * [`seqgen`] — the sequence families themselves plus a small file format;
//! * [`gf2poly`] — dense polynomial arithmetic over GF(2);
//! * [`lcanalysis`] — linear complexity and k-error linear complexity by
//!   four independent routes (gcd formula, Berlekamp–Massey, exhaustive
//!   error search, divisor-coset search) together with the closed forms.
//!
//! All computation is exact integer/GF(2) arithmetic at desk scale; inputs
//! outside the supported ranges are rejected with explicit errors.

pub mod error;

pub mod cyclotomy;
pub mod gf2poly;
pub mod lcanalysis;
pub mod numtheory;
pub mod seqgen;

pub use error::{Error, Result};
pub use gf2poly::{Degree, Gf2Poly};
pub use lcanalysis::{ErrorWitness, KlcProfile, KlcValue, SearchConfig};
pub use seqgen::{BinarySequence, Family};

/// Hard cap on sequence periods and polynomial supports (memory guard).
pub const MAX_PERIOD: usize = 1 << 24;
