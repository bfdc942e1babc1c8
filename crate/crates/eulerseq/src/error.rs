use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// The arithmetic layer rejects inputs outside its exact-computation range
/// instead of silently wrapping, and the search layer refuses work that
/// would blow past the configured budgets instead of running unbounded.
#[derive(Debug, Error)]
pub enum Error {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("p = {p} is beyond the trial-division limit {limit}")]
    PrimeTooLarge { p: u64, limit: u64 },
    #[error("exponent r = {r} must be at least {min} here")]
    ExponentTooSmall { r: u32, min: u32 },
    #[error("{p}^{power} does not fit the supported 128-bit range")]
    RangeExceeded { p: u64, power: u32 },
    #[error("period {period} exceeds the supported maximum {max}")]
    PeriodTooLarge { period: u128, max: u128 },
    #[error("modulus {0} must be at least 2")]
    BadModulus(u128),
    #[error("{a} and {m} are not coprime")]
    NotCoprime { a: u128, m: u128 },
    #[error("trial division cannot factor {n} at desk scale")]
    FactorLimit { n: u128 },
    #[error("no primitive root with Euler quotient 1 found below {modulus} (p = {p}, r = {r})")]
    GeneratorNotFound { p: u64, r: u32, modulus: u128 },
    #[error("g = {g} is not a primitive root modulo {modulus}")]
    NotPrimitiveRoot { g: u64, modulus: u128 },
    #[error("g = {g} has Euler quotient {q}, expected 1")]
    QuotientNotOne { g: u64, q: u64 },
    #[error("f = {f} must be an even positive divisor of p - 1 = {pm1}")]
    BadClassOrder { f: u64, pm1: u64 },
    #[error("shift b = {b} must lie in [0, {max})")]
    ShiftOutOfRange { b: u64, max: u64 },
    #[error("residue {u} is out of range for modulus {modulus}")]
    ResidueOutOfRange { u: u64, modulus: u64 },
    #[error("sequence bits must be 0 or 1")]
    NotBinary,
    #[error("bitstring input, line {line}: {detail}")]
    BitstringFormat { line: usize, detail: String },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("divisor does not divide X^{period} - 1")]
    NotAPeriodDivisor { period: usize },
    #[error("free dimension {dim} exceeds the coset dimension limit {limit}")]
    CosetDimExceeded { dim: usize, limit: usize },
    #[error(
        "pattern budget {budget} exceeded; k = {smallest_infeasible_k} is the smallest infeasible error weight"
    )]
    PatternBudgetExceeded { smallest_infeasible_k: usize, budget: u128 },
    #[error("2 is not a primitive root modulo {0}^2, so the closed forms here do not apply")]
    TwoNotPrimitive(u64),
    #[error("2^(p-1) = 1 mod p^2 for p = {0}; the linear-complexity formula does not apply")]
    WieferichPrime(u64),
    #[error("{0}")]
    UnsupportedCase(String),
    #[error("class construction failed coverage validation: {0}")]
    CoverageGap(String),
    #[error("inconsistent complexity profile: {0}")]
    ProfileInconsistent(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
