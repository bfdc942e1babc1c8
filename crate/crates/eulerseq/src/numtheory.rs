//! Integer groundwork: modular arithmetic, Euler totients and quotients of
//! odd prime powers, multiplicative orders, and the primitive-root scan.
//!
//! Everything runs at desk scale. Primality and factoring use trial
//! division, and the quotient evaluation is exact as long as p^{2r} fits in
//! 128 bits; inputs outside that range are rejected with a range error.

use crate::error::{Error, Result};

/// Upper limit for p in the trial-division validity checks.
pub const MAX_PRIME: u64 = 10_000;

/// Trial-division bound used when factoring group orders.
const FACTOR_SCAN_LIMIT: u128 = 1 << 20;

/// Trial-division primality test; false for 2 and everything even.
pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_odd_prime(p: u64) -> Result<()> {
    if p > MAX_PRIME {
        return Err(Error::PrimeTooLarge { p, limit: MAX_PRIME });
    }
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

/// p^k in 128 bits, or a range error.
pub(crate) fn checked_prime_power(p: u64, k: u32) -> Result<u128> {
    (p as u128)
        .checked_pow(k)
        .ok_or(Error::RangeExceeded { p, power: k })
}

/// Euler's totient of p^r, i.e. p^{r-1}(p - 1).
pub fn phi_prime_power(p: u64, r: u32) -> Result<u128> {
    check_odd_prime(p)?;
    if r < 1 {
        return Err(Error::ExponentTooSmall { r, min: 1 });
    }
    let lower = checked_prime_power(p, r - 1)?;
    lower
        .checked_mul(p as u128 - 1)
        .ok_or(Error::RangeExceeded { p, power: r })
}

/// a + b mod m without overflow, for a, b < m.
fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

/// Shift-and-add product mod m; safe for any m below 2^127 doubled, i.e.
/// the whole u128 range we accept.
fn mul_mod(mut a: u128, mut b: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    a %= m;
    b %= m;
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

/// Square-and-multiply exponentiation modulo m >= 2.
pub fn mod_pow(base: u128, exp: u128, modulus: u128) -> Result<u128> {
    if modulus < 2 {
        return Err(Error::BadModulus(modulus));
    }
    let mut result = 1u128;
    let mut base = base % modulus;
    let mut exp = exp;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, modulus);
        }
        base = mul_mod(base, base, modulus);
        exp >>= 1;
    }
    Ok(result)
}

pub(crate) fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime factorization by trial division. Errors out rather than grinding
/// on numbers whose second-largest prime factor is huge.
pub(crate) fn factor(mut n: u128) -> Result<Vec<(u128, u32)>> {
    let original = n;
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if d > FACTOR_SCAN_LIMIT {
            return Err(Error::FactorLimit { n: original });
        }
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

fn phi_from_factors(factors: &[(u128, u32)]) -> u128 {
    factors.iter().map(|&(q, e)| q.pow(e - 1) * (q - 1)).product()
}

/// Least n >= 1 with a^n = 1 (mod m); requires gcd(a, m) = 1.
///
/// Starts from phi(m) and strips prime factors while the power still lands
/// on 1, which needs the factorization of phi(m) but no discrete logs.
pub fn multiplicative_order(a: u128, m: u128) -> Result<u128> {
    if m < 2 {
        return Err(Error::BadModulus(m));
    }
    let a = a % m;
    if gcd_u128(a, m) != 1 {
        return Err(Error::NotCoprime { a, m });
    }
    let m_factors = factor(m)?;
    let phi = phi_from_factors(&m_factors);
    let mut phi_primes = std::collections::BTreeSet::new();
    for &(q, e) in &m_factors {
        if e > 1 {
            phi_primes.insert(q);
        }
        for (f, _) in factor(q - 1)? {
            phi_primes.insert(f);
        }
    }
    let mut ord = phi;
    for &f in &phi_primes {
        while ord % f == 0 && mod_pow(a, ord / f, m)? == 1 {
            ord /= f;
        }
    }
    Ok(ord)
}

/// Inverse of a modulo m for gcd(a, m) = 1, via a^(phi(m) - 1).
pub fn inverse_mod(a: u128, m: u128) -> Result<u128> {
    if m < 2 {
        return Err(Error::BadModulus(m));
    }
    let a = a % m;
    if gcd_u128(a, m) != 1 {
        return Err(Error::NotCoprime { a, m });
    }
    let phi = phi_from_factors(&factor(m)?);
    mod_pow(a, phi - 1, m)
}

/// The Euler quotient of u at level r: ((u^phi(p^r) - 1) / p^r) mod p^r,
/// extended by 0 whenever p divides u.
///
/// u^phi(p^r) is reduced modulo p^{2r}, which is enough to pin the quotient
/// modulo p^r after the exact division — no big integers required.
pub fn euler_quotient(p: u64, r: u32, u: u128) -> Result<u64> {
    check_odd_prime(p)?;
    if r < 1 {
        return Err(Error::ExponentTooSmall { r, min: 1 });
    }
    if u % p as u128 == 0 {
        return Ok(0);
    }
    let pr = checked_prime_power(p, r)?;
    let p2r = checked_prime_power(p, 2 * r)?;
    let phi = phi_prime_power(p, r)?;
    let t = mod_pow(u % p2r, phi, p2r)?;
    // t = 1 (mod p^r) by Euler's theorem, so the division is exact
    debug_assert_eq!((t - 1) % pr, 0);
    Ok((((t - 1) / pr) % pr) as u64)
}

/// True when the order of 2 modulo p^2 is the full phi(p^2) = p(p - 1).
///
/// Under this hypothesis every factor of X^{p^r} - 1 used by the analysis
/// layer is irreducible over GF(2).
pub fn is_two_primitive_mod_p2(p: u64) -> Result<bool> {
    check_odd_prime(p)?;
    let p2 = (p as u128) * (p as u128);
    Ok(multiplicative_order(2, p2)? == (p as u128) * (p as u128 - 1))
}

/// The Wieferich condition 2^(p-1) = 1 (mod p^2).
pub fn is_wieferich(p: u64) -> Result<bool> {
    check_odd_prime(p)?;
    let p2 = (p as u128) * (p as u128);
    Ok(mod_pow(2, p as u128 - 1, p2)? == 1)
}

/// Smallest g >= 2 that generates the units modulo p^r and has Euler
/// quotient 1 at level r - 1.
///
/// Such a g always exists; fixing the smallest one makes every derived
/// structure reproducible.
pub fn find_generator(p: u64, r: u32) -> Result<u64> {
    check_odd_prime(p)?;
    if r < 2 {
        return Err(Error::ExponentTooSmall { r, min: 2 });
    }
    let modulus = checked_prime_power(p, r)?;
    // the quotient below needs p^{2(r-1)}; surface the range error up front
    checked_prime_power(p, 2 * (r - 1))?;
    let phi = phi_prime_power(p, r)?;
    let mut g = 2u128;
    while g < modulus {
        if g % p as u128 != 0
            && multiplicative_order(g, modulus)? == phi
            && euler_quotient(p, r - 1, g)? == 1
        {
            return Ok(g as u64);
        }
        g += 1;
    }
    // unreachable for valid inputs; keep a loud exit anyway
    Err(Error::GeneratorNotFound { p, r, modulus })
}

/// A validated (p, r) pair with the flags the analysis layer branches on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePowerParams {
    p: u64,
    r: u32,
    two_primitive_mod_p2: bool,
    p_mod4: u8,
}

impl PrimePowerParams {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        check_odd_prime(p)?;
        if r < 1 {
            return Err(Error::ExponentTooSmall { r, min: 1 });
        }
        checked_prime_power(p, r)?;
        Ok(Self {
            p,
            r,
            two_primitive_mod_p2: is_two_primitive_mod_p2(p)?,
            p_mod4: (p % 4) as u8,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> u128 {
        (self.p as u128).pow(self.r)
    }

    pub fn two_primitive_mod_p2(&self) -> bool {
        self.two_primitive_mod_p2
    }

    pub fn p_mod4(&self) -> u8 {
        self.p_mod4
    }
}
