//! Closed-form k-error linear complexity values for the threshold and
//! complement families, where published results pin them down, and sound
//! bounds where they do not.
//!
//! Coverage map (all under the standing assumption that 2 is a primitive
//! root modulo p^2):
//!
//! * plain linear complexity: every level r >= 2, both residue classes
//!   of p mod 4;
//! * k-error values at level r = 2: complete for both families;
//! * level r >= 3, threshold family: a recursion peels one level off and
//!   lands on the level-2 results — exact below the critical error count
//!   p^{r-2}(p-1)^2/2 and at it, bracketed between it and the sequence
//!   weight, zero from the weight on;
//! * level r >= 3, complement family: only the generic endpoints are
//!   known (k = 0 has no published closed form here, values vanish from
//!   the weight on).

use crate::error::{Error, Result};
use crate::numtheory::{check_odd_prime, checked_prime_power, is_two_primitive_mod_p2, is_wieferich};
use crate::seqgen::Family;
use crate::MAX_PERIOD;

use super::profile::{ErrorWitness, KlcEntry, KlcProfile, KlcValue, Method};

/// A closed-form answer: exact, bracketed, or outside published
/// coverage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaValue {
    Exact(usize),
    Bounds { lo: usize, hi: usize },
    Uncovered,
}

/// The closed forms need every level factor of X^{p^r} - 1 irreducible,
/// which holds exactly when 2 is a primitive root modulo p^2. The
/// Wieferich case gets its own error because it breaks the weaker
/// order-lifting property too.
fn check_formula_context(p: u64) -> Result<()> {
    check_odd_prime(p)?;
    if is_wieferich(p)? {
        return Err(Error::WieferichPrime(p));
    }
    if !is_two_primitive_mod_p2(p)? {
        return Err(Error::TwoNotPrimitive(p));
    }
    Ok(())
}

fn checked_usize_power(p: u64, r: u32) -> Result<usize> {
    let t = checked_prime_power(p, r)?;
    if t > MAX_PERIOD as u128 {
        return Err(Error::RangeExceeded { p, power: r });
    }
    Ok(t as usize)
}

/// Number of ones per period of the threshold sequence.
pub fn euler_weight(p: u64, r: u32) -> Result<usize> {
    let t1 = checked_usize_power(p, r - 1)?;
    Ok((p as usize - 1) * (t1 - 1) / 2)
}

/// Number of ones per period of the complement sequence.
pub fn complement_weight(p: u64, r: u32) -> Result<usize> {
    let t1 = checked_usize_power(p, r - 1)?;
    Ok((p as usize - 1) * (t1 + 1) / 2)
}

/// Linear complexity of the threshold sequence at level r >= 2:
/// p^r - p when p = 1 (mod 4) or r is odd, p^r - 1 when p = 3 (mod 4)
/// and r is even.
pub fn lc_formula(p: u64, r: u32) -> Result<usize> {
    check_formula_context(p)?;
    if r < 2 {
        return Err(Error::ExponentTooSmall { r, min: 2 });
    }
    let t = checked_usize_power(p, r)?;
    Ok(if p % 4 == 1 || r % 2 == 1 {
        t - p as usize
    } else {
        t - 1
    })
}

/// Level-2 threshold values, all k.
fn theorem_level2(p: u64, k: usize) -> usize {
    let p = p as usize;
    let sq = p * p;
    if p % 4 == 1 {
        if k < (p - 1) * (p - 1) / 2 {
            sq - p
        } else {
            0
        }
    } else if k == 0 {
        sq - 1
    } else if k < p - 1 {
        sq - p + 1
    } else if k < (p - 1) * (p - 1) / 2 {
        sq - p
    } else {
        0
    }
}

/// Level-2 complement values, all k.
fn theorem_level2_complement(p: u64, k: usize) -> usize {
    let p = p as usize;
    let sq = p * p;
    if p % 4 == 1 {
        if k == 0 {
            sq - 1
        } else if k < p - 1 {
            sq - p + 1
        } else if k < (p - 1) * (p - 1) / 2 {
            sq - p
        } else if k < (sq - 1) / 2 {
            p - 1
        } else {
            0
        }
    } else if k < (p - 1) * (p - 1) / 2 {
        sq - p
    } else if k < (sq - 1) / 2 {
        p - 1
    } else {
        0
    }
}

/// The level-peeling recursion for the threshold family at r >= 3.
///
/// Below the critical count p^{r-2}(p-1)^2/2 the value is
/// p^r - p^{r-1} plus the k-error value of the one-level-down sequence
/// (threshold for p = 1 mod 4, complement for p = 3 mod 4); at the
/// critical count it drops to p^{r-1} - p (p = 1 mod 4 or r even) or
/// p^{r-1} - 1 (p = 3 mod 4, r odd); past it only brackets survive
/// until the weight zeroes everything.
pub fn klc_recursion(p: u64, r: u32, k: usize) -> Result<FormulaValue> {
    check_formula_context(p)?;
    if r < 3 {
        return Err(Error::ExponentTooSmall { r, min: 3 });
    }
    checked_usize_power(p, r)?;
    Ok(recursion_value(p, r, k))
}

fn recursion_value(p: u64, r: u32, k: usize) -> FormulaValue {
    let pu = p as usize;
    let t = pu.pow(r);
    let t1 = pu.pow(r - 1);
    let t2 = pu.pow(r - 2);
    let weight = (pu - 1) * (t1 - 1) / 2;
    let crit = t2 * (pu - 1) * (pu - 1) / 2;
    let at_crit = if p % 4 == 1 || r % 2 == 0 { t1 - pu } else { t1 - 1 };
    if k >= weight {
        return FormulaValue::Exact(0);
    }
    if k == crit {
        return FormulaValue::Exact(at_crit);
    }
    if k > crit {
        return FormulaValue::Bounds { lo: 0, hi: at_crit };
    }
    let plateau = t - t1;
    let inner = if p % 4 == 1 {
        if r - 1 == 2 {
            FormulaValue::Exact(theorem_level2(p, k))
        } else {
            recursion_value(p, r - 1, k)
        }
    } else if r - 1 == 2 {
        FormulaValue::Exact(theorem_level2_complement(p, k))
    } else {
        // no published complement values at levels above 2
        FormulaValue::Uncovered
    };
    match inner {
        FormulaValue::Exact(v) => FormulaValue::Exact(plateau + v),
        FormulaValue::Bounds { lo, hi } => FormulaValue::Bounds {
            lo: plateau + lo,
            hi: plateau + hi,
        },
        FormulaValue::Uncovered => FormulaValue::Bounds { lo: plateau, hi: t - 1 },
    }
}

/// Closed-form k-error value for one (p, r, k, family) instance.
pub fn klc_formula(p: u64, r: u32, k: usize, family: Family) -> Result<FormulaValue> {
    check_formula_context(p)?;
    if r < 2 {
        return Err(Error::ExponentTooSmall { r, min: 2 });
    }
    checked_usize_power(p, r)?;
    match family {
        Family::Euler => {
            if k == 0 {
                Ok(FormulaValue::Exact(lc_formula(p, r)?))
            } else if r == 2 {
                Ok(FormulaValue::Exact(theorem_level2(p, k)))
            } else {
                Ok(recursion_value(p, r, k))
            }
        }
        Family::EulerComplement => {
            if r == 2 {
                Ok(FormulaValue::Exact(theorem_level2_complement(p, k)))
            } else if k >= complement_weight(p, r)? {
                Ok(FormulaValue::Exact(0))
            } else {
                Ok(FormulaValue::Uncovered)
            }
        }
        other => Err(Error::UnsupportedCase(format!(
            "no closed-form values for the {other} family"
        ))),
    }
}

/// Per-k profile from the closed forms, k = 0..=k_max. Uncovered spots
/// become sound brackets: [0, best upper bound seen so far].
pub fn formula_profile(p: u64, r: u32, family: Family, k_max: usize) -> Result<KlcProfile> {
    let t = checked_usize_power(p, r)?;
    let mut entries = Vec::with_capacity(k_max + 1);
    let mut running_hi = t - 1;
    for k in 0..=k_max {
        let (value, method) = match klc_formula(p, r, k, family)? {
            FormulaValue::Exact(v) => (KlcValue::Exact(v), Method::Formula),
            FormulaValue::Bounds { lo, hi } => (KlcValue::Interval { lo, hi }, Method::Bound),
            FormulaValue::Uncovered => {
                (KlcValue::Interval { lo: 0, hi: running_hi }, Method::Bound)
            }
        };
        running_hi = running_hi.min(value.hi());
        let witness = match value {
            // k = 0 always has the empty pattern as its witness
            KlcValue::Exact(_) if k == 0 => Some(ErrorWitness::empty()),
            _ => None,
        };
        entries.push(KlcEntry { k, value, method, witness });
    }
    let profile = KlcProfile {
        p: Some(p),
        r: Some(r),
        family,
        entries,
    };
    profile.check_consistency()?;
    Ok(profile)
}
