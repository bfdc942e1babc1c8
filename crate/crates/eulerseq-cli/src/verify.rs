//! Re-derivation of the shipped reference values. Each suite builds a
//! list of named checks with an expected and an actual string; the
//! golden files under golden/ are the source of truth for the table
//! and class comparisons.

use std::process::ExitCode;

use clap::ValueEnum;

use eulerseq::cyclotomy::{ClassIndex, CyclotomicPartition};
use eulerseq::gf2poly::{cyclotomic_factor, Gf2Poly};
use eulerseq::lcanalysis::{
    formula_profile, klc_brute_profile, klc_formula, klc_structured, lc_from_polynomial, lc_gcd,
    lc_formula, min_weight_coset, ErrorWitness, FormulaValue, KlcEntry, KlcValue, SearchConfig,
};
use eulerseq::seqgen::{gen_complement, gen_euler_threshold, BinarySequence, Family};
use eulerseq::Result;

use crate::report::Format;

const GOLDEN_KLC_P3_R3: &str = include_str!("../golden/klc_formula_p3_r3.txt");
const GOLDEN_KLC_P5_R3: &str = include_str!("../golden/klc_formula_p5_r3.txt");
const GOLDEN_CLASSES_P3_R3: &str = include_str!("../golden/classes_p3_r3.txt");
const GOLDEN_CLASSES_P5_R3: &str = include_str!("../golden/classes_p5_r3.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    /// Every suite below
    All,
    /// Period 27: profile by all routes, classes, formula table
    P3r3,
    /// Period 25 threshold family profile
    P5r2,
    /// Period 125: formula table, classes, top-factor minimum error
    P5r3,
    /// Complement family profiles at level 2
    Complement,
    /// Class lifting structure between consecutive levels
    Lemmas,
}

struct Check {
    name: &'static str,
    expected: String,
    actual: String,
}

impl Check {
    fn pass(&self) -> bool {
        self.expected == self.actual
    }

    /// Expected vs actual, short for one-liners, first differing line
    /// for documents.
    fn describe(&self) -> String {
        if !self.expected.contains('\n') && !self.actual.contains('\n') {
            format!("expected: {} | actual: {}", self.expected, self.actual)
        } else if self.pass() {
            format!("{} lines, byte-identical", self.expected.lines().count())
        } else {
            let e: Vec<&str> = self.expected.lines().collect();
            let a: Vec<&str> = self.actual.lines().collect();
            let mut i = 0;
            while i < e.len() && i < a.len() && e[i] == a[i] {
                i += 1;
            }
            let exp = e.get(i).copied().unwrap_or("<end>");
            let act = a.get(i).copied().unwrap_or("<end>");
            format!("first difference at line {}: expected: {exp} | actual: {act}", i + 1)
        }
    }
}

pub fn run(suite: SuiteArg, cfg: &SearchConfig, format: Format) -> Result<ExitCode> {
    let mut checks: Vec<Check> = Vec::new();
    if matches!(suite, SuiteArg::All | SuiteArg::P3r3) {
        checks.extend(suite_p3r3(cfg)?);
    }
    if matches!(suite, SuiteArg::All | SuiteArg::P5r2) {
        checks.extend(suite_p5r2(cfg)?);
    }
    if matches!(suite, SuiteArg::All | SuiteArg::P5r3) {
        checks.extend(suite_p5r3(cfg)?);
    }
    if matches!(suite, SuiteArg::All | SuiteArg::Complement) {
        checks.extend(suite_complement(cfg)?);
    }
    if matches!(suite, SuiteArg::All | SuiteArg::Lemmas) {
        checks.extend(suite_lemmas()?);
    }
    let failed = checks.iter().filter(|c| !c.pass()).count();
    for c in &checks {
        let status = if c.pass() { "ok" } else { "MISMATCH" };
        match format {
            Format::Text => println!("check {}: {} ({})", c.name, status, c.describe()),
            Format::Table => println!("{status:>8}  {:<32}  {}", c.name, c.describe()),
        }
    }
    if failed == 0 {
        println!("verify: all {} checks passed", checks.len());
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verify: {failed} of {} checks failed", checks.len());
        Ok(ExitCode::from(1))
    }
}

/// Complexity after applying a witness pattern.
fn achieved(s: &BinarySequence, witness: &ErrorWitness) -> usize {
    let e = Gf2Poly::from_exponents(&witness.positions);
    lc_from_polynomial(&(&Gf2Poly::from_sequence(s) + &e), s.period())
}

fn join_usize(values: impl IntoIterator<Item = usize>) -> String {
    values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn entry_values(entries: &[KlcEntry]) -> String {
    entries
        .iter()
        .map(|e| match e.value {
            KlcValue::Exact(v) => v.to_string(),
            KlcValue::Interval { lo, hi } => format!("{lo}..{hi}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn formula_values(p: u64, r: u32, family: Family, k_max: usize) -> Result<String> {
    let mut out = Vec::new();
    for k in 0..=k_max {
        out.push(match klc_formula(p, r, k, family)? {
            FormulaValue::Exact(v) => v.to_string(),
            FormulaValue::Bounds { lo, hi } => format!("{lo}..{hi}"),
            FormulaValue::Uncovered => "?".to_string(),
        });
    }
    Ok(out.join(" "))
}

fn suite_p3r3(cfg: &SearchConfig) -> Result<Vec<Check>> {
    let expected_profile = "24 24 20 20 18 18 8";
    let s = gen_euler_threshold(3, 3)?;
    let search = klc_brute_profile(&s, 6, cfg)?;
    let reached = search
        .iter()
        .filter(|(lc, witness)| achieved(&s, witness) == *lc)
        .count();
    let (subset, _) = klc_structured(&s, 6, cfg)?;
    Ok(vec![
        Check {
            name: "p3r3/search-profile",
            expected: expected_profile.into(),
            actual: join_usize(search.iter().map(|(lc, _)| *lc)),
        },
        Check {
            name: "p3r3/search-witnesses",
            expected: "7 of 7 witnesses reach their values".into(),
            actual: format!("{reached} of 7 witnesses reach their values"),
        },
        Check {
            name: "p3r3/formula-table",
            expected: GOLDEN_KLC_P3_R3.into(),
            actual: formula_profile(3, 3, Family::Euler, 6)?.to_text(),
        },
        Check {
            name: "p3r3/subset-profile",
            expected: expected_profile.into(),
            actual: entry_values(&subset.entries),
        },
        Check {
            name: "p3r3/classes",
            expected: GOLDEN_CLASSES_P3_R3.into(),
            actual: CyclotomicPartition::build(3, 3)?.to_text(),
        },
        Check {
            name: "p3r3/classes-generator-11",
            expected: GOLDEN_CLASSES_P3_R3.into(),
            actual: CyclotomicPartition::from_generator(3, 3, 11)?.to_text(),
        },
    ])
}

fn suite_p5r2(cfg: &SearchConfig) -> Result<Vec<Check>> {
    let expected_profile = "20 20 20 20 20 20 20 20 0";
    let s = gen_euler_threshold(5, 2)?;
    let search = klc_brute_profile(&s, 8, cfg)?;
    let (subset, _) = klc_structured(&s, 8, cfg)?;
    Ok(vec![
        Check {
            name: "p5r2/search-profile",
            expected: expected_profile.into(),
            actual: join_usize(search.iter().map(|(lc, _)| *lc)),
        },
        Check {
            name: "p5r2/subset-profile",
            expected: expected_profile.into(),
            actual: entry_values(&subset.entries),
        },
        Check {
            name: "p5r2/plain-lc",
            expected: "20 by gcd, 20 by formula".into(),
            actual: format!("{} by gcd, {} by formula", lc_gcd(&s), lc_formula(5, 2)?),
        },
    ])
}

fn suite_p5r3(cfg: &SearchConfig) -> Result<Vec<Check>> {
    let s = gen_euler_threshold(5, 3)?;
    let s_poly = Gf2Poly::from_sequence(&s);
    let top = cyclotomic_factor(5, 3)?;
    let (fee, witness) = min_weight_coset(&s_poly, &top, 125, cfg)?;
    Ok(vec![
        Check {
            name: "p5r3/formula-table",
            expected: GOLDEN_KLC_P5_R3.into(),
            actual: formula_profile(5, 3, Family::Euler, 40)?.to_text(),
        },
        Check {
            name: "p5r3/classes",
            expected: GOLDEN_CLASSES_P5_R3.into(),
            actual: CyclotomicPartition::build(5, 3)?.to_text(),
        },
        Check {
            name: "p5r3/classes-generator-3",
            expected: GOLDEN_CLASSES_P5_R3.into(),
            actual: CyclotomicPartition::from_generator(5, 3, 3)?.to_text(),
        },
        Check {
            name: "p5r3/top-factor-fee",
            expected: "minimum weight 40".into(),
            actual: format!("minimum weight {fee}"),
        },
        Check {
            name: "p5r3/top-factor-witness",
            expected: "reaches complexity 20".into(),
            actual: format!("reaches complexity {}", achieved(&s, &witness)),
        },
        Check {
            name: "p5r3/plain-lc",
            expected: "120 by gcd, 120 by formula".into(),
            actual: format!("{} by gcd, {} by formula", lc_gcd(&s), lc_formula(5, 3)?),
        },
    ])
}

fn suite_complement(cfg: &SearchConfig) -> Result<Vec<Check>> {
    let expected_p5 = "24 21 21 21 20 20 20 20 4 4 4 4 0";
    let expected_p3 = "6 6 2 2 0";
    let s5 = gen_complement(5, 2)?;
    let search5 = klc_brute_profile(&s5, 12, cfg)?;
    let s3 = gen_complement(3, 2)?;
    let (subset3, _) = klc_structured(&s3, 4, cfg)?;
    Ok(vec![
        Check {
            name: "complement/p5-search-profile",
            expected: expected_p5.into(),
            actual: join_usize(search5.iter().map(|(lc, _)| *lc)),
        },
        Check {
            name: "complement/p5-formula",
            expected: expected_p5.into(),
            actual: formula_values(5, 2, Family::EulerComplement, 12)?,
        },
        Check {
            name: "complement/p3-subset-profile",
            expected: expected_p3.into(),
            actual: entry_values(&subset3.entries),
        },
        Check {
            name: "complement/p3-formula",
            expected: expected_p3.into(),
            actual: formula_values(3, 2, Family::EulerComplement, 4)?,
        },
        Check {
            name: "complement/weights",
            expected: "weight 4 at period 9, weight 12 at period 25".into(),
            actual: format!(
                "weight {} at period 9, weight {} at period 25",
                s3.weight(),
                s5.weight()
            ),
        },
    ])
}

fn class_of(part: &CyclotomicPartition, u: u64) -> Result<u64> {
    Ok(match part.class_of(u)? {
        ClassIndex::Class(l) => l,
        ClassIndex::NonUnit => unreachable!("only called on units"),
    })
}

/// Units whose class index projects consistently one level down.
fn projection_check(p: u64) -> Result<Check> {
    let upper = CyclotomicPartition::build(p, 3)?;
    let lower = CyclotomicPartition::build(p, 2)?;
    let lower_modulus = p * p;
    let total = (p * p * p - p * p) as usize;
    let mut good = 0usize;
    for u in 0..upper.modulus() {
        if u % p == 0 {
            continue;
        }
        if class_of(&upper, u)? % p == class_of(&lower, u % lower_modulus)? {
            good += 1;
        }
    }
    Ok(Check {
        name: match p {
            3 => "lemmas/projection-p3",
            _ => "lemmas/projection-p5",
        },
        expected: format!("{total} of {total} units project consistently"),
        actual: format!("{good} of {total} units project consistently"),
    })
}

/// Units whose p lifts land in p distinct classes with the right
/// residue.
fn lift_spread_check(p: u64) -> Result<Check> {
    let lower = CyclotomicPartition::build(p, 2)?;
    let upper = CyclotomicPartition::build(p, 3)?;
    let modulus = p * p;
    let total = (p * p - p) as usize;
    let mut good = 0usize;
    for u in 1..modulus {
        if u % p == 0 {
            continue;
        }
        let l0 = class_of(&lower, u)?;
        let mut seen = Vec::new();
        for j in 0..p {
            seen.push(class_of(&upper, u + j * modulus)?);
        }
        seen.sort_unstable();
        seen.dedup();
        if seen.len() == p as usize && seen.iter().all(|l| l % p == l0) {
            good += 1;
        }
    }
    Ok(Check {
        name: match p {
            3 => "lemmas/lift-spread-p3",
            _ => "lemmas/lift-spread-p5",
        },
        expected: format!("{total} of {total} units spread over distinct classes"),
        actual: format!("{good} of {total} units spread over distinct classes"),
    })
}

/// One-positions lift to (p+1)/2 ones, zero unit positions to (p-1)/2.
fn one_split_check(p: u64) -> Result<Check> {
    let low = gen_euler_threshold(p, 2)?;
    let high = gen_euler_threshold(p, 3)?;
    let modulus = (p * p) as usize;
    let total = modulus - p as usize;
    let mut good = 0usize;
    for u in 0..modulus {
        if u as u64 % p == 0 {
            continue;
        }
        let ones: u64 = (0..p).map(|j| high.bit(u + j as usize * modulus) as u64).sum();
        let expect = if low.bit(u) == 1 { (p + 1) / 2 } else { (p - 1) / 2 };
        if ones == expect {
            good += 1;
        }
    }
    Ok(Check {
        name: match p {
            3 => "lemmas/one-split-p3",
            _ => "lemmas/one-split-p5",
        },
        expected: format!("{total} of {total} positions split as required"),
        actual: format!("{good} of {total} positions split as required"),
    })
}

fn suite_lemmas() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for p in [3u64, 5] {
        checks.push(projection_check(p)?);
        checks.push(lift_spread_check(p)?);
        checks.push(one_split_check(p)?);
    }
    Ok(checks)
}
