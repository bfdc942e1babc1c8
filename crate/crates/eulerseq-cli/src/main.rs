//! Command-line surface: generate bitstring files, list the cyclotomic
//! classes behind them, measure linear complexity by independent
//! routes, emit per-k error profiles, and re-derive the shipped
//! reference values.
//!
//! Exit codes: 0 success; 1 verification mismatch or internal
//! disagreement; 2 invalid arguments or inputs; 3 resource-limit
//! refusal (pattern budget or coset dimension). Every long flag has an
//! `EULERSEQ_*` environment override.

mod report;
mod verify;

use std::fs::File;
use std::io::{self, BufReader};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use eulerseq::cyclotomy::CyclotomicPartition;
use eulerseq::lcanalysis::{
    formula_profile, klc_brute_profile, klc_structured, lc_bm, lc_gcd, max_feasible_k,
    ErrorWitness, KlcEntry, KlcProfile, KlcValue, Method, SearchConfig,
};
use eulerseq::seqgen::{
    gen_complement, gen_euler_threshold, gen_xzlh, BinarySequence, Family,
};
use eulerseq::{Error, Result};

use report::Format;
use verify::SuiteArg;

#[derive(Parser)]
#[command(
    name = "eulerseq",
    version,
    about = "Euler-quotient binary sequences and their k-error complexity profiles"
)]
struct Cli {
    #[command(flatten)]
    run: RunOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunOpts {
    /// Worker threads for the parallel searches (default: all cores)
    #[arg(long, global = true, env = "EULERSEQ_WORKERS")]
    workers: Option<usize>,
    /// Refuse exhaustive searches over more candidate patterns than this
    #[arg(long, global = true, env = "EULERSEQ_PATTERN_BUDGET", default_value_t = 100_000_000)]
    pattern_budget: u64,
    /// Refuse coset scans over more than 2^LIMIT representatives
    #[arg(long, global = true, env = "EULERSEQ_COSET_DIM_LIMIT", default_value_t = 26, value_name = "LIMIT")]
    coset_dim_limit: usize,
    /// Output format
    #[arg(long, global = true, env = "EULERSEQ_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,
}

impl RunOpts {
    fn search_config(&self) -> SearchConfig {
        SearchConfig {
            workers: self.workers,
            pattern_budget: u128::from(self.pattern_budget),
            coset_dim_limit: self.coset_dim_limit,
        }
    }
}

/// Which sequence to work on: a family to generate, or a bitstring
/// file.
#[derive(Args)]
struct SourceSpec {
    /// Family to generate: euler, euler-complement, or xzlh
    #[arg(required_unless_present = "input")]
    family: Option<String>,
    /// Odd prime p
    #[arg(required_unless_present = "input")]
    p: Option<u64>,
    /// Exponent r of the period p^r
    #[arg(required_unless_present = "input")]
    r: Option<u32>,
    /// Read the sequence from a bitstring file instead of generating it
    #[arg(long = "in", value_name = "FILE", conflicts_with_all = ["family", "p", "r"])]
    input: Option<PathBuf>,
    /// Class order for the xzlh family (even divisor of p-1)
    #[arg(long = "f", value_name = "F")]
    f: Option<u64>,
    /// Shift for the xzlh family (less than f * p^(r-1))
    #[arg(long = "b", value_name = "B")]
    b: Option<u64>,
    /// Primitive root modulo p^r for the xzlh family
    #[arg(long = "g", value_name = "G")]
    g: Option<u64>,
}

impl SourceSpec {
    fn load(&self) -> Result<BinarySequence> {
        if let Some(path) = &self.input {
            return BinarySequence::read_from(BufReader::new(File::open(path)?));
        }
        let family: Family = self.family.as_deref().unwrap().parse()?;
        let (p, r) = (self.p.unwrap(), self.r.unwrap());
        match family {
            Family::Euler => gen_euler_threshold(p, r),
            Family::EulerComplement => gen_complement(p, r),
            Family::Xzlh => {
                let (f, b, g) = match (self.f, self.b, self.g) {
                    (Some(f), Some(b), Some(g)) => (f, b, g),
                    _ => {
                        return Err(Error::UnsupportedCase(
                            "the xzlh family needs --f, --b, and --g".into(),
                        ))
                    }
                };
                gen_xzlh(p, r, f, b, g)
            }
            Family::Custom => Err(Error::UnsupportedCase(
                "custom sequences come from files; pass --in".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Exhaustive search over low-weight error patterns
    Brute,
    /// Divisor-subset search driven by minimum-weight coset members
    Coset,
    /// Closed-form values where published results apply
    Formula,
    /// Every applicable route, cross-checked
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a sequence and write its bitstring file
    Gen {
        #[command(flatten)]
        spec: SourceSpec,
        /// Output path (stdout when omitted)
        #[arg(long, env = "EULERSEQ_OUT")]
        out: Option<PathBuf>,
    },
    /// Print the cyclotomic classes for the period p^r
    Classes {
        /// Odd prime p
        p: u64,
        /// Exponent r of the period p^r
        r: u32,
        /// Derive the partition from this primitive root instead of
        /// directly from the quotients
        #[arg(long)]
        generator: Option<u64>,
    },
    /// Linear complexity by the gcd route and by synthesis
    Lc {
        #[command(flatten)]
        source: SourceSpec,
    },
    /// Per-k error complexity profile
    Klc {
        #[command(flatten)]
        source: SourceSpec,
        /// Largest number of allowed errors
        #[arg(long = "k-max", env = "EULERSEQ_K_MAX", value_name = "N")]
        k_max: usize,
        /// Route to run
        #[arg(long, value_enum, env = "EULERSEQ_METHOD", default_value_t = MethodArg::All)]
        method: MethodArg,
        /// Report the witness error positions as well
        #[arg(long)]
        witnesses: bool,
    },
    /// Re-derive the shipped reference values and compare
    Verify {
        /// Which bundle of checks to run
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::PatternBudgetExceeded { .. } | Error::CosetDimExceeded { .. } => 3,
                Error::Io(_) | Error::ProfileInconsistent(_) => 1,
                _ => 2,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let cfg = cli.run.search_config();
    let format = cli.run.format;
    match &cli.command {
        Command::Gen { spec, out } => {
            let s = spec.load()?;
            match out {
                Some(path) => s.write_to(File::create(path)?)?,
                None => s.write_to(io::stdout().lock())?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classes { p, r, generator } => {
            let partition = match generator {
                Some(g) => CyclotomicPartition::from_generator(*p, *r, *g)?,
                None => CyclotomicPartition::build(*p, *r)?,
            };
            print!("{}", report::render_classes(&partition, format));
            Ok(ExitCode::SUCCESS)
        }
        Command::Lc { source } => {
            let s = source.load()?;
            let gcd = lc_gcd(&s);
            let synthesis = lc_bm(&s);
            let family = s.provenance().family().to_string();
            print!("{}", report::render_lc(s.period(), &family, gcd, synthesis, format));
            if gcd != synthesis {
                eprintln!("internal error: gcd route gives {gcd} but synthesis gives {synthesis}");
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Klc { source, k_max, method, witnesses } => {
            cmd_klc(source, *k_max, *method, *witnesses, &cfg, format)
        }
        Command::Verify { suite } => verify::run(*suite, &cfg, format),
    }
}

/// Profile from the exhaustive search, wrapped in the common report
/// shape.
fn brute_profile(
    s: &BinarySequence,
    k_max: usize,
    cfg: &SearchConfig,
) -> Result<KlcProfile> {
    let per_k = klc_brute_profile(s, k_max, cfg)?;
    let (p, r) = match s.provenance().prime_power() {
        Some((p, r)) => (Some(p), Some(r)),
        None => (None, None),
    };
    let entries = per_k
        .into_iter()
        .enumerate()
        .map(|(k, (lc, witness))| KlcEntry {
            k,
            value: KlcValue::Exact(lc),
            method: Method::Brute,
            witness: Some(witness),
        })
        .collect();
    let profile = KlcProfile { p, r, family: s.provenance().family(), entries };
    profile.check_consistency()?;
    Ok(profile)
}

fn cmd_klc(
    source: &SourceSpec,
    k_max: usize,
    method: MethodArg,
    witnesses: bool,
    cfg: &SearchConfig,
    format: Format,
) -> Result<ExitCode> {
    let s = source.load()?;
    let family = s.provenance().family();
    let prime_power = s.provenance().prime_power();
    match method {
        MethodArg::Brute => {
            let profile = brute_profile(&s, k_max, cfg)?;
            print!("{}", report::render_profile(&profile, format, witnesses));
            Ok(ExitCode::SUCCESS)
        }
        MethodArg::Coset => {
            let (profile, subsets) = klc_structured(&s, k_max, cfg)?;
            print!("{}", report::render_profile(&profile, format, witnesses));
            print!("{}", report::render_structured(&subsets, format));
            Ok(ExitCode::SUCCESS)
        }
        MethodArg::Formula => {
            let (p, r) = prime_power.ok_or_else(|| {
                Error::UnsupportedCase("no closed forms for sequences of unknown origin".into())
            })?;
            let profile = formula_profile(p, r, family, k_max)?;
            print!("{}", report::render_profile(&profile, format, witnesses));
            Ok(ExitCode::SUCCESS)
        }
        MethodArg::All => {
            let mut notes: Vec<String> = Vec::new();
            let formula = match prime_power {
                Some((p, r)) if matches!(family, Family::Euler | Family::EulerComplement) => {
                    match formula_profile(p, r, family, k_max) {
                        Ok(profile) => Some(profile),
                        Err(e) => {
                            notes.push(format!("formula route skipped: {e}"));
                            None
                        }
                    }
                }
                _ => {
                    notes.push("formula route skipped: no closed forms for this family".into());
                    None
                }
            };
            let structured = match klc_structured(&s, k_max, cfg) {
                Ok((profile, _)) => Some(profile),
                Err(e) => {
                    notes.push(format!("subset route skipped: {e}"));
                    None
                }
            };
            let brute = match max_feasible_k(s.period(), cfg.pattern_budget) {
                Some(cap) => {
                    // the search never enumerates past weight - 1 (all
                    // ones is the unique way down to zero), so a cap at
                    // or above that covers any k
                    let enum_cap = s.weight().saturating_sub(1);
                    let capped = if cap >= enum_cap { k_max } else { k_max.min(cap) };
                    if capped < k_max {
                        notes.push(format!(
                            "search capped at k={capped} by the pattern budget"
                        ));
                    }
                    match brute_profile(&s, capped, cfg) {
                        Ok(profile) => Some(profile),
                        Err(e) => {
                            notes.push(format!("search skipped: {e}"));
                            None
                        }
                    }
                }
                None => {
                    notes.push("search skipped: even k=0 is over the pattern budget".into());
                    None
                }
            };
            let (merged, mismatches, comparisons) =
                merge_routes(&s, k_max, formula.as_ref(), structured.as_ref(), brute.as_ref());
            print!("{}", report::render_profile(&merged, format, witnesses));
            for note in &notes {
                println!("note: {note}");
            }
            if mismatches.is_empty() {
                println!("cross-check: {comparisons} comparisons, all consistent");
                Ok(ExitCode::SUCCESS)
            } else {
                for m in &mismatches {
                    println!("mismatch: {m}");
                }
                eprintln!("cross-check failed: {} mismatches", mismatches.len());
                Ok(ExitCode::from(1))
            }
        }
    }
}

/// Combine per-route profiles: exact values must agree and fall inside
/// every bracket; the merged entry is the most precise consistent one.
fn merge_routes(
    s: &BinarySequence,
    k_max: usize,
    formula: Option<&KlcProfile>,
    structured: Option<&KlcProfile>,
    brute: Option<&KlcProfile>,
) -> (KlcProfile, Vec<String>, usize) {
    let mut mismatches = Vec::new();
    let mut comparisons = 0usize;
    let mut entries = Vec::with_capacity(k_max + 1);
    let mut running_hi = s.period();
    for k in 0..=k_max {
        // (method, value, witness) per route that covers this k
        let mut candidates: Vec<(Method, KlcValue, Option<ErrorWitness>)> = Vec::new();
        for profile in [brute, structured, formula].into_iter().flatten() {
            if let Some(e) = profile.entries.iter().find(|e| e.k == k) {
                candidates.push((e.method, e.value, e.witness.clone()));
            }
        }
        for i in 0..candidates.len() {
            for j in i + 1..candidates.len() {
                comparisons += 1;
                let (ma, a, _) = &candidates[i];
                let (mb, b, _) = &candidates[j];
                let consistent = match (a, b) {
                    (KlcValue::Exact(x), KlcValue::Exact(y)) => x == y,
                    (KlcValue::Exact(x), other) | (other, KlcValue::Exact(x)) => {
                        other.contains(*x)
                    }
                    (x, y) => x.lo().max(y.lo()) <= x.hi().min(y.hi()),
                };
                if !consistent {
                    mismatches.push(format!("k={k}: {ma} says {a:?}, {mb} says {b:?}"));
                }
            }
        }
        let merged = candidates
            .iter()
            .find(|(_, v, _)| matches!(v, KlcValue::Exact(_)))
            .cloned()
            .unwrap_or_else(|| {
                // intersect the brackets; each is sound, so the
                // intersection is too, and so is any earlier bound
                let lo = candidates.iter().map(|(_, v, _)| v.lo()).max().unwrap_or(0);
                let hi = candidates
                    .iter()
                    .map(|(_, v, _)| v.hi())
                    .min()
                    .unwrap_or(s.period())
                    .min(running_hi);
                (Method::Bound, KlcValue::Interval { lo, hi }, None)
            });
        running_hi = running_hi.min(merged.1.hi());
        entries.push(KlcEntry { k, value: merged.1, method: merged.0, witness: merged.2 });
    }
    let (p, r) = match s.provenance().prime_power() {
        Some((p, r)) => (Some(p), Some(r)),
        None => (None, None),
    };
    let profile = KlcProfile { p, r, family: s.provenance().family(), entries };
    (profile, mismatches, comparisons)
}
