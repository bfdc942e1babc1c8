//! Output rendering. The default `text` format is the stable
//! line-oriented key/value form the library defines, suitable for
//! byte-exact diffs against golden files; `table` renders the same
//! content as aligned columns for reading.

use std::fmt::Write;

use clap::ValueEnum;

use eulerseq::cyclotomy::CyclotomicPartition;
use eulerseq::lcanalysis::{KlcProfile, KlcValue, StructuredReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Stable line-oriented key/value text
    Text,
    /// Aligned human-readable columns
    Table,
}

/// A per-k profile, optionally with the witness error positions.
pub fn render_profile(profile: &KlcProfile, format: Format, witnesses: bool) -> String {
    match format {
        Format::Text => {
            let mut out = profile.to_text();
            if witnesses {
                for e in &profile.entries {
                    if let Some(w) = &e.witness {
                        writeln!(out, "witness k={}: {w}", e.k).unwrap();
                    }
                }
            }
            out
        }
        Format::Table => {
            let mut out = String::new();
            if let (Some(p), Some(r)) = (profile.p, profile.r) {
                writeln!(out, "family {} with p = {p}, r = {r}", profile.family).unwrap();
            } else {
                writeln!(out, "family {}", profile.family).unwrap();
            }
            writeln!(out, "{:>4}  {:<12}  {:<8}", "k", "complexity", "method").unwrap();
            for e in &profile.entries {
                let value = match e.value {
                    KlcValue::Exact(v) => v.to_string(),
                    KlcValue::Interval { lo, hi } => format!("{lo}..{hi}"),
                };
                write!(out, "{:>4}  {:<12}  {:<8}", e.k, value, e.method.to_string()).unwrap();
                if witnesses {
                    if let Some(w) = &e.witness {
                        write!(out, "  flip {w}").unwrap();
                    }
                }
                out.push('\n');
            }
            out
        }
    }
}

/// The per-subset search report that accompanies the subset route.
pub fn render_structured(report: &StructuredReport, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Table => {
            let mut out = String::new();
            writeln!(out, "divisor subsets at period {}:", report.period).unwrap();
            writeln!(out, "{:>8}  {:>6}  {}", "mask", "degree", "min errors").unwrap();
            for s in &report.computed {
                writeln!(out, "{:>#8b}  {:>6}  {}", s.mask, s.degree, s.weight).unwrap();
            }
            for s in &report.skipped {
                writeln!(
                    out,
                    "{:>#8b}  {:>6}  >= {} (skipped: dimension over limit)",
                    s.mask, s.degree, s.weight_lower_bound
                )
                .unwrap();
            }
            out
        }
    }
}

/// The class partition; `text` is the library's one-line-per-class
/// form.
pub fn render_classes(partition: &CyclotomicPartition, format: Format) -> String {
    match format {
        Format::Text => partition.to_text(),
        Format::Table => {
            let mut out = String::new();
            writeln!(
                out,
                "classes modulo {} (quotient level {})",
                partition.modulus(),
                partition.r() - 1
            )
            .unwrap();
            for (l, class) in partition.classes().iter().enumerate() {
                let members: Vec<String> = class.iter().map(|u| u.to_string()).collect();
                writeln!(out, "{:>6}  {}", l, members.join(" ")).unwrap();
            }
            let nonunits: Vec<String> =
                partition.nonunits().iter().map(|u| u.to_string()).collect();
            writeln!(out, "  rest  {}", nonunits.join(" ")).unwrap();
            out
        }
    }
}

/// Both plain-complexity routes for one sequence.
pub fn render_lc(
    period: usize,
    family: &str,
    gcd: usize,
    synthesis: usize,
    format: Format,
) -> String {
    match format {
        Format::Text => format!(
            "period={period}\nfamily={family}\nlc={gcd} method=gcd\nlc={synthesis} method=synthesis\n"
        ),
        Format::Table => format!(
            "{family} sequence of period {period}\n\
             {:>10}  {:<10}\n{:>10}  {:<10}\n{:>10}  {:<10}\n",
            "method", "lc", "gcd", gcd, "synthesis", synthesis
        ),
    }
}
