use std::path::PathBuf;

use beatty_core::{BigInt, Family, QuadraticUnit, ZBeta};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "beatty", version, about = "Exact self-matching of Beatty sequences for quadratic Pisot units")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of (j, ⌊jβ⌋) over a range.
    Seq(SeqArgs),
    /// Closed-form mismatch positions of the shift by G_i.
    Mismatch(MismatchArgs),
    /// Step plot of ⌊jβ⌋ with the shifted copy and its mismatches.
    Plot(PlotArgs),
    /// Mismatch frequency over [−n, n].
    Freq(FreqArgs),
    /// Points of a cut-and-project set Σ[lo, hi).
    Cut(CutArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    /// β² + mβ = 1
    A,
    /// β² − mβ = −1
    B,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::A => Family::Plus,
            FamilyArg::B => Family::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
    Ascii,
}

#[derive(Debug, Clone, Args)]
pub struct UnitArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub m: u64,
}

impl UnitArgs {
    pub fn unit(&self) -> Result<QuadraticUnit, CliError> {
        QuadraticUnit::new(self.family.into(), self.m).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SeqArgs {
    #[command(flatten)]
    pub unit: UnitArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub from: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: i64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MismatchArgs {
    #[command(flatten)]
    pub unit: UnitArgs,
    #[arg(long)]
    pub i: usize,
    /// Lower end of the j-range.
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<i64>,
    /// Upper end of the j-range.
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<i64>,
    #[arg(long = "k-from", allow_hyphen_values = true)]
    pub k_from: Option<i64>,
    #[arg(long = "k-to", allow_hyphen_values = true)]
    pub k_to: Option<i64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub unit: UnitArgs,
    #[arg(long)]
    pub i: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub from: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: i64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FreqArgs {
    #[command(flatten)]
    pub unit: UnitArgs,
    #[arg(long)]
    pub i: usize,
    #[arg(long)]
    pub n: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CutArgs {
    #[command(flatten)]
    pub unit: UnitArgs,
    /// Window lower endpoint, written `A+B*beta`.
    #[arg(long, allow_hyphen_values = true)]
    pub lo: String,
    /// Window upper endpoint, written `A+B*beta`.
    #[arg(long, allow_hyphen_values = true)]
    pub hi: String,
    /// Lower end of the irrational-coordinate range.
    #[arg(long, allow_hyphen_values = true)]
    pub from: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: i64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Suites to run (repeatable); all when absent.
    #[arg(long = "suite")]
    pub suites: Vec<String>,
    /// Largest shift index in the grid.
    #[arg(long = "max-i", default_value_t = 12)]
    pub max_i: usize,
    /// Half-width of the j-window for the exact suites.
    #[arg(long, default_value_t = 10_000)]
    pub window: i64,
    /// Half-width of the frequency window.
    #[arg(long, default_value_t = 100_000)]
    pub n: u64,
    /// Largest shift index for the frequency suite.
    #[arg(long = "freq-max-i", default_value_t = 10)]
    pub freq_max_i: usize,
    /// Adds 1 to the discrepancy oracle at this j (negative control).
    #[arg(long = "inject-fault", hide = true, allow_hyphen_values = true)]
    pub inject_fault: Option<i64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Echo of the effective configuration, written into JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyArg>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub to: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_from: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_to: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lo: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hi: Option<String>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: &'static str, unit: &UnitArgs, format: Format) -> Self {
        RunConfig {
            command,
            family: Some(unit.family),
            m: Some(unit.m),
            i: None,
            from: None,
            to: None,
            k_from: None,
            k_to: None,
            n: None,
            lo: None,
            hi: None,
            format,
        }
    }
}

pub fn check_range(lo: i64, hi: i64, what: &str) -> Result<(), CliError> {
    if lo > hi {
        Err(CliError::Usage(format!("{what} range is inverted: {lo} > {hi}")))
    } else {
        Ok(())
    }
}

/// Parses `A+B*beta` (also `A`, `B*beta`, `beta`, `1 + (-1)*beta`, `2-3*beta`).
pub fn parse_zbeta(unit: QuadraticUnit, text: &str) -> Result<ZBeta, CliError> {
    let bad = || CliError::Usage(format!("cannot parse window endpoint {text:?}; expected A+B*beta"));
    let cleaned: String = text
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '(' && *c != ')')
        .map(|c| if c == '−' { '-' } else { c })
        .collect();
    if cleaned.is_empty() {
        return Err(bad());
    }
    // Split into signed terms at + or - that follow an operand.
    let mut terms = Vec::new();
    let mut current = String::new();
    for c in cleaned.chars() {
        let after_operand = current.chars().last().is_some_and(|p| p.is_ascii_alphanumeric());
        if (c == '+' || c == '-') && after_operand {
            terms.push(std::mem::take(&mut current));
        }
        current.push(c);
    }
    terms.push(current);

    let mut a = BigInt::from(0);
    let mut b = BigInt::from(0);
    for term in terms {
        let (neg, body) = strip_signs(&term);
        let (coef, is_beta) = if let Some(c) = body.strip_suffix("*beta") {
            let (inner_neg, digits) = strip_signs(c);
            let v: BigInt = digits.parse().map_err(|_| bad())?;
            (if inner_neg { -v } else { v }, true)
        } else if body == "beta" {
            (BigInt::from(1), true)
        } else {
            (body.parse::<BigInt>().map_err(|_| bad())?, false)
        };
        let coef = if neg { -coef } else { coef };
        if is_beta {
            b += coef;
        } else {
            a += coef;
        }
    }
    Ok(ZBeta::new(unit, a, b))
}

fn strip_signs(s: &str) -> (bool, &str) {
    let mut neg = false;
    let mut rest = s;
    while let Some(c) = rest.chars().next() {
        match c {
            '+' => {}
            '-' => neg = !neg,
            _ => break,
        }
        rest = &rest[1..];
    }
    (neg, rest)
}
