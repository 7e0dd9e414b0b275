//! Command-line front end.
//!
//! Exit codes: 0 on a successful decision, 1 when a replayed witness or an
//! oracle cross-check disagrees, 2 on malformed input.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::decide::{
    self, Arithmetic, DecideError, Decision, Instance, Options, PartitionTriple, Verdict, Witness,
};
use crate::oracle::{self, OracleError};
use crate::rootsys::positive_root_count;
use crate::weyl::{long_word, parse_word, LieType, WeylError};

pub const SCHEMA: u32 = 1;
pub const SEED_ENV: &str = "SCHUBVAN_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ArithmeticArg {
    Exact,
    Modular,
}

impl From<ArithmeticArg> for Arithmetic {
    fn from(a: ArithmeticArg) -> Self {
        match a {
            ArithmeticArg::Exact => Arithmetic::Exact,
            ArithmeticArg::Modular => Arithmetic::Modular,
        }
    }
}

/// Decide whether a Schubert structure constant vanishes.
#[derive(Debug, Parser)]
#[command(name = "schubvan", version, about)]
pub struct Args {
    /// Lie type: A, B, C or D.
    #[arg(long = "type", value_name = "TYPE")]
    pub lie_type: Option<String>,
    /// Rank n (type A words are permutations of 1..=n).
    #[arg(long)]
    pub rank: Option<usize>,
    /// Words separated by `;`, entries by `,`, e.g. "3,2,1,4;1,3,4,2".
    #[arg(long, allow_hyphen_values = true)]
    pub words: Option<String>,
    /// Append w∘w to the words, turning (u, v) into a query for c_{u,v}^w.
    #[arg(long, allow_hyphen_values = true)]
    pub against: Option<String>,
    /// Grassmannian mode: decide c_{λμ}^ν from --lambda, --mu and --nu.
    #[arg(long)]
    pub lr: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    /// Also run an exact oracle and report agreement.
    #[arg(long)]
    pub oracle_check: bool,
    /// Bound on the probability of a wrong "zero".
    #[arg(long, default_value_t = 1e-9)]
    pub epsilon: f64,
    /// Random seed; drawn from system entropy when absent.
    #[arg(long, env = SEED_ENV)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = ArithmeticArg::Exact)]
    pub arithmetic: ArithmeticArg,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// File with one instance per line: `TYPE RANK; w1; w2; ...`.
    #[arg(long, value_name = "FILE")]
    pub batch: Option<PathBuf>,
    /// Re-evaluate a stored witness (or a structured report containing one).
    #[arg(long, value_name = "FILE")]
    pub replay_witness: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Decide(#[from] DecideError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// What was asked, kept for reporting and oracle checks.
#[derive(Debug, Clone)]
enum Query {
    Schubert(Instance),
    Lr(LieType, PartitionTriple),
}

impl Query {
    fn describe(&self) -> String {
        match self {
            Query::Schubert(inst) => inst.to_string(),
            Query::Lr(t, tr) => {
                let j = |p: &[usize]| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
                format!("LR {t} λ=({}) μ=({}) ν=({})", j(&tr.lambda), j(&tr.mu), j(&tr.nu))
            }
        }
    }
}

#[derive(Debug, Serialize)]
struct OracleReport {
    verdict: Verdict,
    agrees: bool,
    source: &'static str,
}

#[derive(Debug, Serialize)]
struct Report {
    schema: u32,
    instance: String,
    decision: Verdict,
    certain: bool,
    method: decide::Method,
    rounds: usize,
    p: u64,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exponent: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleReport>,
}

impl Report {
    fn new(query: &Query, d: Decision, seed: u64, oracle: Option<OracleReport>) -> Self {
        Report {
            schema: SCHEMA,
            instance: query.describe(),
            decision: d.verdict,
            certain: d.certain,
            method: d.method,
            rounds: d.rounds_run,
            p: d.p,
            seed,
            exponent: d.exponent,
            witness: d.witness,
            oracle,
        }
    }

    fn text(&self) -> String {
        let mut s = format!("{}: {}", self.instance, self.decision);
        let how = match (self.method, self.certain) {
            (decide::Method::Dimension, _) => "certain, dimension condition fails".to_string(),
            (decide::Method::Duality, _) => "certain, duality".to_string(),
            (_, true) => format!("certain, nonzero determinant in round {} (p = {})", self.rounds, self.p),
            (_, false) => format!("probable, {} rounds vanished (p = {})", self.rounds, self.p),
        };
        s.push_str(&format!(" ({how}; seed {})", self.seed));
        if let Some(a) = self.exponent {
            s.push_str(&format!("\n  type B coefficient = 2^{a} x type C coefficient"));
        }
        if let Some(w) = &self.witness {
            match (&w.determinant, w.modulus, w.residue) {
                (Some(det), _, _) => s.push_str(&format!("\n  witness determinant: {det}")),
                (None, Some(q), Some(r)) => s.push_str(&format!("\n  witness determinant mod {q}: {r}")),
                _ => {}
            }
        }
        if let Some(o) = &self.oracle {
            s.push_str(&format!(
                "\n  oracle ({}): {} [{}]",
                o.source,
                o.verdict,
                if o.agrees { "agrees" } else { "DISAGREES" }
            ));
        }
        s
    }
}

fn parse_type(s: Option<&str>) -> Result<LieType, CliError> {
    let s = s.ok_or_else(|| CliError::Usage("--type is required".into()))?;
    Ok(s.parse()?)
}

fn parse_partition(s: Option<&str>, name: &str) -> Result<Vec<usize>, CliError> {
    let s = s.ok_or_else(|| CliError::Usage(format!("--{name} is required in LR mode")))?;
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| CliError::Usage(format!("bad part `{t}` in --{name}"))))
        .collect()
}

fn parse_instance(lie_type: LieType, rank: usize, words: &str, against: Option<&str>) -> Result<Instance, CliError> {
    let mut parsed = words
        .split(';')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(|w| parse_word(w, lie_type, rank))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(w) = against {
        let w = parse_word(w, lie_type, rank)?;
        parsed.push(long_word(lie_type, rank).compose(&w)?);
    }
    Ok(Instance::new(lie_type, rank, parsed)?)
}

/// Parses a batch line `TYPE RANK; w1; w2; ...`.
pub fn parse_batch_line(line: &str) -> Result<Instance, CliError> {
    let (head, rest) = line.split_once(';').unwrap_or((line, ""));
    let mut it = head.split_whitespace();
    let (Some(t), Some(r), None) = (it.next(), it.next(), it.next()) else {
        return Err(CliError::Usage(format!("expected `TYPE RANK; words...`, got `{}`", head.trim())));
    };
    let lie_type: LieType = t.parse()?;
    let rank: usize = r.parse().map_err(|_| CliError::Usage(format!("bad rank `{r}`")))?;
    parse_instance(lie_type, rank, rest, None)
}

fn build_query(args: &Args) -> Result<Query, CliError> {
    let lie_type = parse_type(args.lie_type.as_deref())?;
    if args.lr {
        if args.words.is_some() {
            return Err(CliError::Usage("--words cannot be combined with --lr".into()));
        }
        let triple = PartitionTriple::new(
            parse_partition(args.lambda.as_deref(), "lambda")?,
            parse_partition(args.mu.as_deref(), "mu")?,
            parse_partition(args.nu.as_deref(), "nu")?,
        );
        return Ok(Query::Lr(lie_type, triple));
    }
    let rank = args.rank.ok_or_else(|| CliError::Usage("--rank is required".into()))?;
    let words = args.words.as_deref().ok_or_else(|| CliError::Usage("--words is required".into()))?;
    Ok(Query::Schubert(parse_instance(lie_type, rank, words, args.against.as_deref())?))
}

fn decide_query(query: &Query, opts: &Options, seed: u64) -> Result<Decision, CliError> {
    Ok(match query {
        Query::Schubert(inst) => decide::vanishing(inst, opts, seed)?,
        Query::Lr(t, triple) => decide::lr_vanishing(triple, *t, opts, seed)?,
    })
}

fn verdict_of(zero: bool) -> Verdict {
    if zero {
        Verdict::Zero
    } else {
        Verdict::Positive
    }
}

/// Exact answer from the most direct oracle available for the query.
fn run_oracle(query: &Query) -> Result<(Verdict, &'static str), CliError> {
    match query {
        Query::Lr(t, tr) => {
            let c = match t {
                LieType::A => oracle::schur_lr_coeff(&tr.lambda, &tr.mu, &tr.nu),
                LieType::C => oracle::qschur_coeff(&tr.lambda, &tr.mu, &tr.nu),
                LieType::B | LieType::D => oracle::pschur_coeff(&tr.lambda, &tr.mu, &tr.nu),
            };
            let source = match t {
                LieType::A => "schur",
                LieType::C => "schur-q",
                _ => "schur-p",
            };
            Ok((verdict_of(c.is_zero()), source))
        }
        Query::Schubert(inst) => {
            if inst.lie_type() == LieType::A && inst.words().len() == 3 && inst.rank() <= 6 {
                let w0 = long_word(LieType::A, inst.rank());
                let w = w0.compose(&inst.words()[2])?;
                let c = oracle::schubert_coeff_a(&inst.words()[0], &inst.words()[1], &w)?;
                return Ok((verdict_of(c.is_zero()), "schubert"));
            }
            let d = positive_root_count(inst.lie_type(), inst.rank());
            if d <= oracle::symbolic::MAX_SYMBOLIC_D {
                return Ok((verdict_of(oracle::symbolic_vanishing(inst)?), "symbolic"));
            }
            Err(CliError::Usage("no exact oracle covers this instance".into()))
        }
    }
}

fn options(args: &Args) -> Options {
    Options { epsilon: args.epsilon, rounds: None, arithmetic: args.arithmetic.into() }
}

fn single(args: &Args, seed: u64) -> Result<(Report, bool), CliError> {
    let query = build_query(args)?;
    let decision = decide_query(&query, &options(args), seed)?;
    let mut ok = true;
    let oracle = if args.oracle_check {
        let (verdict, source) = run_oracle(&query)?;
        let agrees = verdict == decision.verdict;
        ok = agrees;
        Some(OracleReport { verdict, agrees, source })
    } else {
        None
    };
    Ok((Report::new(&query, decision, seed, oracle), ok))
}

/// Seed for line `index` of a batch, decorrelated from neighbours.
pub fn line_seed(seed: u64, index: usize) -> u64 {
    // splitmix64 finalizer
    let mut z = seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn batch_records(text: &str, opts: &Options, seed: u64) -> Vec<Value> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect();
    lines
        .par_iter()
        .map(|&(i, line)| {
            let s = line_seed(seed, i);
            let result = parse_batch_line(line).and_then(|inst| {
                let q = Query::Schubert(inst);
                let d = decide_query(&q, opts, s)?;
                Ok(Report::new(&q, d, s, None))
            });
            match result {
                Ok(r) => {
                    let mut v = serde_json::to_value(r).expect("reports serialize");
                    v["line"] = json!(i + 1);
                    v
                }
                Err(e) => json!({ "schema": SCHEMA, "line": i + 1, "error": e.to_string() }),
            }
        })
        .collect()
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn replay_file(path: &PathBuf) -> Result<(Value, bool), CliError> {
    let value: Value = serde_json::from_str(read(path)?.trim())?;
    let witness_value = value.get("witness").cloned().unwrap_or(value);
    let witness: Witness = serde_json::from_value(witness_value)?;
    let r = decide::replay(&witness)?;
    let record = json!({
        "schema": SCHEMA,
        "replay": if r.matches { "match" } else { "mismatch" },
        "determinant": r.determinant.to_string(),
    });
    Ok((record, r.matches))
}

/// Runs the tool with `argv` (including the program name); returns the
/// exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(&args, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(args: &Args, out: &mut dyn Write) -> Result<i32, CliError> {
    let structured = args.output == OutputFormat::Structured;
    let emit = |out: &mut dyn Write, line: String| {
        let _ = writeln!(out, "{line}");
    };
    if let Some(path) = &args.replay_witness {
        let (record, ok) = replay_file(path)?;
        if structured {
            emit(out, record.to_string());
        } else {
            emit(
                out,
                format!(
                    "replay {}: determinant {}",
                    record["replay"].as_str().unwrap_or_default(),
                    record["determinant"].as_str().unwrap_or_default()
                ),
            );
        }
        return Ok(if ok { 0 } else { 1 });
    }
    if !(args.epsilon > 0.0 && args.epsilon < 1.0) {
        return Err(DecideError::Epsilon(args.epsilon).into());
    }
    let seed = args.seed.unwrap_or_else(rand::random);
    if let Some(path) = &args.batch {
        let text = read(path)?;
        for record in batch_records(&text, &options(args), seed) {
            if structured {
                emit(out, record.to_string());
            } else if let Some(e) = record.get("error") {
                emit(out, format!("line {}: error: {}", record["line"], e.as_str().unwrap_or_default()));
            } else {
                let verdict = record["decision"].as_str().unwrap_or_default();
                let certain = record["certain"].as_bool().unwrap_or(false);
                emit(
                    out,
                    format!(
                        "line {}: {}: {} ({})",
                        record["line"],
                        record["instance"].as_str().unwrap_or_default(),
                        verdict,
                        if certain { "certain" } else { "probable" }
                    ),
                );
            }
        }
        return Ok(0);
    }
    let (report, ok) = single(args, seed)?;
    if structured {
        emit(out, serde_json::to_string(&report)?);
    } else {
        emit(out, report.text());
    }
    Ok(if ok { 0 } else { 1 })
}
