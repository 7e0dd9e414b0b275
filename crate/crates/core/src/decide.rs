//! The decision pipeline.
//!
//! An instance `(u_1, .., u_k)` asks whether the product of Schubert classes
//! `σ_{u_1} ⋯ σ_{u_k}` has a nonzero coefficient on the point class. The
//! coefficient is positive exactly when the conjugated spans
//! `K_i · span{E_γ : γ ∈ Φ₊(u_i)} · K_i⁻¹` together fill the nilradical for
//! generic unipotent `K_i`. Under the dimension condition this is a single
//! determinant, which is tested at random integer points: a nonzero value
//! certifies positivity, while a run of zero values only makes vanishing
//! likely.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{random_prime_62, IntMatrix, LinalgError};
use crate::generic::{self, GenericError, UnipotentSample};
use crate::rootsys::{positive_root_count, Root, RootError, RootSystemData};
use crate::weyl::{long_word, LieType, WeylElement, WeylError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecideError {
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Generic(#[from] GenericError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    Epsilon(f64),
    #[error("an instance needs at least one word")]
    NoWords,
    #[error("word {index} is {found}{found_rank}, instance is {lie_type}{rank}")]
    WordMismatch { index: usize, lie_type: LieType, rank: usize, found: LieType, found_rank: usize },
    #[error("expected a type C instance")]
    NotTypeC,
    #[error("the dimension condition fails ({total} != {d}); no square matrix exists")]
    DimensionCondition { total: usize, d: usize },
    #[error("expected {expected} {what}, got {got}")]
    Count { what: &'static str, expected: usize, got: usize },
    #[error("invalid partition {0:?}: {1}")]
    Partition(Vec<usize>, String),
    #[error("malformed witness: {0}")]
    Witness(String),
}

/// A vanishing query `c(u_1, .., u_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    lie_type: LieType,
    rank: usize,
    words: Vec<WeylElement>,
}

impl Instance {
    pub fn new(lie_type: LieType, rank: usize, words: Vec<WeylElement>) -> Result<Self, DecideError> {
        if words.is_empty() {
            return Err(DecideError::NoWords);
        }
        for (index, w) in words.iter().enumerate() {
            if w.lie_type() != lie_type || w.rank() != rank {
                return Err(DecideError::WordMismatch {
                    index,
                    lie_type,
                    rank,
                    found: w.lie_type(),
                    found_rank: w.rank(),
                });
            }
        }
        Ok(Instance { lie_type, rank, words })
    }

    /// Parses words given as comma-separated one-line notation.
    pub fn parse(lie_type: LieType, rank: usize, words: &[&str]) -> Result<Self, DecideError> {
        let words = words
            .iter()
            .map(|w| crate::weyl::parse_word(w, lie_type, rank))
            .collect::<Result<Vec<_>, _>>()?;
        Instance::new(lie_type, rank, words)
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn words(&self) -> &[WeylElement] {
        &self.words
    }

    /// `d = dim 𝔫`.
    pub fn d(&self) -> usize {
        positive_root_count(self.lie_type, self.rank)
    }

    /// The same instance with its words permuted by `order`.
    pub fn reordered(&self, order: &[usize]) -> Instance {
        let words = order.iter().map(|&i| self.words[i].clone()).collect();
        Instance { lie_type: self.lie_type, rank: self.rank, words }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.lie_type, self.rank)?;
        for w in &self.words {
            write!(f, "; {w}")?;
        }
        Ok(())
    }
}

/// Relabels a type C instance as type B.
///
/// The two coefficients differ by the factor `2^a` returned alongside, so
/// vanishing is unaffected.
pub fn reduce_type_c(inst: &Instance) -> Result<(Instance, i64), DecideError> {
    if inst.lie_type != LieType::C {
        return Err(DecideError::NotTypeC);
    }
    let words = inst
        .words
        .iter()
        .map(|w| w.relabel(LieType::B))
        .collect::<Result<Vec<_>, _>>()?;
    let (last, rest) = inst.words.split_last().expect("instances are nonempty");
    let w0 = long_word(LieType::C, inst.rank);
    let mut a = w0.compose(last)?.zeta()? as i64;
    for w in rest {
        a -= w.zeta()? as i64;
    }
    Ok((Instance { lie_type: LieType::B, rank: inst.rank, words }, a))
}

/// `Σ ℓ(u_i) = d`.
pub fn dimension_check(inst: &Instance) -> bool {
    inst.words.iter().map(|w| w.length()).sum::<usize>() == inst.d()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Zero,
    Positive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Zero => "zero",
            Verdict::Positive => "positive",
        })
    }
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// `Σ ℓ(u_i) ≠ d`.
    Dimension,
    /// At most two nontrivial words: decided by Poincaré duality.
    Duality,
    /// Randomized determinant evaluation.
    Sampling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    #[default]
    Exact,
    Modular,
}

/// A replayable evaluation point with a nonzero determinant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Type the matrix was built in (type C instances are stored as B).
    pub lie_type: LieType,
    pub rank: usize,
    /// Nontrivial words, in column-block order.
    pub words: Vec<Vec<i32>>,
    /// Per word, the parameters of `κ` in index-set order.
    pub alphas: Vec<Vec<i64>>,
    /// Per word, one scalar per inversion root.
    pub xs: Vec<Vec<i64>>,
    /// Exact determinant, absent when only a residue was computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub determinant: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub verdict: Verdict,
    /// True unless the verdict is a sampled "zero".
    pub certain: bool,
    pub method: Method,
    pub rounds_run: usize,
    /// Sampling threshold; zero when no sampling was needed.
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Decision {
    fn certain(verdict: Verdict, method: Method) -> Self {
        Decision { verdict, certain: true, method, rounds_run: 0, p: 0, exponent: None, witness: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    pub epsilon: f64,
    /// Overrides the number of rounds derived from `epsilon`.
    pub rounds: Option<usize>,
    pub arithmetic: Arithmetic,
}

impl Default for Options {
    fn default() -> Self {
        Options { epsilon: 1e-9, rounds: None, arithmetic: Arithmetic::Exact }
    }
}

impl Options {
    pub fn with_rounds(rounds: usize) -> Self {
        Options { rounds: Some(rounds), ..Options::default() }
    }
}

/// `⌈log₃(1/ε)⌉`, at least one.
pub fn rounds_for(epsilon: f64) -> Result<usize, DecideError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(DecideError::Epsilon(epsilon));
    }
    let exact = (1.0 / epsilon).ln() / 3f64.ln();
    Ok(((exact - 1e-9).ceil() as usize).max(1))
}

/// Root-system data and inversion sets for a reduced instance, ready for
/// repeated evaluation.
#[derive(Debug, Clone)]
pub struct Prepared {
    data: RootSystemData,
    words: Vec<WeylElement>,
    inversion_sets: Vec<Vec<Root>>,
    p: u64,
}

impl Prepared {
    /// `words` must be nontrivial words of type A, B or D satisfying the
    /// dimension condition.
    pub fn new(lie_type: LieType, rank: usize, words: Vec<WeylElement>) -> Result<Self, DecideError> {
        let data = RootSystemData::build(lie_type, rank)?;
        let inversion_sets =
            words.iter().map(|w| data.inversion_set(w)).collect::<Result<Vec<_>, _>>()?;
        let total: usize = inversion_sets.iter().map(Vec::len).sum();
        if total != data.d() {
            return Err(DecideError::DimensionCondition { total, d: data.d() });
        }
        let p = generic::threshold_p(&data);
        Ok(Prepared { data, words, inversion_sets, p })
    }

    pub fn data(&self) -> &RootSystemData {
        &self.data
    }

    pub fn words(&self) -> &[WeylElement] {
        &self.words
    }

    pub fn inversion_sets(&self) -> &[Vec<Root>] {
        &self.inversion_sets
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The `d x d` matrix whose column `(i, γ)` is
    /// `τ(K_i (x_{γ,i} E_γ) K_i⁻¹)`.
    pub fn assemble(&self, samples: &[UnipotentSample], xs: &[Vec<BigInt>]) -> Result<IntMatrix, DecideError> {
        let k = self.words.len();
        if samples.len() != k {
            return Err(DecideError::Count { what: "samples", expected: k, got: samples.len() });
        }
        if xs.len() != k {
            return Err(DecideError::Count { what: "x blocks", expected: k, got: xs.len() });
        }
        let d = self.data.d();
        let rows = self.data.index_set();
        let mut mat = IntMatrix::zeros(d, d);
        let mut col = 0;
        for ((roots, sample), xblock) in self.inversion_sets.iter().zip(samples).zip(xs) {
            if xblock.len() != roots.len() {
                return Err(DecideError::Count {
                    what: "x values",
                    expected: roots.len(),
                    got: xblock.len(),
                });
            }
            for (gamma, x) in roots.iter().zip(xblock) {
                let entries = self.data.basis_entries(gamma)?;
                for (row, &(a, b)) in rows.iter().enumerate() {
                    let mut acc = BigInt::zero();
                    for &(r, c, s) in &entries {
                        let left = sample.k.get(a, r);
                        let right = sample.k_inv.get(c, b);
                        if left.is_zero() || right.is_zero() {
                            continue;
                        }
                        let term = left * right;
                        if s > 0 {
                            acc += term;
                        } else {
                            acc -= term;
                        }
                    }
                    if !acc.is_zero() {
                        mat.set(row, col, acc * x);
                    }
                }
                col += 1;
            }
        }
        Ok(mat)
    }

    /// Builds the matrix at explicit parameters.
    pub fn assemble_at(&self, alphas: &[Vec<BigInt>], xs: &[Vec<BigInt>]) -> Result<IntMatrix, DecideError> {
        if alphas.len() != self.words.len() {
            return Err(DecideError::Count {
                what: "alpha blocks",
                expected: self.words.len(),
                got: alphas.len(),
            });
        }
        let samples = alphas
            .iter()
            .map(|a| generic::from_alphas(&self.data, a))
            .collect::<Result<Vec<_>, _>>()?;
        self.assemble(&samples, xs)
    }

    /// One random evaluation. Returns the witness when the determinant is
    /// nonzero.
    pub fn single_round(&self, rng: &mut ChaCha20Rng, arithmetic: Arithmetic) -> Result<Option<Witness>, DecideError> {
        use rand::Rng;
        let mut alphas = Vec::with_capacity(self.words.len());
        let mut samples = Vec::with_capacity(self.words.len());
        for _ in &self.words {
            let a = generic::sample_alphas(&self.data, rng, self.p)?;
            samples.push(generic::from_alphas(&self.data, &a)?);
            alphas.push(a);
        }
        let xs: Vec<Vec<BigInt>> = self
            .inversion_sets
            .iter()
            .map(|roots| roots.iter().map(|_| BigInt::from(rng.gen_range(1..=self.p))).collect())
            .collect();
        let mat = self.assemble(&samples, &xs)?;
        let (determinant, modulus, residue) = match arithmetic {
            Arithmetic::Exact => {
                let det = mat.det_exact()?;
                if det.is_zero() {
                    return Ok(None);
                }
                (Some(det.to_string()), None, None)
            }
            Arithmetic::Modular => {
                let q = random_prime_62(rng);
                let r = mat.det_mod(q)?;
                if r == 0 {
                    return Ok(None);
                }
                (None, Some(q), Some(r))
            }
        };
        Ok(Some(Witness {
            lie_type: self.data.lie_type(),
            rank: self.data.rank(),
            words: self.words.iter().map(|w| w.word().to_vec()).collect(),
            alphas: alphas.iter().map(|a| to_i64s(a)).collect(),
            xs: xs.iter().map(|x| to_i64s(x)).collect(),
            determinant,
            modulus,
            residue,
        }))
    }
}

fn to_i64s(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|a| a.to_i64().expect("sampled values are below p")).collect()
}

fn to_bigs(v: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    v.iter().map(|b| b.iter().map(|&a| BigInt::from(a)).collect()).collect()
}

/// The random stream for one round.
pub fn round_rng(seed: u64, round: usize) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(round as u64);
    rng
}

/// Decides whether `c(u_1, .., u_k)` vanishes.
///
/// "positive" answers are always certain. A "zero" answer from sampling is
/// wrong with probability at most `3^-s` for `s` rounds.
pub fn vanishing(inst: &Instance, opts: &Options, seed: u64) -> Result<Decision, DecideError> {
    let rounds = match opts.rounds {
        Some(r) => r,
        None => rounds_for(opts.epsilon)?,
    };
    let (inst, exponent) = if inst.lie_type == LieType::C {
        let (b, a) = reduce_type_c(inst)?;
        (b, Some(a))
    } else {
        (inst.clone(), None)
    };
    let mut decision = decide_reduced(&inst, rounds, opts.arithmetic, seed)?;
    decision.exponent = exponent;
    Ok(decision)
}

fn decide_reduced(inst: &Instance, rounds: usize, arithmetic: Arithmetic, seed: u64) -> Result<Decision, DecideError> {
    if !dimension_check(inst) {
        return Ok(Decision::certain(Verdict::Zero, Method::Dimension));
    }
    let core: Vec<WeylElement> = inst.words.iter().filter(|w| !w.is_identity()).cloned().collect();
    let w0 = long_word(inst.lie_type, inst.rank);
    let verdict = match core.as_slice() {
        // the dimension condition forces d = 0 here
        [] => Some(Verdict::Positive),
        [u] => Some(if *u == w0 { Verdict::Positive } else { Verdict::Zero }),
        [u, v] => Some(if *v == w0.compose(u)? { Verdict::Positive } else { Verdict::Zero }),
        _ => None,
    };
    if let Some(v) = verdict {
        return Ok(Decision::certain(v, Method::Duality));
    }
    let prepared = Prepared::new(inst.lie_type, inst.rank, core)?;
    let mut decision = Decision {
        verdict: Verdict::Zero,
        certain: false,
        method: Method::Sampling,
        rounds_run: 0,
        p: prepared.p,
        exponent: None,
        witness: None,
    };
    for round in 0..rounds {
        decision.rounds_run = round + 1;
        let mut rng = round_rng(seed, round);
        if let Some(w) = prepared.single_round(&mut rng, arithmetic)? {
            decision.verdict = Verdict::Positive;
            decision.certain = true;
            decision.witness = Some(w);
            break;
        }
    }
    Ok(decision)
}

/// Result of re-evaluating a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replay {
    pub determinant: BigInt,
    /// Whether the recomputed value is nonzero and agrees with the record.
    pub matches: bool,
}

pub fn replay(w: &Witness) -> Result<Replay, DecideError> {
    let words = w
        .words
        .iter()
        .map(|word| WeylElement::new(w.lie_type, word.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let lie_type = if w.lie_type == LieType::C { LieType::B } else { w.lie_type };
    let words = words.iter().map(|x| x.relabel(lie_type)).collect::<Result<Vec<_>, _>>()?;
    if words.iter().any(|x| x.rank() != w.rank) {
        return Err(DecideError::Witness("word length differs from rank".into()));
    }
    let prepared = Prepared::new(lie_type, w.rank, words)?;
    let mat = prepared.assemble_at(&to_bigs(&w.alphas), &to_bigs(&w.xs))?;
    let det = mat.det_exact()?;
    let mut matches = !det.is_zero();
    if let Some(recorded) = &w.determinant {
        let recorded: BigInt =
            recorded.parse().map_err(|_| DecideError::Witness(format!("bad determinant `{recorded}`")))?;
        matches &= recorded == det;
    }
    match (w.modulus, w.residue) {
        (Some(q), Some(r)) => {
            let got = det.mod_floor(&BigInt::from(q));
            matches &= got == BigInt::from(r);
        }
        (None, None) => {}
        _ => return Err(DecideError::Witness("modulus and residue must appear together".into())),
    }
    if w.determinant.is_none() && w.modulus.is_none() {
        return Err(DecideError::Witness("no determinant recorded".into()));
    }
    Ok(Replay { determinant: det, matches })
}

/// Checks that a partition is valid for the type and returns its parts.
fn validate_partition(parts: &[usize], lie_type: LieType) -> Result<(), DecideError> {
    let err = |msg: &str| DecideError::Partition(parts.to_vec(), msg.to_string());
    if parts.contains(&0) {
        return Err(err("parts must be positive"));
    }
    let strict = lie_type != LieType::A;
    for pair in parts.windows(2) {
        if pair[0] < pair[1] || (strict && pair[0] == pair[1]) {
            return Err(err(if strict { "parts must strictly decrease" } else { "parts must weakly decrease" }));
        }
    }
    Ok(())
}

/// Grassmannian permutation of a partition.
///
/// Type A takes `(k, n)` and requires `λ` inside the `k x (n-k)` box. The
/// other types take the rank `n` and require strict parts bounded by `n`
/// (by `n - 1` in type D).
pub fn grassmannian_element(
    parts: &[usize],
    lie_type: LieType,
    k: usize,
    n: usize,
) -> Result<WeylElement, DecideError> {
    validate_partition(parts, lie_type)?;
    let err = |msg: String| DecideError::Partition(parts.to_vec(), msg);
    let word: Vec<i32> = match lie_type {
        LieType::A => {
            if k == 0 || k >= n {
                return Err(err(format!("need 0 < k < n, got k={k}, n={n}")));
            }
            if parts.len() > k || parts.first().is_some_and(|&p| p > n - k) {
                return Err(err(format!("does not fit in a {k}x{} box", n - k)));
            }
            let part = |i: usize| parts.get(i).copied().unwrap_or(0);
            let head: Vec<i32> = (1..=k).map(|i| (part(k - i) + i) as i32).collect();
            let tail = (1..=n as i32).filter(|v| !head.contains(v));
            head.iter().copied().chain(tail).collect()
        }
        LieType::B | LieType::C => {
            if parts.first().is_some_and(|&p| p > n) {
                return Err(err(format!("parts must be at most {n}")));
            }
            let head: Vec<i32> = parts.iter().map(|&p| -(p as i32)).collect();
            let tail = (1..=n as i32).filter(|v| !parts.contains(&(*v as usize)));
            head.iter().copied().chain(tail).collect()
        }
        LieType::D => {
            if parts.first().is_some_and(|&p| p + 1 > n) {
                return Err(err(format!("parts must be at most {}", n.saturating_sub(1))));
            }
            // shifted by one; an odd number of bars is evened out with 1
            let mut barred: Vec<i32> = parts.iter().map(|&p| p as i32 + 1).collect();
            if parts.len() % 2 == 1 {
                barred.push(1);
            }
            let tail = (1..=n as i32).filter(|v| !barred.contains(v));
            barred.iter().map(|v| -v).chain(tail).collect()
        }
    };
    Ok(WeylElement::new(lie_type, word)?)
}

/// A Littlewood–Richardson style query `c_{λμ}^ν`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTriple {
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
    pub nu: Vec<usize>,
}

impl PartitionTriple {
    pub fn new(lambda: Vec<usize>, mu: Vec<usize>, nu: Vec<usize>) -> Self {
        PartitionTriple { lambda, mu, nu }
    }

    fn all(&self) -> [&Vec<usize>; 3] {
        [&self.lambda, &self.mu, &self.nu]
    }

    /// Smallest ambient parameters `(k, n)` holding all three partitions.
    pub fn ambient(&self, lie_type: LieType) -> (usize, usize) {
        let max_part = self.all().iter().filter_map(|p| p.first().copied()).max().unwrap_or(0);
        match lie_type {
            LieType::A => {
                let k = self.all().iter().map(|p| p.len()).max().unwrap_or(0).max(1);
                (k, k + max_part.max(1))
            }
            LieType::B | LieType::C => (0, max_part.max(1)),
            LieType::D => (0, max_part + 1),
        }
    }

    /// The instance `(w_λ, w_μ, w∘ w_ν)`.
    pub fn to_instance(&self, lie_type: LieType) -> Result<Instance, DecideError> {
        let (k, n) = self.ambient(lie_type);
        let u = grassmannian_element(&self.lambda, lie_type, k, n)?;
        let v = grassmannian_element(&self.mu, lie_type, k, n)?;
        let w = grassmannian_element(&self.nu, lie_type, k, n)?;
        let twisted = long_word(lie_type, n).compose(&w)?;
        Instance::new(lie_type, n, vec![u, v, twisted])
    }
}

/// Decides whether the Grassmannian coefficient `c_{λμ}^ν` vanishes.
pub fn lr_vanishing(
    triple: &PartitionTriple,
    lie_type: LieType,
    opts: &Options,
    seed: u64,
) -> Result<Decision, DecideError> {
    vanishing(&triple.to_instance(lie_type)?, opts, seed)
}
