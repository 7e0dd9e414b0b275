//! Weyl groups of the classical types as (signed) permutations.
//!
//! Elements are stored in one-line notation: `word[i]` is the image of
//! `i + 1`, and a negative entry is a barred value. The action extends to
//! negative arguments by `w(-i) = -w(i)`. Types B and C share the
//! hyperoctahedral group; type D keeps only elements with an even number of
//! barred entries.
//!
//! Lengths follow the signed-permutation conventions in which the special
//! generator acts on position 1 (so `[-1, 2, .., n]` is a simple reflection
//! in type B), which makes `inv(w) + sum |w(i)|` over barred entries the
//! type B length.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootsys;

/// One of the four classical families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
}

impl LieType {
    pub fn is_signed(self) -> bool {
        !matches!(self, LieType::A)
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LieType::A => "A",
            LieType::B => "B",
            LieType::C => "C",
            LieType::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for LieType {
    type Err = WeylError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(LieType::A),
            "B" | "b" => Ok(LieType::B),
            "C" | "c" => Ok(LieType::C),
            "D" | "d" => Ok(LieType::D),
            other => Err(WeylError::UnknownType(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("unknown Lie type `{0}` (expected A, B, C or D)")]
    UnknownType(String),
    #[error("cannot parse `{0}` as a nonzero integer")]
    BadEntry(String),
    #[error("word has {got} entries but rank is {rank}")]
    WrongLength { rank: usize, got: usize },
    #[error("rank must be positive")]
    ZeroRank,
    #[error("absolute values of {0:?} are not a permutation of 1..=n")]
    NotPermutation(Vec<i32>),
    #[error("type A words must have positive entries: {0:?}")]
    NegativeInTypeA(Vec<i32>),
    #[error("type D words need an even number of barred entries: {0:?}")]
    OddSignsInTypeD(Vec<i32>),
    #[error("type or rank mismatch: {0}{1} vs {2}{3}")]
    Mismatch(LieType, usize, LieType, usize),
    #[error("sign changes are not defined in type A")]
    ZetaTypeA,
}

/// A Weyl group element of a classical type in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    lie_type: LieType,
    word: Vec<i32>,
}

impl WeylElement {
    /// Validates `word` as an element of the Weyl group of `lie_type`.
    pub fn new(lie_type: LieType, word: Vec<i32>) -> Result<Self, WeylError> {
        let n = word.len();
        if n == 0 {
            return Err(WeylError::ZeroRank);
        }
        let mut seen = vec![false; n];
        for &v in &word {
            let a = v.unsigned_abs() as usize;
            if v == 0 || a > n || seen[a - 1] {
                return Err(WeylError::NotPermutation(word));
            }
            seen[a - 1] = true;
        }
        let negatives = word.iter().filter(|&&v| v < 0).count();
        match lie_type {
            LieType::A if negatives > 0 => Err(WeylError::NegativeInTypeA(word)),
            LieType::D if negatives % 2 == 1 => Err(WeylError::OddSignsInTypeD(word)),
            _ => Ok(WeylElement { lie_type, word }),
        }
    }

    pub fn identity(lie_type: LieType, rank: usize) -> Self {
        WeylElement { lie_type, word: (1..=rank as i32).collect() }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v == i as i32 + 1)
    }

    /// Image of `i` (1-based, either sign) under the signed action.
    pub fn apply(&self, i: i32) -> i32 {
        let v = self.word[i.unsigned_abs() as usize - 1];
        if i < 0 {
            -v
        } else {
            v
        }
    }

    /// The same word viewed in another type of the same rank.
    pub fn relabel(&self, lie_type: LieType) -> Result<Self, WeylError> {
        WeylElement::new(lie_type, self.word.clone())
    }

    fn check_compatible(&self, other: &WeylElement) -> Result<(), WeylError> {
        if self.lie_type != other.lie_type || self.rank() != other.rank() {
            return Err(WeylError::Mismatch(
                self.lie_type,
                self.rank(),
                other.lie_type,
                other.rank(),
            ));
        }
        Ok(())
    }

    /// `self ∘ other`, i.e. `other` is applied first.
    pub fn compose(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        self.check_compatible(other)?;
        let word = other.word.iter().map(|&v| self.apply(v)).collect();
        Ok(WeylElement { lie_type: self.lie_type, word })
    }

    pub fn inverse(&self) -> WeylElement {
        let mut word = vec![0; self.rank()];
        for (i, &v) in self.word.iter().enumerate() {
            let pos = i as i32 + 1;
            word[v.unsigned_abs() as usize - 1] = if v < 0 { -pos } else { pos };
        }
        WeylElement { lie_type: self.lie_type, word }
    }

    /// Number of barred entries.
    pub fn zeta(&self) -> Result<usize, WeylError> {
        if self.lie_type == LieType::A {
            return Err(WeylError::ZetaTypeA);
        }
        Ok(self.word.iter().filter(|&&v| v < 0).count())
    }

    /// Coxeter length, computed as the size of the inversion-root set.
    pub fn length(&self) -> usize {
        rootsys::inversion_count(self)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Parses a comma-separated one-line word, e.g. `"-2,1,3"`.
pub fn parse_word(text: &str, lie_type: LieType, rank: usize) -> Result<WeylElement, WeylError> {
    let word = text
        .split(',')
        .map(|s| {
            let t = s.trim();
            t.parse::<i32>().map_err(|_| WeylError::BadEntry(t.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if word.len() != rank {
        return Err(WeylError::WrongLength { rank, got: word.len() });
    }
    WeylElement::new(lie_type, word)
}

/// The longest element of the Weyl group.
///
/// For type D of odd rank the element is found by exhaustive search when
/// the rank is small and by the closed form (negate every entry except the
/// first) otherwise.
pub fn long_word(lie_type: LieType, rank: usize) -> WeylElement {
    let n = rank as i32;
    let word: Vec<i32> = match lie_type {
        LieType::A => (1..=n).rev().collect(),
        LieType::B | LieType::C => (1..=n).map(|i| -i).collect(),
        LieType::D if rank % 2 == 0 => (1..=n).map(|i| -i).collect(),
        LieType::D if rank <= 4 => {
            let d = rootsys::positive_root_count(LieType::D, rank);
            return all_elements(LieType::D, rank)
                .into_iter()
                .find(|w| w.length() == d)
                .expect("type D has a longest element");
        }
        LieType::D => std::iter::once(1).chain((2..=n).map(|i| -i)).collect(),
    };
    WeylElement { lie_type, word }
}

/// Every element of the Weyl group, in lexicographic order of words.
///
/// Intended for small ranks only (the group has `2^n n!` elements in B/C).
pub fn all_elements(lie_type: LieType, rank: usize) -> Vec<WeylElement> {
    let mut perms = Vec::new();
    let mut cur: Vec<i32> = (1..=rank as i32).collect();
    permutations(&mut cur, 0, &mut perms);
    perms.sort();
    let mut out = Vec::new();
    for p in perms {
        if lie_type == LieType::A {
            out.push(WeylElement { lie_type, word: p });
            continue;
        }
        for mask in 0u32..(1 << rank) {
            if lie_type == LieType::D && mask.count_ones() % 2 == 1 {
                continue;
            }
            let word = p
                .iter()
                .enumerate()
                .map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v })
                .collect();
            out.push(WeylElement { lie_type, word });
        }
    }
    out.sort();
    out
}

fn permutations(cur: &mut Vec<i32>, k: usize, out: &mut Vec<Vec<i32>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permutations(cur, k + 1, out);
        cur.swap(k, i);
    }
}
