//! Root systems of the classical groups realized inside `m x m` matrices.
//!
//! For SL_n the matrix position `(i, j)` with `i < j` carries the root
//! `e_i - e_j`, and a root is positive when its first nonzero coefficient is
//! `+1`.
//!
//! For SO_m (form given by the antidiagonal matrix) row `r` carries the
//! weight `e_{n+1-r}` for `r <= n`, the middle row of SO_{2n+1} carries `0`,
//! and the remaining rows carry the negated weights. Position `(i, j)` then
//! carries `wt(i) - wt(j)`. With this labelling the upper-triangular Borel
//! corresponds to the positive system whose positive roots have last
//! nonzero coefficient `+1`: `e_j - e_i` (`i < j`), `e_i + e_j`, and `e_i`
//! in type B. Its simple roots are `e_1` (or `e_1 + e_2` in type D) and
//! `e_{i+1} - e_i`, matching the signed-permutation length in `weyl`.
//!
//! Positions are 0-based throughout this module.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::IntMatrix;
use crate::weyl::{LieType, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("type C has no root-system data of its own; relabel as type B first")]
    TypeC,
    #[error("rank {0} is too small (need at least 2)")]
    RankTooSmall(usize),
    #[error("{0} is not a positive root of this system")]
    NotPositive(Root),
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    SizeMismatch { expected: usize, rows: usize, cols: usize },
    #[error("element of rank {got} used with a root system of rank {expected}")]
    RankMismatch { expected: usize, got: usize },
}

/// An integer combination of the coordinate vectors `e_1, .., e_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    coeffs: Vec<i32>,
}

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        Root { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Root { coeffs: vec![0; n] }
    }

    /// The coordinate vector `e_i` (1-based `i`).
    pub fn e(n: usize, i: usize) -> Self {
        let mut r = Root::zero(n);
        r.coeffs[i - 1] = 1;
        r
    }

    /// `sa * e_a + sb * e_b` (1-based indices).
    pub fn pair(n: usize, a: usize, sa: i32, b: usize, sb: i32) -> Self {
        let mut r = Root::zero(n);
        r.coeffs[a - 1] += sa;
        r.coeffs[b - 1] += sb;
        r
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Root {
        Root { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    fn sub(&self, other: &Root) -> Root {
        Root { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}e{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}e{}", i + 1)?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Whether `root` lies in the positive system of the given type.
///
/// Type C is treated as type B.
pub fn is_positive(lie_type: LieType, root: &Root) -> bool {
    let nz = root.coeffs.iter().copied().filter(|&c| c != 0);
    let lead = match lie_type {
        LieType::A => nz.clone().next(),
        _ => nz.clone().next_back(),
    };
    lead.is_some_and(|c| c > 0)
}

/// All positive roots of the type and rank, in no particular order.
fn positive_roots_unordered(lie_type: LieType, n: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            match lie_type {
                LieType::A => out.push(Root::pair(n, i, 1, j, -1)),
                _ => {
                    out.push(Root::pair(n, j, 1, i, -1));
                    out.push(Root::pair(n, i, 1, j, 1));
                }
            }
        }
        if matches!(lie_type, LieType::B | LieType::C) {
            out.push(Root::e(n, i));
        }
    }
    out
}

/// `d = |Φ₊|`.
pub fn positive_root_count(lie_type: LieType, rank: usize) -> usize {
    match lie_type {
        LieType::A => rank * rank.saturating_sub(1) / 2,
        LieType::B | LieType::C => rank * rank,
        LieType::D => rank * rank.saturating_sub(1),
    }
}

/// The signed-permutation action `e_i -> sgn(w(i)) e_|w(i)|`.
pub fn act(w: &WeylElement, beta: &Root) -> Result<Root, RootError> {
    let n = w.rank();
    if beta.rank() != n {
        return Err(RootError::RankMismatch { expected: beta.rank(), got: n });
    }
    let mut out = Root::zero(n);
    for (i, &c) in beta.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let image = w.apply(i as i32 + 1);
        let target = image.unsigned_abs() as usize - 1;
        out.coeffs[target] += if image < 0 { -c } else { c };
    }
    Ok(out)
}

fn is_inversion(w: &WeylElement, beta: &Root) -> bool {
    let image = act(w, beta).expect("ranks agree by construction");
    !is_positive(w.lie_type(), &image)
}

/// `ℓ(w)`, the number of positive roots sent to negative roots by `w`.
///
/// Works for every type and rank, including type C and rank 1.
pub fn inversion_count(w: &WeylElement) -> usize {
    positive_roots_unordered(w.lie_type(), w.rank())
        .iter()
        .filter(|beta| is_inversion(w, beta))
        .count()
}

/// Positive roots, matrix positions and the bijection between them.
#[derive(Debug, Clone)]
pub struct RootSystemData {
    lie_type: LieType,
    rank: usize,
    m: usize,
    positive_roots: Vec<Root>,
    index_set: Vec<(usize, usize)>,
    root_index: HashMap<Root, usize>,
    // position (i, j) -> index into index_set, for i + j < m - 1 and i < j
    position_index: Vec<Option<usize>>,
}

impl RootSystemData {
    pub fn build(lie_type: LieType, rank: usize) -> Result<Self, RootError> {
        if lie_type == LieType::C {
            return Err(RootError::TypeC);
        }
        if rank < 2 {
            return Err(RootError::RankTooSmall(rank));
        }
        let m = matrix_size(lie_type, rank);
        let index_set: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .filter(|&(i, j)| lie_type == LieType::A || i + j < m - 1)
            .collect();
        let positive_roots: Vec<Root> = index_set
            .iter()
            .map(|&(i, j)| {
                let w = |r| weight(lie_type, rank, r);
                w(i).sub(&w(j))
            })
            .collect();
        let root_index = positive_roots.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
        let mut position_index = vec![None; m * m];
        for (k, &(i, j)) in index_set.iter().enumerate() {
            position_index[i * m + j] = Some(k);
        }
        Ok(RootSystemData { lie_type, rank, m, positive_roots, index_set, root_index, position_index })
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Matrix size `m(G)`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn is_orthogonal(&self) -> bool {
        self.lie_type != LieType::A
    }

    /// Positive roots in the order induced by `index_set`.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// Determining positions, row-major lexicographic.
    pub fn index_set(&self) -> &[(usize, usize)] {
        &self.index_set
    }

    /// The root carried by an index-set position.
    pub fn phi(&self, pos: (usize, usize)) -> Option<&Root> {
        self.index_of_position(pos).map(|k| &self.positive_roots[k])
    }

    pub fn phi_inverse(&self, root: &Root) -> Option<(usize, usize)> {
        self.root_index.get(root).map(|&k| self.index_set[k])
    }

    /// Index of `root` within `positive_roots`.
    pub fn root_position(&self, root: &Root) -> Option<usize> {
        self.root_index.get(root).copied()
    }

    pub fn index_of_position(&self, (i, j): (usize, usize)) -> Option<usize> {
        if i >= self.m || j >= self.m {
            return None;
        }
        self.position_index[i * self.m + j]
    }

    /// Nonzero entries of `E_γ` as `(row, col, value)`.
    pub fn basis_entries(&self, gamma: &Root) -> Result<Vec<(usize, usize, i32)>, RootError> {
        let (i, j) = self.phi_inverse(gamma).ok_or_else(|| RootError::NotPositive(gamma.clone()))?;
        let mut out = vec![(i, j, 1)];
        if self.is_orthogonal() {
            out.push((self.m - 1 - j, self.m - 1 - i, -1));
        }
        Ok(out)
    }

    pub fn basis_matrix(&self, gamma: &Root) -> Result<IntMatrix, RootError> {
        let mut e = IntMatrix::zeros(self.m, self.m);
        for (r, c, v) in self.basis_entries(gamma)? {
            e.set(r, c, BigInt::from(v));
        }
        Ok(e)
    }

    /// `Φ₊(w)` in `positive_roots` order.
    pub fn inversion_set(&self, w: &WeylElement) -> Result<Vec<Root>, RootError> {
        if w.rank() != self.rank {
            return Err(RootError::RankMismatch { expected: self.rank, got: w.rank() });
        }
        Ok(self.positive_roots.iter().filter(|b| is_inversion(w, b)).cloned().collect())
    }

    /// Reads `mat` at the index-set positions.
    pub fn tau(&self, mat: &IntMatrix) -> Result<Vec<BigInt>, RootError> {
        if mat.rows() != self.m || mat.cols() != self.m {
            return Err(RootError::SizeMismatch {
                expected: self.m,
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        Ok(self.index_set.iter().map(|&(i, j)| mat.get(i, j).clone()).collect())
    }
}

pub fn matrix_size(lie_type: LieType, rank: usize) -> usize {
    match lie_type {
        LieType::A => rank,
        LieType::B | LieType::C => 2 * rank + 1,
        LieType::D => 2 * rank,
    }
}

// Torus weight of row `r` (0-based).
fn weight(lie_type: LieType, n: usize, r: usize) -> Root {
    match lie_type {
        LieType::A => Root::e(n, r + 1),
        LieType::B | LieType::C => {
            if r < n {
                Root::e(n, n - r)
            } else if r == n {
                Root::zero(n)
            } else {
                Root::e(n, r - n).neg()
            }
        }
        LieType::D => {
            if r < n {
                Root::e(n, n - r)
            } else {
                Root::e(n, r - n + 1).neg()
            }
        }
    }
}
