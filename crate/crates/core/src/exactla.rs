//! Dense exact linear algebra over arbitrary-precision integers, plus a
//! determinant over word-size prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix is not upper unitriangular")]
    NotUnitUpper,
}

/// Row-major dense matrix of big integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// The reversal matrix with ones on the antidiagonal.
    pub fn antidiagonal(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + (n - 1 - i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| rows[i][j].into())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mat_mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(
        &self,
        other: &IntMatrix,
        f: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<IntMatrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                self.get(r, r).is_one() && (0..r).all(|c| self.get(r, c).is_zero())
            })
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|v| v.abs()).max().unwrap_or_default()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det_exact(&self) -> Result<BigInt, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            let (top, bottom) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            let pivot = &pivot_row[k];
            for row in bottom.iter_mut() {
                let lead = row[k].clone();
                for j in k + 1..n {
                    let v = &row[j] * pivot - &lead * &pivot_row[j];
                    row[j] = if prev.is_one() { v } else { v / &prev };
                }
                row[k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// Determinant reduced into `[0, q)` by elimination over the prime field.
    pub fn det_mod(&self, q: u64) -> Result<u64, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        if !is_prime(q) {
            return Err(LinalgError::NotPrime(q));
        }
        let n = self.rows;
        let qb = BigInt::from(q);
        let mut a: Vec<Vec<u64>> = (0..n)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|v| v.mod_floor(&qb).to_u64().expect("residue fits in u64"))
                    .collect()
            })
            .collect();
        let mut det = 1u64;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| a[i][k] != 0) else {
                return Ok(0);
            };
            if p != k {
                a.swap(p, k);
                det = q - det;
                if det == q {
                    det = 0;
                }
            }
            det = mul_mod(det, a[k][k], q);
            let inv = pow_mod(a[k][k], q - 2, q);
            for i in k + 1..n {
                if a[i][k] == 0 {
                    continue;
                }
                let f = mul_mod(a[i][k], inv, q);
                for j in k..n {
                    let t = mul_mod(f, a[k][j], q);
                    a[i][j] = if a[i][j] >= t { a[i][j] - t } else { a[i][j] + q - t };
                }
            }
        }
        Ok(det % q)
    }
}

/// Solves `u * x = b` for upper unitriangular `u` by back-substitution.
///
/// The solution is integral because `u` has determinant one.
pub fn solve_unit_upper(u: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    if !u.is_upper_unitriangular() {
        return Err(LinalgError::NotUnitUpper);
    }
    if u.cols != b.rows {
        return Err(LinalgError::DimensionMismatch(u.rows, u.cols, b.rows, b.cols));
    }
    let n = u.rows;
    let mut x = IntMatrix::zeros(n, b.cols);
    for c in 0..b.cols {
        for r in (0..n).rev() {
            let mut acc = b.get(r, c).clone();
            for s in r + 1..n {
                let coef = u.get(r, s);
                if !coef.is_zero() {
                    acc -= coef * x.get(s, c);
                }
            }
            x.set(r, c, acc);
        }
    }
    Ok(x)
}

pub fn unit_upper_inverse(u: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    solve_unit_upper(u, &IntMatrix::identity(u.rows))
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(q: u64) -> bool {
    primal_check::miller_rabin(q)
}

/// A uniformly random 62-bit prime.
pub fn random_prime_62<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let candidate = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}
