//! Sparse multivariate polynomials with big-integer coefficients.
//!
//! Monomials are exponent vectors with trailing zeros trimmed, so the
//! number of variables is implicit and polynomials in different numbers of
//! variables compare and combine freely.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

fn trimmed(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn exp_at(m: &[u32], i: usize) -> u32 {
    m.get(i).copied().unwrap_or(0)
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::monomial(Vec::new(), c)
    }

    /// The variable `x_i` (0-based).
    pub fn var(i: usize) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        Poly::monomial(m, 1)
    }

    pub fn monomial(exps: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Poly::zero();
        p.add_term(exps, c.into());
        p
    }

    pub fn add_term(&mut self, exps: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = trimmed(exps);
        let entry = self.terms.entry(key.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(&trimmed(exps.to_vec())).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// Number of variables that actually occur.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Largest term under `cmp`.
    pub fn leading_by(&self, cmp: impl Fn(&[u32], &[u32]) -> Ordering) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().max_by(|a, b| cmp(a.0, b.0))
    }

    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= point[i].pow(e);
                }
            }
            total += t;
        }
        total
    }

    /// Exchanges `x_i` and `x_{i+1}`.
    pub fn swap_adjacent(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut m = m.clone();
            if m.len() < i + 2 {
                m.resize(i + 2, 0);
            }
            m.swap(i, i + 1);
            out.add_term(m, c.clone());
        }
        out
    }

    /// The divided difference `(f - s_i f) / (x_i - x_{i+1})`.
    pub fn divided_difference(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (a, b) = (exp_at(m, i), exp_at(m, i + 1));
            if a == b {
                continue;
            }
            let (hi, lo, sign) = if a > b { (a, b, c.clone()) } else { (b, a, -c) };
            // x^hi y^lo - x^lo y^hi = (x - y) x^lo y^lo sum_t x^t y^(hi-lo-1-t)
            let mut base = m.clone();
            if base.len() < i + 2 {
                base.resize(i + 2, 0);
            }
            for t in 0..hi - lo {
                base[i] = lo + t;
                base[i + 1] = hi - 1 - t;
                out.add_term(base.clone(), sign.clone());
            }
        }
        out
    }
}

/// Compares the last variable first; a larger exponent wins.
pub fn revlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let n = a.len().max(b.len());
    for i in (0..n).rev() {
        match exp_at(a, i).cmp(&exp_at(b, i)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Compares the first variable first; a larger exponent wins.
pub fn lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let n = a.len().max(b.len());
    for i in 0..n {
        match exp_at(a, i).cmp(&exp_at(b, i)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{c}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let n = ma.len().max(mb.len());
                let m: Monomial = (0..n).map(|i| exp_at(ma, i) + exp_at(mb, i)).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

/// Determinant by Laplace expansion over column prefixes: `dp[S]` sums
/// signed products choosing the rows in `S` for the first `|S|` columns.
pub fn poly_det(mat: &[Vec<Poly>]) -> Poly {
    let n = mat.len();
    assert!(n <= 20, "matrix too large for subset expansion");
    assert!(mat.iter().all(|row| row.len() == n), "matrix must be square");
    if n == 0 {
        return Poly::one();
    }
    let mut dp: Vec<Option<Poly>> = vec![None; 1 << n];
    dp[0] = Some(Poly::one());
    for mask in 0usize..(1 << n) {
        let Some(acc) = dp[mask].take() else { continue };
        if acc.is_zero() {
            continue;
        }
        let col = mask.count_ones() as usize;
        if col == n {
            dp[mask] = Some(acc);
            continue;
        }
        for row in 0..n {
            if mask >> row & 1 == 1 || mat[row][col].is_zero() {
                continue;
            }
            let above = (mask >> (row + 1)).count_ones();
            let mut term = &acc * &mat[row][col];
            if above % 2 == 1 {
                term = -&term;
            }
            let slot = dp[mask | 1 << row].get_or_insert_with(Poly::zero);
            *slot += &term;
        }
    }
    dp[(1 << n) - 1].take().unwrap_or_default()
}

/// Pfaffian of an antisymmetric matrix given by its upper triangle.
pub fn pfaffian(mat: &[Vec<Poly>]) -> Poly {
    let n = mat.len();
    assert!(n % 2 == 0, "pfaffian needs even size");
    let idx: Vec<usize> = (0..n).collect();
    pfaffian_rec(mat, &idx)
}

fn pfaffian_rec(mat: &[Vec<Poly>], idx: &[usize]) -> Poly {
    if idx.is_empty() {
        return Poly::one();
    }
    let first = idx[0];
    let mut total = Poly::zero();
    for j in 1..idx.len() {
        let entry = &mat[first][idx[j]];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&v| v != idx[j]).collect();
        let term = entry * &pfaffian_rec(mat, &rest);
        // pairing (first, idx[j]) contributes (-1)^(j+1) in 0-based position
        if j % 2 == 1 {
            total += &term;
        } else {
            total -= &term;
        }
    }
    total
}
