//! Schur and Schur-Q polynomials in finitely many variables, and their
//! structure constants by leading-monomial elimination.
//!
//! In `N` variables, `s_ν` (resp. `Q_ν`) vanishes when `ℓ(ν) > N` and the
//! remaining ones are linearly independent. Products `s_λ s_μ` only involve
//! `ν` with `ℓ(ν) ≤ ℓ(λ) + ℓ(μ)`, so `N = ℓ(λ) + ℓ(μ)` variables suffice to
//! read off every coefficient exactly.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::{lex_cmp, pfaffian, poly_det, Monomial, Poly};

/// Sum of all monomials of degree `k` in `n` variables.
pub fn complete(k: usize, n: usize) -> Poly {
    let mut out = Poly::zero();
    let mut exps = vec![0u32; n];
    fill_complete(&mut exps, 0, k as u32, &mut out);
    out
}

fn fill_complete(exps: &mut Vec<u32>, i: usize, left: u32, out: &mut Poly) {
    let n = exps.len();
    if n == 0 {
        if left == 0 {
            out.add_term(Vec::new(), BigInt::one());
        }
        return;
    }
    if i == n - 1 {
        exps[i] = left;
        out.add_term(exps.clone(), BigInt::one());
        exps[i] = 0;
        return;
    }
    for e in 0..=left {
        exps[i] = e;
        fill_complete(exps, i + 1, left - e, out);
    }
    exps[i] = 0;
}

/// Elementary symmetric polynomial `e_k` in `n` variables.
pub fn elementary(k: usize, n: usize) -> Poly {
    let mut out = Poly::zero();
    for mask in 0u64..(1 << n) {
        if mask.count_ones() as usize == k {
            out.add_term((0..n).map(|i| (mask >> i & 1) as u32).collect(), BigInt::one());
        }
    }
    out
}

/// Jacobi–Trudi: `s_λ = det(h_{λ_i - i + j})`.
pub fn schur_poly(lambda: &[usize], n: usize) -> Poly {
    let l = lambda.len();
    let mat: Vec<Vec<Poly>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let k = lambda[i] as i64 - i as i64 + j as i64;
                    if k < 0 {
                        Poly::zero()
                    } else {
                        complete(k as usize, n)
                    }
                })
                .collect()
        })
        .collect();
    poly_det(&mat)
}

/// `q_r = Σ_{a+b=r} e_a h_b`, the one-row Schur-Q polynomial.
pub fn q_one_row(r: usize, n: usize) -> Poly {
    let mut out = Poly::zero();
    for a in 0..=r.min(n) {
        out += &(&elementary(a, n) * &complete(r - a, n));
    }
    out
}

fn q_two_row(r: usize, s: usize, q: &[Poly]) -> Poly {
    let mut out = &q[r] * &q[s];
    let two = BigInt::from(2);
    for i in 1..=s {
        let term = (&q[r + i] * &q[s - i]).scale(&two);
        if i % 2 == 1 {
            out -= &term;
        } else {
            out += &term;
        }
    }
    out
}

/// Schur-Q polynomial of a strict partition, as the Pfaffian of two-row
/// functions.
pub fn q_poly(lambda: &[usize], n: usize) -> Poly {
    let size: usize = lambda.iter().sum();
    let q: Vec<Poly> = (0..=size).map(|r| q_one_row(r, n)).collect();
    let mut parts = lambda.to_vec();
    if parts.len() % 2 == 1 {
        parts.push(0);
    }
    let l = parts.len();
    let mut mat = vec![vec![Poly::zero(); l]; l];
    for i in 0..l {
        for j in i + 1..l {
            mat[i][j] = q_two_row(parts[i], parts[j], &q);
            mat[j][i] = -&mat[i][j];
        }
    }
    pfaffian(&mat)
}

type Key = (Vec<usize>, usize);

fn memo(table: &'static OnceLock<Mutex<HashMap<Key, Poly>>>, key: Key, f: impl FnOnce() -> Poly) -> Poly {
    let map = table.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = map.lock().expect("cache lock").get(&key) {
        return p.clone();
    }
    let p = f();
    map.lock().expect("cache lock").insert(key, p.clone());
    p
}

fn schur_cached(lambda: &[usize], n: usize) -> Poly {
    static T: OnceLock<Mutex<HashMap<Key, Poly>>> = OnceLock::new();
    memo(&T, (lambda.to_vec(), n), || schur_poly(lambda, n))
}

fn q_cached(lambda: &[usize], n: usize) -> Poly {
    static T: OnceLock<Mutex<HashMap<Key, Poly>>> = OnceLock::new();
    memo(&T, (lambda.to_vec(), n), || q_poly(lambda, n))
}

fn as_partition(m: &Monomial) -> Vec<usize> {
    m.iter().map(|&e| e as usize).filter(|&e| e > 0).collect()
}

/// Expands a symmetric polynomial in the basis produced by `basis`, whose
/// element for `ν` must have lex-leading monomial `x^ν` with coefficient
/// `lead(ν)`.
fn expand(
    p: &Poly,
    basis: impl Fn(&[usize]) -> Poly,
    lead: impl Fn(&[usize]) -> BigInt,
) -> HashMap<Vec<usize>, BigInt> {
    let mut rest = p.clone();
    let mut out = HashMap::new();
    while let Some((m, c)) = rest.leading_by(lex_cmp) {
        let nu = as_partition(m);
        let (q, r) = c.div_rem(&lead(&nu));
        assert!(r.is_zero(), "leading coefficient not divisible: not in the span");
        rest -= &basis(&nu).scale(&q);
        out.insert(nu, q);
    }
    out
}

fn size(p: &[usize]) -> usize {
    p.iter().sum()
}

/// Littlewood–Richardson coefficient `c_{λμ}^ν`.
pub fn schur_lr_coeff(lambda: &[usize], mu: &[usize], nu: &[usize]) -> BigInt {
    if size(lambda) + size(mu) != size(nu) {
        return BigInt::zero();
    }
    let n = (lambda.len() + mu.len()).max(1);
    if nu.len() > n {
        return BigInt::zero();
    }
    let prod = &schur_cached(lambda, n) * &schur_cached(mu, n);
    let exp = expand(&prod, |p| schur_cached(p, n), |_| BigInt::one());
    exp.get(nu).cloned().unwrap_or_default()
}

/// Coefficient of `Q_ν` in `Q_λ Q_μ` for strict partitions.
pub fn qschur_coeff(lambda: &[usize], mu: &[usize], nu: &[usize]) -> BigInt {
    if size(lambda) + size(mu) != size(nu) {
        return BigInt::zero();
    }
    let n = (lambda.len() + mu.len()).max(1);
    if nu.len() > n {
        return BigInt::zero();
    }
    let prod = &q_cached(lambda, n) * &q_cached(mu, n);
    let exp = expand(&prod, |p| q_cached(p, n), |p| BigInt::from(2).pow(p.len() as u32));
    exp.get(nu).cloned().unwrap_or_default()
}

/// Coefficient of `P_ν` in `P_λ P_μ`, where `P_λ = 2^{-ℓ(λ)} Q_λ`.
pub fn pschur_coeff(lambda: &[usize], mu: &[usize], nu: &[usize]) -> BigInt {
    let q = qschur_coeff(lambda, mu, nu);
    if q.is_zero() {
        return q;
    }
    let shift = (lambda.len() + mu.len()) as u32 - nu.len() as u32;
    let (g, r) = q.div_rem(&BigInt::from(2).pow(shift));
    assert!(r.is_zero(), "P-coefficients are integers");
    g
}
