//! Type A Schubert polynomials by divided differences, and structure
//! constants by leading-monomial elimination.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{revlex_cmp, Monomial, Poly};
use super::OracleError;
use crate::weyl::{LieType, WeylElement};

/// Lehmer code `c_i = #{j > i : w(j) < w(i)}`, trailing zeros trimmed.
pub fn code(perm: &[u32]) -> Monomial {
    let mut c: Vec<u32> = (0..perm.len())
        .map(|i| perm[i + 1..].iter().filter(|&&v| v < perm[i]).count() as u32)
        .collect();
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

/// The permutation in the smallest `S_N` whose code is `c`.
pub fn perm_from_code(c: &[u32]) -> Vec<u32> {
    let n = (0..c.len()).map(|i| i + 1 + c[i] as usize).max().unwrap_or(1).max(c.len());
    let mut unused: Vec<u32> = (1..=n as u32).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let ci = c.get(i).copied().unwrap_or(0) as usize;
        out.push(unused.remove(ci));
    }
    out
}

fn cache() -> &'static Mutex<HashMap<Monomial, Poly>> {
    static CACHE: OnceLock<Mutex<HashMap<Monomial, Poly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Schubert polynomial of a permutation of `1..=n`.
///
/// Walks up by right multiplication with ascents until reaching the long
/// permutation (or a cached polynomial), then applies divided differences
/// on the way back down.
pub fn schubert_of_perm(perm: &[u32]) -> Poly {
    let n = perm.len();
    let mut chain: Vec<(Monomial, usize)> = Vec::new();
    let mut cur = perm.to_vec();
    let mut top = loop {
        let c = code(&cur);
        if let Some(p) = cache().lock().expect("cache lock").get(&c) {
            break p.clone();
        }
        match (0..n.saturating_sub(1)).find(|&i| cur[i] < cur[i + 1]) {
            Some(i) => {
                chain.push((c, i));
                cur.swap(i, i + 1);
            }
            None => {
                // long element: x1^(n-1) x2^(n-2) ...
                let delta: Monomial = (0..n).map(|i| (n - 1 - i) as u32).collect();
                let p = Poly::monomial(delta, 1);
                cache().lock().expect("cache lock").insert(c, p.clone());
                break p;
            }
        }
    };
    while let Some((c, i)) = chain.pop() {
        top = top.divided_difference(i);
        cache().lock().expect("cache lock").insert(c, top.clone());
    }
    top
}

pub fn schubert_of_code(c: &[u32]) -> Poly {
    schubert_of_perm(&perm_from_code(c))
}

pub fn schubert_poly(w: &WeylElement) -> Result<Poly, OracleError> {
    if w.lie_type() != LieType::A {
        return Err(OracleError::NotTypeA(w.lie_type()));
    }
    let perm: Vec<u32> = w.word().iter().map(|&v| v as u32).collect();
    Ok(schubert_of_perm(&perm))
}

/// Expands a polynomial in the Schubert basis. Keys are Lehmer codes.
///
/// Each Schubert polynomial has leading monomial `x^code` with coefficient
/// one under the reverse-lexicographic order, so repeatedly cancelling the
/// leading term terminates.
pub fn schubert_expand(p: &Poly) -> BTreeMap<Monomial, BigInt> {
    let mut rest = p.clone();
    let mut out = BTreeMap::new();
    while let Some((m, c)) = rest.leading_by(revlex_cmp) {
        let (m, c) = (m.clone(), c.clone());
        let s = schubert_of_code(&m);
        rest -= &s.scale(&c);
        out.insert(m, c);
    }
    out
}

/// `c_{u,v}^w`, the coefficient of `𝔖_w` in `𝔖_u 𝔖_v`.
pub fn schubert_coeff_a(u: &WeylElement, v: &WeylElement, w: &WeylElement) -> Result<BigInt, OracleError> {
    if u.length() + v.length() != w.length() {
        return Ok(BigInt::zero());
    }
    let product = &schubert_poly(u)? * &schubert_poly(v)?;
    let perm: Vec<u32> = w.word().iter().map(|&x| x as u32).collect();
    Ok(schubert_expand(&product).remove(&code(&perm)).unwrap_or_default())
}
