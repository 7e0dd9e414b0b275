//! The determinant criterion with every parameter kept as a formal
//! variable. Exact at small rank, where the polynomial is small enough to
//! expand.

use num_bigint::BigInt;

use super::poly::{poly_det, Poly};
use super::OracleError;
use crate::decide::{reduce_type_c, Instance};
use crate::rootsys::RootSystemData;
use crate::weyl::{LieType, WeylElement};

/// Largest `d` accepted by [`symbolic_vanishing`].
pub const MAX_SYMBOLIC_D: usize = 9;

/// The matrix `M` over `Z[α, x]`.
///
/// Variable layout: block `b` uses `α` variables `b*d .. (b+1)*d` in
/// index-set order, followed by one `x` variable per column.
#[derive(Debug, Clone)]
pub struct SymbolicMatrix {
    pub d: usize,
    pub blocks: usize,
    pub entries: Vec<Vec<Poly>>,
}

impl SymbolicMatrix {
    pub fn alpha(&self, block: usize, j: usize) -> Poly {
        Poly::var(block * self.d + j)
    }

    pub fn x(&self, col: usize) -> Poly {
        Poly::var(self.blocks * self.d + col)
    }
}

struct Reduced {
    data: RootSystemData,
    words: Vec<WeylElement>,
}

fn reduce(inst: &Instance) -> Result<Option<Reduced>, OracleError> {
    let inst = if inst.lie_type() == LieType::C { reduce_type_c(inst)?.0 } else { inst.clone() };
    let words: Vec<WeylElement> = inst.words().iter().filter(|w| !w.is_identity()).cloned().collect();
    let total: usize = words.iter().map(|w| w.length()).sum();
    if total != inst.d() {
        return Ok(None);
    }
    if inst.d() == 0 {
        return Err(OracleError::Trivial);
    }
    let data = RootSystemData::build(inst.lie_type(), inst.rank()).map_err(crate::decide::DecideError::from)?;
    Ok(Some(Reduced { data, words }))
}

fn identity(m: usize) -> Vec<Vec<Poly>> {
    (0..m).map(|i| (0..m).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect()).collect()
}

// Solves U X = B for unitriangular U over the polynomial ring.
fn back_substitute(u: &[Vec<Poly>], b: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let m = u.len();
    let mut x = vec![vec![Poly::zero(); m]; m];
    for c in 0..m {
        for r in (0..m).rev() {
            let mut acc = b[r][c].clone();
            for s in r + 1..m {
                if !u[r][s].is_zero() && !x[s][c].is_zero() {
                    acc -= &(&u[r][s] * &x[s][c]);
                }
            }
            x[r][c] = acc;
        }
    }
    x
}

fn build(red: &Reduced, with_x: bool) -> SymbolicMatrix {
    let data = &red.data;
    let (m, d, k) = (data.m(), data.d(), red.words.len());
    let mut entries = vec![vec![Poly::zero(); d]; d];
    let mut col = 0;
    for (block, w) in red.words.iter().enumerate() {
        let mut kappa = vec![vec![Poly::zero(); m]; m];
        for (j, &(r, c)) in data.index_set().iter().enumerate() {
            let a = Poly::var(block * d + j);
            if data.is_orthogonal() {
                kappa[m - 1 - c][m - 1 - r] = -&a;
            }
            kappa[r][c] = a;
        }
        let id = identity(m);
        let plus: Vec<Vec<Poly>> =
            (0..m).map(|i| (0..m).map(|j| &id[i][j] + &kappa[i][j]).collect()).collect();
        let (big_k, k_inv) = if data.is_orthogonal() {
            let minus: Vec<Vec<Poly>> =
                (0..m).map(|i| (0..m).map(|j| &id[i][j] - &kappa[i][j]).collect()).collect();
            (back_substitute(&plus, &minus), back_substitute(&minus, &plus))
        } else {
            let inv = back_substitute(&plus, &id);
            (plus, inv)
        };
        let roots = data.inversion_set(w).expect("rank checked by the instance");
        for gamma in &roots {
            let scale = if with_x { Poly::var(k * d + col) } else { Poly::one() };
            let basis = data.basis_entries(gamma).expect("inversion roots are positive");
            for (row, &(a, b)) in data.index_set().iter().enumerate() {
                let mut acc = Poly::zero();
                for &(r, c, s) in &basis {
                    let term = &big_k[a][r] * &k_inv[c][b];
                    if s > 0 {
                        acc += &term;
                    } else {
                        acc -= &term;
                    }
                }
                entries[row][col] = &acc * &scale;
            }
            col += 1;
        }
    }
    SymbolicMatrix { d, blocks: k, entries }
}

/// The formal matrix of an instance satisfying the dimension condition.
pub fn symbolic_matrix(inst: &Instance) -> Result<SymbolicMatrix, OracleError> {
    match reduce(inst)? {
        Some(red) => Ok(build(&red, true)),
        None => Err(OracleError::DimensionCondition),
    }
}

/// Whether the coefficient vanishes, decided by expanding the determinant
/// as a polynomial. Returns `true` when the coefficient is zero.
///
/// Every column carries a single `x` factor, so the determinant is the
/// product of the `x` variables times the determinant at `x = 1`; only the
/// latter is expanded.
pub fn symbolic_vanishing(inst: &Instance) -> Result<bool, OracleError> {
    let red = match reduce(inst) {
        Ok(Some(red)) => red,
        Ok(None) => return Ok(true),
        Err(OracleError::Trivial) => return Ok(false),
        Err(e) => return Err(e),
    };
    if red.data.d() > MAX_SYMBOLIC_D {
        return Err(OracleError::TooLarge { d: red.data.d(), max: MAX_SYMBOLIC_D });
    }
    let mat = build(&red, false);
    Ok(poly_det(&mat.entries).is_zero())
}

/// Evaluates a formal matrix at a point.
pub fn evaluate(mat: &SymbolicMatrix, point: &[BigInt]) -> Vec<Vec<BigInt>> {
    mat.entries.iter().map(|row| row.iter().map(|p| p.eval(point)).collect()).collect()
}
