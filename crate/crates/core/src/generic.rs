//! Random unipotent group elements built from a strictly upper triangular
//! parameter matrix `κ`.
//!
//! In SL_n the element is simply `I + κ`. In SO_m, `κ` is constrained to lie
//! in the orthogonal Lie algebra (skew with respect to the antidiagonal
//! form) and the Cayley transform `(I + κ)⁻¹(I − κ)` carries it into the
//! group while keeping the result unitriangular with integer entries.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::exactla::{solve_unit_upper, IntMatrix};
use crate::rootsys::RootSystemData;
use crate::weyl::LieType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenericError {
    #[error("expected {expected} parameters, got {got}")]
    AlphaCount { expected: usize, got: usize },
    #[error("sampling threshold must be at least 1")]
    ZeroThreshold,
}

/// A group element together with its exact inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnipotentSample {
    pub alphas: Vec<BigInt>,
    pub kappa: IntMatrix,
    pub k: IntMatrix,
    pub k_inv: IntMatrix,
}

/// Size of the sampling interval `{1, .., p}`.
///
/// Chosen so that one round errs with probability at most 1/3: the
/// determinant has degree `d(n+1)` in SL_n and `d(2m+1)` in SO_m.
pub fn threshold_p(data: &RootSystemData) -> u64 {
    let m = data.m() as u64;
    match data.lie_type() {
        LieType::A => 3 * m * (m * m - 1) / 2 + 1,
        _ => {
            let h = m / 2;
            3 * h * h * (2 * m + 1) + 1
        }
    }
}

/// One uniform draw from `{1, .., p}` per index-set position.
pub fn sample_alphas<R: Rng + ?Sized>(
    data: &RootSystemData,
    rng: &mut R,
    p: u64,
) -> Result<Vec<BigInt>, GenericError> {
    if p == 0 {
        return Err(GenericError::ZeroThreshold);
    }
    Ok((0..data.d()).map(|_| BigInt::from(rng.gen_range(1..=p))).collect())
}

/// Places the parameters at the index-set positions and fills in the
/// entries forced by the orthogonal form.
pub fn kappa_from_alphas(data: &RootSystemData, alphas: &[BigInt]) -> Result<IntMatrix, GenericError> {
    if alphas.len() != data.d() {
        return Err(GenericError::AlphaCount { expected: data.d(), got: alphas.len() });
    }
    let m = data.m();
    let mut kappa = IntMatrix::zeros(m, m);
    for (a, &(i, j)) in alphas.iter().zip(data.index_set()) {
        kappa.set(i, j, a.clone());
        if data.is_orthogonal() {
            kappa.set(m - 1 - j, m - 1 - i, -a);
        }
    }
    Ok(kappa)
}

pub fn sample_kappa<R: Rng + ?Sized>(
    data: &RootSystemData,
    rng: &mut R,
    p: u64,
) -> Result<IntMatrix, GenericError> {
    let alphas = sample_alphas(data, rng, p)?;
    kappa_from_alphas(data, &alphas)
}

/// Builds `K` and `K⁻¹` from `κ`.
pub fn to_group(kappa: &IntMatrix, data: &RootSystemData) -> UnipotentSample {
    let id = IntMatrix::identity(data.m());
    let plus = id.add(kappa).expect("kappa is m x m");
    let alphas = data.index_set().iter().map(|&(i, j)| kappa.get(i, j).clone()).collect();
    if !data.is_orthogonal() {
        let k_inv = solve_unit_upper(&plus, &id).expect("I + kappa is unitriangular");
        return UnipotentSample { alphas, kappa: kappa.clone(), k: plus, k_inv };
    }
    let minus = id.sub(kappa).expect("kappa is m x m");
    // I + κ and I − κ commute, so the inverse is the transform of −κ.
    let k = solve_unit_upper(&plus, &minus).expect("I + kappa is unitriangular");
    let k_inv = solve_unit_upper(&minus, &plus).expect("I - kappa is unitriangular");
    UnipotentSample { alphas, kappa: kappa.clone(), k, k_inv }
}

/// Convenience wrapper: parameters to group element.
pub fn from_alphas(data: &RootSystemData, alphas: &[BigInt]) -> Result<UnipotentSample, GenericError> {
    Ok(to_group(&kappa_from_alphas(data, alphas)?, data))
}

pub fn sample<R: Rng + ?Sized>(
    data: &RootSystemData,
    rng: &mut R,
    p: u64,
) -> Result<UnipotentSample, GenericError> {
    let alphas = sample_alphas(data, rng, p)?;
    from_alphas(data, &alphas)
}

/// Whether every entry on or below the diagonal vanishes.
pub fn is_strictly_upper(mat: &IntMatrix) -> bool {
    (0..mat.rows()).all(|r| (0..=r.min(mat.cols().saturating_sub(1))).all(|c| mat.get(r, c).is_zero()))
}
