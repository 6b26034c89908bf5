//! Kirwan's method for the blow-up of binary octics at `x0^4 x1^4`.
//!
//! Weights are the integer torus exponents `-8..8` in steps of 2. The index
//! `(a, -a)` used in the literature corresponds to the internal value `2a`.

use serde::Serialize;

use super::series::TruncatedSeries;
use super::{BettiTable, CohomologyError};
use crate::forms_git::{luna_slice_basis, torus_monomial_weights};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KirwanIndex {
    /// Internal weight value of the index.
    pub beta: i32,
    /// `beta / 2`.
    pub a: i32,
    /// Number of weights `alpha >= beta`.
    pub r: usize,
    /// Lower bound for the complex codimension of the stratum.
    pub d_bound: i64,
}

/// Nonzero indices of the stratification of projective space of the given
/// weights. For a rank-one torus the closest point to 0 of a one-sided set
/// of positive weights is its minimum, so the indices are the distinct
/// positive weights.
pub fn kirwan_index_set(weights: &[i32]) -> Vec<KirwanIndex> {
    let mut betas: Vec<i32> = weights.iter().copied().filter(|&w| w > 0).collect();
    betas.sort_unstable();
    betas.dedup();
    let dim = weights.len() as i64 - 1;
    betas
        .into_iter()
        .map(|beta| {
            let r = weights.iter().filter(|&&w| w >= beta).count();
            KirwanIndex {
                beta,
                a: beta / 2,
                r,
                d_bound: dim - 1 - r as i64,
            }
        })
        .collect()
}

/// Equivariant Poincare series of the semistable binary forms of degree
/// `n`, modulo `t^k`: the unstable strata only enter from degree
/// `2 min d` on.
pub fn semistable_series(n: u32, k: usize) -> Result<TruncatedSeries, CohomologyError> {
    let index = kirwan_index_set(&torus_monomial_weights(n));
    let min_d = index.iter().map(|i| i.d_bound).min().unwrap_or(i64::MAX);
    if 2 * min_d < k as i64 {
        return Err(CohomologyError::InsufficientCodimension {
            bound: 2 * min_d,
            requested: k,
        });
    }
    let bsl2 = TruncatedSeries::geometric(4, k);
    Ok(TruncatedSeries::projective_space(n as usize, k).mul(&bsl2))
}

/// Main correction term: `pn * (t^2 + t^4 + .. + t^(2(c-1)))` modulo `t^k`,
/// where `pn` is the Poincare series of the normalizer-equivariant
/// cohomology of the fixed locus and `c` the codimension of the blown-up orbit.
pub fn main_correction(
    pn: &TruncatedSeries,
    c: usize,
    k: usize,
) -> Result<TruncatedSeries, CohomologyError> {
    if c < 2 {
        return Err(CohomologyError::CodimensionTooSmall(c));
    }
    let mut classes = TruncatedSeries::zero(k);
    for i in 1..c {
        classes = classes.add(&TruncatedSeries::monomial(1, 2 * i, k));
    }
    Ok(pn.truncate(k.min(pn.order())).mul(&classes))
}

/// Weights of the stabilizer on the normal space to the orbit: all monomial
/// weights minus the orbit tangent weights.
pub fn normal_weights() -> Vec<i32> {
    let slice = luna_slice_basis(8).expect("degree 8 slice");
    let mut all = torus_monomial_weights(8);
    for w in &slice.orbit_tangent_weights {
        let pos = all
            .iter()
            .position(|x| x == w)
            .expect("tangent weight occurs");
        all.remove(pos);
    }
    all
}

/// Smallest degree in which the extra correction term can be nonzero:
/// `min 2 n(beta')` over positive `beta'`, where `n(beta')` counts the
/// weights below `beta'`.
pub fn extra_correction_min_degree(weights: &[i32]) -> Result<usize, CohomologyError> {
    let mut sorted = weights.to_vec();
    sorted.sort_unstable();
    let mut mirrored: Vec<i32> = sorted.iter().map(|w| -w).collect();
    mirrored.sort_unstable();
    if weights.is_empty() || weights.contains(&0) || sorted != mirrored {
        return Err(CohomologyError::BadNormalWeights);
    }
    let min = sorted
        .iter()
        .filter(|&&b| b > 0)
        .map(|&b| 2 * sorted.iter().filter(|&&w| w < b).count())
        .min()
        .expect("symmetric nonzero weights have a positive one");
    Ok(min)
}

/// The truncated part and full Betti table of the Kirwan blow-up quotient
/// of binary octics.
#[derive(Clone, Debug, Serialize)]
pub struct KirwanComputation {
    pub semistable: TruncatedSeries,
    pub main: TruncatedSeries,
    pub extra_min_degree: usize,
    pub truncated: TruncatedSeries,
    pub betti: BettiTable,
}

/// Complex dimension of the quotient.
pub const QUOTIENT_DIMENSION: usize = 5;
/// Codimension of the blown-up orbit (dimension of the slice).
pub const SLICE_CODIMENSION: usize = 6;

pub fn kirwan_betti_m_k() -> Result<KirwanComputation, CohomologyError> {
    let k = 6;
    let semistable = semistable_series(8, k)?;
    let pn = TruncatedSeries::geometric(4, k);
    let main = main_correction(&pn, SLICE_CODIMENSION, k)?;
    let extra_min_degree = extra_correction_min_degree(&normal_weights())?;
    if extra_min_degree < k {
        return Err(CohomologyError::ExtraTermContributes(extra_min_degree));
    }
    let truncated = semistable.add(&main);
    // odd cohomology vanishes; the known half fixes the rest by duality
    let half: Vec<u64> = (0..k)
        .step_by(2)
        .map(|d| truncated.coeff(d) as u64)
        .collect();
    let betti = BettiTable::from_lower_half(&half, QUOTIENT_DIMENSION)?;
    Ok(KirwanComputation {
        semistable,
        main,
        extra_min_degree,
        truncated,
        betti,
    })
}
