//! Betti numbers: truncated series, the Kirwan method and decomposition
//! assembly from intersection cohomology and boundary fibers.

pub mod assembly;
pub mod kirwan;
pub mod series;

use serde::Serialize;
use thiserror::Error;

pub use assembly::{decomposition_assembly, invariant_sym_square, tensor_product};
pub use kirwan::{
    extra_correction_min_degree, kirwan_betti_m_k, kirwan_index_set, main_correction,
    semistable_series, KirwanIndex,
};
pub use series::TruncatedSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("constant term {0} is not a unit")]
    NotAUnit(i64),
    #[error(
        "insufficient codimension: strata enter from degree {bound}, asked for mod t^{requested}"
    )]
    InsufficientCodimension { bound: i64, requested: usize },
    #[error("orbit codimension {0} is below 2")]
    CodimensionTooSmall(usize),
    #[error("normal weights must be nonzero and symmetric")]
    BadNormalWeights,
    #[error("extra correction term can contribute from degree {0}")]
    ExtraTermContributes(usize),
    #[error("table length mismatch: {0}")]
    LengthMismatch(String),
    #[error("middle degree {0} is not determined for even complex dimension")]
    EvenDimension(usize),
}

/// Even Betti numbers `b_0, b_2, .., b_2n` of a space of complex dimension
/// `n`; odd Betti numbers are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BettiTable {
    even: Vec<u64>,
}

impl BettiTable {
    pub fn new(even: &[u64]) -> Self {
        assert!(!even.is_empty(), "a Betti table has at least b_0");
        BettiTable {
            even: even.to_vec(),
        }
    }

    /// Completes `b_0, b_2, ..` to dimension `n` by Poincare duality.
    pub fn from_lower_half(half: &[u64], n: usize) -> Result<Self, CohomologyError> {
        if half.len() < n / 2 + 1 {
            return Err(CohomologyError::LengthMismatch(format!(
                "{} entries cannot fix dimension {n}",
                half.len()
            )));
        }
        let even = (0..=n)
            .map(|j| if j <= n / 2 { half[j] } else { half[n - j] })
            .collect();
        Ok(BettiTable { even })
    }

    pub fn even(&self) -> &[u64] {
        &self.even
    }

    pub fn dimension(&self) -> usize {
        self.even.len() - 1
    }

    /// `b_d` for real degree `d`.
    pub fn betti(&self, d: usize) -> u64 {
        if d % 2 == 1 {
            return 0;
        }
        self.even.get(d / 2).copied().unwrap_or(0)
    }

    pub fn is_palindromic(&self) -> bool {
        self.even.iter().eq(self.even.iter().rev())
    }

    pub fn euler_characteristic(&self) -> u64 {
        self.even.iter().sum()
    }

    /// `(real degree, b_d)` pairs in increasing degree.
    pub fn by_degree(&self) -> Vec<(usize, u64)> {
        self.even
            .iter()
            .enumerate()
            .map(|(j, &b)| (2 * j, b))
            .collect()
    }
}

/// Ordered toroidal compactification: intersection cohomology of the
/// Baily-Borel space.
pub const IH_BB_ORDERED: [u64; 6] = [1, 8, 29, 29, 8, 1];
/// Unordered Baily-Borel space.
pub const IH_BB: [u64; 6] = [1, 1, 2, 2, 1, 1];
/// Number of cusps of the ordered Baily-Borel space.
pub const ORDERED_CUSPS: u64 = 35;

/// The toroidal boundary at a cusp of the ordered space, `P^2 x P^2`.
pub fn ordered_fiber() -> BettiTable {
    let p2 = BettiTable::new(&[1, 1, 1]);
    tensor_product(&p2, &p2)
}

/// Boundary of the unordered toroidal compactification: the swap-invariant
/// part of the cohomology of `P(1,2,3)^2`.
pub fn unordered_fiber() -> BettiTable {
    invariant_sym_square(&BettiTable::new(&[1, 1, 1]))
}

pub fn tor_betti_ordered() -> Result<BettiTable, CohomologyError> {
    decomposition_assembly(
        &BettiTable::new(&IH_BB_ORDERED),
        &ordered_fiber(),
        ORDERED_CUSPS,
        5,
    )
}

pub fn tor_betti_unordered() -> Result<BettiTable, CohomologyError> {
    decomposition_assembly(&BettiTable::new(&IH_BB), &unordered_fiber(), 1, 5)
}
