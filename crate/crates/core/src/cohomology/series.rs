//! Power series in `t` with integer coefficients, truncated at an explicit order.

use std::fmt;

use serde::Serialize;

use super::CohomologyError;

/// Coefficients of `t^0 .. t^(K-1)`. Every operation truncates at the
/// smaller order of its operands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TruncatedSeries {
    coeffs: Vec<i64>,
}

impl TruncatedSeries {
    /// Pads with zeros or truncates `coeffs` to order `k`.
    pub fn new(coeffs: &[i64], k: usize) -> Self {
        let mut c = coeffs.to_vec();
        c.resize(k, 0);
        TruncatedSeries { coeffs: c }
    }

    pub fn zero(k: usize) -> Self {
        TruncatedSeries { coeffs: vec![0; k] }
    }

    pub fn one(k: usize) -> Self {
        Self::monomial(1, 0, k)
    }

    /// `c t^d`, or zero if `d >= k`.
    pub fn monomial(c: i64, d: usize, k: usize) -> Self {
        let mut s = Self::zero(k);
        if d < k {
            s.coeffs[d] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn truncate(&self, k: usize) -> Self {
        Self::new(&self.coeffs[..k.min(self.order())], k.min(self.order()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        let c: Vec<i64> = (0..k)
            .map(|d| {
                self.coeffs[d]
                    .checked_add(other.coeffs[d])
                    .expect("series coefficient overflow")
            })
            .collect();
        TruncatedSeries { coeffs: c }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i64) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| x.checked_mul(c).expect("series coefficient overflow"))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        let mut c = vec![0i64; k];
        for (i, &a) in self.coeffs.iter().enumerate().take(k) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(k - i) {
                let term = a.checked_mul(b).expect("series coefficient overflow");
                c[i + j] = c[i + j]
                    .checked_add(term)
                    .expect("series coefficient overflow");
            }
        }
        TruncatedSeries { coeffs: c }
    }

    /// Inverse of a series with constant term `1` or `-1`.
    pub fn invert_unit(&self) -> Result<Self, CohomologyError> {
        let k = self.order();
        if k == 0 {
            return Ok(self.clone());
        }
        let c0 = self.coeffs[0];
        if c0 != 1 && c0 != -1 {
            return Err(CohomologyError::NotAUnit(c0));
        }
        // c0 is its own inverse
        let mut inv = vec![0i64; k];
        inv[0] = c0;
        for d in 1..k {
            let mut acc = 0i64;
            for i in 1..=d {
                acc = acc
                    .checked_add(self.coeffs[i].checked_mul(inv[d - i]).expect("overflow"))
                    .expect("series coefficient overflow");
            }
            inv[d] = -c0 * acc;
        }
        Ok(TruncatedSeries { coeffs: inv })
    }

    /// `1 / (1 - t^m)` to order `k`.
    pub fn geometric(m: usize, k: usize) -> Self {
        assert!(m > 0, "geometric series needs a positive step");
        let mut s = Self::zero(k);
        for d in (0..k).step_by(m) {
            s.coeffs[d] = 1;
        }
        s
    }

    /// Poincare polynomial `1 + t^2 + .. + t^(2n)` of complex projective n-space.
    pub fn projective_space(n: usize, k: usize) -> Self {
        let mut s = Self::zero(k);
        for i in 0..=n {
            if 2 * i < k {
                s.coeffs[2 * i] = 1;
            }
        }
        s
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (d, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{a}*t")?,
                (_, 1) => write!(f, "t^{d}")?,
                _ => write!(f, "{a}*t^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " mod t^{}", self.order())
    }
}
