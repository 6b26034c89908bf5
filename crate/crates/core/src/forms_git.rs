//! Binary forms and point configurations on the projective line: symmetric
//! Hilbert-Mumford stability, the polystable point `x0^4 x1^4` and its Luna
//! slice.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub const MIN_DEGREE: u32 = 5;
pub const MAX_DEGREE: u32 = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormsError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("degree {0} outside the supported range 5..=12")]
    UnsupportedDegree(u32),
    #[error("Luna slice is only implemented for degree 8, got {0}")]
    UnsupportedSlice(u32),
}

/// A degree-`N` binary form up to scale, recorded by the multiplicities of its
/// roots. Parts are kept sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PointConfig {
    n: u32,
    parts: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl PointConfig {
    pub fn new(parts: &[u32]) -> Result<Self, FormsError> {
        if parts.is_empty() {
            return Err(FormsError::InvalidConfig("no points".into()));
        }
        if parts.contains(&0) {
            return Err(FormsError::InvalidConfig(
                "multiplicities must be positive".into(),
            ));
        }
        let n: u32 = parts.iter().sum();
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(FormsError::UnsupportedDegree(n));
        }
        let mut parts = parts.to_vec();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PointConfig {
            n,
            parts,
            labels: None,
        })
    }

    /// Attaches one label per part, in the sorted part order.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, FormsError> {
        if labels.len() != self.parts.len() {
            return Err(FormsError::InvalidConfig(format!(
                "{} labels for {} points",
                labels.len(),
                self.parts.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.parts[0]
    }
}

impl fmt::Display for PointConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for PointConfig {
    type Err = FormsError;

    /// Comma-separated multiplicities, e.g. `4,4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| FormsError::InvalidConfig(format!("bad multiplicity `{p}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        PointConfig::new(&parts)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Stability {
    Stable,
    StrictlySemistable,
    Unstable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StabilityVerdict {
    pub stability: Stability,
    pub polystable: bool,
}

/// Hilbert-Mumford for the symmetric linearization: compare the largest
/// multiplicity with `N/2`.
pub fn classify(config: &PointConfig) -> StabilityVerdict {
    let twice_max = 2 * config.max_multiplicity();
    let n = config.degree();
    let stability = match twice_max.cmp(&n) {
        std::cmp::Ordering::Less => Stability::Stable,
        std::cmp::Ordering::Equal => Stability::StrictlySemistable,
        std::cmp::Ordering::Greater => Stability::Unstable,
    };
    let polystable = match stability {
        Stability::Stable => true,
        Stability::StrictlySemistable => config.parts() == [n / 2, n / 2],
        Stability::Unstable => false,
    };
    StabilityVerdict {
        stability,
        polystable,
    }
}

/// All partitions of `n` in decreasing-part form, in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Classification of every multiplicity type of degree `n`.
pub fn stability_table(n: u32) -> Result<Vec<(PointConfig, StabilityVerdict)>, FormsError> {
    partitions(n)
        .into_iter()
        .map(|p| {
            let c = PointConfig::new(&p)?;
            let v = classify(&c);
            Ok((c, v))
        })
        .collect()
}

/// Weight of the diagonal torus `diag(lambda, lambda^-1)` on `x0^a x1^b`.
pub fn monomial_weight(a: u32, b: u32) -> i32 {
    a as i32 - b as i32
}

/// Weights `2i - N` of the diagonal torus on the degree-`n` monomials, sorted.
pub fn torus_monomial_weights(n: u32) -> Vec<i32> {
    (0..=n).map(|i| monomial_weight(i, n - i)).collect()
}

/// Stabilizer of `x0^k x1^k` in the projective group: a one-dimensional
/// torus extended by the involution swapping the two points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerData {
    pub identity_component: &'static str,
    pub component_group_order: u32,
    pub degree: u32,
}

impl StabilizerData {
    /// Weight of the identity component on `x0^i x1^(N-i)`.
    pub fn diag_weight_on_monomial(&self, i: u32) -> i32 {
        monomial_weight(i, self.degree - i)
    }
}

pub fn polystable_stabilizer(n: u32) -> Result<StabilizerData, FormsError> {
    if n % 2 == 1 {
        return Err(FormsError::InvalidConfig(format!(
            "degree {n} has no strictly semistable polystable point"
        )));
    }
    Ok(StabilizerData {
        identity_component: "C^*",
        component_group_order: 2,
        degree: n,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceCoordinate {
    pub name: &'static str,
    /// `(a, b)` for the monomial `x0^a x1^b`.
    pub monomial: (u32, u32),
    pub weight: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LunaSlice {
    pub coordinates: Vec<SliceCoordinate>,
    /// Weights of the orbit tangent directions, including the point itself.
    pub orbit_tangent_weights: Vec<i32>,
}

impl LunaSlice {
    pub fn weights(&self) -> Vec<i32> {
        self.coordinates.iter().map(|c| c.weight).collect()
    }

    pub fn dimension(&self) -> usize {
        self.coordinates.len()
    }
}

const SLICE_NAMES: [(&str, (u32, u32)); 6] = [
    ("alpha0", (8, 0)),
    ("alpha1", (0, 8)),
    ("beta0", (7, 1)),
    ("beta1", (1, 7)),
    ("gamma0", (6, 2)),
    ("gamma1", (2, 6)),
];

/// Luna slice at `x0^4 x1^4`. The tangent space to the cone over the orbit is
/// spanned by `x_i d/dx_j` applied to the form; the slice is the span of the
/// remaining monomials.
pub fn luna_slice_basis(n: u32) -> Result<LunaSlice, FormsError> {
    if n != 8 {
        return Err(FormsError::UnsupportedSlice(n));
    }
    let half = n / 2;
    let mut tangent: Vec<(u32, u32)> = Vec::new();
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        // x_i d/dx_j on x0^half x1^half
        let mut e = [half, half];
        e[j] -= 1;
        e[i] += 1;
        let m = (e[0], e[1]);
        if !tangent.contains(&m) {
            tangent.push(m);
        }
    }
    let mut orbit_tangent_weights: Vec<i32> = tangent
        .iter()
        .map(|&(a, b)| monomial_weight(a, b))
        .collect();
    orbit_tangent_weights.sort_unstable();

    let coordinates: Vec<SliceCoordinate> = SLICE_NAMES
        .iter()
        .map(|&(name, (a, b))| SliceCoordinate {
            name,
            monomial: (a, b),
            weight: monomial_weight(a, b),
        })
        .collect();
    debug_assert!(coordinates.iter().all(|c| !tangent.contains(&c.monomial)));
    Ok(LunaSlice {
        coordinates,
        orbit_tangent_weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(parts: &[u32]) -> StabilityVerdict {
        classify(&PointConfig::new(parts).unwrap())
    }

    #[test]
    fn octic_examples() {
        let v = verdict(&[1; 8]);
        assert_eq!(v.stability, Stability::Stable);
        assert!(v.polystable);

        let v = verdict(&[4, 4]);
        assert_eq!(v.stability, Stability::StrictlySemistable);
        assert!(v.polystable);

        assert_eq!(verdict(&[5, 3]).stability, Stability::Unstable);

        let v = verdict(&[4, 3, 1]);
        assert_eq!(v.stability, Stability::StrictlySemistable);
        assert!(!v.polystable);
    }

    #[test]
    fn odd_degree_example() {
        assert_eq!(verdict(&[3, 2, 2]).stability, Stability::Stable);
    }

    #[test]
    fn weights() {
        assert_eq!(
            torus_monomial_weights(8),
            vec![-8, -6, -4, -2, 0, 2, 4, 6, 8]
        );
        assert_eq!(torus_monomial_weights(1), vec![-1, 1]);
        assert_eq!(torus_monomial_weights(4), vec![-4, -2, 0, 2, 4]);
    }

    #[test]
    fn slice_at_c44() {
        let s = luna_slice_basis(8).unwrap();
        assert_eq!(s.weights(), vec![8, -8, 6, -6, 4, -4]);
        assert_eq!(s.orbit_tangent_weights, vec![-2, 0, 2]);
        assert_eq!(s.dimension(), 6);
        assert_eq!(luna_slice_basis(6), Err(FormsError::UnsupportedSlice(6)));
    }

    #[test]
    fn config_parsing() {
        let c: PointConfig = "3, 5".parse().unwrap();
        assert_eq!(c.parts(), &[5, 3]);
        assert_eq!(c.to_string(), "(5,3)");
        assert!("4,0,4".parse::<PointConfig>().is_err());
        assert!("1,1".parse::<PointConfig>().is_err());
        assert!("a".parse::<PointConfig>().is_err());
    }

    #[test]
    fn stabilizer_weights() {
        let s = polystable_stabilizer(8).unwrap();
        assert_eq!(s.component_group_order, 2);
        assert_eq!(s.diag_weight_on_monomial(4), 0);
        assert_eq!(s.diag_weight_on_monomial(8), 8);
        assert!(polystable_stabilizer(7).is_err());
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(8).len(), 22);
        assert_eq!(partitions(5).len(), 7);
    }
}
