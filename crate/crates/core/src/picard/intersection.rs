//! Intersection numbers on the toroidal boundary and the numerical
//! obstruction to K-equivalence of the unordered compactifications.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::polyalg::{int, rat, rational_serde, Rational};

/// An element of `Q[h1, h2] / (h1^3, h2^3)`, the cohomology of `P^2 x P^2`.
/// `coeffs[i][j]` multiplies `h1^i h2^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bigraded {
    coeffs: [[Rational; 3]; 3],
}

impl Bigraded {
    pub fn zero() -> Self {
        Bigraded {
            coeffs: Default::default(),
        }
    }

    pub fn one() -> Self {
        let mut b = Self::zero();
        b.coeffs[0][0] = Rational::one();
        b
    }

    /// The divisor class `a h1 + b h2`.
    pub fn divisor(a: Rational, b: Rational) -> Self {
        let mut d = Self::zero();
        d.coeffs[1][0] = a;
        d.coeffs[0][1] = b;
        d
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                if self.coeffs[i][j].is_zero() {
                    continue;
                }
                for k in 0..3 - i {
                    for l in 0..3 - j {
                        out.coeffs[i + k][j + l] += &self.coeffs[i][j] * &other.coeffs[k][l];
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Degree of the top component, `h1^2 h2^2` being the class of a point.
    pub fn degree(&self) -> Rational {
        self.coeffs[2][2].clone()
    }
}

/// Normal bundle of a boundary component `T_i ~ P^2 x P^2` of the ordered
/// toroidal compactification, as a bidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalBundle {
    pub canonical_of_component: (i64, i64),
    /// Multiple of `N` that adjunction produces.
    pub multiple: i64,
    #[serde(serialize_with = "rational_serde::pair")]
    pub bidegree: (Rational, Rational),
}

/// Adjunction on `T_i`: `K_(T_i) = (K + T_i)|_(T_i)` with
/// `K = -8 L + 2 T`. `L` restricts trivially since `T_i` is contracted to a
/// cusp, and the other components are disjoint from `T_i`, so
/// `T|_(T_i) = T_i|_(T_i) = N`.
pub fn normal_bundle_boundary() -> NormalBundle {
    // coefficients of T and T_i in K + T_i; the L part restricts to zero
    let (c_t, c_ti) = (int(2), int(1));
    let multiple = c_t + c_ti;
    let canonical = (-3i64, -3i64);
    let m = multiple.to_integer();
    let bidegree = (
        rat(canonical.0, 1) / &multiple,
        rat(canonical.1, 1) / &multiple,
    );
    NormalBundle {
        canonical_of_component: canonical,
        multiple: m.try_into().expect("small"),
        bidegree,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfIntersections {
    /// `T_i^5 = N^4` on one component.
    #[serde(serialize_with = "rational_serde::one")]
    pub component: Rational,
    /// `T_ord^5`, the components being disjoint.
    #[serde(serialize_with = "rational_serde::one")]
    pub ordered: Rational,
    /// `T^5` on the unordered quotient.
    #[serde(serialize_with = "rational_serde::one")]
    pub unordered: Rational,
    pub cusps: u64,
    pub cover_degree: u64,
}

/// Top self-intersections of the boundary. `cover_degree` is the degree of
/// the quotient map from the ordered to the unordered compactification,
/// which pulls `T` back to `T_ord`.
pub fn top_self_intersections(cusps: u64, cover_degree: u64) -> SelfIntersections {
    let nb = normal_bundle_boundary();
    let n = Bigraded::divisor(nb.bidegree.0.clone(), nb.bidegree.1.clone());
    let component = n.pow(4).degree();
    let ordered = &component * rat(cusps as i64, 1);
    let unordered = &ordered / rat(cover_degree as i64, 1);
    SelfIntersections {
        component,
        ordered,
        unordered,
        cusps,
        cover_degree,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionCertificate {
    /// `(c_T T)^5` on the toroidal side.
    #[serde(serialize_with = "rational_serde::one")]
    pub tor_fifth_power: Rational,
    /// `Delta^5` forced by `(c_T T)^5 = (c_Delta Delta)^5`.
    #[serde(serialize_with = "rational_serde::one")]
    pub required_delta_fifth: Rational,
    /// `(e, feasible)`: `Delta^5` of a Cartier-index `e` divisor on the
    /// exceptional locus lies in `(1/e) Z`.
    pub candidates: Vec<(u64, bool)>,
    pub obstructed: bool,
}

/// Compares the fifth powers of the boundary parts of the two canonical
/// classes. K-equivalence would match the `T` part `c_t T` with the
/// exceptional part `c_delta Delta`.
pub fn k_equivalence_obstruction(
    t_fifth: &Rational,
    c_t: i64,
    c_delta: i64,
    e_candidates: &[u64],
) -> ObstructionCertificate {
    let fifth = |c: i64| rat(c.pow(5), 1);
    let tor_fifth_power = fifth(c_t) * t_fifth;
    let required_delta_fifth = &tor_fifth_power / fifth(c_delta);
    let candidates: Vec<(u64, bool)> = e_candidates
        .iter()
        .map(|&e| (e, (&required_delta_fifth * rat(e as i64, 1)).is_integer()))
        .collect();
    let obstructed = candidates.iter().all(|(_, ok)| !ok);
    ObstructionCertificate {
        tor_fifth_power,
        required_delta_fifth,
        candidates,
        obstructed,
    }
}
