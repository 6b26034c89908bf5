//! The six-dimensional quadratic space `u + u + u` over the two-element field.
//!
//! Vectors are 6-bit integers with `v1` in the most significant bit, so the
//! vector `(1,0,0,0,0,0)` is `0x20`. The form is `q = v1 v2 + v3 v4 + v5 v6`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub const DIM: u32 = 6;
pub const SIZE: usize = 1 << DIM;
/// Closure aborts past this many elements.
pub const GROUP_BOUND: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FqError {
    #[error("vector {0:#04x} is zero")]
    ZeroVector(u8),
    #[error("vector {0:#04x} is not isotropic")]
    NotIsotropic(u8),
    #[error("vector {0:#04x} is isotropic; transvections need q(v) = 1")]
    IsotropicReflection(u8),
    #[error("vector {0:#04x} does not fit in 6 bits")]
    OutOfRange(u32),
    #[error("bad hex vector `{0}`")]
    Parse(String),
    #[error("group closure exceeded {0} elements")]
    GroupTooLarge(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FqVector(u8);

impl FqVector {
    pub fn new(bits: u32) -> Result<Self, FqError> {
        if bits as usize >= SIZE {
            return Err(FqError::OutOfRange(bits));
        }
        Ok(FqVector(bits as u8))
    }

    /// From coordinates `(v1, ..., v6)`, each 0 or 1.
    pub fn from_coords(c: [u8; 6]) -> Self {
        FqVector(c.iter().fold(0u8, |acc, &b| (acc << 1) | (b & 1)))
    }

    pub fn coords(self) -> [u8; 6] {
        let mut out = [0u8; 6];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = (self.0 >> (5 - i)) & 1;
        }
        out
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn all() -> impl Iterator<Item = FqVector> {
        (0..SIZE as u8).map(FqVector)
    }

    pub fn q(self) -> u8 {
        let v = self.0;
        // pairs (v1,v2), (v3,v4), (v5,v6) occupy bit pairs (5,4), (3,2), (1,0)
        let prod = (v >> 1) & v & 0b010101;
        (prod.count_ones() & 1) as u8
    }

    pub fn b(self, other: FqVector) -> u8 {
        (self + other).q() ^ self.q() ^ other.q()
    }
}

impl std::ops::Add for FqVector {
    type Output = FqVector;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FqVector) -> FqVector {
        FqVector(self.0 ^ rhs.0)
    }
}

impl fmt::Display for FqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#04x}", self.0)
    }
}

impl std::str::FromStr for FqVector {
    type Err = FqError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t
            .strip_prefix("0x")
            .or_else(|| t.strip_prefix("0X"))
            .unwrap_or(t);
        let bits = u32::from_str_radix(t, 16).map_err(|_| FqError::Parse(s.to_string()))?;
        FqVector::new(bits)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub zero: usize,
    pub isotropic: usize,
    pub nonisotropic: usize,
}

/// Counts the vectors of `(F_2)^(2k)` with form `sum x_{2i-1} x_{2i}` by
/// q-value; `planes = 3` is the full space.
pub fn census_planes(planes: u32) -> Census {
    let mut c = Census {
        zero: 0,
        isotropic: 0,
        nonisotropic: 0,
    };
    for bits in 0..(1u32 << (2 * planes)) {
        // embed into the low planes of the 6-bit space
        let v = FqVector(bits as u8);
        if bits == 0 {
            c.zero += 1;
        } else if v.q() == 0 {
            c.isotropic += 1;
        } else {
            c.nonisotropic += 1;
        }
    }
    c
}

pub fn census() -> Census {
    census_planes(3)
}

fn check_isotropic(h: FqVector) -> Result<(), FqError> {
    if h.is_zero() {
        return Err(FqError::ZeroVector(h.0));
    }
    if h.q() != 0 {
        return Err(FqError::NotIsotropic(h.0));
    }
    Ok(())
}

/// Nonzero vectors of `h^perp`.
pub fn perp(h: FqVector) -> Result<Vec<FqVector>, FqError> {
    check_isotropic(h)?;
    Ok(FqVector::all()
        .filter(|v| !v.is_zero() && v.b(h) == 0)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PerpCensus {
    pub isotropic: usize,
    pub nonisotropic: usize,
}

pub fn perp_census(h: FqVector) -> Result<PerpCensus, FqError> {
    let vs = perp(h)?;
    let iso = vs.iter().filter(|v| v.q() == 0).count();
    Ok(PerpCensus {
        isotropic: iso,
        nonisotropic: vs.len() - iso,
    })
}

/// An isometry, stored as the permutation it induces on all 64 vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Isometry([u8; SIZE]);

impl fmt::Debug for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Isometry").field(&&self.0[..]).finish()
    }
}

impl Isometry {
    pub fn identity() -> Self {
        let mut p = [0u8; SIZE];
        for (i, slot) in p.iter_mut().enumerate() {
            *slot = i as u8;
        }
        Isometry(p)
    }

    pub fn apply(&self, v: FqVector) -> FqVector {
        FqVector(self.0[v.0 as usize])
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let mut p = [0u8; SIZE];
        for (i, slot) in p.iter_mut().enumerate() {
            *slot = self.0[other.0[i] as usize];
        }
        Isometry(p)
    }

    pub fn is_linear(&self) -> bool {
        FqVector::all()
            .all(|u| FqVector::all().all(|v| self.apply(u + v) == self.apply(u) + self.apply(v)))
    }

    pub fn preserves_q(&self) -> bool {
        FqVector::all().all(|v| self.apply(v).q() == v.q())
    }
}

/// The transvection `x -> x + b(x, v) v` for non-isotropic `v`.
pub fn reflection(v: FqVector) -> Result<Isometry, FqError> {
    if v.q() != 1 {
        return Err(FqError::IsotropicReflection(v.0));
    }
    let mut p = [0u8; SIZE];
    for x in FqVector::all() {
        let image = if x.b(v) == 1 { x + v } else { x };
        p[x.0 as usize] = image.0;
    }
    let r = Isometry(p);
    assert!(r.preserves_q(), "transvection must preserve q");
    Ok(r)
}

pub fn nonisotropic_vectors() -> Vec<FqVector> {
    FqVector::all().filter(|v| v.q() == 1).collect()
}

pub fn isotropic_vectors() -> Vec<FqVector> {
    FqVector::all()
        .filter(|v| !v.is_zero() && v.q() == 0)
        .collect()
}

/// The orthogonal group, as the closure of the 28 transvections. Element 0
/// is the identity and elements are numbered in breadth-first order.
pub struct OrthogonalGroup {
    elements: Vec<Isometry>,
}

impl OrthogonalGroup {
    pub fn generate() -> Result<Self, FqError> {
        Self::generate_bounded(GROUP_BOUND)
    }

    pub fn generate_bounded(bound: usize) -> Result<Self, FqError> {
        let gens: Vec<Isometry> = nonisotropic_vectors()
            .into_iter()
            .map(|v| reflection(v).expect("non-isotropic"))
            .collect();
        let mut seen: HashSet<Isometry> = HashSet::new();
        let mut elements = Vec::new();
        let mut queue = VecDeque::new();
        let id = Isometry::identity();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(g) = queue.pop_front() {
            for s in &gens {
                let h = s.compose(&g);
                if seen.insert(h.clone()) {
                    if seen.len() > bound {
                        return Err(FqError::GroupTooLarge(bound));
                    }
                    queue.push_back(h);
                }
            }
            elements.push(g);
        }
        Ok(OrthogonalGroup { elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Isometry] {
        &self.elements
    }

    pub fn orbit(&self, v: FqVector) -> Vec<FqVector> {
        let mut hit = [false; SIZE];
        for g in &self.elements {
            hit[g.apply(v).0 as usize] = true;
        }
        FqVector::all().filter(|w| hit[w.0 as usize]).collect()
    }

    /// Orbits of the whole group on the nonzero vectors, each sorted, in
    /// order of their smallest element.
    pub fn nonzero_orbits(&self) -> Vec<Vec<FqVector>> {
        orbits_of(
            self.elements.iter(),
            FqVector::all().filter(|v| !v.is_zero()),
        )
    }

    pub fn stabilizer(&self, h: FqVector) -> Vec<&Isometry> {
        self.elements.iter().filter(|g| g.apply(h) == h).collect()
    }

    /// Orbits of `Stab(h)` on the nonzero vectors of `h^perp`, split by
    /// q-value.
    pub fn stab_orbits_on_perp(&self, h: FqVector) -> Result<PerpOrbits, FqError> {
        let vs = perp(h)?;
        let stab = self.stabilizer(h);
        let iso = orbits_of(
            stab.iter().copied(),
            vs.iter().copied().filter(|v| v.q() == 0),
        );
        let noniso = orbits_of(
            stab.iter().copied(),
            vs.iter().copied().filter(|v| v.q() == 1),
        );
        Ok(PerpOrbits {
            stab_order: stab.len(),
            isotropic: iso.iter().map(Vec::len).collect(),
            nonisotropic: noniso.iter().map(Vec::len).collect(),
        })
    }

    pub fn stab_transitive_on_perp(&self, h: FqVector) -> Result<bool, FqError> {
        Ok(self.stab_orbits_on_perp(h)?.nonisotropic.len() == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerpOrbits {
    pub stab_order: usize,
    /// Orbit sizes on the isotropic vectors of `h^perp`.
    pub isotropic: Vec<usize>,
    /// Orbit sizes on the non-isotropic vectors of `h^perp`.
    pub nonisotropic: Vec<usize>,
}

fn orbits_of<'a>(
    group: impl Iterator<Item = &'a Isometry> + Clone,
    points: impl Iterator<Item = FqVector>,
) -> Vec<Vec<FqVector>> {
    let points: Vec<FqVector> = points.collect();
    let mut assigned = [false; SIZE];
    let mut out = Vec::new();
    for &p in &points {
        if assigned[p.0 as usize] {
            continue;
        }
        let mut orbit: Vec<FqVector> = group.clone().map(|g| g.apply(p)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for w in &orbit {
            assigned[w.0 as usize] = true;
        }
        out.push(orbit);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_convention() {
        let h = FqVector::from_coords([1, 0, 0, 0, 0, 0]);
        assert_eq!(h.bits(), 0x20);
        assert_eq!("0x20".parse::<FqVector>().unwrap(), h);
        assert_eq!("20".parse::<FqVector>().unwrap(), h);
        assert_eq!(h.coords(), [1, 0, 0, 0, 0, 0]);
        assert!("0x40".parse::<FqVector>().is_err());
        assert!("zz".parse::<FqVector>().is_err());
    }

    #[test]
    fn form_values() {
        assert_eq!(FqVector::from_coords([1, 1, 0, 0, 0, 0]).q(), 1);
        assert_eq!(FqVector::from_coords([1, 1, 1, 1, 0, 0]).q(), 0);
        assert_eq!(FqVector::from_coords([0, 0, 1, 1, 0, 0]).q(), 1);
        assert_eq!(FqVector::from_coords([1, 0, 1, 0, 1, 0]).q(), 0);
    }

    #[test]
    fn small_censuses() {
        let c = |z, i, n| Census {
            zero: z,
            isotropic: i,
            nonisotropic: n,
        };
        assert_eq!(census_planes(1), c(1, 2, 1));
        assert_eq!(census_planes(2), c(1, 9, 6));
        assert_eq!(census(), c(1, 35, 28));
    }

    #[test]
    fn perp_of_first_basis_vector() {
        let h = FqVector::from_coords([1, 0, 0, 0, 0, 0]);
        let pc = perp_census(h).unwrap();
        assert_eq!((pc.isotropic, pc.nonisotropic), (19, 12));
        assert_eq!(perp_census(FqVector(0)), Err(FqError::ZeroVector(0)));
        assert_eq!(
            perp_census(FqVector(0b110000)),
            Err(FqError::NotIsotropic(0b110000))
        );
    }

    #[test]
    fn reflection_basics() {
        let v = FqVector(0b110000);
        let r = reflection(v).unwrap();
        assert_eq!(r.apply(v), v);
        assert_eq!(r.compose(&r), Isometry::identity());
        assert!(r.is_linear());
        assert!(reflection(FqVector(0b100000)).is_err());
    }

    #[test]
    fn bound_aborts_closure() {
        assert!(matches!(
            OrthogonalGroup::generate_bounded(100),
            Err(FqError::GroupTooLarge(100))
        ));
    }
}
