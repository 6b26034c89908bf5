//! Blow-up of the Luna slice at the origin: the standard charts, strict
//! transforms of the discriminant, torus stabilizers on the exceptional
//! divisor, and the transversality checks built on squarefreeness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::forms_git::luna_slice_basis;
use crate::polyalg::{
    discriminant_quartic, is_squarefree, repeated_factors, resultant, MultiPoly, PolyError,
    Rational,
};

/// Order of the component group of the stabilizer of `x0^4 x1^4`.
pub const COMPONENT_GROUP_ORDER: u32 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlowupError {
    #[error("unknown chart `{0}` (expected P, Q or R)")]
    UnknownChart(String),
    #[error("`{0}` is not a chart coordinate off the exceptional divisor")]
    UnknownCoordinate(String),
    #[error("empty support")]
    EmptySupport,
    #[error("support has only weight-zero coordinates: positive-dimensional stabilizer")]
    PositiveDimensional,
    #[error("empty weight list")]
    EmptyWeights,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ChartName {
    P,
    Q,
    R,
}

impl ChartName {
    pub const ALL: [ChartName; 3] = [ChartName::P, ChartName::Q, ChartName::R];
}

impl fmt::Display for ChartName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for ChartName {
    type Err = BlowupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "P" | "p" => Ok(ChartName::P),
            "Q" | "q" => Ok(ChartName::Q),
            "R" | "r" => Ok(ChartName::R),
            _ => Err(BlowupError::UnknownChart(s.to_string())),
        }
    }
}

/// One affine chart of the blow-up of the six-dimensional slice.
#[derive(Clone, Debug)]
pub struct Chart {
    pub name: ChartName,
    /// Chart coordinates, one per slice coordinate in slice order.
    pub coordinates: Vec<String>,
    pub substitution: BTreeMap<String, MultiPoly>,
    pub exceptional: String,
    /// Set to 1 to cut the residual slice for the torus.
    pub residual: String,
    /// Torus weights of the coordinates other than the exceptional one.
    pub weights: Vec<(String, i32)>,
    /// Coordinates coming from `alpha0, beta0, gamma0` resp. `alpha1, beta1,
    /// gamma1`, without the exceptional one.
    pub first_index: Vec<String>,
    pub second_index: Vec<String>,
}

fn chart_letter(slice_var: &str) -> char {
    match &slice_var[..slice_var.len() - 1] {
        "alpha" => 's',
        "beta" => 't',
        "gamma" => 'u',
        other => unreachable!("slice coordinate {other}"),
    }
}

pub fn chart(name: ChartName) -> Chart {
    let (exceptional, residual) = match name {
        ChartName::P => ("alpha0", "s1"),
        ChartName::Q => ("beta0", "t1"),
        ChartName::R => ("gamma0", "s1"),
    };
    let slice = luna_slice_basis(8).expect("degree 8 slice");
    let w_exc = slice
        .coordinates
        .iter()
        .find(|c| c.name == exceptional)
        .unwrap()
        .weight;
    let e = MultiPoly::var(exceptional);
    let mut coordinates = Vec::new();
    let mut substitution = BTreeMap::new();
    let mut weights = Vec::new();
    let mut first_index = Vec::new();
    let mut second_index = Vec::new();
    for c in &slice.coordinates {
        if c.name == exceptional {
            coordinates.push(exceptional.to_string());
            substitution.insert(exceptional.to_string(), e.clone());
            continue;
        }
        let index = c.name.chars().last().unwrap();
        let coord = format!("{}{}", chart_letter(c.name), index);
        substitution.insert(c.name.to_string(), &e * &MultiPoly::var(&coord));
        weights.push((coord.clone(), c.weight - w_exc));
        if index == '0' {
            first_index.push(coord.clone());
        } else {
            second_index.push(coord.clone());
        }
        coordinates.push(coord);
    }
    Chart {
        name,
        coordinates,
        substitution,
        exceptional: exceptional.to_string(),
        residual: residual.to_string(),
        weights,
        first_index,
        second_index,
    }
}

impl Chart {
    pub fn weight_of(&self, coord: &str) -> Option<i32> {
        self.weights
            .iter()
            .find(|(c, _)| c == coord)
            .map(|&(_, w)| w)
    }

    pub fn weight_vector(&self) -> Vec<i32> {
        self.weights.iter().map(|&(_, w)| w).collect()
    }

    /// Pulls a slice polynomial back to this chart and cuts the residual slice.
    pub fn pull_back(&self, p: &MultiPoly) -> Result<MultiPoly, BlowupError> {
        let q = p.substitute(&self.substitution)?;
        Ok(q.evaluate_var(&self.residual, &Rational::one()))
    }

    fn canonical(&self, p: &MultiPoly) -> MultiPoly {
        p.extend_to(&self.coordinates).compact()
    }
}

/// The two factors of the discriminant divisor in slice coordinates: the
/// quartic discriminants in `(alpha0, beta0, gamma0)` and `(alpha1, beta1, gamma1)`.
pub fn discriminant_factors() -> [MultiPoly; 2] {
    let d = |i: u32| {
        discriminant_quartic(
            &MultiPoly::var(&format!("alpha{i}")),
            &MultiPoly::var(&format!("beta{i}")),
            &MultiPoly::var(&format!("gamma{i}")),
        )
    };
    [d(0), d(1)]
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorRestriction {
    pub multiplicity: u32,
    pub restriction: MultiPoly,
    /// False when the restriction is a nonzero constant.
    pub meets_exceptional: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransversalityReport {
    pub chart: ChartName,
    pub multiplicity: u32,
    pub restriction: MultiPoly,
    pub squarefree: bool,
    pub repeated_factors: Vec<MultiPoly>,
    pub factors: Vec<FactorRestriction>,
}

fn strict_restriction(chart: &Chart, p: &MultiPoly) -> Result<(u32, MultiPoly), BlowupError> {
    let pulled = chart.pull_back(p)?;
    let (k, strict) = pulled.extract_exceptional(&chart.exceptional)?;
    let restricted = strict.evaluate_var(&chart.exceptional, &Rational::zero());
    Ok((k, chart.canonical(&restricted)))
}

pub fn discriminant_pullback(chart: &Chart) -> Result<TransversalityReport, BlowupError> {
    let mut factors = Vec::new();
    for f in discriminant_factors() {
        let (k, r) = strict_restriction(chart, &f)?;
        factors.push(FactorRestriction {
            multiplicity: k,
            meets_exceptional: !r.is_constant(),
            restriction: r,
        });
    }
    let [f0, f1] = discriminant_factors();
    let (multiplicity, restriction) = strict_restriction(chart, &(f0 * f1))?;
    let (squarefree, repeated) = if restriction.is_constant() {
        (true, Vec::new())
    } else {
        (is_squarefree(&restriction)?, repeated_factors(&restriction))
    };
    Ok(TransversalityReport {
        chart: chart.name,
        multiplicity,
        restriction,
        squarefree,
        repeated_factors: repeated.iter().map(|p| chart.canonical(p)).collect(),
        factors,
    })
}

/// Maximal coordinate supports on which every point is unstable: all weights
/// on the support strictly of one sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnstableLocus {
    /// Indices of the coordinates allowed to be nonzero.
    pub support: Vec<usize>,
    /// Indices of the coordinates that vanish on the locus.
    pub vanishing: Vec<usize>,
}

impl UnstableLocus {
    pub fn codimension(&self) -> usize {
        self.vanishing.len()
    }
}

pub fn unstable_supports(weights: &[i32]) -> Result<Vec<UnstableLocus>, BlowupError> {
    if weights.is_empty() {
        return Err(BlowupError::EmptyWeights);
    }
    let mut out = Vec::new();
    for positive in [true, false] {
        let support: Vec<usize> = (0..weights.len())
            .filter(|&i| {
                if positive {
                    weights[i] > 0
                } else {
                    weights[i] < 0
                }
            })
            .collect();
        if support.is_empty() {
            continue;
        }
        let vanishing = (0..weights.len())
            .filter(|i| !support.contains(i))
            .collect();
        out.push(UnstableLocus { support, vanishing });
    }
    Ok(out)
}

/// Order of the subgroup of the torus fixing a point with exactly this
/// support: `lambda^w = 1` for every weight `w` on the support.
pub fn stabilizer_order(chart: &Chart, support: &[&str]) -> Result<u32, BlowupError> {
    if support.is_empty() {
        return Err(BlowupError::EmptySupport);
    }
    let mut g = 0u32;
    for c in support {
        let w = chart
            .weight_of(c)
            .ok_or_else(|| BlowupError::UnknownCoordinate(c.to_string()))?;
        g = g.gcd(&w.unsigned_abs());
    }
    if g == 0 {
        return Err(BlowupError::PositiveDimensional);
    }
    Ok(g)
}

/// The semistability filter on the exceptional divisor. The two unstable
/// loci of the projectivized slice are "all first-index coordinates vanish"
/// and "all second-index coordinates vanish"; in a chart this becomes: the
/// support meets both index groups, the exceptional coordinate excluded.
pub fn is_semistable_support(chart: &Chart, support: &[&str]) -> bool {
    let meets = |group: &[String]| support.iter().any(|c| group.iter().any(|g| g == c));
    meets(&chart.first_index) && meets(&chart.second_index)
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerScan {
    /// Torus-stabilizer orders met on semistable supports.
    pub orders: BTreeSet<u32>,
    pub per_chart: BTreeMap<ChartName, BTreeSet<u32>>,
    pub supports_scanned: usize,
    pub max_order: u32,
    /// Least common multiple of the orders times the component-group order.
    pub lcm: u32,
}

impl StabilizerScan {
    /// Positive divisors of the lcm.
    pub fn e_candidates(&self) -> Vec<u32> {
        (1..=self.lcm)
            .filter(|d| self.lcm.is_multiple_of(*d))
            .collect()
    }
}

pub fn scan_stabilizers() -> StabilizerScan {
    let mut orders = BTreeSet::new();
    let mut per_chart = BTreeMap::new();
    let mut scanned = 0;
    for name in ChartName::ALL {
        let ch = chart(name);
        let coords: Vec<&str> = ch.weights.iter().map(|(c, _)| c.as_str()).collect();
        let mut here = BTreeSet::new();
        for mask in 1u32..(1 << coords.len()) {
            let support: Vec<&str> = (0..coords.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| coords[i])
                .collect();
            if !is_semistable_support(&ch, &support) {
                continue;
            }
            scanned += 1;
            let order = stabilizer_order(&ch, &support).expect("nonzero chart weights");
            here.insert(order);
        }
        orders.extend(here.iter().copied());
        per_chart.insert(name, here);
    }
    let max_order = orders.iter().copied().max().unwrap_or(0);
    let lcm = orders.iter().fold(1u32, |acc, &o| acc.lcm(&o)) * COMPONENT_GROUP_ORDER;
    StabilizerScan {
        orders,
        per_chart,
        supports_scanned: scanned,
        max_order,
        lcm,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AntidiagConstraint {
    /// Fixed-point equations in `mu = lambda^-2`, including `mu^8 = 1` from
    /// preserving the residual slice `s1 = 1`.
    pub equations: Vec<MultiPoly>,
    pub constraint: MultiPoly,
}

/// Fixed points of the antidiagonal element on the exceptional divisor in
/// chart P: `(t0, t1, u0, u1) -> (-lambda^-2 t1, -lambda^14 t0, lambda^4 u1,
/// lambda^12 u0)`. Eliminating `mu` from the first equation leaves a
/// condition on `t0, t1` alone.
pub fn antidiag_fixed_constraint() -> AntidiagConstraint {
    let v = MultiPoly::var;
    let mu = v("mu");
    let p = |x: &MultiPoly, n: u32| x.pow(n).expect("small exponent");
    let unity = p(&mu, 8) - MultiPoly::one();
    // lambda^14 = mu^-7 = mu, lambda^4 = mu^-2 = mu^6, lambda^12 = mu^-6 = mu^2
    let equations = vec![
        v("t0") + &mu * &v("t1"),
        v("t1") + &mu * &v("t0"),
        v("u0") - p(&mu, 6) * v("u1"),
        v("u1") - p(&mu, 2) * v("u0"),
        unity.clone(),
    ];
    let constraint = resultant(&equations[0], &unity, "mu")
        .extend_to(&["t0".to_string(), "t1".to_string()])
        .compact()
        .normalized();
    AntidiagConstraint {
        equations,
        constraint,
    }
}

/// `(v = 0)` and `(g = 0)` meet generically transversally iff `g` restricted
/// to `v = 0` is nonzero and squarefree. A nonzero constant restriction means
/// the two do not meet at all.
pub fn meets_transversally(v: &str, g: &MultiPoly) -> Result<bool, BlowupError> {
    let r = g.evaluate_var(v, &Rational::zero()).compact();
    if r.is_zero() {
        return Ok(false);
    }
    if r.is_constant() {
        return Ok(true);
    }
    Ok(is_squarefree(&r)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientTransversality {
    /// `w1 = z1^2` is invariant under `z1 -> -z1`.
    pub invariant: bool,
    pub t_vs_w1: bool,
    pub t_vs_z1_squared: bool,
    pub t_vs_z2: bool,
}

impl QuotientTransversality {
    pub fn holds(&self) -> bool {
        self.invariant && self.t_vs_w1
    }
}

/// The local chart `(t, z1, .., z4)` at the boundary, divided by
/// `z1 -> -z1`, has coordinates `(t, w1 = z1^2, z2, z3, z4)`.
pub fn quotient_chart_transversality() -> QuotientTransversality {
    let v = MultiPoly::var;
    let z1_sq = v("z1").pow(2).unwrap();
    let flip: BTreeMap<String, MultiPoly> = BTreeMap::from([("z1".to_string(), -v("z1"))]);
    let invariant = z1_sq.substitute_partial(&flip).unwrap() == z1_sq;
    let ok = |g: &MultiPoly| meets_transversally("t", g).expect("nonconstant restriction");
    QuotientTransversality {
        invariant,
        t_vs_w1: ok(&v("w1")),
        t_vs_z1_squared: ok(&z1_sq),
        t_vs_z2: ok(&v("z2")),
    }
}
