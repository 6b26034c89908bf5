//! Exact multivariate polynomials over the rationals.
//!
//! A [`MultiPoly`] carries its own ordered variable list. Binary operations on
//! polynomials with different variable lists first extend both to the union
//! (left operand's order first, then unseen variables of the right operand in
//! their own order), so results are deterministic for a fixed construction
//! order. Terms are kept in graded-lexicographic order, where the first
//! variable of the list is the most significant.

mod gcd;
mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use parse::parse_poly;

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Largest exponent allowed for a single variable.
pub const MAX_EXPONENT: u32 = 1 << 15;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Serde adapters writing rationals as `"p/q"` strings.
pub mod rational_serde {
    use super::Rational;
    use serde::Serializer;

    pub fn one<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn pair<S: Serializer>(p: &(Rational, Rational), s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&p.0.to_string())?;
        t.serialize_element(&p.1.to_string())?;
        t.end()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("exponent {0} exceeds the per-variable limit of 2^15")]
    ExponentOverflow(u64),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no substitution given for variable `{0}`")]
    UnmappedVariable(String),
    #[error("the zero polynomial has no exceptional factorization")]
    ZeroPolynomial,
    #[error("squarefreeness is not defined for constant polynomials")]
    ConstantPolynomial,
    #[error("division is not exact")]
    InexactDivision,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        let exps = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| checked_exponent(a as u64 + b as u64))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Monomial(exps))
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, divisor: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect())
    }
}

fn checked_exponent(e: u64) -> Result<u16, PolyError> {
    if e > MAX_EXPONENT as u64 {
        Err(PolyError::ExponentOverflow(e))
    } else {
        Ok(e as u16)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), Rational::one());
        MultiPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs over `vars`.
    pub fn from_terms<I>(vars: &[&str], terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
            let exps = exps
                .into_iter()
                .map(|e| checked_exponent(e as u64))
                .collect::<Result<Vec<_>, _>>()?;
            add_term(&mut map, Monomial(exps), c);
        }
        Ok(MultiPoly { vars, terms: map })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant coefficient (zero if absent).
    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            Some(i) => self.terms.keys().map(|m| m.0[i] as u32).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Variables that occur with positive exponent in some term, in list order.
    pub fn occurring_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.0[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Leading term in graded-lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// occurring variable. Absent variables are appended to the list.
    pub fn extend_to(&self, vars: &[String]) -> MultiPoly {
        let mut target: Vec<String> = vars.to_vec();
        for v in &self.vars {
            if !target.contains(v) {
                target.push(v.clone());
            }
        }
        if target == self.vars {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v).unwrap())
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                exps[map[i]] = e;
            }
            terms.insert(Monomial(exps), c.clone());
        }
        MultiPoly {
            vars: target,
            terms,
        }
    }

    /// Drops variables that do not occur.
    pub fn compact(&self) -> MultiPoly {
        let keep = self.occurring_vars();
        if keep.len() == self.vars.len() {
            return self.clone();
        }
        let idx: Vec<usize> = keep.iter().map(|v| self.var_index(v).unwrap()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial(idx.iter().map(|&i| m.0[i]).collect()), c.clone()))
            .collect();
        MultiPoly { vars: keep, terms }
    }

    fn aligned(&self, other: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let mut union = self.vars.clone();
        for v in &other.vars {
            if !union.contains(v) {
                union.push(v.clone());
            }
        }
        (self.extend_to(&union), other.extend_to(&union))
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        let (a, b) = self.aligned(other);
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.checked_mul(mb)?;
                let entry = acc.entry(m).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(MultiPoly {
            vars: a.vars,
            terms,
        })
    }

    pub fn pow(&self, n: u32) -> Result<MultiPoly, PolyError> {
        let mut result = MultiPoly::one().extend_to(&self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Multiplies by `var^k`.
    pub fn mul_var_power(&self, var: &str, k: u32) -> Result<MultiPoly, PolyError> {
        let mut p = self.clone();
        if !p.vars.iter().any(|v| v == var) {
            p = p.extend_to(&[var.to_string()]);
        }
        let i = p.var_index(var).unwrap();
        let mut terms = BTreeMap::new();
        for (m, c) in p.terms {
            let mut exps = m.0;
            exps[i] = checked_exponent(exps[i] as u64 + k as u64)?;
            terms.insert(Monomial(exps), c);
        }
        Ok(MultiPoly {
            vars: p.vars,
            terms,
        })
    }

    /// Composes `self` with the substitution `var -> image`. Every occurring
    /// variable must be mapped.
    pub fn substitute(&self, sigma: &BTreeMap<String, MultiPoly>) -> Result<MultiPoly, PolyError> {
        for v in self.occurring_vars() {
            if !sigma.contains_key(&v) {
                return Err(PolyError::UnmappedVariable(v));
            }
        }
        let mut power_cache: HashMap<(usize, u16), MultiPoly> = HashMap::new();
        let mut result = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let power = match power_cache.entry((i, e)) {
                    std::collections::hash_map::Entry::Occupied(o) => o.into_mut(),
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(sigma[&self.vars[i]].pow(e as u32)?)
                    }
                };
                term = term.checked_mul(power)?;
            }
            result = &result + &term;
        }
        Ok(result)
    }

    /// Substitutes only the listed variables, leaving the others untouched.
    pub fn substitute_partial(
        &self,
        sigma: &BTreeMap<String, MultiPoly>,
    ) -> Result<MultiPoly, PolyError> {
        let mut full = sigma.clone();
        for v in &self.vars {
            full.entry(v.clone()).or_insert_with(|| MultiPoly::var(v));
        }
        Ok(self.substitute(&full)?.extend_to(&self.vars))
    }

    /// Sets `var` to the constant `value`.
    pub fn evaluate_var(&self, var: &str, value: &Rational) -> MultiPoly {
        let Some(i) = self.var_index(var) else {
            return self.clone();
        };
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut exps = m.0.clone();
            exps[i] = 0;
            let factor = if e == 0 {
                Rational::one()
            } else {
                num_traits::pow(value.clone(), e as usize)
            };
            add_term(&mut terms, Monomial(exps), c * factor);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn partial_derivative(&self, var: &str) -> Result<MultiPoly, PolyError> {
        let i = self
            .var_index(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] = e - 1;
            terms.insert(Monomial(exps), c * int(e as i64));
        }
        Ok(MultiPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Splits `self = var^k * q` with `var` not dividing `q`.
    pub fn extract_exceptional(&self, var: &str) -> Result<(u32, MultiPoly), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let Some(i) = self.var_index(var) else {
            return Ok((0, self.clone()));
        };
        let k = self.terms.keys().map(|m| m.0[i]).min().unwrap();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.0.clone();
                exps[i] -= k;
                (Monomial(exps), c.clone())
            })
            .collect();
        Ok((
            k as u32,
            MultiPoly {
                vars: self.vars.clone(),
                terms,
            },
        ))
    }

    /// Coefficients of `self` viewed as a polynomial in `var`, indexed by degree.
    pub fn coefficients_in(&self, var: &str) -> Vec<MultiPoly> {
        let Some(i) = self.var_index(var) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(var) as usize;
        let mut out: Vec<BTreeMap<Monomial, Rational>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let e = exps[i] as usize;
            exps[i] = 0;
            out[e].insert(Monomial(exps), c.clone());
        }
        out.into_iter()
            .map(|terms| MultiPoly {
                vars: self.vars.clone(),
                terms,
            })
            .collect()
    }

    /// Exact quotient `self / divisor`; fails if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::InexactDivision);
        }
        let (mut rem, d) = self.aligned(divisor);
        let (dm, dc) = {
            let (m, c) = d.leading_term().unwrap();
            (m.clone(), c.clone())
        };
        let mut quotient: BTreeMap<Monomial, Rational> = BTreeMap::new();
        while let Some((rm, rc)) = rem.leading_term() {
            if !dm.divides(rm) {
                return Err(PolyError::InexactDivision);
            }
            let qm = rm.quotient(&dm);
            let qc = rc / &dc;
            let shift = MultiPoly {
                vars: d.vars.clone(),
                terms: BTreeMap::from([(qm.clone(), qc.clone())]),
            };
            rem = &rem - &shift.checked_mul(&d)?;
            add_term(&mut quotient, qm, qc);
        }
        Ok(MultiPoly {
            vars: d.vars,
            terms: quotient,
        })
    }

    /// Scales to integer coefficients with unit content and a positive
    /// leading coefficient.
    pub fn normalized(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(&(c.numer() * (&lcm / c.denom())));
        }
        let mut factor = Rational::new(lcm, g);
        if self.leading_coefficient().is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Integer coefficients, if every coefficient is integral.
    pub fn integer_coefficients(&self) -> Option<Vec<(Monomial, i64)>> {
        self.terms
            .iter()
            .map(|(m, c)| {
                if c.is_integer() {
                    c.to_integer().to_i64().map(|n| (m.clone(), n))
                } else {
                    None
                }
            })
            .collect()
    }
}

fn add_term(map: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&m) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                map.remove(&m);
            }
        }
        None => {
            map.insert(m, c);
        }
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let (mut a, b) = self.aligned(rhs);
        for (m, c) in b.terms {
            add_term(&mut a.terms, m, c);
        }
        a
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Panics on exponent overflow; use [`MultiPoly::checked_mul`] to handle it.
impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.checked_mul(rhs)
            .expect("exponent overflow in polynomial product")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &'a MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            self.vars[i].clone()
                        } else {
                            format!("{}^{}", self.vars[i], e)
                        }
                    })
                    .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Serialized as its printed form.
impl serde::Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::str::FromStr for MultiPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

/// Discriminant of the depressed quartic `x^4 + a x^2 + b x + c`.
pub fn discriminant_quartic(a: &MultiPoly, b: &MultiPoly, c: &MultiPoly) -> MultiPoly {
    let p = |x: &MultiPoly, n: u32| x.pow(n).expect("exponent overflow");
    let k = MultiPoly::int;
    k(256) * p(c, 3) - k(128) * p(a, 2) * p(c, 2) + k(144) * a * &p(b, 2) * c.clone()
        - k(27) * p(b, 4)
        + k(16) * p(a, 4) * c.clone()
        - k(4) * p(a, 3) * p(b, 2)
}

pub use gcd::{
    gcd, is_squarefree, joint_gcd_with_partials, prem, radical, repeated_factors, resultant,
};
