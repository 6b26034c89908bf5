//! Greatest common divisors, pseudo-remainders, resultants and
//! squarefreeness, all by recursive content / primitive-part reduction.

use super::{MultiPoly, PolyError};

/// Pseudo-remainder of `a` by `b` as polynomials in `var`:
/// `lc(b)^(deg a - deg b + 1) * a mod b`.
pub fn prem(a: &MultiPoly, b: &MultiPoly, var: &str) -> MultiPoly {
    assert!(!b.is_zero(), "pseudo-division by zero");
    let db = b.degree_in(var);
    let da = a.degree_in(var);
    if da < db || a.is_zero() {
        return a.clone();
    }
    let lb = lc_in(b, var);
    let mut r = a.clone();
    let mut steps = 0;
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = lc_in(&r, var);
        let shift = lr.mul_var_power(var, dr - db).expect("exponent overflow");
        r = &(&lb * &r) - &(&shift * b);
        steps += 1;
    }
    let missing = da - db + 1 - steps;
    if missing > 0 {
        r = &r * &lb.pow(missing).expect("exponent overflow");
    }
    r
}

fn lc_in(p: &MultiPoly, var: &str) -> MultiPoly {
    p.coefficients_in(var).pop().unwrap_or_else(MultiPoly::zero)
}

/// Content (gcd of coefficients in `var`) and primitive part.
fn content_in(p: &MultiPoly, var: &str) -> (MultiPoly, MultiPoly) {
    let mut c = MultiPoly::zero();
    for coeff in p.coefficients_in(var) {
        if coeff.is_zero() {
            continue;
        }
        c = gcd_rec(&c, &coeff);
        if c.is_constant() {
            break;
        }
    }
    let pp = p.div_exact(&c).expect("content divides its polynomial");
    (c, pp)
}

/// A greatest common divisor, normalized to integer coefficients with unit
/// content and a positive leading coefficient. `gcd(p, 0)` is `p` normalized.
pub fn gcd(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    let (a, b) = p.aligned(q);
    gcd_rec(&a, &b).extend_to(a.vars())
}

fn gcd_rec(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return q.normalized();
    }
    if q.is_zero() {
        return p.normalized();
    }
    if p.is_constant() || q.is_constant() {
        return MultiPoly::one();
    }
    let (p, q) = p.aligned(q);
    let var = p
        .vars()
        .iter()
        .find(|v| p.degree_in(v) > 0 || q.degree_in(v) > 0)
        .cloned()
        .unwrap();
    if p.degree_in(&var) == 0 {
        let (cq, _) = content_in(&q, &var);
        return gcd_rec(&p, &cq);
    }
    if q.degree_in(&var) == 0 {
        let (cp, _) = content_in(&p, &var);
        return gcd_rec(&cp, &q);
    }
    let (cp, pp) = content_in(&p, &var);
    let (cq, pq) = content_in(&q, &var);
    let c = gcd_rec(&cp, &cq);
    let g = subresultant_gcd(&pp, &pq, &var);
    (&c * &g).normalized()
}

/// Gcd of two primitive polynomials in `var` by the subresultant sequence.
fn subresultant_gcd(a: &MultiPoly, b: &MultiPoly, var: &str) -> MultiPoly {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut g = MultiPoly::one();
    let mut h = MultiPoly::one();
    loop {
        let delta = a.degree_in(var) - b.degree_in(var);
        let r = prem(&a, &b, var);
        if r.is_zero() {
            return content_in(&b, var).1.normalized();
        }
        if r.degree_in(var) == 0 {
            return MultiPoly::one();
        }
        a = b;
        let divisor = &g * &h.pow(delta).unwrap();
        b = r
            .div_exact(&divisor)
            .expect("subresultant division is exact");
        g = lc_in(&a, var);
        h = next_h(&h, &g, delta);
    }
}

fn next_h(h: &MultiPoly, g: &MultiPoly, delta: u32) -> MultiPoly {
    match delta {
        0 => h.clone(),
        1 => g.clone(),
        d => g
            .pow(d)
            .unwrap()
            .div_exact(&h.pow(d - 1).unwrap())
            .expect("subresultant division is exact"),
    }
}

/// Resultant of `p` and `q` with respect to `var` (Sylvester convention,
/// rows of `p` first), computed by the subresultant algorithm.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: &str) -> MultiPoly {
    if p.is_zero() || q.is_zero() {
        return MultiPoly::zero();
    }
    let (mut a, mut b) = p.aligned(q);
    let mut sign_negative = false;
    if a.degree_in(var) < b.degree_in(var) {
        if a.degree_in(var) % 2 == 1 && b.degree_in(var) % 2 == 1 {
            sign_negative = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.degree_in(var) == 0 {
        return signed(b.pow(a.degree_in(var)).unwrap(), sign_negative);
    }
    let mut g = MultiPoly::one();
    let mut h = MultiPoly::one();
    loop {
        let da = a.degree_in(var);
        let db = b.degree_in(var);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_negative = !sign_negative;
        }
        let r = prem(&a, &b, var);
        a = b;
        let divisor = &g * &h.pow(delta).unwrap();
        b = r
            .div_exact(&divisor)
            .expect("subresultant division is exact");
        g = lc_in(&a, var);
        h = next_h(&h, &g, delta);
        if b.is_zero() {
            return MultiPoly::zero();
        }
        if b.degree_in(var) == 0 {
            break;
        }
    }
    let da = a.degree_in(var);
    let lb = b;
    let h = if da == 0 {
        h
    } else {
        lb.pow(da)
            .unwrap()
            .div_exact(&h.pow(da - 1).unwrap())
            .expect("subresultant division is exact")
    };
    signed(h, sign_negative)
}

fn signed(p: MultiPoly, negative: bool) -> MultiPoly {
    if negative {
        -p
    } else {
        p
    }
}

/// Gcd of `p` with all of its first partial derivatives. Constant exactly
/// when `p` is squarefree (characteristic zero).
pub fn joint_gcd_with_partials(p: &MultiPoly) -> MultiPoly {
    let mut g = p.normalized();
    for v in p.occurring_vars() {
        if g.is_constant() {
            break;
        }
        let d = p.partial_derivative(&v).expect("occurring variable");
        g = gcd(&g, &d);
    }
    g
}

pub fn is_squarefree(p: &MultiPoly) -> Result<bool, PolyError> {
    if p.is_constant() {
        return Err(PolyError::ConstantPolynomial);
    }
    Ok(joint_gcd_with_partials(p).is_constant())
}

/// Product of the distinct irreducible factors of `p`, up to a constant.
pub fn radical(p: &MultiPoly) -> MultiPoly {
    if p.is_constant() {
        return MultiPoly::one();
    }
    let g = joint_gcd_with_partials(p);
    p.normalized()
        .div_exact(&g)
        .expect("gcd divides")
        .normalized()
}

/// Factors appearing in `p` with multiplicity at least two: every variable
/// dividing the repeated part, followed by the radical of whatever repeated
/// part is left once those monomial factors are removed.
pub fn repeated_factors(p: &MultiPoly) -> Vec<MultiPoly> {
    if p.is_constant() {
        return Vec::new();
    }
    let mut g = joint_gcd_with_partials(p);
    let mut out = Vec::new();
    for v in p.vars().to_vec() {
        if g.is_constant() {
            break;
        }
        let (k, rest) = g.extract_exceptional(&v).expect("nonzero gcd");
        if k > 0 {
            out.push(MultiPoly::var(&v));
            g = rest;
        }
    }
    if !g.is_constant() {
        out.push(radical(&g));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{int, MultiPoly};

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn gcd_with_zero_normalizes() {
        assert_eq!(gcd(&p("-2*x^2 + 4*y"), &MultiPoly::zero()), p("x^2 - 2*y"));
        assert!(gcd(&MultiPoly::zero(), &MultiPoly::zero()).is_zero());
    }

    #[test]
    fn gcd_of_monomials() {
        assert_eq!(gcd(&p("x^2*y"), &p("x*y^2")), p("x*y"));
    }

    #[test]
    fn gcd_of_binomial_products() {
        let a = p("x + y").pow(2).unwrap() * p("x - y");
        let b = p("x + y") * p("x - y").pow(2).unwrap();
        let g = gcd(&a, &b);
        assert_eq!(g, p("x^2 - y^2"));
        assert!(a.div_exact(&g).is_ok());
        assert!(b.div_exact(&g).is_ok());
    }

    #[test]
    fn gcd_coprime_is_one() {
        let g = gcd(&p("x^2 + y^2 + 1"), &p("x*y - 3"));
        assert_eq!(g, MultiPoly::one());
    }

    #[test]
    fn squarefree_cases() {
        assert!(is_squarefree(&p("u0*u1")).unwrap());
        let cubes = p("256*u0^3") * p("256*u1^3");
        assert!(!is_squarefree(&cubes).unwrap());
        assert_eq!(repeated_factors(&cubes), vec![p("u0"), p("u1")]);
        assert_eq!(
            is_squarefree(&MultiPoly::int(5)),
            Err(PolyError::ConstantPolynomial)
        );
    }

    #[test]
    fn squarefree_distinguishes_nonmonomial_squares() {
        let sq = p("x^2 + y + 1").pow(2).unwrap() * p("x");
        assert!(!is_squarefree(&sq).unwrap());
        assert_eq!(repeated_factors(&sq), vec![p("x^2 + y + 1")]);
    }

    #[test]
    fn resultant_of_linear_and_quadratic() {
        // Res_x(x - a, x^2 - 2) = a^2 - 2
        let r = resultant(&p("x - a"), &p("x^2 - 2"), "x");
        assert_eq!(r, p("a^2 - 2"));
    }

    #[test]
    fn resultant_swap_sign() {
        // deg 1 and deg 3: Res(q,p) = (-1)^3 Res(p,q)
        let f = p("x + 2");
        let g = p("x^3 + x + 1");
        let r1 = resultant(&f, &g, "x");
        let r2 = resultant(&g, &f, "x");
        assert_eq!(r1, -r2.clone());
        // Res(x + 2, g) = g(-2)
        assert_eq!(r1, MultiPoly::constant(int(-9)));
    }

    #[test]
    fn prem_identity() {
        let a = p("x^3*y + x + 1");
        let b = p("y*x + 2");
        let r = prem(&a, &b, "x");
        assert!(r.degree_in("x") < 1);
        // lc(b)^3 * a - r is divisible by b
        let lhs = &p("y").pow(3).unwrap() * &a - r;
        assert!(lhs.div_exact(&b).is_ok());
    }
}
