//! Independent oracles shared by the integration tests. None of these call
//! into the algorithms they check.
#![allow(dead_code)]

use std::collections::BTreeMap;

use modpoints::polyalg::{int, MultiPoly};

/// Integer determinant by fraction-free Bareiss elimination.
pub fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Sylvester resultant of two univariate integer polynomials given by
/// coefficients from the leading one down.
pub fn sylvester_resultant(f: &[i128], g: &[i128]) -> i128 {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![0; size];
        r[i..i + m + 1].copy_from_slice(f);
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![0; size];
        r[i..i + n + 1].copy_from_slice(g);
        rows.push(r);
    }
    bareiss_det(rows)
}

/// Discriminant of the monic quartic `x^4 + a x^2 + b x + c` as `Res(f, f')`.
pub fn quartic_discriminant_oracle(a: i128, b: i128, c: i128) -> i128 {
    sylvester_resultant(&[1, 0, a, b, c], &[4, 0, 2 * a, b])
}

/// Whether `x^4 + a x^2 + b x + c` has a repeated complex root, by a
/// Euclidean gcd of `f` and `f'` over the rationals with exact fractions.
pub fn quartic_has_repeated_root(a: i64, b: i64, c: i64) -> bool {
    use num_rational::Rational64;
    type P = Vec<Rational64>;
    fn trim(p: &mut P) {
        while p.len() > 1 && p.last() == Some(&Rational64::from_integer(0)) {
            p.pop();
        }
    }
    // coefficients from the constant term up
    fn rem(mut a: P, b: &P) -> P {
        while a.len() >= b.len() && !(a.len() == 1 && a[0] == Rational64::from_integer(0)) {
            let shift = a.len() - b.len();
            let q = *a.last().unwrap() / *b.last().unwrap();
            for (i, bc) in b.iter().enumerate() {
                a[i + shift] -= q * bc;
            }
            a.pop();
            trim(&mut a);
            if a.is_empty() {
                a.push(Rational64::from_integer(0));
            }
        }
        a
    }
    let r = |n: i64| Rational64::from_integer(n);
    let mut f: P = vec![r(c), r(b), r(a), r(0), r(1)];
    let mut g: P = vec![r(b), r(2 * a), r(0), r(4)];
    trim(&mut g);
    while !(g.len() == 1 && g[0] == r(0)) {
        let nr = rem(f, &g);
        f = g;
        g = nr;
    }
    f.len() > 1
}

/// Sparse polynomial over a fixed variable list, for independent ring
/// arithmetic.
pub type Naive = BTreeMap<Vec<u32>, i64>;

pub fn naive_mul(p: &Naive, q: &Naive) -> Naive {
    let mut out = Naive::new();
    for (e1, c1) in p {
        for (e2, c2) in q {
            let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
            *out.entry(e).or_insert(0) += c1 * c2;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn naive_add(p: &Naive, q: &Naive) -> Naive {
    let mut out = p.clone();
    for (e, c) in q {
        *out.entry(e.clone()).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn to_poly(vars: &[&str], p: &Naive) -> MultiPoly {
    MultiPoly::from_terms(vars, p.iter().map(|(e, &c)| (e.clone(), int(c)))).unwrap()
}

/// Dimension of the swap invariants of `H (x) H` in each complex degree by
/// counting orbits of the swap on ordered pairs of basis vectors.
pub fn sym_square_orbit_count(a: &[u64]) -> Vec<u64> {
    let basis: Vec<usize> = a
        .iter()
        .enumerate()
        .flat_map(|(d, &n)| std::iter::repeat_n(d, n as usize))
        .collect();
    let mut pairs = vec![0u64; 2 * a.len() - 1];
    let mut fixed = vec![0u64; 2 * a.len() - 1];
    for (i, &di) in basis.iter().enumerate() {
        for (j, &dj) in basis.iter().enumerate() {
            pairs[di + dj] += 1;
            if i == j {
                fixed[di + dj] += 1;
            }
        }
    }
    // Burnside for the group of order 2
    pairs.iter().zip(&fixed).map(|(p, f)| (p + f) / 2).collect()
}

/// Hilbert-Mumford from an explicit binary form. Point `j` is moved to
/// `x1 = 0`, the others to distinct finite points, and the form
/// `x1^(m_j) prod (x0 - p x1)^(m_i)` is expanded. The one-parameter subgroup
/// `diag(t, 1/t)` gives the weight `a - b` to `x0^a x1^b`; `mu_j` is the
/// largest weight present. Returns `(all mu > 0, all mu >= 0)`.
pub fn hilbert_mumford_oracle(parts: &[u32]) -> (bool, bool) {
    let x0 = MultiPoly::var("x0");
    let x1 = MultiPoly::var("x1");
    let mut stable = true;
    let mut semistable = true;
    for j in 0..parts.len() {
        let mut form = x1.pow(parts[j]).unwrap();
        let mut p = 1i64;
        for (i, &m) in parts.iter().enumerate() {
            if i == j {
                continue;
            }
            let lin = &x0 - &(&x1 * &MultiPoly::int(p));
            form = form * lin.pow(m).unwrap();
            p += 1;
        }
        let form = form.extend_to(&["x0".to_string(), "x1".to_string()]);
        let mu = form
            .terms()
            .map(|(mono, _)| mono.exponents()[0] as i64 - mono.exponents()[1] as i64)
            .max()
            .unwrap();
        stable &= mu > 0;
        semistable &= mu >= 0;
    }
    (stable, semistable)
}

/// Every theorem, lemma, proposition and equation label a report may cite.
pub const ANCHORS: &[&str] = &[
    "section:preparation",
    "sec:othercases",
    "lem:stabilizers",
    "lem:Luna_slice",
    "eq:action_diag",
    "eq:action_anti_diag",
    "lem:unstable_locus",
    "thm:nonord_nontransversal",
    "eq:Luna_slice_P",
    "prop:e_not_divisible_by_5",
    "lem:finite_quadratic_form",
    "thm:nonord_transversal",
    "eq:pull_back",
    "eq:pull_back_toroidal",
    "eq:can_bindle_M^K_{ord}",
    "eq:Kondoform",
    "prop:normal_bundles",
    "nonord_tor_K",
    "nonord_Kirwan_K",
    "thm:not_K_equiv",
    "prop:mmp",
    "thm:coh_previous_work",
    "thm:coh_ordered_tor",
    "prop:semi-stable_locus",
    "prop:main_correction",
    "prop:extra_correction",
    "thm:coh_M^K",
    "prop:coh_boundary",
    "thm:coh_tor",
];
