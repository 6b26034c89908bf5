//! Tensor products, swap invariants and the cusp form of the decomposition
//! theorem.

use super::{BettiTable, CohomologyError};

/// Betti table of a product (Kunneth).
pub fn tensor_product(a: &BettiTable, b: &BettiTable) -> BettiTable {
    let mut out = vec![0u64; a.even().len() + b.even().len() - 1];
    for (i, &x) in a.even().iter().enumerate() {
        for (j, &y) in b.even().iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    BettiTable::new(&out)
}

/// Dimensions of the invariants of the factor swap on `H (x) H` for `H`
/// concentrated in even degrees. In complex degree `k`, pairs of distinct
/// degrees `i < j` contribute `a_i a_j` and the diagonal `i = k/2`
/// contributes `Sym^2`, of dimension `a(a+1)/2`.
pub fn invariant_sym_square(h: &BettiTable) -> BettiTable {
    let a = h.even();
    let m = a.len();
    let mut out = vec![0u64; 2 * m - 1];
    for (k, slot) in out.iter_mut().enumerate() {
        for i in 0..m {
            let j = k as isize - i as isize;
            if j <= i as isize || j >= m as isize {
                continue;
            }
            *slot += a[i] * a[j as usize];
        }
        if k % 2 == 0 {
            let d = a[k / 2];
            *slot += d * (d + 1) / 2;
        }
    }
    BettiTable::new(&out)
}

/// Betti numbers of a toroidal compactification from the intersection
/// cohomology `ih` of the Baily-Borel space, the Betti table of the boundary
/// divisor over one cusp, and the number of cusps. In real degree `d`,
/// `2 <= d < n` adds `cusps * b_(d-2)(fiber)`; above the middle the
/// correction is mirrored, `c_d = c_(2n-d)`.
///
/// This is the form reverse-engineered to fit both the ordered and the
/// unordered quotient; it leaves the middle degree undetermined when `n`
/// is even.
pub fn decomposition_assembly(
    ih: &BettiTable,
    fiber: &BettiTable,
    cusps: u64,
    n: usize,
) -> Result<BettiTable, CohomologyError> {
    if ih.dimension() != n {
        return Err(CohomologyError::LengthMismatch(format!(
            "intersection cohomology has dimension {}, expected {n}",
            ih.dimension()
        )));
    }
    if fiber.dimension() + 1 != n {
        return Err(CohomologyError::LengthMismatch(format!(
            "boundary fiber has dimension {}, expected {}",
            fiber.dimension(),
            n.saturating_sub(1)
        )));
    }
    if n.is_multiple_of(2) && cusps > 0 {
        return Err(CohomologyError::EvenDimension(n));
    }
    let lower = |d: usize| -> u64 {
        if d >= 2 && d < n {
            cusps * fiber.betti(d - 2)
        } else {
            0
        }
    };
    let even: Vec<u64> = (0..=n)
        .map(|j| {
            let d = 2 * j;
            let c = if d < n { lower(d) } else { lower(2 * n - d) };
            ih.even()[j] + c
        })
        .collect();
    Ok(BettiTable::new(&even))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_square_examples() {
        let t = |v: &[u64]| invariant_sym_square(&BettiTable::new(v)).even().to_vec();
        assert_eq!(t(&[1, 1, 1]), vec![1, 1, 2, 1, 1]);
        assert_eq!(t(&[1]), vec![1]);
        assert_eq!(t(&[1, 2]), vec![1, 2, 3]);
    }

    #[test]
    fn assembly_examples() {
        let ih = BettiTable::new(&[1, 8, 29, 29, 8, 1]);
        let fiber = BettiTable::new(&[1, 2, 3, 2, 1]);
        let out = decomposition_assembly(&ih, &fiber, 35, 5).unwrap();
        assert_eq!(out.even(), &[1, 43, 99, 99, 43, 1]);

        let ih = BettiTable::new(&[1, 1, 2, 2, 1, 1]);
        let fiber = BettiTable::new(&[1, 1, 2, 1, 1]);
        let out = decomposition_assembly(&ih, &fiber, 1, 5).unwrap();
        assert_eq!(out.even(), &[1, 2, 3, 3, 2, 1]);

        assert_eq!(decomposition_assembly(&ih, &fiber, 0, 5).unwrap(), ih);
    }

    #[test]
    fn assembly_rejects_bad_shapes() {
        let ih = BettiTable::new(&[1, 1, 1, 1]);
        let fiber = BettiTable::new(&[1, 1, 1]);
        assert!(decomposition_assembly(&ih, &fiber, 1, 3).is_ok());
        assert!(matches!(
            decomposition_assembly(&ih, &fiber, 1, 5),
            Err(CohomologyError::LengthMismatch(_))
        ));
        let ih = BettiTable::new(&[1, 1, 1, 1, 1]);
        let fiber = BettiTable::new(&[1, 1, 1, 1]);
        assert_eq!(
            decomposition_assembly(&ih, &fiber, 2, 4),
            Err(CohomologyError::EvenDimension(4))
        );
    }
}
