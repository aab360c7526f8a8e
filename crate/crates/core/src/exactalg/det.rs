//! Fraction-free determinants of matrices with polynomial entries.
//!
//! Bareiss elimination over ℤ[x] after clearing denominators row by row;
//! the Sylvester identity keeps every intermediate division exact, which
//! is what controls coefficient swell for the Wronskian determinants.

use super::poly::{Poly, Rat, ZPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

/// Determinant of a square matrix of rational polynomials.
pub fn poly_mat_det(mat: &[Vec<Poly>]) -> Poly {
    let n = mat.len();
    if n == 0 {
        return Poly::one();
    }
    debug_assert!(mat.iter().all(|row| row.len() == n));

    // Row scaling to integer entries; det picks up the product of scales.
    let mut scale = Rat::one();
    let mut m: Vec<Vec<ZPoly>> = Vec::with_capacity(n);
    for row in mat {
        let mut den = BigInt::one();
        for entry in row {
            for c in entry.coeffs() {
                den = den.lcm(c.denom());
            }
        }
        scale = scale * Rat::new(BigInt::one(), den.clone());
        let factor = Rat::from_integer(den);
        m.push(
            row.iter()
                .map(|entry| {
                    let (c, z) = entry.scale(&factor).to_zpoly();
                    debug_assert!(c.is_one() || entry.is_zero() || z.is_zero());
                    z
                })
                .collect(),
        );
    }

    let det_z = bareiss_det(&mut m);
    Poly::from_zpoly(&det_z).scale(&scale)
}

fn bareiss_det(m: &mut [Vec<ZPoly>]) -> ZPoly {
    let n = m.len();
    let mut sign = 1i64;
    let mut prev = ZPoly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return ZPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.exact_div(&prev);
            }
            m[i][k] = ZPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        ZPoly::zero().sub(&d)
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_det_2x2() {
        // det [[x, 1], [1, x]] = x^2 - 1
        let x = Poly::x();
        let one = Poly::one();
        let m = vec![vec![x.clone(), one.clone()], vec![one, x]];
        assert_eq!(poly_mat_det(&m), Poly::from_i64s(&[-1, 0, 1]));
    }

    #[test]
    fn test_det_with_zero_pivot() {
        // det [[0, 1], [x, 0]] = -x
        let m = vec![
            vec![Poly::zero(), Poly::one()],
            vec![Poly::x(), Poly::zero()],
        ];
        assert_eq!(poly_mat_det(&m), Poly::from_i64s(&[0, -1]));
    }

    #[test]
    fn test_det_singular() {
        let m = vec![
            vec![Poly::x(), Poly::x()],
            vec![Poly::one(), Poly::one()],
        ];
        assert!(poly_mat_det(&m).is_zero());
    }
}
