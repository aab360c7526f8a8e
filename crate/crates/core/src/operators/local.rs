//! Per-pole local data: squarefree pole classes, modified exponents and
//! the leading Laurent coefficients.
//!
//! A pole class is treated as one quotient-ring computation. When a₋₂ is
//! not constant on a class, the class is split along the level sets
//! a₋₂ = m(m+1); the candidate list is finite because the values of a₋₂
//! are roots of the characteristic polynomial of its multiplication
//! matrix, so they obey the Cauchy bound.

use crate::error::{Error, Result};
use crate::exactalg::{
    laurent_expand, poly_mat_det, rat, ratio, Poly, QrElem, Rat, RationalFunction,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Modified exponent and leading expansion data at one pole class.
#[derive(Clone, Debug)]
pub struct LocalDatum {
    /// Squarefree monic modulus; its roots are the poles treated
    /// simultaneously.
    pub class: Poly,
    /// 2m for the half-integer modified exponent m > 0
    /// (a₋₂ = m(m+1)).
    pub two_m: u64,
    pub a_minus2: QrElem,
    pub a_minus1: QrElem,
}

impl LocalDatum {
    pub fn m(&self) -> Rat {
        ratio(self.two_m as i64, 2)
    }

    pub fn m_is_integer(&self) -> bool {
        self.two_m % 2 == 0
    }
}

/// m(m+1) as a rational from 2m.
pub fn triangular_value(two_m: u64) -> Rat {
    ratio((two_m * (two_m + 2)) as i64, 4)
}

/// Inverse of [`triangular_value`]: Some(2m) when v = m(m+1) for a
/// half-integer m > 0.
pub fn triangular_two_m(v: &Rat) -> Option<u64> {
    // 4v + 1 = (2m+1)²
    let w = v * rat(4) + rat(1);
    if !w.is_integer() || !w.is_positive() {
        return None;
    }
    let w = w.to_integer();
    let r = w.sqrt();
    if &r * &r != w {
        return None;
    }
    let two_m = r - BigInt::one();
    if two_m.is_positive() {
        two_m.to_u64()
    } else {
        None
    }
}

/// Characteristic polynomial (in a fresh variable) of multiplication by
/// `a` on ℚ[t]/(modulus).
pub fn charpoly(a: &QrElem) -> Poly {
    let cols = a.mult_matrix();
    let d = cols.len();
    let mut rows = vec![vec![Poly::zero(); d]; d];
    for (j, col) in cols.iter().enumerate() {
        for (i, entry) in col.iter().enumerate() {
            let mut p = Poly::constant(-entry.clone());
            if i == j {
                p = &p + &Poly::x();
            }
            rows[i][j] = p;
        }
    }
    poly_mat_det(&rows)
}

fn cauchy_bound(p: &Poly) -> Rat {
    let lc = p.leading_coeff();
    let mut worst = Rat::zero();
    for c in &p.coeffs()[..p.deg().max(0) as usize] {
        let q = (c / &lc).abs();
        if q > worst {
            worst = q;
        }
    }
    worst + Rat::one()
}

/// Exponent data for one squarefree class of double poles of u,
/// splitting on demand. Every returned subclass has a constant
/// triangular a₋₂.
fn exponents_on_class(u: &RationalFunction, class: &Poly) -> Result<Vec<LocalDatum>> {
    let mut work = vec![class.clone()];
    let mut out = Vec::new();
    let mut guard = 0;
    while let Some(q) = work.pop() {
        guard += 1;
        if guard > 8 * class.deg().max(1) + 32 {
            return Err(Error::InternalLimit {
                detail: "pole-class splitting did not terminate".into(),
            });
        }
        let slice = match laurent_expand(u, &q, -1) {
            Ok(s) => s,
            Err(Error::SplitRequired { factor }) => {
                let cofactor = q.exact_div(&factor).expect("factor divides");
                work.push(factor);
                work.push(cofactor);
                continue;
            }
            Err(e) => return Err(e),
        };
        let a2 = slice.a(-2);
        let a1 = slice.a(-1);
        if let Some(v) = a2.as_rational() {
            let Some(two_m) = triangular_two_m(&v) else {
                return Err(Error::NotTriangularNumber { class_modulus: q });
            };
            out.push(LocalDatum {
                class: q,
                two_m,
                a_minus2: a2,
                a_minus1: a1,
            });
            continue;
        }
        // Non-constant a₋₂: split along triangular level sets.
        let bound = cauchy_bound(&charpoly(&a2));
        // (2m+1)² ≤ 4B + 1
        let max_two_m = {
            let w = (bound * rat(4) + rat(1)).ceil().to_integer();
            (w.sqrt() - BigInt::one()).to_u64().unwrap_or(0)
        };
        let mut covered = Poly::one();
        for two_m in 1..=max_two_m.max(1) {
            let v = triangular_value(two_m);
            let diff = a2.sub(&QrElem::from_rat(v, &q));
            if diff.is_zero() {
                continue; // constant case already handled
            }
            let g = q.gcd(diff.value());
            if !g.is_one() {
                work.push(g.clone());
                covered = &covered * &g;
                if covered.deg() == q.deg() {
                    break;
                }
            }
        }
        if covered.deg() != q.deg() {
            let residual = q.exact_div(&covered).unwrap_or_else(|_| q.clone());
            return Err(Error::NotTriangularNumber {
                class_modulus: residual,
            });
        }
    }
    out.sort_by(|a, b| crate::exactalg::cmp_polys(&a.class, &b.class));
    Ok(out)
}

/// Split the denominator of u into squarefree classes and return the
/// local datum of every pole class. Classes of simple poles are rejected
/// right away: a₋₂ = 0 there and 0 is not m(m+1) for any m in ½ℤ_{>0}.
pub fn poles_and_exponents_of_potential(u: &RationalFunction) -> Result<Vec<LocalDatum>> {
    let mut out = Vec::new();
    for (q, e) in u.den().squarefree_decomposition() {
        match e {
            1 => return Err(Error::NotTriangularNumber { class_modulus: q }),
            2 => out.extend(exponents_on_class(u, &q)?),
            n => {
                return Err(Error::PoleTooHigh { order: n as i64 });
            }
        }
    }
    out.sort_by(|a, b| crate::exactalg::cmp_polys(&a.class, &b.class));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_triangular_two_m() {
        assert_eq!(triangular_two_m(&rat(2)), Some(2)); // m = 1
        assert_eq!(triangular_two_m(&ratio(3, 4)), Some(1)); // m = 1/2
        assert_eq!(triangular_two_m(&rat(6)), Some(4)); // m = 2
        assert_eq!(triangular_two_m(&rat(1)), None);
        assert_eq!(triangular_two_m(&rat(0)), None);
        assert_eq!(triangular_two_m(&rat(-2)), None);
        for two_m in 1..40 {
            assert_eq!(triangular_two_m(&triangular_value(two_m)), Some(two_m));
        }
    }

    #[test]
    fn test_exponents_simple() {
        // u = 2/x²: class x, m = 1
        let u = RationalFunction::new(Poly::from_i64s(&[2]), Poly::from_i64s(&[0, 0, 1])).unwrap();
        let data = poles_and_exponents_of_potential(&u).unwrap();
        assert_eq!(data.len(), 1);
        assert_eq!(data[0].class, Poly::x());
        assert_eq!(data[0].two_m, 2);

        // u = (3/4)/x²: m = 1/2
        let u = RationalFunction::new(
            Poly::from_coeffs(vec![ratio(3, 4)]),
            Poly::from_i64s(&[0, 0, 1]),
        )
        .unwrap();
        let data = poles_and_exponents_of_potential(&u).unwrap();
        assert_eq!(data[0].two_m, 1);

        // u = 1/x²: not triangular
        let u = RationalFunction::new(Poly::one(), Poly::from_i64s(&[0, 0, 1])).unwrap();
        assert!(matches!(
            poles_and_exponents_of_potential(&u),
            Err(Error::NotTriangularNumber { .. })
        ));
    }

    #[test]
    fn test_class_level_split() {
        // u = 2/x² + 6/(x−1)²: one squarefree class x(x−1) with
        // non-constant a₋₂ splits into m = 1 at 0 and m = 2 at 1.
        let x2 = Poly::from_i64s(&[0, 0, 1]);
        let xm1sq = Poly::from_i64s(&[1, -2, 1]);
        let num = &(&Poly::from_i64s(&[2]) * &xm1sq) + &(&Poly::from_i64s(&[6]) * &x2);
        let den = &x2 * &xm1sq;
        let u = RationalFunction::new(num, den).unwrap();
        let mut data = poles_and_exponents_of_potential(&u).unwrap();
        data.sort_by_key(|d| d.two_m);
        assert_eq!(data.len(), 2);
        assert_eq!(data[0].class, Poly::x());
        assert_eq!(data[0].two_m, 2);
        assert_eq!(data[1].class, Poly::from_i64s(&[-1, 1]));
        assert_eq!(data[1].two_m, 4);
    }

    #[test]
    fn test_simple_pole_rejected() {
        let u = RationalFunction::new(Poly::one(), Poly::x()).unwrap();
        assert!(matches!(
            poles_and_exponents_of_potential(&u),
            Err(Error::NotTriangularNumber { .. })
        ));
    }

    #[test]
    fn test_charpoly() {
        // multiplication by t on Q[t]/(t²−3t+2): charpoly z²−3z+2
        let q = Poly::from_i64s(&[2, -3, 1]);
        let a = QrElem::generator(&q);
        assert_eq!(charpoly(&a), q);
    }
}
