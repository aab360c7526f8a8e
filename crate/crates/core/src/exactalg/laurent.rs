//! Laurent expansion of a rational function at a pole class.
//!
//! The center is a residue class of ℚ[t]/(q): for a rational center s
//! use q = t − s. Computing over the class gives one expansion valid
//! simultaneously at every root of q; inversions along the way may
//! trigger D5 splitting of the modulus.

use super::poly::Poly;
use super::quotient::{QrElem, QrPoly};
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

/// Coefficients a₋₂ … a_N of a rational function at a class center.
#[derive(Clone, Debug)]
pub struct LaurentSlice {
    class: Poly,
    pole_order: i64,
    n_max: i64,
    /// coeffs[i] = a_{i−2}
    coeffs: Vec<QrElem>,
}

impl LaurentSlice {
    pub fn class(&self) -> &Poly {
        &self.class
    }

    /// Order of the pole at the class (0 at a regular point).
    pub fn pole_order(&self) -> i64 {
        self.pole_order
    }

    pub fn n_max(&self) -> i64 {
        self.n_max
    }

    pub fn a(&self, j: i64) -> QrElem {
        assert!((-2..=self.n_max).contains(&j), "index {j} outside the computed slice");
        self.coeffs[(j + 2) as usize].clone()
    }
}

/// Expansion of `r` at the roots of `class` up to order `n_max` ≥ −2.
///
/// Requires the pole order at the class to be at most 2 (Fuchsian usage);
/// returns [`Error::PoleTooHigh`] otherwise and propagates
/// [`Error::SplitRequired`] from zero-divisor inversions.
pub fn laurent_expand(r: &RationalFunction, class: &Poly, n_max: i64) -> Result<LaurentSlice> {
    assert!(class.is_monic() && class.deg() >= 1, "class must be monic nonconstant");
    assert!(n_max >= -2);
    if r.is_zero() {
        return Ok(LaurentSlice {
            class: class.clone(),
            pole_order: 0,
            n_max,
            coeffs: vec![QrElem::zero(class); (n_max + 3) as usize],
        });
    }

    let a = QrPoly::shift_to_class(r.num(), class);
    let b = QrPoly::shift_to_class(r.den(), class);

    // r is reduced, so the shifted numerator is invertible at the class
    // whenever the class divides the denominator; the pole order is the
    // valuation of the shifted denominator.
    let mut v = 0i64;
    let b0_inv = loop {
        let c = b.coeff(v as usize);
        if c.is_zero() {
            v += 1;
            assert!(v <= b.deg(), "denominator shifted to zero");
            continue;
        }
        break c.try_inv()?;
    };
    if v > 2 {
        return Err(Error::PoleTooHigh { order: v });
    }

    // Series of A / (B/x^v): c_k with a_{k−v} = c_k.
    let terms = n_max + v + 1;
    let mut series: Vec<QrElem> = Vec::new();
    for k in 0..terms.max(0) {
        let mut acc = a.coeff(k as usize);
        for l in 0..k {
            let bcoef = b.coeff((k - l + v) as usize);
            acc = acc.sub(&series[l as usize].mul(&bcoef));
        }
        series.push(acc.mul(&b0_inv));
    }

    let mut coeffs = Vec::with_capacity((n_max + 3) as usize);
    for j in -2..=n_max {
        let k = j + v;
        if k < 0 {
            coeffs.push(QrElem::zero(class));
        } else {
            coeffs.push(series[k as usize].clone());
        }
    }
    Ok(LaurentSlice {
        class: class.clone(),
        pole_order: v,
        n_max,
        coeffs,
    })
}

/// Expansion at a rational center via the degree-one class t − s.
pub fn laurent_expand_at_rat(
    r: &RationalFunction,
    s: &super::poly::Rat,
    n_max: i64,
) -> Result<LaurentSlice> {
    let class = Poly::from_coeffs(vec![-s.clone(), super::poly::rat(1)]);
    laurent_expand(r, &class, n_max)
}
