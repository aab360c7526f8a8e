//! Reduced rational functions over ℚ.
//!
//! Invariant: gcd(num, den) = 1 and den monic. The scalar freedom lost by
//! making the denominator monic moves into the numerator.

use super::poly::{Poly, Rat};
use crate::error::{Error, Result};
use num_traits::One;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> RationalFunction {
        if num.is_zero() {
            return RationalFunction {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let (den, lc) = den.monic();
        let num = num.scale(&(Rat::one() / lc));
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Poly) -> RationalFunction {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> RationalFunction {
        RationalFunction::from_poly(Poly::zero())
    }

    pub fn one() -> RationalFunction {
        RationalFunction::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial value when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn derivative(&self) -> RationalFunction {
        // (n/d)' = (n'd − nd')/d²
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RationalFunction::reduced(n, &self.den * &self.den)
    }

    pub fn inv(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rat) -> RationalFunction {
        RationalFunction::reduced(self.num.scale(c), self.den.clone())
    }

    /// Logarithmic derivative f'/f of a nonzero polynomial.
    pub fn log_deriv(f: &Poly) -> Result<RationalFunction> {
        if f.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::new(f.derivative(), f.clone())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::reduced(num, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RationalFunction::reduced(num, &self.den * &rhs.den)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::reduced(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::rat;

    #[test]
    fn test_reduction_and_monic_den() {
        // (2x^2 + 2x)/(4x) = (x+1)/2
        let r = RationalFunction::new(Poly::from_i64s(&[0, 2, 2]), Poly::from_i64s(&[0, 4])).unwrap();
        assert!(r.den().is_monic() || r.den().is_one());
        assert_eq!(r, RationalFunction::from_poly(Poly::from_coeffs(vec![
            crate::exactalg::poly::ratio(1, 2),
            crate::exactalg::poly::ratio(1, 2),
        ])));
    }

    #[test]
    fn test_log_deriv() {
        // ln'(x^2) = 2/x
        let r = RationalFunction::log_deriv(&Poly::from_i64s(&[0, 0, 1])).unwrap();
        assert_eq!(r.num(), &Poly::from_i64s(&[2]));
        assert_eq!(r.den(), &Poly::from_i64s(&[0, 1]));
    }

    #[test]
    fn test_derivative_quotient_rule() {
        // (1/x)' = -1/x^2
        let r = RationalFunction::new(Poly::one(), Poly::x()).unwrap();
        let d = r.derivative();
        assert_eq!(d.num(), &Poly::from_i64s(&[-1]));
        assert_eq!(d.den(), &Poly::from_i64s(&[0, 0, 1]));
        let _ = rat(0);
    }
}
