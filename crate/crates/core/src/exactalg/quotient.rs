//! Residue classes modulo a squarefree monic polynomial — D5 dynamic
//! evaluation over ℚ[t]/(q).
//!
//! The modulus q need not be irreducible. Arithmetic is exact; inversion
//! either succeeds or exposes a proper factor of q via
//! [`Error::SplitRequired`], in which case the caller restarts the
//! computation on each factor ([`for_each_class`] automates this). A
//! statement certified in ℚ[t]/(q) holds simultaneously at every root of
//! q, which is exactly what the per-pole vanishing checks need.

use super::poly::{Poly, Rat};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QrElem {
    value: Poly,
    modulus: Poly,
}

impl QrElem {
    pub fn new(value: Poly, modulus: &Poly) -> QrElem {
        debug_assert!(modulus.is_monic() && modulus.deg() >= 1);
        let (_, r) = value.divmod(modulus).expect("nonzero modulus");
        QrElem {
            value: r,
            modulus: modulus.clone(),
        }
    }

    pub fn zero(modulus: &Poly) -> QrElem {
        QrElem {
            value: Poly::zero(),
            modulus: modulus.clone(),
        }
    }

    pub fn one(modulus: &Poly) -> QrElem {
        QrElem::from_rat(Rat::one(), modulus)
    }

    pub fn from_rat(c: Rat, modulus: &Poly) -> QrElem {
        QrElem::new(Poly::constant(c), modulus)
    }

    /// The class of t itself (the "center" of the expansion).
    pub fn generator(modulus: &Poly) -> QrElem {
        QrElem::new(Poly::x(), modulus)
    }

    pub fn value(&self) -> &Poly {
        &self.value
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Some(c) when the representative is the constant c, i.e. the class
    /// takes the same rational value at every root of the modulus.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.value.is_constant() {
            Some(self.value.coeff(0))
        } else {
            None
        }
    }

    fn check_same_modulus(&self, rhs: &QrElem) {
        assert_eq!(
            self.modulus, rhs.modulus,
            "quotient-ring arithmetic across different moduli"
        );
    }

    pub fn add(&self, rhs: &QrElem) -> QrElem {
        self.check_same_modulus(rhs);
        QrElem {
            value: &self.value + &rhs.value,
            modulus: self.modulus.clone(),
        }
    }

    pub fn sub(&self, rhs: &QrElem) -> QrElem {
        self.check_same_modulus(rhs);
        QrElem {
            value: &self.value - &rhs.value,
            modulus: self.modulus.clone(),
        }
    }

    pub fn mul(&self, rhs: &QrElem) -> QrElem {
        self.check_same_modulus(rhs);
        QrElem::new(&self.value * &rhs.value, &self.modulus)
    }

    pub fn neg(&self) -> QrElem {
        QrElem {
            value: -&self.value,
            modulus: self.modulus.clone(),
        }
    }

    pub fn scale(&self, c: &Rat) -> QrElem {
        QrElem {
            value: self.value.scale(c),
            modulus: self.modulus.clone(),
        }
    }

    /// Inversion. Fails with [`Error::SplitRequired`] when the value is a
    /// zero divisor: gcd(value, modulus) is then a proper factor of the
    /// modulus and both branches must be re-run separately.
    pub fn try_inv(&self) -> Result<QrElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, u, _) = self.value.xgcd(&self.modulus);
        if g.is_one() {
            Ok(QrElem::new(u, &self.modulus))
        } else {
            Err(Error::SplitRequired { factor: g })
        }
    }

    pub fn try_div(&self, rhs: &QrElem) -> Result<QrElem> {
        Ok(self.mul(&rhs.try_inv()?))
    }

    pub fn pow(&self, mut e: u64) -> QrElem {
        let mut base = self.clone();
        let mut acc = QrElem::one(&self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Reduce a ℚ-polynomial at the class generator: p ↦ p(t̄).
    pub fn eval_poly(p: &Poly, modulus: &Poly) -> QrElem {
        QrElem::new(p.clone(), modulus)
    }

    /// Matrix of multiplication by self on the basis 1, t, …, t^{d−1},
    /// column-major.
    pub fn mult_matrix(&self) -> Vec<Vec<Rat>> {
        let d = self.modulus.deg() as usize;
        let mut cols = Vec::with_capacity(d);
        let mut col_elem = self.clone();
        let gen = QrElem::generator(&self.modulus);
        for i in 0..d {
            if i > 0 {
                col_elem = col_elem.mul(&gen);
            }
            let mut col = Vec::with_capacity(d);
            for j in 0..d {
                col.push(col_elem.value.coeff(j));
            }
            cols.push(col);
        }
        cols
    }

    /// Sum of self's values over the roots of the modulus, as the trace
    /// of the multiplication matrix.
    pub fn trace(&self) -> Rat {
        let cols = self.mult_matrix();
        let mut t = Rat::zero();
        for (i, col) in cols.iter().enumerate() {
            t += col[i].clone();
        }
        t
    }

    /// Evaluate the representative at a rational point (meaningful when
    /// the point is a certified root of the modulus).
    pub fn eval_at(&self, s: &Rat) -> Rat {
        self.value.eval(s)
    }
}

impl fmt::Display for QrElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Dense polynomial with coefficients in a fixed quotient ring; used for
/// Taylor-shifted numerators and for Δ(s,λ) as a polynomial in λ.
#[derive(Clone, PartialEq, Debug)]
pub struct QrPoly {
    coeffs: Vec<QrElem>,
    modulus: Poly,
}

impl QrPoly {
    pub fn from_coeffs(mut coeffs: Vec<QrElem>, modulus: &Poly) -> QrPoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        QrPoly {
            coeffs,
            modulus: modulus.clone(),
        }
    }

    pub fn zero(modulus: &Poly) -> QrPoly {
        QrPoly {
            coeffs: Vec::new(),
            modulus: modulus.clone(),
        }
    }

    pub fn constant(c: QrElem) -> QrPoly {
        let modulus = c.modulus().clone();
        QrPoly::from_coeffs(vec![c], &modulus)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn coeffs(&self) -> &[QrElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> QrElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| QrElem::zero(&self.modulus))
    }

    pub fn add(&self, rhs: &QrPoly) -> QrPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).add(&rhs.coeff(i)));
        }
        QrPoly::from_coeffs(coeffs, &self.modulus)
    }

    pub fn sub(&self, rhs: &QrPoly) -> QrPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).sub(&rhs.coeff(i)));
        }
        QrPoly::from_coeffs(coeffs, &self.modulus)
    }

    pub fn mul(&self, rhs: &QrPoly) -> QrPoly {
        if self.is_zero() || rhs.is_zero() {
            return QrPoly::zero(&self.modulus);
        }
        let mut coeffs = vec![QrElem::zero(&self.modulus); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        QrPoly::from_coeffs(coeffs, &self.modulus)
    }

    pub fn neg(&self) -> QrPoly {
        QrPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            modulus: self.modulus.clone(),
        }
    }

    pub fn scale(&self, c: &QrElem) -> QrPoly {
        QrPoly::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect(), &self.modulus)
    }

    pub fn scale_rat(&self, c: &Rat) -> QrPoly {
        QrPoly::from_coeffs(self.coeffs.iter().map(|a| a.scale(c)).collect(), &self.modulus)
    }

    /// Taylor shift of a ℚ-polynomial to the class center: p(x + t̄) as a
    /// polynomial in x over ℚ[t]/(q). Coefficient of x^j is p^{(j)}(t̄)/j!.
    pub fn shift_to_class(p: &Poly, modulus: &Poly) -> QrPoly {
        let mut coeffs = Vec::new();
        let mut d = p.clone();
        let mut fact = Rat::one();
        let mut j = 0u64;
        loop {
            if d.is_zero() {
                break;
            }
            if j > 0 {
                fact = fact * Rat::from_integer(j.into());
            }
            let c = QrElem::eval_poly(&d, modulus).scale(&(Rat::one() / fact.clone()));
            coeffs.push(c);
            d = d.derivative();
            j += 1;
        }
        QrPoly::from_coeffs(coeffs, modulus)
    }
}

/// Run `f` over the class of `modulus`, restarting on D5 splits until
/// every surviving class either yields a value or fails with a
/// non-split error. Returns (class modulus, value) pairs whose moduli
/// multiply to the original one.
pub fn for_each_class<T>(
    modulus: &Poly,
    mut f: impl FnMut(&Poly) -> Result<T>,
) -> Result<Vec<(Poly, T)>> {
    let mut work = vec![modulus.clone()];
    let mut out = Vec::new();
    let mut guard = 0usize;
    while let Some(q) = work.pop() {
        guard += 1;
        if guard > 4 * (modulus.deg().max(1) as usize) + 16 {
            return Err(Error::InternalLimit {
                detail: "D5 splitting did not terminate".into(),
            });
        }
        match f(&q) {
            Ok(v) => out.push((q, v)),
            Err(Error::SplitRequired { factor }) => {
                debug_assert!(factor.deg() >= 1 && factor.deg() < q.deg());
                let cofactor = q.exact_div(&factor).expect("factor divides modulus");
                work.push(factor);
                work.push(cofactor);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::{rat, ratio};

    fn modulus() -> Poly {
        // t^2 - 2
        Poly::from_i64s(&[-2, 0, 1])
    }

    #[test]
    fn test_inverse_in_field_class() {
        // (2t)^{-1} = t/4 mod t^2-2
        let q = modulus();
        let a = QrElem::new(Poly::from_i64s(&[0, 2]), &q);
        let inv = a.try_inv().unwrap();
        assert_eq!(
            inv.value(),
            &Poly::from_coeffs(vec![rat(0), ratio(1, 4)])
        );
        assert!(a.mul(&inv).as_rational().unwrap().is_one());
    }

    #[test]
    fn test_zero_divisor_splits() {
        // t is a zero divisor mod t(t-1)
        let q = Poly::from_i64s(&[0, -1, 1]);
        let a = QrElem::new(Poly::x(), &q);
        match a.try_inv() {
            Err(Error::SplitRequired { factor }) => assert_eq!(factor, Poly::x()),
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn test_for_each_class_splits_and_covers() {
        // invert t over t(t-1)(t-2): t is invertible on (t-1)(t-2) only
        let q = &(&Poly::x() * &Poly::from_i64s(&[-1, 1])) * &Poly::from_i64s(&[-2, 1]);
        let classes = for_each_class(&q, |m| {
            let a = QrElem::new(Poly::x(), m);
            if a.is_zero() {
                return Ok(None);
            }
            Ok(Some(a.try_inv()?))
        });
        let classes = classes.unwrap();
        let product: Poly = classes
            .iter()
            .fold(Poly::one(), |acc, (m, _)| &acc * m);
        assert_eq!(product, q);
    }

    #[test]
    fn test_trace_sums_roots() {
        // trace of t over t^2 - 3t + 2 = sum of roots = 3
        let q = Poly::from_i64s(&[2, -3, 1]);
        let a = QrElem::generator(&q);
        assert_eq!(a.trace(), rat(3));
    }

    #[test]
    fn test_shift_to_class() {
        // x^2 shifted to center t mod t^2-2: (x+t)^2 = x^2 + 2tx + 2
        let q = modulus();
        let s = QrPoly::shift_to_class(&Poly::from_i64s(&[0, 0, 1]), &q);
        assert_eq!(s.coeff(0).value(), &Poly::from_i64s(&[2]));
        assert_eq!(s.coeff(1).value(), &Poly::from_i64s(&[0, 2]));
        assert_eq!(s.coeff(2).value(), &Poly::one());
    }
}
